#ifndef ZONOREACH_INTERVAL_HPP_
#define ZONOREACH_INTERVAL_HPP_

#include "zonoreach/types.hpp"

#include <stdexcept>

namespace zonoreach
{

/// Axis-aligned box given by element-wise bounds.
class Interval
{
    public:
        Interval() = default;

        Interval(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper))
        {
            if (lower_.size() != upper_.size())
                throw std::invalid_argument("Interval: bound dimensions differ");
            if (((upper_ - lower_).array() < 0.0).any())
                throw std::invalid_argument("Interval: lower bound exceeds upper bound");
        }

        int dim() const { return static_cast<int>(lower_.size()); }
        const Vector& lower() const { return lower_; }
        const Vector& upper() const { return upper_; }
        Vector center() const { return 0.5 * (lower_ + upper_); }
        Vector radius() const { return 0.5 * (upper_ - lower_); }

        bool contains(const Vector& x, double tol = 0.0) const
        {
            return ((x - lower_).array() >= -tol).all() && ((upper_ - x).array() >= -tol).all();
        }

        /// Smallest box containing both operands.
        static Interval hull_of(const Interval& a, const Interval& b)
        {
            return Interval(a.lower_.cwiseMin(b.lower_), a.upper_.cwiseMax(b.upper_));
        }

        /// Stacks two boxes into one of dimension dim(a) + dim(b).
        static Interval stack(const Interval& a, const Interval& b)
        {
            Vector lo(a.dim() + b.dim()), hi(a.dim() + b.dim());
            lo << a.lower_, b.lower_;
            hi << a.upper_, b.upper_;
            return Interval(std::move(lo), std::move(hi));
        }

    private:
        Vector lower_;
        Vector upper_;
};

} // namespace zonoreach

#endif
