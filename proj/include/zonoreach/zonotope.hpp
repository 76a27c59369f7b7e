#ifndef ZONOREACH_ZONOTOPE_HPP_
#define ZONOREACH_ZONOTOPE_HPP_

#include "zonoreach/interval.hpp"
#include "zonoreach/rng.hpp"
#include "zonoreach/types.hpp"

namespace zonoreach
{

/// Zonotope Z = { c + G beta | ||beta||_inf <= 1 }.
///
/// Values are immutable after construction; every operation below is a pure
/// function, so zonotopes may be shared freely across threads. An empty
/// generator matrix (zero columns) is legal and denotes the singleton {c}.
class Zonotope
{
    public:
        Zonotope(Vector center, Matrix generators);

        static Zonotope singleton(Vector center);

        /// Center (l+u)/2 with diagonal generators (u-l)/2; exact for boxes.
        static Zonotope from_box(const Interval& box);

        int dim() const { return static_cast<int>(center_.size()); }
        int num_generators() const { return static_cast<int>(generators_.cols()); }
        const Vector& center() const { return center_; }
        const Matrix& generators() const { return generators_; }

    private:
        Vector center_;
        Matrix generators_;
};

Zonotope linear_map(const Matrix& L, const Zonotope& Z);
Zonotope negate(const Zonotope& Z);
Zonotope minkowski_sum(const Zonotope& Z1, const Zonotope& Z2);
Zonotope cartesian_product(const Zonotope& Z1, const Zonotope& Z2);

/// Tightest axis-aligned box: c -+ sum_i |g_i| element-wise.
Interval interval_hull(const Zonotope& Z);

/// max_{x in Z} d.x  =  d.c + sum_i |d.g_i|
double support(const Zonotope& Z, const Vector& d);

/// LP feasibility of x = c + G beta, ||beta||_inf <= 1.
bool contains(const Zonotope& Z, const Vector& x, double tol = kFeasTol);

/// Girard reduction: keeps the largest generators and absorbs the rest into
/// an axis-aligned box, so the result has at most dim * max_order generators
/// and contains the input.
Zonotope reduce_order(const Zonotope& Z, int max_order);

/// Drops negligible generators and merges parallel ones. Exact: the returned
/// zonotope is the same point set.
Zonotope compact(const Zonotope& Z);

Vector sample(const Zonotope& Z, SplitMix64& rng);

} // namespace zonoreach

#endif
