#ifndef ZONOREACH_REACH_COMMON_HPP_
#define ZONOREACH_REACH_COMMON_HPP_

#include "zonoreach/constrained_zonotope.hpp"

#include <string>
#include <variant>
#include <vector>

namespace zonoreach
{

using SetVariant = std::variant<Zonotope, ConstrainedZonotope>;

/// Ordered reachable sets R_0..R_N with method metadata. sets[0] is always
/// the supplied initial set. `guaranteed` is false for methods without a
/// formal over-approximation proof.
struct ReachSequence
{
    std::string method;
    bool guaranteed = true;
    std::vector<SetVariant> sets;
    std::vector<double> step_seconds;

    int steps() const { return static_cast<int>(sets.size()) - 1; }
};

struct ReachOptions
{
    /// Plain zonotope sequences are reduced to this order after every step;
    /// <= 0 disables reduction. Constrained sequences are never reduced.
    int reduction_order = 20;
};

double support(const SetVariant& S, const Vector& d);
bool contains(const SetVariant& S, const Vector& x, double tol = kFeasTol);
Interval interval_hull(const SetVariant& S);
int set_dim(const SetVariant& S);

} // namespace zonoreach

#endif
