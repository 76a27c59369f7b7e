#include "zonoreach/reach_common.hpp"

namespace zonoreach
{

double support(const SetVariant& S, const Vector& d)
{
    return std::visit([&](const auto& set) { return support(set, d); }, S);
}

bool contains(const SetVariant& S, const Vector& x, double tol)
{
    return std::visit([&](const auto& set) { return contains(set, x, tol); }, S);
}

Interval interval_hull(const SetVariant& S)
{
    return std::visit([&](const auto& set) { return interval_hull(set); }, S);
}

int set_dim(const SetVariant& S)
{
    return std::visit([&](const auto& set) { return set.dim(); }, S);
}

} // namespace zonoreach
