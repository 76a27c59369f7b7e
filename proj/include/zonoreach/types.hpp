#ifndef ZONOREACH_TYPES_HPP_
#define ZONOREACH_TYPES_HPP_

#include <Eigen/Dense>

namespace zonoreach
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Absolute tolerance on linear-program equality residuals; also the default
// tolerance for membership tests.
inline constexpr double kFeasTol = 1e-9;

// Relative singular-value cutoff for rank decisions in right_inverse and
// kernel_basis.
inline constexpr double kRankTol = 1e-8;

// Generators below this norm carry no geometric information and may be
// dropped (together with their constraint columns, when those are zero too).
inline constexpr double kPruneTol = 1e-14;

/// Per-factor bounds of a constrained factor set, each entry in [-1, 1].
struct FactorBounds
{
    Vector lower;
    Vector upper;
};

} // namespace zonoreach

#endif
