#ifndef ZONOREACH_REACH_LIPSCHITZ_HPP_
#define ZONOREACH_REACH_LIPSCHITZ_HPP_

#include "zonoreach/data.hpp"
#include "zonoreach/matrix_zonotope.hpp"
#include "zonoreach/reach_common.hpp"

namespace zonoreach
{

struct LipschitzConfig
{
    double L_star = 0.0;
    double delta = 0.0;
    /// Replace L_star/delta by the pairwise data estimates. The resulting
    /// sequence is tagged heuristic: the estimates are lower bounds in
    /// general.
    bool estimate_from_data = false;
    bool relinearize_each_step = true;
};

/// Least-squares linearization about (x*, u*): the returned matrix stacks
/// [affine term, state Jacobian block, input Jacobian block], fitting
/// X+ - C_Mw against [1; X- - x*; U- - u*]. Requires that regressor to have
/// full row rank.
Matrix fit_linear_model(const DataMatrices& D, const MatrixZonotope& Mw, const Vector& xstar,
                        const Vector& ustar);

/// Z_L: element-wise residual extrema over the data columns, boxed, shifted
/// by -Zw (Minkowski sum with the negated noise set).
Zonotope remainder_bound(const DataMatrices& D, const Matrix& M_prime, const Zonotope& Zw,
                         const Vector& xstar, const Vector& ustar);

/// Z_eps: zero-centered diagonal zonotope of radius L* delta per coordinate.
Zonotope lipschitz_margin(const LipschitzConfig& cfg, int state_dim);

struct LipschitzReachResult
{
    ReachSequence seq;
    /// Hull of the union of R'_k x U_k actually visited; users audit that
    /// their L*/delta assumptions cover this region.
    Interval visited_hull;
    LipschitzConfig resolved;
};

/// Reachability for unknown Lipschitz dynamics: per-step data-fit
/// linearization (about the current set centers by default) plus the
/// data-driven remainder bound Z_L and the coverage margin Z_eps.
LipschitzReachResult lipschitz_reach(const DataMatrices& D, const MatrixZonotope& Mw,
                                     const Zonotope& Zw, const LipschitzConfig& cfg,
                                     const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                                     const ReachOptions& opts = {});

} // namespace zonoreach

#endif
