#ifndef ZONOREACH_ORACLE_HPP_
#define ZONOREACH_ORACLE_HPP_

#include "zonoreach/constrained_matrix_zonotope.hpp"
#include "zonoreach/data.hpp"
#include "zonoreach/reach_common.hpp"

namespace zonoreach
{

/// Exact model-based recursion R_{k+1} = [A B] (R_k x U_k) + Zw. No
/// reduction is applied, only exact compaction, so supports are exact.
ReachSequence model_reach_lti(const Matrix& A, const Matrix& B, const Zonotope& X0,
                              const std::vector<Zonotope>& U, const Zonotope& Zw, int N);

struct StepReport
{
    int samples = 0;
    int contained = 0;
    /// Largest membership violation seen (minimal l1 equality residual of
    /// the containment LP); 0 when everything was contained.
    double max_violation = 0.0;
};

struct ContainmentReport
{
    std::vector<StepReport> steps; // index 0 = initial set
    int samples = 0;
    /// Directions evaluated by an accompanying support-nesting audit (0 when
    /// none was run).
    int directions_checked = 0;

    bool all_contained() const;
    double containment_fraction() const;
};

/// Propagates `samples` true trajectories through the model with noise and
/// inputs drawn from their sets, and checks membership of every state in the
/// corresponding set of the sequence. Sampling is deterministic per seed and
/// embarrassingly parallel.
ContainmentReport monte_carlo_check(const SystemModel& model, const Zonotope& X0,
                                    const std::vector<Zonotope>& U, const Zonotope& Zw,
                                    const ReachSequence& seq, int samples, std::uint64_t seed,
                                    double tol = 1e-7);

/// Grid product cloud for small constrained matrix zonotopes: factor grids
/// filtered by constraint residual, crossed with the zonotope factor grid.
/// Every returned point must lie in the closed-form product.
std::vector<Vector> brute_force_product(const ConstrainedMatrixZonotope& N, const Zonotope& Z,
                                        int grid);
std::vector<Vector> brute_force_product(const ConstrainedMatrixZonotope& N,
                                        const ConstrainedZonotope& C, int grid);

} // namespace zonoreach

#endif
