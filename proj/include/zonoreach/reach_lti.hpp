#ifndef ZONOREACH_REACH_LTI_HPP_
#define ZONOREACH_REACH_LTI_HPP_

#include "zonoreach/constrained_matrix_zonotope.hpp"
#include "zonoreach/data.hpp"
#include "zonoreach/reach_common.hpp"

namespace zonoreach
{

/// Entry-wise prior bounds |Q [A B] - Y| <= R on the unknown system matrix.
struct SideInfo
{
    Matrix Q;
    Matrix Y;
    Matrix R;
};

/// Matrix zonotope containing every [A B] consistent with the data and the
/// noise bound: (X+ - Mw) H with [X-; U-] H = I. Throws on rank deficiency.
MatrixZonotope consistent_model_set(const DataMatrices& D, const MatrixZonotope& Mw);

/// Exact noise description: members of Mw that keep the data explainable,
/// i.e. (X+ - W) K = 0 over the kernel K of [X-; U-]. With an empty kernel
/// the result is Mw itself (unconstrained).
ConstrainedMatrixZonotope exact_noise_set(const DataMatrices& D, const MatrixZonotope& Mw);

/// Exact model description (X+ - Nw) H, constraints inherited from Nw.
ConstrainedMatrixZonotope exact_model_set(const DataMatrices& D,
                                          const ConstrainedMatrixZonotope& Nw);

/// Augments a model set with side information: one extra (zero) generator
/// per entry of the bound matrix, constraint rows Q G_i over the model
/// factors and -R entries over the new ones. `member_cols` is the column
/// count of the members (n+m here, the monomial count for polynomial model
/// sets). Requires the constraint width to exceed member_cols, which for LTI
/// data amounts to T > 2(n+m).
ConstrainedMatrixZonotope with_side_info(const ConstrainedMatrixZonotope& Nsigma,
                                         const SideInfo& info, int member_cols);

/// Reachability with the matrix-zonotope model set (plain zonotopes).
ReachSequence lti_reach(const DataMatrices& D, const MatrixZonotope& Mw, const Zonotope& Zw,
                        const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                        const ReachOptions& opts = {});

/// Reachability with the exact noise description (constrained zonotopes).
ReachSequence lti_reach_constrained(const DataMatrices& D, const MatrixZonotope& Mw,
                                    const Zonotope& Zw, const Zonotope& X0,
                                    const std::vector<Zonotope>& U, int N,
                                    const ReachOptions& opts = {});

/// Constrained reachability that additionally enforces side information.
ReachSequence lti_reach_side_info(const DataMatrices& D, const MatrixZonotope& Mw,
                                  const Zonotope& Zw, const Zonotope& X0,
                                  const std::vector<Zonotope>& U, int N, const SideInfo& info,
                                  const ReachOptions& opts = {});

/// Measurement-noise variant over (Y, U) data: the model set is
/// (Y+ - Mo - Mw) H with Mo a known bound on V+ - A V- (zonotope sequence).
ReachSequence lti_reach_meas(const DataMatrices& D, const MatrixZonotope& Mo,
                             const MatrixZonotope& Mw, const Zonotope& Zw, const Zonotope& X0,
                             const std::vector<Zonotope>& U, int N,
                             const ReachOptions& opts = {});

/// Constrained measurement-noise variant (kernel constraints from both noise
/// terms, process-noise factors first).
ReachSequence lti_reach_meas_constrained(const DataMatrices& D, const MatrixZonotope& Mo,
                                         const MatrixZonotope& Mw, const Zonotope& Zw,
                                         const Zonotope& X0, const std::vector<Zonotope>& U,
                                         int N, const ReachOptions& opts = {});

/// Data-based measurement-noise approach: least-squares model plus a
/// residual box. No formal guarantee; the sequence is tagged heuristic.
ReachSequence lti_reach_meas_data(const DataMatrices& D, const MatrixZonotope& Mw,
                                  const MatrixZonotope& Mv, const Zonotope& Zw,
                                  const Zonotope& Zv, const Zonotope& X0,
                                  const std::vector<Zonotope>& U, int N,
                                  const ReachOptions& opts = {});

/// Validation set (M~ [Y-; U-] + M_AV) H~ for the data-based approach; the
/// true [A B] should be a member when the residual box captured the
/// mismatch.
MatrixZonotope meas_validation_set(const DataMatrices& D, const MatrixZonotope& Mw,
                                   const MatrixZonotope& Mv, const Zonotope& Zw,
                                   const Zonotope& Zv);

} // namespace zonoreach

#endif
