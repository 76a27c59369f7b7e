#ifndef ZONOREACH_REACH_POLY_HPP_
#define ZONOREACH_REACH_POLY_HPP_

#include "zonoreach/reach_lti.hpp"

namespace zonoreach
{

/// G-hat: every regressor column pushed through the monomial basis.
Matrix monomial_data_matrix(const MonomialBasis& basis, const DataMatrices& D);

/// Matrix zonotope containing every coefficient matrix consistent with the
/// data: (X+ - Mw) Ghat^dagger. Throws when Ghat is row-rank deficient.
MatrixZonotope consistent_model_set_poly(const DataMatrices& D, const MatrixZonotope& Mw,
                                         const MonomialBasis& basis);

ConstrainedMatrixZonotope exact_noise_set_poly(const DataMatrices& D, const MatrixZonotope& Mw,
                                               const MonomialBasis& basis);

ConstrainedMatrixZonotope exact_model_set_poly(const DataMatrices& D,
                                               const ConstrainedMatrixZonotope& Nw,
                                               const MonomialBasis& basis);

/// Polynomial reachability: per step the current set and input set are
/// boxed, the monomial ranges of the box are computed by interval
/// arithmetic, and the model set multiplies the resulting box zonotope.
ReachSequence poly_reach(const DataMatrices& D, const MatrixZonotope& Mw, const Zonotope& Zw,
                         const MonomialBasis& basis, const Zonotope& X0,
                         const std::vector<Zonotope>& U, int N, const ReachOptions& opts = {});

/// Constrained variant built on the exact noise description over Ghat.
ReachSequence poly_reach_constrained(const DataMatrices& D, const MatrixZonotope& Mw,
                                     const Zonotope& Zw, const MonomialBasis& basis,
                                     const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                                     const ReachOptions& opts = {});

/// Side-information variant: |Q C - Y| <= R on the coefficient matrix.
ReachSequence poly_reach_side_info(const DataMatrices& D, const MatrixZonotope& Mw,
                                   const Zonotope& Zw, const MonomialBasis& basis,
                                   const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                                   const SideInfo& info, const ReachOptions& opts = {});

} // namespace zonoreach

#endif
