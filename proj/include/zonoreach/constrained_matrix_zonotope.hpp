#ifndef ZONOREACH_CONSTRAINED_MATRIX_ZONOTOPE_HPP_
#define ZONOREACH_CONSTRAINED_MATRIX_ZONOTOPE_HPP_

#include "zonoreach/constrained_zonotope.hpp"
#include "zonoreach/matrix_zonotope.hpp"

#include <memory>
#include <vector>

namespace zonoreach
{

/// Constrained matrix zonotope
///   N = { C + sum_i beta_i G_i | sum_i beta_i A_i = B, ||beta||_inf <= 1 }.
///
/// The constraint generators A_i and the offset B share one shape, one per
/// factor. Construction checks the factor set for emptiness with a
/// feasibility LP over the vectorized (column-major) constraint system.
class ConstrainedMatrixZonotope
{
    public:
        ConstrainedMatrixZonotope(Matrix center, std::vector<Matrix> generators,
                                  std::vector<Matrix> constraint_generators, Matrix offset);

        /// Lifts a matrix zonotope (no constraints).
        explicit ConstrainedMatrixZonotope(const MatrixZonotope& M);

        int rows() const { return static_cast<int>(center_.rows()); }
        int cols() const { return static_cast<int>(center_.cols()); }
        int num_generators() const { return static_cast<int>(generators_.size()); }
        int constraint_rows() const { return static_cast<int>(offset_.rows()); }
        int constraint_cols() const { return static_cast<int>(offset_.cols()); }
        bool is_unconstrained() const { return offset_.size() == 0; }

        const Matrix& center() const { return center_; }
        const std::vector<Matrix>& generators() const { return generators_; }
        const std::vector<Matrix>& constraint_generators() const { return constraint_generators_; }
        const Matrix& offset() const { return offset_; }

        const detail::FactorSetCache& factor_cache() const { return *cache_; }

    private:
        Matrix center_;
        std::vector<Matrix> generators_;
        std::vector<Matrix> constraint_generators_;
        Matrix offset_;
        std::shared_ptr<const detail::FactorSetCache> cache_;
        std::shared_ptr<detail::BoundsMemo> bounds_;

        friend FactorBounds factor_bounds(const ConstrainedMatrixZonotope& N);
};

/// R N: maps center and generators, constraints untouched.
ConstrainedMatrixZonotope linear_map(const Matrix& R, const ConstrainedMatrixZonotope& N);

/// (X - N) H with constraints untouched.
ConstrainedMatrixZonotope affine_map(const Matrix& X, const ConstrainedMatrixZonotope& N,
                                     const Matrix& H);

/// Minkowski sum with block-diagonal constraint structure.
ConstrainedMatrixZonotope minkowski_sum(const ConstrainedMatrixZonotope& N1,
                                        const ConstrainedMatrixZonotope& N2);

/// Per-factor min/max of beta subject to the matrix equality constraints,
/// clipped to [-1, 1]. One LP pair per factor; memoized per set. The LPs are
/// independent, so the result does not depend on evaluation order.
FactorBounds factor_bounds(const ConstrainedMatrixZonotope& N);

/// Over-approximation of { X z | X in N, z in Z } as a constrained zonotope.
/// Cross-term generators are scaled by the matrix-factor bound magnitudes.
ConstrainedZonotope product(const ConstrainedMatrixZonotope& N, const Zonotope& Z);

/// Over-approximation of { X x | X in N, x in C }; cross-term generators are
/// scaled per pair by the four-product maximum of both factor bounds.
ConstrainedZonotope product(const ConstrainedMatrixZonotope& N, const ConstrainedZonotope& C);

bool contains(const ConstrainedMatrixZonotope& N, const Matrix& X, double tol = kFeasTol);

/// Drops factors whose generator and constraint generator are both
/// negligible.
ConstrainedMatrixZonotope compact(const ConstrainedMatrixZonotope& N);

/// A feasible member matrix (projected box proposals, non-uniform).
Matrix sample(const ConstrainedMatrixZonotope& N, SplitMix64& rng);

} // namespace zonoreach

#endif
