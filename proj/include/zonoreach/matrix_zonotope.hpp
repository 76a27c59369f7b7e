#ifndef ZONOREACH_MATRIX_ZONOTOPE_HPP_
#define ZONOREACH_MATRIX_ZONOTOPE_HPP_

#include "zonoreach/zonotope.hpp"

#include <vector>

namespace zonoreach
{

/// Matrix zonotope M = { C + sum_i beta_i G_i | ||beta||_inf <= 1 } where the
/// center and every generator share one shape.
class MatrixZonotope
{
    public:
        MatrixZonotope(Matrix center, std::vector<Matrix> generators);

        static MatrixZonotope singleton(Matrix center);

        int rows() const { return static_cast<int>(center_.rows()); }
        int cols() const { return static_cast<int>(center_.cols()); }
        int num_generators() const { return static_cast<int>(generators_.size()); }
        const Matrix& center() const { return center_; }
        const std::vector<Matrix>& generators() const { return generators_; }

    private:
        Matrix center_;
        std::vector<Matrix> generators_;
};

/// Column-wise concatenation of T copies of a noise zonotope: the set of
/// n x T matrices whose columns all lie in Zw. Generator j + i*T places
/// generator i of Zw in column j.
MatrixZonotope noise_matrix_zonotope(const Zonotope& Zw, int T);

/// (X - M) H
MatrixZonotope affine_map(const Matrix& X, const MatrixZonotope& M, const Matrix& H);

MatrixZonotope linear_map(const Matrix& L, const MatrixZonotope& M);
MatrixZonotope right_map(const MatrixZonotope& M, const Matrix& H);
MatrixZonotope minkowski_sum(const MatrixZonotope& M1, const MatrixZonotope& M2);

/// Over-approximation of { X z | X in M, z in Z }: cross factors are treated
/// as independent, so the result is a superset of the true product set.
Zonotope product(const MatrixZonotope& M, const Zonotope& Z);

/// LP feasibility of vec(X) = vec(C) + sum_i beta_i vec(G_i), box bounds.
bool contains(const MatrixZonotope& M, const Matrix& X, double tol = kFeasTol);

Matrix sample(const MatrixZonotope& M, SplitMix64& rng);

} // namespace zonoreach

#endif
