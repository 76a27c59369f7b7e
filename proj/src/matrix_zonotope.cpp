#include "zonoreach/matrix_zonotope.hpp"

#include "zonoreach/lp.hpp"

#include <stdexcept>

namespace zonoreach
{

namespace
{

Vector vec(const Matrix& M) { return Eigen::Map<const Vector>(M.data(), M.size()); }

} // namespace

MatrixZonotope::MatrixZonotope(Matrix center, std::vector<Matrix> generators)
    : center_(std::move(center)), generators_(std::move(generators))
{
    if (!center_.allFinite())
        throw std::invalid_argument("MatrixZonotope: non-finite center");
    for (const Matrix& G : generators_)
    {
        if (G.rows() != center_.rows() || G.cols() != center_.cols())
            throw std::invalid_argument("MatrixZonotope: generator shape differs from center");
        if (!G.allFinite())
            throw std::invalid_argument("MatrixZonotope: non-finite generator");
    }
}

MatrixZonotope MatrixZonotope::singleton(Matrix center)
{
    return MatrixZonotope(std::move(center), {});
}

MatrixZonotope noise_matrix_zonotope(const Zonotope& Zw, int T)
{
    if (T < 1)
        throw std::invalid_argument("noise_matrix_zonotope: T must be >= 1");
    const int n = Zw.dim();
    Matrix center(n, T);
    for (int j = 0; j < T; ++j)
        center.col(j) = Zw.center();
    std::vector<Matrix> gens;
    gens.reserve(static_cast<std::size_t>(Zw.num_generators()) * T);
    for (int i = 0; i < Zw.num_generators(); ++i)
    {
        for (int j = 0; j < T; ++j)
        {
            Matrix G = Matrix::Zero(n, T);
            G.col(j) = Zw.generators().col(i);
            gens.push_back(std::move(G));
        }
    }
    return MatrixZonotope(std::move(center), std::move(gens));
}

MatrixZonotope affine_map(const Matrix& X, const MatrixZonotope& M, const Matrix& H)
{
    if (X.rows() != M.rows() || X.cols() != M.cols())
        throw std::invalid_argument("affine_map: X shape differs from members");
    if (H.rows() != M.cols())
        throw std::invalid_argument("affine_map: H row count differs from member columns");
    std::vector<Matrix> gens;
    gens.reserve(M.num_generators());
    for (const Matrix& G : M.generators())
        gens.push_back(-G * H);
    return MatrixZonotope((X - M.center()) * H, std::move(gens));
}

MatrixZonotope linear_map(const Matrix& L, const MatrixZonotope& M)
{
    if (L.cols() != M.rows())
        throw std::invalid_argument("linear_map: shape mismatch");
    std::vector<Matrix> gens;
    gens.reserve(M.num_generators());
    for (const Matrix& G : M.generators())
        gens.push_back(L * G);
    return MatrixZonotope(L * M.center(), std::move(gens));
}

MatrixZonotope right_map(const MatrixZonotope& M, const Matrix& H)
{
    if (H.rows() != M.cols())
        throw std::invalid_argument("right_map: shape mismatch");
    std::vector<Matrix> gens;
    gens.reserve(M.num_generators());
    for (const Matrix& G : M.generators())
        gens.push_back(G * H);
    return MatrixZonotope(M.center() * H, std::move(gens));
}

MatrixZonotope minkowski_sum(const MatrixZonotope& M1, const MatrixZonotope& M2)
{
    if (M1.rows() != M2.rows() || M1.cols() != M2.cols())
        throw std::invalid_argument("minkowski_sum: member shapes differ");
    std::vector<Matrix> gens = M1.generators();
    gens.insert(gens.end(), M2.generators().begin(), M2.generators().end());
    return MatrixZonotope(M1.center() + M2.center(), std::move(gens));
}

Zonotope product(const MatrixZonotope& M, const Zonotope& Z)
{
    if (M.cols() != Z.dim())
        throw std::invalid_argument("product: member columns differ from zonotope dimension");
    const int n = M.rows();
    const int gm = M.num_generators();
    const int gz = Z.num_generators();
    Matrix G(n, gm + gz + gm * gz);
    for (int i = 0; i < gm; ++i)
        G.col(i) = M.generators()[i] * Z.center();
    G.middleCols(gm, gz) = M.center() * Z.generators();
    // cross terms, factor-major within each zonotope generator: k = j*gm + i
    for (int j = 0; j < gz; ++j)
        for (int i = 0; i < gm; ++i)
            G.col(gm + gz + j * gm + i) = M.generators()[i] * Z.generators().col(j);
    return Zonotope(M.center() * Z.center(), std::move(G));
}

bool contains(const MatrixZonotope& M, const Matrix& X, double tol)
{
    if (X.rows() != M.rows() || X.cols() != M.cols())
        throw std::invalid_argument("contains: matrix shape differs from members");
    Matrix A(M.center().size(), M.num_generators());
    for (int i = 0; i < M.num_generators(); ++i)
        A.col(i) = vec(M.generators()[i]);
    return lp::feasible(A, vec(X - M.center()), tol);
}

Matrix sample(const MatrixZonotope& M, SplitMix64& rng)
{
    Matrix X = M.center();
    for (const Matrix& G : M.generators())
        X += rng.uniform_pm1() * G;
    return X;
}

} // namespace zonoreach
