#include "zonoreach/constrained_matrix_zonotope.hpp"

#include "zonoreach/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace zonoreach
{

namespace
{

Vector vec(const Matrix& M) { return Eigen::Map<const Vector>(M.data(), M.size()); }

Matrix vectorized_constraints(const std::vector<Matrix>& constraint_generators, int rows,
                              int cols)
{
    Matrix A(rows * cols, static_cast<int>(constraint_generators.size()));
    for (std::size_t i = 0; i < constraint_generators.size(); ++i)
        A.col(static_cast<int>(i)) = vec(constraint_generators[i]);
    return A;
}

std::shared_ptr<const detail::FactorSetCache> build_cache(const Matrix& A, const Vector& b)
{
    lp::EqualitySystem system(A);
    auto rb = system.reduce_rhs(b);
    if (!rb)
        throw std::invalid_argument("ConstrainedMatrixZonotope: constraints are inconsistent");
    lp::BoxSimplex simplex(system.reduced_A(), *rb);
    if (!simplex.feasible())
        throw std::invalid_argument("ConstrainedMatrixZonotope: constraint set is empty");
    std::optional<Eigen::CompleteOrthogonalDecomposition<Matrix>> projector;
    if (system.reduced_A().rows() > 0 && system.reduced_A().cols() > 0)
        projector.emplace(system.reduced_A());
    return std::make_shared<detail::FactorSetCache>(detail::FactorSetCache{
        std::move(system), std::move(*rb), std::move(simplex), std::move(projector)});
}

} // namespace

ConstrainedMatrixZonotope::ConstrainedMatrixZonotope(Matrix center, std::vector<Matrix> generators,
                                                     std::vector<Matrix> constraint_generators,
                                                     Matrix offset)
    : center_(std::move(center)),
      generators_(std::move(generators)),
      constraint_generators_(std::move(constraint_generators)),
      offset_(std::move(offset)),
      bounds_(std::make_shared<detail::BoundsMemo>())
{
    if (constraint_generators_.size() != generators_.size())
        throw std::invalid_argument(
            "ConstrainedMatrixZonotope: constraint generator count differs from generator count");
    for (const Matrix& G : generators_)
        if (G.rows() != center_.rows() || G.cols() != center_.cols())
            throw std::invalid_argument(
                "ConstrainedMatrixZonotope: generator shape differs from center");
    for (const Matrix& A : constraint_generators_)
        if (A.rows() != offset_.rows() || A.cols() != offset_.cols())
            throw std::invalid_argument(
                "ConstrainedMatrixZonotope: constraint generator shape differs from offset");
    cache_ = build_cache(
        vectorized_constraints(constraint_generators_, constraint_rows(), constraint_cols()),
        vec(offset_));
}

ConstrainedMatrixZonotope::ConstrainedMatrixZonotope(const MatrixZonotope& M)
    : ConstrainedMatrixZonotope(
          M.center(), M.generators(),
          std::vector<Matrix>(M.generators().size(), Matrix::Zero(0, 0)), Matrix::Zero(0, 0))
{
}

ConstrainedMatrixZonotope linear_map(const Matrix& R, const ConstrainedMatrixZonotope& N)
{
    if (R.cols() != N.rows())
        throw std::invalid_argument("linear_map: shape mismatch");
    std::vector<Matrix> gens;
    gens.reserve(N.num_generators());
    for (const Matrix& G : N.generators())
        gens.push_back(R * G);
    return ConstrainedMatrixZonotope(R * N.center(), std::move(gens), N.constraint_generators(),
                                     N.offset());
}

ConstrainedMatrixZonotope affine_map(const Matrix& X, const ConstrainedMatrixZonotope& N,
                                     const Matrix& H)
{
    if (X.rows() != N.rows() || X.cols() != N.cols())
        throw std::invalid_argument("affine_map: X shape differs from members");
    if (H.rows() != N.cols())
        throw std::invalid_argument("affine_map: H row count differs from member columns");
    std::vector<Matrix> gens;
    gens.reserve(N.num_generators());
    for (const Matrix& G : N.generators())
        gens.push_back(-G * H);
    return ConstrainedMatrixZonotope((X - N.center()) * H, std::move(gens),
                                     N.constraint_generators(), N.offset());
}

ConstrainedMatrixZonotope minkowski_sum(const ConstrainedMatrixZonotope& N1,
                                        const ConstrainedMatrixZonotope& N2)
{
    if (N1.rows() != N2.rows() || N1.cols() != N2.cols())
        throw std::invalid_argument("minkowski_sum: member shapes differ");
    const int r1 = N1.constraint_rows(), c1 = N1.constraint_cols();
    const int r2 = N2.constraint_rows(), c2 = N2.constraint_cols();

    std::vector<Matrix> gens = N1.generators();
    gens.insert(gens.end(), N2.generators().begin(), N2.generators().end());

    std::vector<Matrix> cons;
    cons.reserve(gens.size());
    for (const Matrix& A : N1.constraint_generators())
    {
        Matrix P = Matrix::Zero(r1 + r2, c1 + c2);
        P.topLeftCorner(r1, c1) = A;
        cons.push_back(std::move(P));
    }
    for (const Matrix& A : N2.constraint_generators())
    {
        Matrix P = Matrix::Zero(r1 + r2, c1 + c2);
        P.bottomRightCorner(r2, c2) = A;
        cons.push_back(std::move(P));
    }
    Matrix B = Matrix::Zero(r1 + r2, c1 + c2);
    B.topLeftCorner(r1, c1) = N1.offset();
    B.bottomRightCorner(r2, c2) = N2.offset();
    return ConstrainedMatrixZonotope(N1.center() + N2.center(), std::move(gens), std::move(cons),
                                     std::move(B));
}

FactorBounds factor_bounds(const ConstrainedMatrixZonotope& N)
{
    std::call_once(N.bounds_->flag, [&] {
        const int g = N.num_generators();
        FactorBounds fb;
        fb.lower = Vector::Constant(g, -1.0);
        fb.upper = Vector::Constant(g, 1.0);
        if (!N.is_unconstrained())
        {
            // the 2g programs are independent; run them concurrently
            const auto& cache = N.factor_cache();
            parallel_for(g, [&](int i) {
                Vector e = Vector::Zero(g);
                e(i) = 1.0;
                fb.lower(i) = std::clamp(cache.simplex.optimize(e, false).value, -1.0, 1.0);
                fb.upper(i) = std::clamp(cache.simplex.optimize(e, true).value, -1.0, 1.0);
            });
        }
        N.bounds_->value = std::move(fb);
    });
    return N.bounds_->value;
}

ConstrainedZonotope product(const ConstrainedMatrixZonotope& N, const Zonotope& Z)
{
    if (N.cols() != Z.dim())
        throw std::invalid_argument("product: member columns differ from zonotope dimension");
    const int n = N.rows();
    const int gn = N.num_generators();
    const int gz = Z.num_generators();

    FactorBounds fb = factor_bounds(N);
    Vector f(gn);
    for (int i = 0; i < gn; ++i)
        f(i) = std::max(std::abs(fb.lower(i)), std::abs(fb.upper(i)));

    Matrix G(n, gn + gz + gn * gz);
    for (int i = 0; i < gn; ++i)
        G.col(i) = N.generators()[i] * Z.center();
    G.middleCols(gn, gz) = N.center() * Z.generators();
    for (int j = 0; j < gz; ++j)
        for (int i = 0; i < gn; ++i)
            G.col(gn + gz + j * gn + i) = f(i) * (N.generators()[i] * Z.generators().col(j));

    const int ncons = N.constraint_rows() * N.constraint_cols();
    Matrix A = Matrix::Zero(ncons, G.cols());
    for (int i = 0; i < gn; ++i)
        A.col(i) = vec(N.constraint_generators()[i]);
    return ConstrainedZonotope(N.center() * Z.center(), std::move(G), std::move(A),
                               vec(N.offset()));
}

ConstrainedZonotope product(const ConstrainedMatrixZonotope& N, const ConstrainedZonotope& C)
{
    if (N.cols() != C.dim())
        throw std::invalid_argument("product: member columns differ from set dimension");
    const int n = N.rows();
    const int gn = N.num_generators();
    const int gc = C.num_generators();

    FactorBounds fn = factor_bounds(N);
    FactorBounds fc = factor_bounds(C);

    Matrix G(n, gn + gc + gn * gc);
    for (int i = 0; i < gn; ++i)
        G.col(i) = N.generators()[i] * C.center();
    G.middleCols(gn, gc) = N.center() * C.generators();
    for (int j = 0; j < gc; ++j)
    {
        for (int i = 0; i < gn; ++i)
        {
            const double f = std::max(
                {std::abs(fn.lower(i) * fc.lower(j)), std::abs(fn.lower(i) * fc.upper(j)),
                 std::abs(fn.upper(i) * fc.lower(j)), std::abs(fn.upper(i) * fc.upper(j))});
            G.col(gn + gc + j * gn + i) = f * (N.generators()[i] * C.generators().col(j));
        }
    }

    const int rn = N.constraint_rows() * N.constraint_cols();
    const int rc = C.num_constraints();
    Matrix A = Matrix::Zero(rn + rc, G.cols());
    for (int i = 0; i < gn; ++i)
        A.col(i).head(rn) = vec(N.constraint_generators()[i]);
    A.block(rn, gn, rc, gc) = C.constraint_matrix();
    Vector b(rn + rc);
    b << vec(N.offset()), C.constraint_vector();
    return ConstrainedZonotope(N.center() * C.center(), std::move(G), std::move(A), std::move(b));
}

bool contains(const ConstrainedMatrixZonotope& N, const Matrix& X, double tol)
{
    if (X.rows() != N.rows() || X.cols() != N.cols())
        throw std::invalid_argument("contains: matrix shape differs from members");
    const int member = N.rows() * N.cols();
    const int ncons = N.constraint_rows() * N.constraint_cols();
    Matrix A(member + ncons, N.num_generators());
    for (int i = 0; i < N.num_generators(); ++i)
    {
        A.col(i).head(member) = vec(N.generators()[i]);
        A.col(i).tail(ncons) = vec(N.constraint_generators()[i]);
    }
    Vector rhs(member + ncons);
    rhs << vec(X - N.center()), vec(N.offset());
    return lp::feasible(A, rhs, tol);
}

ConstrainedMatrixZonotope compact(const ConstrainedMatrixZonotope& N)
{
    std::vector<Matrix> gens, cons;
    for (int i = 0; i < N.num_generators(); ++i)
    {
        const double gnorm = N.generators()[i].norm();
        const double anorm =
            N.constraint_generators()[i].size() > 0 ? N.constraint_generators()[i].norm() : 0.0;
        if (gnorm <= kPruneTol && anorm <= kPruneTol)
            continue;
        gens.push_back(N.generators()[i]);
        cons.push_back(N.constraint_generators()[i]);
    }
    return ConstrainedMatrixZonotope(N.center(), std::move(gens), std::move(cons), N.offset());
}

Matrix sample(const ConstrainedMatrixZonotope& N, SplitMix64& rng)
{
    const int g = N.num_generators();
    auto member = [&](const Vector& beta) {
        Matrix X = N.center();
        for (int i = 0; i < g; ++i)
            X += beta(i) * N.generators()[i];
        return X;
    };
    if (N.is_unconstrained())
    {
        Vector beta(g);
        for (int i = 0; i < g; ++i)
            beta(i) = rng.uniform_pm1();
        return member(beta);
    }
    const auto& cache = N.factor_cache();
    for (int attempt = 0; attempt < 200; ++attempt)
    {
        Vector beta(g);
        for (int i = 0; i < g; ++i)
            beta(i) = rng.uniform_pm1();
        if (cache.projector)
        {
            Vector resid = cache.system.reduced_A() * beta - cache.reduced_b;
            beta -= cache.projector->solve(resid);
        }
        if (beta.cwiseAbs().maxCoeff() <= 1.0 + 1e-12)
            return member(beta.cwiseMax(-1.0).cwiseMin(1.0));
    }
    Vector c1(g), c2(g);
    for (int i = 0; i < g; ++i)
        c1(i) = rng.uniform_pm1();
    for (int i = 0; i < g; ++i)
        c2(i) = rng.uniform_pm1();
    Vector v1 = cache.simplex.optimize(c1, true).argument;
    Vector v2 = cache.simplex.optimize(c2, true).argument;
    const double lambda = 0.2 + 0.6 * rng.uniform01();
    return member(lambda * v1 + (1.0 - lambda) * v2);
}

} // namespace zonoreach
