#include "zonoreach/constrained_zonotope.hpp"

#include "zonoreach/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace zonoreach
{

namespace
{

std::shared_ptr<const detail::FactorSetCache> build_cache(const Matrix& A, const Vector& b)
{
    lp::EqualitySystem system(A);
    auto rb = system.reduce_rhs(b);
    if (!rb)
        throw std::invalid_argument("ConstrainedZonotope: constraints are inconsistent");
    lp::BoxSimplex simplex(system.reduced_A(), *rb);
    if (!simplex.feasible())
        throw std::invalid_argument("ConstrainedZonotope: constraint set is empty");
    std::optional<Eigen::CompleteOrthogonalDecomposition<Matrix>> projector;
    if (system.reduced_A().rows() > 0 && system.reduced_A().cols() > 0)
        projector.emplace(system.reduced_A());
    auto cache = std::make_shared<detail::FactorSetCache>(detail::FactorSetCache{
        std::move(system), std::move(*rb), std::move(simplex), std::move(projector)});
    return cache;
}

} // namespace

ConstrainedZonotope::ConstrainedZonotope(Vector center, Matrix generators, Matrix A, Vector b)
    : center_(std::move(center)),
      generators_(std::move(generators)),
      A_(std::move(A)),
      b_(std::move(b)),
      bounds_(std::make_shared<detail::BoundsMemo>())
{
    if (generators_.size() == 0 && generators_.rows() != center_.size())
        generators_.resize(center_.size(), 0);
    if (A_.size() == 0)
    {
        A_.resize(b_.size(), generators_.cols());
        A_.setZero();
    }
    if (generators_.rows() != center_.size())
        throw std::invalid_argument("ConstrainedZonotope: center/generator dimensions differ");
    if (A_.cols() != generators_.cols())
        throw std::invalid_argument("ConstrainedZonotope: constraint/generator columns differ");
    if (A_.rows() != b_.size())
        throw std::invalid_argument("ConstrainedZonotope: constraint rows/offset differ");
    if (!center_.allFinite() || !generators_.allFinite() || !A_.allFinite() || !b_.allFinite())
        throw std::invalid_argument("ConstrainedZonotope: non-finite entries");
    cache_ = build_cache(A_, b_);
}

ConstrainedZonotope::ConstrainedZonotope(const Zonotope& Z)
    : ConstrainedZonotope(Z.center(), Z.generators(), Matrix(0, Z.num_generators()), Vector(0))
{
}

ConstrainedZonotope linear_map(const Matrix& L, const ConstrainedZonotope& C)
{
    if (L.cols() != C.dim())
        throw std::invalid_argument("linear_map: matrix/set dimensions differ");
    return ConstrainedZonotope(L * C.center(), L * C.generators(), C.constraint_matrix(),
                               C.constraint_vector());
}

ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& C, const Zonotope& Z)
{
    if (C.dim() != Z.dim())
        throw std::invalid_argument("minkowski_sum: dimensions differ");
    Matrix G(C.dim(), C.num_generators() + Z.num_generators());
    G << C.generators(), Z.generators();
    Matrix A = Matrix::Zero(C.num_constraints(), G.cols());
    A.leftCols(C.num_generators()) = C.constraint_matrix();
    return ConstrainedZonotope(C.center() + Z.center(), std::move(G), std::move(A),
                               C.constraint_vector());
}

ConstrainedZonotope cartesian_product(const ConstrainedZonotope& C, const Zonotope& Z)
{
    const int n1 = C.dim(), n2 = Z.dim();
    const int g1 = C.num_generators(), g2 = Z.num_generators();
    Vector c(n1 + n2);
    c << C.center(), Z.center();
    Matrix G = Matrix::Zero(n1 + n2, g1 + g2);
    G.topLeftCorner(n1, g1) = C.generators();
    G.bottomRightCorner(n2, g2) = Z.generators();
    Matrix A = Matrix::Zero(C.num_constraints(), g1 + g2);
    A.leftCols(g1) = C.constraint_matrix();
    return ConstrainedZonotope(std::move(c), std::move(G), std::move(A), C.constraint_vector());
}

Interval interval_hull(const ConstrainedZonotope& C)
{
    if (C.is_unconstrained())
        return interval_hull(Zonotope(C.center(), C.generators()));
    const auto& cache = C.factor_cache();
    Vector lo(C.dim()), hi(C.dim());
    for (int i = 0; i < C.dim(); ++i)
    {
        Vector obj = C.generators().row(i).transpose();
        auto rmin = cache.simplex.optimize(obj, false);
        auto rmax = cache.simplex.optimize(obj, true);
        if (rmin.status == lp::Status::infeasible || rmax.status == lp::Status::infeasible)
            throw std::runtime_error("interval_hull: infeasible constraint set");
        lo(i) = C.center()(i) + rmin.value;
        hi(i) = C.center()(i) + rmax.value;
    }
    return Interval(std::move(lo), std::move(hi));
}

double support(const ConstrainedZonotope& C, const Vector& d)
{
    if (d.size() != C.dim())
        throw std::invalid_argument("support: direction dimension differs");
    if (C.is_unconstrained())
        return support(Zonotope(C.center(), C.generators()), d);
    Vector obj = C.generators().transpose() * d;
    auto r = C.factor_cache().simplex.optimize(obj, true);
    if (r.status == lp::Status::infeasible)
        throw std::runtime_error("support: infeasible constraint set");
    return d.dot(C.center()) + r.value;
}

bool contains(const ConstrainedZonotope& C, const Vector& x, double tol)
{
    return MembershipTester(C).contains(x, tol);
}

FactorBounds factor_bounds(const ConstrainedZonotope& C)
{
    std::call_once(C.bounds_->flag, [&] {
        const int g = C.num_generators();
        FactorBounds fb;
        fb.lower = Vector::Constant(g, -1.0);
        fb.upper = Vector::Constant(g, 1.0);
        if (!C.is_unconstrained())
        {
            // independent programs, safe to run concurrently
            const auto& cache = C.factor_cache();
            parallel_for(g, [&](int i) {
                Vector e = Vector::Zero(g);
                e(i) = 1.0;
                fb.lower(i) = std::clamp(cache.simplex.optimize(e, false).value, -1.0, 1.0);
                fb.upper(i) = std::clamp(cache.simplex.optimize(e, true).value, -1.0, 1.0);
            });
        }
        C.bounds_->value = std::move(fb);
    });
    return C.bounds_->value;
}

ConstrainedZonotope compact(const ConstrainedZonotope& C)
{
    const int n = C.dim();
    const int g = C.num_generators();
    const Matrix& G = C.generators();
    const Matrix& A = C.constraint_matrix();

    std::vector<int> constrained;
    std::vector<Vector> merged; // parallel-merged unconstrained generators
    for (int j = 0; j < g; ++j)
    {
        const double acol = C.num_constraints() > 0 ? A.col(j).cwiseAbs().maxCoeff() : 0.0;
        const double norm = G.col(j).norm();
        if (acol > kPruneTol)
        {
            constrained.push_back(j);
            continue;
        }
        if (norm <= kPruneTol)
            continue;
        Vector dir = G.col(j) / norm;
        for (int i = 0; i < n; ++i)
        {
            if (std::abs(dir(i)) > 1e-12)
            {
                if (dir(i) < 0)
                    dir = -dir;
                break;
            }
        }
        bool found = false;
        for (Vector& m : merged)
        {
            if ((m / m.norm() - dir).cwiseAbs().maxCoeff() <= 1e-12)
            {
                m += norm * dir;
                found = true;
                break;
            }
        }
        if (!found)
            merged.push_back(norm * dir);
    }

    // keep constraint rows that still say something
    std::vector<int> rows;
    for (int i = 0; i < C.num_constraints(); ++i)
    {
        const bool zero_row = A.row(i).cwiseAbs().maxCoeff() <= kPruneTol;
        if (zero_row && std::abs(C.constraint_vector()(i)) <= kFeasTol)
            continue;
        rows.push_back(i);
    }

    const int gc = static_cast<int>(constrained.size());
    const int gm = static_cast<int>(merged.size());
    Matrix Gn(n, gc + gm);
    Matrix An = Matrix::Zero(static_cast<int>(rows.size()), gc + gm);
    Vector bn(static_cast<int>(rows.size()));
    for (int k = 0; k < gc; ++k)
        Gn.col(k) = G.col(constrained[k]);
    for (int k = 0; k < gm; ++k)
        Gn.col(gc + k) = merged[k];
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        bn(static_cast<int>(r)) = C.constraint_vector()(rows[r]);
        for (int k = 0; k < gc; ++k)
            An(static_cast<int>(r), k) = A(rows[r], constrained[k]);
    }
    return ConstrainedZonotope(C.center(), std::move(Gn), std::move(An), std::move(bn));
}

Vector sample(const ConstrainedZonotope& C, SplitMix64& rng)
{
    const int g = C.num_generators();
    if (C.is_unconstrained())
        return sample(Zonotope(C.center(), C.generators()), rng);

    const auto& cache = C.factor_cache();
    for (int attempt = 0; attempt < 200; ++attempt)
    {
        Vector beta(g);
        for (int j = 0; j < g; ++j)
            beta(j) = rng.uniform_pm1();
        if (cache.projector)
        {
            Vector resid = cache.system.reduced_A() * beta - cache.reduced_b;
            beta -= cache.projector->solve(resid);
        }
        if (beta.cwiseAbs().maxCoeff() <= 1.0 + 1e-12)
        {
            beta = beta.cwiseMax(-1.0).cwiseMin(1.0);
            return C.center() + C.generators() * beta;
        }
    }
    // rejection failed; blend two vertices obtained from random objectives
    Vector c1(g), c2(g);
    for (int j = 0; j < g; ++j)
        c1(j) = rng.uniform_pm1();
    for (int j = 0; j < g; ++j)
        c2(j) = rng.uniform_pm1();
    Vector v1 = cache.simplex.optimize(c1, true).argument;
    Vector v2 = cache.simplex.optimize(c2, true).argument;
    const double lambda = 0.2 + 0.6 * rng.uniform01();
    Vector beta = lambda * v1 + (1.0 - lambda) * v2;
    return C.center() + C.generators() * beta;
}

MembershipTester::MembershipTester(const Zonotope& Z)
    : center_(Z.center()), fixed_rhs_(Vector(0)), point_dim_(Z.dim())
{
    system_ = std::make_shared<lp::EqualitySystem>(Z.generators());
    if (system_->reduced_A().size() > 0)
        projector_ = std::make_shared<Eigen::CompleteOrthogonalDecomposition<Matrix>>(
            system_->reduced_A());
}

MembershipTester::MembershipTester(const ConstrainedZonotope& C)
    : center_(C.center()), fixed_rhs_(C.constraint_vector()), point_dim_(C.dim())
{
    Matrix M(C.dim() + C.num_constraints(), C.num_generators());
    M.topRows(C.dim()) = C.generators();
    M.bottomRows(C.num_constraints()) = C.constraint_matrix();
    system_ = std::make_shared<lp::EqualitySystem>(M);
    if (system_->reduced_A().size() > 0)
        projector_ = std::make_shared<Eigen::CompleteOrthogonalDecomposition<Matrix>>(
            system_->reduced_A());
}

bool MembershipTester::contains(const Vector& x, double tol) const
{
    if (x.size() != point_dim_)
        throw std::invalid_argument("contains: point dimension differs");
    Vector rhs(point_dim_ + fixed_rhs_.size());
    rhs << x - center_, fixed_rhs_;
    auto rb = system_->reduce_rhs(rhs, tol);
    if (!rb)
        return false;
    if (projector_ && certificate_misses_->load(std::memory_order_relaxed) < 12)
    {
        // cheap certificate by alternating projections between the affine
        // subspace and the box: when the iterate satisfies both within
        // tolerance, membership is settled without an LP. Points on the
        // boundary may not settle; those fall through to the exact LP.
        const Matrix& A = system_->reduced_A();
        Vector beta = projector_->solve(*rb);
        double checkpoint = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 500; ++it)
        {
            Vector clipped = beta.cwiseMax(-1.0).cwiseMin(1.0);
            Vector resid = A * clipped - *rb;
            const double r = resid.cwiseAbs().maxCoeff();
            if (r <= tol)
                return true;
            if (it % 32 == 31)
            {
                // tangential geometry converges too slowly to be worth it
                if (r > 0.5 * checkpoint)
                    break;
                checkpoint = r;
            }
            beta = clipped - projector_->solve(resid);
        }
        certificate_misses_->fetch_add(1, std::memory_order_relaxed);
    }
    lp::BoxSimplex simplex(system_->reduced_A(), *rb);
    return simplex.infeasibility() <= tol;
}

double MembershipTester::violation(const Vector& x) const
{
    if (x.size() != point_dim_)
        throw std::invalid_argument("violation: point dimension differs");
    Vector rhs(point_dim_ + fixed_rhs_.size());
    rhs << x - center_, fixed_rhs_;
    auto rb = system_->reduce_rhs(rhs, std::numeric_limits<double>::infinity());
    lp::BoxSimplex simplex(system_->reduced_A(), *rb);
    return std::max(simplex.infeasibility(), system_->max_inconsistency(rhs));
}

} // namespace zonoreach
