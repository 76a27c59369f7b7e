#include "zonoreach/zonotope.hpp"

#include "zonoreach/lp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace zonoreach
{

Zonotope::Zonotope(Vector center, Matrix generators)
    : center_(std::move(center)), generators_(std::move(generators))
{
    if (generators_.size() == 0 && generators_.rows() != center_.size())
        generators_.resize(center_.size(), 0);
    if (generators_.rows() != center_.size())
        throw std::invalid_argument("Zonotope: center/generator dimensions differ");
    if (!center_.allFinite() || !generators_.allFinite())
        throw std::invalid_argument("Zonotope: non-finite entries");
}

Zonotope Zonotope::singleton(Vector center)
{
    const auto n = center.size();
    return Zonotope(std::move(center), Matrix(n, 0));
}

Zonotope Zonotope::from_box(const Interval& box)
{
    Matrix G = box.radius().asDiagonal();
    return Zonotope(box.center(), std::move(G));
}

Zonotope linear_map(const Matrix& L, const Zonotope& Z)
{
    if (L.cols() != Z.dim())
        throw std::invalid_argument("linear_map: matrix/zonotope dimensions differ");
    return Zonotope(L * Z.center(), L * Z.generators());
}

Zonotope negate(const Zonotope& Z) { return Zonotope(-Z.center(), -Z.generators()); }

Zonotope minkowski_sum(const Zonotope& Z1, const Zonotope& Z2)
{
    if (Z1.dim() != Z2.dim())
        throw std::invalid_argument("minkowski_sum: dimensions differ");
    Matrix G(Z1.dim(), Z1.num_generators() + Z2.num_generators());
    G << Z1.generators(), Z2.generators();
    return Zonotope(Z1.center() + Z2.center(), std::move(G));
}

Zonotope cartesian_product(const Zonotope& Z1, const Zonotope& Z2)
{
    const int n1 = Z1.dim(), n2 = Z2.dim();
    const int g1 = Z1.num_generators(), g2 = Z2.num_generators();
    Vector c(n1 + n2);
    c << Z1.center(), Z2.center();
    Matrix G = Matrix::Zero(n1 + n2, g1 + g2);
    G.topLeftCorner(n1, g1) = Z1.generators();
    G.bottomRightCorner(n2, g2) = Z2.generators();
    return Zonotope(std::move(c), std::move(G));
}

Interval interval_hull(const Zonotope& Z)
{
    Vector radius = Z.generators().cwiseAbs().rowwise().sum();
    return Interval(Z.center() - radius, Z.center() + radius);
}

double support(const Zonotope& Z, const Vector& d)
{
    if (d.size() != Z.dim())
        throw std::invalid_argument("support: direction dimension differs");
    return d.dot(Z.center()) + (Z.generators().transpose() * d).cwiseAbs().sum();
}

bool contains(const Zonotope& Z, const Vector& x, double tol)
{
    if (x.size() != Z.dim())
        throw std::invalid_argument("contains: point dimension differs");
    return lp::feasible(Z.generators(), x - Z.center(), tol);
}

Zonotope reduce_order(const Zonotope& Z, int max_order)
{
    if (max_order < 1)
        throw std::invalid_argument("reduce_order: max_order must be >= 1");
    const int n = Z.dim();
    const int g = Z.num_generators();
    const int cap = n * max_order;
    if (g <= cap)
        return Z;

    // Girard metric: generators closest to axis-aligned are boxed first.
    std::vector<int> order(g);
    std::iota(order.begin(), order.end(), 0);
    Vector metric(g);
    for (int j = 0; j < g; ++j)
        metric(j) = Z.generators().col(j).lpNorm<1>() - Z.generators().col(j).lpNorm<Eigen::Infinity>();
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return metric(a) < metric(b); });

    const int absorb = g - (cap - n);
    Vector box_radius = Vector::Zero(n);
    Matrix G(n, cap);
    for (int k = 0; k < absorb; ++k)
        box_radius += Z.generators().col(order[k]).cwiseAbs();
    for (int k = absorb; k < g; ++k)
        G.col(k - absorb) = Z.generators().col(order[k]);
    G.rightCols(n) = box_radius.asDiagonal();
    return Zonotope(Z.center(), std::move(G));
}

Zonotope compact(const Zonotope& Z)
{
    const int n = Z.dim();
    const int g = Z.num_generators();
    std::vector<Vector> merged;
    merged.reserve(g);
    for (int j = 0; j < g; ++j)
    {
        Vector col = Z.generators().col(j);
        const double norm = col.norm();
        if (norm <= kPruneTol)
            continue;
        Vector dir = col / norm;
        // canonical sign: first non-negligible entry positive
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
            const double mnorm = m.norm();
            if ((m / mnorm - dir).cwiseAbs().maxCoeff() <= 1e-12)
            {
                m += norm * dir;
                found = true;
                break;
            }
        }
        if (!found)
            merged.push_back(norm * dir);
    }
    Matrix G(n, static_cast<int>(merged.size()));
    for (std::size_t k = 0; k < merged.size(); ++k)
        G.col(static_cast<int>(k)) = merged[k];
    return Zonotope(Z.center(), std::move(G));
}

Vector sample(const Zonotope& Z, SplitMix64& rng)
{
    Vector beta(Z.num_generators());
    for (int j = 0; j < beta.size(); ++j)
        beta(j) = rng.uniform_pm1();
    return Z.center() + Z.generators() * beta;
}

} // namespace zonoreach
