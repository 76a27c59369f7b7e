#include "doctest.h"
#include "test_oracles.hpp"

#include "zonoreach/constrained_zonotope.hpp"

#include <cmath>

using namespace zonoreach;

namespace
{

Zonotope make_zono(std::initializer_list<double> c, std::initializer_list<double> gflat, int g)
{
    Vector center(static_cast<int>(c.size()));
    int i = 0;
    for (double v : c)
        center(i++) = v;
    Matrix G(center.size(), g);
    i = 0;
    for (double v : gflat)
        G(i / g, i % g) = v, ++i;
    return Zonotope(std::move(center), std::move(G));
}

Zonotope random_zono(SplitMix64& rng, int n, int g, double scale = 1.0)
{
    return Zonotope(zrtest::random_vector(rng, n, scale), zrtest::random_matrix(rng, n, g, scale));
}

// support of a zonotope via corner enumeration (exact for zonotopes)
double corner_support(const Zonotope& Z, const Vector& d)
{
    const int g = Z.num_generators();
    double best = -1e300;
    for (int mask = 0; mask < (1 << g); ++mask)
    {
        Vector beta(g);
        for (int j = 0; j < g; ++j)
            beta(j) = (mask >> j & 1) ? 1.0 : -1.0;
        best = std::max(best, d.dot(Z.center() + Z.generators() * beta));
    }
    return best;
}

} // namespace

TEST_CASE("zonotope linear map")
{
    Zonotope Z = make_zono({1, 2}, {0.1, 0, 0, 0.1}, 2);
    Zonotope id = linear_map(Matrix::Identity(2, 2), Z);
    CHECK(id.center().isApprox(Z.center()));
    CHECK(id.generators().isApprox(Z.generators()));

    Zonotope zero = linear_map(Matrix::Zero(2, 2), Z);
    CHECK(zero.center().norm() == 0.0);
    CHECK(zero.generators().norm() == 0.0);

    Matrix L(2, 2);
    L << 2, 0, 0, 3;
    Zonotope scaled = linear_map(L, make_zono({1, 1}, {1, 1}, 1));
    CHECK(scaled.center()(0) == doctest::Approx(2));
    CHECK(scaled.center()(1) == doctest::Approx(3));
    CHECK(scaled.generators()(0, 0) == doctest::Approx(2));
    CHECK(scaled.generators()(1, 0) == doctest::Approx(3));

    CHECK_THROWS_AS(linear_map(Matrix::Zero(2, 3), Z), std::invalid_argument);
}

TEST_CASE("zonotope minkowski sum")
{
    Zonotope Z = make_zono({1, -1}, {0.5, 0.2, 0.1, 0.0}, 2);
    Zonotope sum_id = minkowski_sum(Z, Zonotope::singleton(Vector::Zero(2)));
    CHECK(sum_id.center().isApprox(Z.center()));
    CHECK(sum_id.generators().isApprox(Z.generators()));

    Zonotope a = make_zono({1}, {1}, 1);
    Zonotope b = make_zono({2}, {0.5}, 1);
    Zonotope s = minkowski_sum(a, b);
    CHECK(s.center()(0) == doctest::Approx(3));
    CHECK(s.generators()(0, 0) == doctest::Approx(1));
    CHECK(s.generators()(0, 1) == doctest::Approx(0.5));

    // Monte Carlo membership: sampled sums land inside the sum
    SplitMix64 rng(11);
    Zonotope Z1 = random_zono(rng, 3, 4), Z2 = random_zono(rng, 3, 2);
    Zonotope S = minkowski_sum(Z1, Z2);
    MembershipTester tester{S};
    for (int t = 0; t < 10000; ++t)
        REQUIRE(tester.contains(sample(Z1, rng) + sample(Z2, rng)));
}

TEST_CASE("zonotope cartesian product")
{
    Zonotope p = cartesian_product(make_zono({1}, {1}, 1), make_zono({2}, {3}, 1));
    CHECK(p.dim() == 2);
    CHECK(p.center()(1) == doctest::Approx(2));
    CHECK(p.generators()(0, 0) == doctest::Approx(1));
    CHECK(p.generators()(0, 1) == doctest::Approx(0));
    CHECK(p.generators()(1, 1) == doctest::Approx(3));

    // empty factor keeps the other side
    Zonotope empty(Vector(0), Matrix(0, 0));
    Zonotope same = cartesian_product(make_zono({1}, {1}, 1), empty);
    CHECK(same.dim() == 1);

    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t)
    {
        const int n1 = 1 + int(rng.next() % 3), n2 = 1 + int(rng.next() % 3);
        Zonotope Z1 = random_zono(rng, n1, 2), Z2 = random_zono(rng, n2, 3);
        CHECK(cartesian_product(Z1, Z2).dim() == n1 + n2);
    }
}

TEST_CASE("zonotope interval hull")
{
    Interval h = interval_hull(make_zono({0}, {1, -2}, 2));
    CHECK(h.lower()(0) == doctest::Approx(-3));
    CHECK(h.upper()(0) == doctest::Approx(3));

    Vector c(2);
    c << 4, -1;
    Interval hs = interval_hull(Zonotope::singleton(c));
    CHECK(hs.lower().isApprox(c));
    CHECK(hs.upper().isApprox(c));

    SplitMix64 rng(21);
    Zonotope Z = random_zono(rng, 3, 5);
    Interval h3 = interval_hull(Z);
    for (int t = 0; t < 10000; ++t)
        REQUIRE(h3.contains(sample(Z, rng), 1e-12));
}

TEST_CASE("interval to zonotope")
{
    Vector lo = Vector::Constant(3, -1.0), hi = Vector::Constant(3, 1.0);
    Zonotope box = Zonotope::from_box(Interval(lo, hi));
    CHECK(box.center().norm() == 0.0);
    CHECK(box.generators().isApprox(Matrix::Identity(3, 3)));

    Vector c(2);
    c << 0.5, -2;
    Zonotope degen = Zonotope::from_box(Interval(c, c));
    CHECK(degen.generators().norm() == 0.0);

    CHECK_THROWS_AS(Interval(hi, lo), std::invalid_argument);

    SplitMix64 rng(31);
    for (int t = 0; t < 50; ++t)
    {
        Vector a = zrtest::random_vector(rng, 4), b = zrtest::random_vector(rng, 4);
        Interval I(a.cwiseMin(b), a.cwiseMax(b));
        Interval back = interval_hull(Zonotope::from_box(I));
        CHECK(back.lower().isApprox(I.lower(), 1e-12));
        CHECK(back.upper().isApprox(I.upper(), 1e-12));
    }
}

TEST_CASE("constrained zonotope construction and linear map")
{
    // infeasible constraints rejected eagerly
    Matrix G(1, 1);
    G << 1;
    Matrix A(1, 1);
    A << 1;
    Vector b(1);
    b << 2;
    CHECK_THROWS_AS(ConstrainedZonotope(Vector::Zero(1), G, A, b), std::invalid_argument);

    Matrix G2(2, 2);
    G2 << 1, 0.5, 0, 1;
    Matrix A2(1, 2);
    A2 << 1, 1;
    Vector b2(1);
    b2 << 0.5;
    ConstrainedZonotope C(Vector::Zero(2), G2, A2, b2);

    ConstrainedZonotope ident = linear_map(Matrix::Identity(2, 2), C);
    CHECK(ident.center().isApprox(C.center()));
    CHECK(ident.generators().isApprox(C.generators()));
    CHECK(ident.constraint_matrix().isApprox(C.constraint_matrix()));

    ConstrainedZonotope zero = linear_map(Matrix::Zero(2, 2), C);
    CHECK(zero.generators().norm() == 0.0);

    SplitMix64 rng(3);
    Matrix L = zrtest::random_matrix(rng, 2, 2);
    ConstrainedZonotope mapped = linear_map(L, C);
    MembershipTester tester{mapped};
    for (int t = 0; t < 500; ++t)
        REQUIRE(tester.contains(L * sample(C, rng), 1e-8));
}

TEST_CASE("constrained zonotope sum and product with zonotopes")
{
    SplitMix64 rng(7);
    Matrix G(2, 3);
    G << 1, 0, 0.5, 0, 1, -0.5;
    Matrix A(1, 3);
    A << 1, 1, 0;
    Vector b(1);
    b << 0.3;
    ConstrainedZonotope C(Vector::Zero(2), G, A, b);
    Zonotope Z = random_zono(rng, 2, 2, 0.5);

    ConstrainedZonotope S = minkowski_sum(C, Zonotope::singleton(Vector::Zero(2)));
    CHECK(S.num_generators() == C.num_generators());

    // unconstrained degeneracy matches the plain zonotope operation
    ConstrainedZonotope lifted{Zonotope(C.center(), C.generators())};
    ConstrainedZonotope s1 = minkowski_sum(lifted, Z);
    Zonotope s2 = minkowski_sum(Zonotope(C.center(), C.generators()), Z);
    for (int t = 0; t < 20; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(support(s1, d) == doctest::Approx(support(s2, d)).epsilon(1e-10));
    }

    ConstrainedZonotope sum = minkowski_sum(C, Z);
    MembershipTester tester{sum};
    for (int t = 0; t < 2000; ++t)
        REQUIRE(tester.contains(sample(C, rng) + sample(Z, rng), 1e-8));

    ConstrainedZonotope prod = cartesian_product(C, Z);
    CHECK(prod.dim() == 4);
    MembershipTester ptester{prod};
    for (int t = 0; t < 500; ++t)
    {
        Vector p(4);
        p << sample(C, rng), sample(Z, rng);
        REQUIRE(ptester.contains(p, 1e-8));
    }
}

TEST_CASE("constrained zonotope interval hull")
{
    // unconstrained matches the zonotope hull
    SplitMix64 rng(13);
    Zonotope Z = random_zono(rng, 3, 4);
    Interval hz = interval_hull(Z);
    Interval hc = interval_hull(ConstrainedZonotope{Z});
    CHECK(hc.lower().isApprox(hz.lower(), 1e-9));
    CHECK(hc.upper().isApprox(hz.upper(), 1e-9));

    // hand LP: first factor pinned at 1, second free
    Matrix G(1, 2);
    G << 1, 1;
    Matrix A(1, 2);
    A << 1, 0;
    Vector b(1);
    b << 1;
    Interval h = interval_hull(ConstrainedZonotope(Vector::Zero(1), G, A, b));
    CHECK(h.lower()(0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(h.upper()(0) == doctest::Approx(2.0).epsilon(1e-9));

    Matrix G2(2, 3);
    G2 << 1, 0.2, -0.4, 0, 1, 0.3;
    Matrix A2(1, 3);
    A2 << 1, 1, 1;
    Vector b2(1);
    b2 << 0.4;
    ConstrainedZonotope C(Vector::Ones(2), G2, A2, b2);
    Interval h2 = interval_hull(C);
    for (int t = 0; t < 10000; ++t)
        REQUIRE(h2.contains(sample(C, rng), 1e-9));
}

TEST_CASE("support function")
{
    Vector e1 = Vector::Zero(2);
    e1(0) = 1;
    Zonotope box = Zonotope::from_box(Interval(Vector::Constant(2, -1), Vector::Constant(2, 1)));
    CHECK(support(box, e1) == doctest::Approx(1.0));

    SplitMix64 rng(17);
    Zonotope Z1 = random_zono(rng, 2, 3), Z2 = random_zono(rng, 2, 4);
    Zonotope S = minkowski_sum(Z1, Z2);
    for (int t = 0; t < 100; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(support(S, d) ==
              doctest::Approx(support(Z1, d) + support(Z2, d)).epsilon(1e-12));
        // adjoint law for linear maps
        Matrix L = zrtest::random_matrix(rng, 2, 2);
        CHECK(support(linear_map(L, Z1), d) ==
              doctest::Approx(support(Z1, L.transpose() * d)).epsilon(1e-12));
    }

    // corner-enumeration oracle, exact for zonotopes
    for (int t = 0; t < 25; ++t)
    {
        Zonotope Z = random_zono(rng, 2, 6);
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(std::abs(support(Z, d) - corner_support(Z, d)) <= 1e-9);
    }

    // constrained support against vertex enumeration of the factor polytope
    Matrix G(2, 3);
    G << 1, 0, 0.3, 0, 1, -0.2;
    Matrix A(1, 3);
    A << 1, -1, 0.5;
    Vector b(1);
    b << 0.25;
    ConstrainedZonotope C(Vector::Zero(2), G, A, b);
    for (int t = 0; t < 50; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        auto oracle = zrtest::enumerate_box_optimum(G.transpose() * d, A, b);
        REQUIRE(oracle.feasible);
        CHECK(std::abs(support(C, d) - oracle.max_value) <= 1e-9);
    }
}

TEST_CASE("containment")
{
    SplitMix64 rng(19);
    Zonotope Z = random_zono(rng, 2, 4);
    CHECK(contains(Z, Z.center()));

    // 1-D: just beyond the radius is outside
    Zonotope line = make_zono({0.5}, {1, 0.25}, 2);
    const double radius = 1.25;
    CHECK(contains(line, Vector::Constant(1, 0.5 + radius)));
    CHECK_FALSE(contains(line, Vector::Constant(1, 0.5 + 1.001 * radius)));

    // agreement with the support-function test along random directions
    for (int t = 0; t < 100; ++t)
    {
        Vector x = sample(Z, rng);
        REQUIRE(contains(Z, x, 1e-8));
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(d.dot(x) <= support(Z, d) + 1e-8);
    }
    for (int t = 0; t < 50; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        Vector x = Z.center() + 1.01 * (support(Z, d) - d.dot(Z.center())) * d;
        CHECK_FALSE(contains(Z, x, 1e-9));
        CHECK(d.dot(x) > support(Z, d));
    }
}

TEST_CASE("order reduction")
{
    SplitMix64 rng(23);
    Zonotope small = random_zono(rng, 2, 3);
    Zonotope same = reduce_order(small, 2); // cap 4 >= 3
    CHECK(same.num_generators() == small.num_generators());

    // axis-aligned generators reduce exactly
    Matrix G(2, 6);
    G << 1, 0, 0.5, 0, 0.25, 0, 0, 1, 0, 0.5, 0, 0.25;
    Zonotope axis(Vector::Zero(2), G);
    Zonotope red = reduce_order(axis, 1);
    CHECK(red.num_generators() == 2);
    for (int t = 0; t < 50; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(support(red, d) == doctest::Approx(support(axis, d)).epsilon(1e-12));
    }

    Zonotope big = random_zono(rng, 3, 40);
    Zonotope capped = reduce_order(big, 4);
    CHECK(capped.num_generators() <= 12);
    for (int t = 0; t < 100; ++t)
    {
        Vector d = zrtest::random_direction(rng, 3);
        CHECK(support(capped, d) >= support(big, d) - 1e-12);
    }
}

TEST_CASE("compact is exact")
{
    SplitMix64 rng(29);
    Matrix G(2, 5);
    G.col(0) << 1, 1;
    G.col(1) << -2, -2; // parallel to col 0
    G.col(2) << 0, 0;   // dropped
    G.col(3) << 0.5, -0.5;
    G.col(4) << 3, 3; // parallel again
    Zonotope Z(Vector::Zero(2), G);
    Zonotope Zc = compact(Z);
    CHECK(Zc.num_generators() == 2);
    for (int t = 0; t < 200; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(support(Zc, d) == doctest::Approx(support(Z, d)).epsilon(1e-12));
    }
}

TEST_CASE("sampling stays inside")
{
    SplitMix64 rng(37);
    Zonotope Z = random_zono(rng, 3, 5);
    for (int t = 0; t < 200; ++t)
        REQUIRE(contains(Z, sample(Z, rng), 1e-8));

    Matrix G(2, 4);
    G << 1, 0, 0.3, -0.1, 0, 1, 0.2, 0.4;
    Matrix A(2, 4);
    A << 1, 1, 0, 0, 0, 1, -1, 0;
    Vector b(2);
    b << 0.4, -0.2;
    ConstrainedZonotope C(Vector::Zero(2), G, A, b);
    MembershipTester tester{C};
    for (int t = 0; t < 500; ++t)
        REQUIRE(tester.contains(sample(C, rng), 1e-8));
}
