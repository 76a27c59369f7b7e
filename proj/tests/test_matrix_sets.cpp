#include "doctest.h"
#include "test_oracles.hpp"

#include "zonoreach/constrained_matrix_zonotope.hpp"

#include <cmath>

using namespace zonoreach;

namespace
{

MatrixZonotope random_mz(SplitMix64& rng, int rows, int cols, int g, double scale = 1.0)
{
    std::vector<Matrix> gens;
    for (int i = 0; i < g; ++i)
        gens.push_back(zrtest::random_matrix(rng, rows, cols, scale));
    return MatrixZonotope(zrtest::random_matrix(rng, rows, cols, scale), std::move(gens));
}

// CMZ whose constraints are consistent by construction (offset generated from
// a feasible factor assignment).
ConstrainedMatrixZonotope random_cmz(SplitMix64& rng, int rows, int cols, int g, int nc, int na)
{
    std::vector<Matrix> gens, cons;
    for (int i = 0; i < g; ++i)
    {
        gens.push_back(zrtest::random_matrix(rng, rows, cols));
        cons.push_back(zrtest::random_matrix(rng, nc, na));
    }
    Vector beta0 = zrtest::random_vector(rng, g, 0.8);
    Matrix B = Matrix::Zero(nc, na);
    for (int i = 0; i < g; ++i)
        B += beta0(i) * cons[i];
    return ConstrainedMatrixZonotope(zrtest::random_matrix(rng, rows, cols), std::move(gens),
                                     std::move(cons), std::move(B));
}

} // namespace

TEST_CASE("noise matrix zonotope layout")
{
    Vector g1(3);
    g1 << 0.005, 0.005, 0.005;
    Zonotope Zw(Vector::Zero(3), g1);
    MatrixZonotope Mw = noise_matrix_zonotope(Zw, 2);
    CHECK(Mw.center().isZero());
    REQUIRE(Mw.num_generators() == 2);
    CHECK(Mw.generators()[0].col(0).isApprox(g1));
    CHECK(Mw.generators()[0].col(1).isZero());
    CHECK(Mw.generators()[1].col(0).isZero());
    CHECK(Mw.generators()[1].col(1).isApprox(g1));

    // no generators: replicated center only
    Vector cw(2);
    cw << 0.1, -0.2;
    MatrixZonotope M0 = noise_matrix_zonotope(Zonotope::singleton(cw), 4);
    CHECK(M0.num_generators() == 0);
    CHECK(M0.center().col(3).isApprox(cw));

    // column slices of sampled members lie in the noise zonotope
    SplitMix64 rng(1);
    Vector g2(2);
    g2 << 0.4, -0.3;
    Matrix G(2, 2);
    G.col(0) = g2;
    G.col(1) << 0.1, 0.2;
    Zonotope Zw2(Vector::Ones(2), G);
    MatrixZonotope Mw2 = noise_matrix_zonotope(Zw2, 5);
    for (int t = 0; t < 200; ++t)
    {
        Matrix W = sample(Mw2, rng);
        for (int j = 0; j < 5; ++j)
            REQUIRE(contains(Zw2, Vector(W.col(j)), 1e-8));
    }
}

TEST_CASE("matrix zonotope affine map")
{
    SplitMix64 rng(2);
    Matrix X = zrtest::random_matrix(rng, 2, 6);
    Matrix H = zrtest::random_matrix(rng, 6, 3);

    MatrixZonotope singleton = MatrixZonotope::singleton(zrtest::random_matrix(rng, 2, 6));
    MatrixZonotope res = affine_map(X, singleton, H);
    CHECK(res.num_generators() == 0);
    CHECK(res.center().isApprox((X - singleton.center()) * H));

    MatrixZonotope M = random_mz(rng, 2, 6, 3);
    MatrixZonotope ident = affine_map(X, M, Matrix::Identity(6, 6));
    CHECK(ident.center().isApprox(X - M.center()));

    MatrixZonotope mapped = affine_map(X, M, H);
    for (int t = 0; t < 300; ++t)
        REQUIRE(contains(mapped, Matrix((X - sample(M, rng)) * H), 1e-8));
}

TEST_CASE("matrix zonotope times zonotope")
{
    SplitMix64 rng(3);
    Zonotope Z(zrtest::random_vector(rng, 3), zrtest::random_matrix(rng, 3, 2));

    MatrixZonotope singleton = MatrixZonotope::singleton(zrtest::random_matrix(rng, 2, 3));
    Zonotope direct = product(singleton, Z);
    Zonotope lm = linear_map(singleton.center(), Z);
    for (int t = 0; t < 20; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(support(direct, d) == doctest::Approx(support(lm, d)).epsilon(1e-12));
    }

    MatrixZonotope M = random_mz(rng, 2, 3, 3);
    Zonotope fixed = product(M, Zonotope::singleton(Z.center()));
    CHECK(fixed.num_generators() == M.num_generators());
    for (int i = 0; i < M.num_generators(); ++i)
        CHECK(fixed.generators().col(i).isApprox(M.generators()[i] * Z.center()));

    Zonotope full = product(M, Z);
    MembershipTester tester{full};
    for (int t = 0; t < 10000; ++t)
        REQUIRE(tester.contains(sample(M, rng) * sample(Z, rng), 1e-8));
}

TEST_CASE("cmz linear map and sum")
{
    SplitMix64 rng(4);
    ConstrainedMatrixZonotope N = random_cmz(rng, 2, 3, 3, 2, 2);

    ConstrainedMatrixZonotope ident = linear_map(Matrix::Identity(2, 2), N);
    CHECK(ident.center().isApprox(N.center()));

    ConstrainedMatrixZonotope zero = linear_map(Matrix::Zero(2, 2), N);
    CHECK(zero.center().isZero());
    for (const Matrix& G : zero.generators())
        CHECK(G.isZero());

    Matrix R = zrtest::random_matrix(rng, 2, 2);
    ConstrainedMatrixZonotope mapped = linear_map(R, N);
    for (int t = 0; t < 100; ++t)
        REQUIRE(contains(mapped, Matrix(R * sample(N, rng)), 1e-7));

    // sum with an unconstrained zero singleton keeps the member set
    ConstrainedMatrixZonotope zero_set{MatrixZonotope::singleton(Matrix::Zero(2, 3))};
    ConstrainedMatrixZonotope padded = minkowski_sum(N, zero_set);
    for (int t = 0; t < 100; ++t)
        REQUIRE(contains(padded, sample(N, rng), 1e-7));

    // unconstrained inputs degrade to the matrix-zonotope sum
    MatrixZonotope M1 = random_mz(rng, 2, 3, 2), M2 = random_mz(rng, 2, 3, 2);
    ConstrainedMatrixZonotope s =
        minkowski_sum(ConstrainedMatrixZonotope{M1}, ConstrainedMatrixZonotope{M2});
    MatrixZonotope sm = minkowski_sum(M1, M2);
    CHECK(s.center().isApprox(sm.center()));
    REQUIRE(s.num_generators() == sm.num_generators());
    for (int i = 0; i < s.num_generators(); ++i)
        CHECK(s.generators()[i].isApprox(sm.generators()[i]));

    ConstrainedMatrixZonotope N2 = random_cmz(rng, 2, 3, 2, 1, 2);
    ConstrainedMatrixZonotope sum = minkowski_sum(N, N2);
    for (int t = 0; t < 300; ++t)
        REQUIRE(contains(sum, Matrix(sample(N, rng) + sample(N2, rng)), 1e-7));
}

TEST_CASE("cmz factor bounds")
{
    SplitMix64 rng(6);
    MatrixZonotope M = random_mz(rng, 2, 2, 4);
    FactorBounds fb = factor_bounds(ConstrainedMatrixZonotope{M});
    CHECK(fb.lower.isApproxToConstant(-1.0));
    CHECK(fb.upper.isApproxToConstant(1.0));

    // single constraint beta_1 * 1 = 1 forces the first factor
    std::vector<Matrix> gens{zrtest::random_matrix(rng, 2, 2), zrtest::random_matrix(rng, 2, 2)};
    Matrix one(1, 1), zero(1, 1);
    one << 1;
    zero << 0;
    ConstrainedMatrixZonotope forced(Matrix::Zero(2, 2), gens, {one, zero}, one);
    FactorBounds fbf = factor_bounds(forced);
    CHECK(fbf.lower(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fbf.upper(0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fbf.lower(1) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fbf.upper(1) == doctest::Approx(1.0).epsilon(1e-9));

    // grid-aligned instances: dense grid search reproduces the bounds
    for (int inst = 0; inst < 5; ++inst)
    {
        // constraint beta_1 + beta_2 = v with v on the grid
        const double v = std::round(rng.uniform_pm1() * 50.0) / 50.0;
        Matrix a1(1, 1), a2(1, 1), a3(1, 1), B(1, 1);
        a1 << 1;
        a2 << 1;
        a3 << 0;
        B << v;
        std::vector<Matrix> g3{zrtest::random_matrix(rng, 2, 2),
                               zrtest::random_matrix(rng, 2, 2),
                               zrtest::random_matrix(rng, 2, 2)};
        ConstrainedMatrixZonotope N(Matrix::Zero(2, 2), g3, {a1, a2, a3}, B);
        FactorBounds fb3 = factor_bounds(N);

        Vector glo = Vector::Constant(3, 2.0), ghi = Vector::Constant(3, -2.0);
        const int pts = 201; // step 0.01
        for (int i = 0; i < pts; ++i)
        {
            for (int j = 0; j < pts; ++j)
            {
                const double b1 = -1.0 + 2.0 * i / (pts - 1);
                const double b2 = -1.0 + 2.0 * j / (pts - 1);
                if (std::abs(b1 + b2 - v) > 1e-6)
                    continue;
                glo(0) = std::min(glo(0), b1);
                ghi(0) = std::max(ghi(0), b1);
                glo(1) = std::min(glo(1), b2);
                ghi(1) = std::max(ghi(1), b2);
                glo(2) = -1.0;
                ghi(2) = 1.0;
            }
        }
        for (int k = 0; k < 3; ++k)
        {
            CHECK(std::abs(fb3.lower(k) - glo(k)) <= 1e-3);
            CHECK(std::abs(fb3.upper(k) - ghi(k)) <= 1e-3);
        }
    }
}

TEST_CASE("factor bounds tighten monotonically")
{
    SplitMix64 rng(8);
    std::vector<Matrix> gens;
    std::vector<Matrix> cons;
    for (int i = 0; i < 3; ++i)
    {
        gens.push_back(zrtest::random_matrix(rng, 2, 2));
        cons.push_back(zrtest::random_matrix(rng, 1, 2));
    }
    Vector beta0 = zrtest::random_vector(rng, 3, 0.5);
    Matrix B = Matrix::Zero(1, 2);
    for (int i = 0; i < 3; ++i)
        B += beta0(i) * cons[i];
    ConstrainedMatrixZonotope loose(Matrix::Zero(2, 2), gens, cons, B);

    // add one more constraint row satisfied by the same beta0
    std::vector<Matrix> cons2;
    Matrix B2(2, 2);
    B2.row(0) = B.row(0);
    Matrix extra_sum = Matrix::Zero(1, 2);
    for (int i = 0; i < 3; ++i)
    {
        Matrix extra = zrtest::random_matrix(rng, 1, 2);
        Matrix A2(2, 2);
        A2.row(0) = cons[i].row(0);
        A2.row(1) = extra.row(0);
        cons2.push_back(A2);
        extra_sum += beta0(i) * extra;
    }
    B2.row(1) = extra_sum.row(0);
    ConstrainedMatrixZonotope tight(Matrix::Zero(2, 2), gens, cons2, B2);

    FactorBounds fl = factor_bounds(loose), ft = factor_bounds(tight);
    for (int i = 0; i < 3; ++i)
    {
        CHECK(ft.lower(i) >= fl.lower(i) - 1e-8);
        CHECK(ft.upper(i) <= fl.upper(i) + 1e-8);
    }
}

TEST_CASE("cmz times zonotope")
{
    SplitMix64 rng(9);
    Zonotope Z(zrtest::random_vector(rng, 3), zrtest::random_matrix(rng, 3, 2));

    // empty constraints degrade to the matrix-zonotope product
    MatrixZonotope M = random_mz(rng, 2, 3, 3);
    ConstrainedZonotope prod_c = product(ConstrainedMatrixZonotope{M}, Z);
    Zonotope prod_m = product(M, Z);
    for (int t = 0; t < 100; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(std::abs(support(prod_c, d) - support(prod_m, d)) <= 1e-9);
    }

    ConstrainedMatrixZonotope N = random_cmz(rng, 2, 3, 3, 2, 2);

    // singleton argument: member images with original constraints
    ConstrainedZonotope fixed = product(N, Zonotope::singleton(Z.center()));
    MembershipTester ftester{fixed};
    for (int t = 0; t < 200; ++t)
        REQUIRE(ftester.contains(sample(N, rng) * Z.center(), 1e-7));

    ConstrainedZonotope full = product(N, Z);
    MembershipTester tester{full};
    for (int t = 0; t < 10000; ++t)
        REQUIRE(tester.contains(sample(N, rng) * sample(Z, rng), 1e-7));
}

TEST_CASE("cmz times constrained zonotope")
{
    SplitMix64 rng(10);
    ConstrainedMatrixZonotope N = random_cmz(rng, 2, 3, 3, 2, 2);

    Matrix Gc(3, 3);
    Gc << 1, 0, 0.5, 0, 1, -0.5, 0.2, 0, 1;
    Matrix Ac(1, 3);
    Ac << 1, 1, 0;
    Vector bc(1);
    bc << 0.4;
    ConstrainedZonotope C(zrtest::random_vector(rng, 3), Gc, Ac, bc);

    // unconstrained argument matches the zonotope-product route
    Zonotope Zplain(C.center(), Gc);
    ConstrainedZonotope via_z = product(N, Zplain);
    ConstrainedZonotope via_c = product(N, ConstrainedZonotope{Zplain});
    for (int t = 0; t < 50; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(std::abs(support(via_z, d) - support(via_c, d)) <= 1e-9);
    }

    // singleton model set: plain constrained linear map
    Matrix X0 = zrtest::random_matrix(rng, 2, 3);
    ConstrainedZonotope single =
        product(ConstrainedMatrixZonotope{MatrixZonotope::singleton(X0)}, C);
    ConstrainedZonotope direct = linear_map(X0, C);
    for (int t = 0; t < 50; ++t)
    {
        Vector d = zrtest::random_direction(rng, 2);
        CHECK(std::abs(support(single, d) - support(direct, d)) <= 1e-9);
    }

    ConstrainedZonotope full = product(N, C);
    MembershipTester tester{full};
    for (int t = 0; t < 10000; ++t)
        REQUIRE(tester.contains(sample(N, rng) * sample(C, rng), 1e-7));
}

TEST_CASE("cmz membership")
{
    SplitMix64 rng(12);
    ConstrainedMatrixZonotope N = random_cmz(rng, 2, 2, 3, 1, 2);
    CHECK(contains(N, sample(N, rng), 1e-7));

    // an unconstrained single-generator set: center + 2 G is outside the box
    Matrix G0 = zrtest::random_matrix(rng, 2, 2);
    MatrixZonotope M(Matrix::Zero(2, 2), {G0});
    CHECK(contains(M, Matrix(0.9 * G0), 1e-9));
    CHECK_FALSE(contains(M, Matrix(2.0 * G0), 1e-9));

    for (int t = 0; t < 200; ++t)
        REQUIRE(contains(N, sample(N, rng), 1e-7));
}
