#include "doctest.h"
#include "test_oracles.hpp"

#include "zonoreach/lp.hpp"
#include "zonoreach/rng.hpp"

#include <cstring>

using namespace zonoreach;
namespace lp = zonoreach::lp;

namespace
{

lp::BoxLP make_lp(const Vector& c, const Matrix& A, const Vector& b, bool maximize)
{
    lp::BoxLP p;
    p.objective = c;
    p.A = A;
    p.b = b;
    p.maximize = maximize;
    return p;
}

struct RandomInstance
{
    Vector c;
    Matrix A;
    Vector b;
};

RandomInstance random_instance(SplitMix64& rng, bool force_feasible)
{
    const int g = 1 + static_cast<int>(rng.next() % 5);
    const int m = static_cast<int>(rng.next() % 4);
    RandomInstance inst;
    inst.c = zrtest::random_vector(rng, g, 2.0);
    inst.A = zrtest::random_matrix(rng, m, g, 2.0);
    if (force_feasible || m == 0)
    {
        Vector beta0 = zrtest::random_vector(rng, g);
        inst.b = inst.A * beta0;
    }
    else
    {
        inst.b = zrtest::random_vector(rng, m, 3.0);
    }
    return inst;
}

} // namespace

TEST_CASE("box bound active without constraints")
{
    Vector c(1);
    c << 1.0;
    auto res = lp::solve(make_lp(c, Matrix(0, 1), Vector(0), true));
    REQUIRE(res.status == lp::Status::optimal);
    CHECK(res.value == doctest::Approx(1.0));
}

TEST_CASE("unique feasible corner")
{
    // min b1 s.t. b1 + b2 = 2 forces b2 = 1, b1 = 1
    Vector c(2);
    c << 1.0, 0.0;
    Matrix A(1, 2);
    A << 1.0, 1.0;
    Vector b(1);
    b << 2.0;
    auto res = lp::solve(make_lp(c, A, b, false));
    REQUIRE(res.status == lp::Status::optimal);
    CHECK(res.value == doctest::Approx(1.0));
    CHECK(res.argument(1) == doctest::Approx(1.0));
}

TEST_CASE("random LPs match vertex enumeration")
{
    SplitMix64 rng(0x51a7e5u);
    int optimal_seen = 0;
    for (int trial = 0; trial < 120; ++trial)
    {
        auto inst = random_instance(rng, trial % 3 != 0);
        auto oracle = zrtest::enumerate_box_optimum(inst.c, inst.A, inst.b);
        auto lo = lp::solve(make_lp(inst.c, inst.A, inst.b, false));
        auto hi = lp::solve(make_lp(inst.c, inst.A, inst.b, true));
        if (!oracle.feasible)
        {
            CHECK(lo.status == lp::Status::infeasible);
            CHECK(hi.status == lp::Status::infeasible);
            continue;
        }
        ++optimal_seen;
        REQUIRE(lo.status == lp::Status::optimal);
        REQUIRE(hi.status == lp::Status::optimal);
        CHECK(std::abs(lo.value - oracle.min_value) <= 1e-8);
        CHECK(std::abs(hi.value - oracle.max_value) <= 1e-8);
        // weak duality sanity
        CHECK(lo.value <= hi.value + 1e-10);
        // returned argument satisfies constraints
        if (inst.A.rows() > 0)
            CHECK((inst.A * lo.argument - inst.b).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(lo.argument.cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
    }
    CHECK(optimal_seen > 50);
}

TEST_CASE("feasibility")
{
    Matrix A(1, 1);
    A << 1.0;
    Vector b0(1), b2(1);
    b0 << 0.0;
    b2 << 2.0;
    CHECK(lp::feasible(A, b0));
    CHECK_FALSE(lp::feasible(A, b2));

    // zero row with zero rhs is dropped; with nonzero rhs it is infeasible
    Matrix Z(1, 2);
    Z.setZero();
    CHECK(lp::feasible(Z, b0.head(1)));
    CHECK_FALSE(lp::feasible(Z, b2.head(1)));

    SplitMix64 rng(77);
    for (int trial = 0; trial < 100; ++trial)
    {
        auto inst = random_instance(rng, trial % 2 == 0);
        auto res = lp::solve(make_lp(inst.c, inst.A, inst.b, false));
        CHECK(lp::feasible(inst.A, inst.b) == (res.status == lp::Status::optimal));
    }
}

TEST_CASE("determinism is bit exact")
{
    SplitMix64 rng(123);
    auto inst = random_instance(rng, true);
    auto r1 = lp::solve(make_lp(inst.c, inst.A, inst.b, true));
    auto r2 = lp::solve(make_lp(inst.c, inst.A, inst.b, true));
    REQUIRE(r1.status == r2.status);
    CHECK(std::memcmp(&r1.value, &r2.value, sizeof(double)) == 0);
    REQUIRE(r1.argument.size() == r2.argument.size());
    CHECK(std::memcmp(r1.argument.data(), r2.argument.data(),
                      sizeof(double) * r1.argument.size()) == 0);
}

TEST_CASE("equality system drops dependent rows")
{
    Matrix A(3, 2);
    A << 1.0, 1.0, 2.0, 2.0, 1.0, -1.0;
    lp::EqualitySystem sys(A);
    CHECK(sys.rank() == 2);

    Vector consistent(3), inconsistent(3);
    consistent << 0.5, 1.0, 0.25;
    inconsistent << 0.5, 1.5, 0.25;
    CHECK(sys.reduce_rhs(consistent).has_value());
    CHECK_FALSE(sys.reduce_rhs(inconsistent).has_value());
}
