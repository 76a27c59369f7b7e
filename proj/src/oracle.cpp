#include "zonoreach/oracle.hpp"

#include "zonoreach/parallel.hpp"

#include <mutex>
#include <stdexcept>

namespace zonoreach
{

namespace
{

constexpr double kGridResidualTol = 1e-6;

std::vector<double> grid_values(int points)
{
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i)
        v[i] = points == 1 ? 0.0 : -1.0 + 2.0 * i / double(points - 1);
    return v;
}

/// Enumerates all grid assignments of `dims` factors.
template <typename Fn>
void for_each_grid(int dims, int points, Fn&& fn)
{
    std::vector<int> idx(dims, 0);
    const auto vals = grid_values(points);
    const long total = [&] {
        long t = 1;
        for (int d = 0; d < dims; ++d)
            t *= points;
        return t;
    }();
    Vector beta(dims);
    for (long count = 0; count < total; ++count)
    {
        for (int d = 0; d < dims; ++d)
            beta(d) = vals[idx[d]];
        fn(beta);
        for (int d = dims - 1; d >= 0; --d)
        {
            if (++idx[d] < points)
                break;
            idx[d] = 0;
        }
    }
}

Matrix cmz_member(const ConstrainedMatrixZonotope& N, const Vector& beta)
{
    Matrix X = N.center();
    for (int i = 0; i < N.num_generators(); ++i)
        X += beta(i) * N.generators()[i];
    return X;
}

double cmz_residual(const ConstrainedMatrixZonotope& N, const Vector& beta)
{
    if (N.is_unconstrained())
        return 0.0;
    Matrix R = -N.offset();
    for (int i = 0; i < N.num_generators(); ++i)
        R += beta(i) * N.constraint_generators()[i];
    return R.size() > 0 ? R.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace

ReachSequence model_reach_lti(const Matrix& A, const Matrix& B, const Zonotope& X0,
                              const std::vector<Zonotope>& U, const Zonotope& Zw, int N)
{
    if (A.rows() != A.cols() || B.rows() != A.rows())
        throw std::invalid_argument("model_reach_lti: inconsistent system shapes");
    Matrix AB(A.rows(), A.cols() + B.cols());
    AB << A, B;
    ReachSequence seq;
    seq.method = "oracle";
    seq.sets.emplace_back(X0);
    Zonotope R = X0;
    for (int k = 0; k < N; ++k)
    {
        const Zonotope& Uk = U[std::min<std::size_t>(k, U.size() - 1)];
        R = compact(minkowski_sum(linear_map(AB, cartesian_product(R, Uk)), Zw));
        seq.sets.emplace_back(R);
        seq.step_seconds.push_back(0.0);
    }
    return seq;
}

bool ContainmentReport::all_contained() const
{
    for (const StepReport& s : steps)
        if (s.contained != s.samples)
            return false;
    return true;
}

double ContainmentReport::containment_fraction() const
{
    long total = 0, inside = 0;
    for (const StepReport& s : steps)
    {
        total += s.samples;
        inside += s.contained;
    }
    return total == 0 ? 1.0 : double(inside) / double(total);
}

ContainmentReport monte_carlo_check(const SystemModel& model, const Zonotope& X0,
                                    const std::vector<Zonotope>& U, const Zonotope& Zw,
                                    const ReachSequence& seq, int samples, std::uint64_t seed,
                                    double tol)
{
    const int N = seq.steps();
    // one factored membership system per step
    std::vector<MembershipTester> testers;
    testers.reserve(N + 1);
    for (const SetVariant& S : seq.sets)
        testers.push_back(std::visit([](const auto& set) { return MembershipTester(set); }, S));

    std::vector<std::vector<char>> inside(samples, std::vector<char>(N + 1, 0));
    std::vector<std::vector<double>> violation(samples, std::vector<double>(N + 1, 0.0));

    parallel_for(samples, [&](int s) {
        SplitMix64 init_rng(derive_stream(seed, s, 0, 101));
        Vector x = sample(X0, init_rng);
        for (int k = 0; k <= N; ++k)
        {
            if (k > 0)
            {
                SplitMix64 u_rng(derive_stream(seed, s, k, 102));
                SplitMix64 w_rng(derive_stream(seed, s, k, 103));
                const Zonotope& Uk = U[std::min<std::size_t>(k - 1, U.size() - 1)];
                x = model.step(x, sample(Uk, u_rng)) + sample(Zw, w_rng);
            }
            if (testers[k].contains(x, tol))
                inside[s][k] = 1;
            else
                violation[s][k] = testers[k].violation(x);
        }
    });

    ContainmentReport report;
    report.samples = samples;
    report.steps.resize(N + 1);
    for (int k = 0; k <= N; ++k)
    {
        StepReport& sr = report.steps[k];
        sr.samples = samples;
        for (int s = 0; s < samples; ++s)
        {
            sr.contained += inside[s][k];
            sr.max_violation = std::max(sr.max_violation, violation[s][k]);
        }
    }
    return report;
}

std::vector<Vector> brute_force_product(const ConstrainedMatrixZonotope& N, const Zonotope& Z,
                                        int grid)
{
    if (N.num_generators() > 3 || Z.num_generators() > 3)
        throw std::invalid_argument("brute_force_product: too many factors for enumeration");
    std::vector<Vector> cloud;
    for_each_grid(N.num_generators(), grid, [&](const Vector& beta_n) {
        if (cmz_residual(N, beta_n) > kGridResidualTol)
            return;
        const Matrix X = cmz_member(N, beta_n);
        for_each_grid(Z.num_generators(), grid, [&](const Vector& beta_z) {
            cloud.push_back(X * (Z.center() + Z.generators() * beta_z));
        });
    });
    return cloud;
}

std::vector<Vector> brute_force_product(const ConstrainedMatrixZonotope& N,
                                        const ConstrainedZonotope& C, int grid)
{
    if (N.num_generators() > 3 || C.num_generators() > 3)
        throw std::invalid_argument("brute_force_product: too many factors for enumeration");
    std::vector<Vector> cloud;
    for_each_grid(N.num_generators(), grid, [&](const Vector& beta_n) {
        if (cmz_residual(N, beta_n) > kGridResidualTol)
            return;
        const Matrix X = cmz_member(N, beta_n);
        for_each_grid(C.num_generators(), grid, [&](const Vector& beta_c) {
            if (C.num_constraints() > 0 &&
                (C.constraint_matrix() * beta_c - C.constraint_vector()).cwiseAbs().maxCoeff() >
                    kGridResidualTol)
                return;
            cloud.push_back(X * (C.center() + C.generators() * beta_c));
        });
    });
    return cloud;
}

} // namespace zonoreach
