#include "zonoreach/reach_lipschitz.hpp"

#include <chrono>
#include <stdexcept>

namespace zonoreach
{

namespace
{

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Zonotope& input_at(const std::vector<Zonotope>& U, int k)
{
    return U[std::min<std::size_t>(k, U.size() - 1)];
}

Matrix shifted_regressor(const DataMatrices& D, const Vector& xstar, const Vector& ustar)
{
    const int T = D.T();
    Matrix reg(1 + D.state_dim() + D.input_dim(), T);
    reg.row(0).setOnes();
    reg.middleRows(1, D.state_dim()) = D.X_minus.colwise() - xstar;
    reg.bottomRows(D.input_dim()) = D.U_minus.colwise() - ustar;
    return reg;
}

} // namespace

Matrix fit_linear_model(const DataMatrices& D, const MatrixZonotope& Mw, const Vector& xstar,
                        const Vector& ustar)
{
    if (xstar.size() != D.state_dim() || ustar.size() != D.input_dim())
        throw std::invalid_argument("fit_linear_model: linearization point dimensions differ");
    const Matrix reg = shifted_regressor(D, xstar, ustar);
    return (D.X_plus - Mw.center()) * right_inverse(reg);
}

Zonotope remainder_bound(const DataMatrices& D, const Matrix& M_prime, const Zonotope& Zw,
                         const Vector& xstar, const Vector& ustar)
{
    const Matrix reg = shifted_regressor(D, xstar, ustar);
    if (M_prime.rows() != D.state_dim() || M_prime.cols() != reg.rows())
        throw std::invalid_argument("remainder_bound: model shape mismatch");
    Matrix residuals = D.X_plus - M_prime * reg;
    Vector up = residuals.rowwise().maxCoeff();
    Vector lo = residuals.rowwise().minCoeff();
    return minkowski_sum(Zonotope::from_box(Interval(lo, up)), negate(Zw));
}

Zonotope lipschitz_margin(const LipschitzConfig& cfg, int state_dim)
{
    if (cfg.L_star < 0.0 || cfg.delta < 0.0)
        throw std::invalid_argument("lipschitz_margin: L* and delta must be non-negative");
    Matrix G = (cfg.L_star * cfg.delta) * Matrix::Identity(state_dim, state_dim);
    return Zonotope(Vector::Zero(state_dim), std::move(G));
}

LipschitzReachResult lipschitz_reach(const DataMatrices& D, const MatrixZonotope& Mw,
                                     const Zonotope& Zw, const LipschitzConfig& cfg,
                                     const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                                     const ReachOptions& opts)
{
    if (D.T() == 0)
        throw std::invalid_argument("lipschitz_reach: empty data");

    LipschitzConfig resolved = cfg;
    bool guaranteed = true;
    if (cfg.estimate_from_data)
    {
        resolved.L_star = lipschitz_estimate(D);
        resolved.delta = covering_radius(D);
        guaranteed = false; // pairwise estimates are not certified bounds
    }
    const Zonotope Zeps = lipschitz_margin(resolved, D.state_dim());
    const Zonotope one = Zonotope::singleton(Vector::Ones(1));

    ReachSequence seq;
    seq.method = "alg6";
    seq.guaranteed = guaranteed;
    seq.sets.emplace_back(X0);

    Zonotope R = X0;
    Interval visited = Interval::stack(interval_hull(R), interval_hull(input_at(U, 0)));
    Matrix M_prime;
    Zonotope ZL = Zonotope::singleton(Vector::Zero(D.state_dim()));
    for (int k = 0; k < N; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const Zonotope& Uk = input_at(U, k);
        if (k == 0 || cfg.relinearize_each_step)
        {
            const Vector xstar = R.center();
            const Vector ustar = Uk.center();
            M_prime = fit_linear_model(D, Mw, xstar, ustar);
            ZL = remainder_bound(D, M_prime, Zw, xstar, ustar);
            // shift the affine column so the recursion can use raw (x, u)
            Matrix shift = Matrix::Identity(1 + D.state_dim() + D.input_dim(),
                                            1 + D.state_dim() + D.input_dim());
            shift.col(0).segment(1, D.state_dim()) = -xstar;
            shift.col(0).tail(D.input_dim()) = -ustar;
            M_prime = M_prime * shift;
        }
        Zonotope lifted = cartesian_product(cartesian_product(one, R), Uk);
        R = compact(minkowski_sum(minkowski_sum(minkowski_sum(linear_map(M_prime, lifted), Zw), ZL),
                                  Zeps));
        if (opts.reduction_order > 0)
            R = reduce_order(R, opts.reduction_order);
        seq.sets.emplace_back(R);
        seq.step_seconds.push_back(seconds_since(t0));
        visited = Interval::hull_of(visited, Interval::stack(interval_hull(R), interval_hull(Uk)));
    }
    return {std::move(seq), std::move(visited), resolved};
}

} // namespace zonoreach
