#include "zonoreach/reach_lti.hpp"

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

Zonotope step_reduce(const Zonotope& Z, const ReachOptions& opts)
{
    Zonotope R = compact(Z);
    if (opts.reduction_order > 0)
        R = reduce_order(R, opts.reduction_order);
    return R;
}

const Zonotope& input_at(const std::vector<Zonotope>& U, int k)
{
    return U[std::min<std::size_t>(k, U.size() - 1)];
}

// Shared cores over an explicit successor block and regressor, so the same
// construction serves state data, measured data and monomial regressors.

MatrixZonotope model_set_core(const Matrix& X_plus, const Matrix& regressor,
                              const MatrixZonotope& noise)
{
    return affine_map(X_plus, noise, right_inverse(regressor));
}

ConstrainedMatrixZonotope noise_set_core(const Matrix& X_plus, const Matrix& regressor,
                                         const MatrixZonotope& noise)
{
    const Matrix K = kernel_basis(regressor);
    std::vector<Matrix> cons;
    cons.reserve(noise.num_generators());
    for (const Matrix& G : noise.generators())
        cons.push_back(G * K);
    Matrix B = (X_plus - noise.center()) * K;
    return ConstrainedMatrixZonotope(noise.center(), noise.generators(), std::move(cons),
                                     std::move(B));
}

ConstrainedMatrixZonotope exact_model_core(const Matrix& X_plus, const Matrix& regressor,
                                           const ConstrainedMatrixZonotope& Nw)
{
    return affine_map(X_plus, Nw, right_inverse(regressor));
}

// One recursion step R -> N (R x U) + Zw for the constrained methods.
SetVariant constrained_step(const ConstrainedMatrixZonotope& N, const SetVariant& R,
                            const Zonotope& Uk, const Zonotope& Zw)
{
    ConstrainedZonotope next = std::holds_alternative<Zonotope>(R)
        ? product(N, cartesian_product(std::get<Zonotope>(R), Uk))
        : product(N, cartesian_product(std::get<ConstrainedZonotope>(R), Uk));
    return compact(minkowski_sum(next, Zw));
}

ReachSequence run_constrained(const std::string& method, const ConstrainedMatrixZonotope& N,
                              const Zonotope& Zw, const Zonotope& X0,
                              const std::vector<Zonotope>& U, int steps)
{
    ReachSequence seq;
    seq.method = method;
    seq.sets.emplace_back(X0);
    for (int k = 0; k < steps; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        seq.sets.push_back(constrained_step(N, seq.sets.back(), input_at(U, k), Zw));
        seq.step_seconds.push_back(seconds_since(t0));
    }
    return seq;
}

} // namespace

MatrixZonotope consistent_model_set(const DataMatrices& D, const MatrixZonotope& Mw)
{
    return model_set_core(D.X_plus, D.regressor(), Mw);
}

ConstrainedMatrixZonotope exact_noise_set(const DataMatrices& D, const MatrixZonotope& Mw)
{
    return noise_set_core(D.X_plus, D.regressor(), Mw);
}

ConstrainedMatrixZonotope exact_model_set(const DataMatrices& D,
                                          const ConstrainedMatrixZonotope& Nw)
{
    return exact_model_core(D.X_plus, D.regressor(), Nw);
}

ConstrainedMatrixZonotope with_side_info(const ConstrainedMatrixZonotope& Nsigma,
                                         const SideInfo& info, int member_cols)
{
    const int n = Nsigma.rows();
    const int p = member_cols;
    if (Nsigma.cols() != p)
        throw std::invalid_argument("with_side_info: member column count mismatch");
    const int ns = static_cast<int>(info.Q.rows());
    if (info.Q.cols() != n || info.Y.rows() != ns || info.Y.cols() != p || info.R.rows() != ns ||
        info.R.cols() != p)
        throw std::invalid_argument("with_side_info: side information shapes are inconsistent");
    if ((info.R.array() < 0.0).any())
        throw std::invalid_argument("with_side_info: bound matrix must be non-negative");

    const int nc = Nsigma.constraint_rows();
    const int na = Nsigma.constraint_cols();
    if (na <= p)
        throw std::invalid_argument(
            "with_side_info: constraint width does not exceed member columns; "
            "collect more data (T > 2(n+m) for state data)");
    const int W = std::max(na, p);
    const int gamma = Nsigma.num_generators();

    std::vector<Matrix> gens = Nsigma.generators();
    std::vector<Matrix> cons;
    cons.reserve(gamma + ns * p);
    for (int i = 0; i < gamma; ++i)
    {
        Matrix A = Matrix::Zero(nc + ns, W);
        A.topLeftCorner(nc, na) = Nsigma.constraint_generators()[i];
        A.block(nc, 0, ns, p) = info.Q * Nsigma.generators()[i];
        cons.push_back(std::move(A));
    }
    // one zero generator per entry of the bound matrix, column-major order
    for (int j = 0; j < p; ++j)
    {
        for (int i = 0; i < ns; ++i)
        {
            gens.push_back(Matrix::Zero(n, p));
            Matrix A = Matrix::Zero(nc + ns, W);
            A(nc + i, j) = -info.R(i, j);
            cons.push_back(std::move(A));
        }
    }
    Matrix B = Matrix::Zero(nc + ns, W);
    B.topLeftCorner(nc, na) = Nsigma.offset();
    B.block(nc, 0, ns, p) = info.Y - info.Q * Nsigma.center();
    return ConstrainedMatrixZonotope(Nsigma.center(), std::move(gens), std::move(cons),
                                     std::move(B));
}

ReachSequence lti_reach(const DataMatrices& D, const MatrixZonotope& Mw, const Zonotope& Zw,
                        const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                        const ReachOptions& opts)
{
    const MatrixZonotope MSigma = consistent_model_set(D, Mw);
    ReachSequence seq;
    seq.method = "alg1";
    seq.sets.emplace_back(X0);
    Zonotope R = X0;
    for (int k = 0; k < N; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        R = step_reduce(minkowski_sum(product(MSigma, cartesian_product(R, input_at(U, k))), Zw),
                        opts);
        seq.sets.emplace_back(R);
        seq.step_seconds.push_back(seconds_since(t0));
    }
    return seq;
}

ReachSequence lti_reach_constrained(const DataMatrices& D, const MatrixZonotope& Mw,
                                    const Zonotope& Zw, const Zonotope& X0,
                                    const std::vector<Zonotope>& U, int N,
                                    const ReachOptions& /*opts*/)
{
    const ConstrainedMatrixZonotope NSigma = exact_model_set(D, exact_noise_set(D, Mw));
    return run_constrained("alg2", NSigma, Zw, X0, U, N);
}

ReachSequence lti_reach_side_info(const DataMatrices& D, const MatrixZonotope& Mw,
                                  const Zonotope& Zw, const Zonotope& X0,
                                  const std::vector<Zonotope>& U, int N, const SideInfo& info,
                                  const ReachOptions& /*opts*/)
{
    const ConstrainedMatrixZonotope NSigma = exact_model_set(D, exact_noise_set(D, Mw));
    const ConstrainedMatrixZonotope Ns =
        with_side_info(NSigma, info, D.state_dim() + D.input_dim());
    return run_constrained("alg3", Ns, Zw, X0, U, N);
}

ReachSequence lti_reach_meas(const DataMatrices& D, const MatrixZonotope& Mo,
                             const MatrixZonotope& Mw, const Zonotope& Zw, const Zonotope& X0,
                             const std::vector<Zonotope>& U, int N, const ReachOptions& opts)
{
    if (!D.has_measurements)
        throw std::invalid_argument("lti_reach_meas: data has no measurement channel");
    const MatrixZonotope MSigma =
        model_set_core(D.Y_plus, D.regressor(true), minkowski_sum(Mw, Mo));
    ReachSequence seq;
    seq.method = "prop4";
    seq.sets.emplace_back(X0);
    Zonotope R = X0;
    for (int k = 0; k < N; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        R = step_reduce(minkowski_sum(product(MSigma, cartesian_product(R, input_at(U, k))), Zw),
                        opts);
        seq.sets.emplace_back(R);
        seq.step_seconds.push_back(seconds_since(t0));
    }
    return seq;
}

ReachSequence lti_reach_meas_constrained(const DataMatrices& D, const MatrixZonotope& Mo,
                                         const MatrixZonotope& Mw, const Zonotope& Zw,
                                         const Zonotope& X0, const std::vector<Zonotope>& U,
                                         int N, const ReachOptions& /*opts*/)
{
    if (!D.has_measurements)
        throw std::invalid_argument("lti_reach_meas_constrained: data has no measurement channel");
    const MatrixZonotope combined = minkowski_sum(Mw, Mo); // process-noise factors first
    const ConstrainedMatrixZonotope Nw = noise_set_core(D.Y_plus, D.regressor(true), combined);
    const ConstrainedMatrixZonotope NSigma = exact_model_core(D.Y_plus, D.regressor(true), Nw);
    return run_constrained("prop5", NSigma, Zw, X0, U, N);
}

namespace
{

struct MeasDataModel
{
    Matrix M_tilde;
    Zonotope Z_AV;
};

MeasDataModel meas_data_model(const DataMatrices& D, const MatrixZonotope& Mw,
                              const MatrixZonotope& Mv, const Zonotope& Zw, const Zonotope& Zv)
{
    if (!D.has_measurements)
        throw std::invalid_argument("lti_reach_meas_data: data has no measurement channel");
    const Matrix reg = D.regressor(true);
    const Matrix H = right_inverse(reg);
    const Matrix M_tilde = (D.Y_plus - Mv.center() - Mw.center()) * H;

    Matrix residuals = D.Y_plus - M_tilde * reg;
    Vector up = residuals.rowwise().maxCoeff();
    Vector lo = residuals.rowwise().minCoeff();
    Zonotope Z_AV = minkowski_sum(
        minkowski_sum(Zonotope::from_box(Interval(lo, up)), negate(Zw)), negate(Zv));
    return {M_tilde, std::move(Z_AV)};
}

} // namespace

ReachSequence lti_reach_meas_data(const DataMatrices& D, const MatrixZonotope& Mw,
                                  const MatrixZonotope& Mv, const Zonotope& Zw,
                                  const Zonotope& Zv, const Zonotope& X0,
                                  const std::vector<Zonotope>& U, int N,
                                  const ReachOptions& opts)
{
    const MeasDataModel model = meas_data_model(D, Mw, Mv, Zw, Zv);
    ReachSequence seq;
    seq.method = "alg4";
    seq.guaranteed = false; // residual extrema from data carry no formal proof
    seq.sets.emplace_back(X0);
    Zonotope R = X0;
    for (int k = 0; k < N; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Zonotope mapped = linear_map(
            model.M_tilde, cartesian_product(minkowski_sum(R, Zv), input_at(U, k)));
        R = step_reduce(minkowski_sum(minkowski_sum(mapped, model.Z_AV), Zw), opts);
        seq.sets.emplace_back(R);
        seq.step_seconds.push_back(seconds_since(t0));
    }
    return seq;
}

MatrixZonotope meas_validation_set(const DataMatrices& D, const MatrixZonotope& Mw,
                                   const MatrixZonotope& Mv, const Zonotope& Zw,
                                   const Zonotope& Zv)
{
    const MeasDataModel model = meas_data_model(D, Mw, Mv, Zw, Zv);
    const Matrix reg = D.regressor(true);
    const MatrixZonotope M_AV = noise_matrix_zonotope(model.Z_AV, D.T());
    const MatrixZonotope inner =
        minkowski_sum(MatrixZonotope::singleton(model.M_tilde * reg), M_AV);
    return right_map(inner, right_inverse(reg));
}

} // namespace zonoreach
