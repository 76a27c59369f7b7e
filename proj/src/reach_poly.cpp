#include "zonoreach/reach_poly.hpp"

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

/// Box zonotope of the monomial ranges over int(R) x int(U).
Zonotope monomial_box(const MonomialBasis& basis, const SetVariant& R, const Zonotope& Uk)
{
    const Interval z = Interval::stack(interval_hull(R), interval_hull(Uk));
    return Zonotope::from_box(monomial_interval(basis, z));
}

template <typename ModelSet, typename StepFn>
ReachSequence run_poly(const std::string& method, const ModelSet& model,
                       const MonomialBasis& basis, const Zonotope& Zw, const Zonotope& X0,
                       const std::vector<Zonotope>& U, int N, StepFn step)
{
    ReachSequence seq;
    seq.method = method;
    seq.sets.emplace_back(X0);
    for (int k = 0; k < N; ++k)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Zonotope Ig = monomial_box(basis, seq.sets.back(), input_at(U, k));
        seq.sets.push_back(step(model, Ig, Zw));
        seq.step_seconds.push_back(seconds_since(t0));
    }
    return seq;
}

} // namespace

Matrix monomial_data_matrix(const MonomialBasis& basis, const DataMatrices& D)
{
    const Matrix Z = D.regressor();
    if (basis.variables() != Z.rows())
        throw std::invalid_argument("monomial_data_matrix: basis variables differ from data");
    Matrix G(basis.size(), Z.cols());
    for (int j = 0; j < Z.cols(); ++j)
        G.col(j) = eval_monomials(basis, Z.col(j));
    return G;
}

MatrixZonotope consistent_model_set_poly(const DataMatrices& D, const MatrixZonotope& Mw,
                                         const MonomialBasis& basis)
{
    return affine_map(D.X_plus, Mw, right_inverse(monomial_data_matrix(basis, D)));
}

ConstrainedMatrixZonotope exact_noise_set_poly(const DataMatrices& D, const MatrixZonotope& Mw,
                                               const MonomialBasis& basis)
{
    const Matrix K = kernel_basis(monomial_data_matrix(basis, D));
    std::vector<Matrix> cons;
    cons.reserve(Mw.num_generators());
    for (const Matrix& G : Mw.generators())
        cons.push_back(G * K);
    Matrix B = (D.X_plus - Mw.center()) * K;
    return ConstrainedMatrixZonotope(Mw.center(), Mw.generators(), std::move(cons), std::move(B));
}

ConstrainedMatrixZonotope exact_model_set_poly(const DataMatrices& D,
                                               const ConstrainedMatrixZonotope& Nw,
                                               const MonomialBasis& basis)
{
    return affine_map(D.X_plus, Nw, right_inverse(monomial_data_matrix(basis, D)));
}

ReachSequence poly_reach(const DataMatrices& D, const MatrixZonotope& Mw, const Zonotope& Zw,
                         const MonomialBasis& basis, const Zonotope& X0,
                         const std::vector<Zonotope>& U, int N, const ReachOptions& opts)
{
    const MatrixZonotope model = consistent_model_set_poly(D, Mw, basis);
    return run_poly("alg5", model, basis, Zw, X0, U, N,
                    [&](const MatrixZonotope& M, const Zonotope& Ig, const Zonotope& noise) {
                        Zonotope R = compact(minkowski_sum(product(M, Ig), noise));
                        if (opts.reduction_order > 0)
                            R = reduce_order(R, opts.reduction_order);
                        return SetVariant(std::move(R));
                    });
}

ReachSequence poly_reach_constrained(const DataMatrices& D, const MatrixZonotope& Mw,
                                     const Zonotope& Zw, const MonomialBasis& basis,
                                     const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                                     const ReachOptions& /*opts*/)
{
    const ConstrainedMatrixZonotope model =
        exact_model_set_poly(D, exact_noise_set_poly(D, Mw, basis), basis);
    return run_poly("alg5_constrained", model, basis, Zw, X0, U, N,
                    [](const ConstrainedMatrixZonotope& M, const Zonotope& Ig,
                       const Zonotope& noise) {
                        return SetVariant(compact(minkowski_sum(product(M, Ig), noise)));
                    });
}

ReachSequence poly_reach_side_info(const DataMatrices& D, const MatrixZonotope& Mw,
                                   const Zonotope& Zw, const MonomialBasis& basis,
                                   const Zonotope& X0, const std::vector<Zonotope>& U, int N,
                                   const SideInfo& info, const ReachOptions& /*opts*/)
{
    const ConstrainedMatrixZonotope NSigma =
        exact_model_set_poly(D, exact_noise_set_poly(D, Mw, basis), basis);
    const ConstrainedMatrixZonotope model = with_side_info(NSigma, info, basis.size());
    ReachSequence seq = run_poly("alg5_side_info", model, basis, Zw, X0, U, N,
                                 [](const ConstrainedMatrixZonotope& M, const Zonotope& Ig,
                                    const Zonotope& noise) {
                                     return SetVariant(compact(minkowski_sum(product(M, Ig), noise)));
                                 });
    return seq;
}

} // namespace zonoreach
