#include "zonoreach/lp.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace zonoreach::lp
{

namespace
{

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr int kRefactorEvery = 128;

double row_independence_tol(double row_norm) { return std::max(1e-10 * row_norm, 1e-300); }

} // namespace

EqualitySystem::EqualitySystem(const Matrix& A)
{
    rows_ = static_cast<int>(A.rows());
    const int g = static_cast<int>(A.cols());
    const int rmax = std::min(rows_, g);

    // Greedy modified Gram-Schmidt over the rows: keeps the first maximal
    // independent subset in row order, and records how every dropped row is
    // expressed in the kept ones.
    Matrix Q(g, rmax);
    Matrix R = Matrix::Zero(rmax, rmax);
    std::vector<Vector> dep_coeffs;

    int r = 0;
    for (int i = 0; i < rows_; ++i)
    {
        Vector v = A.row(i).transpose();
        const double norm0 = v.norm();
        Vector coeff = Vector::Zero(rmax);
        for (int pass = 0; pass < 2; ++pass)
        {
            for (int k = 0; k < r; ++k)
            {
                const double c = Q.col(k).dot(v);
                coeff(k) += c;
                v -= c * Q.col(k);
            }
        }
        const double rem = v.norm();
        if (rem > row_independence_tol(norm0) && r < rmax)
        {
            Q.col(r) = v / rem;
            R.col(r).head(r) = coeff.head(r);
            R(r, r) = rem;
            kept_.push_back(i);
            ++r;
        }
        else
        {
            // row i = lambda^T A_kept with A_kept^T = Q R  =>  lambda = R^{-1} coeff
            Vector lambda = Vector::Zero(rmax);
            if (r > 0)
                lambda.head(r) =
                    R.topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(coeff.head(r));
            dropped_.push_back(i);
            dep_coeffs.push_back(lambda);
        }
    }

    reduced_A_.resize(r, g);
    for (int k = 0; k < r; ++k)
        reduced_A_.row(k) = A.row(kept_[k]);

    dependency_ = Matrix::Zero(static_cast<int>(dropped_.size()), r);
    for (std::size_t d = 0; d < dropped_.size(); ++d)
        dependency_.row(static_cast<int>(d)) = dep_coeffs[d].head(r).transpose();
}

std::optional<Vector> EqualitySystem::reduce_rhs(const Vector& b, double tol) const
{
    if (b.size() != rows_)
        throw std::invalid_argument("EqualitySystem: rhs size mismatch");
    Vector br(static_cast<int>(kept_.size()));
    for (std::size_t k = 0; k < kept_.size(); ++k)
        br(static_cast<int>(k)) = b(kept_[k]);
    for (std::size_t d = 0; d < dropped_.size(); ++d)
    {
        const double expected = dependency_.row(static_cast<int>(d)).dot(br);
        if (std::abs(b(dropped_[d]) - expected) > tol)
            return std::nullopt;
    }
    return br;
}

double EqualitySystem::max_inconsistency(const Vector& b) const
{
    if (b.size() != rows_)
        throw std::invalid_argument("EqualitySystem: rhs size mismatch");
    Vector br(static_cast<int>(kept_.size()));
    for (std::size_t k = 0; k < kept_.size(); ++k)
        br(static_cast<int>(k)) = b(kept_[k]);
    double worst = 0.0;
    for (std::size_t d = 0; d < dropped_.size(); ++d)
    {
        const double expected = dependency_.row(static_cast<int>(d)).dot(br);
        worst = std::max(worst, std::abs(b(dropped_[d]) - expected));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// bounded-variable simplex
// ---------------------------------------------------------------------------

namespace detail
{

struct SimplexProblem
{
    Matrix A;   // r x (g + r): structural columns then signed artificial columns
    Vector b;   // r
    int rows = 0;
    int structurals = 0;
};

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SimplexState
{
    std::vector<int> basis;       // size rows
    std::vector<int> position;    // var -> basis position, or -1
    std::vector<char> at_upper;   // nonbasic rest bound
    Vector lb, ub;                // per variable
    RowMatrix Binv;               // row-major: the pivot update walks rows
    Vector x;
    int pivots = 0;
};

void refactor(const SimplexProblem& p, SimplexState& s)
{
    const int r = p.rows;
    if (r == 0)
        return;
    Matrix B(r, r);
    for (int k = 0; k < r; ++k)
        B.col(k) = p.A.col(s.basis[k]);
    Eigen::PartialPivLU<Matrix> lu(B);
    s.Binv = lu.inverse();
    Vector xn = s.x;
    for (int k = 0; k < r; ++k)
        xn(s.basis[k]) = 0.0;
    Vector xb = s.Binv * (p.b - p.A * xn);
    for (int k = 0; k < r; ++k)
        s.x(s.basis[k]) = xb(k);
}

// Minimizing simplex on the given cost vector. Dantzig pricing by default;
// when the objective stalls the rule switches to Bland, whose finite
// termination guards against cycling. Every tie-break is strict (first
// maximum, smallest index), so the pivot path is deterministic for fixed
// input. Returns false when the iteration cap was exhausted.
bool iterate(const SimplexProblem& p, SimplexState& s, const Vector& cost)
{
    const int r = p.rows;
    const int total = static_cast<int>(p.A.cols());
    const int max_iters = 2000 + 200 * total;
    const double inf = std::numeric_limits<double>::infinity();

    bool bland = false;
    int stalled = 0;
    Vector cb(r), pi(r), rc(total);

    for (int iter = 0; iter < max_iters; ++iter)
    {
        rc = cost;
        if (r > 0)
        {
            for (int k = 0; k < r; ++k)
                cb(k) = cost(s.basis[k]);
            pi.noalias() = s.Binv.transpose() * cb;
            rc.noalias() -= p.A.transpose() * pi;
        }

        int enter = -1;
        int dir = 0;
        double best_rc = kReducedCostTol;
        for (int j = 0; j < total; ++j)
        {
            if (s.position[j] >= 0)
                continue;
            if (s.ub(j) - s.lb(j) < kRatioTieTol)
                continue; // pinned
            int d = 0;
            if (!s.at_upper[j] && rc(j) < -kReducedCostTol)
                d = +1;
            else if (s.at_upper[j] && rc(j) > kReducedCostTol)
                d = -1;
            if (d == 0)
                continue;
            if (bland)
            {
                enter = j;
                dir = d;
                break;
            }
            if (std::abs(rc(j)) > best_rc)
            {
                best_rc = std::abs(rc(j));
                enter = j;
                dir = d;
            }
        }
        if (enter < 0)
            return true; // optimal

        Vector y;
        if (r > 0)
            y = s.Binv * p.A.col(enter);

        // Ratio test over basics plus the entering variable's own bound
        // span. Ties break on the largest pivot magnitude under Dantzig
        // pricing and on the smallest variable index under Bland (required
        // for the termination guarantee).
        const double t_bound = s.ub(enter) - s.lb(enter);
        double t_min = t_bound;
        int leave_pos = -1; // -1 means bound flip
        int leave_var = enter;
        double leave_piv = inf; // bound flips never lose a stability tie
        for (int k = 0; k < r; ++k)
        {
            const int i = s.basis[k];
            const double yy = dir * y(k);
            double t = inf;
            if (yy > kPivotTol)
                t = (s.x(i) - s.lb(i)) / yy;
            else if (yy < -kPivotTol)
                t = (s.ub(i) - s.x(i)) / (-yy);
            else
                continue;
            if (t < 0)
                t = 0;
            const bool tie = t < t_min + kRatioTieTol;
            const bool better_tie =
                bland ? i < leave_var : std::abs(y(k)) > leave_piv;
            if (t < t_min - kRatioTieTol || (tie && better_tie))
            {
                t_min = t;
                leave_pos = k;
                leave_var = i;
                leave_piv = std::abs(y(k));
            }
        }
        if (t_min == inf)
            return false; // numerically lost: no finite blocking step

        if (!bland)
        {
            // Dantzig pricing makes no progress on degenerate pivots; after
            // a stretch of them fall back to Bland for guaranteed
            // termination.
            stalled = best_rc * t_min > 1e-12 ? 0 : stalled + 1;
            if (stalled > 60)
                bland = true;
        }

        s.x(enter) += dir * t_min;
        for (int k = 0; k < r; ++k)
            s.x(s.basis[k]) -= dir * t_min * y(k);

        if (leave_pos < 0)
        {
            s.at_upper[enter] = !s.at_upper[enter];
            s.x(enter) = s.at_upper[enter] ? s.ub(enter) : s.lb(enter);
            continue;
        }

        const int leave = s.basis[leave_pos];
        const double yy = dir * y(leave_pos);
        s.x(leave) = yy > 0 ? s.lb(leave) : s.ub(leave);
        s.at_upper[leave] = (yy <= 0);
        s.position[leave] = -1;
        s.basis[leave_pos] = enter;
        s.position[enter] = leave_pos;
        if (leave >= p.structurals)
        {
            // artificials never come back once they left the basis
            s.lb(leave) = 0.0;
            s.ub(leave) = 0.0;
            s.x(leave) = 0.0;
        }

        // rank-1 basis-inverse update
        const double piv = y(leave_pos);
        Eigen::RowVectorXd pivot_row = s.Binv.row(leave_pos) / piv;
        Vector eta = y;
        eta(leave_pos) = 0.0;
        s.Binv.noalias() -= eta * pivot_row;
        s.Binv.row(leave_pos) = pivot_row;
        if (++s.pivots % kRefactorEvery == 0)
            refactor(p, s);
    }
    return false;
}

} // namespace detail

BoxSimplex::BoxSimplex(Matrix A, Vector b)
{
    const int r = static_cast<int>(A.rows());
    const int g = static_cast<int>(A.cols());
    if (b.size() != r)
        throw std::invalid_argument("BoxSimplex: rhs size mismatch");
    if (!A.allFinite() || !b.allFinite())
        throw std::invalid_argument("BoxSimplex: non-finite entries");

    auto prob = std::make_shared<detail::SimplexProblem>();
    prob->rows = r;
    prob->structurals = g;
    prob->b = std::move(b);

    auto st = std::make_shared<detail::SimplexState>();
    st->lb.resize(g + r);
    st->ub.resize(g + r);
    st->lb.head(g).setConstant(-1.0);
    st->ub.head(g).setConstant(1.0);
    st->x = Vector::Zero(g + r);
    st->x.head(g).setConstant(-1.0); // structural rest at lower bound
    st->at_upper.assign(g + r, 0);
    st->position.assign(g + r, -1);
    st->basis.resize(r);

    Vector resid = prob->b;
    if (r > 0 && g > 0)
        resid -= A * st->x.head(g);

    prob->A.resize(r, g + r);
    if (g > 0)
        prob->A.leftCols(g) = A;
    prob->A.rightCols(r).setZero();
    Vector phase1_cost = Vector::Zero(g + r);
    st->Binv = Matrix::Zero(r, r);
    for (int i = 0; i < r; ++i)
    {
        const double sgn = resid(i) >= 0 ? 1.0 : -1.0;
        prob->A(i, g + i) = sgn;
        st->lb(g + i) = 0.0;
        st->ub(g + i) = std::numeric_limits<double>::infinity();
        st->x(g + i) = std::abs(resid(i));
        st->basis[i] = g + i;
        st->position[g + i] = i;
        st->Binv(i, i) = sgn; // diag of +-1 is its own inverse
        phase1_cost(g + i) = 1.0;
    }

    const bool finished = detail::iterate(*prob, *st, phase1_cost);

    double art_sum = 0.0;
    for (int i = 0; i < r; ++i)
        art_sum += std::abs(st->x(g + i));
    infeasibility_ = art_sum;
    feasible_ = finished && art_sum <= kFeasTol;

    problem_ = std::move(prob);
    phase1_ = std::move(st);
}

// Pins the artificials at zero and refreshes the basis inverse; built once,
// on the first optimize() call, so feasibility-only users skip the cost.
const detail::SimplexState& BoxSimplex::phase2_state() const
{
    std::call_once(*phase2_once_, [&] {
        auto st = std::make_shared<detail::SimplexState>(*phase1_);
        const int g = problem_->structurals;
        for (int i = 0; i < problem_->rows; ++i)
        {
            st->lb(g + i) = 0.0;
            st->ub(g + i) = 0.0;
            if (st->position[g + i] < 0)
                st->x(g + i) = 0.0;
        }
        detail::refactor(*problem_, *st);
        phase2_ = std::move(st);
    });
    return *phase2_;
}

Vector BoxSimplex::feasible_point() const
{
    Vector beta = phase1_->x.head(problem_->structurals);
    return beta.cwiseMax(-1.0).cwiseMin(1.0);
}

Result BoxSimplex::optimize(const Vector& objective, bool maximize) const
{
    const int g = problem_->structurals;
    if (objective.size() != g)
        throw std::invalid_argument("BoxSimplex: objective size mismatch");
    Result res;
    if (!feasible_)
    {
        res.status = Status::infeasible;
        return res;
    }

    detail::SimplexState st = phase2_state();
    Vector cost = Vector::Zero(g + problem_->rows);
    cost.head(g) = maximize ? Vector(-objective) : objective;

    const bool finished = detail::iterate(*problem_, st, cost);

    auto residual_of = [&](const Vector& beta) {
        return problem_->rows > 0
                   ? (problem_->A.leftCols(g) * beta - problem_->b).cwiseAbs().maxCoeff()
                   : 0.0;
    };
    Vector beta = st.x.head(g).cwiseMax(-1.0).cwiseMin(1.0);
    double resid = residual_of(beta);
    if (finished && resid > kFeasTol)
    {
        // numerical drift: refresh the basis inverse and the basic values
        detail::refactor(*problem_, st);
        beta = st.x.head(g).cwiseMax(-1.0).cwiseMin(1.0);
        resid = residual_of(beta);
    }

    res.argument = beta;
    res.value = objective.dot(beta);
    res.status = (finished && resid <= kFeasTol) ? Status::optimal : Status::degenerate;
    return res;
}

// ---------------------------------------------------------------------------

Result solve(const BoxLP& lp)
{
    if (lp.A.rows() != lp.b.size())
        throw std::invalid_argument("solve: A/b row mismatch");
    if (lp.A.rows() > 0 && lp.A.cols() != lp.objective.size())
        throw std::invalid_argument("solve: A/objective size mismatch");
    if (!lp.A.allFinite() || !lp.b.allFinite() || !lp.objective.allFinite())
        throw std::invalid_argument("solve: non-finite entries");

    Matrix A = lp.A;
    if (A.rows() == 0)
        A.resize(0, lp.objective.size());

    EqualitySystem sys(A);
    auto br = sys.reduce_rhs(lp.b);
    Result res;
    if (!br)
    {
        res.status = Status::infeasible;
        return res;
    }
    BoxSimplex simplex(sys.reduced_A(), *br);
    if (!simplex.feasible())
    {
        res.status = Status::infeasible;
        return res;
    }
    return simplex.optimize(lp.objective, lp.maximize);
}

bool feasible(const Matrix& A, const Vector& b, double tol)
{
    EqualitySystem sys(A);
    auto br = sys.reduce_rhs(b, tol);
    if (!br)
        return false;
    BoxSimplex simplex(sys.reduced_A(), *br);
    return simplex.infeasibility() <= tol;
}

double infeasibility(const Matrix& A, const Vector& b)
{
    EqualitySystem sys(A);
    auto br = sys.reduce_rhs(b, std::numeric_limits<double>::infinity());
    BoxSimplex simplex(sys.reduced_A(), *br);
    return std::max(simplex.infeasibility(), sys.max_inconsistency(b));
}

} // namespace zonoreach::lp
