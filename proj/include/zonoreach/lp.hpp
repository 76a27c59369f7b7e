#ifndef ZONOREACH_LP_HPP_
#define ZONOREACH_LP_HPP_

#include "zonoreach/types.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace zonoreach::lp
{

enum class Status
{
    optimal,
    infeasible,
    degenerate // cycling guard exhausted or residual check failed
};

/// min/max  objective . beta   s.t.  A beta = b,  -1 <= beta <= 1
struct BoxLP
{
    Vector objective;
    Matrix A;
    Vector b;
    bool maximize = false;
};

struct Result
{
    Status status = Status::infeasible;
    double value = 0.0;
    Vector argument;
};

/// Row analysis of an equality system {A beta = b}. Linearly dependent rows
/// are identified once; reduce_rhs then checks each right-hand side against
/// the dependencies and returns the reduced rhs, or nullopt when a dropped
/// row is inconsistent (this includes all-zero rows with nonzero rhs).
class EqualitySystem
{
    public:
        explicit EqualitySystem(const Matrix& A);

        const Matrix& reduced_A() const { return reduced_A_; }
        int rank() const { return static_cast<int>(kept_.size()); }
        int rows() const { return rows_; }
        int cols() const { return static_cast<int>(reduced_A_.cols()); }

        std::optional<Vector> reduce_rhs(const Vector& b, double tol = kFeasTol) const;

        /// Largest residual of the dependent rows for this rhs (0 when all
        /// dependent rows are consistent).
        double max_inconsistency(const Vector& b) const;

    private:
        int rows_ = 0;
        Matrix reduced_A_;           // independent rows, original order
        std::vector<int> kept_;
        std::vector<int> dropped_;
        Matrix dependency_;          // dropped rows expressed in kept rows
};

namespace detail
{
struct SimplexProblem;
struct SimplexState;
}

/// Bounded-variable simplex over a row-independent equality system. Phase 1
/// runs once at construction; optimize() restarts phase 2 from the stored
/// feasible basis for each objective. Bland's rule guards cycling. All
/// pivoting is deterministic for fixed input.
class BoxSimplex
{
    public:
        BoxSimplex(Matrix A, Vector b);

        bool feasible() const { return feasible_; }

        /// Phase-1 optimum: the minimal l1 equality residual over the box.
        double infeasibility() const { return infeasibility_; }

        Result optimize(const Vector& objective, bool maximize) const;

        /// A feasible point (phase-1 solution), valid when feasible().
        Vector feasible_point() const;

    private:
        const detail::SimplexState& phase2_state() const;

        std::shared_ptr<const detail::SimplexProblem> problem_;
        std::shared_ptr<const detail::SimplexState> phase1_;
        mutable std::shared_ptr<const detail::SimplexState> phase2_; // lazy
        mutable std::shared_ptr<std::once_flag> phase2_once_ = std::make_shared<std::once_flag>();
        bool feasible_ = false;
        double infeasibility_ = 0.0;
};

Result solve(const BoxLP& lp);

/// Phase-1 feasibility of {A beta = b, ||beta||_inf <= 1}.
bool feasible(const Matrix& A, const Vector& b, double tol = kFeasTol);

/// Minimal l1 equality residual over the box (0 when feasible), used as the
/// violation measure in containment reports.
double infeasibility(const Matrix& A, const Vector& b);

} // namespace zonoreach::lp

#endif
