#ifndef ZONOREACH_CONSTRAINED_ZONOTOPE_HPP_
#define ZONOREACH_CONSTRAINED_ZONOTOPE_HPP_

#include "zonoreach/lp.hpp"
#include "zonoreach/zonotope.hpp"

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>

namespace zonoreach
{

namespace detail
{

/// Shared per-set LP state: row-reduced constraint system with a completed
/// phase-1 basis, reused by support, hull, factor-bound and sampling calls.
struct FactorSetCache
{
    lp::EqualitySystem system;
    Vector reduced_b;
    lp::BoxSimplex simplex;
    // projection onto {A beta = b}; absent when there are no effective rows
    std::optional<Eigen::CompleteOrthogonalDecomposition<Matrix>> projector;
};

struct BoundsMemo
{
    std::once_flag flag;
    FactorBounds value;
};

} // namespace detail

/// Constrained zonotope C = { c + G beta | A beta = b, ||beta||_inf <= 1 }.
///
/// Construction validates shapes and checks the factor set for emptiness with
/// one feasibility LP. Values are immutable; operations are pure functions.
/// With an empty constraint block every operation degrades exactly to the
/// corresponding zonotope operation.
class ConstrainedZonotope
{
    public:
        ConstrainedZonotope(Vector center, Matrix generators, Matrix A, Vector b);

        /// Lifts a zonotope (no constraints).
        explicit ConstrainedZonotope(const Zonotope& Z);

        int dim() const { return static_cast<int>(center_.size()); }
        int num_generators() const { return static_cast<int>(generators_.cols()); }
        int num_constraints() const { return static_cast<int>(A_.rows()); }
        bool is_unconstrained() const { return A_.rows() == 0; }

        const Vector& center() const { return center_; }
        const Matrix& generators() const { return generators_; }
        const Matrix& constraint_matrix() const { return A_; }
        const Vector& constraint_vector() const { return b_; }

        const detail::FactorSetCache& factor_cache() const { return *cache_; }

    private:
        Vector center_;
        Matrix generators_;
        Matrix A_;
        Vector b_;
        std::shared_ptr<const detail::FactorSetCache> cache_;
        std::shared_ptr<detail::BoundsMemo> bounds_;

        friend FactorBounds factor_bounds(const ConstrainedZonotope& C);
};

ConstrainedZonotope linear_map(const Matrix& L, const ConstrainedZonotope& C);

/// Concatenated generators; constraint matrix zero-padded over the new factors.
ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& C, const Zonotope& Z);
ConstrainedZonotope cartesian_product(const ConstrainedZonotope& C, const Zonotope& Z);

/// Per coordinate two LPs over the feasible factor set.
Interval interval_hull(const ConstrainedZonotope& C);

double support(const ConstrainedZonotope& C, const Vector& d);

bool contains(const ConstrainedZonotope& C, const Vector& x, double tol = kFeasTol);

/// Per-factor min/max of beta over {A beta = b, ||beta||_inf <= 1}, clipped
/// to [-1, 1]. Computed once per set and memoized.
FactorBounds factor_bounds(const ConstrainedZonotope& C);

/// Drops negligible generators (only when their constraint column is zero
/// too) and merges parallel generators among unconstrained factors; zero
/// constraint rows with negligible offset are removed. Exact up to the
/// stated tolerances.
ConstrainedZonotope compact(const ConstrainedZonotope& C);

/// A feasible point of C. Box proposals are projected onto the constraint
/// subspace and rejected when they leave the box, so the distribution is not
/// uniform; only membership matters.
Vector sample(const ConstrainedZonotope& C, SplitMix64& rng);

/// Reusable membership test: factors the stacked system [G; A] once, then
/// answers point queries with a single feasibility LP each. Thread-safe for
/// concurrent queries.
class MembershipTester
{
    public:
        explicit MembershipTester(const Zonotope& Z);
        explicit MembershipTester(const ConstrainedZonotope& C);

        bool contains(const Vector& x, double tol = kFeasTol) const;

        /// Minimal l1 equality residual of the membership system (0 inside).
        double violation(const Vector& x) const;

    private:
        Vector center_;
        Vector fixed_rhs_;
        int point_dim_ = 0;
        std::shared_ptr<const lp::EqualitySystem> system_;
        std::shared_ptr<const Eigen::CompleteOrthogonalDecomposition<Matrix>> projector_;
        // consecutive projection-certificate misses; the attempt is skipped
        // once the set's geometry has proven unhelpful
        std::shared_ptr<std::atomic<int>> certificate_misses_ =
            std::make_shared<std::atomic<int>>(0);
};

} // namespace zonoreach

#endif
