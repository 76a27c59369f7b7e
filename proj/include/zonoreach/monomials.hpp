#ifndef ZONOREACH_MONOMIALS_HPP_
#define ZONOREACH_MONOMIALS_HPP_

#include "zonoreach/interval.hpp"
#include "zonoreach/types.hpp"

#include <vector>

namespace zonoreach
{

/// A list of distinct exponent vectors alpha over a fixed number of
/// variables; monomial alpha maps z to prod_v z_v^alpha_v with 0^0 = 1.
class MonomialBasis
{
    public:
        MonomialBasis(int variables, std::vector<Eigen::VectorXi> exponents);

        /// All monomials with total degree <= d, in graded-lex order
        /// (degree ascending; within a degree the leading variables first).
        static MonomialBasis up_to_degree(int variables, int d);

        int variables() const { return variables_; }
        int size() const { return static_cast<int>(exponents_.size()); }
        const std::vector<Eigen::VectorXi>& exponents() const { return exponents_; }

    private:
        int variables_;
        std::vector<Eigen::VectorXi> exponents_;
};

/// Evaluates every basis monomial at z.
Vector eval_monomials(const MonomialBasis& basis, const Vector& z);

/// Element-wise range of each monomial over the box [z.lower, z.upper]:
/// exact integer-power interval arithmetic per variable (even powers clamp
/// at zero when the interval straddles it), products by the four-corner
/// rule. Exact because each variable enters a monomial once.
Interval monomial_interval(const MonomialBasis& basis, const Interval& z);

} // namespace zonoreach

#endif
