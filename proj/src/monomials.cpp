#include "zonoreach/monomials.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace zonoreach
{

namespace
{

double int_pow(double x, int e)
{
    double r = 1.0;
    for (int k = 0; k < e; ++k)
        r *= x;
    return r;
}

struct ScalarInterval
{
    double lo, hi;
};

ScalarInterval pow_interval(double lo, double hi, int e)
{
    if (e == 0)
        return {1.0, 1.0};
    const double pl = int_pow(lo, e);
    const double ph = int_pow(hi, e);
    if (e % 2 == 1)
        return {pl, ph};
    if (lo >= 0.0)
        return {pl, ph};
    if (hi <= 0.0)
        return {ph, pl};
    return {0.0, std::max(pl, ph)};
}

ScalarInterval mul_interval(ScalarInterval a, ScalarInterval b)
{
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

void enumerate_degree(int variables, int var, int remaining, Eigen::VectorXi& current,
                      std::vector<Eigen::VectorXi>& out)
{
    if (var == variables - 1)
    {
        current(var) = remaining;
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e)
    {
        current(var) = e;
        enumerate_degree(variables, var + 1, remaining - e, current, out);
    }
}

} // namespace

MonomialBasis::MonomialBasis(int variables, std::vector<Eigen::VectorXi> exponents)
    : variables_(variables), exponents_(std::move(exponents))
{
    if (variables_ < 1)
        throw std::invalid_argument("MonomialBasis: needs at least one variable");
    std::set<std::vector<int>> seen;
    for (const auto& alpha : exponents_)
    {
        if (alpha.size() != variables_)
            throw std::invalid_argument("MonomialBasis: exponent length differs from variables");
        if ((alpha.array() < 0).any())
            throw std::invalid_argument("MonomialBasis: negative exponent");
        std::vector<int> key(alpha.data(), alpha.data() + alpha.size());
        if (!seen.insert(key).second)
            throw std::invalid_argument("MonomialBasis: duplicate exponent vector");
    }
}

MonomialBasis MonomialBasis::up_to_degree(int variables, int d)
{
    if (d < 0)
        throw std::invalid_argument("MonomialBasis: negative degree");
    std::vector<Eigen::VectorXi> exps;
    Eigen::VectorXi current(variables);
    for (int deg = 0; deg <= d; ++deg)
        enumerate_degree(variables, 0, deg, current, exps);
    return MonomialBasis(variables, std::move(exps));
}

Vector eval_monomials(const MonomialBasis& basis, const Vector& z)
{
    if (z.size() != basis.variables())
        throw std::invalid_argument("eval_monomials: argument dimension differs");
    Vector out(basis.size());
    for (int k = 0; k < basis.size(); ++k)
    {
        double v = 1.0;
        const auto& alpha = basis.exponents()[k];
        for (int j = 0; j < basis.variables(); ++j)
            v *= int_pow(z(j), alpha(j));
        out(k) = v;
    }
    return out;
}

Interval monomial_interval(const MonomialBasis& basis, const Interval& z)
{
    if (z.dim() != basis.variables())
        throw std::invalid_argument("monomial_interval: box dimension differs");
    Vector lo(basis.size()), hi(basis.size());
    for (int k = 0; k < basis.size(); ++k)
    {
        ScalarInterval acc{1.0, 1.0};
        const auto& alpha = basis.exponents()[k];
        for (int j = 0; j < basis.variables(); ++j)
        {
            if (alpha(j) == 0)
                continue;
            acc = mul_interval(acc, pow_interval(z.lower()(j), z.upper()(j), alpha(j)));
        }
        lo(k) = acc.lo;
        hi(k) = acc.hi;
    }
    return Interval(std::move(lo), std::move(hi));
}

} // namespace zonoreach
