#include "approxsys/chebyshev.hpp"

namespace approxsys {

namespace {

// sum_k sign^k * weight(k) * (2x)^(p-2k), weight(k) = numerator_factorial(k) / (k! (p-2k)!).
template <class NumeratorFactorial>
ExactPoly explicit_sum(unsigned p, bool alternating, const Rational& prefactor, NumeratorFactorial top)
{
    std::vector<GaussianRational> coeffs(p + 1);
    for (unsigned k = 0; 2 * k <= p; ++k) {
        const unsigned power = p - 2 * k;
        Rational term = prefactor * factorial(top(k)) / (factorial(k) * factorial(power));
        mpz_class two_power;
        mpz_ui_pow_ui(two_power.get_mpz_t(), 2, power);
        term *= Rational(two_power);
        if (alternating && k % 2 == 1) {
            term = -term;
        }
        coeffs[power] = GaussianRational(term);
    }
    return ExactPoly(std::move(coeffs));
}

}  // namespace

ExactPoly chebyshev_t(unsigned p)
{
    if (p == 0) {
        return ExactPoly::constant(1L);
    }
    return explicit_sum(p, true, Rational(p) / 2, [p](unsigned k) { return p - k - 1; });
}

ExactPoly chebyshev_u(unsigned p)
{
    return explicit_sum(p, true, Rational(1), [p](unsigned k) { return p - k; });
}

ExactPoly chebyshev_t_plus(unsigned p)
{
    if (p == 0) {
        return ExactPoly::constant(1L);
    }
    return explicit_sum(p, false, Rational(p) / 2, [p](unsigned k) { return p - k - 1; });
}

}  // namespace approxsys
