#include "approxsys/catalog.hpp"

#include <cmath>
#include <limits>

#include "approxsys/chebyshev.hpp"
#include "approxsys/error.hpp"

namespace approxsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double fact(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double pd(unsigned p, double e) { return std::pow(static_cast<double>(p), e); }

double tri(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n + 1); }

Rational inverse_factorial(std::size_t k) { return Rational(1) / factorial(static_cast<unsigned>(k)); }

[[noreturn]] void bad_parameter(const std::string& what) { throw Error(ErrorKind::parameter, what); }

double require_radius(const CatalogParams& params, double fallback)
{
    const double r = params.radius.value_or(fallback);
    if (!(r > 0.0) || !std::isfinite(r)) {
        bad_parameter("R must be positive and finite");
    }
    return r;
}

void require_even(unsigned p, const char* name)
{
    if (p < 2 || p % 2 != 0) {
        bad_parameter(std::string(name) + " needs an even p >= 2");
    }
}

/// Coefficients c_k, 0 <= k <= m, with c_k = sign(k) / k! on the selected parities.
std::vector<GaussianRational> exp_like(std::size_t m, bool odd, bool even, int period_sign, const Rational& scale = 1)
{
    std::vector<GaussianRational> out;
    Rational power = 1;
    for (std::size_t k = 0; k <= m; ++k) {
        const bool keep = (k % 2 == 1) ? odd : even;
        Rational c = keep ? Rational(power * inverse_factorial(k)) : Rational(0);
        // period_sign = -1 alternates signs over pairs of nonzero terms (sin, cos).
        if (period_sign < 0 && ((k / 2) % 2 == 1)) {
            c = -c;
        }
        out.emplace_back(c);
        power *= scale;
    }
    return out;
}

Step y_power(unsigned p) { return Step::polynomial(ExactBiPoly::monomial(1L, p, 0)); }

std::function<double(std::size_t)> sinh_bound(unsigned p, double r)
{
    return [p, r](std::size_t n) {
        return std::pow(r, static_cast<double>(n + 1)) * std::exp(r) /
               (2.0 * pd(p, 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0)) * fact(n + 1));
    };
}

std::function<double(std::size_t)> cosh_bound(unsigned p, double r)
{
    return [p, r](std::size_t n) {
        const double base = (p - 1.0) * r * std::sinh(r) / std::sinh(r / p);
        return r * std::sinh(r) / (pd(p, tri(n)) * fact(n + 1)) * std::pow(base, static_cast<double>(n));
    };
}

CatalogEntry make_exp(const CatalogParams& params)
{
    const unsigned p = params.p;
    if (p < 1) {
        bad_parameter("exp needs p >= 1");
    }
    const double r = require_radius(params, 1.0);
    CatalogEntry e{"exp", params, r, from_fde(y_power(p), AffineMap::linear(GaussianRational::fraction(1, p)), 1L, 0L, r)};
    e.system = e.system.with_codomains([p, r](std::size_t i) -> std::optional<DiskDomain> {
        return DiskDomain(1L, std::expm1(r / pd(p, static_cast<double>(i + 1))));
    });
    e.reference = [](Complex x) { return std::exp(x); };
    e.row_reference = [p](std::size_t i, Complex x) { return std::exp(x / pd(p, static_cast<double>(i))); };
    e.row_deviation = [p, r](std::size_t i) { return std::expm1(r / pd(p, static_cast<double>(i))); };
    e.taylor_coefficients = [](std::size_t m) { return exp_like(m, true, true, 1); };
    e.closed_form_bound = [p, r](std::size_t n) {
        return std::exp(r) * std::pow(r, static_cast<double>(n + 1)) /
               (pd(p, 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0)) * fact(n + 1));
    };
    e.notes = "g' = g(x/p)^p, g(0) = 1; g = exp";
    return e;
}

CatalogEntry make_sinh(const CatalogParams& params)
{
    const unsigned p = params.p;
    require_even(p, "sinh");
    const double r = require_radius(params, 1.0);
    const Step f = Step::polynomial(ExactBiPoly::from_y(chebyshev_t_plus(p)));
    CatalogEntry e{"sinh", params, r, from_fde(f, AffineMap::linear(GaussianRational::fraction(1, p)), 0L, 0L, r)};
    e.system = e.system.with_codomains([p, r](std::size_t i) -> std::optional<DiskDomain> {
        return DiskDomain(0L, std::sinh(r / pd(p, static_cast<double>(i + 1))));
    });
    e.reference = [](Complex x) { return std::sinh(x); };
    e.row_reference = [p](std::size_t i, Complex x) { return std::sinh(x / pd(p, static_cast<double>(i))); };
    e.row_deviation = [p, r](std::size_t i) { return std::sinh(r / pd(p, static_cast<double>(i))); };
    e.taylor_coefficients = [](std::size_t m) { return exp_like(m, true, false, 1); };
    e.closed_form_bound = sinh_bound(p, r);
    e.parity = Parity::odd;
    e.notes = "g' = T_p^+(g(x/p)), g(0) = 0; g = sinh";
    return e;
}

CatalogEntry make_sin(const CatalogParams& params)
{
    require_even(params.p, "sin");
    CatalogEntry e = make_sinh(params);
    const GaussianRational i = GaussianRational::i();
    e.name = "sin";
    e.system = linear_transform(coordinate_transform(e.system, AffineMap::linear(i), 0L), -i, 0L);
    const unsigned p = params.p;
    e.reference = [](Complex x) { return std::sin(x); };
    e.row_reference = [p](std::size_t k, Complex x) { return std::sin(x / pd(p, static_cast<double>(k))); };
    e.taylor_coefficients = [](std::size_t m) { return exp_like(m, true, false, -1); };
    e.notes = "sinh system under x -> i x, then y -> -i y; g = sin";
    return e;
}

Step cosh_step(unsigned p)
{
    const ExactPoly u = chebyshev_u(p - 1);
    const FloatPoly uf = convert<Complex>(u);
    const FloatPoly du = convert<Complex>(derivative(u));
    SeriesStep s;
    s.expand = [u, p](std::size_t truncation) {
        std::vector<GaussianRational> sinh_series(truncation + 1);
        Rational scale = Rational(1, p);
        Rational power = scale;
        for (std::size_t k = 1; k <= truncation; k += 2) {
            sinh_series[k] = GaussianRational(power * inverse_factorial(k));
            power *= scale * scale;
        }
        return ExactBiPoly::from_y(u) * ExactBiPoly::from_x(ExactPoly(std::move(sinh_series)));
    };
    const double pp = p;
    s.value = [uf, pp](Complex y, Complex x) { return std::sinh(x / pp) * uf(y); };
    s.d1 = [du, pp](Complex y, Complex x) { return std::sinh(x / pp) * du(y); };
    return Step::series(std::move(s));
}

CatalogEntry make_cosh(const CatalogParams& params)
{
    const unsigned p = params.p;
    if (p < 2) {
        bad_parameter("cosh needs p >= 2");
    }
    const double r = require_radius(params, 1.0);
    CatalogEntry e{"cosh", params, r,
                   from_fde(cosh_step(p), AffineMap::linear(GaussianRational::fraction(1, p)), 1L, 0L, r)};
    e.system = e.system.with_codomains([p, r](std::size_t i) -> std::optional<DiskDomain> {
        return DiskDomain(1L, std::cosh(r / pd(p, static_cast<double>(i + 1))) - 1.0);
    });
    e.reference = [](Complex x) { return std::cosh(x); };
    e.row_reference = [p](std::size_t i, Complex x) { return std::cosh(x / pd(p, static_cast<double>(i))); };
    e.row_deviation = [p, r](std::size_t i) { return std::cosh(r / pd(p, static_cast<double>(i))) - 1.0; };
    e.taylor_coefficients = [](std::size_t m) { return exp_like(m, false, true, 1); };
    e.closed_form_bound = cosh_bound(p, r);
    e.parity = Parity::even;
    e.notes = "g' = sinh(x/p) U_{p-1}(g(x/p)), g(0) = 1; g = cosh";
    return e;
}

CatalogEntry make_cos(const CatalogParams& params)
{
    CatalogEntry e = make_cosh(params);
    e.name = "cos";
    e.system = coordinate_transform(e.system, AffineMap::linear(GaussianRational::i()), 0L);
    const unsigned p = params.p;
    e.reference = [](Complex x) { return std::cos(x); };
    e.row_reference = [p](std::size_t i, Complex x) { return std::cos(x / pd(p, static_cast<double>(i))); };
    e.taylor_coefficients = [](std::size_t m) { return exp_like(m, false, true, -1); };
    e.notes = "cosh system under x -> i x; g = cos";
    return e;
}

CatalogEntry make_dde(const CatalogParams& params)
{
    const GaussianRational alpha = params.alpha;
    if (!alpha.is_real() || sgn(alpha.re()) <= 0 || alpha.re() >= 1) {
        bad_parameter("dde_exp needs alpha in (0, 1)");
    }
    const double a = to_double(alpha.re());
    const double r = require_radius(params, 1.0);
    const AffineMap phi = AffineMap::numeric_shift(1L, Complex(std::log(a) / a, 0.0));
    FdeOptions options;
    options.coefficients = [alpha](std::size_t i) { return pow(alpha, static_cast<unsigned>(i)); };
    CatalogEntry e{"dde_exp", params, r,
                   from_fde(Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)), phi, 1L, 0L, kInf, options)};
    e.system = e.system.with_codomains([](std::size_t) -> std::optional<DiskDomain> { return DiskDomain(0L, kInf); });
    e.reference = [a](Complex x) { return std::exp(a * x); };
    e.row_reference = [a](std::size_t i, Complex x) { return std::pow(a, static_cast<double>(i)) * std::exp(a * x); };
    e.row_deviation = [a, r](std::size_t i) { return std::pow(a, static_cast<double>(i)) * std::expm1(a * r); };
    e.taylor_coefficients = [alpha](std::size_t m) { return exp_like(m, true, true, 1, alpha.re()); };
    e.notes = "g'(x) = g(x + log(alpha)/alpha), g(0) = 1; g = exp(alpha x)";
    return e;
}

Rational log_lambda(unsigned p, std::size_t i)
{
    if (i == 0) {
        return 1;
    }
    mpz_class pi;
    mpz_ui_pow_ui(pi.get_mpz_t(), p, static_cast<unsigned long>(i));
    Rational out(pi - 1, pi * p - pi);
    out.canonicalize();
    return out;
}

CatalogEntry make_log(const CatalogParams& params)
{
    const unsigned p = params.p;
    if (p < 2) {
        bad_parameter("log needs p >= 2");
    }
    const double r = params.radius.value_or(0.5);
    if (!(r > 0.0) || r >= 1.0) {
        bad_parameter("log needs 0 < R < 1");
    }
    auto coefficients = [](std::size_t i) { return GaussianRational(i == 0 ? 0L : 1L); };
    auto steps = [p](std::size_t i) {
        return Step::polynomial(ExactBiPoly::monomial(GaussianRational(log_lambda(p, i)), p, 0));
    };
    CatalogEntry e{"log", params, r, ApproxSystem(0L, coefficients, steps, r)};
    const auto lambda = [p](std::size_t i) { return to_double(log_lambda(p, i)); };
    // V_i must contain the range of g_{i+1}, hence the exponent lambda_{i+1}.
    e.system = e.system.with_codomains([lambda, r](std::size_t i) -> std::optional<DiskDomain> {
        return DiskDomain(1L, std::pow(1.0 - r, -lambda(i + 1)) - 1.0);
    });
    e.reference = [](Complex x) { return -std::log(1.0 - x); };
    e.row_reference = [lambda](std::size_t i, Complex x) {
        if (i == 0) {
            return -std::log(1.0 - x);
        }
        return std::pow(1.0 - x, -lambda(i));
    };
    e.row_deviation = [lambda, r](std::size_t i) {
        return i == 0 ? -std::log1p(-r) : std::pow(1.0 - r, -lambda(i)) - 1.0;
    };
    e.taylor_coefficients = [](std::size_t m) {
        std::vector<GaussianRational> out{GaussianRational(0L)};
        for (std::size_t k = 1; k <= m; ++k) {
            out.emplace_back(Rational(1, static_cast<unsigned long>(k)));
        }
        return out;
    };
    e.closed_form_bound = [p, r](std::size_t n) { return log_error_bound(p, r, n); };
    e.notes = "g_0 = log(1/(1-x)), g_i = (1-x)^{-lambda_i}, f_i = lambda_i y^p";
    return e;
}

CatalogEntry make_taylor(const CatalogParams& params)
{
    const double r = require_radius(params, 1.0);
    CatalogEntry e{"taylor", params, r, from_taylor([](std::size_t) { return GaussianRational(1L); }, 0L, r)};
    e.system = e.system.with_codomains(
        [r](std::size_t) -> std::optional<DiskDomain> { return DiskDomain(1L, std::expm1(r)); });
    e.reference = [](Complex x) { return std::exp(x); };
    e.row_reference = [](std::size_t, Complex x) { return std::exp(x); };
    e.row_deviation = [r](std::size_t) { return std::expm1(r); };
    e.taylor_coefficients = [](std::size_t m) { return exp_like(m, true, true, 1); };
    e.closed_form_bound = [r](std::size_t n) {
        return std::exp(r) * std::pow(r, static_cast<double>(n + 1)) / fact(n + 1);
    };
    e.notes = "f_i = y, a_i = 1: Taylor polynomials of exp";
    return e;
}

}  // namespace

const std::vector<CatalogInfo>& catalog_list()
{
    static const std::vector<CatalogInfo> entries{
        {"exp", "p >= 1 (default 2), R > 0 (default 1)", "g = exp via g' = g(x/p)^p"},
        {"sinh", "p even >= 2 (default 2), R > 0 (default 1)", "g = sinh via g' = T_p^+(g(x/p))"},
        {"sin", "p even >= 2 (default 2), R > 0 (default 1)", "g = sin, transformed sinh system"},
        {"cosh", "p >= 2 (default 2), R > 0 (default 1)", "g = cosh via g' = sinh(x/p) U_{p-1}(g(x/p))"},
        {"cos", "p >= 2 (default 2), R > 0 (default 1)", "g = cos, transformed cosh system"},
        {"dde_exp", "alpha in (0,1) (default 1/2), R > 0 (default 1)", "g = exp(alpha x), shifted argument"},
        {"log", "p >= 2 (default 2), 0 < R < 1 (default 0.5)", "g = log(1/(1-x))"},
        {"taylor", "R > 0 (default 1)", "Taylor polynomials of exp"},
    };
    return entries;
}

CatalogEntry catalog_get(const std::string& name, const CatalogParams& params)
{
    if (name == "exp") {
        return make_exp(params);
    }
    if (name == "sinh") {
        return make_sinh(params);
    }
    if (name == "sin") {
        return make_sin(params);
    }
    if (name == "cosh") {
        return make_cosh(params);
    }
    if (name == "cos") {
        return make_cos(params);
    }
    if (name == "dde_exp") {
        return make_dde(params);
    }
    if (name == "log") {
        return make_log(params);
    }
    if (name == "taylor") {
        return make_taylor(params);
    }
    bad_parameter("unknown catalog entry '" + name + "'");
}

double reference_error_grid(const CatalogEntry& entry, std::size_t n, const std::vector<Complex>& grid)
{
    const FloatPoly g = convert<Complex>(build_approximants(entry.system, n).top());
    double worst = 0.0;
    for (const Complex x : grid) {
        worst = std::max(worst, std::abs(entry.reference(x) - g(x)));
    }
    return worst;
}

ErrorBoundReport catalog_fde_bound(const CatalogEntry& entry, std::size_t n)
{
    ErrorBoundReport report = fde_error_bound(entry.system, n, entry.radius, entry.reference);
    if (entry.closed_form_bound) {
        report.closed_form = entry.closed_form_bound(n);
    }
    return report;
}

ErrorBoundReport catalog_closed_form_bound(const CatalogEntry& entry, std::size_t n)
{
    if (!entry.closed_form_bound) {
        throw Error(ErrorKind::inapplicable, "entry '" + entry.name + "' has no closed-form bound");
    }
    ErrorBoundReport report;
    report.n = n;
    report.formula = "closed-form";
    report.radius = entry.radius;
    report.exponent = 0;
    report.coefficient = entry.closed_form_bound(n);
    report.closed_form = report.coefficient;
    return report;
}

}  // namespace approxsys
