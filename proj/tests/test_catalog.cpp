#include <cmath>
#include <numbers>

#include "doctest.h"

#include "approxsys/catalog.hpp"
#include "approxsys/chebyshev.hpp"
#include "approxsys/error.hpp"
#include "oracle.hpp"

using namespace approxsys;

namespace {

GaussianRational q(long num, long den = 1) { return GaussianRational::fraction(num, den); }

CatalogParams params(unsigned p, std::optional<double> radius = std::nullopt)
{
    CatalogParams out;
    out.p = p;
    out.radius = radius;
    return out;
}

const std::vector<std::string> kSymbolic{"exp", "sinh", "sin", "cosh", "cos", "dde_exp", "log", "taylor"};

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::parse;
}

}  // namespace

TEST_CASE("catalog tables")
{
    const auto exp2 = catalog_get("exp", params(2, 1.0));
    CHECK(build_approximants(exp2.system, 3).top() ==
          ExactPoly{1L, 1L, q(1, 2), q(1, 6), q(7, 192), q(1, 192), q(1, 2304), q(1, 64512)});
    const auto log2 = catalog_get("log", params(2, 0.5));
    CHECK(build_approximants(log2.system, 1).top() == ExactPoly{0L, 1L});
    CHECK(build_approximants(log2.system, 3).top() ==
          ExactPoly{0L, 1L, q(1, 2), q(1, 3), q(9, 64), q(3, 64), q(3, 256), q(9, 7168)});

    CatalogParams dde;
    dde.alpha = q(1, 2);
    const auto d = catalog_get("dde_exp", dde);
    for (unsigned n = 0; n <= 6; ++n) {
        std::vector<GaussianRational> c;
        for (unsigned k = 0; k <= n; ++k) {
            c.emplace_back(pow(q(1, 2), k) / GaussianRational(factorial(k)));
        }
        CHECK(build_approximants(d.system, n).top() == ExactPoly(c));
    }
}

TEST_CASE("log steps follow the lambda sequence")
{
    for (unsigned p : {2U, 3U}) {
        const auto e = catalog_get("log", params(p, 0.5));
        CHECK(e.system.step(0).poly() == ExactBiPoly::monomial(1L, p, 0));
        for (std::size_t i = 1; i <= 4; ++i) {
            const long pi = static_cast<long>(std::pow(p, i));
            CHECK(e.system.step(i).poly() == ExactBiPoly::monomial(q(pi - 1, pi * static_cast<long>(p) - pi), p, 0));
        }
        // g_i' = lambda_i g_{i+1}^p, checked through the references.
        for (std::size_t i = 0; i <= 3; ++i) {
            const double lambda = e.system.step(i).poly().coeff(p, 0).re().get_d();
            const Complex x(0.3, 0.1);
            const double h = 1e-6;
            const Complex deriv = (e.row_reference(i, x + h) - e.row_reference(i, x - h)) / (2 * h);
            CHECK(std::abs(deriv - lambda * std::pow(e.row_reference(i + 1, x), static_cast<double>(p))) < 1e-8);
        }
    }
}

TEST_CASE("references agree with the coefficients at the basepoint")
{
    for (const auto& name : kSymbolic) {
        const auto e = catalog_get(name, {});
        CHECK(std::abs(e.reference(Complex(0.0)) - e.system.coefficient(0).to_complex()) < 1e-12);
        for (std::size_t i = 0; i <= 4; ++i) {
            CHECK(std::abs(e.row_reference(i, Complex(0.0)) - e.system.coefficient(i).to_complex()) < 1e-12);
        }
    }
}

TEST_CASE("Taylor prefix for every entry")
{
    for (const auto& name : kSymbolic) {
        for (unsigned p : {2U, 4U}) {
            CatalogParams cp = params(p);
            const auto e = catalog_get(name, cp);
            for (std::size_t n = 0; n <= 4; ++n) {
                const auto table = build_approximants(e.system, n);
                std::size_t m = n;
                if (e.parity) {
                    m = 2 * n + (*e.parity == Parity::even ? 1 : 0);
                }
                CAPTURE(name);
                CAPTURE(n);
                const auto result = taylor_prefix_check(table.top(), e.taylor_coefficients(m), m);
                CHECK(result.matches());
                if (e.parity) {
                    CHECK(parity_check(table, *e.parity));
                }
            }
        }
    }
}

TEST_CASE("parameter validation")
{
    CHECK(kind_of([] { catalog_get("sinh", params(3)); }) == ErrorKind::parameter);
    CHECK(kind_of([] { catalog_get("sin", params(1)); }) == ErrorKind::parameter);
    CHECK(kind_of([] { catalog_get("log", params(2, 1.0)); }) == ErrorKind::parameter);
    CHECK(kind_of([] { catalog_get("exp", params(2, -1.0)); }) == ErrorKind::parameter);
    CHECK(kind_of([] { catalog_get("nope", {}); }) == ErrorKind::parameter);
    CatalogParams bad;
    bad.alpha = q(3, 2);
    CHECK(kind_of([&] { catalog_get("dde_exp", bad); }) == ErrorKind::parameter);
    CHECK(catalog_list().size() == 8);
}

TEST_CASE("sin entry is the transformed sinh entry")
{
    const GaussianRational i = GaussianRational::i();
    for (unsigned p : {2U, 4U}) {
        const auto sinh = catalog_get("sinh", params(p));
        const auto sin = catalog_get("sin", params(p));
        const GaussianRational sign = (p / 2) % 2 == 0 ? GaussianRational(1L) : GaussianRational(-1L);
        for (std::size_t k = 0; k <= 3; ++k) {
            const GaussianRational w = pow(q(1, p), static_cast<unsigned>(k));
            CHECK(sin.system.step(k).poly() == ExactBiPoly::from_y(chebyshev_t(p)) * (sign * w));
        }
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto lhs = build_approximants(sin.system, n).top();
            const auto rhs = compose_affine(build_approximants(sinh.system, n).top(), i, GaussianRational(0L)) * (-i);
            CHECK(lhs == rhs);
        }
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto a = error_bound_starlike(sinh.system, n);
            const auto b = error_bound_starlike(sin.system, n);
            CHECK(a.coefficient == doctest::Approx(b.coefficient).epsilon(1e-14));
            CHECK(sin.closed_form_bound(n) == sinh.closed_form_bound(n));
        }
    }
}

TEST_CASE("cos entry expands in powers of sin(x / 2^{n+1})")
{
    const auto cos = catalog_get("cos", params(2));
    // Steps: -p^{-j} sin(x/p^{j+1}) U_{p-1}(y).
    const auto step = cos.system.step(1);
    const Complex y(0.3, 0.2), x(0.7, -0.1);
    CHECK(std::abs(step.closed_form()(y, x) + 0.5 * std::sin(x / 4.0) * 2.0 * y) < 1e-15);

    const auto sin_power = [](std::vector<double> c, unsigned n, double x) {
        const double s = std::sin(x / std::pow(2.0, n + 1));
        double total = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            total += c[k] * std::pow(s, 2.0 * k);
        }
        return total;
    };
    const std::vector<std::vector<double>> paper{
        {1.0},
        {1.0, -8.0},
        {1.0, -32.0, 160.0, -512.0 / 3.0},
        {1.0, -128.0, 2688.0, -21504.0, 245248.0 / 3.0, -2326528.0 / 15.0, 425984.0 / 3.0, -1048576.0 / 21.0},
    };
    for (unsigned n = 0; n <= 3; ++n) {
        BuildOptions opts;
        opts.truncation = 40;
        const FloatPoly g = convert<Complex>(build_approximants(cos.system, n, opts).top());
        for (double xv : {0.4, 0.8}) {
            CHECK(std::abs(g(Complex(xv)).real() - sin_power(paper[n], n, xv)) < 1e-12);
            if (n > 0) {
                const Complex s(std::sin(xv / std::pow(2.0, n + 1)));
                CHECK(std::abs(std::cos(xv) - convert<Complex>(chebyshev_t(1U << (n + 1)))(s).real()) < 1e-10);
            }
        }
    }
}

TEST_CASE("reference error grid")
{
    const auto exp2 = catalog_get("exp", params(2, 1.0));
    CHECK(reference_error_grid(exp2, 2, {Complex(1.0)}) == doctest::Approx(0.134948495125712).epsilon(1e-12));
    for (const auto& name : kSymbolic) {
        const auto e = catalog_get(name, {});
        CHECK(reference_error_grid(e, 3, {e.system.x0().to_complex()}) < 1e-12);
    }
    const auto sinh = catalog_get("sinh", params(2, 1.0));
    const double oracle = std::sinh(1.0) - (1.0 + 1.0 / 6.0 + 1.0 / 120.0 + 1.0 / 8064.0);
    CHECK(reference_error_grid(sinh, 3, {Complex(1.0)}) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(oracle == doctest::Approx(7.71857072935e-5).epsilon(1e-9));
}

TEST_CASE("closed-form bounds reproduce their displays")
{
    const double e = std::numbers::e;
    CHECK(catalog_get("exp", params(2, 1.0)).closed_form_bound(3) == doctest::Approx(e / 192));
    CHECK(catalog_get("exp", params(2, 1.0)).closed_form_bound(2) == doctest::Approx(e / 12));
    CHECK(catalog_get("sinh", params(2, 1.0)).closed_form_bound(2) == doctest::Approx(e / 24));
    CHECK(catalog_get("log", params(2, 0.5)).closed_form_bound(2) == doctest::Approx(2.0 / 3.0));
    CHECK(catalog_get("log", params(3, 0.5)).closed_form_bound(1) == doctest::Approx(1.5));
    const double r = 1.0;
    const double cosh1 = r * std::sinh(r) / (2.0 * 2.0) * (r * std::sinh(r) / std::sinh(r / 2));
    CHECK(catalog_get("cosh", params(2, 1.0)).closed_form_bound(1) == doctest::Approx(cosh1));
}

TEST_CASE("properness of the catalog systems")
{
    for (const auto& name : {"exp", "sinh", "sin", "cosh", "cos", "log", "taylor"}) {
        const auto e = catalog_get(name, {});
        for (std::size_t n = 1; n <= 4; ++n) {
            CAPTURE(name);
            CAPTURE(n);
            const auto report = properness_audit(e.system, n);
            CHECK(report.all_satisfied());
        }
    }
    const auto dde = catalog_get("dde_exp", {});
    CHECK(properness_audit(dde.system, 2).entries[0].verdict == Verdict::not_checkable);
}
