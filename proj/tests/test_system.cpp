#include <cmath>
#include <numbers>

#include "doctest.h"

#include "approxsys/chebyshev.hpp"
#include "approxsys/error.hpp"
#include "approxsys/system.hpp"
#include "oracle.hpp"

using namespace approxsys;
using oracle::Q;

namespace {

GaussianRational q(long num, long den = 1) { return GaussianRational::fraction(num, den); }

Step y_power(unsigned p) { return Step::polynomial(ExactBiPoly::monomial(1L, p, 0)); }

ApproxSystem exp_system(unsigned p, double radius = 1.0)
{
    return from_fde(y_power(p), AffineMap::linear(q(1, p)), 1L, 0L, radius);
}

ApproxSystem sinh_system(unsigned p, double radius = 1.0)
{
    return from_fde(Step::polynomial(ExactBiPoly::from_y(chebyshev_t_plus(p))), AffineMap::linear(q(1, p)), 0L, 0L,
                    radius);
}

// g_n = a, g_i = a + int_0^x p^{-i} q(g_{i+1}(t)) dt, computed with the oracle arithmetic.
oracle::Poly oracle_fde_top(const oracle::Poly& step_in_y, unsigned p, const Q& a, unsigned n)
{
    oracle::Poly row{a};
    oracle::trim(row);
    for (unsigned i = n; i-- > 0;) {
        Q weight = 1;
        for (unsigned k = 0; k < i; ++k) {
            weight /= p;
        }
        oracle::Poly integrand = oracle::scale(oracle::compose(step_in_y, row), weight);
        row = oracle::add(oracle::Poly{a}, oracle::integrate(integrand));
    }
    return row;
}

}  // namespace

TEST_CASE("exp system tables")
{
    const auto sys = exp_system(2);
    CHECK(build_approximants(sys, 0).top() == ExactPoly{1L});
    CHECK(build_approximants(sys, 1).top() == ExactPoly{1L, 1L});
    CHECK(build_approximants(sys, 2).top() == ExactPoly{1L, 1L, q(1, 2), q(1, 12)});
    CHECK(build_approximants(sys, 3).top() ==
          ExactPoly{1L, 1L, q(1, 2), q(1, 6), q(7, 192), q(1, 192), q(1, 2304), q(1, 64512)});
    for (unsigned p : {2U, 3U}) {
        const auto s = exp_system(p);
        for (unsigned n = 0; n <= 4; ++n) {
            oracle::Poly yp(p + 1, Q(0));
            yp[p] = 1;
            CHECK(build_approximants(s, n).top() == oracle::to_exact(oracle_fde_top(yp, p, Q(1), n)));
        }
    }
}

TEST_CASE("sinh system tables")
{
    const auto sys = sinh_system(2);
    CHECK(build_approximants(sys, 3).top() == ExactPoly{0L, 1L, 0L, q(1, 6), 0L, q(1, 120), 0L, q(1, 8064)});
    const oracle::Poly t2 = oracle::from_strings({"1", "0", "2"});
    for (unsigned n = 0; n <= 4; ++n) {
        CHECK(build_approximants(sys, n).top() == oracle::to_exact(oracle_fde_top(t2, 2, Q(0), n)));
    }
}

TEST_CASE("approximant table invariants")
{
    for (const auto& sys : {exp_system(2), exp_system(3), sinh_system(2), sinh_system(4)}) {
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto table = build_approximants(sys, n);
            REQUIRE(table.rows.size() == n + 1);
            CHECK(table.row(n) == ExactPoly::constant(sys.coefficient(n)));
            for (std::size_t i = 0; i <= n; ++i) {
                CHECK(table.row(i)(sys.x0()) == sys.coefficient(i));
            }
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(derivative(table.row(i)) == substitute_y(sys.step(i).poly(), table.row(i + 1)));
            }
        }
    }
}

TEST_CASE("degree law for the exp system")
{
    for (unsigned p : {2U, 3U}) {
        const auto sys = exp_system(p);
        long expected = 0;
        long power = 1;
        for (unsigned n = 0; n <= (p == 2 ? 5U : 4U); ++n) {
            CHECK(build_approximants(sys, n).top().degree() == expected);
            power *= p;
            expected = (power - 1) / (p - 1);
        }
    }
}

TEST_CASE("Taylor systems")
{
    const auto ones = from_taylor(std::vector<GaussianRational>(4, 1L));
    CHECK(build_approximants(ones, 3).top() == ExactPoly{1L, 1L, q(1, 2), q(1, 6)});
    CHECK(build_approximants(from_taylor(std::vector<GaussianRational>{q(5, 3)}), 0).top() == ExactPoly{q(5, 3)});
    const auto sin_derivs = from_taylor(std::vector<GaussianRational>{0L, 1L, 0L, -1L, 0L, 1L, 0L});
    CHECK(build_approximants(sin_derivs, 5).top() == ExactPoly{0L, 1L, 0L, q(-1, 6), 0L, q(1, 120)});
    CHECK_THROWS_AS(build_approximants(ones, 4), Error);

    // Shifted basepoint: sum a_k (x - x0)^k / k!.
    const auto shifted = from_taylor(std::vector<GaussianRational>{2L, 3L, 4L}, 1L);
    const ExactPoly expected = compose_affine(ExactPoly{2L, 3L, 2L}, GaussianRational(1L), GaussianRational(-1L));
    CHECK(build_approximants(shifted, 2).top() == expected);
}

TEST_CASE("Picard systems")
{
    const auto sys = from_ode(Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)), 1L, 0L, 1.0);
    CHECK(build_approximants(sys, 3).top() == ExactPoly{1L, 1L, q(1, 2), q(1, 6)});
    const auto zero = from_ode(Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)), 0L, 0L, 1.0);
    for (std::size_t n = 0; n <= 4; ++n) {
        CHECK(build_approximants(zero, n).top().is_zero());
    }
    CHECK_THROWS_AS(Step::polynomial(ExactBiPoly::monomial(1L, 0, 1)), Error);

    // Shift identity on a nonlinear, x-dependent step, with a brute-force Picard oracle.
    const ExactBiPoly f = ExactBiPoly::monomial(1L, 2, 0) + ExactBiPoly::monomial(q(1, 2), 0, 1) +
                          ExactBiPoly::monomial(1L, 1, 0);
    const auto picard = from_ode(Step::polynomial(f), q(1, 3), 0L, 1.0);
    std::vector<ExactPoly> iterates{ExactPoly{q(1, 3)}};
    for (int k = 0; k < 5; ++k) {
        const ExactPoly& h = iterates.back();
        ExactPoly integrand = h * h + ExactPoly{0L, q(1, 2)} + h;
        iterates.push_back(ExactPoly{q(1, 3)} + integrate_from(integrand, GaussianRational(0L)));
    }
    for (std::size_t n = 0; n <= 5; ++n) {
        const auto table = build_approximants(picard, n);
        CHECK(table.top() == iterates[n]);
        for (std::size_t i = 0; i <= n; ++i) {
            CHECK(table.row(i) == build_approximants(picard, n - i).top());
        }
    }
}

TEST_CASE("FDE shift identity, derivative relation and S-operator")
{
    const std::vector<ApproxSystem> systems{exp_system(2), exp_system(3), sinh_system(2)};
    for (const auto& sys : systems) {
        const AffineMap& phi = sys.fde()->phi;
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto table = build_approximants(sys, n);
            for (std::size_t i = 0; i <= n; ++i) {
                const AffineMap phi_i = phi.iterate(static_cast<unsigned>(i));
                const ExactPoly shifted = compose_affine(build_approximants(sys, n - i).top(), phi_i.scale, phi_i.shift);
                CHECK(table.row(i) == shifted);
            }
            if (n >= 1) {
                const ExactPoly prev = build_approximants(sys, n - 1).top();
                const ExactPoly inner = compose_affine(prev, phi.scale, phi.shift);
                CHECK(derivative(table.top()) == substitute_y(sys.fde()->f.poly(), inner));
            }
            CHECK(s_operator_iterate(sys, n) == table.top());
        }
    }
    CHECK(s_operator_iterate(exp_system(2), 2) == ExactPoly{1L, 1L, q(1, 2), q(1, 12)});
    CHECK(s_operator_iterate(sinh_system(2), 2) == ExactPoly{0L, 1L, 0L, q(1, 6)});
    CHECK(s_operator_iterate(sinh_system(2), 0).is_zero());
}

TEST_CASE("from_fde steps and coefficients")
{
    const auto sys = exp_system(2);
    CHECK(sys.coefficient(5) == GaussianRational(1L));
    CHECK(sys.step(3).poly() == ExactBiPoly::monomial(q(1, 8), 2, 0));
    const auto sinh = sinh_system(2);
    CHECK(sinh.step(2).poly() == ExactBiPoly::from_y(chebyshev_t_plus(2)) * q(1, 4));

    // Shift map without a fixpoint: a_i = g(phi^i(x0)).
    const double alpha = 0.5;
    const Complex shift(std::log(alpha) / alpha, 0.0);
    FdeOptions opts;
    opts.coefficients = [](std::size_t i) { return pow(q(1, 2), static_cast<unsigned>(i)); };
    const auto dde = from_fde(Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)),
                              AffineMap::numeric_shift(1L, shift), 1L, 0L,
                              std::numeric_limits<double>::infinity(), opts);
    CHECK(dde.coefficient(3) == q(1, 8));
    CHECK(dde.step(4).poly() == ExactBiPoly::monomial(1L, 1, 0));
    CHECK_THROWS_AS(s_operator_iterate(dde, 2), Error);
    try {
        s_operator_iterate(dde, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_fixpoint);
    }

    FdeOptions by_reference;
    by_reference.reference = [alpha](Complex x) { return std::exp(alpha * x); };
    const auto dde_ref = from_fde(Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)),
                                  AffineMap::numeric_shift(1L, shift), 1L, 0L,
                                  std::numeric_limits<double>::infinity(), by_reference);
    CHECK(std::abs(dde_ref.coefficient(2).to_complex() - 0.25) < 1e-15);

    CHECK_THROWS_AS(from_fde(y_power(2), AffineMap::affine(1L, 1L), 1L, 0L, 1.0), Error);
    try {
        from_fde(y_power(2), AffineMap::linear(2L), 1L, 0L, 1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::endomorphism);
    }
}

TEST_CASE("coordinate transform commutes with building")
{
    const auto sys = exp_system(2);
    const auto doubled = coordinate_transform(sys, AffineMap::linear(2L), 0L);
    CHECK(build_approximants(doubled, 2).top() == ExactPoly{1L, 2L, 2L, q(2, 3)});
    CHECK(doubled.radius() == doctest::Approx(0.5));

    const auto same = coordinate_transform(sys, AffineMap::identity(), 0L);
    for (std::size_t n = 0; n <= 3; ++n) {
        CHECK(build_approximants(same, n).top() == build_approximants(sys, n).top());
    }

    const GaussianRational i = GaussianRational::i();
    const std::vector<AffineMap> maps{AffineMap::linear(i), AffineMap::linear(q(-1, 3)),
                                      AffineMap::linear(GaussianRational(Rational(1), Rational(1)))};
    for (const auto& base : {exp_system(2), sinh_system(2)}) {
        for (const auto& phi : maps) {
            const auto t = coordinate_transform(base, phi, 0L);
            for (std::size_t n = 0; n <= 4; ++n) {
                const auto tt = build_approximants(t, n);
                const auto bt = build_approximants(base, n);
                for (std::size_t r = 0; r <= n; ++r) {
                    CHECK(tt.row(r) == compose_affine(bt.row(r), phi.scale, phi.shift));
                }
            }
        }
    }

    // Moving the basepoint.
    const auto taylor = from_taylor(std::vector<GaussianRational>{1L, 2L, 3L});
    const auto moved = coordinate_transform(taylor, AffineMap::affine(1L, -1L), 1L);
    CHECK(build_approximants(moved, 2).top() ==
          compose_affine(build_approximants(taylor, 2).top(), GaussianRational(1L), GaussianRational(-1L)));

    CHECK_THROWS_AS(coordinate_transform(sys, AffineMap::linear(0L), 0L), Error);
    try {
        coordinate_transform(sys, AffineMap::linear(0L), 0L);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::non_invertible);
    }
}

TEST_CASE("linear transform commutes with building")
{
    const auto sys = exp_system(2);
    const auto t = linear_transform(sys, 2L, 1L);
    CHECK(build_approximants(t, 2).top() == ExactPoly{3L, 2L, 1L, q(1, 6)});
    const auto same = linear_transform(sys, 1L, 0L);
    CHECK(build_approximants(same, 3).top() == build_approximants(sys, 3).top());

    const GaussianRational a{Rational(2, 3), Rational(-1)};
    const GaussianRational b{Rational(1, 5), Rational(3)};
    for (const auto& base : {exp_system(2), sinh_system(2), exp_system(3)}) {
        const auto lt = linear_transform(base, a, b);
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto lhs = build_approximants(lt, n);
            const auto rhs = build_approximants(base, n);
            for (std::size_t r = 0; r <= n; ++r) {
                CHECK(lhs.row(r) == rhs.row(r) * a + ExactPoly{b});
            }
            CHECK(s_operator_iterate(lt, n) == lhs.top());
        }
    }
    try {
        linear_transform(sys, 0L, 1L);
        FAIL("expected degenerate-scale");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate_scale);
    }
}

TEST_CASE("sin system from sinh by transformations")
{
    const GaussianRational i = GaussianRational::i();
    const auto sinh = sinh_system(2);
    const auto isin = coordinate_transform(sinh, AffineMap::linear(i), 0L);
    CHECK(isin.step(1).poly() == ExactBiPoly::from_y(chebyshev_t_plus(2)) * (i * q(1, 2)));
    const auto sin = linear_transform(isin, -i, 0L);
    CHECK(sin.step(0).poly() == ExactBiPoly::from_y(chebyshev_t(2)) * GaussianRational(-1L));
    CHECK(sin.step(2).poly() == ExactBiPoly::from_y(chebyshev_t(2)) * q(-1, 4));
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto expected = compose_affine(build_approximants(sinh, n).top(), i, GaussianRational(0L)) * (-i);
        CHECK(build_approximants(sin, n).top() == expected);
    }
    CHECK(build_approximants(sin, 3).top() == ExactPoly{0L, 1L, 0L, q(-1, 6), 0L, q(1, 120), 0L, q(-1, 8064)});
}

TEST_CASE("callable steps and order limits")
{
    const Step f = Step::callable([](Complex y, Complex) { return y; });
    const ApproxSystem sys(0L, [](std::size_t) { return GaussianRational(1L); }, [f](std::size_t) { return f; }, 1.0);
    CHECK(build_approximants(sys, 0).top() == ExactPoly{1L});
    try {
        build_approximants(sys, 2);
        FAIL("expected symbolic-unsupported");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::symbolic_unsupported);
        CHECK(std::string(e.what()).find("step 0") != std::string::npos);
    }
    try {
        build_approximants(from_taylor(std::vector<GaussianRational>{1L, 1L}), 2);
        FAIL("expected order error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::order);
    }
}

TEST_CASE("properness audit")
{
    auto codomains = [](std::size_t i) -> std::optional<DiskDomain> {
        return DiskDomain(1L, std::exp(1.0 / std::pow(2.0, static_cast<double>(i + 1))) - 1.0);
    };
    const auto sys = exp_system(2).with_codomains(codomains);
    const auto report = properness_audit(sys, 3);
    REQUIRE(report.entries.size() == 3);
    CHECK(report.all_satisfied());
    CHECK(properness_audit(sys, 0).entries.empty());
    CHECK(properness_audit(sys, 0).all_satisfied());

    const auto shrunk = exp_system(2).with_codomains([codomains](std::size_t i) -> std::optional<DiskDomain> {
        if (i == 0) {
            return DiskDomain(1L, 0.1);
        }
        return codomains(i);
    });
    const auto bad = properness_audit(shrunk, 2);
    CHECK(bad.entries[0].verdict == Verdict::violated);
    CHECK(bad.entries[0].max_distance == doctest::Approx(0.5));
    CHECK(bad.entries[1].verdict == Verdict::satisfied);

    const auto unbounded = exp_system(2).with_codomains([](std::size_t) { return std::optional<DiskDomain>{}; });
    CHECK(properness_audit(unbounded, 2).entries[0].verdict == Verdict::not_checkable);
    CHECK_THROWS_AS(properness_audit(exp_system(2), 2), Error);
}

TEST_CASE("codomains must contain the next coefficient")
{
    const auto sys = exp_system(2).with_codomains([](std::size_t) { return std::optional<DiskDomain>(DiskDomain(5L, 1.0)); });
    try {
        build_approximants(sys, 1);
        FAIL("expected configuration error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::configuration);
    }
}

TEST_CASE("affine map algebra")
{
    const AffineMap phi = AffineMap::affine(q(1, 2), 3L);
    const AffineMap phi3 = phi.iterate(3);
    CHECK(phi3(GaussianRational(8L)) == phi(phi(phi(GaussianRational(8L)))));
    CHECK(phi.after(AffineMap::linear(2L))(GaussianRational(1L)) == GaussianRational(4L));
    CHECK(phi.fixes(6L));
    CHECK_FALSE(phi.fixes(0L));
    const AffineMap inexact = AffineMap::numeric_shift(1L, Complex(0.25, 0.0));
    CHECK_THROWS_AS(inexact(GaussianRational(1L)), Error);
    CHECK(inexact.iterate(4)(Complex(0.0)) == Complex(1.0));
}
