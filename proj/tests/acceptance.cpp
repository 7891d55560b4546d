// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "approxsys/analysis.hpp"
#include "approxsys/catalog.hpp"
#include "approxsys/chebyshev.hpp"
#include "approxsys/cli.hpp"
#include "approxsys/error.hpp"
#include "approxsys/io.hpp"
#include "approxsys/numeric.hpp"

using namespace approxsys;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed = true;
    std::string note;

    void require(bool condition, const std::string& what)
    {
        if (!condition && passed) {
            passed = false;
            note = what;
        }
    }
};

CatalogEntry entry(const std::string& name, unsigned p = 2, std::optional<double> radius = std::nullopt)
{
    CatalogParams params;
    params.p = p;
    params.radius = radius;
    return catalog_get(name, params);
}

ExactPoly poly(const std::vector<std::string>& coeffs)
{
    std::vector<GaussianRational> c;
    for (const auto& s : coeffs) {
        c.push_back(GaussianRational::parse(s));
    }
    return ExactPoly(std::move(c));
}

std::vector<Complex> segment(double end, std::size_t points)
{
    std::vector<Complex> grid;
    for (std::size_t k = 0; k < points; ++k) {
        grid.emplace_back(end * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    return grid;
}

int cli(const std::vector<std::string>& args, std::string& out)
{
    std::ostringstream o;
    std::ostringstream e;
    const int code = run_cli(args, o, e);
    out = o.str() + e.str();
    return code;
}

Outcome exact_exp_tables()
{
    Outcome r;
    const std::vector<ExactPoly> want{
        poly({"1"}),
        poly({"1", "1"}),
        poly({"1", "1", "1/2", "1/12"}),
        poly({"1", "1", "1/2", "1/6", "7/192", "1/192", "1/2304", "1/64512"}),
    };
    for (std::size_t n = 0; n < want.size(); ++n) {
        std::string out;
        const int code = cli({"approximate", "exp", "--p", "2", "--n", std::to_string(n)}, out);
        r.require(code == 0, "cli failed: " + out);
        if (code == 0) {
            const auto got = poly_from_json(nlohmann::json::parse(out)["coefficients"]);
            r.require(got == want[n], "n=" + std::to_string(n) + " differs");
        }
    }
    return r;
}

Outcome exact_sinh_table()
{
    Outcome r;
    r.require(build_approximants(entry("sinh").system, 3).top() ==
                  poly({"0", "1", "0", "1/6", "0", "1/120", "0", "1/8064"}),
              "sinh n=3 differs");
    return r;
}

Outcome exact_log_table()
{
    Outcome r;
    r.require(build_approximants(entry("log", 2, 0.5).system, 3).top() ==
                  poly({"0", "1", "1/2", "1/3", "9/64", "3/64", "3/256", "9/7168"}),
              "log n=3 differs");
    return r;
}

Outcome dde_closed_form()
{
    Outcome r;
    const auto sys = entry("dde_exp").system;
    for (std::size_t n = 0; n <= 6; ++n) {
        std::vector<GaussianRational> c;
        Rational term = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            c.emplace_back(term);
            term /= Rational(2 * static_cast<long>(k + 1));
        }
        r.require(build_approximants(sys, n).top() == ExactPoly(c), "n=" + std::to_string(n) + " differs");
    }
    return r;
}

Outcome taylor_prefix()
{
    Outcome r;
    const std::vector<std::pair<std::string, unsigned>> entries{
        {"exp", 2}, {"exp", 3}, {"sinh", 2}, {"sinh", 4}, {"sin", 2}, {"cosh", 2},
        {"cosh", 3}, {"cos", 2}, {"log", 2}, {"log", 3}, {"taylor", 2}, {"dde_exp", 2}};
    for (const auto& [name, p] : entries) {
        const auto e = entry(name, p);
        for (std::size_t n = 0; n <= 4; ++n) {
            const std::size_t upto = name == "sinh" ? 2 * n : n;
            const auto g = build_approximants(e.system, n).top();
            const auto want = e.taylor_coefficients(upto);
            for (std::size_t k = 0; k <= upto; ++k) {
                r.require(g[k] == want[k], name + " p=" + std::to_string(p) + " n=" + std::to_string(n) +
                                               " degree " + std::to_string(k));
            }
        }
    }
    return r;
}

Outcome degree_law()
{
    Outcome r;
    for (const auto& [p, max_n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 5}, {3, 4}}) {
        const auto sys = entry("exp", p).system;
        for (std::size_t n = 0; n <= max_n; ++n) {
            const double want = (std::pow(p, static_cast<double>(n)) - 1) / (p - 1);
            r.require(build_approximants(sys, n).top().degree() == static_cast<int>(want),
                      "p=" + std::to_string(p) + " n=" + std::to_string(n));
        }
    }
    return r;
}

Outcome bound_dominance()
{
    Outcome r;
    const double err = std::abs(std::numbers::e - 31.0 / 12.0);
    r.require(std::abs(err - 0.13495) <= 1e-4, "|e - 31/12| = " + format_float(err));
    r.require(err <= std::numbers::e / 12, "e - 31/12 exceeds e/12");
    const auto exp2 = entry("exp", 2, 1.0);
    for (std::size_t n = 0; n <= 5; ++n) {
        const double closed = std::numbers::e / (std::pow(2.0, n * (n - 1.0) / 2) * std::tgamma(n + 2.0));
        r.require(std::abs(exp2.closed_form_bound(n) - closed) <= 1e-15 * closed, "exp closed form differs");
    }
    for (const auto& [name, radius] :
         std::vector<std::pair<std::string, double>>{{"exp", 1.0}, {"sinh", 1.0}, {"log", 0.5}, {"log", 0.95}}) {
        const auto e = entry(name, 2, radius);
        const auto grid = segment(0.95 * (name == "log" ? radius : 1.0), 64);
        for (std::size_t n = 0; n <= 5; ++n) {
            const double observed = reference_error_grid(e, n, grid);
            r.require(observed <= e.closed_form_bound(n),
                      name + " R=" + format_float(radius) + " n=" + std::to_string(n) + ": " +
                          format_float(observed) + " > " + format_float(e.closed_form_bound(n)));
        }
    }
    return r;
}

Outcome shift_identities()
{
    Outcome r;
    const auto picard = from_ode(Step::polynomial(ExactBiPoly::monomial(1L, 2, 0) + ExactBiPoly::monomial(1L, 0, 1)),
                                 GaussianRational::fraction(1, 2), 0L, 1.0);
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto table = build_approximants(picard, n);
        for (std::size_t i = 0; i <= n; ++i) {
            r.require(table.row(i) == build_approximants(picard, n - i).top(), "picard shift");
        }
    }
    for (const auto& [name, p] : std::vector<std::pair<std::string, unsigned>>{{"exp", 2}, {"exp", 3}, {"sinh", 2}}) {
        const auto sys = entry(name, p).system;
        const AffineMap phi = sys.fde()->phi;
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto table = build_approximants(sys, n);
            for (std::size_t i = 0; i <= n; ++i) {
                const AffineMap phi_i = phi.iterate(static_cast<unsigned>(i));
                r.require(table.row(i) == compose_affine(build_approximants(sys, n - i).top(), phi_i.scale, phi_i.shift),
                          name + " fde shift n=" + std::to_string(n));
            }
            r.require(s_operator_iterate(sys, n) == table.top(), name + " s-operator n=" + std::to_string(n));
        }
    }
    return r;
}

Outcome transformation_commutation()
{
    Outcome r;
    const auto sin = entry("sin", 2, 1.0);
    const auto sinh = entry("sinh", 2, 1.0);
    const auto i = GaussianRational::i();
    for (std::size_t n = 0; n <= 4; ++n) {
        const ExactPoly rhs = compose_affine(build_approximants(sinh.system, n).top(), i, GaussianRational(0L)) * (-i);
        r.require(build_approximants(sin.system, n).top() == rhs, "sin n=" + std::to_string(n));
        const double a = error_bound_starlike(sin.system, n).coefficient;
        const double b = error_bound_starlike(sinh.system, n).coefficient;
        r.require(std::abs(a - b) <= 1e-12 * b, "bound coefficients n=" + std::to_string(n));
        r.require(sin.closed_form_bound(n) == sinh.closed_form_bound(n), "closed forms n=" + std::to_string(n));
    }
    return r;
}

Outcome positivity()
{
    Outcome r;
    for (const auto* name : {"exp", "sinh", "cosh", "log"}) {
        const auto e = entry(name);
        r.require(is_positive(e.system, 6).positive, std::string(name) + " not certified");
        for (std::size_t n = 0; n <= 5; ++n) {
            const auto table = build_approximants(e.system, n);
            for (const auto& c : table.top().coeffs()) {
                r.require(c.is_real() && sgn(c.re()) >= 0, std::string(name) + " negative coefficient");
            }
        }
    }
    const auto sin = is_positive(entry("sin").system, 4);
    r.require(!sin.positive && sin.counterexample && sin.counterexample->index == 0 &&
                  sin.counterexample->k == 2 && sin.counterexample->l == 0 &&
                  sin.counterexample->value == GaussianRational(-4L),
              "sin counterexample missing");
    return r;
}

Outcome numeric_convergence()
{
    Outcome r;
    const auto sys = entry("exp").system;
    const Complex exact = convert<Complex>(build_approximants(sys, 2).top())(Complex(1.0));
    r.require(std::abs(exact - 31.0 / 12.0) < 1e-15, "exact g^[2](1)");
    double previous = 0.0;
    std::string ratios;
    for (std::size_t segments : {500, 1000, 2000, 4000}) {
        const double err = std::abs(numeric_approximate(sys, straight_partition(0.0, 1.0, segments), 2).terminal() - exact);
        if (previous > 0) {
            const double ratio = previous / err;
            ratios += format_float(ratio) + " ";
            r.require(ratio >= 1.7 && ratio <= 2.3, "ratio " + format_float(ratio));
        }
        previous = err;
    }
    if (r.passed) {
        r.note = "ratios " + ratios;
    }
    return r;
}

Outcome cos_cross_check()
{
    Outcome r;
    const std::vector<std::vector<double>> sin_powers{
        {1.0},
        {1.0, -8.0},
        {1.0, -32.0, 160.0, -512.0 / 3.0},
        {1.0, -128.0, 2688.0, -21504.0, 245248.0 / 3.0, -2326528.0 / 15.0, 425984.0 / 3.0, -1048576.0 / 21.0},
    };
    const auto sys = entry("cos").system;
    double worst = 0.0;
    for (std::size_t n = 0; n <= 3; ++n) {
        for (double x : {0.4, 0.8}) {
            const double s = std::sin(x / std::pow(2.0, static_cast<double>(n) + 1));
            double want = 0.0;
            for (std::size_t k = 0; k < sin_powers[n].size(); ++k) {
                want += sin_powers[n][k] * std::pow(s, 2.0 * static_cast<double>(k));
            }
            const double got = numeric_approximate(sys, straight_partition(0.0, x, 20000), n).terminal().real();
            worst = std::max(worst, std::abs(got - want));
            r.require(std::abs(got - want) < 1e-4, "n=" + std::to_string(n) + " x=" + format_float(x));
            if (n > 0) {
                const auto t = convert<Complex>(chebyshev_t(std::size_t{1} << (n + 1)));
                r.require(std::abs(std::cos(x) - t(Complex(s))) < 1e-10, "identity n=" + std::to_string(n));
            }
        }
    }
    if (r.passed) {
        r.note = "max deviation " + format_float(worst);
    }
    return r;
}

Outcome verify_all()
{
    Outcome r;
    std::string out;
    const int code = cli({"verify", "all"}, out);
    r.require(code == 0, "exit " + std::to_string(code));
    return r;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* title;
        double seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"exp p=2 tables n=0..3 via approximate", 1.0, exact_exp_tables},
        {"sinh p=2 table n=3", 1.0, exact_sinh_table},
        {"log p=2 table n=3", 1.0, exact_log_table},
        {"dde_exp alpha=1/2 closed form n<=6", 1.0, dde_closed_form},
        {"Taylor prefix for every symbolic entry n<=4", 10.0, taylor_prefix},
        {"degree law for exp p=2 and p=3", 5.0, degree_law},
        {"closed-form bounds dominate grid errors", 5.0, bound_dominance},
        {"Picard, FDE and S-operator shift identities n<=4", 10.0, shift_identities},
        {"sin equals -i sinh(ix) with equal bound coefficients", 5.0, transformation_commutation},
        {"positivity classification", 10.0, positivity},
        {"numeric engine first-order convergence", 2.0, numeric_convergence},
        {"cos numeric values against sin powers", 10.0, cos_cross_check},
        {"verify all exits 0", 60.0, verify_all},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto& c = criteria[k];
        const auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.passed = false;
            outcome.note = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (outcome.passed && elapsed > c.seconds) {
            outcome.passed = false;
            outcome.note = "exceeded " + format_float(c.seconds) + " s";
        }
        failures += outcome.passed ? 0 : 1;
        std::printf("%s %2zu %s (%.3f s)%s%s\n", outcome.passed ? "PASS" : "FAIL", k + 1, c.title, elapsed,
                    outcome.note.empty() ? "" : ": ", outcome.note.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
