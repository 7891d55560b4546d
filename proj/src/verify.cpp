#include "approxsys/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "approxsys/analysis.hpp"
#include "approxsys/catalog.hpp"
#include "approxsys/chebyshev.hpp"
#include "approxsys/error.hpp"
#include "approxsys/io.hpp"
#include "approxsys/numeric.hpp"

namespace approxsys {

namespace {

using nlohmann::json;

class Suite {
  public:
    explicit Suite(VerifyReport& report) : report_(report) {}

    void scope(std::string name) { scope_ = std::move(name); }

    /// Runs one check; an escaping error fails it with the message as detail.
    void check(const std::string& name, const std::function<bool(json&)>& body)
    {
        CheckResult result{scope_, name, false, json::object()};
        try {
            result.passed = body(result.detail);
        } catch (const Error& e) {
            result.detail["error"] = std::string(to_string(e.kind())) + ": " + e.what();
        } catch (const std::exception& e) {
            result.detail["error"] = e.what();
        }
        report_.checks.push_back(std::move(result));
    }

  private:
    VerifyReport& report_;
    std::string scope_;
};

CatalogEntry entry(const std::string& name, unsigned p = 2, std::optional<double> radius = std::nullopt)
{
    CatalogParams params;
    params.p = p;
    params.radius = radius;
    return catalog_get(name, params);
}

std::string label(const std::string& name, unsigned p)
{
    return name + " p=" + std::to_string(p);
}

bool same_poly(const ExactPoly& got, const ExactPoly& want, json& detail)
{
    if (got == want) {
        return true;
    }
    detail["got"] = poly_to_json(got);
    detail["want"] = poly_to_json(want);
    return false;
}

ExactPoly parse_poly(const std::vector<std::string>& coeffs)
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

const std::vector<std::pair<std::string, unsigned>>& symbolic_entries()
{
    static const std::vector<std::pair<std::string, unsigned>> entries{
        {"exp", 2}, {"exp", 3}, {"sinh", 2}, {"sinh", 4}, {"sin", 2}, {"cosh", 2},
        {"cosh", 3}, {"cos", 2}, {"log", 2}, {"log", 3}, {"taylor", 2}, {"dde_exp", 2},
    };
    return entries;
}

void prefix_suite(Suite& s)
{
    s.scope("prefix");
    const std::vector<std::vector<std::string>> exp_tables{
        {"1"},
        {"1", "1"},
        {"1", "1", "1/2", "1/12"},
        {"1", "1", "1/2", "1/6", "7/192", "1/192", "1/2304", "1/64512"},
    };
    const auto exp2 = entry("exp");
    for (std::size_t n = 0; n < exp_tables.size(); ++n) {
        s.check("table exp p=2 n=" + std::to_string(n), [&](json& d) {
            return same_poly(build_approximants(exp2.system, n).top(), parse_poly(exp_tables[n]), d);
        });
    }
    s.check("table sinh p=2 n=3", [](json& d) {
        return same_poly(build_approximants(entry("sinh").system, 3).top(),
                         parse_poly({"0", "1", "0", "1/6", "0", "1/120", "0", "1/8064"}), d);
    });
    s.check("table log p=2 n=3", [](json& d) {
        return same_poly(build_approximants(entry("log", 2, 0.5).system, 3).top(),
                         parse_poly({"0", "1", "1/2", "1/3", "9/64", "3/64", "3/256", "9/7168"}), d);
    });
    s.check("dde alpha=1/2 n<=6", [](json& d) {
        const auto dde = entry("dde_exp");
        for (std::size_t n = 0; n <= 6; ++n) {
            std::vector<GaussianRational> c;
            GaussianRational term = 1L;
            for (std::size_t k = 0; k <= n; ++k) {
                c.push_back(term);
                term = term * GaussianRational::fraction(1, 2 * static_cast<long>(k + 1));
            }
            if (!same_poly(build_approximants(dde.system, n).top(), ExactPoly(c), d)) {
                d["n"] = n;
                return false;
            }
        }
        return true;
    });
    for (const auto& [name, p] : symbolic_entries()) {
        s.check("prefix " + label(name, p) + " n<=4", [&, name = name, p = p](json& d) {
            const auto e = entry(name, p);
            const bool doubled = name == "sinh" || name == "sin";
            for (std::size_t n = 0; n <= 4; ++n) {
                const std::size_t upto = doubled ? 2 * n : n;
                const auto result =
                    taylor_prefix_check(build_approximants(e.system, n).top(), e.taylor_coefficients(upto), upto);
                if (!result.matches()) {
                    d = {{"n", n},
                         {"degree", result.mismatch->degree},
                         {"got", result.mismatch->got.to_string()},
                         {"want", result.mismatch->want.to_string()}};
                    return false;
                }
            }
            d["through"] = doubled ? "2n" : "n";
            return true;
        });
        s.check("parity " + label(name, p) + " n<=4", [&, name = name, p = p](json& d) {
            const auto e = entry(name, p);
            if (!e.parity) {
                d["skipped"] = "no parity";
                return true;
            }
            for (std::size_t n = 0; n <= 4; ++n) {
                if (!parity_check(build_approximants(e.system, n), *e.parity)) {
                    d["n"] = n;
                    return false;
                }
            }
            return true;
        });
    }
    for (const auto& [p, max_n] : std::vector<std::pair<unsigned, std::size_t>>{{2, 5}, {3, 4}}) {
        s.check("degree law exp p=" + std::to_string(p), [p = p, max_n = max_n](json& d) {
            const auto e = entry("exp", p);
            std::size_t want = 0;
            for (std::size_t n = 0; n <= max_n; ++n) {
                const auto deg = static_cast<std::size_t>(build_approximants(e.system, n).top().degree());
                if (deg != want) {
                    d = {{"n", n}, {"degree", deg}, {"want", want}};
                    return false;
                }
                want = p * want + 1;
            }
            return true;
        });
    }
}

void shifts_suite(Suite& s)
{
    s.scope("shifts");
    const std::vector<std::pair<std::string, ApproxSystem>> picard{
        {"picard y' = y", from_ode(Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)), 1L, 0L, 1.0)},
        {"picard y' = y^2 + y + x/2",
         from_ode(Step::polynomial(ExactBiPoly::monomial(1L, 2, 0) + ExactBiPoly::monomial(1L, 1, 0) +
                                   ExactBiPoly::monomial(GaussianRational::fraction(1, 2), 0, 1)),
                  GaussianRational::fraction(1, 3), 0L, 1.0)},
    };
    for (const auto& [name, sys] : picard) {
        s.check(name + " shift identity n<=4", [&sys = sys](json& d) {
            for (std::size_t n = 0; n <= 4; ++n) {
                const auto table = build_approximants(sys, n);
                for (std::size_t i = 0; i <= n; ++i) {
                    if (!same_poly(table.row(i), build_approximants(sys, n - i).top(), d)) {
                        d["n"] = n;
                        d["i"] = i;
                        return false;
                    }
                }
            }
            return true;
        });
    }
    for (const auto& [name, p] : std::vector<std::pair<std::string, unsigned>>{{"exp", 2}, {"exp", 3}, {"sinh", 2}, {"sinh", 4}}) {
        const auto sys = entry(name, p).system;
        s.check("fde shift identity " + label(name, p) + " n<=4", [sys](json& d) {
            const AffineMap& phi = sys.fde()->phi;
            for (std::size_t n = 0; n <= 4; ++n) {
                const auto table = build_approximants(sys, n);
                for (std::size_t i = 0; i <= n; ++i) {
                    const AffineMap phi_i = phi.iterate(static_cast<unsigned>(i));
                    const ExactPoly shifted =
                        compose_affine(build_approximants(sys, n - i).top(), phi_i.scale, phi_i.shift);
                    if (!same_poly(table.row(i), shifted, d)) {
                        d["n"] = n;
                        d["i"] = i;
                        return false;
                    }
                }
            }
            return true;
        });
        s.check("s-operator " + label(name, p) + " n<=4", [sys](json& d) {
            for (std::size_t n = 0; n <= 4; ++n) {
                if (!same_poly(s_operator_iterate(sys, n), build_approximants(sys, n).top(), d)) {
                    d["n"] = n;
                    return false;
                }
            }
            return true;
        });
    }
    s.check("sin = -i sinh(ix) n<=4", [](json& d) {
        const auto sin = entry("sin").system;
        const auto sinh = entry("sinh").system;
        const auto i = GaussianRational::i();
        for (std::size_t n = 0; n <= 4; ++n) {
            const ExactPoly rhs = compose_affine(build_approximants(sinh, n).top(), i, GaussianRational(0L)) * (-i);
            if (!same_poly(build_approximants(sin, n).top(), rhs, d)) {
                d["n"] = n;
                return false;
            }
        }
        return true;
    });
    s.check("sin and sinh bound coefficients agree n<=4", [](json& d) {
        const auto sin = entry("sin", 2, 1.0);
        const auto sinh = entry("sinh", 2, 1.0);
        for (std::size_t n = 0; n <= 4; ++n) {
            const double a = error_bound_starlike(sin.system, n).coefficient;
            const double b = error_bound_starlike(sinh.system, n).coefficient;
            if (std::abs(a - b) > 1e-12 * std::max(1.0, b) ||
                sin.closed_form_bound(n) != sinh.closed_form_bound(n)) {
                d = {{"n", n}, {"sin", a}, {"sinh", b}};
                return false;
            }
        }
        return true;
    });
}

void positivity_suite(Suite& s)
{
    s.scope("positivity");
    for (const auto* name : {"exp", "sinh", "cosh", "log", "taylor", "dde_exp"}) {
        s.check(std::string(name) + " is positive", [name](json& d) {
            const auto e = entry(name);
            const auto r = is_positive(e.system, 6);
            d = to_json(r);
            if (!r.positive) {
                return false;
            }
            for (std::size_t n = 0; n <= 5; ++n) {
                const auto table = build_approximants(e.system, n);
                for (const auto& c : table.top().coeffs()) {
                    if (!c.is_real() || sgn(c.re()) < 0) {
                        d["negative_coefficient"] = {{"n", n}, {"value", c.to_string()}};
                        return false;
                    }
                }
            }
            return true;
        });
    }
    s.check("sin is not positive (expected)", [](json& d) {
        const auto r = is_positive(entry("sin").system, 4);
        d = to_json(r);
        return !r.positive && r.counterexample && r.counterexample->index == 0 && r.counterexample->k == 2 &&
               r.counterexample->value == GaussianRational(-4L);
    });
    s.check("majorant of sin dominates sin", [](json& d) {
        const auto sin = entry("sin").system;
        const auto r = dominates(majorant_system(sin), sin, 5);
        if (r.counterexample) {
            d = {{"index", r.counterexample->index}, {"k", r.counterexample->k}, {"l", r.counterexample->l}};
        }
        return r.dominates;
    });
    s.check("exp does not dominate sin (expected)", [](json& d) {
        const auto r = dominates(entry("exp").system, entry("sin").system, 3);
        if (r.counterexample) {
            d = {{"index", r.counterexample->index},
                 {"k", r.counterexample->k},
                 {"lhs", r.counterexample->lhs},
                 {"rhs", r.counterexample->rhs}};
        }
        return !r.dominates;
    });
}

void bounds_suite(Suite& s)
{
    s.scope("bounds");
    s.check("exp p=2 R=1 n=2 at x=1", [](json& d) {
        const double err = std::abs(std::numbers::e - 31.0 / 12.0);
        const double bound = entry("exp", 2, 1.0).closed_form_bound(2);
        d = {{"error", err}, {"bound", bound}};
        return std::abs(err - 0.13495) <= 1e-4 && err <= bound;
    });
    const std::vector<std::pair<std::string, double>> dominated{
        {"exp", 1.0}, {"sinh", 1.0}, {"sin", 1.0}, {"cosh", 1.0}, {"cos", 1.0}, {"log", 0.5}, {"taylor", 1.0}};
    for (const auto& [name, radius] : dominated) {
        s.check("closed form dominates grid error " + name + " n<=5", [name = name, radius = radius](json& d) {
            const auto e = entry(name, 2, radius);
            const auto grid = segment(0.95 * radius, 64);
            for (std::size_t n = 0; n <= 5; ++n) {
                const double err = reference_error_grid(e, n, grid);
                const double bound = e.closed_form_bound(n);
                if (!(err <= bound)) {
                    d = {{"n", n}, {"error", err}, {"bound", bound}};
                    return false;
                }
            }
            return true;
        });
        s.check("starlike bounds dominate grid error " + name + " n<=5", [name = name, radius = radius](json& d) {
            const auto e = entry(name, 2, radius);
            const auto grid = segment(0.95 * radius, 64);
            for (std::size_t n = 0; n <= 5; ++n) {
                const double err = reference_error_grid(e, n, grid);
                const double a = error_bound_starlike(e.system, n, e.row_deviation(n)).value();
                const double b = error_bound_starlike(e.system, n).value();
                if (!(err <= a && err <= b)) {
                    d = {{"n", n}, {"error", err}, {"A", a}, {"B", b}};
                    return false;
                }
            }
            return true;
        });
    }
    for (const auto* name : {"exp", "sinh", "cosh"}) {
        s.check(std::string("fde bound dominates grid error ") + name + " n<=5", [name](json& d) {
            const auto e = entry(name, 2, 1.0);
            const auto grid = segment(0.95, 64);
            for (std::size_t n = 0; n <= 5; ++n) {
                const double err = reference_error_grid(e, n, grid);
                const auto r = catalog_fde_bound(e, n);
                if (!(err <= r.value() && err <= *r.per_index)) {
                    d = {{"n", n}, {"error", err}, {"bound", to_json(r)}};
                    return false;
                }
            }
            return true;
        });
    }
    s.check("fde bound inapplicable to sin", [](json& d) {
        try {
            catalog_fde_bound(entry("sin"), 2);
        } catch (const Error& e) {
            d["message"] = e.what();
            return e.kind() == ErrorKind::inapplicable;
        }
        return false;
    });
    s.check("closed forms e/192, e/24, 2/3, 3/2", [](json& d) {
        const double e192 = entry("exp", 2, 1.0).closed_form_bound(3);
        const double e24 = entry("sinh", 2, 1.0).closed_form_bound(2);
        const double l2 = log_error_bound(2, 0.5, 2);
        const double l3 = log_error_bound(3, 0.5, 1);
        d = {{"exp", e192}, {"sinh", e24}, {"log p=2", l2}, {"log p=3", l3}};
        const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; };
        return close(e192, std::numbers::e / 192) && close(e24, std::numbers::e / 24) && close(l2, 2.0 / 3.0) &&
               close(l3, 1.5);
    });
    s.check("closed forms decay below 1e-6 by n=12", [](json& d) {
        for (const auto& [name, radius] : std::vector<std::pair<std::string, double>>{
                 {"exp", 1.0}, {"sinh", 1.0}, {"cosh", 1.0}, {"log", 0.4}}) {
            const auto e = entry(name, 2, radius);
            for (std::size_t n = 0; n < 12; ++n) {
                if (!(e.closed_form_bound(n + 1) < e.closed_form_bound(n))) {
                    d = {{"entry", name}, {"n", n}};
                    return false;
                }
            }
            if (!(e.closed_form_bound(12) < 1e-6)) {
                d = {{"entry", name}, {"bound", e.closed_form_bound(12)}};
                return false;
            }
        }
        return true;
    });
    s.check("properness criterion exp p=2 and log p=2 R=0.9", [](json& d) {
        const auto exp2 = entry("exp", 2, 1.0);
        const auto log2 = entry("log", 2, 0.9);
        const bool a = pas_criterion_check(exp2.system, 3, {0.25, 0.5, 0.99}, exp2.row_reference).satisfied();
        const bool b = pas_criterion_check(log2.system, 4, {0.25, 0.5, 0.89}, log2.row_reference).satisfied();
        d = {{"exp", a}, {"log", b}};
        return a && b;
    });
}

void numeric_suite(Suite& s)
{
    s.scope("numeric");
    s.check("exp p=2 n=2 first-order convergence", [](json& d) {
        const auto sys = entry("exp").system;
        const Complex exact = convert<Complex>(build_approximants(sys, 2).top())(Complex(1.0));
        std::vector<double> errors;
        for (std::size_t segments : {500, 1000, 2000, 4000}) {
            errors.push_back(std::abs(numeric_approximate(sys, straight_partition(0.0, 1.0, segments), 2).terminal() - exact));
        }
        d["errors"] = errors;
        bool ok = errors[1] <= 5e-3;
        for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
            const double ratio = errors[k] / errors[k + 1];
            d["ratios"].push_back(ratio);
            ok = ok && ratio >= 1.7 && ratio <= 2.3;
        }
        return ok;
    });
    s.check("cos p=2 n<=3 against sin powers", [](json& d) {
        const std::vector<std::vector<double>> sin_powers{
            {1.0},
            {1.0, -8.0},
            {1.0, -32.0, 160.0, -512.0 / 3.0},
            {1.0, -128.0, 2688.0, -21504.0, 245248.0 / 3.0, -2326528.0 / 15.0, 425984.0 / 3.0, -1048576.0 / 21.0},
        };
        const auto sys = entry("cos").system;
        double worst = 0.0;
        double worst_identity = 0.0;
        for (std::size_t n = 0; n <= 3; ++n) {
            for (double x : {0.4, 0.8}) {
                const double s_val = std::sin(x / std::pow(2.0, static_cast<double>(n) + 1));
                double want = 0.0;
                for (std::size_t k = 0; k < sin_powers[n].size(); ++k) {
                    want += sin_powers[n][k] * std::pow(s_val, 2.0 * static_cast<double>(k));
                }
                const auto t = numeric_approximate(sys, straight_partition(0.0, x, 20000), n);
                worst = std::max(worst, std::abs(t.terminal() - want));
                if (n > 0) {
                    const auto tn = convert<Complex>(chebyshev_t(std::size_t{1} << (n + 1)));
                    worst_identity = std::max(worst_identity, std::abs(std::cos(x) - tn(Complex(s_val))));
                }
            }
        }
        d = {{"max_deviation", worst}, {"max_identity_deviation", worst_identity}};
        return worst < 1e-4 && worst_identity < 1e-10;
    });
    s.check("degenerate path keeps the start values", [](json& d) {
        const auto sys = entry("exp").system;
        const auto t = numeric_approximate(sys, straight_partition(0.0, 0.0, 3), 3);
        for (Eigen::Index i = 0; i < t.values.rows(); ++i) {
            if ((t.values.row(i).array() != t.values(i, 0)).any()) {
                d["row"] = i;
                return false;
            }
        }
        return true;
    });
    s.check("loop orders agree bit for bit", [](json&) {
        const auto sys = entry("cosh").system;
        const auto path = polyline_partition({0.0, 0.5, Complex(0.5, 0.5)}, 200);
        NumericOptions a;
        a.order = LoopOrder::index_outer;
        NumericOptions b;
        b.order = LoopOrder::step_outer;
        return numeric_approximate(sys, path, 4, a).values == numeric_approximate(sys, path, 4, b).values;
    });
}

}  // namespace

VerifyScope parse_scope(std::string_view text)
{
    for (auto scope : {VerifyScope::all, VerifyScope::prefix, VerifyScope::bounds, VerifyScope::shifts,
                       VerifyScope::positivity, VerifyScope::numeric}) {
        if (text == to_string(scope)) {
            return scope;
        }
    }
    throw Error(ErrorKind::usage, "unknown verify scope '" + std::string(text) + "'");
}

std::string_view to_string(VerifyScope scope) noexcept
{
    switch (scope) {
        case VerifyScope::all: return "all";
        case VerifyScope::prefix: return "prefix";
        case VerifyScope::bounds: return "bounds";
        case VerifyScope::shifts: return "shifts";
        case VerifyScope::positivity: return "positivity";
        case VerifyScope::numeric: return "numeric";
    }
    return "unknown";
}

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const
{
    json list = json::array();
    std::size_t failures = 0;
    for (const auto& c : checks) {
        failures += c.passed ? 0 : 1;
        list.push_back({{"scope", c.scope}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return {{"passed", failures == 0}, {"total", checks.size()}, {"failures", failures}, {"checks", std::move(list)}};
}

VerifyReport run_verify(VerifyScope scope)
{
    VerifyReport report;
    Suite suite(report);
    const auto wanted = [scope](VerifyScope s) { return scope == VerifyScope::all || scope == s; };
    if (wanted(VerifyScope::prefix)) {
        prefix_suite(suite);
    }
    if (wanted(VerifyScope::shifts)) {
        shifts_suite(suite);
    }
    if (wanted(VerifyScope::positivity)) {
        positivity_suite(suite);
    }
    if (wanted(VerifyScope::bounds)) {
        bounds_suite(suite);
    }
    if (wanted(VerifyScope::numeric)) {
        numeric_suite(suite);
    }
    return report;
}

}  // namespace approxsys
