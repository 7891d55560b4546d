#include "approxsys/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "approxsys/error.hpp"

namespace approxsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kSeriesNormTruncation = 24;

double radius_power(double r, std::size_t k) { return k == 0 ? 1.0 : std::pow(r, static_cast<double>(k)); }

bool nonnegative_real(const GaussianRational& c) { return c.is_real() && sgn(c.re()) >= 0; }

double factorial_d(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

GaussianRational factorial_gr(unsigned n) { return GaussianRational(factorial(n)); }

bool all_nonnegative(const ExactBiPoly& f)
{
    for (const auto& p : f.in_y()) {
        for (const auto& c : p.coeffs()) {
            if (!nonnegative_real(c)) {
                return false;
            }
        }
    }
    return true;
}

// Sum of c_jk rho^j R^k with nonnegative exact coefficients; rho and R may be infinite.
double corner_value(const ExactBiPoly& shifted, double rho, double radius)
{
    double total = 0.0;
    for (std::size_t j = 0; j < shifted.in_y().size(); ++j) {
        const auto& p = shifted.in_y()[j];
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k].is_zero()) {
                continue;
            }
            total += p[k].abs_value() * radius_power(rho, j) * radius_power(radius, k);
        }
    }
    return total;
}

double torus_grid_max(const Evaluator& f, const DiskDomain& v, const DiskDomain& u, std::size_t points)
{
    if (!v.bounded() || !u.bounded()) {
        return kInf;
    }
    const Complex cy = v.center.to_complex();
    const Complex cx = u.center.to_complex();
    double best = 0.0;
    for (std::size_t a = 0; a < points; ++a) {
        const Complex y = cy + std::polar(v.radius, 2.0 * std::numbers::pi * static_cast<double>(a) / points);
        for (std::size_t b = 0; b < points; ++b) {
            const Complex x = cx + std::polar(u.radius, 2.0 * std::numbers::pi * static_cast<double>(b) / points);
            best = std::max(best, std::abs(f(y, x)));
        }
    }
    return best;
}

ExactBiPoly d1_expansion(const Step& f, std::size_t truncation, bool first_derivative)
{
    ExactBiPoly e = f.expand(truncation);
    return first_derivative ? partial_derivative(e, Variable::first) : e;
}

struct Recentered {
    ExactBiPoly poly;
    bool truncated = false;
};

// f_i shifted so that (a_{i+1}, x0) becomes the origin.
Recentered recentered_step(const Step& f, const GaussianRational& cy, const GaussianRational& x0,
                           std::size_t series_truncation, std::size_t index)
{
    switch (f.kind()) {
        case Step::Kind::polynomial: return {recenter(f.poly(), cy, x0), false};
        case Step::Kind::series:
            if (!x0.is_zero()) {
                throw Error(ErrorKind::inapplicable, "series steps are expanded about x0 = 0");
            }
            return {compose_y_affine(f.expand(series_truncation), GaussianRational(1L), cy), true};
        case Step::Kind::callable: break;
    }
    throw Error(ErrorKind::not_checkable, "step " + std::to_string(index) + " is callable");
}

std::string subscript(const char* name, std::size_t i) { return std::string(name) + "_" + std::to_string(i); }

void finish(ErrorBoundReport& report)
{
    for (const auto& f : report.factors) {
        report.infinite = report.infinite || !std::isfinite(f.estimate.value);
        report.rigorous = report.rigorous && f.estimate.rigorous;
    }
    report.infinite = report.infinite || !std::isfinite(report.coefficient) ||
                      (!std::isfinite(report.radius) && report.exponent > 0);
    if (report.infinite) {
        report.coefficient = kInf;
    }
}

}  // namespace

std::string_view to_string(SupMethod method) noexcept
{
    switch (method) {
        case SupMethod::coefficient_majorant: return "coefficient-majorant";
        case SupMethod::boundary_grid: return "boundary-grid";
        case SupMethod::positive_exact: return "positive-exact";
        case SupMethod::supplied: return "supplied";
    }
    return "unknown";
}

SupNormEstimate sup_norm_disk(const ExactPoly& f, const DiskDomain& disk, SupMethod method, std::size_t grid_points)
{
    return sup_norm_disk(ExactBiPoly::from_x(f), DiskDomain(0L, 1.0), disk, method, grid_points);
}

SupNormEstimate sup_norm_disk(const ExactBiPoly& f, const DiskDomain& v, const DiskDomain& u, SupMethod method,
                              std::size_t grid_points)
{
    const ExactBiPoly shifted = recenter(f, v.center, u.center);
    switch (method) {
        case SupMethod::coefficient_majorant:
            return {corner_value(shifted, v.radius, u.radius), method, true};
        case SupMethod::positive_exact:
            if (!all_nonnegative(shifted)) {
                throw Error(ErrorKind::method_inapplicable,
                            "positive-exact sup norm needs nonnegative coefficients about the disk centers");
            }
            return {corner_value(shifted, v.radius, u.radius), method, true};
        case SupMethod::boundary_grid: {
            const FloatBiPoly g = convert<Complex>(f);
            DiskDomain vv = v;
            if (f.degree_y() <= 0 && !v.bounded()) {
                vv.radius = 1.0;
            }
            return {torus_grid_max([&g](Complex y, Complex x) { return g(y, x); }, vv, u, grid_points), method, false};
        }
        case SupMethod::supplied: break;
    }
    throw Error(ErrorKind::method_inapplicable, "a supplied sup norm cannot be computed");
}

SupNormEstimate step_sup_norm(const Step& f, const DiskDomain& v, const DiskDomain& u, bool first_derivative)
{
    switch (f.kind()) {
        case Step::Kind::polynomial: {
            const ExactBiPoly g = first_derivative ? partial_derivative(f.poly(), Variable::first) : f.poly();
            if (all_nonnegative(recenter(g, v.center, u.center))) {
                return sup_norm_disk(g, v, u, SupMethod::positive_exact);
            }
            return sup_norm_disk(g, v, u, SupMethod::coefficient_majorant);
        }
        case Step::Kind::series: {
            if (!u.center.is_zero()) {
                throw Error(ErrorKind::inapplicable, "series steps are expanded about x0 = 0");
            }
            const ExactBiPoly e = d1_expansion(f, kSeriesNormTruncation, first_derivative);
            const ExactBiPoly shifted = compose_y_affine(e, GaussianRational(1L), v.center);
            Evaluator eval = first_derivative ? f.closed_form_d1() : f.closed_form();
            if (!eval) {
                const FloatBiPoly g = convert<Complex>(e);
                eval = [g](Complex y, Complex x) { return g(y, x); };
            }
            if (all_nonnegative(shifted)) {
                if (!v.bounded() || !u.bounded()) {
                    return {kInf, SupMethod::positive_exact, true};
                }
                const Complex corner_y = v.center.to_complex() + v.radius;
                const double value = std::abs(eval(corner_y, Complex(u.radius)));
                return {value, SupMethod::positive_exact, true};
            }
            return {torus_grid_max(eval, v, u, 64), SupMethod::boundary_grid, false};
        }
        case Step::Kind::callable: {
            const Evaluator eval = first_derivative ? f.closed_form_d1() : f.closed_form();
            if (!eval) {
                throw Error(ErrorKind::method_inapplicable, "callable step has no D_1 evaluator");
            }
            return {torus_grid_max(eval, v, u, 64), SupMethod::boundary_grid, false};
        }
    }
    return {};
}

double ErrorBoundReport::evaluate(double distance) const
{
    if (infinite) {
        return kInf;
    }
    return coefficient * radius_power(distance, exponent);
}

double ErrorBoundReport::value() const { return evaluate(radius); }

ErrorBoundReport error_bound_starlike(const ApproxSystem& sys, std::size_t n, std::optional<double> reference_deviation)
{
    if (!sys.has_codomains()) {
        throw Error(ErrorKind::configuration, "starlike error bound needs codomains V_i");
    }
    const DiskDomain u = sys.domain();
    const auto codomain = [&sys](std::size_t i) {
        const auto v = sys.codomain(i);
        if (!v) {
            throw Error(ErrorKind::configuration, "codomain V_" + std::to_string(i) + " is not given");
        }
        return *v;
    };

    ErrorBoundReport report;
    report.n = n;
    report.radius = sys.radius();
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const SupNormEstimate est = step_sup_norm(sys.step(i), codomain(i), u, true);
        report.factors.push_back({"||D1 " + subscript("f", i) + "||_{" + subscript("V", i) + " x U}", est});
        product *= est.value;
    }

    if (reference_deviation) {
        report.formula = "starlike-A";
        report.exponent = static_cast<unsigned>(n);
        const SupNormEstimate est{*reference_deviation, SupMethod::supplied, true};
        report.factors.push_back({"||" + subscript("g", n) + " - " + subscript("g", n) + "(x0)||_U", est});
        report.coefficient = product * est.value / factorial_d(n);
    } else {
        report.formula = "starlike-B";
        report.exponent = static_cast<unsigned>(n + 1);
        const SupNormEstimate est = step_sup_norm(sys.step(n), codomain(n), u, false);
        report.factors.push_back({"||" + subscript("f", n) + "||_{" + subscript("V", n) + " x U}", est});
        report.coefficient = product * est.value / factorial_d(n + 1);
    }
    finish(report);
    (reference_deviation ? report.bound_a : report.bound_b) = report.value();
    return report;
}

ErrorBoundReport uniform_bound_identical_step(const Step& f, const DiskDomain& u, const DiskDomain& v, std::size_t n)
{
    ErrorBoundReport report;
    report.n = n;
    report.formula = "uniform";
    report.radius = u.radius;
    report.exponent = static_cast<unsigned>(n + 1);
    const SupNormEstimate norm = step_sup_norm(f, v, u, false);
    report.factors.push_back({"||f||_{V x U}", norm});
    double coefficient = norm.value;
    if (n > 0) {
        const SupNormEstimate d1 = step_sup_norm(f, v, u, true);
        report.factors.push_back({"||D1 f||_{V x U}", d1});
        coefficient *= std::pow(d1.value, static_cast<double>(n));
    }
    report.coefficient = coefficient / factorial_d(n + 1);
    finish(report);
    report.bound_b = report.value();
    return report;
}

ErrorBoundReport fde_error_bound(const ApproxSystem& sys, std::size_t n, double radius,
                                 const std::function<Complex(Complex)>& reference)
{
    if (!sys.fde()) {
        throw Error(ErrorKind::inapplicable, "hypothesis failed: system does not come from a functional equation");
    }
    const FdeOrigin& origin = *sys.fde();
    if (!nonnegative_real(origin.a)) {
        throw Error(ErrorKind::inapplicable, "hypothesis failed: a >= 0");
    }
    if (!origin.phi.fixes(sys.x0())) {
        throw Error(ErrorKind::inapplicable, "hypothesis failed: phi(x0) = x0");
    }
    if (!nonnegative_real(origin.phi.scale)) {
        throw Error(ErrorKind::inapplicable, "hypothesis failed: phi has nonnegative derivatives at x0");
    }
    if (const auto positivity = is_positive(sys, n + 1); !positivity) {
        const auto& c = *positivity.counterexample;
        throw Error(ErrorKind::inapplicable, "hypothesis failed: positivity (index " + std::to_string(c.index) +
                                                 ", derivative (" + std::to_string(c.k) + "," +
                                                 std::to_string(c.l) + ") = " + c.value.to_string() + ")");
    }
    if (!reference) {
        throw Error(ErrorKind::configuration, "functional-equation bound needs the reference solution g");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorKind::domain, "bound radius must be positive and finite");
    }

    const Complex x0 = sys.x0().to_complex();
    const double a = to_double(origin.a.re());
    const double alpha = origin.phi.scale.abs_value();
    const auto codomain_at = [&](Complex x) {
        const double reach = std::max(reference(x).real() - a, std::numeric_limits<double>::min());
        return DiskDomain(origin.a, reach);
    };

    ErrorBoundReport report;
    report.n = n;
    report.formula = "fde";
    report.radius = radius;
    report.exponent = static_cast<unsigned>(n + 1);

    const DiskDomain y_disk = codomain_at(x0 + radius);
    const DiskDomain u(sys.x0(), radius);
    const SupNormEstimate norm_f = step_sup_norm(origin.f, y_disk, u, false);
    report.factors.push_back({"||f||_Y", norm_f});
    double coefficient = std::pow(alpha, 0.5 * static_cast<double>(n * (n + 1))) * norm_f.value;
    if (n > 0) {
        const SupNormEstimate norm_d1 = step_sup_norm(origin.f, y_disk, u, true);
        report.factors.push_back({"||D1 f||_Y", norm_d1});
        coefficient *= std::pow(norm_d1.value, static_cast<double>(n));
    }
    report.factors.push_back({"||phi'||_U", {alpha, SupMethod::positive_exact, true}});
    report.coefficient = coefficient / factorial_d(n + 1);
    finish(report);
    report.bound_b = report.value();

    // Per-index norms on Y_i = B(a, g(phi^i(x0 + R)) - a) x phi^i(U).
    double per_index = std::pow(alpha, 0.5 * static_cast<double>(n * (n + 1)));
    bool rigorous = true;
    for (std::size_t i = 0; i <= n; ++i) {
        const AffineMap phi_i = origin.phi.iterate(static_cast<unsigned>(i));
        const DiskDomain yi = codomain_at(phi_i(x0 + radius));
        const DiskDomain ui(sys.x0(), std::pow(alpha, static_cast<double>(i)) * radius);
        const SupNormEstimate est = step_sup_norm(origin.f, yi, ui, i < n);
        rigorous = rigorous && est.rigorous;
        per_index *= est.value;
    }
    report.per_index = per_index * std::pow(radius, static_cast<double>(n + 1)) / factorial_d(n + 1);
    report.rigorous = report.rigorous && rigorous;
    return report;
}

double log_error_bound(unsigned p, double radius, std::size_t n)
{
    if (p < 2) {
        throw Error(ErrorKind::parameter, "log bound needs p >= 2");
    }
    if (!(radius > 0.0) || radius >= 1.0) {
        throw Error(ErrorKind::domain, "log bound needs 0 < R < 1");
    }
    const double pd = p;
    const double nd = static_cast<double>(n);
    return std::pow(pd / (pd - 1.0), nd) * std::pow(1.0 - radius, -(nd + pd - 1.0)) * std::pow(radius, nd + 1.0) /
           factorial_d(n + 1);
}

PositivityResult is_positive(const ApproxSystem& sys, std::size_t index_depth, std::optional<std::size_t> derivative_depth)
{
    PositivityResult result;
    const std::size_t last = sys.order() ? std::min(index_depth, *sys.order()) : index_depth;
    const std::size_t series_truncation = derivative_depth.value_or(default_truncation(index_depth));

    for (std::size_t i = 0; i <= last; ++i) {
        const GaussianRational a = sys.coefficient(i);
        if (!nonnegative_real(a)) {
            result.positive = false;
            result.counterexample = PositivityCounterexample{i, true, 0, 0, a};
            return result;
        }
        if (i == last) {
            break;
        }
        const Recentered shifted =
            recentered_step(sys.step(i), sys.coefficient(i + 1), sys.x0(), series_truncation, i);
        result.up_to_truncation = result.up_to_truncation || shifted.truncated;
        const auto& rows = shifted.poly.in_y();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (derivative_depth && k > *derivative_depth) {
                break;
            }
            for (std::size_t l = 0; l < rows[k].size(); ++l) {
                if (derivative_depth && l > *derivative_depth) {
                    break;
                }
                const GaussianRational& c = rows[k][l];
                if (!nonnegative_real(c)) {
                    result.positive = false;
                    const auto kk = static_cast<unsigned>(k);
                    const auto ll = static_cast<unsigned>(l);
                    result.counterexample =
                        PositivityCounterexample{i, false, kk, ll, c * factorial_gr(kk) * factorial_gr(ll)};
                    return result;
                }
            }
        }
    }
    return result;
}

DominationResult dominates(const ApproxSystem& tilde, const ApproxSystem& sys, std::size_t index_depth,
                           std::optional<std::size_t> derivative_depth)
{
    if (!is_positive(tilde, index_depth, derivative_depth)) {
        throw Error(ErrorKind::precondition, "the dominating system must be positive");
    }
    if (!(tilde.x0() == sys.x0())) {
        throw Error(ErrorKind::precondition, "domination compares systems with a common basepoint");
    }
    DominationResult result;
    const std::size_t series_truncation = derivative_depth.value_or(default_truncation(index_depth));
    std::size_t last = index_depth;
    if (sys.order()) {
        last = std::min(last, *sys.order());
    }
    if (tilde.order()) {
        last = std::min(last, *tilde.order());
    }

    for (std::size_t i = 0; i <= last; ++i) {
        const GaussianRational a = sys.coefficient(i);
        const GaussianRational at = tilde.coefficient(i);
        if (a.norm_squared() > at.re() * at.re()) {
            result.dominates = false;
            result.counterexample = DominationCounterexample{i, true, 0, 0, a.abs_value(), to_double(at.re())};
            return result;
        }
        if (i == last) {
            break;
        }
        const ExactBiPoly f = recentered_step(sys.step(i), sys.coefficient(i + 1), sys.x0(), series_truncation, i).poly;
        const ExactBiPoly ft =
            recentered_step(tilde.step(i), tilde.coefficient(i + 1), tilde.x0(), series_truncation, i).poly;
        const std::size_t ky = std::max(f.in_y().size(), ft.in_y().size());
        for (std::size_t k = 0; k < ky; ++k) {
            if (derivative_depth && k > *derivative_depth) {
                break;
            }
            const std::size_t lx =
                std::max(k < f.in_y().size() ? f.in_y()[k].size() : 0, k < ft.in_y().size() ? ft.in_y()[k].size() : 0);
            for (std::size_t l = 0; l < lx; ++l) {
                if (derivative_depth && l > *derivative_depth) {
                    break;
                }
                const GaussianRational c = f.coeff(k, l);
                const GaussianRational ct = ft.coeff(k, l);
                if (c.norm_squared() > ct.re() * ct.re()) {
                    const double scale = factorial_d(k) * factorial_d(l);
                    result.dominates = false;
                    result.counterexample = DominationCounterexample{i, false, static_cast<unsigned>(k),
                                                                     static_cast<unsigned>(l), scale * c.abs_value(),
                                                                     scale * to_double(ct.re())};
                    return result;
                }
            }
        }
    }
    return result;
}

ApproxSystem majorant_system(const ApproxSystem& sys)
{
    auto coefficients = [inner = sys.coefficient_fn()](std::size_t i) { return GaussianRational(inner(i).l1_norm()); };
    auto steps = [sys](std::size_t i) {
        const Step f = sys.step(i);
        if (f.kind() != Step::Kind::polynomial) {
            throw Error(ErrorKind::inapplicable, "majorant system is built for polynomial steps only");
        }
        const ExactBiPoly shifted = recenter(f.poly(), sys.coefficient(i + 1), sys.x0());
        std::vector<ExactPoly> in_y;
        for (const auto& p : shifted.in_y()) {
            std::vector<GaussianRational> c;
            for (const auto& v : p.coeffs()) {
                c.emplace_back(v.l1_norm());
            }
            in_y.emplace_back(std::move(c));
        }
        const GaussianRational center(sys.coefficient(i + 1).l1_norm());
        return Step::polynomial(recenter(ExactBiPoly(std::move(in_y)), -center, -sys.x0()));
    };
    return ApproxSystem(sys.x0(), std::move(coefficients), std::move(steps), sys.radius(), sys.order());
}

PrefixResult taylor_prefix_check(const ExactPoly& approximant, const std::vector<GaussianRational>& reference,
                                 std::size_t upto)
{
    for (std::size_t j = 0; j <= upto; ++j) {
        const GaussianRational want = j < reference.size() ? reference[j] : GaussianRational{};
        const GaussianRational got = approximant[j];
        if (!(got == want)) {
            return {PrefixMismatch{j, got, want}};
        }
    }
    return {};
}

FloatPrefixResult taylor_prefix_check(const ExactPoly& approximant, const std::vector<Complex>& reference,
                                      std::size_t upto, double tolerance)
{
    for (std::size_t j = 0; j <= upto; ++j) {
        const Complex want = j < reference.size() ? reference[j] : Complex{};
        const Complex got = approximant[j].to_complex();
        if (std::abs(got - want) > tolerance) {
            return {false, j, got, want};
        }
    }
    return {};
}

bool parity_check(const ApproximantTable& table, Parity parity)
{
    if (!table.x0.is_zero()) {
        throw Error(ErrorKind::inapplicable, "parity is defined about x0 = 0");
    }
    const std::size_t wrong = parity == Parity::odd ? 0 : 1;
    for (const auto& row : table.rows) {
        for (std::size_t k = wrong; k < row.size(); k += 2) {
            if (!row[k].is_zero()) {
                return false;
            }
        }
    }
    return true;
}

bool PasReport::satisfied() const
{
    return std::all_of(samples.begin(), samples.end(),
                       [](const PasSample& s) { return s.inclusion && s.below_reference; });
}

PasReport pas_criterion_check(const ApproxSystem& sys, std::size_t n, const std::vector<double>& r_samples,
                              const RowReference& row_reference)
{
    if (!row_reference) {
        throw Error(ErrorKind::configuration, "criterion check needs the reference functions g_i");
    }
    if (!sys.has_codomains()) {
        throw Error(ErrorKind::configuration, "criterion check needs codomains V_i");
    }
    constexpr double tol = 1e-9;
    const ApproximantTable table = build_approximants(sys, n);
    const Complex x0 = sys.x0().to_complex();

    PasReport report;
    report.n = n;
    for (double r : r_samples) {
        const Complex x = x0 + r;
        for (std::size_t i = 0; i <= n; ++i) {
            PasSample s;
            s.index = i;
            s.r = r;
            s.approximant = convert<Complex>(table.row(i))(x).real();
            s.reference = row_reference(i, x).real();
            s.below_reference = s.approximant <= s.reference + tol * std::max(1.0, std::abs(s.reference));
            if (i < n) {
                const auto v = sys.codomain(i);
                if (!v) {
                    throw Error(ErrorKind::configuration, "codomain V_" + std::to_string(i) + " is not given");
                }
                const Complex next = sys.coefficient(i + 1).to_complex();
                s.reach = std::abs(next - v->center.to_complex()) + (row_reference(i + 1, x).real() - next.real());
                s.radius = v->radius;
                s.inclusion = s.reach <= s.radius + tol;
            }
            report.samples.push_back(s);
        }
    }
    return report;
}

double majorant_tail_bound(const std::vector<double>& majorant_coefficients, std::size_t n, double radius)
{
    double tail = 0.0;
    for (std::size_t j = n + 1; j < majorant_coefficients.size(); ++j) {
        tail += majorant_coefficients[j] * radius_power(radius, j);
    }
    return 2.0 * tail;
}

}  // namespace approxsys
