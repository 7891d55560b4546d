#include "approxsys/system.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "approxsys/error.hpp"

namespace approxsys {

namespace {

Step identity_step() { return Step::polynomial(ExactBiPoly::monomial(1L, 1, 0)); }

std::string index_text(std::size_t i) { return std::to_string(i); }

// Series steps are expansions in powers of x, so truncation is only
// meaningful around the origin.
void require_origin_for_series(const GaussianRational& x0)
{
    if (!x0.is_zero()) {
        throw Error(ErrorKind::inapplicable, "series steps require the basepoint x0 = 0");
    }
}

}  // namespace

DiskDomain::DiskDomain(GaussianRational c, double r) : center(std::move(c)), radius(r)
{
    if (!(radius > 0.0)) {
        throw Error(ErrorKind::domain, "disk radius must be positive");
    }
}

bool DiskDomain::contains(Complex z, double tolerance) const
{
    return std::abs(z - center.to_complex()) <= radius + tolerance;
}

GaussianRational AffineMap::operator()(const GaussianRational& x) const
{
    if (!exact()) {
        throw Error(ErrorKind::inapplicable, "affine map with a numerically known shift cannot act on exact values");
    }
    return scale * x + shift;
}

AffineMap AffineMap::iterate(unsigned i) const
{
    // phi^i(x) = s^i x + t (1 + s + ... + s^{i-1})
    AffineMap result;
    GaussianRational geometric = 0L;
    GaussianRational power = 1L;
    for (unsigned k = 0; k < i; ++k) {
        geometric += power;
        power *= scale;
    }
    result.scale = power;
    if (exact()) {
        result.shift = shift * geometric;
    } else {
        result.inexact_shift = *inexact_shift * geometric.to_complex();
    }
    return result;
}

AffineMap AffineMap::after(const AffineMap& inner) const
{
    AffineMap result;
    result.scale = scale * inner.scale;
    if (exact() && inner.exact()) {
        result.shift = scale * inner.shift + shift;
    } else {
        result.inexact_shift = scale.to_complex() * inner.numeric_shift_value() + numeric_shift_value();
    }
    return result;
}

bool AffineMap::fixes(const GaussianRational& x) const
{
    if (exact()) {
        return (*this)(x) == x;
    }
    const Complex z = x.to_complex();
    return (*this)(z) == z;
}

Step Step::polynomial(ExactBiPoly f)
{
    if (f.degree_y() < 1) {
        throw Error(ErrorKind::constant_step, "step must depend on y (f(., x) non-constant)");
    }
    return Step(std::move(f));
}

Step Step::series(SeriesStep s) { return Step(std::move(s)); }

Step Step::callable(Evaluator f, Evaluator d1) { return Step(CallableStep{std::move(f), std::move(d1)}); }

const ExactBiPoly& Step::poly() const
{
    if (const auto* p = std::get_if<ExactBiPoly>(&data_)) {
        return *p;
    }
    throw Error(ErrorKind::inapplicable, "step is not polynomial");
}

const SeriesStep& Step::series_step() const
{
    if (const auto* s = std::get_if<SeriesStep>(&data_)) {
        return *s;
    }
    throw Error(ErrorKind::inapplicable, "step is not a series step");
}

const CallableStep& Step::callable_step() const
{
    if (const auto* c = std::get_if<CallableStep>(&data_)) {
        return *c;
    }
    throw Error(ErrorKind::inapplicable, "step is not callable");
}

ExactBiPoly Step::expand(std::size_t truncation) const
{
    switch (kind()) {
        case Kind::polynomial: return poly();
        case Kind::series: return series_step().expand(truncation);
        case Kind::callable: break;
    }
    throw Error(ErrorKind::symbolic_unsupported, "callable step has no symbolic form");
}

Evaluator Step::numeric(std::size_t series_truncation) const
{
    if (kind() == Kind::callable) {
        return callable_step().value;
    }
    auto f = convert<Complex>(expand(series_truncation));
    return [f = std::move(f)](Complex y, Complex x) { return f(y, x); };
}

Evaluator Step::closed_form() const
{
    switch (kind()) {
        case Kind::polynomial: {
            auto f = convert<Complex>(poly());
            return [f = std::move(f)](Complex y, Complex x) { return f(y, x); };
        }
        case Kind::series: return series_step().value;
        case Kind::callable: return callable_step().value;
    }
    return {};
}

Evaluator Step::closed_form_d1() const
{
    switch (kind()) {
        case Kind::polynomial: {
            auto d = convert<Complex>(partial_derivative(poly(), Variable::first));
            return [d = std::move(d)](Complex y, Complex x) { return d(y, x); };
        }
        case Kind::series: return series_step().d1;
        case Kind::callable: return callable_step().d1;
    }
    return {};
}

Step Step::scaled(const GaussianRational& factor) const
{
    if (factor.is_zero()) {
        throw Error(ErrorKind::constant_step, "scaling a step by zero makes it constant in y");
    }
    const Complex c = factor.to_complex();
    switch (kind()) {
        case Kind::polynomial: return Step::polynomial(poly() * factor);
        case Kind::series: {
            const SeriesStep& s = series_step();
            SeriesStep out;
            out.expand = [expand = s.expand, factor](std::size_t t) { return expand(t) * factor; };
            out.value = [value = s.value, c](Complex y, Complex x) { return c * value(y, x); };
            if (s.d1) {
                out.d1 = [d1 = s.d1, c](Complex y, Complex x) { return c * d1(y, x); };
            }
            return Step::series(std::move(out));
        }
        case Kind::callable: {
            const CallableStep& s = callable_step();
            Evaluator d1;
            if (s.d1) {
                d1 = [d1 = s.d1, c](Complex y, Complex x) { return c * d1(y, x); };
            }
            return Step::callable([value = s.value, c](Complex y, Complex x) { return c * value(y, x); }, d1);
        }
    }
    return *this;
}

Step Step::with_x(const AffineMap& phi) const
{
    switch (kind()) {
        case Kind::polynomial: {
            if (poly().degree_x() <= 0) {
                return *this;
            }
            if (!phi.exact()) {
                throw Error(ErrorKind::inapplicable,
                            "x-dependent polynomial step cannot be composed with a numerically known map");
            }
            return Step::polynomial(compose_x_affine(poly(), phi.scale, phi.shift));
        }
        case Kind::series: {
            if (!phi.exact() || !phi.shift.is_zero()) {
                throw Error(ErrorKind::inapplicable, "series steps only compose with linear maps x -> a x");
            }
            const SeriesStep& s = series_step();
            SeriesStep out;
            out.expand = [expand = s.expand, scale = phi.scale](std::size_t t) {
                return compose_x_affine(expand(t), scale, GaussianRational(0L));
            };
            out.value = [value = s.value, phi](Complex y, Complex x) { return value(y, phi(x)); };
            if (s.d1) {
                out.d1 = [d1 = s.d1, phi](Complex y, Complex x) { return d1(y, phi(x)); };
            }
            return Step::series(std::move(out));
        }
        case Kind::callable: {
            const CallableStep& s = callable_step();
            Evaluator d1;
            if (s.d1) {
                d1 = [d1 = s.d1, phi](Complex y, Complex x) { return d1(y, phi(x)); };
            }
            return Step::callable([value = s.value, phi](Complex y, Complex x) { return value(y, phi(x)); }, d1);
        }
    }
    return *this;
}

Step Step::with_y(const GaussianRational& scale, const GaussianRational& shift) const
{
    const Complex s = scale.to_complex();
    const Complex t = shift.to_complex();
    switch (kind()) {
        case Kind::polynomial: return Step::polynomial(compose_y_affine(poly(), scale, shift));
        case Kind::series: {
            const SeriesStep& in = series_step();
            SeriesStep out;
            out.expand = [expand = in.expand, scale, shift](std::size_t trunc) {
                return compose_y_affine(expand(trunc), scale, shift);
            };
            out.value = [value = in.value, s, t](Complex y, Complex x) { return value(s * y + t, x); };
            if (in.d1) {
                out.d1 = [d1 = in.d1, s, t](Complex y, Complex x) { return s * d1(s * y + t, x); };
            }
            return Step::series(std::move(out));
        }
        case Kind::callable: {
            const CallableStep& in = callable_step();
            Evaluator d1;
            if (in.d1) {
                d1 = [d1 = in.d1, s, t](Complex y, Complex x) { return s * d1(s * y + t, x); };
            }
            return Step::callable([value = in.value, s, t](Complex y, Complex x) { return value(s * y + t, x); },
                                  d1);
        }
    }
    return *this;
}

ApproxSystem::ApproxSystem(GaussianRational x0, CoefficientFn coefficients, StepFn steps, double radius,
                           std::optional<std::size_t> order)
    : x0_(std::move(x0)), coefficients_(std::move(coefficients)), steps_(std::move(steps)), radius_(radius),
      order_(order)
{
    if (!(radius_ > 0.0)) {
        throw Error(ErrorKind::domain, "domain radius must be positive");
    }
    if (!coefficients_ || !steps_) {
        throw Error(ErrorKind::configuration, "approximation system needs coefficient and step generators");
    }
}

GaussianRational ApproxSystem::coefficient(std::size_t i) const
{
    if (order_ && i > *order_) {
        throw Error(ErrorKind::order, "coefficient index " + index_text(i) + " exceeds system order");
    }
    return coefficients_(i);
}

Step ApproxSystem::step(std::size_t i) const
{
    if (order_ && i >= *order_) {
        throw Error(ErrorKind::order, "step index " + index_text(i) + " exceeds system order");
    }
    return steps_(i);
}

std::optional<DiskDomain> ApproxSystem::codomain(std::size_t i) const
{
    if (!codomains_) {
        return std::nullopt;
    }
    return codomains_(i);
}

ApproxSystem ApproxSystem::with_codomains(CodomainFn codomains) const
{
    ApproxSystem copy = *this;
    copy.codomains_ = std::move(codomains);
    return copy;
}

ApproxSystem ApproxSystem::with_fde(FdeOrigin origin) const
{
    ApproxSystem copy = *this;
    copy.fde_ = std::move(origin);
    return copy;
}

std::size_t default_truncation(std::size_t n) { return 2 * n + 6; }

ApproximantTable build_approximants(const ApproxSystem& sys, std::size_t n, const BuildOptions& options)
{
    if (sys.order() && n > *sys.order()) {
        throw Error(ErrorKind::order,
                    "order " + index_text(n) + " exceeds system order " + index_text(*sys.order()));
    }

    std::vector<Step> steps;
    steps.reserve(n);
    bool any_series = false;
    for (std::size_t i = 0; i < n; ++i) {
        steps.push_back(sys.step(i));
        if (steps.back().kind() == Step::Kind::callable) {
            throw Error(ErrorKind::symbolic_unsupported,
                        "step " + index_text(i) + " is callable; only the numeric engine can march it");
        }
        any_series = any_series || steps.back().kind() == Step::Kind::series;
    }

    std::optional<std::size_t> truncation;
    if (any_series) {
        require_origin_for_series(sys.x0());
        truncation = options.truncation.value_or(default_truncation(n));
    }

    if (sys.has_codomains()) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = sys.codomain(i);
            if (v && !v->contains(sys.coefficient(i + 1).to_complex())) {
                throw Error(ErrorKind::configuration,
                            "a_" + index_text(i + 1) + " lies outside codomain V_" + index_text(i));
            }
        }
    }

    ApproximantTable table;
    table.n = n;
    table.x0 = sys.x0();
    table.truncation = truncation;
    table.rows.resize(n + 1);
    table.rows[n] = ExactPoly::constant(sys.coefficient(n));
    for (std::size_t i = n; i-- > 0;) {
        const ExactBiPoly f = steps[i].expand(truncation.value_or(0));
        ExactPoly integrand = substitute_y(f, table.rows[i + 1], truncation);
        ExactPoly row = ExactPoly::constant(sys.coefficient(i)) + integrate_from(integrand, sys.x0());
        table.rows[i] = truncation ? truncate(row, *truncation) : std::move(row);
    }
    return table;
}

ApproxSystem from_taylor(std::vector<GaussianRational> derivs, GaussianRational x0, double radius)
{
    if (derivs.empty()) {
        throw Error(ErrorKind::parameter, "Taylor system needs at least a_0");
    }
    const std::size_t order = derivs.size() - 1;
    auto shared = std::make_shared<const std::vector<GaussianRational>>(std::move(derivs));
    return ApproxSystem(
        std::move(x0), [shared](std::size_t i) { return (*shared)[i]; }, [](std::size_t) { return identity_step(); },
        radius, order);
}

ApproxSystem from_taylor(ApproxSystem::CoefficientFn derivs, GaussianRational x0, double radius)
{
    return ApproxSystem(std::move(x0), std::move(derivs), [](std::size_t) { return identity_step(); }, radius);
}

ApproxSystem from_ode(const Step& f, GaussianRational a, GaussianRational x0, double radius)
{
    ApproxSystem sys(
        x0, [a](std::size_t) { return a; }, [f](std::size_t) { return f; }, radius);
    return sys;
}

ApproxSystem from_fde(const Step& f, const AffineMap& phi, GaussianRational a, GaussianRational x0, double radius,
                      const FdeOptions& options)
{
    if (std::isfinite(radius)) {
        const Complex z0 = x0.to_complex();
        const double reach = std::abs(phi.scale.to_complex()) * radius + std::abs(phi(z0) - z0);
        if (reach > radius * (1.0 + 1e-12)) {
            throw Error(ErrorKind::endomorphism, "phi does not map the domain disk into itself");
        }
    }

    ApproxSystem::CoefficientFn coefficients;
    if (phi.fixes(x0)) {
        coefficients = [a](std::size_t) { return a; };
    } else if (options.coefficients) {
        coefficients = options.coefficients;
    } else if (options.reference) {
        coefficients = [a, phi, x0, reference = options.reference](std::size_t i) {
            if (i == 0) {
                return a;
            }
            return GaussianRational::from_complex(reference(phi.iterate(static_cast<unsigned>(i))(x0.to_complex())));
        };
    } else {
        throw Error(ErrorKind::configuration,
                    "phi does not fix x0: supply the coefficients a_i or a reference evaluator");
    }

    auto steps = [f, phi](std::size_t i) {
        const AffineMap iterated = phi.iterate(static_cast<unsigned>(i));
        return f.with_x(iterated).scaled(iterated.scale);
    };
    ApproxSystem sys(std::move(x0), std::move(coefficients), std::move(steps), radius);
    return sys.with_fde({f, phi, std::move(a)});
}

ExactPoly s_operator_iterate(const ApproxSystem& sys, std::size_t n, const BuildOptions& options)
{
    if (!sys.fde()) {
        throw Error(ErrorKind::configuration, "S-operator needs a system generated from a functional equation");
    }
    const FdeOrigin& origin = *sys.fde();
    if (!origin.phi.fixes(sys.x0())) {
        throw Error(ErrorKind::no_fixpoint, "phi(x0) != x0: approximants cannot be obtained by iterating S");
    }
    if (origin.f.kind() == Step::Kind::callable) {
        throw Error(ErrorKind::symbolic_unsupported, "S-operator needs a symbolic f");
    }
    std::optional<std::size_t> truncation;
    if (origin.f.kind() == Step::Kind::series) {
        require_origin_for_series(sys.x0());
        truncation = options.truncation.value_or(default_truncation(n));
    }
    const ExactBiPoly f = origin.f.expand(truncation.value_or(0));
    const ExactPoly start = ExactPoly::constant(origin.a);

    ExactPoly h = start;
    for (std::size_t k = 0; k < n; ++k) {
        const ExactPoly inner = compose_affine(h, origin.phi.scale, origin.phi.shift);
        ExactPoly next = start + integrate_from(substitute_y(f, inner, truncation), sys.x0());
        h = truncation ? truncate(next, *truncation) : std::move(next);
    }
    return h;
}

ApproxSystem coordinate_transform(const ApproxSystem& sys, const AffineMap& phi, const GaussianRational& new_x0)
{
    if (phi.scale.is_zero()) {
        throw Error(ErrorKind::non_invertible, "coordinate map x -> a x + b needs a != 0");
    }
    if (!phi.exact() || phi(new_x0) != sys.x0()) {
        throw Error(ErrorKind::parameter, "coordinate map must send the new basepoint to the old one");
    }
    const GaussianRational scale = phi.scale;
    auto steps = [inner = sys.step_fn(), phi, scale](std::size_t i) { return inner(i).with_x(phi).scaled(scale); };
    const double radius = sys.radius() / std::abs(scale.to_complex());
    ApproxSystem out(new_x0, sys.coefficient_fn(), std::move(steps), radius, sys.order());
    if (sys.has_codomains()) {
        out = out.with_codomains(sys.codomain_fn());
    }
    if (const auto& origin = sys.fde()) {
        // phi o psi = psi o phi keeps the functional-equation form.
        const AffineMap& psi = origin->phi;
        if (psi.exact() && phi.after(psi).shift == psi.after(phi).shift) {
            out = out.with_fde({origin->f.with_x(phi).scaled(scale), psi, origin->a});
        }
    }
    return out;
}

ApproxSystem linear_transform(const ApproxSystem& sys, const GaussianRational& a, const GaussianRational& b)
{
    if (a.is_zero()) {
        throw Error(ErrorKind::degenerate_scale, "linear transform y -> a y + b needs a != 0");
    }
    const GaussianRational inv = GaussianRational(1L) / a;
    const GaussianRational offset = -(b * inv);
    auto steps = [inner = sys.step_fn(), a, inv, offset](std::size_t i) {
        return inner(i).with_y(inv, offset).scaled(a);
    };
    auto coefficients = [inner = sys.coefficient_fn(), a, b](std::size_t i) { return a * inner(i) + b; };
    ApproxSystem out(sys.x0(), std::move(coefficients), std::move(steps), sys.radius(), sys.order());
    if (sys.has_codomains()) {
        const double scale = a.abs_value();
        out = out.with_codomains([inner = sys.codomain_fn(), a, b, scale](std::size_t i) -> std::optional<DiskDomain> {
            auto v = inner(i);
            if (!v) {
                return std::nullopt;
            }
            return DiskDomain(a * v->center + b, v->radius * scale);
        });
    }
    if (const auto& origin = sys.fde()) {
        out = out.with_fde({origin->f.with_y(inv, offset).scaled(a), origin->phi, a * origin->a + b});
    }
    return out;
}

bool AuditReport::all_satisfied() const
{
    for (const auto& e : entries) {
        if (e.verdict != Verdict::satisfied) {
            return false;
        }
    }
    return true;
}

AuditReport properness_audit(const ApproxSystem& sys, std::size_t n, std::size_t boundary_samples,
                             const BuildOptions& options)
{
    if (!sys.has_codomains()) {
        throw Error(ErrorKind::configuration, "properness audit needs codomains V_i");
    }
    if (boundary_samples == 0) {
        throw Error(ErrorKind::parameter, "boundary sample count must be positive");
    }
    AuditReport report;
    report.n = n;
    if (n == 0) {
        return report;
    }
    const ApproximantTable table = build_approximants(sys, n, options);
    const Complex x0 = sys.x0().to_complex();
    const double radius = sys.radius();

    for (std::size_t i = 0; i < n; ++i) {
        AuditEntry entry;
        entry.index = i;
        const auto v = sys.codomain(i);
        if (!v || !v->bounded() || !std::isfinite(radius)) {
            entry.verdict = Verdict::not_checkable;
            entry.radius = v ? v->radius : std::numeric_limits<double>::infinity();
            report.entries.push_back(entry);
            continue;
        }
        entry.radius = v->radius;
        const FloatPoly g = convert<Complex>(table.row(i + 1));
        const Complex c = v->center.to_complex();
        for (std::size_t k = 0; k < boundary_samples; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(boundary_samples);
            const Complex x = x0 + std::polar(radius, theta);
            entry.max_distance = std::max(entry.max_distance, std::abs(g(x) - c));
        }
        const double gap = entry.max_distance - entry.radius;
        if (std::abs(gap) <= 1e-9 * std::max(1.0, entry.radius)) {
            entry.verdict = Verdict::margin;
        } else {
            entry.verdict = gap < 0 ? Verdict::satisfied : Verdict::violated;
        }
        report.entries.push_back(entry);
    }
    return report;
}

std::string_view to_string(Verdict verdict) noexcept
{
    switch (verdict) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::violated: return "violated";
        case Verdict::margin: return "margin";
        case Verdict::not_checkable: return "not-checkable";
    }
    return "unknown";
}

}  // namespace approxsys
