#ifndef APPROXSYS_SYSTEM_HPP
#define APPROXSYS_SYSTEM_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "approxsys/poly.hpp"

namespace approxsys {

/// Closed disk B(center, radius); radius may be +inf for the whole plane.
struct DiskDomain {
    GaussianRational center;
    double radius = std::numeric_limits<double>::infinity();

    DiskDomain() = default;
    DiskDomain(GaussianRational c, double r);

    bool bounded() const noexcept { return radius < std::numeric_limits<double>::infinity(); }
    bool contains(Complex z, double tolerance = 0.0) const;
};

/// phi(x) = scale * x + shift.
///
/// The shift may be known only numerically (e.g. alpha^{-1} log alpha); such a
/// map still composes with steps that do not depend on x.
struct AffineMap {
    GaussianRational scale{1L};
    GaussianRational shift{0L};
    std::optional<Complex> inexact_shift;

    static AffineMap identity() { return {}; }
    static AffineMap linear(GaussianRational scale) { return {std::move(scale), 0L, std::nullopt}; }
    static AffineMap affine(GaussianRational scale, GaussianRational shift) { return {std::move(scale), std::move(shift), std::nullopt}; }
    static AffineMap numeric_shift(GaussianRational scale, Complex shift) { return {std::move(scale), 0L, shift}; }

    bool exact() const noexcept { return !inexact_shift.has_value(); }
    Complex numeric_shift_value() const { return inexact_shift ? *inexact_shift : shift.to_complex(); }

    /// Throws when the shift is inexact.
    GaussianRational operator()(const GaussianRational& x) const;
    Complex operator()(Complex x) const { return scale.to_complex() * x + numeric_shift_value(); }

    /// The i-fold composition phi o ... o phi.
    AffineMap iterate(unsigned i) const;
    /// this o inner.
    AffineMap after(const AffineMap& inner) const;
    bool fixes(const GaussianRational& x) const;
};

using Evaluator = std::function<Complex(Complex y, Complex x)>;

/// A step whose x-dependence is a power series; `expand(T)` returns it
/// truncated at x^T. `value`/`d1` evaluate the untruncated f and D_1 f.
struct SeriesStep {
    std::function<ExactBiPoly(std::size_t)> expand;
    Evaluator value;
    Evaluator d1;
};

struct CallableStep {
    Evaluator value;
    Evaluator d1;  // may be empty
};

/// One f_i of an approximation system.
class Step {
  public:
    enum class Kind { polynomial, series, callable };

    /// Throws ErrorKind::constant_step when f does not depend on y.
    static Step polynomial(ExactBiPoly f);
    static Step series(SeriesStep s);
    static Step callable(Evaluator f, Evaluator d1 = {});

    Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
    bool symbolic() const noexcept { return kind() != Kind::callable; }

    const ExactBiPoly& poly() const;
    const SeriesStep& series_step() const;
    const CallableStep& callable_step() const;

    /// Exact form, truncated at x^truncation for series steps.
    ExactBiPoly expand(std::size_t truncation) const;
    /// Complex evaluator; series steps evaluate their truncated expansion.
    Evaluator numeric(std::size_t series_truncation) const;
    /// Closed-form evaluator of f (series/callable use their own, polynomials Horner).
    Evaluator closed_form() const;
    Evaluator closed_form_d1() const;

    /// factor * f(y, x).
    Step scaled(const GaussianRational& factor) const;
    /// f(y, phi(x)).
    Step with_x(const AffineMap& phi) const;
    /// f(scale * y + shift, x).
    Step with_y(const GaussianRational& scale, const GaussianRational& shift) const;

  private:
    explicit Step(std::variant<ExactBiPoly, SeriesStep, CallableStep> data) : data_(std::move(data)) {}

    std::variant<ExactBiPoly, SeriesStep, CallableStep> data_;
};

/// Data of a system generated from g'(x) = f(g(phi(x)), x), g(x0) = a.
struct FdeOrigin {
    Step f;
    AffineMap phi;
    GaussianRational a;
};

/// The pair ({a_i}, {f_i}) with basepoint, domain and optional codomains.
///
/// Both sequences are generated by index, so infinite-order systems stay
/// finitely representable. Instances are immutable.
class ApproxSystem {
  public:
    using CoefficientFn = std::function<GaussianRational(std::size_t)>;
    using StepFn = std::function<Step(std::size_t)>;
    using CodomainFn = std::function<std::optional<DiskDomain>(std::size_t)>;

    ApproxSystem(GaussianRational x0, CoefficientFn coefficients, StepFn steps, double radius,
                 std::optional<std::size_t> order = std::nullopt);

    const GaussianRational& x0() const noexcept { return x0_; }
    DiskDomain domain() const { return {x0_, radius_}; }
    double radius() const noexcept { return radius_; }
    std::optional<std::size_t> order() const noexcept { return order_; }

    /// a_i; i <= order.
    GaussianRational coefficient(std::size_t i) const;
    /// f_i; i < order.
    Step step(std::size_t i) const;

    bool has_codomains() const noexcept { return static_cast<bool>(codomains_); }
    /// V_i; nullopt when unknown or unbounded.
    std::optional<DiskDomain> codomain(std::size_t i) const;
    ApproxSystem with_codomains(CodomainFn codomains) const;

    const std::optional<FdeOrigin>& fde() const noexcept { return fde_; }
    ApproxSystem with_fde(FdeOrigin origin) const;

    const CoefficientFn& coefficient_fn() const noexcept { return coefficients_; }
    const StepFn& step_fn() const noexcept { return steps_; }
    const CodomainFn& codomain_fn() const noexcept { return codomains_; }

  private:
    GaussianRational x0_;
    CoefficientFn coefficients_;
    StepFn steps_;
    double radius_;
    std::optional<std::size_t> order_;
    CodomainFn codomains_;
    std::optional<FdeOrigin> fde_;
};

/// The triangle g_i^[n], 0 <= i <= n.
struct ApproximantTable {
    std::size_t n = 0;
    GaussianRational x0;
    std::vector<ExactPoly> rows;
    /// Set when series steps were expanded; coefficients above it are not meaningful.
    std::optional<std::size_t> truncation;

    const ExactPoly& top() const { return rows.front(); }
    const ExactPoly& row(std::size_t i) const { return rows.at(i); }
};

struct BuildOptions {
    /// Truncation degree for series steps; defaults to 2n + 6.
    std::optional<std::size_t> truncation;
};

std::size_t default_truncation(std::size_t n);

/// Builds g_n^[n] = a_n and g_i^[n] = a_i + int_{x0}^x f_i(g_{i+1}^[n](t), t) dt.
ApproximantTable build_approximants(const ApproxSystem& sys, std::size_t n, const BuildOptions& options = {});

/// f_i(y, x) = y with a_i = derivs[i]: the Taylor polynomial of order derivs.size() - 1.
ApproxSystem from_taylor(std::vector<GaussianRational> derivs, GaussianRational x0 = 0L,
                         double radius = std::numeric_limits<double>::infinity());
/// Unbounded variant generating the derivatives on demand.
ApproxSystem from_taylor(ApproxSystem::CoefficientFn derivs, GaussianRational x0 = 0L,
                         double radius = std::numeric_limits<double>::infinity());

/// Picard iteration for g' = f(g, x), g(x0) = a: f_i = f, a_i = a.
ApproxSystem from_ode(const Step& f, GaussianRational a, GaussianRational x0, double radius);

struct FdeOptions {
    /// Explicit a_i for maps without a fixpoint at x0.
    ApproxSystem::CoefficientFn coefficients;
    /// g itself; a_i = g(phi^i(x0)) when no explicit coefficients are given.
    std::function<Complex(Complex)> reference;
};

/// g'(x) = f(g(phi(x)), x): f_i(y, x) = (phi^i)'(x) f(y, phi^i(x)).
ApproxSystem from_fde(const Step& f, const AffineMap& phi, GaussianRational a, GaussianRational x0, double radius,
                      const FdeOptions& options = {});

/// S^n(a) with (S h)(x) = a + int_{x0}^x f(h(phi(t)), t) dt.
ExactPoly s_operator_iterate(const ApproxSystem& sys, std::size_t n, const BuildOptions& options = {});

/// New system in coordinates x' with phi(x') = x; requires phi(new_x0) = sys.x0().
ApproxSystem coordinate_transform(const ApproxSystem& sys, const AffineMap& phi, const GaussianRational& new_x0);

/// System for a * g_i + b: f'_i(y, x) = a f_i((y - b) / a, x), a'_i = a a_i + b.
ApproxSystem linear_transform(const ApproxSystem& sys, const GaussianRational& a, const GaussianRational& b);

enum class Verdict { satisfied, violated, margin, not_checkable };

struct AuditEntry {
    std::size_t index = 0;
    double max_distance = 0.0;  // max |g_{i+1}^[n](x) - c_i| on the boundary of U
    double radius = 0.0;        // rho_i
    Verdict verdict = Verdict::not_checkable;
};

struct AuditReport {
    std::size_t n = 0;
    std::vector<AuditEntry> entries;

    bool all_satisfied() const;
};

/// Checks g_{i+1}^[n](U) inside V_i by sampling the boundary circle of U.
AuditReport properness_audit(const ApproxSystem& sys, std::size_t n, std::size_t boundary_samples = 256,
                             const BuildOptions& options = {});

std::string_view to_string(Verdict verdict) noexcept;

}  // namespace approxsys

#endif  // APPROXSYS_SYSTEM_HPP
