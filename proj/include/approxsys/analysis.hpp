#ifndef APPROXSYS_ANALYSIS_HPP
#define APPROXSYS_ANALYSIS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "approxsys/system.hpp"

namespace approxsys {

// ---------------------------------------------------------------------------
// Sup norms on closed disks

enum class SupMethod {
    coefficient_majorant,  // sum |c_jk| rho^j R^k about the disk centers
    boundary_grid,         // samples of the distinguished boundary; a lower estimate
    positive_exact,        // value at the far corner when all shifted coefficients are >= 0
    supplied,              // provided by the caller
};

struct SupNormEstimate {
    double value = 0.0;
    SupMethod method = SupMethod::coefficient_majorant;
    bool rigorous = true;
};

std::string_view to_string(SupMethod method) noexcept;

SupNormEstimate sup_norm_disk(const ExactPoly& f, const DiskDomain& disk, SupMethod method,
                              std::size_t grid_points = 256);
/// Sup of |f(y, x)| over V x U.
SupNormEstimate sup_norm_disk(const ExactBiPoly& f, const DiskDomain& v, const DiskDomain& u, SupMethod method,
                              std::size_t grid_points = 64);

/// Best available estimate of ||f|| (or ||D_1 f||) on V x U: positive-exact when
/// the recentered coefficients are nonnegative, otherwise a majorant for
/// polynomial steps and a boundary grid for the others.
SupNormEstimate step_sup_norm(const Step& f, const DiskDomain& v, const DiskDomain& u, bool first_derivative);

// ---------------------------------------------------------------------------
// Error bounds

struct BoundFactor {
    std::string label;
    SupNormEstimate estimate;
};

/// |g(x) - g^[n](x)| <= coefficient * |x - x0|^exponent.
struct ErrorBoundReport {
    std::size_t n = 0;
    std::string formula;
    double coefficient = 0.0;
    unsigned exponent = 0;
    double radius = 0.0;
    std::vector<BoundFactor> factors;
    bool infinite = false;
    bool rigorous = true;

    std::optional<double> bound_a;
    std::optional<double> bound_b;
    /// Per-index form with the norms on Y_i (functional equations only).
    std::optional<double> per_index;
    /// Closed form stated for a catalog entry.
    std::optional<double> closed_form;

    double evaluate(double distance) const;
    /// The headline value at distance = radius.
    double value() const;
};

/// Starlike-domain bound on the disk U = B(x0, R). Variant A uses the supplied
/// reference ||g_n - g_n(x0)||_U, variant B the norm ||f_n||_{V_n x U}.
ErrorBoundReport error_bound_starlike(const ApproxSystem& sys, std::size_t n,
                                      std::optional<double> reference_deviation = std::nullopt);

/// ||f|| (||D_1 f||)^n R^{n+1} / (n+1)! for a step shared by every index.
ErrorBoundReport uniform_bound_identical_step(const Step& f, const DiskDomain& u, const DiskDomain& v, std::size_t n);

/// Bound for systems generated by g' = f(g(phi(x)), x) with a positive
/// system, a >= 0 and phi(x0) = x0. Norms are taken on
/// B(a, g(x0 + R) - a) x B(x0, R), and per index on
/// B(a, g(phi^i(x0 + R)) - a) x phi^i(U).
ErrorBoundReport fde_error_bound(const ApproxSystem& sys, std::size_t n, double radius,
                                 const std::function<Complex(Complex)>& reference);

/// (p/(p-1))^n (1-R)^{-(n+p-1)} R^{n+1} / (n+1)!.
double log_error_bound(unsigned p, double radius, std::size_t n);

// ---------------------------------------------------------------------------
// Positivity and domination

struct PositivityCounterexample {
    std::size_t index = 0;
    bool on_coefficient = false;  // a_i itself rather than a derivative of f_i
    unsigned k = 0;               // order in y
    unsigned l = 0;               // order in x
    GaussianRational value;       // the derivative value k! l! c
};

struct PositivityResult {
    bool positive = true;
    bool up_to_truncation = false;
    std::optional<PositivityCounterexample> counterexample;

    explicit operator bool() const noexcept { return positive; }
};

/// Checks a_i >= 0 for i <= index_depth and that every derivative
/// (D_1^k D_2^l f_i)(a_{i+1}, x0) is >= 0 for i < index_depth. Polynomial steps
/// are checked completely; series steps up to x^derivative_depth.
PositivityResult is_positive(const ApproxSystem& sys, std::size_t index_depth,
                             std::optional<std::size_t> derivative_depth = std::nullopt);

struct DominationCounterexample {
    std::size_t index = 0;
    bool on_coefficient = false;
    unsigned k = 0;
    unsigned l = 0;
    double lhs = 0.0;  // |derivative of sys|
    double rhs = 0.0;  // derivative of the dominating system
};

struct DominationResult {
    bool dominates = true;
    std::optional<DominationCounterexample> counterexample;

    explicit operator bool() const noexcept { return dominates; }
};

/// Whether `tilde` dominates `sys`; throws a precondition error when `tilde` is not positive.
DominationResult dominates(const ApproxSystem& tilde, const ApproxSystem& sys, std::size_t index_depth,
                           std::optional<std::size_t> derivative_depth = std::nullopt);

/// a~_i = |Re a_i| + |Im a_i| and f~_i with coefficients |Re c| + |Im c| about
/// (a~_{i+1}, x0); dominates `sys` by construction. Polynomial steps only.
ApproxSystem majorant_system(const ApproxSystem& sys);

// ---------------------------------------------------------------------------
// Coefficient checks

struct PrefixMismatch {
    std::size_t degree = 0;
    GaussianRational got;
    GaussianRational want;
};

struct PrefixResult {
    std::optional<PrefixMismatch> mismatch;

    bool matches() const noexcept { return !mismatch; }
    explicit operator bool() const noexcept { return matches(); }
};

/// Compares power-series coefficients of `approximant` with `reference` through x^upto.
PrefixResult taylor_prefix_check(const ExactPoly& approximant, const std::vector<GaussianRational>& reference,
                                 std::size_t upto);

struct FloatPrefixResult {
    bool matches = true;
    std::size_t degree = 0;
    Complex got;
    Complex want;
};

FloatPrefixResult taylor_prefix_check(const ExactPoly& approximant, const std::vector<Complex>& reference,
                                      std::size_t upto, double tolerance);

enum class Parity { odd, even };

/// True iff every row contains only odd (even) powers of x; requires x0 = 0.
bool parity_check(const ApproximantTable& table, Parity parity);

// ---------------------------------------------------------------------------
// Sufficient criterion for properness of a positive system

using RowReference = std::function<Complex(std::size_t i, Complex x)>;

struct PasSample {
    std::size_t index = 0;
    double r = 0.0;
    double reach = 0.0;        // |a_{i+1} - c_i| + g_{i+1}(x0 + r) - a_{i+1}
    double radius = 0.0;       // rho_i
    double approximant = 0.0;  // g_i^[n](x0 + r)
    double reference = 0.0;    // g_i(x0 + r)
    bool inclusion = true;
    bool below_reference = true;
};

struct PasReport {
    std::size_t n = 0;
    std::vector<PasSample> samples;

    bool satisfied() const;
};

/// For each sampled r: B(a_{i+1}, g_{i+1}(x0 + r) - a_{i+1}) inside V_i, and
/// g_i^[n](x0 + r) <= g_i(x0 + r) for i <= n.
PasReport pas_criterion_check(const ApproxSystem& sys, std::size_t n, const std::vector<double>& r_samples,
                              const RowReference& row_reference);

/// 2 sum_{j > n} c_j R^j for majorant Taylor coefficients c_j (truncated at the list end).
double majorant_tail_bound(const std::vector<double>& majorant_coefficients, std::size_t n, double radius);

}  // namespace approxsys

#endif  // APPROXSYS_ANALYSIS_HPP
