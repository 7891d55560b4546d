#ifndef APPROXSYS_POLY_HPP
#define APPROXSYS_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "approxsys/gaussian_rational.hpp"

namespace approxsys {

/// Dense univariate polynomial; coefficient k multiplies x^k.
///
/// Trailing zeros are stripped on every construction, so the zero polynomial
/// has an empty coefficient vector and `==` is structural.
template <class S>
class UniPoly {
  public:
    using Scalar = S;
    using Traits = ScalarTraits<S>;

    UniPoly() = default;
    explicit UniPoly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    UniPoly(std::initializer_list<S> coeffs) : coeffs_(coeffs) { normalize(); }

    static UniPoly constant(S value) { return UniPoly(std::vector<S>{std::move(value)}); }
    static UniPoly monomial(S value, std::size_t power)
    {
        std::vector<S> c(power + 1, Traits::zero());
        c[power] = std::move(value);
        return UniPoly(std::move(c));
    }
    static UniPoly identity() { return monomial(Traits::one(), 1); }

    const std::vector<S>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    S operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Traits::zero(); }

    /// Horner evaluation.
    template <class T>
    T operator()(const T& x) const
    {
        T acc = T{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + scalar_cast<T>(*it);
        }
        return acc;
    }

    UniPoly& operator+=(const UniPoly& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(rhs.coeffs_.size(), Traits::zero());
        }
        for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
            coeffs_[k] += rhs.coeffs_[k];
        }
        normalize();
        return *this;
    }

    UniPoly& operator-=(const UniPoly& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(rhs.coeffs_.size(), Traits::zero());
        }
        for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
            coeffs_[k] -= rhs.coeffs_[k];
        }
        normalize();
        return *this;
    }

    UniPoly& operator*=(const S& scalar)
    {
        if (Traits::is_zero(scalar)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& c : coeffs_) {
            c *= scalar;
        }
        return *this;
    }

    friend UniPoly operator+(UniPoly lhs, const UniPoly& rhs) { return lhs += rhs; }
    friend UniPoly operator-(UniPoly lhs, const UniPoly& rhs) { return lhs -= rhs; }
    friend UniPoly operator*(UniPoly lhs, const S& scalar) { return lhs *= scalar; }
    friend UniPoly operator*(const S& scalar, UniPoly rhs) { return rhs *= scalar; }
    friend UniPoly operator-(UniPoly p)
    {
        for (auto& c : p.coeffs_) {
            c = -c;
        }
        return p;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) { return multiply(a, b); }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Product; when `truncation` is given, powers above it are dropped.
    friend UniPoly multiply(const UniPoly& a, const UniPoly& b, std::optional<std::size_t> truncation = {})
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::size_t len = a.size() + b.size() - 1;
        if (truncation) {
            len = std::min(len, *truncation + 1);
        }
        std::vector<S> out(len, Traits::zero());
        for (std::size_t i = 0; i < a.size() && i < len; ++i) {
            if (Traits::is_zero(a.coeffs_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return UniPoly(std::move(out));
    }

  private:
    void normalize()
    {
        while (!coeffs_.empty() && Traits::is_zero(coeffs_.back())) {
            coeffs_.pop_back();
        }
    }

    std::vector<S> coeffs_;
};

using ExactPoly = UniPoly<GaussianRational>;
using FloatPoly = UniPoly<Complex>;

template <class S>
UniPoly<S> truncate(const UniPoly<S>& p, std::size_t degree)
{
    if (p.size() <= degree + 1) {
        return p;
    }
    return UniPoly<S>(std::vector<S>(p.coeffs().begin(), p.coeffs().begin() + static_cast<std::ptrdiff_t>(degree + 1)));
}

template <class S>
UniPoly<S> derivative(const UniPoly<S>& p)
{
    if (p.size() <= 1) {
        return {};
    }
    std::vector<S> out;
    out.reserve(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) {
        out.push_back(p.coeffs()[k] * ScalarTraits<S>::from_int(static_cast<long>(k)));
    }
    return UniPoly<S>(std::move(out));
}

/// Antiderivative P with P(x0) = 0.
template <class S>
UniPoly<S> integrate_from(const UniPoly<S>& p, const S& x0)
{
    if (p.is_zero()) {
        return {};
    }
    std::vector<S> out(p.size() + 1, ScalarTraits<S>::zero());
    for (std::size_t k = 0; k < p.size(); ++k) {
        out[k + 1] = p.coeffs()[k] / ScalarTraits<S>::from_int(static_cast<long>(k + 1));
    }
    UniPoly<S> antiderivative(std::move(out));
    const S at_base = antiderivative(x0);
    return antiderivative - UniPoly<S>::constant(at_base);
}

/// p(q(x)).
template <class S>
UniPoly<S> compose(const UniPoly<S>& p, const UniPoly<S>& q, std::optional<std::size_t> truncation = {})
{
    UniPoly<S> acc;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        acc = multiply(acc, q, truncation) + UniPoly<S>::constant(*it);
    }
    return acc;
}

/// p(scale * x + shift).
template <class S>
UniPoly<S> compose_affine(const UniPoly<S>& p, const S& scale, const S& shift)
{
    return compose(p, UniPoly<S>{shift, scale});
}

/// p(x + shift), i.e. the expansion of p around `shift`.
template <class S>
UniPoly<S> taylor_shift(const UniPoly<S>& p, const S& shift)
{
    return compose(p, UniPoly<S>{shift, ScalarTraits<S>::one()});
}

template <class T, class S>
UniPoly<T> convert(const UniPoly<S>& p)
{
    std::vector<T> out;
    out.reserve(p.size());
    for (const auto& c : p.coeffs()) {
        if constexpr (std::is_same_v<T, Complex>) {
            out.push_back(ScalarTraits<S>::to_complex(c));
        } else {
            out.push_back(T(c));
        }
    }
    return UniPoly<T>(std::move(out));
}

/// Bivariate polynomial f(y, x) = sum_j P_j(x) y^j.
///
/// Storage is the sequence of x-polynomials indexed by the power of y; the
/// same layout carries truncated series steps.
template <class S>
class BiPoly {
  public:
    using Scalar = S;
    using Traits = ScalarTraits<S>;
    using Poly = UniPoly<S>;

    BiPoly() = default;
    explicit BiPoly(std::vector<Poly> in_y) : in_y_(std::move(in_y)) { normalize(); }

    static BiPoly constant(S value) { return BiPoly({Poly::constant(std::move(value))}); }
    /// f(y, x) = q(y).
    static BiPoly from_y(const Poly& q)
    {
        std::vector<Poly> in_y;
        in_y.reserve(q.size());
        for (const auto& c : q.coeffs()) {
            in_y.push_back(Poly::constant(c));
        }
        return BiPoly(std::move(in_y));
    }
    /// f(y, x) = q(x).
    static BiPoly from_x(const Poly& q) { return BiPoly({q}); }
    /// c * y^j * x^k.
    static BiPoly monomial(S value, std::size_t j, std::size_t k)
    {
        std::vector<Poly> in_y(j + 1);
        in_y[j] = Poly::monomial(std::move(value), k);
        return BiPoly(std::move(in_y));
    }

    const std::vector<Poly>& in_y() const noexcept { return in_y_; }
    bool is_zero() const noexcept { return in_y_.empty(); }
    int degree_y() const noexcept { return static_cast<int>(in_y_.size()) - 1; }
    int degree_x() const noexcept
    {
        int d = -1;
        for (const auto& p : in_y_) {
            d = std::max(d, p.degree());
        }
        return d;
    }

    /// Coefficient of y^j x^k.
    S coeff(std::size_t j, std::size_t k) const { return j < in_y_.size() ? in_y_[j][k] : Traits::zero(); }
    const Poly& in_y(std::size_t j) const
    {
        static const Poly zero;
        return j < in_y_.size() ? in_y_[j] : zero;
    }

    template <class T>
    T operator()(const T& y, const T& x) const
    {
        T acc = T{};
        for (auto it = in_y_.rbegin(); it != in_y_.rend(); ++it) {
            acc = acc * y + (*it)(x);
        }
        return acc;
    }

    BiPoly& operator+=(const BiPoly& rhs)
    {
        if (rhs.in_y_.size() > in_y_.size()) {
            in_y_.resize(rhs.in_y_.size());
        }
        for (std::size_t j = 0; j < rhs.in_y_.size(); ++j) {
            in_y_[j] += rhs.in_y_[j];
        }
        normalize();
        return *this;
    }

    BiPoly& operator-=(const BiPoly& rhs)
    {
        if (rhs.in_y_.size() > in_y_.size()) {
            in_y_.resize(rhs.in_y_.size());
        }
        for (std::size_t j = 0; j < rhs.in_y_.size(); ++j) {
            in_y_[j] -= rhs.in_y_[j];
        }
        normalize();
        return *this;
    }

    BiPoly& operator*=(const S& scalar)
    {
        for (auto& p : in_y_) {
            p *= scalar;
        }
        normalize();
        return *this;
    }

    friend BiPoly operator+(BiPoly lhs, const BiPoly& rhs) { return lhs += rhs; }
    friend BiPoly operator-(BiPoly lhs, const BiPoly& rhs) { return lhs -= rhs; }
    friend BiPoly operator*(BiPoly lhs, const S& scalar) { return lhs *= scalar; }
    friend BiPoly operator*(const S& scalar, BiPoly rhs) { return rhs *= scalar; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) { return multiply(a, b); }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.in_y_ == b.in_y_; }

    /// Product; `truncation` bounds the retained power of x.
    friend BiPoly multiply(const BiPoly& a, const BiPoly& b, std::optional<std::size_t> truncation = {})
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Poly> out(a.in_y_.size() + b.in_y_.size() - 1);
        for (std::size_t j = 0; j < a.in_y_.size(); ++j) {
            for (std::size_t k = 0; k < b.in_y_.size(); ++k) {
                out[j + k] += multiply(a.in_y_[j], b.in_y_[k], truncation);
            }
        }
        return BiPoly(std::move(out));
    }

  private:
    void normalize()
    {
        while (!in_y_.empty() && in_y_.back().is_zero()) {
            in_y_.pop_back();
        }
    }

    std::vector<Poly> in_y_;
};

using ExactBiPoly = BiPoly<GaussianRational>;
using FloatBiPoly = BiPoly<Complex>;

/// f(q(x), x) as a univariate polynomial; `truncation` bounds the power of x.
template <class S>
UniPoly<S> substitute_y(const BiPoly<S>& f, const UniPoly<S>& q, std::optional<std::size_t> truncation = {})
{
    UniPoly<S> acc;
    for (auto it = f.in_y().rbegin(); it != f.in_y().rend(); ++it) {
        acc = multiply(acc, q, truncation) + (truncation ? truncate(*it, *truncation) : *it);
    }
    return acc;
}

enum class Variable { first, second };

/// Formal partial derivative: `first` differentiates in y, `second` in x.
template <class S>
BiPoly<S> partial_derivative(const BiPoly<S>& f, Variable which, unsigned order = 1)
{
    BiPoly<S> current = f;
    for (unsigned step = 0; step < order && !current.is_zero(); ++step) {
        std::vector<UniPoly<S>> out;
        if (which == Variable::first) {
            for (std::size_t j = 1; j < current.in_y().size(); ++j) {
                out.push_back(current.in_y()[j] * ScalarTraits<S>::from_int(static_cast<long>(j)));
            }
        } else {
            for (const auto& p : current.in_y()) {
                out.push_back(derivative(p));
            }
        }
        current = BiPoly<S>(std::move(out));
    }
    return current;
}

/// f(scale * y + shift, x).
template <class S>
BiPoly<S> compose_y_affine(const BiPoly<S>& f, const S& scale, const S& shift)
{
    using Poly = UniPoly<S>;
    if (f.is_zero()) {
        return {};
    }
    const std::size_t count = f.in_y().size();
    std::vector<Poly> out(count);
    // Row j of Pascal's triangle, scaled: (scale*y + shift)^j = sum_m binom(j,m) scale^m shift^(j-m) y^m.
    std::vector<S> binomial_row{ScalarTraits<S>::one()};
    for (std::size_t j = 0; j < count; ++j) {
        if (j > 0) {
            std::vector<S> next(j + 1, ScalarTraits<S>::zero());
            for (std::size_t m = 0; m <= j; ++m) {
                if (m < j) {
                    next[m] += binomial_row[m] * shift;
                }
                if (m > 0) {
                    next[m] += binomial_row[m - 1] * scale;
                }
            }
            binomial_row = std::move(next);
        }
        const Poly& pj = f.in_y()[j];
        if (pj.is_zero()) {
            continue;
        }
        for (std::size_t m = 0; m <= j; ++m) {
            if (!ScalarTraits<S>::is_zero(binomial_row[m])) {
                out[m] += pj * binomial_row[m];
            }
        }
    }
    return BiPoly<S>(std::move(out));
}

/// f(y, scale * x + shift).
template <class S>
BiPoly<S> compose_x_affine(const BiPoly<S>& f, const S& scale, const S& shift)
{
    std::vector<UniPoly<S>> out;
    out.reserve(f.in_y().size());
    for (const auto& p : f.in_y()) {
        out.push_back(compose_affine(p, scale, shift));
    }
    return BiPoly<S>(std::move(out));
}

/// Expansion of f around (cy, cx): the polynomial h(u, v) = f(cy + u, cx + v).
template <class S>
BiPoly<S> recenter(const BiPoly<S>& f, const S& cy, const S& cx)
{
    return compose_x_affine(compose_y_affine(f, ScalarTraits<S>::one(), cy), ScalarTraits<S>::one(), cx);
}

template <class S>
BiPoly<S> truncate_x(const BiPoly<S>& f, std::size_t degree)
{
    std::vector<UniPoly<S>> out;
    out.reserve(f.in_y().size());
    for (const auto& p : f.in_y()) {
        out.push_back(truncate(p, degree));
    }
    return BiPoly<S>(std::move(out));
}

template <class T, class S>
BiPoly<T> convert(const BiPoly<S>& f)
{
    std::vector<UniPoly<T>> out;
    out.reserve(f.in_y().size());
    for (const auto& p : f.in_y()) {
        out.push_back(convert<T>(p));
    }
    return BiPoly<T>(std::move(out));
}

/// Power series in x truncated at a fixed degree, with polynomial dependence on y.
///
/// Every operation drops powers of x above `truncation_degree`; coefficients
/// at or below it are exact.
template <class S>
struct TruncatedSeries {
    BiPoly<S> poly_in_y;
    std::size_t truncation_degree = 0;

    TruncatedSeries() = default;
    TruncatedSeries(BiPoly<S> f, std::size_t degree) : poly_in_y(truncate_x(f, degree)), truncation_degree(degree) {}

    template <class T>
    T operator()(const T& y, const T& x) const
    {
        return poly_in_y(y, x);
    }
};

template <class S>
UniPoly<S> substitute_y(const TruncatedSeries<S>& f, const UniPoly<S>& q)
{
    return substitute_y(f.poly_in_y, truncate(q, f.truncation_degree), f.truncation_degree);
}

using ExactSeries = TruncatedSeries<GaussianRational>;

}  // namespace approxsys

#endif  // APPROXSYS_POLY_HPP
