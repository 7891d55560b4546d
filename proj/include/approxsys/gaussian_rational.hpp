#ifndef APPROXSYS_GAUSSIAN_RATIONAL_HPP
#define APPROXSYS_GAUSSIAN_RATIONAL_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace approxsys {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact complex number with arbitrary-precision rational parts.
///
/// Both parts are kept in canonical form (reduced, positive denominator), so
/// structural equality is numeric equality.
class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    /// num/den as a real value; den must be nonzero.
    static GaussianRational fraction(long num, long den);
    /// Exact binary value of a finite double.
    static GaussianRational from_double(double value);
    static GaussianRational from_complex(Complex value);

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |re| + |im|, a rational upper bound of the modulus.
    Rational l1_norm() const { return abs(re_) + abs(im_); }
    Rational norm_squared() const { return re_ * re_ + im_ * im_; }
    double abs_value() const { return std::abs(to_complex()); }
    Complex to_complex() const;

    GaussianRational& operator+=(const GaussianRational& rhs);
    GaussianRational& operator-=(const GaussianRational& rhs);
    GaussianRational& operator*=(const GaussianRational& rhs);
    /// Throws std::domain_error on division by zero.
    GaussianRational& operator/=(const GaussianRational& rhs);

    friend GaussianRational operator+(GaussianRational lhs, const GaussianRational& rhs) { return lhs += rhs; }
    friend GaussianRational operator-(GaussianRational lhs, const GaussianRational& rhs) { return lhs -= rhs; }
    friend GaussianRational operator*(GaussianRational lhs, const GaussianRational& rhs) { return lhs *= rhs; }
    friend GaussianRational operator/(GaussianRational lhs, const GaussianRational& rhs) { return lhs /= rhs; }
    friend GaussianRational operator-(const GaussianRational& v) { return {-v.re_, -v.im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical text form: "num/den" for reals, "a/b+c/di" otherwise.
    std::string to_string() const;
    /// Accepts the canonical form plus decimal literals ("0.25", "1e-3", "1+0.5i", "-2i").
    static GaussianRational parse(std::string_view text);

  private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& value);

/// Parses one real rational token: "-3", "3/4", "0.125", "1e-2".
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& value);
/// Nearest double (ties to even).
double to_double(const Rational& value);

GaussianRational pow(const GaussianRational& base, unsigned exponent);
Rational factorial(unsigned n);

// Per-scalar operations the templated polynomial code relies on.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return 1L; }
    static GaussianRational from_int(long v) { return v; }
    static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
    static Complex to_complex(const GaussianRational& v) { return v.to_complex(); }
    static double magnitude(const GaussianRational& v) { return v.abs_value(); }
};

template <>
struct ScalarTraits<Complex> {
    static Complex zero() { return {}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const Complex& v) { return v == Complex{}; }
    static Complex to_complex(const Complex& v) { return v; }
    static double magnitude(const Complex& v) { return std::abs(v); }
};

template <class T, class S>
T scalar_cast(const S& value)
{
    if constexpr (std::is_same_v<T, S>) {
        return value;
    } else {
        static_assert(std::is_same_v<T, Complex>, "exact scalars only widen to Complex");
        return ScalarTraits<S>::to_complex(value);
    }
}

}  // namespace approxsys

#endif  // APPROXSYS_GAUSSIAN_RATIONAL_HPP
