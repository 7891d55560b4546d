#include "approxsys/gaussian_rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "approxsys/error.hpp"

namespace approxsys {

namespace {

std::string_view trim(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

bool all_digits(std::string_view text)
{
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad_literal(std::string_view text)
{
    throw Error(ErrorKind::parse, "malformed number literal '" + std::string(text) + "'");
}

mpz_class pow10(unsigned long exponent)
{
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::parse: return "parse";
        case ErrorKind::order: return "order";
        case ErrorKind::symbolic_unsupported: return "symbolic-unsupported";
        case ErrorKind::constant_step: return "constant-step";
        case ErrorKind::endomorphism: return "endomorphism";
        case ErrorKind::no_fixpoint: return "no-fixpoint";
        case ErrorKind::non_invertible: return "non-invertible";
        case ErrorKind::degenerate_scale: return "degenerate-scale";
        case ErrorKind::configuration: return "configuration";
        case ErrorKind::method_inapplicable: return "method-inapplicable";
        case ErrorKind::inapplicable: return "inapplicable";
        case ErrorKind::domain: return "domain";
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::partition: return "partition";
        case ErrorKind::marching: return "marching";
        case ErrorKind::format: return "format";
        case ErrorKind::grid: return "grid";
        case ErrorKind::not_checkable: return "not-checkable";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::usage: return "usage";
    }
    return "unknown";
}

double to_double(const Rational& value)
{
    const mpz_class& num = value.get_num();
    const mpz_class& den = value.get_den();
    if (sgn(num) == 0) {
        return 0.0;
    }
    if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 53) {
        return num.get_d() / den.get_d();
    }
    // Quotient with at least 55 significant bits, then round the low bits by hand.
    const mpz_class a = abs(num);
    const long shift = 55 + static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) -
                       static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
    mpz_class scaled = a;
    mpz_class divisor = den;
    if (shift > 0) {
        scaled <<= static_cast<mp_bitcnt_t>(shift);
    } else {
        divisor <<= static_cast<mp_bitcnt_t>(-shift);
    }
    mpz_class q;
    mpz_class r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), divisor.get_mpz_t());
    bool sticky = sgn(r) != 0;
    const auto extra = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 54;
    if (extra > 0) {
        sticky = sticky || mpz_scan1(q.get_mpz_t(), 0) < static_cast<mp_bitcnt_t>(extra);
        q >>= static_cast<mp_bitcnt_t>(extra);
    }
    // q holds 54 bits: 53 kept plus the round bit.
    const bool round_bit = mpz_tstbit(q.get_mpz_t(), 0) != 0;
    q >>= 1;
    if (round_bit && (sticky || mpz_tstbit(q.get_mpz_t(), 0) != 0)) {
        q += 1;
    }
    const double magnitude = std::ldexp(q.get_d(), static_cast<int>(extra + 1 - shift));
    return sgn(num) < 0 ? -magnitude : magnitude;
}

Complex GaussianRational::to_complex() const { return {to_double(re_), to_double(im_)}; }

Rational parse_rational(std::string_view text)
{
    const std::string_view original = text;
    text = trim(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) {
        bad_literal(original);
    }

    Rational result;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            bad_literal(original);
        }
        const mpz_class d{std::string(den), 10};
        if (d == 0) {
            bad_literal(original);
        }
        result = Rational(mpz_class(std::string(num), 10), d);
        result.canonicalize();
    } else {
        std::string_view mantissa = text;
        long exponent = 0;
        if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = text.substr(0, e);
            auto exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) {
                bad_literal(original);
            }
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) {
                exponent = -exponent;
            }
        }
        std::string digits;
        if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            const auto int_part = mantissa.substr(0, dot);
            const auto frac_part = mantissa.substr(dot + 1);
            if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
                (int_part.empty() && frac_part.empty())) {
                bad_literal(original);
            }
            digits = std::string(int_part) + std::string(frac_part);
            exponent -= static_cast<long>(frac_part.size());
        } else {
            if (!all_digits(mantissa)) {
                bad_literal(original);
            }
            digits = std::string(mantissa);
        }
        mpz_class value(digits, 10);
        if (exponent >= 0) {
            result = Rational(value * pow10(static_cast<unsigned long>(exponent)));
        } else {
            result = Rational(value, pow10(static_cast<unsigned long>(-exponent)));
            result.canonicalize();
        }
    }
    return negative ? Rational(-result) : result;
}

std::string rational_to_string(const Rational& value) { return value.get_str(); }

GaussianRational GaussianRational::fraction(long num, long den)
{
    if (den == 0) {
        throw std::domain_error("GaussianRational: zero denominator");
    }
    return GaussianRational(Rational(num, den));
}

GaussianRational GaussianRational::from_double(double value)
{
    if (!std::isfinite(value)) {
        throw std::domain_error("GaussianRational: non-finite double");
    }
    return GaussianRational(Rational(value));
}

GaussianRational GaussianRational::from_complex(Complex value)
{
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw std::domain_error("GaussianRational: non-finite complex");
    }
    return {Rational(value.real()), Rational(value.imag())};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& rhs)
{
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& rhs)
{
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& rhs)
{
    if (sgn(im_) == 0 && sgn(rhs.im_) == 0) {
        re_ *= rhs.re_;
        return *this;
    }
    Rational re = re_ * rhs.re_ - im_ * rhs.im_;
    Rational im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& rhs)
{
    if (rhs.is_zero()) {
        throw std::domain_error("GaussianRational: division by zero");
    }
    if (sgn(rhs.im_) == 0) {
        re_ /= rhs.re_;
        im_ /= rhs.re_;
        return *this;
    }
    const Rational den = rhs.norm_squared();
    Rational re = (re_ * rhs.re_ + im_ * rhs.im_) / den;
    Rational im = (im_ * rhs.re_ - re_ * rhs.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::to_string() const
{
    if (is_real()) {
        return rational_to_string(re_);
    }
    std::string out = rational_to_string(re_);
    out += sgn(im_) < 0 ? '-' : '+';
    out += rational_to_string(abs(im_));
    out += 'i';
    return out;
}

GaussianRational GaussianRational::parse(std::string_view text)
{
    const std::string_view original = text;
    text = trim(text);
    if (text.empty()) {
        bad_literal(original);
    }
    if (text.back() != 'i') {
        return GaussianRational(parse_rational(text));
    }
    text.remove_suffix(1);

    // Split at the last sign that is neither leading nor part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto imag_of = [&](std::string_view token) -> Rational {
        if (token.empty() || token == "+") {
            return Rational(1);
        }
        if (token == "-") {
            return Rational(-1);
        }
        return parse_rational(token);
    };
    if (split == std::string_view::npos) {
        return {Rational(0), imag_of(text)};
    }
    return {parse_rational(text.substr(0, split)), imag_of(text.substr(split))};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& value) { return os << value.to_string(); }

GaussianRational pow(const GaussianRational& base, unsigned exponent)
{
    GaussianRational result = 1L;
    GaussianRational factor = base;
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result *= factor;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            factor *= factor;
        }
    }
    return result;
}

Rational factorial(unsigned n)
{
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return Rational(result);
}

}  // namespace approxsys
