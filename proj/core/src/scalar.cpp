#include "lsq/scalar.hpp"

#include "lsq/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstring>

namespace lsq {

std::string SourcePos::to_string() const {
    if (!known()) {
        return "<no position>";
    }
    return std::to_string(line) + ":" + std::to_string(column);
}

SyntaxError::SyntaxError(const std::string &msg, SourcePos p)
    : Error(p.to_string() + ": " + msg), pos(p) {}

TypeError::TypeError(TypeErrorKind k, const std::string &msg) : Error(msg), kind(k) {}

ReduceError::ReduceError(ReduceErrorKind k, const std::string &msg) : Error(msg), kind(k) {}

DataError::DataError(DataErrorKind k, const std::string &msg) : Error(msg), kind(k) {}

double sq_modulus(Scalar a) {
    return std::norm(a);
}

bool approx_eq(Scalar a, Scalar b, double eps) {
    return sq_modulus(a - b) <= eps * eps;
}

Scalar inv_sqrt_real(double x, double eps) {
    if (!(x > eps)) {
        throw DataError(DataErrorKind::NonPositive,
                        "inv_sqrt_real: argument " + format_real(x) + " is not above " +
                            format_real(eps));
    }
    return Scalar(1.0 / std::sqrt(x), 0.0);
}

std::string format_real(double x) {
    if (x == kInvSqrt2) {
        return "1/sqrt2";
    }
    if (x == -kInvSqrt2) {
        return "-1/sqrt2";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_scalar(Scalar a) {
    const double re = a.real();
    const double im = a.imag();
    if (im == 0.0) {
        return format_real(re);
    }
    if (re == 0.0) {
        return format_real(im) + "i";
    }
    std::string out = format_real(re);
    out += im < 0.0 ? '-' : '+';
    out += format_real(std::fabs(im));
    out += 'i';
    return out;
}

namespace {

bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'';
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

// Length of a decimal number at the head of `s` (digits[.digits][exponent]),
// or 0 if none. The exponent is included only when complete.
std::size_t munch_number(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && is_digit(s[i])) {
        ++i;
    }
    if (i == 0) {
        return 0;
    }
    if (i < s.size() && s[i] == '.') {
        std::size_t j = i + 1;
        while (j < s.size() && is_digit(s[j])) {
            ++j;
        }
        if (j > i + 1) {
            i = j;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) {
            ++j;
        }
        std::size_t digits = j;
        while (j < s.size() && is_digit(s[j])) {
            ++j;
        }
        if (j > digits) {
            i = j;
        }
    }
    return i;
}

constexpr std::string_view kSqrtTail = "/sqrt2";

// Parses `number` or `1/sqrt2` at the head of `s`. Returns (value, length).
std::optional<std::pair<double, std::size_t>> munch_real_part(std::string_view s) {
    std::size_t n = munch_number(s);
    if (n == 0) {
        return std::nullopt;
    }
    if (s.substr(0, n) == "1" && s.substr(n).starts_with(kSqrtTail)) {
        return std::make_pair(kInvSqrt2, n + kSqrtTail.size());
    }
    double value = 0.0;
    auto res = std::from_chars(s.data(), s.data() + n, value);
    if (res.ec != std::errc() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return std::make_pair(value, n);
}

// True when position i of s holds an imaginary suffix `i` that is not the
// start of an identifier (so `2ink` lexes as `2` then `ink`).
bool imag_suffix_at(std::string_view s, std::size_t i) {
    return i < s.size() && s[i] == 'i' && (i + 1 >= s.size() || !is_ident_char(s[i + 1]));
}

} // namespace

std::optional<std::pair<Scalar, std::size_t>> munch_scalar(std::string_view text) {
    std::size_t pos = 0;
    double sign = 1.0;
    if (pos < text.size() && text[pos] == '-') {
        sign = -1.0;
        ++pos;
    }
    auto first = munch_real_part(text.substr(pos));
    if (!first) {
        return std::nullopt;
    }
    double a = sign * first->first;
    pos += first->second;

    if (imag_suffix_at(text, pos)) {
        return std::make_pair(Scalar(0.0, a), pos + 1);
    }
    // Try the composite form a+bi / a-bi; rewind to the real literal if the
    // tail does not complete it.
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        double imag_sign = text[pos] == '-' ? -1.0 : 1.0;
        auto second = munch_real_part(text.substr(pos + 1));
        if (second) {
            std::size_t end = pos + 1 + second->second;
            if (imag_suffix_at(text, end)) {
                return std::make_pair(Scalar(a, imag_sign * second->first), end + 1);
            }
        }
    }
    return std::make_pair(Scalar(a, 0.0), pos);
}

std::optional<Scalar> parse_scalar(std::string_view text) {
    auto got = munch_scalar(text);
    if (!got || got->second != text.size()) {
        return std::nullopt;
    }
    return got->first;
}

} // namespace lsq
