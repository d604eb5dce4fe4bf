#ifndef LSQ_SCALAR_HPP
#define LSQ_SCALAR_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace lsq {

// Amplitudes are double-precision complex numbers. Addition and
// multiplication come from std::complex; the helpers below add the
// probability/normalization operations and the textual literal syntax.
using Scalar = std::complex<double>;

inline constexpr double kDefaultEps = 1e-9;

// Exact double for 2^(-1/2): sqrt2 is correctly rounded and halving is exact.
inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// |a|^2 = re^2 + im^2.
double sq_modulus(Scalar a);

// True iff |a-b|^2 <= eps^2. eps must be positive.
bool approx_eq(Scalar a, Scalar b, double eps = kDefaultEps);

// (1/sqrt(x) + 0i). Throws DataError(NonPositive) when x <= eps.
Scalar inv_sqrt_real(double x, double eps = kDefaultEps);

// Renders one of: `a`, `ai`, `a+bi`, `a-bi`, `1/sqrt2`, `-1/sqrt2`,
// `1/sqrt2i`, `-1/sqrt2i`. Decimal parts use shortest round-trip form, so
// parse_scalar(format_scalar(a)) == a bit-exactly.
std::string format_scalar(Scalar a);
std::string format_real(double x);

// Reads a scalar literal from the head of `text`. Returns the value and the
// number of characters consumed, or nullopt if no literal starts here.
// Non-finite literals (overflowing decimals) are rejected.
std::optional<std::pair<Scalar, std::size_t>> munch_scalar(std::string_view text);

// Full-string variant of munch_scalar; nullopt on trailing garbage.
std::optional<Scalar> parse_scalar(std::string_view text);

} // namespace lsq

#endif
