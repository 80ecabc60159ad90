#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace objest {

// Irrational multipliers with a shipped 1024-bit binary expansion.
enum class Irrational { Pi, Sqrt2, GoldenRatio };

std::string_view to_string(Irrational alpha) noexcept;
Irrational parse_irrational(std::string_view name);  // "pi", "sqrt2", "phi"

inline constexpr unsigned kDefaultPrecisionBits = 128;
inline constexpr unsigned kMaxPrecisionBits = 1024;

// Smallest precision for which {n*alpha} is exact to double precision:
// 64 + bit_width(n).
unsigned min_precision_bits(std::uint64_t n) noexcept;

/// Fractional part {n * alpha}, correctly rounded to nearest double. The
/// product is formed in fixed point from at least the first `precision_bits`
/// bits of alpha, widened while the rounding is still in doubt.
///
/// Throws PrecisionError when precision_bits < min_precision_bits(n) or
/// precision_bits > kMaxPrecisionBits, std::domain_error when n == 0.
/// The result lies in [0, 1); a value that would round up to 1.0 is returned
/// as the largest double below 1.
double weyl_term(std::uint64_t n, Irrational alpha = Irrational::Pi,
                 unsigned precision_bits = kDefaultPrecisionBits);

/// (weyl_term(1), ..., weyl_term(N)); element k-1 holds term k.
std::vector<double> weyl_prefix(std::size_t count, Irrational alpha = Irrational::Pi,
                                unsigned precision_bits = kDefaultPrecisionBits);

/// Fraction of values inside the closed interval [c, d].
double discrepancy_fraction(std::span<const double> values, double c, double d);

}  // namespace objest
