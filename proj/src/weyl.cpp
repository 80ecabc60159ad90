#include "objest/weyl.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "objest/error.hpp"
#include "objest/kernels.hpp"

namespace objest {
namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::size_t kWords = kMaxPrecisionBits / 64;
using Expansion = std::array<std::uint64_t, kWords>;

// Fractional parts as big-endian 64-bit words: word i holds bits
// 2^-(64i+1) .. 2^-(64i+64). Truncated (not rounded) at 1024 bits.
constexpr Expansion kPiFrac = {
    0x243f6a8885a308d3, 0x13198a2e03707344, 0xa4093822299f31d0, 0x082efa98ec4e6c89,
    0x452821e638d01377, 0xbe5466cf34e90c6c, 0xc0ac29b7c97c50dd, 0x3f84d5b5b5470917,
    0x9216d5d98979fb1b, 0xd1310ba698dfb5ac, 0x2ffd72dbd01adfb7, 0xb8e1afed6a267e96,
    0xba7c9045f12c7f99, 0x24a19947b3916cf7, 0x0801f2e2858efc16, 0x636920d871574e69,
};

constexpr Expansion kSqrt2Frac = {
    0x6a09e667f3bcc908, 0xb2fb1366ea957d3e, 0x3adec17512775099, 0xda2f590b0667322a,
    0x95f9060875714587, 0x5163fcdfb907b672, 0x1ee950bc8738f694, 0xf0090e6c7bf44ed1,
    0xa4405d0e855e3e9c, 0xa60b38c0237866f7, 0x956379222d108b14, 0x8c1578e45ef89c67,
    0x8dab5147176fd3b9, 0x9654c68663e7909b, 0xea5e241f06dcb05d, 0xd549411320819495,
};

constexpr Expansion kGoldenFrac = {
    0x9e3779b97f4a7c15, 0xf39cc0605cedc834, 0x1082276bf3a27251, 0xf86c6a11d0c18e95,
    0x2767f0b153d27b7f, 0x0347045b5bf1827f, 0x01886f0928403002, 0xc1d64ba40f335e36,
    0xf06ad7ae9717877e, 0x85839d6effbd7dc6, 0x64d325d1c5371682, 0xcadd0cccfdffbbe1,
    0x626e33b8d04b4331, 0xbbf73c790d94f79d, 0x471c4ab3ed3d82a5, 0xfec507705e4ae6e5,
};

const Expansion& expansion(Irrational alpha) noexcept {
  switch (alpha) {
    case Irrational::Sqrt2: return kSqrt2Frac;
    case Irrational::GoldenRatio: return kGoldenFrac;
    case Irrational::Pi: break;
  }
  return kPiFrac;
}

// Round the fixed-point fraction held in words[0..used) to nearest double,
// ties to even.
double round_to_double(const Expansion& words, std::size_t used) noexcept {
  std::size_t lead = 0;
  while (lead < used && words[lead] == 0) ++lead;
  if (lead == used) return 0.0;

  const std::uint64_t w0 = words[lead];
  const std::uint64_t w1 = lead + 1 < used ? words[lead + 1] : 0;
  const std::uint64_t w2 = lead + 2 < used ? words[lead + 2] : 0;
  const int shift = std::countl_zero(w0);

  u128 window = (u128{w0} << 64) | w1;
  if (shift > 0) {
    window = (window << shift) | (w2 >> (64 - shift));
  }
  // The window now holds 128 significant bits with its top bit set.
  std::uint64_t mantissa = static_cast<std::uint64_t>(window >> 75);
  const bool round_bit = ((window >> 74) & 1) != 0;
  bool sticky = (window & ((u128{1} << 74) - 1)) != 0;
  for (std::size_t i = lead + 2; !sticky && i < used; ++i) {
    sticky = words[i] != 0;  // over-reports only bits already in the window
  }
  if (round_bit && (sticky || (mantissa & 1) != 0)) ++mantissa;

  const int exponent = -static_cast<int>(64 * lead) - shift - 53;
  const double value = std::ldexp(static_cast<double>(mantissa), exponent);
  return value < 1.0 ? value : std::nextafter(1.0, 0.0);
}

// {n * a} where a is alpha truncated to `bits` bits, plus 2^-bits when
// `round_up` is set, rounded to double.
double truncated_product(std::uint64_t n, Irrational alpha, unsigned bits, bool round_up) noexcept {
  Expansion words = expansion(alpha);
  const std::size_t used = (bits + 63) / 64;
  const unsigned tail = bits % 64;
  if (tail != 0) words[used - 1] &= ~std::uint64_t{0} << (64 - tail);
  if (round_up) {
    std::uint64_t add = tail != 0 ? std::uint64_t{1} << (64 - tail) : 1;
    for (std::size_t i = used; add != 0 && i-- > 0;) {
      words[i] += add;
      add = words[i] == 0 ? 1 : 0;
    }
  }

  // Multiply the fraction by n from the least significant word up; the final
  // carry is the integer part of n * a and is dropped.
  std::uint64_t carry = 0;
  for (std::size_t i = used; i-- > 0;) {
    const u128 p = static_cast<u128>(words[i]) * n + carry;
    words[i] = static_cast<std::uint64_t>(p);
    carry = static_cast<std::uint64_t>(p >> 64);
  }
  return round_to_double(words, used);
}

}  // namespace

std::string_view to_string(Irrational alpha) noexcept {
  switch (alpha) {
    case Irrational::Sqrt2: return "sqrt2";
    case Irrational::GoldenRatio: return "phi";
    case Irrational::Pi: break;
  }
  return "pi";
}

Irrational parse_irrational(std::string_view name) {
  if (name == "pi") return Irrational::Pi;
  if (name == "sqrt2") return Irrational::Sqrt2;
  if (name == "phi") return Irrational::GoldenRatio;
  throw std::invalid_argument("unknown irrational '" + std::string(name) + "'");
}

unsigned min_precision_bits(std::uint64_t n) noexcept {
  return 64u + static_cast<unsigned>(std::bit_width(n));
}

double weyl_term(std::uint64_t n, Irrational alpha, unsigned precision_bits) {
  if (n == 0) throw std::domain_error("weyl_term: index must be >= 1");
  if (precision_bits < min_precision_bits(n)) {
    throw PrecisionError("weyl_term: " + std::to_string(precision_bits) +
                         " bits cannot resolve {n*alpha} for n = " + std::to_string(n) +
                         "; need at least " + std::to_string(min_precision_bits(n)));
  }
  if (precision_bits > kMaxPrecisionBits) {
    throw PrecisionError("weyl_term: constant table holds only " +
                         std::to_string(kMaxPrecisionBits) + " bits");
  }

  // The truncated constant brackets alpha from below and truncated + 2^-bits
  // from above. When both products round to the same double that double is
  // the correctly rounded {n * alpha}; otherwise widen and retry.
  for (unsigned bits = precision_bits;; bits = std::min(2 * bits, kMaxPrecisionBits)) {
    const double lower = truncated_product(n, alpha, bits, false);
    if (bits == kMaxPrecisionBits) return lower;
    if (truncated_product(n, alpha, bits, true) == lower) return lower;
  }
}

std::vector<double> weyl_prefix(std::size_t count, Irrational alpha, unsigned precision_bits) {
  if (count == 0) throw std::domain_error("weyl_prefix: count must be >= 1");
  // Validate once against the largest index so the kernel cannot throw mid-loop.
  (void)weyl_term(count, alpha, precision_bits);
  std::vector<double> out(count);
  kernels::parallel::weyl_fill(out, 1, alpha, precision_bits);
  return out;
}

double discrepancy_fraction(std::span<const double> values, double c, double d) {
  if (values.empty()) throw std::domain_error("discrepancy_fraction: empty input");
  if (!(0.0 <= c && c <= d && d <= 1.0)) {
    throw std::domain_error("discrepancy_fraction: need 0 <= c <= d <= 1");
  }
  std::size_t inside = 0;
  for (double v : values) inside += (c <= v && v <= d) ? 1 : 0;
  return static_cast<double>(inside) / static_cast<double>(values.size());
}

}  // namespace objest
