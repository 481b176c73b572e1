#include "fixedpoint.hpp"

#include <cmath>

#include "errors.hpp"

namespace fusecost {

uint64_t centi_from_double(double value, const std::string& field) {
  if (!std::isfinite(value) || value < 0.0)
    throw Error(ErrorCode::SchemaViolation,
                field + " must be a finite non-negative number");
  const double scaled = value * 100.0;
  if (scaled > 9.0e18)
    throw Error(ErrorCode::SchemaViolation, field + " is out of range");
  return static_cast<uint64_t>(std::llround(scaled));
}

std::string centi_to_string(uint64_t centi) {
  std::string out = std::to_string(centi / 100);
  const uint64_t frac = centi % 100;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

std::string centi_to_milli_string(uint64_t centi) {
  constexpr uint64_t kCentiPerMilli = 100000000ull;  // 1e6 units of 0.01
  std::string out = std::to_string(centi / kCentiPerMilli);
  const std::string digits = std::to_string(centi % kCentiPerMilli);
  out += '.';
  out += std::string(8 - digits.size(), '0');
  out += digits;
  return out;
}

uint64_t percent_tenths(uint64_t numerator, uint64_t denominator) {
  if (denominator == 0) return 0;
  // (1000 * num / den) rounded half-up, in 128-bit to avoid overflow.
  const auto num = static_cast<unsigned __int128>(numerator);
  const auto den = static_cast<unsigned __int128>(denominator);
  return static_cast<uint64_t>((num * 2000 + den) / (den * 2));
}

std::string tenths_to_string(uint64_t tenths) {
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

}  // namespace fusecost
