// fixedpoint.hpp - exact hundredth-unit arithmetic for energy and area.
//
// Energies are carried as integer hundredths of a nanojoule and areas as
// integer hundredths of a square micrometre, so every total, comparison and
// serialized digit is exact and platform-independent. Doubles only appear
// at the API boundary and are quantized on entry.
#pragma once

#include <cstdint>
#include <string>

namespace fusecost {

inline uint64_t ceil_div(uint64_t value, uint64_t divisor) {
  return value / divisor + (value % divisor != 0);
}

// Quantizes a non-negative decimal to integer hundredths (round to nearest).
// Throws SchemaViolation for negative, non-finite or out-of-range values.
uint64_t centi_from_double(double value, const std::string& field);

std::string centi_to_string(uint64_t centi);        // 3640729600 -> "36407296.00"
std::string centi_to_milli_string(uint64_t centi);  // 2246534176 -> "22.46534176"

// Percentage numerator/denominator in tenths of a percent, rounded half-up.
// A zero denominator reports zero (no baseline means no reduction).
uint64_t percent_tenths(uint64_t numerator, uint64_t denominator);
std::string tenths_to_string(uint64_t tenths);      // 602 -> "60.2"

}  // namespace fusecost
