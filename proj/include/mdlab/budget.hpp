#pragma once

#include <cstdint>

namespace mdlab {

// Bounds for one enumeration search. Estimates are meaningful only relative
// to the budget that produced them.
struct Budget {
  std::uint32_t max_code_bits = 0;
  std::uint32_t max_data_bits = 0;
  std::uint64_t step_limit = 1;

  bool operator==(const Budget&) const = default;
};

}  // namespace mdlab
