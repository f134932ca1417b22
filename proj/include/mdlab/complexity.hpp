#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mdlab/bitstring.hpp"
#include "mdlab/budget.hpp"
#include "mdlab/dyadic.hpp"
#include "mdlab/machine.hpp"
#include "mdlab/program.hpp"

namespace mdlab {

// A description of a target string: code + data tape with the run halting
// after consuming the data tape exactly. `total` is l(code)+l(data).
// The normative order (desc_better) is: smaller total, then shorter code,
// then lexicographic code, then lexicographic data. Every search and every
// tie-break in this project uses it.
struct FoundDesc {
  bool valid = false;
  std::uint64_t total = 0;
  std::uint32_t code_bits = 0;
  std::uint64_t code_value = 0;  // base-8 digits = opcodes, MSB first
  std::vector<std::uint8_t> delta;

  Program code_program() const {
    return Program::from_index(code_bits / kOpcodeBits, code_value);
  }
  BitString delta_bits() const;
};

bool desc_better(const FoundDesc& a, const FoundDesc& b);

struct ComplexityEstimate {
  bool found = false;
  std::uint64_t value_bits = 0;
  Program witness_code;
  BitString witness_data;
  Budget budget;
  std::uint64_t programs_enumerated = 0;
};

struct ProbabilityEstimate {
  Dyadic mass;
  std::uint64_t contributing_pairs = 0;
  Budget budget;
  std::uint64_t programs_enumerated = 0;
};

struct TwoPartCode {
  Program mu;
  BitString delta;
  std::uint64_t total_bits = 0;
};

// Upper-bound estimate of the Kolmogorov complexity of `target`: the best
// description within the budget, or found=false when none exists there.
ComplexityEstimate approx_kolmogorov(const BitString& target,
                                     const Budget& budget, int workers = 1);

// Conditional variant: minimizes l(mu)+l(delta) over runs of prefix∥mu on
// data tape delta. value_bits excludes the prefix length.
ComplexityEstimate approx_conditional(const BitString& target,
                                      const Program& prefix,
                                      const Budget& budget, int workers = 1);

// The best two-part code (regular model mu, residual data delta); same
// minimand and tie-break as approx_kolmogorov.
std::optional<TwoPartCode> best_two_part(const BitString& target,
                                         const Budget& budget,
                                         int workers = 1);

// The k best two-part codes of `target` within prefix, best first.
std::vector<TwoPartCode> k_best_two_part(const BitString& target,
                                         const Program& prefix,
                                         const Budget& budget, std::size_t k,
                                         int workers = 1);

// Exact dyadic lower bound of the algorithmic probability: the sum of
// 2^-(l(code)+l(data)) over every description of `target` in the budget.
ProbabilityEstimate approx_algorithmic_probability(const BitString& target,
                                                   const Budget& budget,
                                                   int workers = 1);

// Forward-enumeration table: one pass over every (code, data) pair in the
// budget, recording per output (up to max_output_bits) the best description,
// the exact probability mass, and the description count, plus halting
// exact-consumption pair counts per (code length, data length) class.
struct AtlasEntry {
  FoundDesc best;
  Dyadic mass;
  std::uint64_t n_descriptions = 0;
};

struct DescriptionAtlas {
  Budget budget;
  std::uint32_t max_output_bits = 0;
  std::unordered_map<BitString, AtlasEntry, BitStringHash> by_output;
  // class_counts[k][d]: halting exact-consumption pairs with code length
  // 3k bits and data length d. Complete only when overflow_kills == 0.
  std::vector<std::vector<std::uint64_t>> class_counts;
  // Runs aborted because their output exceeded max_output_bits. Zero means
  // the atlas saw every halting pair in the budget.
  std::uint64_t overflow_kills = 0;
  std::uint64_t programs_examined = 0;

  const AtlasEntry* find(const BitString& output) const;
  Dyadic total_mass() const;
  Dyadic class_mass_bound() const;  // Σ over classes count·2^-(3k+d)
};

DescriptionAtlas build_atlas(const Budget& budget,
                             std::uint32_t max_output_bits,
                             const Program* prefix = nullptr,
                             int workers = 1);

}  // namespace mdlab
