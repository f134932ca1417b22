#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdlab/bitstring.hpp"
#include "mdlab/budget.hpp"
#include "mdlab/complexity.hpp"
#include "mdlab/representation.hpp"

namespace mdlab {

// Representations for levels 1..m; level 1 describes the raw string, level
// i+1 describes the code bits of level i's model.
struct LevelStack {
  std::vector<Representation> levels;
};

struct LevelChoice {
  Program mu;
  BitString delta;
};

struct HierarchicalDescription {
  std::vector<LevelChoice> levels;  // one per stack level
};

// Bottom-up sequential construction: each level commits its best two-part
// description before the next level sees it. Not-found if any level fails.
std::optional<HierarchicalDescription> greedy_construct(
    const BitString& alpha, const LevelStack& stack, const Budget& budget,
    int workers = 1);

// Residual lengths summed over all levels plus the top model's length,
// recomputable from the stored witnesses alone.
std::uint64_t total_length(const HierarchicalDescription& h);

// Re-executes every level's witness; true iff the chain reproduces alpha.
bool replay_hierarchy(const BitString& alpha, const LevelStack& stack,
                      const HierarchicalDescription& h,
                      std::uint64_t step_limit);

// Joint refinement: per level the top candidates_per_level descriptions are
// kept (level-local order) and a beam of width beam_width minimizes the
// total description length across levels. The greedy chain is always seeded
// into the beam, so the result never exceeds it.
std::optional<HierarchicalDescription> resonance_refine(
    const BitString& alpha, const LevelStack& stack, std::size_t beam_width,
    std::size_t candidates_per_level, const Budget& budget, int workers = 1);

// Cut positions 0 = b_0 < b_1 < ... < b_n = l(alpha). The empty string is
// the one degenerate case: a single empty segment, boundaries {0, 0}.
struct Segmentation {
  std::vector<std::size_t> boundaries;
  std::size_t n_segments() const {
    return boundaries.size() < 2 ? 0 : boundaries.size() - 1;
  }
};

struct SegmentationResult {
  Segmentation segmentation;
  std::vector<DescriptionWithin> parts;
  std::uint64_t content_bits = 0;   // sum of per-segment description totals
  std::uint64_t cut_cost_bits = 0;  // n in unary + interior cuts in fixed width
  std::uint64_t total_bits = 0;
};

// Minimizes cut-encoding cost plus per-segment describe_within totals by
// dynamic programming over cut points; ties prefer fewer segments, then
// leftmost cuts. The atlas must have been built for S at the same budget
// with max_output_bits >= l(alpha).
std::optional<SegmentationResult> segment_mdl(const BitString& alpha,
                                              const Representation& S,
                                              const Budget& budget,
                                              std::size_t max_segments,
                                              int workers = 1);
std::optional<SegmentationResult> segment_mdl_with_atlas(
    const BitString& alpha, const DescriptionAtlas& atlas,
    std::size_t max_segments);

}  // namespace mdlab
