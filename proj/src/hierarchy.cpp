#include "mdlab/hierarchy.hpp"

#include <algorithm>
#include <cmath>

namespace mdlab {

namespace {

std::optional<LevelChoice> best_at(const Representation& S,
                                   const BitString& target,
                                   const Budget& budget, int workers) {
  auto d = describe_within(S, target, budget, workers);
  if (!d) return std::nullopt;
  return LevelChoice{d->mu, d->delta};
}

}  // namespace

std::optional<HierarchicalDescription> greedy_construct(
    const BitString& alpha, const LevelStack& stack, const Budget& budget,
    int workers) {
  if (stack.levels.empty()) return std::nullopt;
  HierarchicalDescription h;
  BitString target = alpha;
  for (const auto& S : stack.levels) {
    auto choice = best_at(S, target, budget, workers);
    if (!choice) return std::nullopt;
    target = choice->mu.code();
    h.levels.push_back(std::move(*choice));
  }
  return h;
}

std::uint64_t total_length(const HierarchicalDescription& h) {
  std::uint64_t total = 0;
  for (const auto& level : h.levels) total += level.delta.size();
  if (!h.levels.empty()) total += h.levels.back().mu.length_bits();
  return total;
}

bool replay_hierarchy(const BitString& alpha, const LevelStack& stack,
                      const HierarchicalDescription& h,
                      std::uint64_t step_limit) {
  if (h.levels.size() != stack.levels.size()) return false;
  BitString target = alpha;
  for (std::size_t i = 0; i < h.levels.size(); ++i) {
    auto r = execute_conditional(stack.levels[i].code, h.levels[i].mu,
                                 h.levels[i].delta, step_limit);
    if (r.status != RunStatus::Halted || r.output != target ||
        r.data_bits_read != h.levels[i].delta.size()) {
      return false;
    }
    target = h.levels[i].mu.code();
  }
  return true;
}

namespace {

struct BeamState {
  std::vector<LevelChoice> choices;
  std::uint64_t delta_sum = 0;

  // rank used while the chain is partial: committed residuals plus the
  // current model's own length (the cost if this level were the top)
  std::uint64_t rank() const {
    return delta_sum +
           (choices.empty() ? 0 : choices.back().mu.length_bits());
  }
};

bool state_less(const BeamState& a, const BeamState& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  for (std::size_t i = 0; i < std::min(a.choices.size(), b.choices.size());
       ++i) {
    const auto& ca = a.choices[i];
    const auto& cb = b.choices[i];
    if (ca.mu.code() != cb.mu.code())
      return canonical_less(ca.mu.code(), cb.mu.code());
    if (ca.delta != cb.delta) return canonical_less(ca.delta, cb.delta);
  }
  return false;
}

bool same_chain(const std::vector<LevelChoice>& a,
                const std::vector<LevelChoice>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].mu == b[i].mu) || a[i].delta != b[i].delta) return false;
  }
  return true;
}

}  // namespace

std::optional<HierarchicalDescription> resonance_refine(
    const BitString& alpha, const LevelStack& stack, std::size_t beam_width,
    std::size_t candidates_per_level, const Budget& budget, int workers) {
  if (beam_width == 0 || candidates_per_level == 0) return std::nullopt;
  auto greedy = greedy_construct(alpha, stack, budget, workers);
  if (!greedy) return std::nullopt;

  std::vector<BeamState> beam{BeamState{}};
  for (std::size_t lvl = 0; lvl < stack.levels.size(); ++lvl) {
    std::vector<BeamState> next;
    for (const auto& state : beam) {
      BitString target =
          lvl == 0 ? alpha : state.choices.back().mu.code();
      auto cands = k_best_two_part(target, stack.levels[lvl].code, budget,
                                   candidates_per_level, workers);
      for (const auto& cand : cands) {
        BeamState s = state;
        s.choices.push_back(LevelChoice{cand.mu, cand.delta});
        s.delta_sum += cand.delta.size();
        next.push_back(std::move(s));
      }
    }
    if (next.empty()) return std::nullopt;
    std::sort(next.begin(), next.end(), state_less);
    if (next.size() > beam_width) next.resize(beam_width);
    // the greedy prefix always survives
    std::vector<LevelChoice> greedy_prefix(greedy->levels.begin(),
                                           greedy->levels.begin() + lvl + 1);
    bool has_greedy = false;
    for (const auto& s : next) {
      if (same_chain(s.choices, greedy_prefix)) {
        has_greedy = true;
        break;
      }
    }
    if (!has_greedy) {
      BeamState g;
      g.choices = greedy_prefix;
      for (const auto& c : g.choices) g.delta_sum += c.delta.size();
      next.push_back(std::move(g));
    }
    beam = std::move(next);
  }

  const BeamState* best = nullptr;
  for (const auto& s : beam) {
    if (!best) {
      best = &s;
      continue;
    }
    HierarchicalDescription hs{s.choices}, hb{best->choices};
    std::uint64_t ts = total_length(hs), tb = total_length(hb);
    if (ts < tb || (ts == tb && state_less(s, *best))) best = &s;
  }
  return HierarchicalDescription{best->choices};
}

std::optional<SegmentationResult> segment_mdl(const BitString& alpha,
                                              const Representation& S,
                                              const Budget& budget,
                                              std::size_t max_segments,
                                              int workers) {
  auto atlas = build_atlas(budget, static_cast<std::uint32_t>(alpha.size()),
                           &S.code, workers);
  return segment_mdl_with_atlas(alpha, atlas, max_segments);
}

std::optional<SegmentationResult> segment_mdl_with_atlas(
    const BitString& alpha, const DescriptionAtlas& atlas,
    std::size_t max_segments) {
  constexpr std::uint64_t kInf = UINT64_MAX / 4;
  const std::size_t n = alpha.size();

  // degenerate: the empty string is one empty segment
  if (n == 0) {
    const auto* entry = atlas.find(BitString());
    if (!entry) return std::nullopt;
    SegmentationResult r;
    r.segmentation.boundaries = {0, 0};
    r.parts.push_back(DescriptionWithin{entry->best.code_program(),
                                        entry->best.delta_bits(),
                                        entry->best.total});
    r.content_bits = entry->best.total;
    r.cut_cost_bits = 1;  // one segment in unary, no interior cuts
    r.total_bits = r.content_bits + r.cut_cost_bits;
    return r;
  }

  const std::uint64_t pos_bits = static_cast<std::uint64_t>(
      std::ceil(std::log2(static_cast<double>(n) + 1.0)));
  auto cut_cost = [&](std::size_t segs) {
    return static_cast<std::uint64_t>(segs) +
           static_cast<std::uint64_t>(segs - 1) * pos_bits;
  };

  // seg_cost[i][j): best describe_within total of the slice
  std::vector<std::vector<std::uint64_t>> seg_cost(
      n + 1, std::vector<std::uint64_t>(n + 1, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const auto* e = atlas.find(alpha.slice(i, j - i));
      if (e) seg_cost[i][j] = e->best.total;
    }
  }

  const std::size_t smax = std::min(max_segments, n);
  // suffix[i][s]: min content cost covering [i, n) with exactly s segments
  std::vector<std::vector<std::uint64_t>> suffix(
      n + 1, std::vector<std::uint64_t>(smax + 1, kInf));
  suffix[n][0] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t s = 1; s <= smax; ++s) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (seg_cost[i][j] >= kInf || suffix[j][s - 1] >= kInf) continue;
        suffix[i][s] = std::min(suffix[i][s], seg_cost[i][j] + suffix[j][s - 1]);
      }
    }
  }

  std::size_t best_s = 0;
  std::uint64_t best_total = kInf;
  for (std::size_t s = 1; s <= smax; ++s) {
    if (suffix[0][s] >= kInf) continue;
    std::uint64_t total = suffix[0][s] + cut_cost(s);
    if (total < best_total) {  // ties keep the smaller s
      best_total = total;
      best_s = s;
    }
  }
  if (best_s == 0) return std::nullopt;

  SegmentationResult r;
  r.segmentation.boundaries.push_back(0);
  std::size_t i = 0;
  for (std::size_t s = best_s; s >= 1; --s) {
    for (std::size_t j = i + 1; j <= n; ++j) {  // leftmost feasible cut
      if (seg_cost[i][j] < kInf && suffix[j][s - 1] < kInf &&
          seg_cost[i][j] + suffix[j][s - 1] == suffix[i][s]) {
        const auto* e = atlas.find(alpha.slice(i, j - i));
        r.parts.push_back(DescriptionWithin{e->best.code_program(),
                                            e->best.delta_bits(),
                                            e->best.total});
        r.content_bits += e->best.total;
        r.segmentation.boundaries.push_back(j);
        i = j;
        break;
      }
    }
  }
  r.cut_cost_bits = cut_cost(best_s);
  r.total_bits = r.content_bits + r.cut_cost_bits;
  return r;
}

}  // namespace mdlab
