#include "mdlab/complexity.hpp"

#include <algorithm>
#include <cstring>

#include "mdlab/exec_core.hpp"
#include "mdlab/parallel.hpp"

namespace mdlab {

BitString FoundDesc::delta_bits() const { return bits_from_vec(delta); }

bool desc_better(const FoundDesc& a, const FoundDesc& b) {
  if (!a.valid || !b.valid) return a.valid;
  if (a.total != b.total) return a.total < b.total;
  if (a.code_bits != b.code_bits) return a.code_bits < b.code_bits;
  if (a.code_value != b.code_value) return a.code_value < b.code_value;
  return std::lexicographical_compare(a.delta.begin(), a.delta.end(),
                                      b.delta.begin(), b.delta.end());
}

namespace {

void decode_digits(std::uint64_t value, std::size_t n_ops, std::uint8_t* out) {
  for (std::size_t i = 0; i < n_ops; ++i) {
    out[n_ops - 1 - i] = static_cast<std::uint8_t>(value & 7u);
    value >>= 3;
  }
}

struct SearchSpec {
  const std::vector<std::uint8_t>* prefix_ops = nullptr;
  Budget budget;
  const BitString* target = nullptr;  // null: no filter (atlas mode)
  int workers = 1;
};

// Scans one code-length class, calling `on_leaf(code_value, delta, out,
// steps)` for every halting exact-consumption run. `max_data` may be
// tightened by the caller for pruning.
template <class OnLeaf>
void scan_class(const SearchSpec& spec, std::uint32_t code_bits,
                std::uint32_t max_data, std::uint64_t chunk_begin,
                std::uint64_t chunk_end, ExecCore& core, OnLeaf&& on_leaf) {
  const std::size_t n_prefix = spec.prefix_ops ? spec.prefix_ops->size() : 0;
  const std::size_t k_ops = code_bits / kOpcodeBits;
  std::vector<std::uint8_t> ops(n_prefix + k_ops);
  if (n_prefix) {
    std::memcpy(ops.data(), spec.prefix_ops->data(), n_prefix);
  }
  std::vector<std::int32_t> pairs;
  const std::size_t out_cap =
      spec.target ? spec.target->size() : SIZE_MAX;
  for (std::uint64_t v = chunk_begin; v < chunk_end; ++v) {
    decode_digits(v, k_ops, ops.data() + n_prefix);
    if (!match_jumps(ops.data(), ops.size(), pairs)) continue;
    core.scan_descriptions(
        ops.data(), pairs.data(), ops.size(), max_data,
        spec.budget.step_limit, spec.target, out_cap,
        [&](const std::vector<std::uint8_t>& delta,
            const std::vector<std::uint8_t>& out, std::uint64_t steps) {
          on_leaf(v, delta, out, steps);
        });
  }
}

FoundDesc find_best(const SearchSpec& spec, std::uint64_t* examined) {
  FoundDesc best;
  std::uint64_t total_examined = 0;
  for (std::uint32_t nb = 0; nb <= spec.budget.max_code_bits;
       nb += kOpcodeBits) {
    if (best.valid && nb >= best.total) break;
    std::uint32_t max_data = spec.budget.max_data_bits;
    if (best.valid) {
      // equal totals lose to the earlier (shorter-code) witness
      std::uint64_t room = best.total - nb;
      if (room == 0) break;
      max_data = std::min<std::uint64_t>(max_data, room - 1);
    }
    const std::uint64_t n_codes = std::uint64_t{1} << nb;
    std::vector<FoundDesc> chunk_best(resolve_workers(spec.workers) + 1);
    parallel_chunks(
        n_codes, spec.workers,
        [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
          ExecCore core;
          FoundDesc local;
          scan_class(spec, nb, max_data, begin, end, core,
                     [&](std::uint64_t v, const std::vector<std::uint8_t>& d,
                         const std::vector<std::uint8_t>& out,
                         std::uint64_t) {
                       if (out.size() != spec.target->size()) return;
                       FoundDesc cand{true, nb + d.size(), nb, v, d};
                       if (desc_better(cand, local)) local = std::move(cand);
                     });
          chunk_best[chunk] = std::move(local);
        },
        [&](std::uint64_t chunk) {
          if (desc_better(chunk_best[chunk], best))
            best = std::move(chunk_best[chunk]);
        });
    total_examined += n_codes;
  }
  if (examined) *examined = total_examined;
  return best;
}

std::vector<FoundDesc> find_k_best(const SearchSpec& spec, std::size_t k,
                                   std::uint64_t* examined) {
  std::vector<FoundDesc> kept;
  auto offer = [&](FoundDesc cand) {
    auto pos = std::lower_bound(
        kept.begin(), kept.end(), cand,
        [](const FoundDesc& a, const FoundDesc& b) { return desc_better(a, b); });
    kept.insert(pos, std::move(cand));
    if (kept.size() > k) kept.pop_back();
  };
  std::uint64_t total_examined = 0;
  for (std::uint32_t nb = 0; nb <= spec.budget.max_code_bits;
       nb += kOpcodeBits) {
    if (kept.size() == k && nb > kept.back().total) break;
    const std::uint64_t n_codes = std::uint64_t{1} << nb;
    std::vector<std::vector<FoundDesc>> chunk_lists(
        resolve_workers(spec.workers) + 1);
    parallel_chunks(
        n_codes, spec.workers,
        [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
          ExecCore core;
          auto& local = chunk_lists[chunk];
          scan_class(spec, nb, spec.budget.max_data_bits, begin, end, core,
                     [&](std::uint64_t v, const std::vector<std::uint8_t>& d,
                         const std::vector<std::uint8_t>& out,
                         std::uint64_t) {
                       if (out.size() != spec.target->size()) return;
                       FoundDesc cand{true, nb + d.size(), nb, v, d};
                       auto pos = std::lower_bound(
                           local.begin(), local.end(), cand,
                           [](const FoundDesc& a, const FoundDesc& b) {
                             return desc_better(a, b);
                           });
                       local.insert(pos, std::move(cand));
                       if (local.size() > k) local.pop_back();
                     });
        },
        [&](std::uint64_t chunk) {
          for (auto& cand : chunk_lists[chunk]) offer(std::move(cand));
        });
    total_examined += n_codes;
  }
  if (examined) *examined = total_examined;
  return kept;
}

ComplexityEstimate to_estimate(const FoundDesc& d, const Budget& budget,
                               std::uint64_t examined) {
  ComplexityEstimate e;
  e.budget = budget;
  e.programs_enumerated = examined;
  if (d.valid) {
    e.found = true;
    e.value_bits = d.total;
    e.witness_code = d.code_program();
    e.witness_data = d.delta_bits();
  }
  return e;
}

}  // namespace

ComplexityEstimate approx_kolmogorov(const BitString& target,
                                     const Budget& budget, int workers) {
  return approx_conditional(target, Program(), budget, workers);
}

ComplexityEstimate approx_conditional(const BitString& target,
                                      const Program& prefix,
                                      const Budget& budget, int workers) {
  SearchSpec spec;
  spec.prefix_ops = &prefix.ops();
  spec.budget = budget;
  spec.target = &target;
  spec.workers = workers;
  std::uint64_t examined = 0;
  FoundDesc best = find_best(spec, &examined);
  return to_estimate(best, budget, examined);
}

std::optional<TwoPartCode> best_two_part(const BitString& target,
                                         const Budget& budget, int workers) {
  ComplexityEstimate e = approx_kolmogorov(target, budget, workers);
  if (!e.found) return std::nullopt;
  return TwoPartCode{e.witness_code, e.witness_data, e.value_bits};
}

std::vector<TwoPartCode> k_best_two_part(const BitString& target,
                                         const Program& prefix,
                                         const Budget& budget, std::size_t k,
                                         int workers) {
  SearchSpec spec;
  spec.prefix_ops = &prefix.ops();
  spec.budget = budget;
  spec.target = &target;
  spec.workers = workers;
  auto found = find_k_best(spec, k, nullptr);
  std::vector<TwoPartCode> out;
  out.reserve(found.size());
  for (const auto& d : found) {
    out.push_back({d.code_program(), d.delta_bits(), d.total});
  }
  return out;
}

ProbabilityEstimate approx_algorithmic_probability(const BitString& target,
                                                   const Budget& budget,
                                                   int workers) {
  SearchSpec spec;
  spec.budget = budget;
  spec.target = &target;
  spec.workers = workers;
  ProbabilityEstimate est;
  est.budget = budget;
  for (std::uint32_t nb = 0; nb <= budget.max_code_bits; nb += kOpcodeBits) {
    const std::uint64_t n_codes = std::uint64_t{1} << nb;
    struct ChunkAcc {
      Dyadic mass;
      std::uint64_t pairs = 0;
    };
    std::vector<ChunkAcc> acc(resolve_workers(workers) + 1);
    parallel_chunks(
        n_codes, workers,
        [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
          ExecCore core;
          ChunkAcc local;
          scan_class(spec, nb, budget.max_data_bits, begin, end, core,
                     [&](std::uint64_t, const std::vector<std::uint8_t>& d,
                         const std::vector<std::uint8_t>& out,
                         std::uint64_t) {
                       if (out.size() != target.size()) return;
                       local.mass += Dyadic::pow2_neg(
                           nb + static_cast<std::uint32_t>(d.size()));
                       ++local.pairs;
                     });
          acc[chunk] = local;
        },
        [&](std::uint64_t chunk) {
          est.mass += acc[chunk].mass;
          est.contributing_pairs += acc[chunk].pairs;
        });
    est.programs_enumerated += n_codes;
  }
  return est;
}

const AtlasEntry* DescriptionAtlas::find(const BitString& output) const {
  auto it = by_output.find(output);
  return it == by_output.end() ? nullptr : &it->second;
}

Dyadic DescriptionAtlas::total_mass() const {
  Dyadic m;
  for (const auto& [_, e] : by_output) m += e.mass;
  return m;
}

Dyadic DescriptionAtlas::class_mass_bound() const {
  Dyadic m;
  for (std::size_t k = 0; k < class_counts.size(); ++k) {
    for (std::size_t d = 0; d < class_counts[k].size(); ++d) {
      Dyadic c = Dyadic::pow2_neg(
          static_cast<std::uint32_t>(k * kOpcodeBits + d));
      c *= class_counts[k][d];
      m += c;
    }
  }
  return m;
}

DescriptionAtlas build_atlas(const Budget& budget,
                             std::uint32_t max_output_bits,
                             const Program* prefix, int workers) {
  DescriptionAtlas atlas;
  atlas.budget = budget;
  atlas.max_output_bits = max_output_bits;
  atlas.class_counts.assign(
      budget.max_code_bits / kOpcodeBits + 1,
      std::vector<std::uint64_t>(budget.max_data_bits + 1, 0));

  SearchSpec spec;
  spec.prefix_ops = prefix ? &prefix->ops() : nullptr;
  spec.budget = budget;
  spec.workers = workers;

  struct Local {
    std::unordered_map<BitString, AtlasEntry, BitStringHash> by_output;
    std::vector<std::uint64_t> class_row;  // counts per data length
    std::uint64_t overflow = 0;
  };
  for (std::uint32_t nb = 0; nb <= budget.max_code_bits; nb += kOpcodeBits) {
    const std::uint64_t n_codes = std::uint64_t{1} << nb;
    std::vector<Local> locals(resolve_workers(workers) + 1);
    parallel_chunks(
        n_codes, workers,
        [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
          ExecCore core;
          Local& local = locals[chunk];
          local.class_row.assign(budget.max_data_bits + 1, 0);
          const std::size_t n_prefix = prefix ? prefix->ops().size() : 0;
          const std::size_t k_ops = nb / kOpcodeBits;
          std::vector<std::uint8_t> ops(n_prefix + k_ops);
          if (n_prefix)
            std::memcpy(ops.data(), prefix->ops().data(), n_prefix);
          std::vector<std::int32_t> pairs;
          for (std::uint64_t v = begin; v < end; ++v) {
            decode_digits(v, k_ops, ops.data() + n_prefix);
            if (!match_jumps(ops.data(), ops.size(), pairs)) continue;
            core.scan_descriptions(
                ops.data(), pairs.data(), ops.size(), budget.max_data_bits,
                budget.step_limit, nullptr, max_output_bits,
                [&](const std::vector<std::uint8_t>& d,
                    const std::vector<std::uint8_t>& out, std::uint64_t) {
                  ++local.class_row[d.size()];
                  FoundDesc cand{true, nb + d.size(), nb, v, d};
                  auto& entry = local.by_output[bits_from_vec(out)];
                  entry.mass += Dyadic::pow2_neg(
                      nb + static_cast<std::uint32_t>(d.size()));
                  ++entry.n_descriptions;
                  if (desc_better(cand, entry.best))
                    entry.best = std::move(cand);
                });
            local.overflow += core.cap_kills();
          }
        },
        [&](std::uint64_t chunk) {
          Local& local = locals[chunk];
          for (auto& [key, e] : local.by_output) {
            auto& entry = atlas.by_output[key];
            entry.mass += e.mass;
            entry.n_descriptions += e.n_descriptions;
            if (desc_better(e.best, entry.best))
              entry.best = std::move(e.best);
          }
          if (!local.class_row.empty()) {
            for (std::uint32_t d = 0; d <= budget.max_data_bits; ++d) {
              atlas.class_counts[nb / kOpcodeBits][d] += local.class_row[d];
            }
          }
          atlas.overflow_kills += local.overflow;
        });
    atlas.programs_examined += n_codes;
  }
  return atlas;
}

}  // namespace mdlab
