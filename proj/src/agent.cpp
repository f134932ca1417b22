#include "mdlab/agent.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "mdlab/exec_core.hpp"
#include "mdlab/machine.hpp"
#include "mdlab/parallel.hpp"

namespace mdlab {

BitString History::action_bits() const {
  BitString b;
  for (const auto& a : actions) b.append(a);
  return b;
}

BitString History::percept_bits() const {
  BitString b;
  for (const auto& p : percepts) {
    b.append(p.obs);
    b.push_back(p.reward & 1);
  }
  return b;
}

void History::append(const BitString& action, const Percept& percept) {
  actions.push_back(action);
  percepts.push_back(percept);
}

namespace {

// Replay rule shared by consistency checks and predictions: every data bit
// consumed, the run halted or died reading past the data end, the known
// output prefix reproduced, and at least `needed` output bits present.
bool valid_replay(const ExecCore::Outcome& o, std::size_t out_len,
                  std::size_t data_len, std::size_t needed) {
  if (o.filtered) return false;
  if (o.status == RunStatus::StepLimitExceeded) return false;
  if (o.status == RunStatus::Invalid &&
      o.invalid_kind != InvalidKind::ReadPastEnd) {
    return false;
  }
  return o.reads == data_len && out_len >= needed;
}

// Iterates every program of length <= max_code_bits (optionally behind a
// fixed prefix), skipping unbalanced jump patterns, single-threaded.
template <class Fn>
void scan_program_space(std::uint32_t max_code_bits,
                        const std::vector<std::uint8_t>* prefix_ops, Fn&& fn) {
  std::vector<std::uint8_t> ops;
  std::vector<std::int32_t> pairs;
  const std::size_t n_prefix = prefix_ops ? prefix_ops->size() : 0;
  for (std::uint32_t nb = 0; nb <= max_code_bits; nb += kOpcodeBits) {
    const std::size_t k_ops = nb / kOpcodeBits;
    ops.assign(n_prefix + k_ops, 0);
    if (n_prefix) std::memcpy(ops.data(), prefix_ops->data(), n_prefix);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << nb); ++v) {
      for (std::size_t i = 0; i < k_ops; ++i) {
        ops[n_prefix + k_ops - 1 - i] =
            static_cast<std::uint8_t>((v >> (3 * i)) & 7u);
      }
      bool balanced = match_jumps(ops.data(), ops.size(), pairs);
      if (!fn(nb, v, ops, pairs, balanced)) return;
    }
  }
}

BitString vec_slice(const std::vector<std::uint8_t>& v, std::size_t begin,
                    std::size_t len) {
  BitString b = BitString::zeros(len);
  for (std::size_t i = 0; i < len; ++i) b.set_bit(i, v[begin + i]);
  return b;
}

int reward_sum(const std::vector<std::uint8_t>& out, std::size_t from,
               std::size_t rounds, const WorldSpec& spec) {
  int total = 0;
  for (std::size_t r = 0; r < rounds; ++r) {
    total += out[from + r * spec.percept_bits() + spec.obs_bits];
  }
  return total;
}

std::vector<BitString> all_chains_bits(const WorldSpec& spec,
                                       std::size_t lookahead) {
  std::vector<BitString> chains;
  const std::uint64_t n =
      std::uint64_t{1} << (spec.action_bits * lookahead);
  chains.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) {
    chains.push_back(BitString::from_uint(c, spec.action_bits * lookahead));
  }
  return chains;
}

std::vector<BitString> chain_actions(const BitString& chain,
                                     const WorldSpec& spec) {
  std::vector<BitString> acts;
  for (std::size_t i = 0; i + spec.action_bits <= chain.size();
       i += spec.action_bits) {
    acts.push_back(chain.slice(i, spec.action_bits));
  }
  return acts;
}

}  // namespace

std::optional<BitString> model_response(const Program& prefix,
                                        const Program& q,
                                        const BitString& data,
                                        const BitString& expect,
                                        std::size_t predict_bits,
                                        std::uint64_t step_limit) {
  std::vector<std::uint8_t> ops = prefix.ops();
  ops.insert(ops.end(), q.ops().begin(), q.ops().end());
  std::vector<std::int32_t> pairs;
  if (!match_jumps(ops.data(), ops.size(), pairs)) return std::nullopt;
  static thread_local ExecCore core;
  auto o = core.run(ops.data(), pairs.data(), ops.size(), data, step_limit,
                    &expect);
  std::size_t needed = expect.size() + predict_bits;
  if (!valid_replay(o, core.out().size(), data.size(), needed)) {
    return std::nullopt;
  }
  return vec_slice(core.out(), expect.size(), predict_bits);
}

std::vector<EnvModel> consistent_models(const History& history,
                                        const Budget& budget,
                                        std::uint64_t* examined,
                                        int workers) {
  (void)workers;
  const BitString y = history.action_bits();
  const BitString x = history.percept_bits();
  std::vector<EnvModel> models;
  std::uint64_t count = 0;
  ExecCore core;
  scan_program_space(
      budget.max_code_bits, nullptr,
      [&](std::uint32_t nb, std::uint64_t v,
          const std::vector<std::uint8_t>& ops,
          const std::vector<std::int32_t>& pairs, bool balanced) {
        ++count;
        if (!balanced) return true;
        auto o = core.run(ops.data(), pairs.data(), ops.size(), y,
                          budget.step_limit, &x);
        if (valid_replay(o, core.out().size(), y.size(), x.size())) {
          models.push_back(EnvModel{
              Program::from_index(nb / kOpcodeBits, v),
              bits_from_vec(core.out()), o.steps});
        }
        return true;
      });
  if (examined) *examined = count;
  return models;
}

namespace {

// Streaming mixture pass: never materializes the model set.
struct MixtureAccumulator {
  std::vector<Dyadic> chain_value;
  std::uint64_t consistent = 0;
};

std::optional<PlanResult> plan_mixture(const History& history,
                                       std::size_t lookahead,
                                       const Budget& budget, int workers) {
  const WorldSpec& spec = history.spec;
  const BitString y = history.action_bits();
  const BitString x = history.percept_bits();
  const auto chains = all_chains_bits(spec, lookahead);
  const std::size_t predict = lookahead * spec.percept_bits();

  std::vector<MixtureAccumulator> acc(resolve_workers(workers) + 1);
  std::uint64_t examined = 0;
  for (std::uint32_t nb = 0; nb <= budget.max_code_bits; nb += kOpcodeBits) {
    const std::uint64_t n_codes = std::uint64_t{1} << nb;
    parallel_chunks(
        n_codes, workers,
        [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
          auto& local = acc[chunk];
          local.chain_value.assign(chains.size(), Dyadic::zero());
          local.consistent = 0;
          ExecCore core;
          const std::size_t k_ops = nb / kOpcodeBits;
          std::vector<std::uint8_t> ops(k_ops);
          std::vector<std::int32_t> pairs;
          for (std::uint64_t v = begin; v < end; ++v) {
            bool has_out = false, has_read = false;
            for (std::size_t i = 0; i < k_ops; ++i) {
              ops[k_ops - 1 - i] =
                  static_cast<std::uint8_t>((v >> (3 * i)) & 7u);
              has_out |= ops[k_ops - 1 - i] == kOut;
              has_read |= ops[k_ops - 1 - i] == kRead;
            }
            if (!match_jumps(ops.data(), ops.size(), pairs)) continue;
            auto o = core.run(ops.data(), pairs.data(), ops.size(), y,
                              budget.step_limit, &x);
            if (!valid_replay(o, core.out().size(), y.size(), x.size())) {
              continue;
            }
            ++local.consistent;
            // a chain response must consume the planned actions and emit
            // their percepts; programs lacking READ or OUT cannot
            if (!has_out || !has_read) continue;
            for (std::size_t c = 0; c < chains.size(); ++c) {
              BitString data = concat(y, chains[c]);
              auto oc = core.run(ops.data(), pairs.data(), ops.size(), data,
                                 budget.step_limit, &x);
              if (!valid_replay(oc, core.out().size(), data.size(),
                                x.size() + predict)) {
                continue;
              }
              int r = reward_sum(core.out(), x.size(), lookahead, spec);
              if (r > 0) {
                Dyadic w = Dyadic::pow2_neg(nb);
                w *= static_cast<std::uint64_t>(r);
                local.chain_value[c] += w;
              }
            }
          }
        },
        [&](std::uint64_t) {});
    examined += n_codes;
  }

  // exact addition commutes, so any chunk/worker split lands here equal
  std::vector<Dyadic> value(chains.size(), Dyadic::zero());
  std::uint64_t consistent = 0;
  for (auto& a : acc) {
    if (a.chain_value.empty()) continue;
    for (std::size_t c = 0; c < chains.size(); ++c)
      value[c] += a.chain_value[c];
    consistent += a.consistent;
  }
  if (consistent == 0) return std::nullopt;

  std::size_t best = 0;
  for (std::size_t c = 1; c < chains.size(); ++c) {
    if (value[best] < value[c]) best = c;
  }
  PlanResult r;
  r.plan = chain_actions(chains[best], spec);
  r.action = r.plan.front();
  r.value = value[best];
  r.models_examined = examined;
  r.models_consistent = consistent;
  r.chains_enumerated = chains.size();
  return r;
}

BitString lex_smallest_action(const WorldSpec& spec) {
  return BitString::zeros(spec.action_bits);
}

std::optional<EnvModel> shortest_consistent(const History& history,
                                            const Budget& budget,
                                            std::uint64_t* examined) {
  const BitString y = history.action_bits();
  const BitString x = history.percept_bits();
  std::optional<EnvModel> found;
  std::uint64_t count = 0;
  ExecCore core;
  scan_program_space(
      budget.max_code_bits, nullptr,
      [&](std::uint32_t nb, std::uint64_t v,
          const std::vector<std::uint8_t>& ops,
          const std::vector<std::int32_t>& pairs, bool balanced) {
        ++count;
        if (!balanced) return true;
        auto o = core.run(ops.data(), pairs.data(), ops.size(), y,
                          budget.step_limit, &x);
        if (valid_replay(o, core.out().size(), y.size(), x.size())) {
          found = EnvModel{Program::from_index(nb / kOpcodeBits, v),
                           bits_from_vec(core.out()), o.steps};
          return false;  // enumeration order == the shared tie-break
        }
        return true;
      });
  if (examined) *examined = count;
  return found;
}

}  // namespace

std::optional<PlanResult> aixi_action(const History& history,
                                      std::size_t lookahead,
                                      const Budget& budget, int workers) {
  if (lookahead == 0) {
    PlanResult r;
    r.action = lex_smallest_action(history.spec);
    r.plan = {r.action};
    return r;
  }
  return plan_mixture(history, lookahead, budget, workers);
}

PlanResult plan_with_model(const Program& q, const History& history,
                           std::size_t lookahead, std::uint64_t step_limit) {
  const WorldSpec& spec = history.spec;
  PlanResult r;
  if (lookahead == 0) {
    r.action = lex_smallest_action(spec);
    r.plan = {r.action};
    return r;
  }
  const BitString y = history.action_bits();
  const BitString x = history.percept_bits();
  const auto chains = all_chains_bits(spec, lookahead);
  const std::size_t predict = lookahead * spec.percept_bits();
  std::size_t best = 0;
  Dyadic best_value = Dyadic::zero();
  bool have = false;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    Dyadic v = Dyadic::zero();
    auto resp = model_response(Program(), q, concat(y, chains[c]), x, predict,
                               step_limit);
    if (resp) {
      int total = 0;
      for (std::size_t round = 0; round < lookahead; ++round) {
        total += resp->bit(round * spec.percept_bits() + spec.obs_bits);
      }
      v = Dyadic{static_cast<std::uint64_t>(total), 0};
    }
    if (!have || best_value < v) {
      have = true;
      best = c;
      best_value = v;
    }
  }
  r.plan = chain_actions(chains[best], spec);
  r.action = r.plan.front();
  r.value = best_value;
  r.chains_enumerated = chains.size();
  return r;
}

std::optional<PlanResult> best_model_action(const History& history,
                                            std::size_t lookahead,
                                            const Budget& budget,
                                            int workers) {
  (void)workers;
  if (lookahead == 0) {
    PlanResult r;
    r.action = lex_smallest_action(history.spec);
    r.plan = {r.action};
    return r;
  }
  std::uint64_t examined = 0;
  auto q_opt = shortest_consistent(history, budget, &examined);
  if (!q_opt) return std::nullopt;
  PlanResult r = plan_with_model(q_opt->q, history, lookahead,
                                 budget.step_limit);
  r.models_examined = examined;
  r.models_consistent = 1;
  return r;
}

std::optional<PlanResult> direct_action_search(const History& history,
                                               std::size_t lookahead,
                                               const Budget& budget,
                                               int workers) {
  return best_model_action(history, lookahead, budget, workers);
}

SegmentModels decomposed_models(const History& history,
                                const Representation& S,
                                const std::vector<std::size_t>& boundaries,
                                const Budget& budget) {
  SegmentModels result;
  const WorldSpec& spec = history.spec;
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    std::size_t from = boundaries[i], to = boundaries[i + 1];
    History segment;
    segment.spec = spec;
    for (std::size_t r = from; r < to; ++r) {
      segment.append(history.actions[r], history.percepts[r]);
    }
    const BitString y = segment.action_bits();
    const BitString x = segment.percept_bits();
    std::optional<EnvModel> found;
    std::uint64_t count = 0;
    ExecCore core;
    scan_program_space(
        budget.max_code_bits, &S.code.ops(),
        [&](std::uint32_t nb, std::uint64_t v,
            const std::vector<std::uint8_t>& ops,
            const std::vector<std::int32_t>& pairs, bool balanced) {
          ++count;
          if (!balanced) return true;
          auto o = core.run(ops.data(), pairs.data(), ops.size(), y,
                            budget.step_limit, &x);
          if (valid_replay(o, core.out().size(), y.size(), x.size())) {
            found = EnvModel{Program::from_index(nb / kOpcodeBits, v),
                             bits_from_vec(core.out()), o.steps};
            return false;
          }
          return true;
        });
    result.models.push_back(found);
    result.examined.push_back(count);
    result.total_examined += count;
  }
  return result;
}

ExactClassScan scan_exact_class(const Representation& S,
                                const BitString& data,
                                const BitString& target,
                                std::uint32_t code_bits,
                                std::uint64_t step_limit) {
  ExactClassScan result;
  const std::size_t k_ops = code_bits / kOpcodeBits;
  const std::size_t n_prefix = S.code.ops().size();
  std::vector<std::uint8_t> ops(n_prefix + k_ops);
  if (n_prefix) std::memcpy(ops.data(), S.code.ops().data(), n_prefix);
  std::vector<std::int32_t> pairs;
  ExecCore core;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << code_bits); ++v) {
    ++result.candidates;
    for (std::size_t i = 0; i < k_ops; ++i) {
      ops[n_prefix + k_ops - 1 - i] =
          static_cast<std::uint8_t>((v >> (3 * i)) & 7u);
    }
    if (!match_jumps(ops.data(), ops.size(), pairs)) continue;
    auto o = core.run(ops.data(), pairs.data(), ops.size(), data, step_limit,
                      &target);
    if (valid_replay(o, core.out().size(), data.size(), target.size()) &&
        !result.first) {
      result.first =
          EnvModel{Program::from_index(k_ops, v), bits_from_vec(core.out()),
                   o.steps};
    }
  }
  return result;
}

std::optional<Program> extrapolate_models(const std::vector<EnvModel>& models,
                                          const Budget& budget, int workers) {
  if (models.empty()) return std::nullopt;
  const std::size_t block = models[0].q.length_bits();
  BitString target;
  for (const auto& m : models) {
    if (m.q.length_bits() != block) return std::nullopt;
    target.append(m.q.code());
  }
  auto tp = best_two_part(target, budget, workers);
  if (!tp) return std::nullopt;

  // cheapest data extension that makes the same witness emit one more block
  const std::size_t needed = target.size() + block;
  ExecCore core;
  std::optional<std::pair<BitString, BitString>> best;  // (delta, block)
  core.scan_descriptions(
      tp->mu.ops().data(), tp->mu.jump_pairs().data(), tp->mu.n_ops(),
      budget.max_data_bits, 2 * budget.step_limit, &target, needed,
      [&](const std::vector<std::uint8_t>& delta,
          const std::vector<std::uint8_t>& out, std::uint64_t) {
        if (out.size() != needed) return;
        BitString d = bits_from_vec(delta);
        if (!best || canonical_less(d, best->first)) {
          best = {d, vec_slice(out, target.size(), block)};
        }
      });
  if (!best) return std::nullopt;
  auto p = Program::from_bits(best->second);
  if (!p) return std::nullopt;
  return *p;
}

std::uint32_t MacroAlphabet::symbol_bits() const {
  std::uint32_t bits = 1;
  while ((std::size_t{1} << bits) < actions.size()) ++bits;
  return bits;
}

std::size_t MacroAlphabet::expansion_rounds() const {
  return actions.empty() ? 0 : actions[0].expansion.size();
}

bool macro_alphabet_admissible(const MacroAlphabet& alphabet,
                               const WorldSpec& spec, std::size_t rounds) {
  if (alphabet.actions.empty()) return false;
  const std::size_t w = alphabet.actions[0].expansion.size();
  for (const auto& a : alphabet.actions) {
    if (a.expansion.empty() || a.expansion.size() != w) return false;
  }
  if (rounds % w != 0) return false;
  // chains over the span: |P|^(rounds/w) vs (2^action_bits)^rounds
  long double macro = 1, elem = 1;
  for (std::size_t i = 0; i < rounds / w; ++i) {
    macro *= static_cast<long double>(alphabet.actions.size());
  }
  for (std::size_t i = 0; i < rounds; ++i) {
    elem *= static_cast<long double>(std::uint64_t{1} << spec.action_bits);
  }
  return macro <= elem;
}

MacroAlphabet identity_alphabet(const WorldSpec& spec) {
  MacroAlphabet a;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << spec.action_bits); ++v) {
    a.actions.push_back(GeneralizedAction{
        "a" + std::to_string(v), {BitString::from_uint(v, spec.action_bits)}});
  }
  return a;
}

std::optional<std::vector<std::size_t>> macro_encode(
    const History& history, const MacroAlphabet& alphabet) {
  const std::size_t w = alphabet.expansion_rounds();
  if (w == 0 || history.rounds() % w != 0) return std::nullopt;
  std::vector<std::size_t> symbols;
  for (std::size_t at = 0; at < history.rounds(); at += w) {
    bool matched = false;
    for (std::size_t m = 0; m < alphabet.actions.size(); ++m) {
      bool eq = true;
      for (std::size_t i = 0; i < w; ++i) {
        if (!(history.actions[at + i] == alphabet.actions[m].expansion[i])) {
          eq = false;
          break;
        }
      }
      if (eq) {
        symbols.push_back(m);
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return symbols;
}

namespace {

BitString symbols_to_bits(const std::vector<std::size_t>& symbols,
                          std::uint32_t symbol_bits) {
  BitString b;
  for (std::size_t s : symbols) {
    b.append(BitString::from_uint(static_cast<std::uint64_t>(s), symbol_bits));
  }
  return b;
}

}  // namespace

std::optional<GeneralizedPlan> generalized_action_search(
    const History& history, const MacroAlphabet& alphabet,
    std::size_t lookahead_macros, const Budget& budget,
    const Program* given_model) {
  const WorldSpec& spec = history.spec;
  auto symbols = macro_encode(history, alphabet);
  if (!symbols) return std::nullopt;
  const std::uint32_t sbits = alphabet.symbol_bits();
  const std::size_t w = alphabet.expansion_rounds();
  const BitString p_bits = symbols_to_bits(*symbols, sbits);
  const BitString x = history.percept_bits();

  GeneralizedPlan plan;
  std::optional<Program> q_opt;
  if (given_model) {
    // supplied model still has to replay the macro history
    if (!model_response(Program(), *given_model, p_bits, x, 0,
                        budget.step_limit)) {
      return std::nullopt;
    }
    q_opt = *given_model;
  } else {
    ExecCore core;
    std::uint64_t count = 0;
    scan_program_space(
        budget.max_code_bits, nullptr,
        [&](std::uint32_t nb, std::uint64_t v,
            const std::vector<std::uint8_t>& ops,
            const std::vector<std::int32_t>& pairs, bool balanced) {
          ++count;
          if (!balanced) return true;
          auto o = core.run(ops.data(), pairs.data(), ops.size(), p_bits,
                            budget.step_limit, &x);
          if (valid_replay(o, core.out().size(), p_bits.size(), x.size())) {
            q_opt = Program::from_index(nb / kOpcodeBits, v);
            return false;
          }
          return true;
        });
    plan.models_examined = count;
    if (!q_opt) return std::nullopt;
  }
  plan.model = *q_opt;

  if (lookahead_macros == 0) {
    plan.macro = 0;
    plan.plan = {0};
    return plan;
  }

  const std::size_t predict = lookahead_macros * w * spec.percept_bits();
  std::uint64_t n_chains = 1;
  for (std::size_t i = 0; i < lookahead_macros; ++i) {
    n_chains *= alphabet.actions.size();
  }
  std::vector<std::size_t> best_chain;
  int best_value = -1;
  std::vector<std::size_t> chain(lookahead_macros, 0);
  for (std::uint64_t c = 0; c < n_chains; ++c) {
    std::uint64_t tmp = c;
    for (std::size_t i = lookahead_macros; i-- > 0;) {
      chain[i] = tmp % alphabet.actions.size();
      tmp /= alphabet.actions.size();
    }
    BitString data = concat(p_bits, symbols_to_bits(chain, sbits));
    auto resp = model_response(Program(), *q_opt, data, x, predict,
                               budget.step_limit);
    int value = 0;
    if (resp) {
      for (std::size_t round = 0; round < lookahead_macros * w; ++round) {
        value += resp->bit(round * spec.percept_bits() + spec.obs_bits);
      }
    }
    if (value > best_value) {
      best_value = value;
      best_chain = chain;
    }
  }
  plan.macro = best_chain.front();
  plan.plan = best_chain;
  plan.chains_enumerated = n_chains;
  return plan;
}

SearchCost search_cost_report(
    std::uint32_t l_s, const std::vector<std::uint32_t>& model_lengths) {
  if (model_lengths.empty()) throw std::invalid_argument("no model lengths");
  auto pow2 = [](std::uint64_t e) {
    if (e >= 63) throw std::overflow_error("search cost");
    return std::uint64_t{1} << e;
  };
  SearchCost c;
  std::uint64_t total_exp = l_s;
  std::uint64_t sum = 0;
  for (std::uint32_t l : model_lengths) {
    total_exp += l;
    sum += pow2(l);
  }
  c.full = pow2(total_exp);
  if (sum > UINT64_MAX >> l_s) throw std::overflow_error("search cost");
  c.decomposed = sum << l_s;
  return c;
}

EpisodeLog run_episode(const World& world, PlannerKind planner,
                       std::size_t episode_len, std::size_t lookahead,
                       const Budget& budget, int workers) {
  EpisodeLog log;
  log.spec = world.spec();
  History h;
  h.spec = world.spec();
  for (std::size_t k = 1; k <= episode_len; ++k) {
    std::optional<PlanResult> plan;
    switch (planner) {
      case PlannerKind::Aixi:
        plan = aixi_action(h, lookahead, budget, workers);
        break;
      case PlannerKind::BestModel:
        plan = best_model_action(h, lookahead, budget, workers);
        break;
      case PlannerKind::DirectChain:
        plan = direct_action_search(h, lookahead, budget, workers);
        break;
    }
    if (!plan) {
      log.budget_exhausted = true;
      break;
    }
    h.actions.push_back(plan->action);
    Percept p = world.percept(k, h.actions);
    h.percepts.push_back(p);
    log.total_reward += p.reward;
    log.steps.push_back(EpisodeStep{k, plan->action, p.obs, p.reward,
                                    log.total_reward,
                                    plan->models_examined});
  }
  return log;
}

}  // namespace mdlab
