#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdlab/bitstring.hpp"
#include "mdlab/budget.hpp"
#include "mdlab/dyadic.hpp"
#include "mdlab/program.hpp"
#include "mdlab/representation.hpp"
#include "mdlab/worlds.hpp"

namespace mdlab {

// Interaction record y_1 x_1 ... y_{k-1} x_{k-1}. Actions go on the data
// tape, percepts on the output tape, fixed widths from the world spec.
struct History {
  WorldSpec spec;
  std::vector<BitString> actions;
  std::vector<Percept> percepts;

  std::size_t rounds() const { return actions.size(); }
  BitString action_bits() const;
  BitString percept_bits() const;
  void append(const BitString& action, const Percept& percept);
};

// An environment model: a program whose run on the encoded action history
// reproduces the encoded percept history. A run counts as a replay when it
// consumes every action bit and either halts or ends at a read past the
// data end (the chronological case), with the known percepts as an output
// prefix; halting mid-tape or a step-limit cutoff disqualify it.
struct EnvModel {
  Program q;
  BitString replayed_output;
  std::uint64_t steps_used = 0;
};

// Runs `q` behind `prefix` on `data`; returns the output slice
// [expect.size(), expect.size()+predict_bits) when the run is a valid
// replay with at least that much output, nullopt otherwise.
std::optional<BitString> model_response(const Program& prefix,
                                        const Program& q,
                                        const BitString& data,
                                        const BitString& expect,
                                        std::size_t predict_bits,
                                        std::uint64_t step_limit);

// Every program within the budget consistent with the history, in
// enumeration order (shortest first). Empty means budget exhaustion.
std::vector<EnvModel> consistent_models(const History& history,
                                        const Budget& budget,
                                        std::uint64_t* examined = nullptr,
                                        int workers = 1);

struct PlanResult {
  BitString action;                // the chosen next action
  std::vector<BitString> plan;     // the whole chosen chain
  Dyadic value;                    // mixture (or single-model) chain value
  std::uint64_t models_examined = 0;
  std::uint64_t models_consistent = 0;
  std::uint64_t chains_enumerated = 0;
};

// Expectimax over action chains of `lookahead` future rounds, environment
// responses mixed over all consistent models with weights 2^-l(q).
// lookahead 0 degenerates to the lexicographically smallest action.
// nullopt signals budget exhaustion (no consistent model).
std::optional<PlanResult> aixi_action(const History& history,
                                      std::size_t lookahead,
                                      const Budget& budget, int workers = 1);

// Same search under the single shortest consistent model.
std::optional<PlanResult> best_model_action(const History& history,
                                            std::size_t lookahead,
                                            const Budget& budget,
                                            int workers = 1);

// Chain search under the shortest consistent model, returning the whole
// plan (identical maximand and tie-break as best_model_action).
std::optional<PlanResult> direct_action_search(const History& history,
                                               std::size_t lookahead,
                                               const Budget& budget,
                                               int workers = 1);

// Chain search under an explicitly supplied model.
PlanResult plan_with_model(const Program& q, const History& history,
                           std::size_t lookahead, std::uint64_t step_limit);

// Per-segment model search: segment i must be replayed from its own
// rounds' actions, with the shared prefix S prepended to every candidate.
// `boundaries` are round indices 0 = b_0 < ... < b_n = rounds().
struct SegmentModels {
  std::vector<std::optional<EnvModel>> models;
  std::vector<std::uint64_t> examined;  // candidates per segment
  std::uint64_t total_examined = 0;
};
SegmentModels decomposed_models(const History& history,
                                const Representation& S,
                                const std::vector<std::size_t>& boundaries,
                                const Budget& budget);

// Scans only the programs of exactly `code_bits` bits for a replay of
// data -> target behind S; counts every candidate (no early stop).
struct ExactClassScan {
  std::optional<EnvModel> first;
  std::uint64_t candidates = 0;
};
ExactClassScan scan_exact_class(const Representation& S,
                                const BitString& data,
                                const BitString& target,
                                std::uint32_t code_bits,
                                std::uint64_t step_limit);

// Predicts the next model of a sequence: describes the concatenated model
// codes by a two-part code, then looks for the cheapest data extension that
// makes the witness emit one more code-sized block. All model codes must
// share one length.
std::optional<Program> extrapolate_models(const std::vector<EnvModel>& models,
                                          const Budget& budget,
                                          int workers = 1);

// ----- generalized (macro) actions -----

struct GeneralizedAction {
  std::string name;
  std::vector<BitString> expansion;  // non-empty elementary action sequence
};

struct MacroAlphabet {
  std::vector<GeneralizedAction> actions;
  std::uint32_t symbol_bits() const;
  std::size_t expansion_rounds() const;  // uniform across the alphabet
};

// Macro chains covering `rounds` rounds must not outnumber elementary
// chains of the same span.
bool macro_alphabet_admissible(const MacroAlphabet& alphabet,
                               const WorldSpec& spec, std::size_t rounds);

// The identity alphabet: one macro per elementary action.
MacroAlphabet identity_alphabet(const WorldSpec& spec);

struct GeneralizedPlan {
  std::size_t macro = 0;                 // index of the chosen macro
  std::vector<std::size_t> plan;         // the full macro chain
  std::uint64_t chains_enumerated = 0;
  std::uint64_t models_examined = 0;
  Program model;                         // the q_opt used
};

// Eq-12-style search in the macro alphabet: the model reads macro symbol
// bits and must replay all per-round percepts. `history` must decompose
// into whole macro expansions. When `given_model` is set it is used as
// q_opt after a replay check; otherwise the shortest consistent model is
// searched within the budget.
std::optional<GeneralizedPlan> generalized_action_search(
    const History& history, const MacroAlphabet& alphabet,
    std::size_t lookahead_macros, const Budget& budget,
    const Program* given_model = nullptr);

// Encodes a history as macro symbols; nullopt when the action sequence is
// not a concatenation of alphabet expansions.
std::optional<std::vector<std::size_t>> macro_encode(
    const History& history, const MacroAlphabet& alphabet);

// ----- search-cost closed forms -----

struct SearchCost {
  std::uint64_t full = 0;        // 2^l(S) * prod 2^l(q_i)
  std::uint64_t decomposed = 0;  // 2^l(S) * sum 2^l(q_i)
};
SearchCost search_cost_report(std::uint32_t l_s,
                              const std::vector<std::uint32_t>& model_lengths);

// ----- episodes -----

enum class PlannerKind { Aixi, BestModel, DirectChain };

struct EpisodeStep {
  std::size_t k = 0;
  BitString action;
  BitString obs;
  int reward = 0;
  int cumulative = 0;
  std::uint64_t models_examined = 0;
};

struct EpisodeLog {
  WorldSpec spec;
  std::vector<EpisodeStep> steps;
  int total_reward = 0;
  bool budget_exhausted = false;  // a step found no consistent model
};

EpisodeLog run_episode(const World& world, PlannerKind planner,
                       std::size_t episode_len, std::size_t lookahead,
                       const Budget& budget, int workers = 1);

}  // namespace mdlab
