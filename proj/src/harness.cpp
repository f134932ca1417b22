#include "mdlab/harness.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "mdlab/agent.hpp"
#include "mdlab/complexity.hpp"
#include "mdlab/hierarchy.hpp"
#include "mdlab/representation.hpp"
#include "mdlab/worlds.hpp"

namespace mdlab::harness {

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Budget parse_budget(const json& j) {
  Budget b;
  b.max_code_bits = j.at("max_code_bits").get<std::uint32_t>();
  b.max_data_bits = j.at("max_data_bits").get<std::uint32_t>();
  b.step_limit = j.at("step_limit").get<std::uint64_t>();
  if (b.step_limit < 1) throw ConfigError("step_limit must be >= 1");
  return b;
}

int parse_workers(const json& cfg) {
  return cfg.value("workers", 1);
}

BitString parse_bits(const std::string& literal, const char* what) {
  auto b = BitString::parse(literal);
  if (!b) throw ConfigError(std::string("bad bitstring literal for ") + what +
                            ": " + literal);
  return *b;
}

Program parse_program(const std::string& literal, const char* what) {
  auto p = Program::from_bits(parse_bits(literal, what));
  if (!p) throw ConfigError(std::string("bad program literal for ") + what +
                            ": " + literal);
  return *p;
}

std::string lit(const BitString& b) { return b.to_string(); }

std::ofstream open_output(const json& cfg) {
  std::string path = cfg.at("output").get<std::string>();
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw ConfigError("cannot open output file: " + path);
  return out;
}

Corpus corpus_from_config(const json& cfg, std::string* seed_note) {
  if (cfg.contains("corpus_file")) {
    auto c = load_corpus(cfg.at("corpus_file").get<std::string>());
    if (!c) {
      throw ConfigError("cannot read corpus file: " +
                        cfg.at("corpus_file").get<std::string>());
    }
    return *c;
  }
  if (cfg.contains("corpus")) {
    Corpus c;
    for (const auto& item : cfg.at("corpus")) {
      c.items.push_back(parse_bits(item.get<std::string>(), "corpus item"));
    }
    return c;
  }
  if (cfg.contains("generate")) {
    const auto& g = cfg.at("generate");
    std::uint64_t seed = g.at("seed").get<std::uint64_t>();
    std::size_t count = g.at("count").get<std::size_t>();
    std::size_t min_len = g.value("min_len", 1);
    std::size_t max_len = g.value("max_len", 4);
    std::mt19937_64 rng(seed);
    Corpus c;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t len = min_len + rng() % (max_len - min_len + 1);
      c.items.push_back(BitString::from_uint(rng(), len));
    }
    *seed_note = "# seed: " + std::to_string(seed) + "\n";
    return c;
  }
  throw ConfigError("config needs corpus, corpus_file, or generate");
}

}  // namespace

int run_complexity(const json& cfg, std::ostream& log) {
  Budget budget = parse_budget(cfg.at("budget"));
  int workers = parse_workers(cfg);
  std::vector<BitString> targets;
  if (cfg.contains("targets_file")) {
    auto c = load_corpus(cfg.at("targets_file").get<std::string>());
    if (!c) throw ConfigError("cannot read targets file");
    targets = c->items;
  } else {
    for (const auto& t : cfg.at("targets")) {
      targets.push_back(parse_bits(t.get<std::string>(), "target"));
    }
  }
  auto out = open_output(cfg);
  out << "# schema: complexity-report/1\n";
  out << "target,found,value_bits,witness_code,witness_data,prob_mass,"
         "prob_pairs,programs_enumerated\n";
  bool all_found = true;
  for (const auto& t : targets) {
    auto e = approx_kolmogorov(t, budget, workers);
    auto p = approx_algorithmic_probability(t, budget, workers);
    all_found = all_found && e.found;
    out << lit(t) << ',' << (e.found ? 1 : 0) << ','
        << (e.found ? std::to_string(e.value_bits) : "") << ','
        << (e.found ? lit(e.witness_code.code()) : "") << ','
        << (e.found ? lit(e.witness_data) : "") << ',' << p.mass.to_string()
        << ',' << p.contributing_pairs << ',' << e.programs_enumerated
        << '\n';
    log << "complexity: " << lit(t) << (e.found ? " found" : " not found")
        << "\n";
  }
  return all_found ? kOk : kBudgetExhausted;
}

int run_representation(const json& cfg, std::ostream& log) {
  Budget inner = parse_budget(cfg.at("inner_budget"));
  int workers = parse_workers(cfg);
  std::string seed_note;
  Corpus corpus = corpus_from_config(cfg, &seed_note);
  std::string mode = cfg.value("mode", "search");

  auto out = open_output(cfg);
  out << "# schema: representation-report/1\n" << seed_note;
  out << "row,item,mu,delta,total_bits,s,l_s,score,gain\n";

  Representation S;
  std::optional<std::uint64_t> score;
  std::optional<std::int64_t> gain;
  std::uint64_t examined = 0;
  if (mode == "score") {
    if (cfg.contains("representation")) {
      S = Representation{
          parse_program(cfg.at("representation").get<std::string>(), "S")};
    }
    score = corpus_score(S, corpus, inner, workers);
  } else if (mode == "search") {
    std::uint32_t max_rep_bits = cfg.at("max_rep_bits").get<std::uint32_t>();
    auto found = search_representation(corpus, max_rep_bits, inner, workers);
    if (found) {
      S = found->best;
      score = found->score;
      examined = found->candidates_examined;
      gain = representation_gain(corpus, max_rep_bits, inner, workers);
    }
  } else {
    throw ConfigError("mode must be score or search");
  }

  if (!score) {
    out << "summary,,,,,,,not-found,\n";
    log << "representation: not found within budgets\n";
    return kBudgetExhausted;
  }
  for (const auto& item : corpus.items) {
    auto d = describe_within(S, item, inner, workers);
    out << "item," << lit(item) << ',' << lit(d->mu.code()) << ','
        << lit(d->delta) << ',' << d->total_bits << ",,,,\n";
  }
  out << "summary,,,,," << lit(S.code.code()) << ',' << S.length_bits() << ','
      << *score << ',' << (gain ? std::to_string(*gain) : "") << '\n';
  log << "representation: score " << *score << " (examined " << examined
      << " candidates)\n";
  return kOk;
}

int run_hierarchy(const json& cfg, std::ostream& log) {
  Budget budget = parse_budget(cfg.at("budget"));
  int workers = parse_workers(cfg);
  BitString alpha = parse_bits(cfg.at("alpha").get<std::string>(), "alpha");
  std::string mode = cfg.value("mode", "refine");

  auto out = open_output(cfg);
  if (mode == "segment") {
    Representation S;
    if (cfg.contains("representation")) {
      S = Representation{
          parse_program(cfg.at("representation").get<std::string>(), "S")};
    }
    std::size_t max_segments = cfg.value("max_segments", 4);
    auto seg = segment_mdl(alpha, S, budget, max_segments, workers);
    out << "# schema: segmentation-report/1\n";
    out << "row,index,from,to,mu,delta,total_bits,cut_cost,content,total\n";
    if (!seg) {
      out << "summary,,,,,,,,,not-found\n";
      return kBudgetExhausted;
    }
    for (std::size_t i = 0; i + 1 < seg->segmentation.boundaries.size();
         ++i) {
      out << "segment," << i << ',' << seg->segmentation.boundaries[i] << ','
          << seg->segmentation.boundaries[i + 1] << ','
          << lit(seg->parts[i].mu.code()) << ',' << lit(seg->parts[i].delta)
          << ',' << seg->parts[i].total_bits << ",,,\n";
    }
    out << "summary,,,,,,," << seg->cut_cost_bits << ',' << seg->content_bits
        << ',' << seg->total_bits << '\n';
    log << "segmentation: total " << seg->total_bits << "\n";
    return kOk;
  }

  LevelStack stack;
  for (const auto& s : cfg.at("stack")) {
    stack.levels.push_back(
        Representation{parse_program(s.get<std::string>(), "stack level")});
  }
  std::size_t beam_width = cfg.value("beam_width", 2);
  std::size_t candidates = cfg.value("candidates_per_level", 2);
  if (mode == "greedy") beam_width = candidates = 1;

  auto greedy = greedy_construct(alpha, stack, budget, workers);
  out << "# schema: hierarchy-report/1\n";
  out << "row,level,s,mu,delta_bits,greedy_total,refined_total,beam_width,"
         "candidates_per_level\n";
  if (!greedy) {
    out << "summary,,,,,not-found,not-found," << beam_width << ','
        << candidates << '\n';
    return kBudgetExhausted;
  }
  auto refined =
      resonance_refine(alpha, stack, beam_width, candidates, budget, workers);
  for (std::size_t i = 0; i < refined->levels.size(); ++i) {
    out << "level," << i + 1 << ',' << lit(stack.levels[i].code.code()) << ','
        << lit(refined->levels[i].mu.code()) << ','
        << refined->levels[i].delta.size() << ",,,,\n";
  }
  out << "summary,,,,," << total_length(*greedy) << ','
      << total_length(*refined) << ',' << beam_width << ',' << candidates
      << '\n';
  log << "hierarchy: greedy " << total_length(*greedy) << " refined "
      << total_length(*refined) << "\n";
  return kOk;
}

int run_agent(const json& cfg, std::ostream& log) {
  Budget budget = parse_budget(cfg.at("budget"));
  int workers = parse_workers(cfg);
  std::string world_name = cfg.at("world").get<std::string>();
  auto world = make_world(world_name);
  if (!world) throw ConfigError("unknown world: " + world_name);
  std::string planner_name = cfg.value("planner", "aixi");
  PlannerKind kind;
  if (planner_name == "aixi") kind = PlannerKind::Aixi;
  else if (planner_name == "best_model") kind = PlannerKind::BestModel;
  else if (planner_name == "direct") kind = PlannerKind::DirectChain;
  else throw ConfigError("unknown planner: " + planner_name);
  std::size_t episode_len = cfg.value("episode_len", 8);
  std::size_t horizon = cfg.value("horizon", 3);

  auto logfile = open_output(cfg);
  auto episode =
      run_episode(*world, kind, episode_len, horizon, budget, workers);
  logfile << "# schema: episode-log/1\n";
  logfile << "# world=" << world_name << " planner=" << planner_name
          << " horizon=" << horizon << " episode_len=" << episode_len
          << " budget=(" << budget.max_code_bits << ','
          << budget.max_data_bits << ',' << budget.step_limit << ")\n";
  for (const auto& s : episode.steps) {
    logfile << "k=" << s.k << " action=" << lit(s.action)
            << " obs=" << (s.obs.empty() ? "-" : lit(s.obs))
            << " reward=" << s.reward << " cum=" << s.cumulative
            << " models=" << s.models_examined << "\n";
  }
  logfile << "total=" << episode.total_reward
          << " optimal=" << world->optimal_total(episode_len)
          << " exhausted=" << (episode.budget_exhausted ? 1 : 0) << "\n";
  log << "agent: " << world_name << "/" << planner_name << " total "
      << episode.total_reward << "\n";
  return episode.budget_exhausted ? kBudgetExhausted : kOk;
}

int run_cost_report(const json& cfg, std::ostream& log) {
  auto out = open_output(cfg);
  out << "# schema: cost-report/1\n";
  out << "l_s,model_lengths,full,decomposed,measured_full,"
         "measured_decomposed\n";
  for (const auto& row : cfg.at("rows")) {
    std::uint32_t l_s = row.at("l_s").get<std::uint32_t>();
    std::vector<std::uint32_t> lengths;
    std::string lengths_str;
    for (const auto& l : row.at("model_lengths")) {
      lengths.push_back(l.get<std::uint32_t>());
      if (!lengths_str.empty()) lengths_str += ' ';
      lengths_str += std::to_string(lengths.back());
    }
    auto cost = search_cost_report(l_s, lengths);
    out << l_s << ',' << lengths_str << ',' << cost.full << ','
        << cost.decomposed << ",,\n";
  }
  if (cfg.value("include_measured_fixture", false)) {
    // built-in percept-tape fixture: two 2-round phases emitting 00 then 11,
    // measured by exhaustive exact-length class scans
    BitString phase_a = BitString::parse("00").value();
    BitString phase_b = BitString::parse("11").value();
    auto s0 = scan_exact_class(Representation{}, BitString(), phase_a, 6, 200);
    auto s1 = scan_exact_class(Representation{}, BitString(), phase_b, 9, 200);
    auto joint = scan_exact_class(Representation{}, BitString(),
                                  concat(phase_a, phase_b), 15, 200);
    auto cost = search_cost_report(0, {6, 9});
    out << "0,6 9," << cost.full << ',' << cost.decomposed << ','
        << joint.candidates << ',' << (s0.candidates + s1.candidates) << '\n';
  }
  log << "cost-report written\n";
  return kOk;
}

int run_command(const std::string& command, const json& cfg,
                std::ostream& log) {
  try {
    if (command == "complexity") return run_complexity(cfg, log);
    if (command == "represent") return run_representation(cfg, log);
    if (command == "hierarchy") return run_hierarchy(cfg, log);
    if (command == "agent") return run_agent(cfg, log);
    if (command == "cost-report") return run_cost_report(cfg, log);
    log << "unknown command: " << command << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace mdlab::harness
