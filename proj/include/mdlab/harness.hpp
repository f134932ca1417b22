#pragma once

#include <iostream>
#include <string>

#include <json.hpp>

namespace mdlab::harness {

// Exit codes shared by every subcommand.
constexpr int kOk = 0;
constexpr int kUsageError = 1;        // bad config / missing files
constexpr int kBudgetExhausted = 2;   // a requested result was not found

// Each runner consumes a parsed config, writes its report file(s), and logs
// human-oriented progress to `log` (never into the report: reports must be
// byte-identical across reruns and worker counts, so timings stay out).
int run_complexity(const nlohmann::json& cfg, std::ostream& log);
int run_representation(const nlohmann::json& cfg, std::ostream& log);
int run_hierarchy(const nlohmann::json& cfg, std::ostream& log);
int run_agent(const nlohmann::json& cfg, std::ostream& log);
int run_cost_report(const nlohmann::json& cfg, std::ostream& log);

// Dispatch by subcommand name ("complexity", "represent", "hierarchy",
// "agent", "cost-report").
int run_command(const std::string& command, const nlohmann::json& cfg,
                std::ostream& log);

}  // namespace mdlab::harness
