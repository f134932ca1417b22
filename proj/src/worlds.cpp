#include "mdlab/worlds.hpp"

namespace mdlab {

namespace {

// reward 1 every round regardless of the action
class ConstantWorld : public World {
 public:
  ConstantWorld() { spec_ = {"constant", 1, 0}; }
  Percept percept(std::size_t, const std::vector<BitString>&) const override {
    return {BitString(), 1};
  }
  int optimal_total(std::size_t rounds) const override {
    return static_cast<int>(rounds);
  }
};

// the observation alternates 0,1,0,1,... on its own; reward equals the
// action bit
class AlternationWorld : public World {
 public:
  AlternationWorld() { spec_ = {"alternation", 1, 1}; }
  Percept percept(std::size_t round,
                  const std::vector<BitString>& actions) const override {
    int obs = round % 2 == 0 ? 1 : 0;
    return {BitString::from_uint(static_cast<std::uint64_t>(obs), 1),
            actions[round - 1].bit(0)};
  }
  int optimal_total(std::size_t rounds) const override {
    return static_cast<int>(rounds);
  }
};

// reward arrives one round late: r_t = a_{t-1}, with a_0 = 0
class DelayedEchoWorld : public World {
 public:
  DelayedEchoWorld() { spec_ = {"delayed_echo", 1, 0}; }
  Percept percept(std::size_t round,
                  const std::vector<BitString>& actions) const override {
    int r = round >= 2 ? actions[round - 2].bit(0) : 0;
    return {BitString(), r};
  }
  int optimal_total(std::size_t rounds) const override {
    return rounds == 0 ? 0 : static_cast<int>(rounds) - 1;
  }
};

// regime change at a fixed boundary: rounds 1..4 pay the action, rounds
// 5.. pay its negation
class TwoPhaseWorld : public World {
 public:
  static constexpr std::size_t kBoundary = 4;
  TwoPhaseWorld() { spec_ = {"two_phase", 1, 0}; }
  Percept percept(std::size_t round,
                  const std::vector<BitString>& actions) const override {
    int a = actions[round - 1].bit(0);
    return {BitString(), round <= kBoundary ? a : 1 - a};
  }
  int optimal_total(std::size_t rounds) const override {
    return static_cast<int>(rounds);
  }
};

}  // namespace

std::unique_ptr<World> make_world(const std::string& name) {
  if (name == "constant") return std::make_unique<ConstantWorld>();
  if (name == "alternation") return std::make_unique<AlternationWorld>();
  if (name == "delayed_echo") return std::make_unique<DelayedEchoWorld>();
  if (name == "two_phase") return std::make_unique<TwoPhaseWorld>();
  return nullptr;
}

}  // namespace mdlab
