#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mdlab/bitstring.hpp"

namespace mdlab {

struct WorldSpec {
  std::string name;
  std::uint32_t action_bits = 1;
  std::uint32_t obs_bits = 0;
  // rewards are 0 or 1, encoded as a single bit after the observation
  std::uint32_t percept_bits() const { return obs_bits + 1; }
};

struct Percept {
  BitString obs;
  int reward = 0;
};

// Deterministic environment: the percept at round t is a pure function of
// the action prefix a_1..a_t. Rounds are 1-based.
class World {
 public:
  virtual ~World() = default;
  const WorldSpec& spec() const { return spec_; }
  virtual Percept percept(std::size_t round,
                          const std::vector<BitString>& actions) const = 0;
  // the best achievable total reward over an episode of `rounds` rounds
  virtual int optimal_total(std::size_t rounds) const = 0;

 protected:
  WorldSpec spec_;
};

// Built-in worlds: "constant", "alternation", "delayed_echo", "two_phase".
std::unique_ptr<World> make_world(const std::string& name);

}  // namespace mdlab
