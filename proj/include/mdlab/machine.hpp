#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "mdlab/bitstring.hpp"
#include "mdlab/program.hpp"

namespace mdlab {

enum class RunStatus { Halted, StepLimitExceeded, Invalid };

enum class InvalidKind {
  None,
  MalformedCode,   // bit length not a multiple of the opcode width
  UnmatchedJumps,  // kJz/kJnz brackets do not balance
  ReadPastEnd,     // kRead executed with the data tape exhausted
};

struct ExecResult {
  RunStatus status = RunStatus::Invalid;
  InvalidKind invalid_kind = InvalidKind::None;
  BitString output;
  std::uint64_t steps_used = 0;
  std::uint64_t data_bits_read = 0;
};

// Runs `code` against `data` for at most `step_limit` steps. Deterministic;
// all failure modes are encoded in the result status.
ExecResult execute(const Program& code, const BitString& data,
                   std::uint64_t step_limit);

// Same, for raw bits; yields Invalid/MalformedCode on bad lengths.
ExecResult execute_bits(const BitString& code_bits, const BitString& data,
                        std::uint64_t step_limit);

// Runs prefix∥code. The prefix/code boundary carries no runtime meaning;
// this is exactly execute on the concatenated tape.
ExecResult execute_conditional(const Program& prefix, const Program& code,
                               const BitString& data,
                               std::uint64_t step_limit);
ExecResult execute_conditional_bits(const BitString& prefix_bits,
                                    const BitString& code_bits,
                                    const BitString& data,
                                    std::uint64_t step_limit);

// Number of well-formed programs of code length <= max_code_bits:
// sum over k of 2^(3k) for 3k <= max_code_bits.
std::uint64_t program_count(std::uint32_t max_code_bits);

// Yields every well-formed program of code length <= max_code_bits exactly
// once, shortest first, lexicographic within a length class. The order is
// part of the public contract; tie-breaking everywhere depends on it.
class ProgramEnumerator {
 public:
  explicit ProgramEnumerator(std::uint32_t max_code_bits)
      : max_ops_(max_code_bits / kOpcodeBits) {}

  std::optional<Program> next();

 private:
  std::size_t max_ops_;
  std::size_t n_ops_ = 0;
  std::uint64_t value_ = 0;
  bool done_ = false;
};

void for_each_program(std::uint32_t max_code_bits,
                      const std::function<void(const Program&)>& fn);

}  // namespace mdlab
