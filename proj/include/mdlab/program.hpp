#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdlab/bitstring.hpp"

namespace mdlab {

// The reference machine's instruction set. Opcodes are 3 bits wide; the
// numeric values below are the opcodes. See docs/machine.md for the
// normative semantics.
enum Op : std::uint8_t {
  kLeft = 0,
  kRight = 1,
  kInc = 2,
  kDec = 3,
  kJz = 4,   // cell == 0: jump forward to the paired kJnz
  kJnz = 5,  // cell != 0: jump backward to the paired kJz
  kRead = 6,
  kOut = 7,
};

constexpr std::uint32_t kOpcodeBits = 3;

const char* op_name(Op op);

// A program is a bitstring whose length is a multiple of the opcode width.
// Unbalanced kJz/kJnz pairs are representable (enumeration yields them) but
// execution rejects them as Invalid before the first step.
class Program {
 public:
  Program() = default;

  // nullopt when bits.size() is not a multiple of kOpcodeBits.
  static std::optional<Program> from_bits(const BitString& bits);
  static Program from_ops(const std::vector<Op>& ops);
  // Space-separated mnemonics, e.g. "INC OUT OUT". Throws on unknown names.
  static Program assemble(const std::string& mnemonics);
  // Instruction index i is the i-th base-8 digit of `value`, most
  // significant digit first, so numeric order equals bitwise lex order.
  static Program from_index(std::size_t n_ops, std::uint64_t value);

  const BitString& code() const { return code_; }
  std::size_t length_bits() const { return code_.size(); }
  std::size_t n_ops() const { return ops_.size(); }
  const std::vector<std::uint8_t>& ops() const { return ops_; }
  // Partner index for each kJz/kJnz, -1 elsewhere. Meaningless when
  // !jumps_balanced().
  const std::vector<std::int32_t>& jump_pairs() const { return pairs_; }
  bool jumps_balanced() const { return jumps_balanced_; }

  std::string disassemble() const;

  bool operator==(const Program& o) const { return code_ == o.code_; }

 private:
  void decode();

  BitString code_;
  std::vector<std::uint8_t> ops_;
  std::vector<std::int32_t> pairs_;
  bool jumps_balanced_ = true;
};

// Computes jump partners for a raw opcode sequence. Returns false when the
// kJz/kJnz brackets do not balance. `pairs` is resized to match.
bool match_jumps(const std::uint8_t* ops, std::size_t n,
                 std::vector<std::int32_t>& pairs);

}  // namespace mdlab
