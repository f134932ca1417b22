#include "mdlab/program.hpp"

#include <sstream>
#include <stdexcept>

namespace mdlab {

const char* op_name(Op op) {
  switch (op) {
    case kLeft: return "LEFT";
    case kRight: return "RIGHT";
    case kInc: return "INC";
    case kDec: return "DEC";
    case kJz: return "JZ";
    case kJnz: return "JNZ";
    case kRead: return "READ";
    case kOut: return "OUT";
  }
  return "?";
}

bool match_jumps(const std::uint8_t* ops, std::size_t n,
                 std::vector<std::int32_t>& pairs) {
  pairs.assign(n, -1);
  // kJz opens, kJnz closes; nearest-matching (bracket) pairing.
  static thread_local std::vector<std::int32_t> stack;
  stack.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (ops[i] == kJz) {
      stack.push_back(static_cast<std::int32_t>(i));
    } else if (ops[i] == kJnz) {
      if (stack.empty()) return false;
      std::int32_t open = stack.back();
      stack.pop_back();
      pairs[open] = static_cast<std::int32_t>(i);
      pairs[i] = open;
    }
  }
  return stack.empty();
}

std::optional<Program> Program::from_bits(const BitString& bits) {
  if (bits.size() % kOpcodeBits != 0) return std::nullopt;
  Program p;
  p.code_ = bits;
  p.decode();
  return p;
}

Program Program::from_ops(const std::vector<Op>& ops) {
  Program p;
  p.code_ = BitString::zeros(ops.size() * kOpcodeBits);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::uint32_t b = 0; b < kOpcodeBits; ++b) {
      p.code_.set_bit(i * kOpcodeBits + b,
                      (ops[i] >> (kOpcodeBits - 1 - b)) & 1);
    }
  }
  p.decode();
  return p;
}

Program Program::assemble(const std::string& mnemonics) {
  std::istringstream in(mnemonics);
  std::vector<Op> ops;
  std::string tok;
  while (in >> tok) {
    bool found = false;
    for (int o = 0; o < 8; ++o) {
      if (tok == op_name(static_cast<Op>(o))) {
        ops.push_back(static_cast<Op>(o));
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown mnemonic: " + tok);
  }
  return from_ops(ops);
}

Program Program::from_index(std::size_t n_ops, std::uint64_t value) {
  std::vector<Op> ops(n_ops);
  for (std::size_t i = 0; i < n_ops; ++i) {
    ops[i] = static_cast<Op>((value >> (3 * (n_ops - 1 - i))) & 7u);
  }
  return from_ops(ops);
}

std::string Program::disassemble() const {
  std::string s;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (i) s += ' ';
    s += op_name(static_cast<Op>(ops_[i]));
  }
  return s;
}

void Program::decode() {
  std::size_t n = code_.size() / kOpcodeBits;
  ops_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t v = 0;
    for (std::uint32_t b = 0; b < kOpcodeBits; ++b) {
      v = static_cast<std::uint8_t>((v << 1) | code_.bit(i * kOpcodeBits + b));
    }
    ops_[i] = v;
  }
  jumps_balanced_ = match_jumps(ops_.data(), n, pairs_);
}

}  // namespace mdlab
