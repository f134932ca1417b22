#include "mdlab/machine.hpp"

#include "mdlab/exec_core.hpp"

namespace mdlab {

namespace {

ExecCore& core() {
  static thread_local ExecCore c;
  return c;
}

ExecResult run_ops(const std::uint8_t* ops, std::size_t n,
                   const std::vector<std::int32_t>& pairs, bool balanced,
                   const BitString& data, std::uint64_t step_limit) {
  ExecResult r;
  if (!balanced) {
    r.status = RunStatus::Invalid;
    r.invalid_kind = InvalidKind::UnmatchedJumps;
    return r;
  }
  auto out = core().run(ops, pairs.data(), n, data, step_limit);
  r.status = out.status;
  r.invalid_kind = out.invalid_kind;
  r.steps_used = out.steps;
  r.data_bits_read = out.reads;
  r.output = bits_from_vec(core().out());
  return r;
}

}  // namespace

ExecResult execute(const Program& code, const BitString& data,
                   std::uint64_t step_limit) {
  return run_ops(code.ops().data(), code.n_ops(), code.jump_pairs(),
                 code.jumps_balanced(), data, step_limit);
}

ExecResult execute_bits(const BitString& code_bits, const BitString& data,
                        std::uint64_t step_limit) {
  auto p = Program::from_bits(code_bits);
  if (!p) {
    ExecResult r;
    r.status = RunStatus::Invalid;
    r.invalid_kind = InvalidKind::MalformedCode;
    return r;
  }
  return execute(*p, data, step_limit);
}

ExecResult execute_conditional(const Program& prefix, const Program& code,
                               const BitString& data,
                               std::uint64_t step_limit) {
  std::vector<std::uint8_t> ops = prefix.ops();
  ops.insert(ops.end(), code.ops().begin(), code.ops().end());
  std::vector<std::int32_t> pairs;
  bool balanced = match_jumps(ops.data(), ops.size(), pairs);
  return run_ops(ops.data(), ops.size(), pairs, balanced, data, step_limit);
}

ExecResult execute_conditional_bits(const BitString& prefix_bits,
                                    const BitString& code_bits,
                                    const BitString& data,
                                    std::uint64_t step_limit) {
  return execute_bits(concat(prefix_bits, code_bits), data, step_limit);
}

std::uint64_t program_count(std::uint32_t max_code_bits) {
  std::uint64_t total = 0;
  for (std::uint32_t k = 0; k * kOpcodeBits <= max_code_bits; ++k) {
    total += std::uint64_t{1} << (k * kOpcodeBits);
  }
  return total;
}

std::optional<Program> ProgramEnumerator::next() {
  if (done_) return std::nullopt;
  Program p = Program::from_index(n_ops_, value_);
  ++value_;
  if (value_ == (std::uint64_t{1} << (kOpcodeBits * n_ops_))) {
    value_ = 0;
    ++n_ops_;
    if (n_ops_ > max_ops_) done_ = true;
  }
  return p;
}

void for_each_program(std::uint32_t max_code_bits,
                      const std::function<void(const Program&)>& fn) {
  ProgramEnumerator e(max_code_bits);
  while (auto p = e.next()) fn(*p);
}

}  // namespace mdlab
