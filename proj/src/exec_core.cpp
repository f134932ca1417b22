#include "mdlab/exec_core.hpp"

namespace mdlab {

bool ExecCore::prepare(std::uint64_t step_limit) {
  if (tape_limit_ < step_limit) {
    tape_limit_ = step_limit;
    tape_.assign(2 * step_limit + 3, 0);
    origin_ = static_cast<std::int64_t>(step_limit) + 1;
  }
  return true;
}

ExecCore::Outcome ExecCore::run(const std::uint8_t* ops,
                                const std::int32_t* pairs, std::size_t n_ops,
                                const BitString& data,
                                std::uint64_t step_limit,
                                const BitString* expect,
                                std::size_t out_cap) {
  prepare(step_limit);
  out_.clear();
  undo_.clear();

  Outcome r;
  std::size_t pc = 0;
  std::int64_t head = origin_;
  while (true) {
    if (pc == n_ops) {
      r.status = RunStatus::Halted;
      break;
    }
    if (r.steps == step_limit) {
      r.status = RunStatus::StepLimitExceeded;
      break;
    }
    ++r.steps;
    bool done = false;
    switch (ops[pc]) {
      case kLeft: --head; ++pc; break;
      case kRight: ++head; ++pc; break;
      case kInc: write_cell(head, tape_[static_cast<std::size_t>(head)] + 1); ++pc; break;
      case kDec: write_cell(head, tape_[static_cast<std::size_t>(head)] - 1); ++pc; break;
      case kJz:
        pc = (tape_[static_cast<std::size_t>(head)] == 0)
                 ? static_cast<std::size_t>(pairs[pc]) : pc + 1;
        break;
      case kJnz:
        pc = (tape_[static_cast<std::size_t>(head)] != 0)
                 ? static_cast<std::size_t>(pairs[pc]) : pc + 1;
        break;
      case kRead:
        if (r.reads == data.size()) {
          r.status = RunStatus::Invalid;
          r.invalid_kind = InvalidKind::ReadPastEnd;
          done = true;
          break;
        }
        write_cell(head, data.bit(r.reads));
        ++r.reads;
        ++pc;
        break;
      case kOut: {
        int bit = static_cast<int>(tape_[static_cast<std::size_t>(head)] & 1);
        if (out_.size() >= out_cap ||
            (expect && out_.size() < expect->size() &&
             expect->bit(out_.size()) != bit)) {
          r.status = RunStatus::Invalid;
          r.filtered = true;
          done = true;
          break;
        }
        out_.push_back(static_cast<std::uint8_t>(bit));
        ++pc;
        break;
      }
    }
    if (done) break;
  }
  rewind(0);
  return r;
}

BitString bits_from_vec(const std::vector<std::uint8_t>& v) {
  BitString b = BitString::zeros(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b.set_bit(i, v[i]);
  return b;
}

}  // namespace mdlab
