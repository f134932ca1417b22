#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

#include "mdlab/bitstring.hpp"
#include "mdlab/machine.hpp"
#include "mdlab/program.hpp"

namespace mdlab {

// Reusable interpreter state for the reference machine. One instance per
// thread; instances are cheap to keep alive and expensive to churn.
//
// Two engines share the step semantics:
//  * run(): a plain pass over an explicit data tape.
//  * scan_descriptions(): depth-first enumeration of every halting run of
//    one code sequence over all data tapes of length <= max_data_bits.
//    Each halting path consumes exactly the bits on its branch, so every
//    leaf is an exact-consumption description (output, delta, steps), and
//    distinct leaves have prefix-free deltas.
//
// Both support an output prefix filter: while fewer than expect->size()
// bits have been emitted, a bit differing from the expected one kills the
// run (reported as `filtered`). Bits beyond the expected prefix are free.
class ExecCore {
 public:
  struct Outcome {
    RunStatus status = RunStatus::Invalid;
    InvalidKind invalid_kind = InvalidKind::None;
    std::uint64_t steps = 0;
    std::uint64_t reads = 0;
    bool filtered = false;  // killed by the expect filter or output cap
  };

  // Output bits of the last run() live here until the next call.
  const std::vector<std::uint8_t>& out() const { return out_; }

  // Paths of the last scan_descriptions() killed by the output cap. When
  // zero, the scan observed every halting run of the code.
  std::uint64_t cap_kills() const { return cap_kills_; }

  Outcome run(const std::uint8_t* ops, const std::int32_t* pairs,
              std::size_t n_ops, const BitString& data,
              std::uint64_t step_limit, const BitString* expect = nullptr,
              std::size_t out_cap = SIZE_MAX);

  // sink(delta, out, steps) for every halting leaf that passed the filters.
  template <class Sink>
  void scan_descriptions(const std::uint8_t* ops, const std::int32_t* pairs,
                         std::size_t n_ops, std::uint32_t max_data_bits,
                         std::uint64_t step_limit, const BitString* expect,
                         std::size_t out_cap, Sink&& sink) {
    if (!prepare(step_limit)) return;
    out_.clear();
    delta_.clear();
    undo_.clear();
    cap_kills_ = 0;
    dfs<Sink>(ops, pairs, n_ops, max_data_bits, step_limit, expect, out_cap,
              0, origin_, 0, sink);
    rewind(0);
  }

 private:
  bool prepare(std::uint64_t step_limit);

  void write_cell(std::int64_t idx, std::int64_t v) {
    undo_.emplace_back(idx, tape_[static_cast<std::size_t>(idx)]);
    tape_[static_cast<std::size_t>(idx)] = v;
  }

  void rewind(std::size_t mark) {
    while (undo_.size() > mark) {
      auto [idx, old] = undo_.back();
      undo_.pop_back();
      tape_[static_cast<std::size_t>(idx)] = old;
    }
  }

  template <class Sink>
  void dfs(const std::uint8_t* ops, const std::int32_t* pairs,
           std::size_t n_ops, std::uint32_t max_data_bits,
           std::uint64_t step_limit, const BitString* expect,
           std::size_t out_cap, std::size_t pc, std::int64_t head,
           std::uint64_t steps, Sink& sink) {
    while (true) {
      if (pc == n_ops) {
        sink(delta_, out_, steps);
        return;
      }
      if (steps == step_limit) return;
      ++steps;
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
        case kRead: {
          if (delta_.size() == max_data_bits) return;  // no tape extends this path
          std::size_t undo_mark = undo_.size();
          std::size_t out_mark = out_.size();
          for (int b = 0; b < 2; ++b) {
            write_cell(head, b);
            delta_.push_back(static_cast<std::uint8_t>(b));
            dfs<Sink>(ops, pairs, n_ops, max_data_bits, step_limit, expect,
                      out_cap, pc + 1, head, steps, sink);
            delta_.pop_back();
            rewind(undo_mark);
            out_.resize(out_mark);
          }
          return;
        }
        case kOut: {
          int bit = static_cast<int>(tape_[static_cast<std::size_t>(head)] & 1);
          if (out_.size() >= out_cap) {
            ++cap_kills_;
            return;
          }
          if (expect && out_.size() < expect->size() &&
              expect->bit(out_.size()) != bit) {
            return;
          }
          out_.push_back(static_cast<std::uint8_t>(bit));
          ++pc;
          break;
        }
      }
    }
  }

  std::vector<std::int64_t> tape_;
  std::int64_t origin_ = 0;
  std::uint64_t tape_limit_ = 0;
  std::uint64_t cap_kills_ = 0;
  std::vector<std::uint8_t> out_;
  std::vector<std::uint8_t> delta_;
  std::vector<std::pair<std::int64_t, std::int64_t>> undo_;
};

BitString bits_from_vec(const std::vector<std::uint8_t>& v);

}  // namespace mdlab
