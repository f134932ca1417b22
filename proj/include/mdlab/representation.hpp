#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdlab/bitstring.hpp"
#include "mdlab/budget.hpp"
#include "mdlab/complexity.hpp"
#include "mdlab/program.hpp"

namespace mdlab {

// A shared code prefix S. Every string of a corpus it represents has some
// description (mu, delta) with S∥mu halting on delta with exactly that
// string as output.
struct Representation {
  Program code;
  std::uint64_t length_bits() const { return code.length_bits(); }
};

struct DescriptionWithin {
  Program mu;
  BitString delta;
  std::uint64_t total_bits = 0;  // l(mu) + l(delta)
};

struct Corpus {
  std::vector<BitString> items;  // order fixed for reporting only
};

Corpus parse_corpus(const std::string& text);  // one literal per line, '#' comments
std::optional<Corpus> load_corpus(const std::string& path);

// Best description of `target` within S; not-found when the budget has none.
std::optional<DescriptionWithin> describe_within(const Representation& S,
                                                 const BitString& target,
                                                 const Budget& budget,
                                                 int workers = 1);

// Budget-relative realization of the definition: S represents A iff every
// item has some description within S under the budget.
bool is_representation(const Representation& S, const Corpus& A,
                       const Budget& budget, int workers = 1);

// l(S) + sum of the per-item minimal description lengths; not-found when
// any item is indescribable within S under the budget.
std::optional<std::uint64_t> corpus_score(const Representation& S,
                                          const Corpus& A,
                                          const Budget& budget,
                                          int workers = 1);

struct RepresentationSearchResult {
  Representation best;
  std::uint64_t score = 0;
  std::uint64_t candidates_examined = 0;
};

// Exhaustive minimization of corpus_score over all programs S with
// l(S) <= max_rep_bits; ties prefer the shorter then lexicographically
// smaller S. Not-found only when no candidate (the empty S included)
// describes every item.
std::optional<RepresentationSearchResult> search_representation(
    const Corpus& A, std::uint32_t max_rep_bits, const Budget& inner_budget,
    int workers = 1);

// Sum of the items' standalone complexity estimates minus the best corpus
// score; >= 0 whenever defined. nullopt when some item has no standalone
// description (the gain's precondition).
std::optional<std::int64_t> representation_gain(const Corpus& A,
                                      std::uint32_t max_rep_bits,
                                      const Budget& inner_budget,
                                      int workers = 1);

}  // namespace mdlab
