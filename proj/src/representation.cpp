#include "mdlab/representation.hpp"

#include "mdlab/parallel.hpp"

#include <fstream>
#include <sstream>

namespace mdlab {

Corpus parse_corpus(const std::string& text) {
  Corpus c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    auto bits = BitString::parse(line.substr(start));
    if (bits) c.items.push_back(*bits);
  }
  return c;
}

std::optional<Corpus> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::optional<DescriptionWithin> describe_within(const Representation& S,
                                                 const BitString& target,
                                                 const Budget& budget,
                                                 int workers) {
  auto e = approx_conditional(target, S.code, budget, workers);
  if (!e.found) return std::nullopt;
  return DescriptionWithin{e.witness_code, e.witness_data, e.value_bits};
}

bool is_representation(const Representation& S, const Corpus& A,
                       const Budget& budget, int workers) {
  for (const auto& item : A.items) {
    if (!describe_within(S, item, budget, workers)) return false;
  }
  return true;
}

std::optional<std::uint64_t> corpus_score(const Representation& S,
                                          const Corpus& A,
                                          const Budget& budget, int workers) {
  std::uint64_t total = S.length_bits();
  for (const auto& item : A.items) {
    auto d = describe_within(S, item, budget, workers);
    if (!d) return std::nullopt;
    total += d->total_bits;
  }
  return total;
}

std::optional<RepresentationSearchResult> search_representation(
    const Corpus& A, std::uint32_t max_rep_bits, const Budget& inner_budget,
    int workers) {
  struct Hit {
    std::uint64_t score;
    std::uint64_t value;  // numeric code within the class
    bool valid = false;
  };
  std::optional<RepresentationSearchResult> best;
  std::uint64_t examined = 0;
  // Candidates are scored in parallel per length class; the inner describe
  // scans stay single-threaded. Chunks merge in index order, which equals
  // the (length, lex) tie-break.
  for (std::uint32_t nb = 0; nb <= max_rep_bits; nb += kOpcodeBits) {
    if (best && nb > best->score) break;
    const std::uint64_t n_codes = std::uint64_t{1} << nb;
    std::vector<Hit> chunk_best(resolve_workers(workers) + 1);
    parallel_chunks(
        n_codes, workers,
        [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
          Hit local;
          for (std::uint64_t v = begin; v < end; ++v) {
            Program S = Program::from_index(nb / kOpcodeBits, v);
            auto score = corpus_score(Representation{S}, A, inner_budget, 1);
            if (score && (!local.valid || *score < local.score)) {
              local = Hit{*score, v, true};
            }
          }
          chunk_best[chunk] = local;
        },
        [&](std::uint64_t chunk) {
          const Hit& h = chunk_best[chunk];
          if (h.valid && (!best || h.score < best->score)) {
            best = RepresentationSearchResult{
                Representation{Program::from_index(nb / kOpcodeBits, h.value)},
                h.score, 0};
          }
        });
    examined += n_codes;
  }
  if (best) best->candidates_examined = examined;
  return best;
}

std::optional<std::int64_t> representation_gain(const Corpus& A,
                                      std::uint32_t max_rep_bits,
                                      const Budget& inner_budget,
                                      int workers) {
  auto base = corpus_score(Representation{}, A, inner_budget, workers);
  if (!base) return std::nullopt;  // some item has no standalone description
  auto found = search_representation(A, max_rep_bits, inner_budget, workers);
  if (!found) return std::nullopt;
  return static_cast<std::int64_t>(*base) -
         static_cast<std::int64_t>(found->score);
}

}  // namespace mdlab
