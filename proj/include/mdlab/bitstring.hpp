#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mdlab {

// Finite bit sequence. Index 0 is the first (most significant) bit of the
// textual literal form.
class BitString {
 public:
  BitString() = default;

  static BitString zeros(std::size_t n);
  // Low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);
  // Accepts "0101...", the empty string, or the hex form "xA3:8".
  static std::optional<BitString> parse(const std::string& literal);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  int bit(std::size_t i) const {
    return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u);
  }
  void set_bit(std::size_t i, int v);
  void push_back(int bit);
  void append(const BitString& other);
  void truncate(std::size_t n);

  BitString slice(std::size_t begin, std::size_t len) const;

  // "0"/"1" characters; empty string for the empty bitstring.
  std::string to_string() const;
  // Hex form with explicit bit length, e.g. "xA3:8". MSB first; the last
  // nibble is padded on the right with zeros.
  std::string to_hex_literal() const;

  std::uint64_t to_uint() const;  // size() must be <= 64

  bool operator==(const BitString& o) const;
  bool operator!=(const BitString& o) const { return !(*this == o); }

  std::size_t hash() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

BitString concat(const BitString& a, const BitString& b);

// Bitwise lexicographic order ("0" < "1", prefix < extension).
bool lex_less(const BitString& a, const BitString& b);
// Shorter first, then lexicographic. This is the enumeration order used
// throughout; ties in every search break by it.
bool canonical_less(const BitString& a, const BitString& b);

struct BitStringHash {
  std::size_t operator()(const BitString& b) const { return b.hash(); }
};

}  // namespace mdlab
