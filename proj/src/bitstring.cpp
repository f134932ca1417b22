#include "mdlab/bitstring.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mdlab {

BitString BitString::zeros(std::size_t n) {
  BitString b;
  b.size_ = n;
  b.words_.assign((n + 63) / 64, 0);
  return b;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString b = zeros(width);
  for (std::size_t i = 0; i < width; ++i) {
    b.set_bit(i, static_cast<int>((value >> (width - 1 - i)) & 1u));
  }
  return b;
}

std::optional<BitString> BitString::parse(const std::string& literal) {
  if (!literal.empty() && (literal[0] == 'x' || literal[0] == 'X')) {
    auto colon = literal.find(':');
    if (colon == std::string::npos) return std::nullopt;
    std::size_t nbits = 0;
    try {
      nbits = std::stoull(literal.substr(colon + 1));
    } catch (...) {
      return std::nullopt;
    }
    std::string hex = literal.substr(1, colon - 1);
    if (hex.size() * 4 < nbits) return std::nullopt;
    BitString b = zeros(nbits);
    for (std::size_t i = 0; i < nbits; ++i) {
      char c = hex[i / 4];
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else return std::nullopt;
      b.set_bit(i, (v >> (3 - (i % 4))) & 1);
    }
    return b;
  }
  BitString b = zeros(literal.size());
  for (std::size_t i = 0; i < literal.size(); ++i) {
    if (literal[i] == '0') continue;
    if (literal[i] == '1') b.set_bit(i, 1);
    else return std::nullopt;
  }
  return b;
}

void BitString::set_bit(std::size_t i, int v) {
  std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (v) words_[i >> 6] |= mask;
  else words_[i >> 6] &= ~mask;
}

void BitString::push_back(int bit) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  set_bit(size_ - 1, bit);
}

void BitString::append(const BitString& other) {
  for (std::size_t i = 0; i < other.size(); ++i) push_back(other.bit(i));
}

void BitString::truncate(std::size_t n) {
  if (n >= size_) return;
  size_ = n;
  words_.resize((n + 63) / 64);
  if (n & 63) words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
}

BitString BitString::slice(std::size_t begin, std::size_t len) const {
  BitString b = zeros(len);
  for (std::size_t i = 0; i < len; ++i) b.set_bit(i, bit(begin + i));
  return b;
}

std::string BitString::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

std::string BitString::to_hex_literal() const {
  static const char* digits = "0123456789ABCDEF";
  std::string s = "x";
  for (std::size_t i = 0; i < size_; i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4 && i + j < size_; ++j)
      v |= bit(i + j) << (3 - j);
    s += digits[v];
  }
  s += ":" + std::to_string(size_);
  return s;
}

std::uint64_t BitString::to_uint() const {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < size_; ++i) v = (v << 1) | std::uint64_t(bit(i));
  return v;
}

bool BitString::operator==(const BitString& o) const {
  return size_ == o.size_ && words_ == o.words_;
}

std::size_t BitString::hash() const {
  std::size_t h = size_ * 0x9e3779b97f4a7c15ull;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

BitString concat(const BitString& a, const BitString& b) {
  BitString r = a;
  r.append(b);
  return r;
}

bool lex_less(const BitString& a, const BitString& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.bit(i) != b.bit(i)) return a.bit(i) < b.bit(i);
  }
  return a.size() < b.size();
}

bool canonical_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

}  // namespace mdlab
