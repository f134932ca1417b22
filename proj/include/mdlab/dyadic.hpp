#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdlab {

// Non-negative dyadic rational num / 2^log2_den. All arithmetic is exact;
// overflow throws rather than degrading silently.
struct Dyadic {
  std::uint64_t num = 0;
  std::uint32_t log2_den = 0;

  static Dyadic zero() { return {}; }
  static Dyadic one() { return {1, 0}; }
  static Dyadic pow2_neg(std::uint32_t k) { return {1, k}; }
  static Dyadic make(std::uint64_t n, std::uint32_t log2_d) {
    Dyadic d{n, log2_d};
    d.reduce();
    return d;
  }

  void reduce() {
    if (num == 0) {
      log2_den = 0;
      return;
    }
    while (log2_den > 0 && (num & 1) == 0) {
      num >>= 1;
      --log2_den;
    }
  }

  Dyadic& operator+=(const Dyadic& o) {
    std::uint32_t d = log2_den > o.log2_den ? log2_den : o.log2_den;
    std::uint64_t a = shifted(num, d - log2_den);
    std::uint64_t b = shifted(o.num, d - o.log2_den);
    if (a > UINT64_MAX - b) throw std::overflow_error("dyadic add");
    num = a + b;
    log2_den = d;
    reduce();
    return *this;
  }

  Dyadic& operator*=(std::uint64_t k) {
    if (k != 0 && num > UINT64_MAX / k) throw std::overflow_error("dyadic mul");
    num *= k;
    reduce();
    return *this;
  }

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }

  bool operator==(const Dyadic& o) const {
    Dyadic a = *this, b = o;
    a.reduce();
    b.reduce();
    return a.num == b.num && a.log2_den == b.log2_den;
  }

  // Compares a/2^x < b/2^y via a*2^y ? b*2^x with width checks.
  bool operator<(const Dyadic& o) const {
    std::uint32_t d = log2_den > o.log2_den ? log2_den : o.log2_den;
    return shifted(num, d - log2_den) < shifted(o.num, d - o.log2_den);
  }
  bool operator<=(const Dyadic& o) const { return *this < o || *this == o; }

  std::string to_string() const {
    Dyadic d = *this;
    d.reduce();
    if (d.log2_den >= 63) throw std::overflow_error("dyadic print");
    return std::to_string(d.num) + "/" +
           std::to_string(std::uint64_t{1} << d.log2_den);
  }

 private:
  static std::uint64_t shifted(std::uint64_t v, std::uint32_t s) {
    if (s >= 64 || (s > 0 && (v >> (64 - s)) != 0)) {
      if (v != 0) throw std::overflow_error("dyadic shift");
      return 0;
    }
    return v << s;
  }
};

}  // namespace mdlab
