#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mdlab/bitstring.hpp"

using namespace mdlab;

TEST_CASE("literal round trip") {
  for (const char* lit : {"", "0", "1", "0101", "11110000", "1010101010101"}) {
    auto b = BitString::parse(lit);
    REQUIRE(b.has_value());
    CHECK(b->to_string() == lit);
  }
  CHECK(!BitString::parse("012").has_value());
  CHECK(!BitString::parse("x3").has_value());
}

TEST_CASE("hex literal") {
  auto b = BitString::parse("xA3:8");
  REQUIRE(b.has_value());
  CHECK(b->to_string() == "10100011");
  CHECK(b->to_hex_literal() == "xA3:8");

  auto c = BitString::parse("xA0:4");  // trailing nibble padding
  REQUIRE(c.has_value());
  CHECK(c->to_string() == "1010");

  auto d = BitString::parse("101");
  CHECK(BitString::parse(d->to_hex_literal()).value() == *d);
}

TEST_CASE("concat length additive, equality bitwise") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = rng() % 40, m = rng() % 40;
    BitString a = BitString::zeros(n), b = BitString::zeros(m);
    for (std::size_t i = 0; i < n; ++i) a.set_bit(i, rng() & 1);
    for (std::size_t i = 0; i < m; ++i) b.set_bit(i, rng() & 1);
    BitString c = concat(a, b);
    REQUIRE(c.size() == n + m);
    CHECK(c.to_string() == a.to_string() + b.to_string());
    CHECK(c.slice(0, n) == a);
    CHECK(c.slice(n, m) == b);
  }
}

TEST_CASE("from_uint is MSB first") {
  CHECK(BitString::from_uint(0b1011, 4).to_string() == "1011");
  CHECK(BitString::from_uint(1, 3).to_string() == "001");
  CHECK(BitString::from_uint(0b1011, 4).to_uint() == 0b1011);
}

TEST_CASE("orders") {
  auto b = [](const char* s) { return BitString::parse(s).value(); };
  CHECK(lex_less(b("0"), b("1")));
  CHECK(lex_less(b("01"), b("10")));
  CHECK(lex_less(b("0"), b("00")));  // prefix before extension
  CHECK(canonical_less(b("1"), b("00")));
  CHECK(canonical_less(b("00"), b("01")));
  CHECK(!canonical_less(b("0"), b("0")));
}

TEST_CASE("push and truncate") {
  BitString b;
  for (int i = 0; i < 130; ++i) b.push_back(i % 3 == 0);
  CHECK(b.size() == 130);
  CHECK(b.bit(0) == 1);
  CHECK(b.bit(1) == 0);
  CHECK(b.bit(129) == 1);
  b.truncate(2);
  CHECK(b.to_string() == "10");
}
