#include <doctest.h>

#include <algorithm>
#include <random>

#include "gasket/codespace.hpp"
#include "gasket/error.hpp"
#include "gasket/geometry.hpp"
#include "oracles.hpp"

using namespace gasket;

namespace {

Address A(const char* text) { return Address::parse(text); }

std::vector<std::string> texts(const std::vector<Address>& list) {
  std::vector<std::string> out;
  for (const auto& a : list) out.push_back(a.to_string());
  return out;
}

Address random_address(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 16), sym(1, 3);
  std::vector<Symbol> w(static_cast<std::size_t>(len(rng)));
  for (auto& s : w) s = static_cast<Symbol>(sym(rng));
  return Address(Word(w), static_cast<Symbol>(sym(rng)));
}

}  // namespace

TEST_CASE("address text form canonicalizes trailing tail symbols") {
  CHECK(A("21(1)").to_string() == "2(1)");
  CHECK(A("(1)").to_string() == "(1)");
  CHECK(A("2111(1)") == A("2(1)"));
  CHECK(A("13(2)").prefix().to_string() == "13");
  CHECK(A("13(2)").tail() == 2);
}

TEST_CASE("malformed addresses and words are rejected") {
  for (const char* bad : {"", "1", "(4)", "12(1", "1(12)", "14(1)", "(1)2", "a(1)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Address::parse(bad), Error);
  }
  try {
    Address::parse("(7)");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::malformed_address);
  }
  CHECK_THROWS_AS(Word::parse("120"), Error);
  CHECK_THROWS_AS(Word(std::vector<Symbol>{1, 4}), Error);
}

TEST_CASE("compare_addresses examples") {
  CHECK(compare_addresses(A("12(1)"), A("1(3)")) < 0);
  CHECK(compare_addresses(A("2(1)"), A("2(1)")) == 0);
  CHECK(compare_addresses(A("(1)"), A("2(1)")) < 0);
  CHECK(compare_addresses(A("(2)"), A("3(1)")) < 0);
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) CHECK(compare_addresses(random_address(rng), A("(3)")) <= 0);
}

TEST_CASE("compare_addresses is a total order that matches long expansions") {
  std::mt19937 rng(2024);
  std::vector<Address> pool;
  for (int i = 0; i < 300; ++i) pool.push_back(random_address(rng));
  auto expanded = [](const Address& a) {
    std::vector<int> p(a.prefix().symbols().begin(), a.prefix().symbols().end());
    return oracle::expand(p, a.tail(), 24);
  };
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      const auto c = compare_addresses(a, b);
      CHECK((c < 0) == (expanded(a) < expanded(b)));
      CHECK((c == 0) == (a == b));
      CHECK((c == 0) == (expanded(a) == expanded(b)));
      CHECK((compare_addresses(b, a) < 0) == (c > 0));
    }
  }
  std::vector<Address> sorted = pool;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 2; i < sorted.size(); ++i) CHECK(sorted[i - 2] <= sorted[i]);
}

TEST_CASE("address_point examples") {
  CHECK(address_point(A("(1)")) == Point{});
  CHECK(address_point(A("2(1)")).to_string() == "(1/2, 0)");
  CHECK(address_point(A("1(2)")) == address_point(A("2(1)")));
  CHECK(address_point(A("(3)")).to_string() == "(1/2, 1/2*sqrt3)");
}

TEST_CASE("tops_address examples") {
  CHECK(tops_address(Word::parse("2"), 1).to_string() == "2(1)");
  CHECK(tops_address(Word(), 3).to_string() == "(3)");
  CHECK(tops_address(Word::parse("12"), 3).to_string() == "13(2)");
  CHECK(tops_address(Word::parse("1"), 2).to_string() == "2(1)");
  CHECK(tops_address(Word::parse("333"), 3).to_string() == "(3)");
}

TEST_CASE("tops_address agrees with brute-force enumeration of all addresses") {
  for (int n = 0; n <= 5; ++n) {
    CAPTURE(n);
    const auto groups = oracle::addresses_by_point(n);
    for (const auto& w : oracle::words(n)) {
      std::vector<Symbol> sw(w.begin(), w.end());
      for (Symbol c = 1; c <= 3; ++c) {
        const auto& all = groups.at(oracle::key(oracle::image(w, oracle::q(c))));
        CHECK(tops_address(Word(sw), c).to_string() == all.back());
        CHECK(texts(vertex_addresses(Word(sw), c)).size() == all.size());
      }
    }
  }
}

TEST_CASE("canonical_partition examples") {
  CHECK(texts(canonical_partition(0)) == std::vector<std::string>{"(1)", "(2)", "(3)"});
  // Sorted under ≺: 2(1) < (2) < 3(1) < 3(2) < (3).
  CHECK(texts(canonical_partition(1)) ==
        std::vector<std::string>{"(1)", "2(1)", "(2)", "3(1)", "3(2)", "(3)"});
  const auto p2 = canonical_partition(2);
  CHECK(p2.size() == 15);
  for (std::size_t i = 1; i < p2.size(); ++i) CHECK(compare_addresses(p2[i - 1], p2[i]) < 0);
}

TEST_CASE("canonical_partition matches the brute tops set and refines") {
  for (int n = 0; n <= 5; ++n) {
    CAPTURE(n);
    std::vector<std::string> expected;
    for (const auto& [k, list] : oracle::addresses_by_point(n)) {
      // points of V_n only: those with some address of prefix length <= n
      expected.push_back(list.back());
    }
    std::vector<std::pair<std::string, std::string>> by_expansion;
    for (const auto& t : expected) {
      const Address a = A(t.c_str());
      std::vector<int> p(a.prefix().symbols().begin(), a.prefix().symbols().end());
      by_expansion.emplace_back(oracle::expand(p, a.tail(), 20), t);
    }
    std::sort(by_expansion.begin(), by_expansion.end());
    std::vector<std::string> brute;
    for (auto& [e, t] : by_expansion) brute.push_back(t);
    const auto part = texts(canonical_partition(n));
    CHECK(part == brute);
    CHECK(part.size() == vertex_count(n));
    if (n > 0) {
      const auto coarse = texts(canonical_partition(n - 1));
      CHECK(std::includes(part.begin(), part.end(), coarse.begin(), coarse.end(),
                          [](const std::string& a, const std::string& b) {
                            return Address::parse(a) < Address::parse(b);
                          }));
    }
  }
}

TEST_CASE("interval_contains examples and validation") {
  CHECK(interval_contains({A("(1)"), A("(3)")}, A("2(1)")));
  CHECK_FALSE(interval_contains({A("(1)"), A("(2)")}, A("3(1)")));
  CHECK(interval_contains({A("2(1)"), A("2(1)")}, A("2(1)")));
  CHECK_THROWS_AS(AddressInterval(A("(3)"), A("(1)")), Error);
}

TEST_CASE("Word index round trip") {
  for (int n = 0; n <= 4; ++n) {
    for (std::uint64_t i = 0; i < pow3(n); ++i) CHECK(Word::from_index(i, n).index() == i);
  }
  CHECK(Word::from_index(5, 2).to_string() == "23");
}

TEST_CASE("canonical_partition respects the depth cap") {
  CHECK_THROWS_AS(canonical_partition(-1), Error);
  CHECK_THROWS_AS(canonical_partition(60), Error);
}
