#include <doctest.h>

#include <cmath>
#include <random>

#include "gasket/error.hpp"
#include "gasket/numeric.hpp"
#include "gasket/variation.hpp"
#include "oracles.hpp"

using namespace gasket;

namespace {

const GasketFunction kCoord = GasketFunction::coordinate();
const GasketFunction kHarm = GasketFunction::harmonic({1.0, 0.0, 0.0});
const GasketFunction kInd = GasketFunction::cell_indicator(Word::parse("1"));
const GasketFunction kConst = GasketFunction::constant(4.0);

std::vector<Address> partition(std::initializer_list<const char*> list) {
  std::vector<Address> out;
  for (const char* t : list) out.push_back(Address::parse(t));
  return out;
}

// Closed-cell membership from the brute address enumeration.
double brute_indicator(const oracle::Symbols& head, const Point& p, int n) {
  static std::map<int, std::map<std::string, std::vector<std::string>>> cache;
  if (!cache.count(n)) cache[n] = oracle::addresses_by_point(n);
  std::string w;
  for (int c : head) w += static_cast<char>('0' + c);
  for (const auto& a : cache[n].at(oracle::key(p))) {
    const auto expanded = a.substr(0, a.find('('));
    const char tail = a[a.find('(') + 1];
    std::string full = expanded + std::string(w.size(), tail);
    if (full.compare(0, w.size(), w) == 0) return 1.0;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("cell_oscillation examples") {
  for (int n = 0; n <= 6; ++n) {
    for (std::uint64_t i = 0; i < pow3(n); i += 7) {
      CHECK(cell_oscillation(kCoord, Word::from_index(i, n), 0) == std::ldexp(1.0, -n));
    }
  }
  CHECK(cell_oscillation(kHarm, Word::parse("2"), 0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(cell_oscillation(kConst, Word::parse("123"), 4) == 0.0);
}

TEST_CASE("cell_oscillation agrees with the brute cell scan") {
  const auto harm = oracle::harmonic({1.0, 0.0, 0.0}, 6);
  for (int n = 0; n <= 3; ++n) {
    for (const auto& w : oracle::words(n)) {
      const Word word(std::vector<Symbol>(w.begin(), w.end()));
      for (int k = 0; k + n <= 5; ++k) {
        const double ref = oracle::cell_range([&](const Point& p) { return harm.at(oracle::key(p)); }, w, k);
        CHECK(std::abs(cell_oscillation(kHarm, word, k) - ref) < 1e-12);
        const double ind =
            oracle::cell_range([&](const Point& p) { return brute_indicator({1}, p, n + k); }, w, k);
        CHECK(cell_oscillation(kInd, word, k) == ind);
      }
    }
  }
}

TEST_CASE("sampled oscillation is monotone in the refine depth") {
  const std::vector<GasketFunction> fs{kCoord, kHarm, kInd, kConst, GasketFunction::osc(),
                                       GasketFunction::biharmonic({{0, 1, 0}, {2, -1, 0}})};
  for (const auto& f : fs) {
    for (const char* w : {"", "1", "23", "312"}) {
      double previous = 0.0;
      for (int k = 0; k <= 4; ++k) {
        const double r = cell_oscillation(f, Word::parse(w), k);
        CHECK(r >= previous);
        previous = r;
      }
    }
  }
}

TEST_CASE("harmonic oscillation is attained at the corners") {
  const GasketFunction h = GasketFunction::harmonic({0.3, -1.2, 2.5});
  for (int n = 0; n <= 3; ++n) {
    for (std::uint64_t i = 0; i < pow3(n); ++i) {
      const Word w = Word::from_index(i, n);
      CHECK(cell_oscillation(h, w, 4) == cell_oscillation(h, w, 0));
    }
  }
  for (int n = 1; n <= 8; ++n) CHECK(variation_B(h, n) == total_oscillation(h, n, 0));
}

TEST_CASE("total_oscillation examples") {
  for (int n = 0; n <= 12; ++n) CHECK(total_oscillation(kCoord, n, 0) == std::pow(1.5, n));
  CHECK(total_oscillation(kHarm, 1, 0) == doctest::Approx(1.4).epsilon(1e-15));
  for (int n = 1; n <= 6; ++n) CHECK(total_oscillation(kInd, n, 1) == 2.0);
}

TEST_CASE("oscillation table metadata") {
  const OscillationTable c = oscillation_table(kCoord, 3, 0);
  CHECK(c.values.size() == 27);
  CHECK(c.exact);
  CHECK(*c.error_bound == 0.0);
  const OscillationTable o = oscillation_table(GasketFunction::osc(), 2, 1);
  CHECK_FALSE(o.exact);
  REQUIRE(o.error_bound);
  CHECK(*o.error_bound == doctest::Approx(2.0 * 3.0 * std::sqrt(0.125)));
  CHECK_FALSE(oscillation_table(kInd, 0, 0).exact);
  CHECK(oscillation_table(kInd, 0, 1).exact);
  CHECK_THROWS_AS(oscillation_table(harmonic_extend({1, 0, 0}, 3), 2, 2), Error);
}

TEST_CASE("variation_A examples") {
  const VariationReport ind = variation_A(kInd, 8, 2);
  for (double s : ind.partial_sums) CHECK(s == 2.0);
  CHECK(ind.verdict == Verdict::bounded);
  CHECK(*ind.variation == 2.0);
  const VariationReport x = variation_A(kCoord, 10, 0);
  for (std::size_t i = 0; i < x.partial_sums.size(); ++i) CHECK(x.partial_sums[i] == std::pow(1.5, i + 1));
  CHECK(x.verdict == Verdict::diverging);
  CHECK_FALSE(x.variation);
  const VariationReport c = variation_A(kConst, 8, 3);
  CHECK(c.verdict == Verdict::bounded);
  CHECK(*c.variation == 0.0);
}

TEST_CASE("variation_Astar examples") {
  const VariationReport x = variation_Astar(kCoord, 12, 0);
  for (double s : x.partial_sums) CHECK(std::abs(s - 1.0) <= 1e-12);
  CHECK(x.verdict == Verdict::bounded);
  CHECK(*x.variation == doctest::Approx(1.0));
  const VariationReport ind = variation_Astar(kInd, 6, 2);
  for (double s : ind.partial_sums) CHECK(s == 2.0);
  // Lipschitz constant 1 for the coordinate; 3 x for the scaled one
  const VariationReport scaled = variation_Astar(3.0 * kCoord, 8, 0);
  for (double s : scaled.partial_sums) CHECK(s <= std::pow(3.0, kGasketDim) * (1 + 1e-12));
}

TEST_CASE("variation_B examples") {
  CHECK(variation_B(kHarm, 1) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(variation_B(kHarm, 1) == total_oscillation(kHarm, 1, 0));
  CHECK(variation_B(kInd, 1) == 2.0);
  CHECK(variation_B(kConst, 5) == 0.0);
}

TEST_CASE("variation_C examples") {
  CHECK(variation_C(kCoord, partition({"(1)", "(3)"})) == 0.5);
  CHECK(variation_C(kInd, canonical_partition(2)) == 3.0);
  // ≺ order: q1, q12, q2, q13, q23, q3 -> 0, .5, 1, .25, .75, .5
  CHECK(variation_C(kCoord, canonical_partition(1)) == 2.5);
}

TEST_CASE("variation_C rejects bad partitions") {
  for (auto bad : {partition({"(1)"}), partition({"(2)", "(3)"}), partition({"(1)", "(2)"}),
                   partition({"(1)", "(2)", "2(1)", "(3)"}), partition({"(1)", "(2)", "(2)", "(3)"})}) {
    try {
      variation_C(kCoord, bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_partition);
    }
  }
}

TEST_CASE("variation_C never decreases under refinement") {
  std::mt19937 rng(99);
  const std::vector<GasketFunction> fs{kCoord, kHarm, kInd, GasketFunction::osc()};
  for (const auto& f : fs) {
    std::vector<Address> p = canonical_partition(1);
    const std::vector<Address> pool = canonical_partition(4);
    double previous = variation_C(f, p);
    for (int step = 0; step < 40; ++step) {
      const Address a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      const auto it = std::lower_bound(p.begin(), p.end(), a);
      if (it != p.end() && *it == a) continue;
      p.insert(it, a);
      const double v = variation_C(f, p);
      CHECK(v >= previous - 1e-15);
      previous = v;
    }
  }
}

TEST_CASE("variation_report covers all definitions") {
  CHECK(variation_report(kHarm, Definition::B, 5, 0).partial_sums ==
        variation_report(kHarm, Definition::A, 5, 0).partial_sums);
  const VariationReport c = variation_report(kInd, Definition::C, 4, 0);
  for (double s : c.partial_sums) CHECK(s == 3.0);
  CHECK(c.verdict == Verdict::bounded);
  const VariationReport cs = variation_report(kCoord, Definition::Cstar, 4, 0);
  CHECK(cs.partial_sums.size() == 4);
  const VariationReport bs = variation_report(kCoord, Definition::Bstar, 6, 0);
  for (double s : bs.partial_sums) CHECK(std::abs(s - 1.0) < 1e-12);
  CHECK(parse_definition("A*") == Definition::Astar);
  CHECK(parse_definition("Cstar") == Definition::Cstar);
  CHECK_THROWS_AS(parse_definition("D"), Error);
}

TEST_CASE("verdict rule") {
  CHECK(classify_partial_sums({1.0}) == Verdict::inconclusive);
  CHECK(classify_partial_sums({1.0, 2.0, 2.0, 2.0}) == Verdict::bounded);
  CHECK(classify_partial_sums({1.0, 1.1, 1.2, 1.3}) == Verdict::diverging);
  CHECK(classify_partial_sums({1.0, 1.01, 1.02, 1.03}) == Verdict::inconclusive);
}

TEST_CASE("holder_class_norm examples") {
  CHECK(holder_class_norm(kCoord, 1.0, 10, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(holder_class_norm(kCoord, 0.5, 10, 0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
  CHECK(holder_class_norm(kConst, 0.3, 6, 1) == 0.0);
  CHECK_THROWS_AS(holder_class_norm(kCoord, 1.5, 4, 0), Error);
}

TEST_CASE("classify_alpha examples") {
  const AlphaClassification x = classify_alpha(kCoord, 4, 10, 0);
  CHECK(x.slope == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(std::abs(x.gamma - 1.0) <= 1e-9);
  CHECK(x.dim_prediction == doctest::Approx(kGasketDim).epsilon(1e-9));
  const AlphaClassification h = classify_alpha(kHarm, 4, 10, 0);
  CHECK(h.dim_prediction >= kGasketDim);
  CHECK(h.dim_prediction <= std::log(108.0 / 5.0) / (2 * std::log(2.0)));
  const AlphaClassification c = classify_alpha(kConst, 3, 6, 0);
  CHECK(c.constant_like);
  CHECK(c.gamma == 1.0);
  CHECK(c.dim_prediction == kGasketDim);
  CHECK_THROWS_AS(classify_alpha(kCoord, 4, 6, 0), Error);
}

TEST_CASE("jordan_increasing_part examples") {
  const JordanDecomposition c = jordan_increasing_part(kConst, 2);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    CHECK(c.increasing[i] == 0.0);
    CHECK(c.remainder[i] == -4.0);
  }
  const JordanDecomposition ind = jordan_increasing_part(kInd, 2);
  CHECK(ind.increasing.back() == 3.0);
  CHECK(std::is_sorted(ind.increasing.begin(), ind.increasing.end()));
  const JordanDecomposition x = jordan_increasing_part(kCoord, 1);
  CHECK(x.increasing == std::vector<double>{0.0, 0.5, 1.0, 1.75, 2.25, 2.5});
  for (std::size_t i = 1; i < x.points.size(); ++i) {
    // h = g - f is increasing too
    CHECK(x.remainder[i] >= x.remainder[i - 1] - 1e-15);
  }
}

TEST_CASE("oscillation algebra examples") {
  const AlgebraCheck same = oscillation_algebra_check(kCoord, kCoord, 3, 0);
  CHECK(same.worst_sum_margin == 0.0);
  CHECK(same.cells == 27);
  const AlgebraCheck mixed = oscillation_algebra_check(kHarm, kInd, 4, 2);
  CHECK(mixed.worst_sum_margin >= -1e-12);
  CHECK(mixed.worst_product_margin >= -1e-12);
  CHECK(mixed.sum_variation_margin >= -1e-12);
  CHECK(mixed.star_sum_margin >= -1e-12);
  const AlgebraCheck scaled = oscillation_algebra_check(kCoord, GasketFunction::constant(3.0), 3, 0);
  CHECK(scaled.worst_product_margin == doctest::Approx(0.0));
  CHECK(scaled.product_margin_gf == doctest::Approx(0.0));
}

TEST_CASE("reciprocal bound examples") {
  const ReciprocalBound c = reciprocal_variation_bound(GasketFunction::constant(2.0), 4, 1);
  CHECK(c.bound == 0.0);
  for (double s : c.partial_sums) CHECK(s == 0.0);
  CHECK(c.holds);
  const ReciprocalBound f = reciprocal_variation_bound(2.0 + kInd, 6, 2);
  CHECK(f.m == 2.0);
  CHECK(f.variation == 2.0);
  CHECK(f.bound == 1.0);
  for (double s : f.partial_sums) CHECK(std::abs(s - 1.0 / 3.0) <= 1e-15);
  for (int n : f.sign_change_cells) CHECK(n == 0);
  CHECK(f.premise_met);
  CHECK(f.holds);
  const ReciprocalBound g = reciprocal_variation_bound(1.0 + kCoord, 6, 0);
  CHECK_FALSE(g.premise_met);
  CHECK(g.partial_sums.size() == 6);
  try {
    reciprocal_variation_bound(kCoord, 3, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_failed);
  }
}

TEST_CASE("saltus examples") {
  const SaltusCount s = saltus_cell_fraction(kInd, 0.5, 3, 2);
  CHECK(s.count == 2);
  CHECK(s.fraction == doctest::Approx(2.0 / 27.0));
  const double s8 = total_oscillation(kHarm, 8, 0);
  for (double eps : {0.01, 0.05, 0.2}) {
    CHECK(saltus_cell_fraction(kHarm, eps, 8, 0).count * eps <= s8);
  }
  CHECK(saltus_cell_fraction(kConst, 1e-9, 4, 2).count == 0);
  CHECK_THROWS_AS(saltus_cell_fraction(kConst, 0.0, 2, 0), Error);
}

TEST_CASE("graph_cover_sum examples") {
  const double expected = std::exp2(kGasketDim * kGasketDim / 2.0);
  CHECK(expected == doctest::Approx(2.39).epsilon(0.01));
  for (int n = 1; n <= 8; ++n) {
    CHECK(std::abs(graph_cover_sum(kConst, n, 1).value - expected) < 1e-9);
    CHECK(std::abs(graph_cover_sum(kCoord, n, 0).value - expected) < 1e-9);
  }
  double largest = 0.0;
  for (int n = 1; n <= 6; ++n) largest = std::max(largest, graph_cover_sum(kInd, n, 2).value);
  CHECK(largest < 2.0 * std::exp2(kGasketDim / 2.0 * kGasketDim) + expected);
}
