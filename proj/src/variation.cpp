#include "gasket/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gasket/config.hpp"
#include "gasket/error.hpp"
#include "gasket/numeric.hpp"
#include "parallel.hpp"

namespace gasket {
namespace {

void check_sampling(const GasketFunction& f, int n, int k, const char* what) {
  if (n < 0 || k < 0) throw Error(ErrorCode::invalid_argument, std::string(what) + ": negative level");
  check_depth(n + k, what);
  const auto& depth = f.traits().sample_depth;
  if (depth && n + k > *depth) {
    throw Error(ErrorCode::query_below_depth,
                std::string(what) + ": sampling depth " + std::to_string(n + k) +
                    " exceeds the table depth " + std::to_string(*depth));
  }
}

CellSamples samples_below(const GasketFunction& f, const Word& cell, int k) {
  CellSamples s;
  s.min = s.min_abs = std::numeric_limits<double>::infinity();
  s.max = s.max_abs = -std::numeric_limits<double>::infinity();
  for_each_subcell(cell, k, [&](std::span<const Symbol> w, const std::array<VertexKey, 3>& keys) {
    for (Symbol c = 1; c <= 3; ++c) {
      const double v = f(VertexRef{w, c, keys[c - 1]});
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
      s.min_abs = std::min(s.min_abs, std::abs(v));
      s.max_abs = std::max(s.max_abs, std::abs(v));
    }
  });
  return s;
}

std::vector<double> ranges(const std::vector<CellSamples>& cells) {
  std::vector<double> out(cells.size());
  std::transform(cells.begin(), cells.end(), out.begin(), [](const CellSamples& c) { return c.range(); });
  return out;
}

double sum_of(const std::vector<double>& xs, double exponent = 1.0) {
  CompensatedSum sum;
  for (double x : xs) sum.add(exponent == 1.0 ? x : std::pow(x, exponent));
  return sum.value();
}

VariationReport report_from(Definition def, std::vector<int> levels, std::vector<double> sums) {
  VariationReport r;
  r.definition = def;
  r.levels = std::move(levels);
  r.partial_sums = std::move(sums);
  r.verdict = classify_partial_sums(r.partial_sums);
  if (r.verdict == Verdict::bounded) {
    r.variation = *std::max_element(r.partial_sums.begin(), r.partial_sums.end());
  }
  return r;
}

VariationReport oscillation_report(const GasketFunction& f, Definition def, int n_max, int k,
                                   double exponent) {
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  std::vector<int> levels;
  std::vector<double> sums;
  for (int n = 1; n <= n_max; ++n) {
    levels.push_back(n);
    sums.push_back(sum_of(oscillation_table(f, n, k).values, exponent));
  }
  return report_from(def, std::move(levels), std::move(sums));
}

}  // namespace

std::vector<CellSamples> sample_cells(const GasketFunction& f, int n, int k) {
  check_sampling(f, n, k, "sample_cells");
  std::vector<CellSamples> out(static_cast<std::size_t>(pow3(n)));
  detail::parallel_for(out.size(), [&](std::size_t idx) {
    out[idx] = samples_below(f, Word::from_index(idx, n), k);
  });
  return out;
}

double OscillationTable::total() const { return sum_of(values); }

OscillationTable oscillation_table(const GasketFunction& f, int n, int k) {
  OscillationTable t;
  t.level = n;
  t.refine = k;
  t.values = ranges(sample_cells(f, n, k));
  const FunctionTraits& traits = f.traits();
  t.exact = traits.exact_depth && n + k >= *traits.exact_depth;
  if (t.exact) {
    t.error_bound = 0.0;
  } else if (traits.modulus) {
    t.error_bound = 2.0 * (*traits.modulus)(std::ldexp(1.0, -(n + k)));
  }
  return t;
}

double cell_oscillation(const GasketFunction& f, const Word& w, int k) {
  check_sampling(f, static_cast<int>(w.size()), k, "cell_oscillation");
  return samples_below(f, w, k).range();
}

double total_oscillation(const GasketFunction& f, int n, int k) {
  return oscillation_table(f, n, k).total();
}

std::string to_string(Definition d) {
  switch (d) {
    case Definition::A: return "A";
    case Definition::B: return "B";
    case Definition::C: return "C";
    case Definition::Astar: return "Astar";
    case Definition::Bstar: return "Bstar";
    case Definition::Cstar: return "Cstar";
  }
  return "A";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Definition parse_definition(const std::string& text) {
  for (Definition d : {Definition::A, Definition::B, Definition::C, Definition::Astar,
                       Definition::Bstar, Definition::Cstar}) {
    if (text == to_string(d)) return d;
  }
  if (text == "A*") return Definition::Astar;
  if (text == "B*") return Definition::Bstar;
  if (text == "C*") return Definition::Cstar;
  throw Error(ErrorCode::invalid_argument, "unknown variation definition: " + text);
}

Verdict classify_partial_sums(const std::vector<double>& sums) {
  if (sums.size() < 2) return Verdict::inconclusive;
  const std::size_t first = sums.size() >= 3 ? sums.size() - 3 : 0;
  bool stable = true;
  bool growing = true;
  for (std::size_t i = first; i + 1 < sums.size(); ++i) {
    const double a = sums[i];
    const double b = sums[i + 1];
    stable = stable && std::abs(b - a) <= kStabilityTolerance * std::max(1.0, a);
    growing = growing && a > 0.0 && b / a >= 1.0 + kDivergenceRatio;
  }
  if (stable) return Verdict::bounded;
  if (growing) return Verdict::diverging;
  return Verdict::inconclusive;
}

VariationReport variation_A(const GasketFunction& f, int n_max, int k) {
  return oscillation_report(f, Definition::A, n_max, k, 1.0);
}

VariationReport variation_Astar(const GasketFunction& f, int n_max, int k) {
  return oscillation_report(f, Definition::Astar, n_max, k, kGasketDim);
}

double variation_B(const GasketFunction& f, int n, double exponent) {
  check_sampling(f, n, 0, "variation_B");
  CompensatedSum sum;
  for_each_cell(n, [&](std::span<const Symbol> w, const std::array<VertexKey, 3>& keys) {
    const double a = f(VertexRef{w, 1, keys[0]});
    const double b = f(VertexRef{w, 2, keys[1]});
    const double c = f(VertexRef{w, 3, keys[2]});
    const double r = std::max({a, b, c}) - std::min({a, b, c});
    sum.add(exponent == 1.0 ? r : std::pow(r, exponent));
  });
  return sum.value();
}

double variation_C(const GasketFunction& f, const std::vector<Address>& partition, double exponent) {
  if (partition.size() < 2 || partition.front() != Address::constant(1) ||
      partition.back() != Address::constant(3)) {
    throw Error(ErrorCode::invalid_partition, "partition must run from (1) to (3)");
  }
  for (std::size_t i = 1; i < partition.size(); ++i) {
    if (!(partition[i - 1] < partition[i])) {
      throw Error(ErrorCode::invalid_partition, "partition is not strictly increasing at " +
                                                    partition[i].to_string());
    }
  }
  CompensatedSum sum;
  double previous = f.at(partition.front());
  for (std::size_t i = 1; i < partition.size(); ++i) {
    const double current = f.at(partition[i]);
    const double d = std::abs(current - previous);
    sum.add(exponent == 1.0 ? d : std::pow(d, exponent));
    previous = current;
  }
  return sum.value();
}

VariationReport variation_report(const GasketFunction& f, Definition def, int n_max, int k) {
  switch (def) {
    case Definition::A: return variation_A(f, n_max, k);
    case Definition::Astar: return variation_Astar(f, n_max, k);
    default: break;
  }
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  const bool star = def == Definition::Bstar || def == Definition::Cstar;
  const double exponent = star ? kGasketDim : 1.0;
  std::vector<int> levels;
  std::vector<double> sums;
  for (int n = 1; n <= n_max; ++n) {
    levels.push_back(n);
    if (def == Definition::B || def == Definition::Bstar) {
      sums.push_back(variation_B(f, n, exponent));
    } else {
      check_sampling(f, n, 0, "variation_C");
      sums.push_back(variation_C(f, canonical_partition(n), exponent));
    }
  }
  return report_from(def, std::move(levels), std::move(sums));
}

double holder_class_norm(const GasketFunction& f, double alpha, int n_max, int k) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "alpha must lie in [0, 1]");
  }
  double best = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double ratio = total_oscillation(f, n, k) / std::exp2(n * (kGasketDim - alpha));
    best = std::max(best, ratio);
  }
  return best;
}

AlphaClassification classify_alpha(const GasketFunction& f, int n_min, int n_max, int k) {
  if (n_min < 1 || n_max - n_min + 1 < 4) {
    throw Error(ErrorCode::invalid_argument, "classify_alpha needs at least four levels, n >= 1");
  }
  std::vector<double> xs, ys;
  for (int n = n_min; n <= n_max; ++n) {
    const double r = total_oscillation(f, n, k);
    if (r > 0.0) {
      xs.push_back(n);
      ys.push_back(std::log2(r));
    }
  }
  AlphaClassification c;
  if (xs.size() < 2) {
    c.constant_like = true;
    c.gamma = 1.0;
    c.dim_prediction = kGasketDim;
    return c;
  }
  c.slope = least_squares_slope(xs, ys);
  c.gamma = std::clamp(kGasketDim - c.slope, 0.0, 1.0);
  c.dim_prediction = 1.0 - c.gamma + kGasketDim;
  return c;
}

JordanDecomposition jordan_increasing_part(const GasketFunction& f, int n) {
  JordanDecomposition j;
  j.points = canonical_partition(n);
  double running = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < j.points.size(); ++i) {
    const double v = f.at(j.points[i]);
    if (i > 0) running += std::abs(v - previous);
    j.increasing.push_back(running);
    j.remainder.push_back(running - v);
    previous = v;
  }
  return j;
}

AlgebraCheck oscillation_algebra_check(const GasketFunction& f, const GasketFunction& g, int n, int k) {
  const auto sf = sample_cells(f, n, k);
  const auto sg = sample_cells(g, n, k);
  const auto ssum = sample_cells(f + g, n, k);
  const auto sprod = sample_cells(f * g, n, k);
  AlgebraCheck c;
  c.cells = static_cast<int>(sf.size());
  c.worst_sum_margin = std::numeric_limits<double>::infinity();
  c.worst_product_margin = std::numeric_limits<double>::infinity();
  double mf = 0.0, mg = 0.0;
  CompensatedSum vf, vg, vsum, vprod, starf, starg, starsum;
  for (std::size_t i = 0; i < sf.size(); ++i) {
    const double rf = sf[i].range(), rg = sg[i].range();
    const double rs = ssum[i].range(), rp = sprod[i].range();
    c.worst_sum_margin = std::min(c.worst_sum_margin, rf + rg - rs);
    c.worst_product_margin =
        std::min(c.worst_product_margin, sg[i].max_abs * rf + sf[i].max_abs * rg - rp);
    mf = std::max(mf, sf[i].max_abs);
    mg = std::max(mg, sg[i].max_abs);
    vf.add(rf);
    vg.add(rg);
    vsum.add(rs);
    vprod.add(rp);
    starf.add(std::pow(rf, kGasketDim));
    starg.add(std::pow(rg, kGasketDim));
    starsum.add(std::pow(rs, kGasketDim));
  }
  c.sum_variation_margin = vf.value() + vg.value() - vsum.value();
  c.star_sum_margin = std::exp2(kGasketDim - 1.0) * (starf.value() + starg.value()) - starsum.value();
  c.product_margin_ff = mf * vf.value() + mg * vg.value() - vprod.value();
  c.product_margin_gf = mg * vf.value() + mf * vg.value() - vprod.value();
  return c;
}

ReciprocalBound reciprocal_variation_bound(const GasketFunction& f, int n_max, int k) {
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  ReciprocalBound r;
  const auto deepest = sample_cells(f, n_max, k);
  r.m = std::numeric_limits<double>::infinity();
  for (const auto& c : deepest) r.m = std::min(r.m, c.min_abs);
  if (!(r.m > 0.0)) {
    throw Error(ErrorCode::precondition_failed, "reciprocal bound needs |f| >= m > 0 on every sample");
  }
  const VariationReport va = variation_A(f, n_max, k);
  r.premise_met = va.verdict == Verdict::bounded;
  r.variation = *std::max_element(va.partial_sums.begin(), va.partial_sums.end());
  r.bound = 2.0 * r.variation / (r.m * r.m);
  const GasketFunction inv = reciprocal(f);
  r.holds = true;
  for (int n = 1; n <= n_max; ++n) {
    const auto cells = sample_cells(f, n, k);
    int changes = 0;
    for (const auto& c : cells) changes += c.sign_change() ? 1 : 0;
    r.sign_change_cells.push_back(changes);
    const double s = sum_of(ranges(sample_cells(inv, n, k)));
    r.partial_sums.push_back(s);
    r.holds = r.holds && s <= r.bound + 1e-12 * std::max(1.0, r.bound);
  }
  return r;
}

SaltusCount saltus_cell_fraction(const GasketFunction& f, double epsilon, int n, int k) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  const auto table = oscillation_table(f, n, k);
  SaltusCount s;
  for (double r : table.values) s.count += r >= epsilon ? 1 : 0;
  s.fraction = static_cast<double>(s.count) / static_cast<double>(table.values.size());
  return s;
}

CoverSum graph_cover_sum(const GasketFunction& f, int n, int k) {
  const auto table = oscillation_table(f, n, k);
  const double side = std::ldexp(1.0, -n);
  const double third = 1.0 / static_cast<double>(pow3(n));
  const double root = std::exp2(kGasketDim / 2.0);
  CompensatedSum value, chain;
  for (double r : table.values) {
    value.add(std::pow(root * std::max(side, r), kGasketDim));
    chain.add(root * std::max(third, r));
  }
  return {value.value(), chain.value()};
}

}  // namespace gasket
