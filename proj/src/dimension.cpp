#include "gasket/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "gasket/error.hpp"
#include "gasket/numeric.hpp"
#include "gasket/variation.hpp"

namespace gasket {

BoxCounts box_count_bounds(const GasketFunction& f, int n, int k) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "box counts need n >= 1");
  const double lower = std::ldexp(total_oscillation(f, n, k), n);
  return {lower, 2.0 * static_cast<double>(pow3(n)) + lower};
}

DimensionEstimate box_dimension_estimate(const GasketFunction& f, int n_min, int n_max, int k) {
  if (n_min < 1 || n_max - n_min + 1 < 4) {
    throw Error(ErrorCode::invalid_argument, "dimension fit needs at least four levels, n >= 1");
  }
  DimensionEstimate e;
  std::vector<double> xs, upper_logs, lx, lower_logs;
  for (int n = n_min; n <= n_max; ++n) {
    const BoxCounts c = box_count_bounds(f, n, k);
    e.levels.push_back(n);
    e.lower_counts.push_back(c.lower);
    e.upper_counts.push_back(c.upper);
    xs.push_back(n);
    upper_logs.push_back(std::log2(c.upper));
    if (c.lower > 0.0) {
      lx.push_back(n);
      lower_logs.push_back(std::log2(c.lower));
    }
  }
  e.upper_slope = least_squares_slope(xs, upper_logs);
  e.degenerate = lx.size() < 2;
  if (!e.degenerate) e.lower_slope = least_squares_slope(lx, lower_logs);
  e.lower = e.degenerate ? kGasketDim : std::max(e.lower_slope, kGasketDim);
  e.upper = e.upper_slope;
  return e;
}

double holder_dim_bound(double s_exponent) {
  if (!(s_exponent >= 0.0 && s_exponent <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "Hoelder exponent must lie in [0, 1]");
  }
  return 1.0 - s_exponent + kGasketDim;
}

std::string to_string(CeilingKind kind) {
  switch (kind) {
    case CeilingKind::finite_energy: return "finite_energy";
    case CeilingKind::biharmonic: return "biharmonic";
    case CeilingKind::bv_A: return "bv_A";
    case CeilingKind::holder: return "holder";
  }
  return "finite_energy";
}

CeilingKind parse_ceiling_kind(const std::string& text) {
  for (CeilingKind k : {CeilingKind::finite_energy, CeilingKind::biharmonic, CeilingKind::bv_A,
                        CeilingKind::holder}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::invalid_argument, "unknown ceiling kind: " + text);
}

AnnotatedBound theoretical_ceiling(CeilingKind kind, std::optional<double> holder_exponent) {
  AnnotatedBound b;
  b.kind = kind;
  switch (kind) {
    case CeilingKind::finite_energy:
      b.value = std::log(108.0 / 5.0) / (2.0 * std::log(2.0));
      b.formula = "log(108/5) / (2 log 2)";
      break;
    case CeilingKind::biharmonic:
      b.value = std::log(18.0 / 5.0) / std::log(2.0);
      b.formula = "log(18/5) / log 2";
      break;
    case CeilingKind::bv_A:
      b.value = kGasketDim;
      b.formula = "log 3 / log 2";
      b.exact = true;
      break;
    case CeilingKind::holder:
      if (!holder_exponent) {
        throw Error(ErrorCode::invalid_argument, "holder ceiling needs an exponent");
      }
      b.value = holder_dim_bound(*holder_exponent);
      b.formula = "1 - s + log 3 / log 2";
      break;
  }
  return b;
}

AnnotatedBound checked_ceiling(CeilingKind kind, const GasketFunction& f, int n_max, int k,
                               std::optional<double> holder_exponent) {
  AnnotatedBound b = theoretical_ceiling(kind, holder_exponent);
  const FunctionTraits& traits = f.traits();
  auto unverified = [&](std::string why) {
    b.hypothesis_verified = false;
    b.flag = std::move(why);
  };
  switch (kind) {
    case CeilingKind::finite_energy: {
      const EnergyTrace trace = energy_trace(f, n_max);
      if (trace.verdict != EnergyVerdict::finite) {
        unverified("energy trace verdict: " + to_string(trace.verdict));
      }
      break;
    }
    case CeilingKind::biharmonic:
      if (!traits.biharmonic && !traits.harmonic) unverified("function is not a biharmonic preset");
      break;
    case CeilingKind::bv_A: {
      if (!traits.continuous) {
        unverified("function is not continuous");
      } else {
        const Verdict v = variation_A(f, n_max, k).verdict;
        if (v != Verdict::bounded) unverified("(A) verdict: " + to_string(v));
      }
      if (!b.hypothesis_verified) b.value.reset();
      break;
    }
    case CeilingKind::holder:
      if (!traits.modulus || traits.modulus->exponent < *holder_exponent) {
        unverified("no declared modulus with exponent >= " + std::to_string(*holder_exponent));
      }
      break;
  }
  return b;
}

}  // namespace gasket
