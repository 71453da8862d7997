#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasket/functions.hpp"

namespace gasket {

struct BoxCounts {
  double lower = 0.0;  // 2^n R(n, f)
  double upper = 0.0;  // 2 * 3^n + 2^n R(n, f)
};

/// Box-count bracket for the graph of f at delta = 2^-n.
BoxCounts box_count_bounds(const GasketFunction& f, int n, int k);

struct DimensionEstimate {
  std::vector<int> levels;
  std::vector<double> lower_counts;
  std::vector<double> upper_counts;
  double lower_slope = 0.0;
  double upper_slope = 0.0;
  /// Reported interval: [max(lower_slope, log3/log2), upper_slope].
  double lower = 0.0;
  double upper = 0.0;
  bool degenerate = false;  // every lower count was zero
};

/// Least-squares slopes of log2 of both counts over n_min..n_max (at least
/// four levels).
DimensionEstimate box_dimension_estimate(const GasketFunction& f, int n_min, int n_max, int k);

/// 1 - s + log3/log2 for a Hoelder exponent s in [0, 1].
double holder_dim_bound(double s_exponent);

enum class CeilingKind { finite_energy, biharmonic, bv_A, holder };
std::string to_string(CeilingKind kind);
CeilingKind parse_ceiling_kind(const std::string& text);

struct AnnotatedBound {
  CeilingKind kind = CeilingKind::finite_energy;
  std::optional<double> value;  // withheld when the hypothesis fails
  std::string formula;
  bool exact = false;           // the bound is an equality (bv_A)
  bool hypothesis_verified = true;
  std::string flag;             // why the hypothesis is unverified
};

/// Closed-form value of the ceiling, with the hypothesis taken on trust.
AnnotatedBound theoretical_ceiling(CeilingKind kind, std::optional<double> holder_exponent = {});

/// Same, but cross-checks the hypothesis on f (energy trace for
/// finite_energy, preset kind for biharmonic, continuity and the (A)
/// verdict for bv_A). Unverified hypotheses are flagged; a failed bv_A
/// hypothesis withholds the value.
AnnotatedBound checked_ceiling(CeilingKind kind, const GasketFunction& f, int n_max = 8,
                               int k = 2, std::optional<double> holder_exponent = {});

}  // namespace gasket
