#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gasket/codespace.hpp"
#include "gasket/functions.hpp"

namespace gasket {

inline constexpr int kDefaultRefine = 3;
inline constexpr double kStabilityTolerance = 1e-9;
inline constexpr double kDivergenceRatio = 0.05;

/// Min/max of a function over the sampled vertices of one cell.
struct CellSamples {
  double min = 0.0;
  double max = 0.0;
  double min_abs = 0.0;
  double max_abs = 0.0;

  double range() const { return max - min; }
  bool sign_change() const { return min < 0.0 && max > 0.0; }
};

/// Samples of f over the vertices of V_{n+k} inside each closed level-n
/// cell, in word order.
std::vector<CellSamples> sample_cells(const GasketFunction& f, int n, int k);

/// Sampled oscillations of all level-n cells. Every value is a lower bound
/// of the true sup; `exact` says the bound is attained, `error_bound` (when
/// the function declares a modulus) bounds the gap from above.
struct OscillationTable {
  int level = 0;
  int refine = 0;
  std::vector<double> values;  // indexed by Word::index()
  bool exact = false;
  std::optional<double> error_bound;

  double total() const;
};

OscillationTable oscillation_table(const GasketFunction& f, int n, int k);

/// max - min of f over the vertices of V_{|w|+k} in the closed cell u_w(SG).
double cell_oscillation(const GasketFunction& f, const Word& w, int k);
/// R(n, f): sum of the level-n cell oscillations.
double total_oscillation(const GasketFunction& f, int n, int k);

enum class Definition { A, B, C, Astar, Bstar, Cstar };
enum class Verdict { bounded, diverging, inconclusive };
std::string to_string(Definition d);
std::string to_string(Verdict v);
Definition parse_definition(const std::string& text);

struct VariationReport {
  Definition definition = Definition::A;
  std::vector<int> levels;
  std::vector<double> partial_sums;
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> variation;  // sup of the partial sums when bounded
};

/// Stopping rule over the last three partial sums: bounded when successive
/// changes are within kStabilityTolerance * max(1, S_n), diverging when
/// successive ratios are at least 1 + kDivergenceRatio.
Verdict classify_partial_sums(const std::vector<double>& sums);

VariationReport variation_A(const GasketFunction& f, int n_max, int k);
VariationReport variation_Astar(const GasketFunction& f, int n_max, int k);
/// Corner-triple oscillations only; `exponent` 1 gives (B), s gives (B*).
double variation_B(const GasketFunction& f, int n, double exponent = 1.0);
/// Partition sum over a strictly increasing chain from (1) to (3).
/// Throws ErrorCode::invalid_partition otherwise.
double variation_C(const GasketFunction& f, const std::vector<Address>& partition,
                   double exponent = 1.0);
/// Per-level report for any definition; (C) uses canonical_partition(n).
VariationReport variation_report(const GasketFunction& f, Definition def, int n_max, int k);

/// sup over 1 <= n <= n_max of R(n, f) / 2^(n (s - alpha)).
double holder_class_norm(const GasketFunction& f, double alpha, int n_max, int k);

struct AlphaClassification {
  double slope = 0.0;  // least-squares slope of log2 R(n, f)
  double gamma = 1.0;
  double dim_prediction = 0.0;
  bool constant_like = false;
};
AlphaClassification classify_alpha(const GasketFunction& f, int n_min, int n_max, int k);

struct JordanDecomposition {
  std::vector<Address> points;
  std::vector<double> increasing;  // g: running partition variation
  std::vector<double> remainder;   // h = g - f
};
JordanDecomposition jordan_increasing_part(const GasketFunction& f, int n);

struct AlgebraCheck {
  double worst_sum_margin = 0.0;      // min over cells of R_f + R_g - R_{f+g}
  double worst_product_margin = 0.0;  // min of M_g R_f + M_f R_g - R_{fg}
  double sum_variation_margin = 0.0;  // S(f) + S(g) - S(f+g) at level n
  double star_sum_margin = 0.0;       // 2^(s-1) (S*(f) + S*(g)) - S*(f+g)
  /// V(fg) against both constant orderings, with global sampled sup norms:
  /// M_f S(f) + M_g S(g) and M_g S(f) + M_f S(g).
  double product_margin_ff = 0.0;
  double product_margin_gf = 0.0;
  int cells = 0;
};
AlgebraCheck oscillation_algebra_check(const GasketFunction& f, const GasketFunction& g, int n,
                                       int k);

struct ReciprocalBound {
  double m = 0.0;            // min |f| over the samples
  double variation = 0.0;    // (A)-estimate of f
  double bound = 0.0;        // 2 variation / m^2
  std::vector<double> partial_sums;  // sum of R_{1/f} for n = 1..n_max
  std::vector<int> sign_change_cells;
  bool premise_met = false;  // f has a bounded (A) verdict
  bool holds = false;
};
/// Throws ErrorCode::precondition_failed when some sample has |f| == 0.
ReciprocalBound reciprocal_variation_bound(const GasketFunction& f, int n_max, int k);

struct SaltusCount {
  std::uint64_t count = 0;
  double fraction = 0.0;
};
SaltusCount saltus_cell_fraction(const GasketFunction& f, double epsilon, int n, int k);

struct CoverSum {
  /// sum_w (2^(s/2) max(2^-n, R_w))^s
  double value = 0.0;
  /// sum_w 2^(s/2) max(3^-n, R_w), the coarser chain bound
  double chain_bound = 0.0;
};
CoverSum graph_cover_sum(const GasketFunction& f, int n, int k);

}  // namespace gasket
