#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gasket/codespace.hpp"
#include "gasket/geometry.hpp"

namespace gasket {

/// A vertex u_w(q_corner) handed to an evaluator. The word need not be
/// reduced; `key` must equal vertex_key(word, corner).
struct VertexRef {
  std::span<const Symbol> word;
  Symbol corner = 1;
  VertexKey key;

  static VertexRef of(std::span<const Symbol> word, Symbol corner) {
    return {word, corner, vertex_key(word, corner)};
  }
};

/// Declared modulus of continuity omega(delta) = constant * delta^exponent.
struct Modulus {
  double constant = 1.0;
  double exponent = 1.0;

  double operator()(double delta) const;
};

/// What a function declares about itself. Used to label oscillation
/// estimates as exact or to attach error bounds.
struct FunctionTraits {
  bool continuous = true;
  /// Sampled cell oscillation at level n with refinement k equals the true
  /// oscillation whenever n + k >= exact_depth.
  std::optional<int> exact_depth;
  std::optional<Modulus> modulus;
  std::optional<double> lipschitz;
  /// Deepest level at which a sampled function is defined.
  std::optional<int> sample_depth;
  bool harmonic = false;
  bool biharmonic = false;
  bool is_constant = false;
};

/// Vertex values on V_n, sorted by key.
class SampleTable {
 public:
  SampleTable(int depth, std::vector<std::pair<VertexKey, double>> entries);

  int depth() const { return depth_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<VertexKey, double>>& entries() const { return entries_; }
  std::optional<double> find(const VertexKey& key) const;

 private:
  int depth_;
  std::vector<std::pair<VertexKey, double>> entries_;
};

struct BiharmonicSeed {
  std::array<double, 3> f0{};
  std::array<double, 3> lap0{};
};

namespace detail {
class FunctionNode;
}

/// A real-valued function on the gasket: a closed-form preset, a table of
/// vertex samples, or a sum/product/affine combination of those. Cheap to
/// copy; immutable and safe to share across threads.
class GasketFunction {
 public:
  static GasketFunction constant(double c);
  /// f(x1, x2) = x1.
  static GasketFunction coordinate();
  /// x1 sin(1/x1), and 0 on x1 = 0.
  static GasketFunction osc();
  /// 1 on the closed cell u_w(SG), 0 elsewhere.
  static GasketFunction cell_indicator(Word w);
  /// Harmonic function with the given values on V_0, evaluated on demand.
  static GasketFunction harmonic(std::array<double, 3> boundary);
  static GasketFunction biharmonic(BiharmonicSeed seed);
  static GasketFunction sampled(SampleTable table);

  /// Sampling and algebra never evaluate outside V_*; everything goes
  /// through this call.
  double operator()(const VertexRef& v) const;
  double at(const Address& a) const;
  /// Throws ErrorCode::invalid_argument for points outside the gasket.
  double at(const Point& p) const;

  const FunctionTraits& traits() const;
  std::string describe() const;

  /// Replaces the declared properties (continuity, modulus, Lipschitz
  /// constant) while keeping the evaluator.
  GasketFunction with_traits(FunctionTraits traits) const;

  friend GasketFunction operator+(const GasketFunction& f, const GasketFunction& g);
  friend GasketFunction operator*(const GasketFunction& f, const GasketFunction& g);
  friend GasketFunction operator*(double c, const GasketFunction& f);
  friend GasketFunction operator+(double c, const GasketFunction& f);
  friend GasketFunction operator-(const GasketFunction& f, const GasketFunction& g);
  /// 1/f; evaluation throws ErrorCode::precondition_failed where f is zero.
  friend GasketFunction reciprocal(const GasketFunction& f);

 private:
  explicit GasketFunction(std::shared_ptr<const detail::FunctionNode> node);
  std::shared_ptr<const detail::FunctionNode> node_;
};

/// The 1/5-2/5 rule. Result is clamped into the range of its inputs so the
/// discrete min-max property holds bit-for-bit.
double harmonic_midpoint(double vi, double vj, double vk);
/// Midpoint rule for the biharmonic extension at parent level m:
/// f(q_wij) = harmonic part + (1/3) 5^-m (7/25 lk + 9/25 li + 9/25 lj).
double biharmonic_midpoint(double fi, double fj, double fk, double li, double lj, double lk, int m);

/// Values on V_n by repeated application of the 1/5-2/5 rule.
GasketFunction harmonic_extend(std::array<double, 3> boundary, int depth);
/// f on V_n; its Laplacian is harmonic_extend(seed.lap0, depth).
GasketFunction biharmonic_extend(const BiharmonicSeed& seed, int depth);

/// E_m(f) = (5/3)^m * sum over level-m edges of (f(x) - f(y))^2.
double graph_energy(const GasketFunction& f, int m);

enum class EnergyVerdict { finite, infinite, inconclusive };
std::string to_string(EnergyVerdict v);

struct EnergyTrace {
  std::vector<double> values;  // E_0 .. E_{m_max}
  EnergyVerdict verdict = EnergyVerdict::inconclusive;
  std::optional<double> energy;  // last value when the verdict is finite
};

/// Finite when the last two increments are below 1e-9 * max(1, E_m);
/// infinite when the last three ratios are all >= 1.05.
EnergyTrace energy_trace(const GasketFunction& f, int m_max);

/// log(5/3) / (2 log 2).
double fukushima_exponent();

struct FukushimaResult {
  double max_ratio = 0.0;
  double bound = 0.0;
  double sigma = 0.0;
  bool holds = true;
};

/// Exhaustive pair scan over V_m of |f(x) - f(y)| / |x - y|^sigma against
/// 9 sqrt(E_m(f)).
FukushimaResult fukushima_check(const GasketFunction& f, int m);

}  // namespace gasket
