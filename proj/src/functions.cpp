#include "gasket/functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gasket/config.hpp"
#include "gasket/error.hpp"
#include "gasket/numeric.hpp"

namespace gasket {

namespace detail {

class FunctionNode {
 public:
  explicit FunctionNode(FunctionTraits traits) : traits_(std::move(traits)) {}
  virtual ~FunctionNode() = default;

  virtual double value(const VertexRef& v) const = 0;
  virtual std::string describe() const = 0;
  const FunctionTraits& traits() const { return traits_; }

 private:
  FunctionTraits traits_;
};

}  // namespace detail

namespace {

using detail::FunctionNode;
using Triple = std::array<double, 3>;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string triple_text(const Triple& t) { return num(t[0]) + "," + num(t[1]) + "," + num(t[2]); }

double pow5(int m) {
  double p = 1.0;
  for (int i = 0; i < m; ++i) p *= 5.0;
  return p;
}

// Corner triple of child cell i from the parent's triple. `mid(i, j, k)`
// yields the value at the midpoint of corners i and j (0-based).
template <typename Mid>
Triple child_triple(const Triple& v, Symbol i, Mid&& mid) {
  switch (i) {
    case 1: return {v[0], mid(0, 1, 2), mid(0, 2, 1)};
    case 2: return {mid(0, 1, 2), v[1], mid(1, 2, 0)};
    default: return {mid(0, 2, 1), mid(1, 2, 0), v[2]};
  }
}

Triple harmonic_child(const Triple& v, Symbol i) {
  return child_triple(v, i, [&](int a, int b, int c) { return harmonic_midpoint(v[a], v[b], v[c]); });
}

std::pair<Triple, Triple> biharmonic_child(const Triple& f, const Triple& l, Symbol i, int m) {
  const Triple fc = child_triple(f, i, [&](int a, int b, int c) {
    return biharmonic_midpoint(f[a], f[b], f[c], l[a], l[b], l[c], m);
  });
  return {fc, harmonic_child(l, i)};
}

class ConstantNode final : public FunctionNode {
 public:
  explicit ConstantNode(double c) : FunctionNode(make_traits()), c_(c) {}
  double value(const VertexRef&) const override { return c_; }
  std::string describe() const override { return "constant(" + num(c_) + ")"; }

 private:
  static FunctionTraits make_traits() {
    FunctionTraits t;
    t.exact_depth = 0;
    t.modulus = Modulus{0.0, 1.0};
    t.lipschitz = 0.0;
    t.harmonic = true;
    t.is_constant = true;
    return t;
  }
  double c_;
};

class CoordinateNode final : public FunctionNode {
 public:
  CoordinateNode() : FunctionNode(make_traits()) {}
  double value(const VertexRef& v) const override { return v.key.x(); }
  std::string describe() const override { return "coordinate"; }

 private:
  static FunctionTraits make_traits() {
    FunctionTraits t;
    t.exact_depth = 0;  // linear: extremes on a cell sit at its corners
    t.modulus = Modulus{1.0, 1.0};
    t.lipschitz = 1.0;
    return t;
  }
};

class OscNode final : public FunctionNode {
 public:
  OscNode() : FunctionNode(make_traits()) {}
  double value(const VertexRef& v) const override {
    const double x = v.key.x();
    return x == 0.0 ? 0.0 : x * std::sin(1.0 / x);
  }
  std::string describe() const override { return "osc"; }

 private:
  static FunctionTraits make_traits() {
    FunctionTraits t;
    // |x sin(1/x) - y sin(1/y)| <= 3 |x - y|^(1/2) on [0, 1].
    t.modulus = Modulus{3.0, 0.5};
    return t;
  }
};

class CellIndicatorNode final : public FunctionNode {
 public:
  explicit CellIndicatorNode(Word w) : FunctionNode(make_traits(w)), w_(std::move(w)) {}

  double value(const VertexRef& v) const override {
    const Word word{std::vector<Symbol>(v.word.begin(), v.word.end())};
    for (const Address& a : vertex_addresses(word, v.corner)) {
      if (a.has_prefix(w_)) return 1.0;
    }
    return 0.0;
  }
  std::string describe() const override { return "cell_indicator(" + w_.to_string() + ")"; }

 private:
  static FunctionTraits make_traits(const Word& w) {
    FunctionTraits t;
    t.continuous = w.empty();
    t.exact_depth = static_cast<int>(w.size());
    return t;
  }
  Word w_;
};

class HarmonicNode final : public FunctionNode {
 public:
  explicit HarmonicNode(Triple boundary) : FunctionNode(make_traits()), boundary_(boundary) {}

  double value(const VertexRef& v) const override {
    Triple t = boundary_;
    for (Symbol i : v.word) t = harmonic_child(t, i);
    return t[v.corner - 1];
  }
  std::string describe() const override { return "harmonic(" + triple_text(boundary_) + ")"; }

 private:
  static FunctionTraits make_traits() {
    FunctionTraits t;
    t.exact_depth = 0;  // min-max property on every cell
    t.harmonic = true;
    return t;
  }
  Triple boundary_;
};

class BiharmonicNode final : public FunctionNode {
 public:
  explicit BiharmonicNode(BiharmonicSeed seed) : FunctionNode(make_traits(seed)), seed_(seed) {}

  double value(const VertexRef& v) const override {
    Triple f = seed_.f0;
    Triple l = seed_.lap0;
    int m = 0;
    for (Symbol i : v.word) std::tie(f, l) = biharmonic_child(f, l, i, m++);
    return f[v.corner - 1];
  }
  std::string describe() const override {
    return "biharmonic(f0=" + triple_text(seed_.f0) + ";lap0=" + triple_text(seed_.lap0) + ")";
  }

 private:
  static FunctionTraits make_traits(const BiharmonicSeed& seed) {
    FunctionTraits t;
    t.biharmonic = true;
    if (seed.lap0 == Triple{0.0, 0.0, 0.0}) {
      t.harmonic = true;
      t.exact_depth = 0;
    }
    return t;
  }
  BiharmonicSeed seed_;
};

class SampledNode final : public FunctionNode {
 public:
  explicit SampledNode(SampleTable table) : FunctionNode(make_traits(table)), table_(std::move(table)) {}

  double value(const VertexRef& v) const override {
    if (auto found = table_.find(v.key)) return *found;
    throw Error(ErrorCode::query_below_depth,
                "vertex is not in the sampled table of depth " + std::to_string(table_.depth()));
  }
  std::string describe() const override {
    return "samples(depth=" + std::to_string(table_.depth()) + ")";
  }

 private:
  static FunctionTraits make_traits(const SampleTable& table) {
    FunctionTraits t;
    t.continuous = false;  // unknown off the table unless declared
    t.sample_depth = table.depth();
    return t;
  }
  SampleTable table_;
};

std::optional<int> min_depth(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// Traits of f + g and f * g: exactness and moduli only survive when one side
// is constant.
FunctionTraits combine_traits(const FunctionTraits& f, const FunctionTraits& g, bool product) {
  FunctionTraits t;
  t.continuous = f.continuous && g.continuous;
  t.sample_depth = min_depth(f.sample_depth, g.sample_depth);
  t.is_constant = f.is_constant && g.is_constant;
  if (f.is_constant || g.is_constant) {
    const FunctionTraits& other = f.is_constant ? g : f;
    t.exact_depth = other.exact_depth;
    if (!product) {
      t.modulus = other.modulus;
      t.lipschitz = other.lipschitz;
      t.harmonic = other.harmonic;
    }
  } else if (!product) {
    if (f.lipschitz && g.lipschitz) t.lipschitz = *f.lipschitz + *g.lipschitz;
    t.harmonic = f.harmonic && g.harmonic;
    if (t.harmonic) t.exact_depth = 0;
  }
  return t;
}

class SumNode final : public FunctionNode {
 public:
  SumNode(std::shared_ptr<const FunctionNode> f, std::shared_ptr<const FunctionNode> g)
      : FunctionNode(combine_traits(f->traits(), g->traits(), false)), f_(std::move(f)), g_(std::move(g)) {}
  double value(const VertexRef& v) const override { return f_->value(v) + g_->value(v); }
  std::string describe() const override { return "(" + f_->describe() + " + " + g_->describe() + ")"; }

 private:
  std::shared_ptr<const FunctionNode> f_, g_;
};

class ProductNode final : public FunctionNode {
 public:
  ProductNode(std::shared_ptr<const FunctionNode> f, std::shared_ptr<const FunctionNode> g)
      : FunctionNode(combine_traits(f->traits(), g->traits(), true)), f_(std::move(f)), g_(std::move(g)) {}
  double value(const VertexRef& v) const override { return f_->value(v) * g_->value(v); }
  std::string describe() const override { return "(" + f_->describe() + " * " + g_->describe() + ")"; }

 private:
  std::shared_ptr<const FunctionNode> f_, g_;
};

class ScaledNode final : public FunctionNode {
 public:
  ScaledNode(double factor, std::shared_ptr<const FunctionNode> f)
      : FunctionNode(make_traits(factor, f->traits())), factor_(factor), f_(std::move(f)) {}
  double value(const VertexRef& v) const override { return factor_ * f_->value(v); }
  std::string describe() const override { return num(factor_) + "*" + f_->describe(); }

 private:
  static FunctionTraits make_traits(double factor, FunctionTraits t) {
    if (t.modulus) t.modulus->constant *= std::abs(factor);
    if (t.lipschitz) *t.lipschitz *= std::abs(factor);
    return t;
  }
  double factor_;
  std::shared_ptr<const FunctionNode> f_;
};

class ReciprocalNode final : public FunctionNode {
 public:
  explicit ReciprocalNode(std::shared_ptr<const FunctionNode> f)
      : FunctionNode(make_traits(f->traits())), f_(std::move(f)) {}
  double value(const VertexRef& v) const override {
    const double x = f_->value(v);
    if (x == 0.0) throw Error(ErrorCode::precondition_failed, "reciprocal of a function with a zero");
    return 1.0 / x;
  }
  std::string describe() const override { return "1/" + f_->describe(); }

 private:
  static FunctionTraits make_traits(const FunctionTraits& f) {
    FunctionTraits t;
    t.continuous = f.continuous;
    t.sample_depth = f.sample_depth;
    t.is_constant = f.is_constant;
    if (f.is_constant) t.exact_depth = 0;
    return t;
  }
  std::shared_ptr<const FunctionNode> f_;
};

class RelabeledNode final : public FunctionNode {
 public:
  RelabeledNode(FunctionTraits traits, std::shared_ptr<const FunctionNode> f)
      : FunctionNode(std::move(traits)), f_(std::move(f)) {}
  double value(const VertexRef& v) const override { return f_->value(v); }
  std::string describe() const override { return f_->describe(); }

 private:
  std::shared_ptr<const FunctionNode> f_;
};

}  // namespace

double Modulus::operator()(double delta) const { return constant * std::pow(delta, exponent); }

SampleTable::SampleTable(int depth, std::vector<std::pair<VertexKey, double>> entries)
    : depth_(depth), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first) {
      throw Error(ErrorCode::invalid_argument, "duplicate vertex in sample table");
    }
  }
}

std::optional<double> SampleTable::find(const VertexKey& key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const auto& e, const VertexKey& k) { return e.first < k; });
  if (it == entries_.end() || it->first != key) return std::nullopt;
  return it->second;
}

GasketFunction::GasketFunction(std::shared_ptr<const detail::FunctionNode> node)
    : node_(std::move(node)) {}

GasketFunction GasketFunction::constant(double c) {
  return GasketFunction(std::make_shared<ConstantNode>(c));
}
GasketFunction GasketFunction::coordinate() {
  return GasketFunction(std::make_shared<CoordinateNode>());
}
GasketFunction GasketFunction::osc() { return GasketFunction(std::make_shared<OscNode>()); }
GasketFunction GasketFunction::cell_indicator(Word w) {
  return GasketFunction(std::make_shared<CellIndicatorNode>(std::move(w)));
}
GasketFunction GasketFunction::harmonic(std::array<double, 3> boundary) {
  return GasketFunction(std::make_shared<HarmonicNode>(boundary));
}
GasketFunction GasketFunction::biharmonic(BiharmonicSeed seed) {
  return GasketFunction(std::make_shared<BiharmonicNode>(seed));
}
GasketFunction GasketFunction::sampled(SampleTable table) {
  return GasketFunction(std::make_shared<SampledNode>(std::move(table)));
}

double GasketFunction::operator()(const VertexRef& v) const { return node_->value(v); }

double GasketFunction::at(const Address& a) const {
  return node_->value(VertexRef::of(a.prefix().symbols(), a.tail()));
}

double GasketFunction::at(const Point& p) const {
  const auto a = locate(p);
  if (!a) throw Error(ErrorCode::invalid_argument, "point " + p.to_string() + " is not in the gasket");
  return at(*a);
}

const FunctionTraits& GasketFunction::traits() const { return node_->traits(); }
std::string GasketFunction::describe() const { return node_->describe(); }

GasketFunction GasketFunction::with_traits(FunctionTraits traits) const {
  return GasketFunction(std::make_shared<RelabeledNode>(std::move(traits), node_));
}

GasketFunction operator+(const GasketFunction& f, const GasketFunction& g) {
  return GasketFunction(std::make_shared<SumNode>(f.node_, g.node_));
}
GasketFunction operator*(const GasketFunction& f, const GasketFunction& g) {
  return GasketFunction(std::make_shared<ProductNode>(f.node_, g.node_));
}
GasketFunction operator*(double c, const GasketFunction& f) {
  return GasketFunction(std::make_shared<ScaledNode>(c, f.node_));
}
GasketFunction operator+(double c, const GasketFunction& f) {
  return GasketFunction::constant(c) + f;
}
GasketFunction operator-(const GasketFunction& f, const GasketFunction& g) { return f + (-1.0) * g; }
GasketFunction reciprocal(const GasketFunction& f) {
  return GasketFunction(std::make_shared<ReciprocalNode>(f.node_));
}

double harmonic_midpoint(double vi, double vj, double vk) {
  const double r = 0.4 * vi + 0.4 * vj + 0.2 * vk;
  const double lo = std::min({vi, vj, vk});
  const double hi = std::max({vi, vj, vk});
  return std::clamp(r, lo, hi);
}

double biharmonic_midpoint(double fi, double fj, double fk, double li, double lj, double lk, int m) {
  return harmonic_midpoint(fi, fj, fk) + (7.0 * lk + 9.0 * (li + lj)) / (75.0 * pow5(m));
}

namespace {

using Entries = std::vector<std::pair<VertexKey, double>>;

// Depth-first subdivision; each midpoint belongs to exactly one parent cell,
// so every vertex is emitted once.
template <typename Child>
void extend_cells(const std::array<VertexKey, 3>& keys, const Triple& vals, int level, int depth,
                  Entries& out, Child&& child) {
  if (level == depth) return;
  const std::int64_t side = keys[1].s - keys[0].s;
  std::array<Triple, 3> kids;
  for (Symbol i = 1; i <= 3; ++i) kids[i - 1] = child(vals, i, level);
  out.push_back({detail::child_origin(keys[0], side, 2), kids[0][1]});  // q12
  out.push_back({detail::child_origin(keys[0], side, 3), kids[0][2]});  // q13
  out.push_back({VertexKey{keys[0].s + side / 2, keys[0].t + side / 2}, kids[1][2]});  // q23
  for (Symbol i = 1; i <= 3; ++i) {
    const auto child_keys = detail::cell_corners(detail::child_origin(keys[0], side, i), side / 2);
    extend_cells(child_keys, kids[i - 1], level + 1, depth, out, child);
  }
}

std::array<VertexKey, 3> root_keys() { return {corner_key(1), corner_key(2), corner_key(3)}; }

}  // namespace

GasketFunction harmonic_extend(std::array<double, 3> boundary, int depth) {
  check_depth(depth, "harmonic_extend");
  Entries entries;
  entries.reserve(static_cast<std::size_t>(vertex_count(depth)));
  const auto keys = root_keys();
  for (int c = 0; c < 3; ++c) entries.push_back({keys[c], boundary[c]});
  extend_cells(keys, boundary, 0, depth, entries,
               [](const Triple& v, Symbol i, int) { return harmonic_child(v, i); });
  FunctionTraits t;
  t.exact_depth = 0;
  t.harmonic = true;
  t.sample_depth = depth;
  return GasketFunction::sampled(SampleTable(depth, std::move(entries))).with_traits(t);
}

GasketFunction biharmonic_extend(const BiharmonicSeed& seed, int depth) {
  check_depth(depth, "biharmonic_extend");
  Entries entries;
  entries.reserve(static_cast<std::size_t>(vertex_count(depth)));
  const auto keys = root_keys();
  for (int c = 0; c < 3; ++c) entries.push_back({keys[c], seed.f0[c]});
  // Walk f and the Laplacian together; only f is recorded.
  struct Walker {
    Entries& out;
    void run(const std::array<VertexKey, 3>& k, const Triple& f, const Triple& l, int level,
             int depth) {
      if (level == depth) return;
      const std::int64_t side = k[1].s - k[0].s;
      std::array<std::pair<Triple, Triple>, 3> kids;
      for (Symbol i = 1; i <= 3; ++i) kids[i - 1] = biharmonic_child(f, l, i, level);
      out.push_back({detail::child_origin(k[0], side, 2), kids[0].first[1]});
      out.push_back({detail::child_origin(k[0], side, 3), kids[0].first[2]});
      out.push_back({VertexKey{k[0].s + side / 2, k[0].t + side / 2}, kids[1].first[2]});
      for (Symbol i = 1; i <= 3; ++i) {
        run(detail::cell_corners(detail::child_origin(k[0], side, i), side / 2), kids[i - 1].first,
            kids[i - 1].second, level + 1, depth);
      }
    }
  };
  Walker{entries}.run(keys, seed.f0, seed.lap0, 0, depth);
  FunctionTraits t;
  t.biharmonic = true;
  t.sample_depth = depth;
  return GasketFunction::sampled(SampleTable(depth, std::move(entries))).with_traits(t);
}

double graph_energy(const GasketFunction& f, int m) {
  check_depth(m, "graph_energy");
  CompensatedSum sum;
  for_each_cell(m, [&](std::span<const Symbol> w, const std::array<VertexKey, 3>& k) {
    const double a = f(VertexRef{w, 1, k[0]});
    const double b = f(VertexRef{w, 2, k[1]});
    const double c = f(VertexRef{w, 3, k[2]});
    sum.add((a - b) * (a - b));
    sum.add((a - c) * (a - c));
    sum.add((b - c) * (b - c));
  });
  return std::pow(5.0 / 3.0, m) * sum.value();
}

std::string to_string(EnergyVerdict v) {
  switch (v) {
    case EnergyVerdict::finite: return "finite";
    case EnergyVerdict::infinite: return "infinite";
    case EnergyVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

EnergyTrace energy_trace(const GasketFunction& f, int m_max) {
  check_depth(m_max, "energy_trace");
  EnergyTrace trace;
  for (int m = 0; m <= m_max; ++m) trace.values.push_back(graph_energy(f, m));
  const auto& e = trace.values;
  const std::size_t n = e.size();
  auto settled = [&](std::size_t m) { return e[m + 1] - e[m] < 1e-9 * std::max(1.0, e[m]); };
  auto growing = [&](std::size_t m) { return e[m] > 0.0 && e[m + 1] / e[m] >= 1.05; };
  if (n >= 3 && settled(n - 2) && settled(n - 3)) {
    trace.verdict = EnergyVerdict::finite;
    trace.energy = e.back();
  } else if (n >= 4 && growing(n - 2) && growing(n - 3) && growing(n - 4)) {
    trace.verdict = EnergyVerdict::infinite;
  }
  return trace;
}

double fukushima_exponent() { return std::log(5.0 / 3.0) / (2.0 * std::log(2.0)); }

FukushimaResult fukushima_check(const GasketFunction& f, int m) {
  const std::vector<VertexKey> keys = vertex_set(m);
  std::vector<double> values(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Address a = *locate(keys[i]);
    values[i] = f(VertexRef{a.prefix().symbols(), a.tail(), keys[i]});
  }
  FukushimaResult r;
  r.sigma = fukushima_exponent();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      const double ratio = std::abs(values[i] - values[j]) / std::pow(distance(keys[i], keys[j]), r.sigma);
      r.max_ratio = std::max(r.max_ratio, ratio);
    }
  }
  r.bound = 9.0 * std::sqrt(graph_energy(f, m));
  r.holds = r.max_ratio <= r.bound;
  return r;
}

}  // namespace gasket
