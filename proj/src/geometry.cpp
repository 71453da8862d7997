#include "gasket/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "gasket/config.hpp"
#include "gasket/error.hpp"

namespace gasket {
namespace {

std::int64_t lattice_value(const Dyadic& d) {
  const int shift = kLatticeBits - d.exponent();
  if (shift < 0) throw Error(ErrorCode::invalid_argument, "point is finer than the vertex lattice");
  if (shift > 62) throw Error(ErrorCode::invalid_argument, "point is outside the lattice range");
  const __int128 v = static_cast<__int128>(d.mantissa()) << shift;
  if (v > (__int128{1} << 62) || v < -(__int128{1} << 62)) {
    throw Error(ErrorCode::invalid_argument, "point is outside the lattice range");
  }
  return static_cast<std::int64_t>(v);
}

VertexKey midpoint(const VertexKey& a, const VertexKey& b) {
  return {(a.s + b.s) / 2, (a.t + b.t) / 2};
}

}  // namespace

double VertexKey::x() const {
  return std::ldexp(static_cast<double>(2 * s + t), -(kLatticeBits + 1));
}

double VertexKey::y() const {
  return std::ldexp(static_cast<double>(t), -(kLatticeBits + 1)) * std::sqrt(3.0);
}

std::uint64_t pow3(int n) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

Point corner_point(Symbol c) {
  switch (c) {
    case 1: return {};
    case 2: return {Surd{Dyadic(1), Dyadic()}, Surd{}};
    case 3: return {Surd{Dyadic(1, 1), Dyadic()}, Surd{Dyadic(), Dyadic(1, 1)}};
  }
  throw Error(ErrorCode::invalid_argument, "corner index must be 1, 2 or 3");
}

VertexKey corner_key(Symbol c) {
  switch (c) {
    case 1: return {0, 0};
    case 2: return {kLatticeOne, 0};
    case 3: return {0, kLatticeOne};
  }
  throw Error(ErrorCode::invalid_argument, "corner index must be 1, 2 or 3");
}

Point key_point(const VertexKey& key) {
  const Dyadic half_t(key.t, kLatticeBits + 1);
  return {Surd{Dyadic(key.s, kLatticeBits) + half_t, Dyadic()}, Surd{Dyadic(), half_t}};
}

VertexKey point_key(const Point& p) {
  if (!p.x.root3.is_zero() || !p.y.rational.is_zero()) {
    throw Error(ErrorCode::invalid_argument, "point " + p.to_string() + " is not a lattice point");
  }
  // x = s + t/2, y = (t/2) sqrt3
  const Dyadic t = p.y.root3.doubled();
  const Dyadic s = p.x.rational - p.y.root3;
  return {lattice_value(s), lattice_value(t)};
}

Point apply_map(const Word& w, const Point& p) {
  Point out = p;
  for (std::size_t i = w.size(); i-- > 0;) out = (out + corner_point(w[i])).halved();
  return out;
}

VertexKey vertex_key(std::span<const Symbol> w, Symbol c) {
  if (w.size() > static_cast<std::size_t>(kHardDepthLimit)) {
    throw Error(ErrorCode::depth_limit, "word longer than the lattice supports");
  }
  VertexKey p = corner_key(c);
  for (std::size_t i = w.size(); i-- > 0;) p = midpoint(p, corner_key(w[i]));
  return p;
}

VertexKey address_key(const Address& a) { return vertex_key(a.prefix(), a.tail()); }

std::array<VertexKey, 3> cell_vertices(const Word& w) {
  return detail::cell_corners(vertex_key(w, 1), kLatticeOne >> w.size());
}

std::uint64_t vertex_count(int n) { return 3 * (pow3(n) + 1) / 2; }

std::vector<VertexKey> vertex_set(int n) {
  check_depth(n, "vertex_set");
  std::vector<VertexKey> out;
  out.reserve(static_cast<std::size_t>(vertex_count(n)));
  for (Symbol c = 1; c <= 3; ++c) out.push_back(corner_key(c));
  for (int m = 0; m < n; ++m) {
    for_each_cell(m, [&](std::span<const Symbol>, const std::array<VertexKey, 3>& v) {
      out.push_back(midpoint(v[0], v[1]));
      out.push_back(midpoint(v[0], v[2]));
      out.push_back(midpoint(v[1], v[2]));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> edges(int m) {
  check_depth(m, "edges");
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(3 * pow3(m)));
  for_each_cell(m, [&](std::span<const Symbol>, const std::array<VertexKey, 3>& v) {
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      out.push_back(Edge{std::min(v[i], v[j]), std::max(v[i], v[j])});
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<Word, Symbol>> junction_identify(const Word& w, Symbol c) {
  const VertexDescription d = describe_vertex(w, c);
  if (!d.is_junction()) return std::nullopt;
  return std::pair{d.stem.with(d.corner), d.j};
}

std::optional<Address> locate(const VertexKey& key) {
  std::int64_t s = key.s;
  std::int64_t t = key.t;
  if (s < 0 || t < 0 || s + t > kLatticeOne) return std::nullopt;
  constexpr std::int64_t half = kLatticeOne / 2;
  std::vector<Symbol> word;
  for (int step = 0; step <= kLatticeBits + 1; ++step) {
    if (t == 0 && (s == 0 || s == kLatticeOne)) return tops_address(Word(word), s == 0 ? 1 : 2);
    if (s == 0 && t == kLatticeOne) return tops_address(Word(word), 3);
    if (s >= half) {
      word.push_back(2);
      s = 2 * s - kLatticeOne;
      t = 2 * t;
    } else if (t >= half) {
      word.push_back(3);
      s = 2 * s;
      t = 2 * t - kLatticeOne;
    } else if (s + t <= half) {
      word.push_back(1);
      s = 2 * s;
      t = 2 * t;
    } else {
      return std::nullopt;  // inside a removed middle triangle
    }
  }
  return std::nullopt;
}

std::optional<Address> locate(const Point& p) { return locate(point_key(p)); }

double distance(const VertexKey& a, const VertexKey& b) {
  const double ds = std::ldexp(static_cast<double>(a.s - b.s), -kLatticeBits);
  const double dt = std::ldexp(static_cast<double>(a.t - b.t), -kLatticeBits);
  return std::sqrt(ds * ds + ds * dt + dt * dt);
}

}  // namespace gasket
