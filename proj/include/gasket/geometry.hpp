#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gasket/codespace.hpp"
#include "gasket/exact.hpp"

namespace gasket {

/// Fixed-point scale of the vertex lattice. A vertex of V_n has lattice
/// coordinates (s, t) with point = q1 + s (q2 - q1) + t (q3 - q1), and s, t
/// are multiples of 2^-n, so they are stored exactly as integers times
/// 2^-kLatticeBits.
inline constexpr int kLatticeBits = 60;
inline constexpr std::int64_t kLatticeOne = std::int64_t{1} << kLatticeBits;

/// Canonical identity of a gasket vertex. Two word/corner descriptions of
/// the same geometric point always give equal keys.
struct VertexKey {
  std::int64_t s = 0;
  std::int64_t t = 0;

  bool operator==(const VertexKey&) const = default;
  auto operator<=>(const VertexKey&) const = default;

  double x() const;
  double y() const;
};

/// Vertices q1 = (0,0), q2 = (1,0), q3 = (1/2, sqrt3/2).
Point corner_point(Symbol c);
VertexKey corner_key(Symbol c);

Point key_point(const VertexKey& key);
/// Throws ErrorCode::invalid_argument if the point is off the lattice.
VertexKey point_key(const Point& p);

/// u_w(p) by |w| exact halvings.
Point apply_map(const Word& w, const Point& p);
/// Key of u_w(q_c), computed on the integer lattice.
VertexKey vertex_key(std::span<const Symbol> w, Symbol c);
inline VertexKey vertex_key(const Word& w, Symbol c) { return vertex_key(w.symbols(), c); }
VertexKey address_key(const Address& a);

std::array<VertexKey, 3> cell_vertices(const Word& w);

/// |V_n| = 3 (3^n + 1) / 2.
std::uint64_t vertex_count(int n);
/// V_n in increasing key order.
std::vector<VertexKey> vertex_set(int n);

struct Edge {
  VertexKey a;  // a < b
  VertexKey b;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};
/// The 3^(m+1) edges of the level-m graph, sorted.
std::vector<Edge> edges(int m);

/// The other (word, corner) description of a junction vertex, or nothing
/// for a corner of the gasket.
std::optional<std::pair<Word, Symbol>> junction_identify(const Word& w, Symbol c);

/// Tops address of a lattice point of the gasket, or nothing when the point
/// lies outside SG.
std::optional<Address> locate(const VertexKey& key);
std::optional<Address> locate(const Point& p);

double distance(const VertexKey& a, const VertexKey& b);

std::uint64_t pow3(int n);

/// Visits every level-`level` cell in word order. `fn(word_symbols, corners)`
/// receives the word as a span and the keys of u_w(q1), u_w(q2), u_w(q3).
template <typename Fn>
void for_each_cell(int level, Fn&& fn);

/// Same traversal restricted to the subcells of depth `depth` below `root`.
template <typename Fn>
void for_each_subcell(const Word& root, int depth, Fn&& fn);

namespace detail {

inline std::array<VertexKey, 3> cell_corners(VertexKey origin, std::int64_t side) {
  return {origin, VertexKey{origin.s + side, origin.t}, VertexKey{origin.s, origin.t + side}};
}

inline VertexKey child_origin(VertexKey origin, std::int64_t side, Symbol i) {
  const std::int64_t half = side / 2;
  switch (i) {
    case 2: return {origin.s + half, origin.t};
    case 3: return {origin.s, origin.t + half};
    default: return origin;
  }
}

template <typename Fn>
void visit_cells(std::vector<Symbol>& word, std::size_t target, VertexKey origin, std::int64_t side,
                 Fn& fn) {
  if (word.size() == target) {
    fn(std::span<const Symbol>(word), cell_corners(origin, side));
    return;
  }
  for (Symbol i = 1; i <= 3; ++i) {
    word.push_back(i);
    visit_cells(word, target, child_origin(origin, side, i), side / 2, fn);
    word.pop_back();
  }
}

}  // namespace detail

template <typename Fn>
void for_each_subcell(const Word& root, int depth, Fn&& fn) {
  std::vector<Symbol> word(root.symbols().begin(), root.symbols().end());
  word.reserve(root.size() + static_cast<std::size_t>(depth));
  const VertexKey origin = vertex_key(root, 1);
  const std::int64_t side = kLatticeOne >> root.size();
  detail::visit_cells(word, root.size() + static_cast<std::size_t>(depth), origin, side, fn);
}

template <typename Fn>
void for_each_cell(int level, Fn&& fn) {
  for_each_subcell(Word(), level, fn);
}

}  // namespace gasket
