#pragma once
// Brute-force references for the tests. They work on exact Surd points and
// plain symbol strings and share no code with the lattice keys, the tops rule
// or the extension walkers of the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gasket/exact.hpp"

namespace oracle {

using gasket::Dyadic;
using gasket::Point;
using gasket::Surd;
using Symbols = std::vector<int>;

inline Point q(int c) {
  if (c == 1) return {};
  if (c == 2) return {Surd{Dyadic(1), {}}, Surd{}};
  return {Surd{Dyadic(1, 1), {}}, Surd{{}, Dyadic(1, 1)}};
}

/// u_w(p) applied innermost first.
inline Point image(const Symbols& w, Point p) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = (p + q(*it)).halved();
  return p;
}

inline std::string key(const Point& p) { return p.to_string(); }

inline std::vector<Symbols> words(int n) {
  std::vector<Symbols> out{{}};
  for (int level = 0; level < n; ++level) {
    std::vector<Symbols> next;
    for (const auto& w : out) {
      for (int i = 1; i <= 3; ++i) {
        Symbols v = w;
        v.push_back(i);
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::map<std::string, Point> vertices(int n) {
  std::map<std::string, Point> out;
  for (const auto& w : words(n)) {
    for (int c = 1; c <= 3; ++c) {
      const Point p = image(w, q(c));
      out.emplace(key(p), p);
    }
  }
  return out;
}

inline std::set<std::pair<std::string, std::string>> edges(int n) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& w : words(n)) {
    std::array<std::string, 3> k{key(image(w, q(1))), key(image(w, q(2))), key(image(w, q(3)))};
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      out.insert(std::minmax(k[i], k[j]));
    }
  }
  return out;
}

/// Text of an eventually-constant address, e.g. "12(3)", reduced by hand.
inline std::string address_text(Symbols prefix, int tail) {
  while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
  std::string s;
  for (int c : prefix) s += static_cast<char>('0' + c);
  return s + "(" + static_cast<char>('0' + tail) + ")";
}

/// The first `length` symbols of prefix·tail·tail·…
inline std::string expand(const Symbols& prefix, int tail, std::size_t length) {
  std::string s;
  for (std::size_t i = 0; i < length; ++i) {
    s += static_cast<char>('0' + (i < prefix.size() ? prefix[i] : tail));
  }
  return s;
}

/// Every address with prefix length <= n, grouped by the point it encodes.
/// Each group is ordered by brute string comparison of long expansions, so
/// the last entry is the tops address.
inline std::map<std::string, std::vector<std::string>> addresses_by_point(int n) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> groups;
  const std::size_t length = static_cast<std::size_t>(n) + 4;
  for (int len = 0; len <= n; ++len) {
    for (const auto& w : words(len)) {
      for (int c = 1; c <= 3; ++c) {
        if (!w.empty() && w.back() == c) continue;
        groups[key(image(w, q(c)))].emplace_back(expand(w, c, length), address_text(w, c));
      }
    }
  }
  std::map<std::string, std::vector<std::string>> out;
  for (auto& [k, list] : groups) {
    std::sort(list.begin(), list.end());
    for (auto& [expanded, text] : list) out[k].push_back(text);
  }
  return out;
}

/// Level-by-level 1/5-2/5 rule, no clamping.
inline std::map<std::string, double> harmonic(std::array<double, 3> b, int n) {
  std::map<std::string, double> v;
  for (int c = 1; c <= 3; ++c) v[key(q(c))] = b[c - 1];
  for (int m = 0; m < n; ++m) {
    for (const auto& w : words(m)) {
      std::array<Point, 3> p{image(w, q(1)), image(w, q(2)), image(w, q(3))};
      std::array<double, 3> h{v.at(key(p[0])), v.at(key(p[1])), v.at(key(p[2]))};
      for (auto [i, j, k] : {std::array{0, 1, 2}, std::array{0, 2, 1}, std::array{1, 2, 0}}) {
        v[key((p[i] + p[j]).halved())] = 0.4 * h[i] + 0.4 * h[j] + 0.2 * h[k];
      }
    }
  }
  return v;
}

inline double energy(const std::function<double(const Point&)>& f, int m) {
  std::map<std::string, Point> pts = vertices(m);
  double sum = 0.0;
  for (const auto& [a, b] : edges(m)) {
    const double d = f(pts.at(a)) - f(pts.at(b));
    sum += d * d;
  }
  return std::pow(5.0 / 3.0, m) * sum;
}

/// max - min of f over the V_{|w|+k} vertices of the closed cell u_w(SG).
inline double cell_range(const std::function<double(const Point&)>& f, const Symbols& w, int k) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& sub : words(k)) {
    Symbols full = w;
    full.insert(full.end(), sub.begin(), sub.end());
    for (int c = 1; c <= 3; ++c) {
      const double v = f(image(full, q(c)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return hi - lo;
}

}  // namespace oracle
