#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gasket/exact.hpp"

namespace gasket {

/// A map index of the gasket IFS: 1, 2 or 3.
using Symbol = std::uint8_t;

/// Finite string over {1,2,3}. Names the cell u_w(SG); the empty word is
/// the whole gasket.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols);

  /// Parses "", "12", "3312". Throws ErrorCode::malformed_word.
  static Word parse(std::string_view text);
  /// Inverse of index(): the `length`-symbol word whose base-3 value is
  /// `index` (symbol 1 is digit 0, first symbol most significant).
  static Word from_index(std::uint64_t index, int length);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  Symbol back() const { return symbols_.back(); }
  std::span<const Symbol> symbols() const { return symbols_; }

  Word operator+(const Word& rhs) const;
  Word with(Symbol s) const;
  Word prefix(std::size_t length) const;
  bool starts_with(const Word& head) const;

  std::uint64_t index() const;
  std::string to_string() const;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// An eventually-constant point of code space: prefix followed by the tail
/// symbol repeated forever. Always stored canonically: the prefix never ends
/// with the tail symbol.
class Address {
 public:
  Address(Word prefix, Symbol tail);

  /// Text form "21(1)"; canonicalized on parse, so "21(1)" yields "2(1)".
  /// Throws ErrorCode::malformed_address.
  static Address parse(std::string_view text);
  static Address constant(Symbol tail) { return Address(Word(), tail); }

  const Word& prefix() const { return prefix_; }
  Symbol tail() const { return tail_; }
  /// The i-th symbol (0-based) of the infinite string.
  Symbol symbol_at(std::size_t i) const { return i < prefix_.size() ? prefix_[i] : tail_; }
  /// True when the infinite string begins with `head`.
  bool has_prefix(const Word& head) const;

  std::string to_string() const;

  bool operator==(const Address&) const = default;
  std::strong_ordering operator<=>(const Address& rhs) const;

 private:
  Word prefix_;
  Symbol tail_;
};

/// Lexicographic order on the infinite strings.
std::strong_ordering compare_addresses(const Address& a, const Address& b);

/// The attractor point the address encodes: u_prefix(q_tail), exactly.
Point address_point(const Address& a);

/// Vertex u_w(q_c) reduced so that the stem names the smallest cell in
/// which it is a midpoint: vertex = u_stem(midpoint of q_j, q_corner).
/// `j == 0` marks a corner point q_corner of the whole gasket.
struct VertexDescription {
  Word stem;
  Symbol j = 0;
  Symbol corner = 1;

  bool is_junction() const { return j != 0; }
};
VertexDescription describe_vertex(const Word& w, Symbol corner);

/// The ≺-largest address of the vertex u_w(q_corner).
Address tops_address(const Word& w, Symbol corner);

/// Both addresses of the vertex u_w(q_corner): one entry for a corner of the
/// gasket, two for a junction (tops address first).
std::vector<Address> vertex_addresses(const Word& w, Symbol corner);

/// Tops addresses of V_n in increasing ≺ order; starts at (1), ends at (3).
std::vector<Address> canonical_partition(int n);

struct AddressInterval {
  Address lo;
  Address hi;

  /// Throws ErrorCode::invalid_argument unless lo ≼ hi.
  AddressInterval(Address lo_, Address hi_);
};

bool interval_contains(const AddressInterval& interval, const Address& a);

}  // namespace gasket
