#include "gasket/codespace.hpp"

#include <algorithm>

#include "gasket/config.hpp"
#include "gasket/error.hpp"
#include "gasket/geometry.hpp"

namespace gasket {
namespace {

bool valid_symbol(Symbol s) { return s >= 1 && s <= 3; }

}  // namespace

Word::Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (Symbol s : symbols_) {
    if (!valid_symbol(s)) {
      throw Error(ErrorCode::malformed_word, "word symbol out of range: " + std::to_string(s));
    }
  }
}

Word Word::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  symbols.reserve(text.size());
  for (char ch : text) {
    if (ch < '1' || ch > '3') {
      throw Error(ErrorCode::malformed_word, "word must use symbols 1, 2, 3: \"" +
                                                 std::string(text) + "\"");
    }
    symbols.push_back(static_cast<Symbol>(ch - '0'));
  }
  return Word(std::move(symbols));
}

Word Word::from_index(std::uint64_t index, int length) {
  std::vector<Symbol> symbols(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    symbols[static_cast<std::size_t>(i)] = static_cast<Symbol>(index % 3 + 1);
    index /= 3;
  }
  return Word(std::move(symbols));
}

Word Word::operator+(const Word& rhs) const {
  Word out = *this;
  out.symbols_.insert(out.symbols_.end(), rhs.symbols_.begin(), rhs.symbols_.end());
  return out;
}

Word Word::with(Symbol s) const {
  if (!valid_symbol(s)) throw Error(ErrorCode::malformed_word, "symbol out of range");
  Word out = *this;
  out.symbols_.push_back(s);
  return out;
}

Word Word::prefix(std::size_t length) const {
  Word out;
  out.symbols_.assign(symbols_.begin(),
                      symbols_.begin() + static_cast<std::ptrdiff_t>(std::min(length, size())));
  return out;
}

bool Word::starts_with(const Word& head) const {
  return head.size() <= size() && std::equal(head.symbols_.begin(), head.symbols_.end(),
                                             symbols_.begin());
}

std::uint64_t Word::index() const {
  std::uint64_t idx = 0;
  for (Symbol s : symbols_) idx = idx * 3 + (s - 1);
  return idx;
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(size());
  for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
  return out;
}

Address::Address(Word prefix, Symbol tail) : prefix_(std::move(prefix)), tail_(tail) {
  if (!valid_symbol(tail)) throw Error(ErrorCode::malformed_address, "tail symbol out of range");
  std::size_t keep = prefix_.size();
  while (keep > 0 && prefix_[keep - 1] == tail_) --keep;
  if (keep != prefix_.size()) prefix_ = prefix_.prefix(keep);
}

Address Address::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.size() != open + 3 || text[open + 2] != ')') {
    throw Error(ErrorCode::malformed_address,
                "address must look like \"21(1)\": \"" + std::string(text) + "\"");
  }
  const char tail = text[open + 1];
  if (tail < '1' || tail > '3') {
    throw Error(ErrorCode::malformed_address, "bad tail symbol in \"" + std::string(text) + "\"");
  }
  try {
    return Address(Word::parse(text.substr(0, open)), static_cast<Symbol>(tail - '0'));
  } catch (const Error&) {
    throw Error(ErrorCode::malformed_address, "bad prefix in \"" + std::string(text) + "\"");
  }
}

bool Address::has_prefix(const Word& head) const {
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (symbol_at(i) != head[i]) return false;
  }
  return true;
}

std::string Address::to_string() const {
  return prefix_.to_string() + "(" + static_cast<char>('0' + tail_) + ")";
}

std::strong_ordering Address::operator<=>(const Address& rhs) const {
  return compare_addresses(*this, rhs);
}

std::strong_ordering compare_addresses(const Address& a, const Address& b) {
  // Past both prefixes only the tails remain, so one more position decides.
  const std::size_t horizon = std::max(a.prefix().size(), b.prefix().size());
  for (std::size_t i = 0; i <= horizon; ++i) {
    const Symbol x = a.symbol_at(i);
    const Symbol y = b.symbol_at(i);
    if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Point address_point(const Address& a) { return apply_map(a.prefix(), corner_point(a.tail())); }

VertexDescription describe_vertex(const Word& w, Symbol corner) {
  std::size_t keep = w.size();
  while (keep > 0 && w[keep - 1] == corner) --keep;
  VertexDescription d;
  d.corner = corner;
  if (keep == 0) return d;
  d.j = w[keep - 1];
  d.stem = w.prefix(keep - 1);
  return d;
}

Address tops_address(const Word& w, Symbol corner) {
  const VertexDescription d = describe_vertex(w, corner);
  if (!d.is_junction()) return Address::constant(corner);
  // Addresses stem.j.(c) and stem.c.(j) first differ right after the stem.
  const Symbol hi = std::max(d.j, d.corner);
  const Symbol lo = std::min(d.j, d.corner);
  return Address(d.stem.with(hi), lo);
}

std::vector<Address> vertex_addresses(const Word& w, Symbol corner) {
  const VertexDescription d = describe_vertex(w, corner);
  if (!d.is_junction()) return {Address::constant(corner)};
  const Symbol hi = std::max(d.j, d.corner);
  const Symbol lo = std::min(d.j, d.corner);
  return {Address(d.stem.with(hi), lo), Address(d.stem.with(lo), hi)};
}

std::vector<Address> canonical_partition(int n) {
  check_depth(n, "canonical_partition");
  std::vector<Address> out;
  out.reserve(static_cast<std::size_t>(vertex_count(n)));
  for (Symbol c = 1; c <= 3; ++c) out.push_back(Address::constant(c));
  // Each vertex of V_{m+1} \ V_m is the midpoint of exactly one level-m cell,
  // so this enumeration has no duplicates.
  for (int m = 0; m < n; ++m) {
    const std::uint64_t cells = pow3(m);
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
      const Word stem = Word::from_index(idx, m);
      out.emplace_back(stem.with(2), 1);
      out.emplace_back(stem.with(3), 1);
      out.emplace_back(stem.with(3), 2);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AddressInterval::AddressInterval(Address lo_, Address hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) {
    throw Error(ErrorCode::invalid_argument,
                "interval endpoints out of order: " + lo.to_string() + " > " + hi.to_string());
  }
}

bool interval_contains(const AddressInterval& interval, const Address& a) {
  return interval.lo <= a && a <= interval.hi;
}

}  // namespace gasket
