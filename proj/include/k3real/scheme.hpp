#pragma once

// Real schemes of plane sextics: forests of ovals in RP^2, written in Viro
// notation.
//
//   scheme := "∅" | "⟨" body "⟩"
//   body   := term ("⊔" term)*
//   term   := INT | INT "⟨" body "⟩"
//
// ASCII spellings "empty", "<", ">", "u" are accepted everywhere.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3real/arith.hpp"

namespace k3real {

struct Oval {
  std::vector<Oval> children;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
  friend bool operator==(const Oval&, const Oval&) = default;
};

enum class Notation { unicode, ascii };

namespace detail {

struct Glyphs {
  const char* open;
  const char* close;
  const char* join;
  const char* empty;
};

inline const Glyphs& glyphs(Notation n) {
  static const Glyphs uni{"⟨", "⟩", " ⊔ ", "∅"};
  static const Glyphs asc{"<", ">", " u ", "empty"};
  return n == Notation::unicode ? uni : asc;
}

inline std::string render_body(const std::vector<Oval>& ovals, Notation n);

inline std::string render_oval(const Oval& o, Notation n) {
  if (o.children.empty()) return "1";
  const auto& g = glyphs(n);
  return std::string("1") + g.open + render_body(o.children, n) + g.close;
}

// Ovals must already be canonically sorted.
inline std::string render_body(const std::vector<Oval>& ovals, Notation n) {
  const auto& g = glyphs(n);
  std::string out;
  auto append = [&](const std::string& term) {
    if (!out.empty()) out += g.join;
    out += term;
  };
  std::size_t i = 0;
  while (i < ovals.size()) {
    std::size_t j = i;
    while (j < ovals.size() && ovals[j] == ovals[i]) ++j;
    const std::size_t count = j - i;
    if (ovals[i].children.empty())
      append(std::to_string(count));
    else
      append(std::to_string(count) + g.open + render_body(ovals[i].children, n) + g.close);
    i = j;
  }
  return out;
}

inline void canonicalize(std::vector<Oval>& ovals) {
  for (auto& o : ovals) canonicalize(o.children);
  std::vector<std::pair<std::pair<std::size_t, std::string>, Oval>> keyed;
  keyed.reserve(ovals.size());
  for (auto& o : ovals) keyed.push_back({{o.size(), render_oval(o, Notation::unicode)}, std::move(o)});
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ovals.clear();
  for (auto& k : keyed) ovals.push_back(std::move(k.second));
}

}  // namespace detail

class RealScheme {
 public:
  RealScheme() = default;
  explicit RealScheme(std::vector<Oval> roots) : roots_(std::move(roots)) { detail::canonicalize(roots_); }

  const std::vector<Oval>& roots() const { return roots_; }
  bool empty() const { return roots_.empty(); }

  friend bool operator==(const RealScheme&, const RealScheme&) = default;

 private:
  std::vector<Oval> roots_;
};

inline std::string render_viro(const RealScheme& s, Notation n = Notation::unicode) {
  const auto& g = detail::glyphs(n);
  if (s.empty()) return g.empty;
  return std::string(g.open) + detail::render_body(s.roots(), n) + g.close;
}

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)), position_(position) {}
  // Offset in code points from the start of the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class ViroParser {
 public:
  explicit ViroParser(const std::string& text) : text_(text) {}

  RealScheme parse() {
    skip_space();
    if (accept("∅") || accept_word("empty")) {
      expect_end();
      return RealScheme();
    }
    if (!accept_open()) fail("expected '⟨' or '∅'");
    std::vector<Oval> body = parse_body();
    if (!accept_close()) fail("expected '⟩'");
    expect_end();
    return RealScheme(std::move(body));
  }

 private:
  std::vector<Oval> parse_body() {
    std::vector<Oval> out;
    parse_term(out);
    while (accept("⊔") || accept_word("u")) parse_term(out);
    return out;
  }

  void parse_term(std::vector<Oval>& out) {
    skip_space();
    const std::size_t start = pos_;
    std::int64_t count = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      count = count * 10 + (text_[pos_] - '0');
      if (count > 1000) fail("oval count too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected an oval count");
    if (count == 0) fail_at("oval count must be positive", start);
    Oval o;
    if (accept_open()) {
      o.children = parse_body();
      if (!accept_close()) fail("expected '⟩'");
    }
    for (std::int64_t i = 0; i < count; ++i) out.push_back(o);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(const char* token) {
    skip_space();
    const std::string t(token);
    if (text_.compare(pos_, t.size(), t) != 0) return false;
    pos_ += t.size();
    return true;
  }
  // An ASCII word not followed by a further letter.
  bool accept_word(const char* word) {
    skip_space();
    const std::string w(word);
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }
  bool accept_open() { return accept("⟨") || accept("<"); }
  bool accept_close() { return accept("⟩") || accept(">"); }
  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  std::size_t code_points(std::size_t bytes) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < bytes && i < text_.size(); ++i)
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++n;
    return n;
  }
  [[noreturn]] void fail(const std::string& message) { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t byte) {
    throw ParseError(message, code_points(byte));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RealScheme parse_viro(const std::string& text) { return detail::ViroParser(text).parse(); }

struct SchemeCounts {
  std::size_t l = 0;
  std::size_t o_even = 0;
  std::size_t o_odd = 0;
  std::size_t injective_pairs = 0;
  std::size_t max_depth = 0;  // 0 for a flat or empty scheme
  friend bool operator==(const SchemeCounts&, const SchemeCounts&) = default;
};

namespace detail {

template <typename Visit>
void walk(const std::vector<Oval>& ovals, std::size_t depth, Visit&& visit) {
  for (const auto& o : ovals) {
    visit(o, depth);
    walk(o.children, depth + 1, visit);
  }
}

}  // namespace detail

inline SchemeCounts counts(const RealScheme& s) {
  SchemeCounts c;
  detail::walk(s.roots(), 0, [&](const Oval&, std::size_t depth) {
    ++c.l;
    (depth % 2 == 0 ? c.o_even : c.o_odd) += 1;
    c.injective_pairs += depth;
    c.max_depth = std::max(c.max_depth, depth);
  });
  return c;
}

// Euler characteristic of the non-orientable half B (regions of even depth).
inline std::int64_t euler_char_nonorientable_half(const RealScheme& s) {
  if (s.empty()) throw DomainError("the non-orientable half is not defined for the empty scheme");
  std::int64_t chi = 1 - static_cast<std::int64_t>(s.roots().size());
  detail::walk(s.roots(), 0, [&](const Oval& o, std::size_t depth) {
    if (depth % 2 == 1) chi += 1 - static_cast<std::int64_t>(o.children.size());
  });
  return chi;
}

enum class DivType { I, II };

inline std::string to_string(DivType d) { return d == DivType::I ? "I" : "II"; }

inline DivType parse_divtype(const std::string& text) {
  if (text == "I" || text == "1") return DivType::I;
  if (text == "II" || text == "2") return DivType::II;
  throw std::invalid_argument("dividing type must be I or II, got '" + text + "'");
}

struct SchemeInvariants {
  std::int64_t a = 0;
  std::int64_t t = 0;
  int delta = 0;
  std::optional<std::int64_t> r;
  friend bool operator==(const SchemeInvariants&, const SchemeInvariants&) = default;
};

inline SchemeInvariants scheme_to_invariants(const RealScheme& s, DivType divtype,
                                             std::optional<std::int64_t> r = std::nullopt) {
  if (divtype == DivType::II && r) throw DomainError("r is only defined for dividing curves");
  if (divtype == DivType::I && !r) throw DomainError("r is required for dividing curves");
  if (s.empty()) {
    if (divtype == DivType::I) throw DomainError("the empty scheme is never dividing");
    return {10, 9, 0, 0};
  }
  const std::int64_t l = static_cast<std::int64_t>(counts(s).l);
  SchemeInvariants inv;
  inv.a = 11 - l;
  inv.t = 9 + euler_char_nonorientable_half(s);
  inv.delta = divtype == DivType::I ? 0 : 1;
  inv.r = r;
  if (inv.a + l != 11) throw std::logic_error("a + l != 11");
  return inv;
}

inline bool harnack_check(std::int64_t l, std::int64_t m, DivType divtype) {
  if (l > 11 - 2 * m) return false;
  return l < 11 - 2 * m || divtype == DivType::I;
}

inline bool arnold_congruence(const RealScheme& s, std::int64_t r) {
  const SchemeCounts c = counts(s);
  const std::int64_t diff = static_cast<std::int64_t>(c.o_even) - static_cast<std::int64_t>(c.o_odd);
  return mod(diff - (9 - 2 * r), 4) == 0;
}

inline bool no_injective_pairs_rule(const RealScheme& s, std::int64_t r) {
  const SchemeCounts c = counts(s);
  if (c.injective_pairs > 0) return true;
  return static_cast<std::int64_t>(c.l) == 9 - 2 * r;
}

inline bool rokhlin_identity(std::int64_t pi_minus, std::int64_t pi_plus, std::int64_t l, std::int64_t r) {
  return 2 * (pi_minus - pi_plus) + l == 9 - 2 * r;
}

namespace detail {

// Trees with exactly `size` ovals and at most `levels` nesting levels, in a
// fixed order; memoized.
inline const std::vector<Oval>& trees(std::size_t size, std::size_t levels);

inline std::recursive_mutex& enumeration_mutex() {
  static std::recursive_mutex m;
  return m;
}

inline void forests_into(std::size_t size, std::size_t levels, std::vector<std::vector<Oval>>& out);

inline const std::vector<std::vector<Oval>>& forests(std::size_t size, std::size_t levels) {
  std::lock_guard<std::recursive_mutex> lock(enumeration_mutex());
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<Oval>>> cache;
  auto key = std::make_pair(size, levels);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<Oval>> out;
  forests_into(size, levels, out);
  return cache.emplace(key, std::move(out)).first->second;
}

inline const std::vector<Oval>& trees(std::size_t size, std::size_t levels) {
  std::lock_guard<std::recursive_mutex> lock(enumeration_mutex());
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Oval>> cache;
  auto key = std::make_pair(size, levels);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Oval> out;
  if (size >= 1 && levels >= 1) {
    if (size == 1) {
      out.push_back(Oval{});
    } else if (levels >= 2) {
      for (const auto& f : forests(size - 1, levels - 1)) out.push_back(Oval{f});
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

// Multisets of trees: trees are chosen by (size, index) in non-increasing order.
inline void forests_into(std::size_t size, std::size_t levels, std::vector<std::vector<Oval>>& out) {
  std::vector<Oval> current;
  auto rec = [&](auto& self, std::size_t remaining, std::size_t max_size, std::size_t max_index) -> void {
    if (remaining == 0) {
      std::vector<Oval> f = current;
      canonicalize(f);
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t s = std::min(remaining, max_size); s >= 1; --s) {
      const auto& ts = trees(s, levels);
      const std::size_t limit = s == max_size ? std::min(max_index + 1, ts.size()) : ts.size();
      for (std::size_t i = 0; i < limit; ++i) {
        current.push_back(ts[i]);
        self(self, remaining - s, s, i);
        current.pop_back();
      }
    }
  };
  if (size == 0) {
    out.push_back({});
    return;
  }
  rec(rec, size, size, std::numeric_limits<std::size_t>::max() - 1);
}

}  // namespace detail

// All schemes with at most max_ovals ovals and at most max_levels nesting
// levels (so max_levels = 1 gives flat schemes), ordered by (l, depth, text).
inline std::vector<RealScheme> enumerate_schemes(std::size_t max_ovals, std::size_t max_levels) {
  std::vector<std::pair<std::tuple<std::size_t, std::size_t, std::string>, RealScheme>> keyed;
  keyed.push_back({{0, 0, render_viro(RealScheme())}, RealScheme()});
  if (max_levels >= 1)
    for (std::size_t n = 1; n <= max_ovals; ++n)
      for (const auto& f : detail::forests(n, max_levels)) {
        RealScheme s(f);
        keyed.push_back({{n, counts(s).max_depth, render_viro(s)}, std::move(s)});
      }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<RealScheme> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.second));
  return out;
}

}  // namespace k3real
