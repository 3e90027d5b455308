#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3real/involution.hpp"
#include "k3real/scheme.hpp"

namespace k3real {

struct RigidIsotopyClass {
  std::int64_t m = 0;
  RealScheme scheme;
  DivType divtype = DivType::II;
  std::optional<std::int64_t> r;  // present iff divtype == I
};

inline std::string to_string(const RigidIsotopyClass& c, Notation n = Notation::unicode) {
  std::ostringstream os;
  os << "(m=" << c.m << ", " << render_viro(c.scheme, n) << ", " << to_string(c.divtype);
  if (c.r) os << ", r=" << *c.r;
  os << ")";
  return os.str();
}

// Schemes realized by nonsingular sextics, with their dividing type.
class NonsingularTable {
 public:
  static const NonsingularTable& standard() {
    static const NonsingularTable table = build();
    return table;
  }

  bool contains(const RealScheme& s, DivType d) const { return entries_.count({render_viro(s), d}) > 0; }
  std::size_t count(DivType d) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                  [d](const auto& e) { return e.second == d; }));
  }
  const std::set<std::pair<std::string, DivType>>& entries() const { return entries_; }

 private:
  static NonsingularTable build() {
    static const char* const dividing[] = {
        "⟨9 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨9⟩⟩", "⟨1⟨8⟩⟩",     "⟨6 ⊔ 1⟨2⟩⟩",
        "⟨4 ⊔ 1⟨4⟩⟩", "⟨2 ⊔ 1⟨6⟩⟩", "⟨9⟩",         "⟨5 ⊔ 1⟨1⟩⟩", "⟨3 ⊔ 1⟨3⟩⟩",
        "⟨1 ⊔ 1⟨5⟩⟩", "⟨1⟨4⟩⟩",     "⟨2 ⊔ 1⟨2⟩⟩", "⟨1⟨1⟨1⟩⟩⟩"};
    static const char* const non_dividing[] = {
        "⟨1⟨9⟩⟩", "⟨8 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨4⟩⟩", "⟨4 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨8⟩⟩", "⟨10⟩",
        "⟨1⟨8⟩⟩", "⟨7 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨3⟩⟩", "⟨4 ⊔ 1⟨4⟩⟩", "⟨3 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨7⟩⟩", "⟨9⟩",
        "⟨1⟨7⟩⟩", "⟨6 ⊔ 1⟨1⟩⟩", "⟨5 ⊔ 1⟨2⟩⟩", "⟨4 ⊔ 1⟨3⟩⟩", "⟨3 ⊔ 1⟨4⟩⟩", "⟨2 ⊔ 1⟨5⟩⟩", "⟨1 ⊔ 1⟨6⟩⟩", "⟨8⟩",
        "⟨1⟨6⟩⟩", "⟨5 ⊔ 1⟨1⟩⟩", "⟨4 ⊔ 1⟨2⟩⟩", "⟨3 ⊔ 1⟨3⟩⟩", "⟨2 ⊔ 1⟨4⟩⟩", "⟨1 ⊔ 1⟨5⟩⟩", "⟨7⟩",
        "⟨1⟨5⟩⟩", "⟨4 ⊔ 1⟨1⟩⟩", "⟨3 ⊔ 1⟨2⟩⟩", "⟨2 ⊔ 1⟨3⟩⟩", "⟨1 ⊔ 1⟨4⟩⟩", "⟨6⟩",
        "⟨1⟨4⟩⟩", "⟨3 ⊔ 1⟨1⟩⟩", "⟨2 ⊔ 1⟨2⟩⟩", "⟨1 ⊔ 1⟨3⟩⟩", "⟨5⟩",
        "⟨1⟨3⟩⟩", "⟨2 ⊔ 1⟨1⟩⟩", "⟨1 ⊔ 1⟨2⟩⟩", "⟨4⟩",
        "⟨1⟨2⟩⟩", "⟨1 ⊔ 1⟨1⟩⟩", "⟨3⟩",
        "⟨1⟨1⟩⟩", "⟨2⟩",
        "⟨1⟩",
        "∅"};
    NonsingularTable t;
    for (const char* s : dividing) t.entries_.insert({render_viro(parse_viro(s)), DivType::I});
    for (const char* s : non_dividing) t.entries_.insert({render_viro(parse_viro(s)), DivType::II});
    return t;
  }

  std::set<std::pair<std::string, DivType>> entries_;
};

inline void check_class_shape(const RigidIsotopyClass& c) {
  if (c.m < 0) throw DomainError("m must be non-negative");
  if (c.divtype == DivType::I && !c.r) throw DomainError("r is required for dividing classes");
  if (c.divtype == DivType::II && c.r) throw DomainError("r is only defined for dividing classes");
  if (c.r && (*c.r < 0 || *c.r > c.m)) throw DomainError("r must lie in 0..m");
}

inline ConditionReport topological_conditions(const RigidIsotopyClass& c,
                                              const NonsingularTable& table = NonsingularTable::standard()) {
  check_class_shape(c);
  const bool dividing = c.divtype == DivType::I;
  const bool smooth_type_one = dividing && *c.r == 0;
  ConditionReport rep;
  rep.results.push_back({"(1)", table.contains(c.scheme, smooth_type_one ? DivType::I : DivType::II)});
  rep.results.push_back(
      {"(2)", harnack_check(static_cast<std::int64_t>(counts(c.scheme).l), c.m, c.divtype)});
  rep.results.push_back({"(3)", !dividing || arnold_congruence(c.scheme, *c.r)});
  rep.results.push_back({"(4)", !dividing || no_injective_pairs_rule(c.scheme, *c.r)});
  return rep;
}

// The arithmetic path: conditions (i)-(v) on the translated invariants, or
// nullopt where the translation is undefined (m = 0, or a dividing empty scheme).
inline std::optional<ConditionReport> arithmetic_path(const RigidIsotopyClass& c) {
  check_class_shape(c);
  if (c.m < 1) return std::nullopt;
  if (c.scheme.empty() && c.divtype == DivType::I) return std::nullopt;
  const SchemeInvariants inv = scheme_to_invariants(c.scheme, c.divtype, c.r);
  return arithmetic_conditions(c.m, inv.a, inv.t, inv.delta, inv.r);
}

class DualPathDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool exists_class(const RigidIsotopyClass& c, const NonsingularTable& table = NonsingularTable::standard()) {
  check_class_shape(c);
  if (c.m == 0) {
    if (c.divtype == DivType::I && *c.r != 0) return false;
    return table.contains(c.scheme, c.divtype);
  }
  const ConditionReport topo = topological_conditions(c, table);
  const auto arith = arithmetic_path(c);
  if (topo.holds("(1)") && arith && arith->all() != topo.all())
    throw DualPathDisagreement("conditions (1)-(4) and (i)-(v) disagree on " + to_string(c));
  return topo.all();
}

inline std::vector<RigidIsotopyClass> enumerate_classes(std::int64_t m_max_global = 5,
                                                        const NonsingularTable& table = NonsingularTable::standard()) {
  std::vector<std::tuple<std::int64_t, std::string, int, std::int64_t, RigidIsotopyClass>> keyed;
  for (const auto& s : enumerate_schemes(11, 3)) {
    const std::string text = render_viro(s);
    for (std::int64_t m = 0; m <= m_max_global; ++m) {
      RigidIsotopyClass two{m, s, DivType::II, std::nullopt};
      if (exists_class(two, table)) keyed.emplace_back(m, text, 1, -1, two);
      for (std::int64_t r = 0; r <= m; ++r) {
        RigidIsotopyClass one{m, s, DivType::I, r};
        if (exists_class(one, table)) keyed.emplace_back(m, text, 0, r, one);
      }
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
  });
  std::vector<RigidIsotopyClass> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(std::get<4>(k)));
  return out;
}

struct Figure1Entry {
  std::string scheme;
  std::vector<std::int64_t> r_set;
  std::int64_t m_max = 0;
  friend bool operator==(const Figure1Entry&, const Figure1Entry&) = default;
};

struct Figure2Entry {
  std::string scheme;
  std::int64_t m_max = 0;
  friend bool operator==(const Figure2Entry&, const Figure2Entry&) = default;
};

struct FigureTables {
  std::vector<Figure1Entry> figure1;
  std::vector<Figure2Entry> figure2;
};

// Rows sorted by (m_max, number of ovals descending, scheme text).
inline FigureTables figure_tables(const std::vector<RigidIsotopyClass>& classes) {
  std::map<std::string, std::pair<std::set<std::int64_t>, std::int64_t>> one;
  std::map<std::string, std::int64_t> two;
  std::map<std::string, std::size_t> ovals;
  for (const auto& c : classes) {
    const std::string text = render_viro(c.scheme);
    ovals[text] = counts(c.scheme).l;
    if (c.divtype == DivType::I) {
      auto& e = one[text];
      e.first.insert(*c.r);
      e.second = std::max(e.second, c.m);
    } else {
      auto [it, fresh] = two.emplace(text, c.m);
      if (!fresh) it->second = std::max(it->second, c.m);
    }
  }
  FigureTables t;
  for (const auto& [text, e] : one) t.figure1.push_back({text, {e.first.begin(), e.first.end()}, e.second});
  for (const auto& [text, mm] : two) t.figure2.push_back({text, mm});
  auto key = [&](const std::string& text, std::int64_t mm) {
    return std::make_tuple(mm, -static_cast<std::int64_t>(ovals[text]), text);
  };
  std::sort(t.figure1.begin(), t.figure1.end(),
            [&](const auto& a, const auto& b) { return key(a.scheme, a.m_max) < key(b.scheme, b.m_max); });
  std::sort(t.figure2.begin(), t.figure2.end(),
            [&](const auto& a, const auto& b) { return key(a.scheme, a.m_max) < key(b.scheme, b.m_max); });
  return t;
}

struct InjectivityReport {
  bool injective = true;
  std::size_t combinations = 0;
  std::vector<std::pair<std::string, std::string>> collisions;
};

// The map (scheme, divtype, r) -> (a, t, delta, r) on accepted combinations.
inline InjectivityReport injectivity_check(const std::vector<RigidIsotopyClass>& classes) {
  std::map<std::tuple<std::int64_t, std::int64_t, int, std::int64_t>, std::string> seen;
  std::set<std::string> done;
  InjectivityReport rep;
  for (const auto& c : classes) {
    RigidIsotopyClass key = c;
    key.m = 0;
    const std::string label = to_string(key);
    if (!done.insert(label).second) continue;
    if (c.scheme.empty() && c.divtype == DivType::I) continue;
    const SchemeInvariants inv = scheme_to_invariants(c.scheme, c.divtype, c.r);
    ++rep.combinations;
    auto [it, fresh] = seen.emplace(std::make_tuple(inv.a, inv.t, inv.delta, inv.r.value_or(-1)), label);
    if (!fresh) {
      rep.injective = false;
      rep.collisions.emplace_back(it->second, label);
    }
  }
  return rep;
}

inline std::size_t count_dividing(const std::vector<RigidIsotopyClass>& classes) {
  return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(),
                                                [](const auto& c) { return c.divtype == DivType::I; }));
}

}  // namespace k3real
