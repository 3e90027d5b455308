#pragma once

// Property suites run by `k3real verify`.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "k3real/catalog.hpp"
#include "k3real/classifier.hpp"
#include "k3real/gauss.hpp"
#include "k3real/involution.hpp"
#include "k3real/json_io.hpp"
#include "k3real/lattice.hpp"
#include "k3real/scheme.hpp"

namespace k3real {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::string detail;  // first counterexample, or a short tally
};

struct VerifyOptions {
  std::string catalog_path = data_path("catalog.json");
  std::string figures_path = data_path("figures.json");
};

namespace detail {

class Recorder {
 public:
  Recorder(std::vector<PropertyResult>& out, std::string suite) : out_(out), suite_(std::move(suite)) {}

  // Runs body; a thrown exception counts as a failure.
  void property(const std::string& name, const std::function<std::string()>& body) {
    PropertyResult r{suite_, name, true, {}};
    try {
      r.detail = body();
      r.passed = r.detail.rfind("FAIL", 0) != 0;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

 private:
  std::vector<PropertyResult>& out_;
  std::string suite_;
};

inline std::string tally(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

// Elements of L*/L as numerator vectors y in [0, d)^n with G y = 0 mod d.
inline std::map<std::int64_t, std::int64_t> dual_vector_order_census(const IntLattice& l) {
  const std::int64_t d = to_int64(abs(determinant(l)));
  const std::size_t n = l.rank();
  std::map<std::int64_t, std::int64_t> census;
  std::vector<std::int64_t> y(n, 0);
  for (;;) {
    bool dual = true;
    for (std::size_t i = 0; i < n && dual; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += l.gram()(i, j) * y[j];
      dual = mod(s, Integer(d)) == 0;
    }
    if (dual) {
      std::int64_t g = d;
      for (auto c : y) g = std::gcd(g, c);
      ++census[d / g];
    }
    std::size_t k = 0;
    while (k < n && ++y[k] == d) y[k++] = 0;
    if (k == n) break;
  }
  return census;
}

inline std::map<std::int64_t, std::int64_t> cyclic_order_census(const std::vector<Integer>& orders) {
  std::map<std::int64_t, std::int64_t> census{{1, 1}};
  for (const auto& o : orders) {
    const std::int64_t d = to_int64(o);
    std::map<std::int64_t, std::int64_t> next;
    for (const auto& [ord, cnt] : census)
      for (std::int64_t k = 0; k < d; ++k) {
        const std::int64_t ok = d / std::gcd(d, k);
        next[std::lcm(ord, ok)] += cnt;
      }
    census = std::move(next);
  }
  return census;
}

// chi of the even-depth regions: the outer region, and the region inside each
// odd-depth oval, each a disk or sphere-with-holes minus the children's disks.
inline std::int64_t region_chi_oracle(const std::vector<Oval>& ovals, std::size_t depth, bool outer) {
  std::int64_t chi = outer ? 1 - static_cast<std::int64_t>(ovals.size()) : 0;
  for (const auto& o : ovals) {
    if (depth % 2 == 1) chi += 1 - static_cast<std::int64_t>(o.children.size());
    chi += region_chi_oracle(o.children, depth + 1, false);
  }
  return chi;
}

inline FiniteQuadraticForm permuted(const FiniteQuadraticForm& f, const std::vector<std::size_t>& p) {
  std::vector<std::int64_t> orders;
  std::vector<Rational> q;
  std::vector<std::vector<Rational>> b(p.size(), std::vector<Rational>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    orders.push_back(f.orders()[p[i]]);
    q.push_back(f.q(p[i]));
    for (std::size_t j = 0; j < p.size(); ++j) b[i][j] = f.b(p[i], p[j]);
  }
  return FiniteQuadraticForm(std::move(orders), q, b);
}

inline Element permuted(const Element& x, const std::vector<std::size_t>& p) {
  Element y(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) y[i] = x[p[i]];
  return y;
}

// Every form on (Z/2)^k with q_i in {0, 1/2, 1, 3/2} and b_ij in {0, 1/2}.
inline void for_each_period_two_form(std::size_t k, const std::function<void(const FiniteQuadraticForm&)>& visit) {
  const std::size_t offdiag = k * (k - 1) / 2;
  const std::size_t total = (std::size_t{1} << (2 * k)) << offdiag;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Rational> q(k);
    std::vector<std::vector<Rational>> b(k, std::vector<Rational>(k));
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i, c >>= 2) q[i] = make_rational(static_cast<long long>(c & 3), 2);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j, c >>= 1) b[i][j] = b[j][i] = make_rational(static_cast<long long>(c & 1), 2);
    for (std::size_t i = 0; i < k; ++i) b[i][i] = reduce_mod(q[i], 1);
    visit(FiniteQuadraticForm(std::vector<std::int64_t>(k, 2), q, b));
  }
}

}  // namespace detail

inline void lattice_core_properties(std::vector<PropertyResult>& out, const ModelCatalog& cat) {
  detail::Recorder rec(out, "lattice-core");
  const auto lattices = lattice_catalog();
  std::vector<MarkedInvolution> models;
  for (const auto& m : cat.models) models.push_back(build_model_involution(m.spec));

  rec.property("signature sums to rank; |det| = product of discriminant orders", [&] {
    for (const auto& l : lattices) {
      const Signature s = signature(l);
      Integer prod = 1;
      for (const auto& d : discriminant_group(l)) prod *= d;
      if (s.positive + s.negative != l.rank() || prod != abs(determinant(l))) return "FAIL " + l.label();
    }
    return detail::tally(lattices.size(), "lattices");
  });

  rec.property("q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2 on every pair", [&] {
    std::size_t forms = 0;
    for (const auto& l : lattices) {
      const FiniteQuadraticForm f = discriminant_form(l);
      if (f.group_order() > 512) continue;
      const auto els = f.elements();
      for (const auto& x : els)
        for (const auto& y : els)
          if (reduce_mod(f.value(f.add(x, y)) - f.value(x) - f.value(y) - 2 * f.pairing(x, y), 2) != 0)
            return "FAIL " + l.label();
      ++forms;
    }
    return detail::tally(forms, "forms");
  });

  rec.property("orthogonal complements are primitive", [&] {
    std::size_t n = 0;
    for (const auto& mi : models) {
      const Sublattice s(mi.lattice, mi.s_basis());
      if (!is_primitive_sublattice(mi.lattice, orthogonal_complement(mi.lattice, s))) return std::string("FAIL S-perp");
      for (int sign : {1, -1}) {
        const Sublattice f = fixed_sublattice(mi.lattice, mi.phi, sign);
        if (!is_primitive_sublattice(mi.lattice, orthogonal_complement(mi.lattice, f)))
          return std::string("FAIL L-perp");
        ++n;
      }
    }
    return detail::tally(n + models.size(), "complements");
  });

  rec.property("fixed sublattices are orthogonal with complementary ranks", [&] {
    for (const auto& mi : models) {
      const Sublattice p = fixed_sublattice(mi.lattice, mi.phi, 1), m = fixed_sublattice(mi.lattice, mi.phi, -1);
      if (p.rank() + m.rank() != mi.lattice.rank()) return std::string("FAIL ranks");
      for (std::size_t i = 0; i < p.rank(); ++i)
        for (std::size_t j = 0; j < m.rank(); ++j)
          if (mi.lattice.pair(p.basis().column(i), m.basis().column(j)) != 0) return std::string("FAIL pairing");
    }
    return detail::tally(models.size(), "involutions");
  });

  rec.property("twisted characteristic vector: alpha.phi(x) = x.phi(x) mod 2", [&] {
    for (const auto& mi : models) {
      const IntVector alpha = twisted_characteristic_vector(mi.lattice, mi.phi);
      for (std::size_t i = 0; i < mi.lattice.rank(); ++i) {
        IntVector x(mi.lattice.rank());
        x[i] = 1;
        if (mod(mi.lattice.pair(x, mi.phi.apply(x)) - mi.lattice.pair(alpha, mi.phi.apply(x)), Integer(2)) != 0)
          return "FAIL basis vector " + std::to_string(i);
      }
    }
    return detail::tally(models.size(), "involutions");
  });

  rec.property("discriminant group agrees with dual-vector enumeration", [&] {
    std::size_t n = 0;
    for (const auto& l : lattices) {
      if (l.rank() > 3 || abs(determinant(l)) > 16) continue;
      if (detail::dual_vector_order_census(l) != detail::cyclic_order_census(discriminant_group(l)))
        return "FAIL " + l.label();
      ++n;
    }
    return detail::tally(n, "lattices");
  });
}

inline void finite_form_properties(std::vector<PropertyResult>& out) {
  detail::Recorder rec(out, "finite-forms");

  rec.property("glue is independent of generator ordering", [&] {
    // A on Z/2 + Z/4 + Z/2 and its negative, glued along the first k generators.
    const FiniteQuadraticForm a(
        {2, 4, 2}, {make_rational(1, 2), make_rational(-1, 4), make_rational(1)},
        {{make_rational(1, 2), 0, make_rational(1, 2)}, {0, make_rational(3, 4), 0}, {make_rational(1, 2), 0, 0}});
    std::vector<Rational> nq;
    std::vector<std::vector<Rational>> nb(3, std::vector<Rational>(3));
    for (std::size_t i = 0; i < 3; ++i) {
      nq.push_back(-a.q(i));
      for (std::size_t j = 0; j < 3; ++j) nb[i][j] = -a.b(i, j);
    }
    const FiniteQuadraticForm neg(a.orders(), nq, nb);
    std::size_t runs = 0;
    for (std::size_t sub = 1; sub <= 3; ++sub) {
      SubgroupAntiIsometry ref;
      for (std::size_t k = 0; k < sub; ++k) {
        ref.domain_generators.push_back(a.generator(k));
        ref.image_generators.push_back(neg.generator(k));
      }
      const FiniteQuadraticForm expect = glue(a, neg, ref);
      std::vector<std::size_t> p{0, 1, 2};
      do {
        SubgroupAntiIsometry g;
        for (std::size_t k = sub; k-- > 0;) {
          g.domain_generators.push_back(detail::permuted(a.generator(k), p));
          g.image_generators.push_back(detail::permuted(neg.generator(k), p));
        }
        const FiniteQuadraticForm glued = glue(detail::permuted(a, p), detail::permuted(neg, p), g);
        if (!is_isomorphic(glued, expect)) return "FAIL k=" + std::to_string(sub);
        ++runs;
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return detail::tally(runs, "gluings");
  });

  rec.property("Milgram: gauss_signature(disc L) = sig+ - sig- mod 8", [&] {
    const auto lattices = lattice_catalog();
    for (const auto& l : lattices) {
      const Signature s = signature(l);
      const std::int64_t expect =
          mod(static_cast<std::int64_t>(s.positive) - static_cast<std::int64_t>(s.negative), std::int64_t{8});
      if (gauss_signature(discriminant_form(l)) != expect) return "FAIL " + l.label();
    }
    return detail::tally(lattices.size(), "lattices");
  });

  // Among nondegenerate period-2 forms, (length, parity) pins the form once the
  // signature mod 8 is fixed, as it is for a given lattice.
  rec.property("period-2 forms: (length, parity, signature) determines the form", [&] {
    std::size_t checked = 0;
    std::string failure;
    std::map<std::tuple<std::size_t, Parity, int>, FiniteQuadraticForm> reps;
    auto visit = [&](const FiniteQuadraticForm& f) {
      if (!failure.empty() || is_degenerate(f)) return;
      const Profile p = profile(f);
      const auto key = std::make_tuple(p.length, p.parity, gauss_signature(f));
      auto [it, fresh] = reps.emplace(key, f);
      if (!fresh && !is_isomorphic(f, it->second)) failure = "FAIL length " + std::to_string(p.length);
      ++checked;
    };
    for (std::size_t k = 1; k <= 4; ++k) detail::for_each_period_two_form(k, visit);
    // Order 32: a fixed-seed sample.
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> pick(0, 3), bit(0, 1);
    for (int trial = 0; trial < 400 && failure.empty(); ++trial) {
      std::vector<Rational> q(5);
      std::vector<std::vector<Rational>> b(5, std::vector<Rational>(5));
      for (std::size_t i = 0; i < 5; ++i) q[i] = make_rational(pick(rng), 2);
      for (std::size_t i = 0; i < 5; ++i) {
        b[i][i] = reduce_mod(q[i], 1);
        for (std::size_t j = i + 1; j < 5; ++j) b[i][j] = b[j][i] = make_rational(bit(rng), 2);
      }
      visit(FiniteQuadraticForm(std::vector<std::int64_t>(5, 2), q, b));
    }
    return failure.empty() ? detail::tally(checked, "forms") : failure;
  });

  rec.property("two-adic square class is invariant under odd squares", [&] {
    std::size_t n = 0;
    for (long long u = -31; u <= 31; u += 2)
      for (long long den = 1; den <= 15; den += 2)
        for (long long v = 1; v <= 15; v += 2) {
          const Rational x = make_rational(u, den);
          if (two_adic_unit_square_class(x * make_rational(v * v, 1)) != two_adic_unit_square_class(x) ||
              two_adic_unit_square_class(x / make_rational(v * v, 1)) != two_adic_unit_square_class(x))
            return "FAIL " + to_string(x);
          ++n;
        }
    return detail::tally(n, "pairs");
  });
}

inline void involution_properties(std::vector<PropertyResult>& out, const ModelCatalog& cat) {
  detail::Recorder rec(out, "involution-invariants");

  rec.property("4 eps(r) + c_v(r) + 2r = 0 mod 8; discriminant route agrees", [&] {
    for (std::size_t r = 0; r <= 20; ++r) {
      if (!lemma_epsilon_identity(r)) return "FAIL identity r=" + std::to_string(r);
      for (std::size_t m = std::max<std::size_t>(r, 1); m <= 10; ++m)
        if (epsilon_via_discriminant(m, r) != epsilon_v_plus(r))
          return "FAIL m=" + std::to_string(m) + " r=" + std::to_string(r);
    }
    return std::string("r in 0..20");
  });

  rec.property("c_v from q_r matches the closed form", [&] {
    for (std::size_t m = 1; m <= 5; ++m)
      for (std::size_t r = 0; r <= m; ++r)
        if (c_v_from_form(m, r) != c_v(r)) return "FAIL m=" + std::to_string(m) + " r=" + std::to_string(r);
    return std::string("m in 1..5");
  });

  rec.property("BC1 iff 2r = a - 2 mod 8 on a = 1 + t", [&] {
    for (std::int64_t a = 0; a <= 20; ++a)
      for (std::int64_t r = 0; r <= 10; ++r)
        if (boundary_condition_bc1(a, a - 1, r) != (mod(2 * r - (a - 2), 8) == 0))
          return "FAIL a=" + std::to_string(a) + " r=" + std::to_string(r);
    return std::string("231 triples");
  });

  rec.property("invariants are stable under reordering and swapping sigma pairs", [&] {
    std::size_t variants = 0;
    for (const auto& model : cat.models) {
      const MarkedInvolution base = build_model_involution(model.spec);
      const HomInvariants expect = invariants(base);
      std::vector<std::size_t> order(base.m());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      do {
        for (std::size_t mask = 0; mask < (std::size_t{1} << base.m()); ++mask) {
          MarkedInvolution v = base;
          v.sigma.clear();
          for (std::size_t i = 0; i < order.size(); ++i) {
            auto pair = base.sigma[order[i]];
            if (mask >> i & 1) std::swap(pair.first, pair.second);
            v.sigma.push_back(pair);
          }
          if (!(invariants(v) == expect)) return "FAIL " + model.spec.name;
          ++variants;
        }
      } while (std::next_permutation(order.begin(), order.end()));
    }
    return detail::tally(variants, "variants");
  });

  rec.property("delta = 0 leaves no h component in the mod-2 decomposition", [&] {
    std::size_t n = 0;
    for (const auto& model : cat.models) {
      const MarkedInvolution mi = build_model_involution(model.spec);
      const auto sol = solve_mod2(mi.s_basis(), twisted_characteristic_vector(mi.lattice, mi.phi));
      if (sol && sol->x[0] != 0) return "FAIL " + model.spec.name;
      n += sol ? 1 : 0;
    }
    return detail::tally(n, "markings with delta = 0");
  });

  rec.property("catalog models yield their recorded invariants; invalid ones fail the named clause", [&] {
    for (const auto& model : cat.models)
      if (!(invariants(build_model_involution(model.spec)) == model.expected)) return "FAIL " + model.spec.name;
    for (const auto& bad : cat.invalid)
      if (validate_marking(build_model_involution(bad.spec)).clause != bad.violation) return "FAIL " + bad.spec.name;
    return detail::tally(cat.models.size() + cat.invalid.size(), "models");
  });
}

inline void scheme_properties(std::vector<PropertyResult>& out) {
  detail::Recorder rec(out, "real-schemes");
  const auto schemes = enumerate_schemes(11, 3);

  rec.property("parse(render(s)) = s in both notations", [&] {
    for (const auto& s : schemes)
      for (Notation n : {Notation::unicode, Notation::ascii})
        if (!(parse_viro(render_viro(s, n)) == s)) return "FAIL " + render_viro(s);
    return detail::tally(schemes.size(), "schemes");
  });

  rec.property("a + l = 11; o_even + o_odd = l; injective pairs <= l(l-1)/2", [&] {
    for (const auto& s : schemes) {
      const SchemeCounts c = counts(s);
      if (c.o_even + c.o_odd != c.l || 2 * c.injective_pairs > c.l * (c.l - (c.l > 0 ? 1 : 0)))
        return "FAIL " + render_viro(s);
      if (!s.empty() && scheme_to_invariants(s, DivType::II).a + static_cast<std::int64_t>(c.l) != 11)
        return "FAIL a+l " + render_viro(s);
    }
    return detail::tally(schemes.size(), "schemes");
  });

  rec.property("chi(B) matches the region decomposition", [&] {
    for (const auto& s : schemes) {
      if (s.empty()) continue;
      if (euler_char_nonorientable_half(s) != detail::region_chi_oracle(s.roots(), 0, true))
        return "FAIL " + render_viro(s);
    }
    return detail::tally(schemes.size() - 1, "schemes");
  });

  rec.property("nest-free schemes force r = (9 - l)/2", [&] {
    const std::pair<const char*, std::int64_t> cases[] = {{"⟨1⟩", 4}, {"⟨3⟩", 3}, {"⟨5⟩", 2}, {"⟨7⟩", 1}, {"⟨9⟩", 0}};
    for (const auto& [text, forced] : cases) {
      const RealScheme s = parse_viro(text);
      for (std::int64_t r = 0; r <= 5; ++r)
        if (no_injective_pairs_rule(s, r) != (r == forced)) return "FAIL " + std::string(text);
    }
    return std::string("5 schemes");
  });
}

inline void classifier_properties(std::vector<PropertyResult>& out, const std::string& figures_path) {
  detail::Recorder rec(out, "classifier");
  const auto classes = enumerate_classes();
  const FigureTables golden = json_io::figures_from_json(json_io::read_file(figures_path));

  rec.property("dual-path agreement for m >= 1", [&] {
    std::size_t combos = 0;
    for (const auto& s : enumerate_schemes(11, 3))
      for (std::int64_t m = 1; m <= 5; ++m) {
        std::vector<RigidIsotopyClass> cs{{m, s, DivType::II, std::nullopt}};
        for (std::int64_t r = 0; r <= m; ++r) cs.push_back({m, s, DivType::I, r});
        for (const auto& c : cs) {
          const ConditionReport topo = topological_conditions(c);
          const auto arith = arithmetic_path(c);
          if (!topo.holds("(1)") || !arith) continue;
          ++combos;
          if (arith->all() != topo.all()) return "FAIL " + to_string(c);
        }
      }
    return detail::tally(combos, "combinations");
  });

  rec.property("m_max = floor(a/2) for I and floor((a-1)/2) for II on every figure row", [&] {
    for (const auto& e : golden.figure1) {
      const std::int64_t a = 11 - static_cast<std::int64_t>(counts(parse_viro(e.scheme)).l);
      if (e.m_max != a / 2) return "FAIL " + e.scheme;
    }
    for (const auto& e : golden.figure2) {
      const RealScheme s = parse_viro(e.scheme);
      const std::int64_t a = s.empty() ? 10 : 11 - static_cast<std::int64_t>(counts(s).l);
      // The empty scheme translates with delta = 0, which admits 2m = a.
      const std::int64_t law = s.empty() ? a / 2 : (a - 1) / 2;
      if (e.m_max != law) return "FAIL " + e.scheme;
    }
    return detail::tally(golden.figure1.size() + golden.figure2.size(), "rows");
  });

  rec.property("m = 0 classes coincide with the nonsingular table", [&] {
    std::set<std::pair<std::string, DivType>> found;
    for (const auto& c : classes)
      if (c.m == 0) found.insert({render_viro(c.scheme), c.divtype});
    return found == NonsingularTable::standard().entries() ? detail::tally(found.size(), "schemes")
                                                           : std::string("FAIL table mismatch");
  });

  rec.property("dividing table reproduced exactly", [&] {
    const FigureTables t = figure_tables(classes);
    auto sorted = [](std::vector<Figure1Entry> v) {
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.scheme < y.scheme; });
      return v;
    };
    return sorted(t.figure1) == sorted(golden.figure1) ? detail::tally(t.figure1.size(), "entries")
                                                       : std::string("FAIL dividing table differs");
  });

  rec.property("non-dividing table rows reproduced exactly", [&] {
    const FigureTables t = figure_tables(classes);
    auto sorted = [](std::vector<Figure2Entry> v) {
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.scheme < y.scheme; });
      return v;
    };
    return sorted(t.figure2) == sorted(golden.figure2) ? detail::tally(t.figure2.size(), "entries")
                                                       : std::string("FAIL non-dividing table differs");
  });

  rec.property("78 dividing classes", [&] {
    const std::size_t n = count_dividing(classes);
    return n == 78 ? detail::tally(n, "classes") : "FAIL " + std::to_string(n);
  });

  rec.property("invariant map is injective", [&] {
    const InjectivityReport rep = injectivity_check(classes);
    return rep.injective ? detail::tally(rep.combinations, "combinations")
                         : "FAIL " + rep.collisions.front().first + " ~ " + rep.collisions.front().second;
  });
}

inline void cli_properties(std::vector<PropertyResult>& out) {
  detail::Recorder rec(out, "cli");
  rec.property("enumeration output is byte-identical across runs", [&] {
    const std::string a = json_io::classes_to_json(enumerate_classes()).dump(2);
    const std::string b = json_io::classes_to_json(enumerate_classes()).dump(2);
    const std::string c = json_io::classes_to_csv(enumerate_classes());
    const std::string d = json_io::classes_to_csv(enumerate_classes());
    return a == b && c == d ? detail::tally(a.size() + c.size(), "bytes") : std::string("FAIL output differs");
  });
}

inline std::vector<PropertyResult> run_property_suites(const VerifyOptions& opt = {}) {
  std::vector<PropertyResult> out;
  const ModelCatalog cat = load_model_catalog(opt.catalog_path);
  lattice_core_properties(out, cat);
  finite_form_properties(out);
  involution_properties(out, cat);
  scheme_properties(out);
  classifier_properties(out, opt.figures_path);
  cli_properties(out);
  return out;
}

}  // namespace k3real
