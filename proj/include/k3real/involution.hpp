#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "k3real/arith.hpp"
#include "k3real/finite_form.hpp"
#include "k3real/lattice.hpp"
#include "k3real/matrix.hpp"

namespace k3real {

struct MarkedInvolution {
  IntLattice lattice;
  IntVector h;
  std::vector<std::pair<IntVector, IntVector>> sigma;  // (s'_i, s''_i)
  LatticeInvolution phi;

  std::size_t m() const { return sigma.size(); }

  // h, s'_1, s''_1, ..., s'_m, s''_m as columns.
  IntMatrix s_basis() const {
    std::vector<IntVector> cols{h};
    for (const auto& [a, b] : sigma) {
      cols.push_back(a);
      cols.push_back(b);
    }
    return IntMatrix::from_columns(cols, lattice.rank());
  }
};

// Clause names, in checking order.
inline const std::vector<std::string>& marking_clauses() {
  static const std::vector<std::string> names{
      "shape",        "lattice",  "involution", "polarization",     "roots",        "orthogonality",
      "primitivity",  "real_node", "action",    "positive_squares", "property_star"};
  return names;
}

struct MarkingReport {
  bool ok = true;
  std::string clause;  // first violated clause, empty when ok
  std::string detail;
};

namespace detail {

inline bool negates(const LatticeInvolution& phi, const IntVector& x, const IntVector& y) {
  IntVector fx = phi.apply(x);
  for (std::size_t i = 0; i < fx.size(); ++i)
    if (fx[i] != -y[i]) return false;
  return true;
}

}  // namespace detail

inline MarkingReport validate_marking(const MarkedInvolution& mi) {
  auto fail = [](std::string clause, std::string detail) {
    return MarkingReport{false, std::move(clause), std::move(detail)};
  };
  const IntLattice& l = mi.lattice;
  const std::size_t n = l.rank();

  if (mi.h.size() != n || mi.phi.matrix().rows() != n || mi.phi.matrix().cols() != n)
    return fail("shape", "h and phi must match the lattice rank");
  for (const auto& [a, b] : mi.sigma)
    if (a.size() != n || b.size() != n) return fail("shape", "sigma vectors must match the lattice rank");

  if (!is_even(l) || !is_unimodular(l)) return fail("lattice", "lattice must be even and unimodular");
  try {
    mi.phi.validate(l);
  } catch (const DomainError& e) {
    return fail("involution", e.what());
  }
  if (l.square(mi.h) != 2) return fail("polarization", "h^2 = " + l.square(mi.h).str() + ", expected 2");

  std::vector<IntVector> sig;
  for (const auto& [a, b] : mi.sigma) {
    sig.push_back(a);
    sig.push_back(b);
  }
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (l.square(sig[i]) != -2) return fail("roots", "sigma vector " + std::to_string(i) + " is not a root");
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (l.pair(sig[i], mi.h) != 0)
      return fail("orthogonality", "sigma vector " + std::to_string(i) + " is not orthogonal to h");
    for (std::size_t j = i + 1; j < sig.size(); ++j)
      if (l.pair(sig[i], sig[j]) != 0)
        return fail("orthogonality",
                    "sigma vectors " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
  }

  if (!is_primitive_sublattice(l, Sublattice(l, mi.s_basis())))
    return fail("primitivity", "S = <h, sigma> is not primitive");

  for (std::size_t i = 0; i < sig.size(); ++i)
    if (detail::negates(mi.phi, sig[i], sig[i]))
      return fail("real_node", "phi(s) = -s for sigma vector " + std::to_string(i));

  if (!detail::negates(mi.phi, mi.h, mi.h)) return fail("action", "phi(h) != -h");
  for (std::size_t i = 0; i < mi.sigma.size(); ++i) {
    const auto& [a, b] = mi.sigma[i];
    if (!detail::negates(mi.phi, a, b) || !detail::negates(mi.phi, b, a))
      return fail("action", "phi does not map pair " + std::to_string(i) + " to minus its swap");
  }

  const Sublattice plus = fixed_sublattice(l, mi.phi, 1);
  const Signature sp = signature(plus.lattice());
  if (sp.positive != 1)
    return fail("positive_squares", "L+ has " + std::to_string(sp.positive) + " positive squares, expected one");

  const Sublattice minus = fixed_sublattice(l, mi.phi, -1);
  bool star = false;
  for (std::size_t j = 0; j < minus.rank() && !star; ++j)
    star = mod(l.pair(minus.basis().column(j), mi.h), Integer(2)) != 0;
  if (!star) return fail("property_star", "no x with phi(x) = -x has x.h odd");
  return {};
}

struct HomInvariants {
  std::size_t m = 0;
  std::size_t a = 0;
  std::size_t t = 0;
  int delta = 0;
  std::optional<std::size_t> r;
  friend bool operator==(const HomInvariants&, const HomInvariants&) = default;
};

inline std::string to_string(const HomInvariants& inv) {
  std::ostringstream os;
  os << "(m=" << inv.m << ", a=" << inv.a << ", t=" << inv.t << ", delta=" << inv.delta << ", r=";
  if (inv.r)
    os << *inv.r;
  else
    os << "-";
  os << ")";
  return os.str();
}

inline HomInvariants invariants(const MarkedInvolution& mi) {
  const MarkingReport report = validate_marking(mi);
  if (!report.ok) throw DomainError("invalid marking [" + report.clause + "]: " + report.detail);
  const IntLattice& l = mi.lattice;

  HomInvariants inv;
  inv.m = mi.m();
  const IntLattice plus = fixed_sublattice(l, mi.phi, 1).lattice();
  for (const auto& d : discriminant_group(plus))
    if (d != 2) throw DomainError("discriminant group of L+ is not of period 2");
  inv.a = discriminant_group(plus).size();
  inv.t = signature(plus).negative;

  const IntVector alpha = twisted_characteristic_vector(l, mi.phi);
  const auto sol = solve_mod2(mi.s_basis(), alpha);
  if (!sol) {
    inv.delta = 1;
    return inv;
  }
  if (sol->nullity != 0) throw DomainError("S/2S does not embed in L/2L");
  if (sol->x[0] != 0) throw DomainError("characteristic vector has an h component");
  std::size_t r = 0;
  for (std::size_t i = 0; i < mi.m(); ++i) {
    if (sol->x[1 + 2 * i] != sol->x[2 + 2 * i])
      throw DomainError("characteristic vector splits pair " + std::to_string(i));
    r += sol->x[1 + 2 * i];
  }
  inv.r = r;
  return inv;
}

// (Z/4)^m, q = -1/4 on each generator.
inline FiniteQuadraticForm s_plus_form(std::size_t m) {
  if (m == 0) throw DomainError("s_plus_form needs m >= 1");
  FiniteQuadraticForm f = FiniteQuadraticForm::cyclic(4, make_rational(-1, 4));
  for (std::size_t i = 1; i < m; ++i) f = orthogonal_sum(f, FiniteQuadraticForm::cyclic(4, make_rational(-1, 4)));
  return f;
}

// (Z/4)^m + Z/2, the last generator being [h/2].
inline FiniteQuadraticForm s_minus_form(std::size_t m) {
  return orthogonal_sum(s_plus_form(m), FiniteQuadraticForm::cyclic(2, make_rational(1, 2)));
}

namespace detail {

// Gamma_+ = <[p_i/2]> and Gamma_- = <[n_i/2]> as forms on (Z/2)^m, generator i
// being 2 g_i.
inline FiniteQuadraticForm gamma_form(const FiniteQuadraticForm& ambient, std::size_t m) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < m; ++i) gens.push_back(ambient.scale(2, ambient.generator(i)));
  return form_on_independent_generators(ambient, gens);
}

}  // namespace detail

// Gamma_+ (+)_gamma Gamma_- with [p_i/2] -> [n_i/2].
inline FiniteQuadraticForm q_r_form(std::size_t m) {
  const FiniteQuadraticForm gp = detail::gamma_form(s_plus_form(m), m);
  const FiniteQuadraticForm gm = detail::gamma_form(s_minus_form(m), m);
  SubgroupAntiIsometry gamma;
  for (std::size_t i = 0; i < m; ++i) {
    gamma.domain_generators.push_back(gp.generator(i));
    gamma.image_generators.push_back(gm.generator(i));
  }
  return glue(gp, gm, gamma);
}

inline int c_v(std::size_t r) { return r % 2 == 0 ? 0 : 2; }

// c_v in {-1, 0, 1, 2} mod 8 from 1/2 c_v = q_r(v) mod 2, v = sum_{i<=r} [p_i/2].
// The class of ([p_i/2], 0) in Gamma_+ (+) Gamma_- represents v.
inline int c_v_from_form(std::size_t m, std::size_t r) {
  if (r > m) throw DomainError("r exceeds m");
  const FiniteQuadraticForm gp = detail::gamma_form(s_plus_form(m), m);
  const FiniteQuadraticForm gm = detail::gamma_form(s_minus_form(m), m);
  const FiniteQuadraticForm sum = orthogonal_sum(gp, gm);
  Element v = sum.zero();
  for (std::size_t i = 0; i < r; ++i) v[i] = 1;
  std::vector<Element> graph;
  for (std::size_t i = 0; i < m; ++i) {
    Element g = sum.zero();
    g[i] = g[m + i] = 1;
    graph.push_back(g);
  }
  for (const auto& g : graph)
    if (sum.pairing_numerator(v, g) != 0) throw DomainError("v is not orthogonal to the graph of gamma");
  const Rational half_c = sum.value(v);
  for (int c : {-1, 0, 1, 2})
    if (reduce_mod(Rational(c, 2) - half_c, 2) == 0) return static_cast<int>(mod(std::int64_t{c}, std::int64_t{8}));
  throw DomainError("no c_v representative");
}

inline int epsilon_v_plus(std::size_t r) { return static_cast<int>(((r + 1) / 2) % 2); }

// Exponent of 5 in the square class of prod b_i^2 over the orthogonal basis
// b_i^2 = -5*4 (i <= r, i odd) or -1*4.
inline int epsilon_via_discriminant(std::size_t m, std::size_t r) {
  if (r > m) throw DomainError("r exceeds m");
  Integer disc = 1;
  for (std::size_t i = 1; i <= m; ++i) disc *= (i <= r && i % 2 == 1) ? Integer(-20) : Integer(-4);
  while (disc % 4 == 0) disc /= 4;
  if (disc % 2 == 0) throw DomainError("discriminant is not a 2-adic unit times a square");
  const int cls = two_adic_unit_square_class(Rational(disc));
  return (cls == 5 || cls == -5) ? 1 : 0;
}

inline bool lemma_epsilon_identity(std::size_t r) {
  return mod(std::int64_t{4} * epsilon_v_plus(r) + c_v(r) + 2 * static_cast<std::int64_t>(r), 8) == 0;
}

// Vacuously true when a != 1 + t.
inline bool boundary_condition_bc1(std::int64_t a, std::int64_t t, std::int64_t r) {
  if (a != 1 + t) return true;
  return mod(1 - t - 4 * epsilon_v_plus(static_cast<std::size_t>(r)) - c_v(static_cast<std::size_t>(r)), 8) == 0;
}

struct ConditionResult {
  std::string name;
  bool holds = true;
};

struct ConditionReport {
  std::vector<ConditionResult> results;
  bool all() const {
    for (const auto& c : results)
      if (!c.holds) return false;
    return true;
  }
  bool holds(const std::string& name) const {
    for (const auto& c : results)
      if (c.name == name) return c.holds;
    throw DomainError("no condition named " + name);
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : results)
      if (!c.holds) out.push_back(c.name);
    return out;
  }
};

inline ConditionReport arithmetic_conditions(std::int64_t m, std::int64_t a, std::int64_t t, int delta,
                                             std::optional<std::int64_t> r) {
  if (m < 1) throw DomainError("arithmetic conditions need m >= 1");
  if (delta != 0 && delta != 1) throw DomainError("delta must be 0 or 1");
  if (delta == 1 && r) throw DomainError("r is only defined when delta = 0");
  if (delta == 0 && !r) throw DomainError("r is required when delta = 0");
  ConditionReport rep;
  rep.results.push_back({"(i)", a <= 1 + t && 1 + t <= 20 - a});
  rep.results.push_back({"(ii)", mod(a - 1 - t, 2) == 0});
  rep.results.push_back({"(iii)", 2 * m < a || (2 * m == a && delta == 0)});
  rep.results.push_back({"(iv)", delta != 0 || mod(2 * *r - (1 - t), 4) == 0});
  rep.results.push_back({"(v)", delta != 0 || a != 1 + t || mod(2 * *r - (a - 2), 8) == 0});
  return rep;
}

}  // namespace k3real
