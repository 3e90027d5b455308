#pragma once

// Independent reference computations used only by the test suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "k3real/finite_form.hpp"
#include "k3real/lattice.hpp"
#include "k3real/scheme.hpp"

namespace oracle {

using k3real::Integer;
using k3real::IntMatrix;
using k3real::IntLattice;
using k3real::Rational;

// Leibniz expansion; only for n <= 8.
inline Integer leibniz_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) sign = -sign;
    Integer term = sign;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Characteristic polynomial coefficients c_0..c_n (c_n = 1) by Faddeev-LeVerrier.
inline std::vector<Rational> characteristic_polynomial(const IntMatrix& a) {
  const std::size_t n = a.rows();
  using RM = std::vector<std::vector<Rational>>;
  RM A(n, std::vector<Rational>(n)), M(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = Rational(a(i, j));
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    RM AM(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (M[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) AM[i][j] += M[i][l] * A[l][j];
      }
    // M_k = A M_{k-1} + c_{n-k+1} I, with M_0 = 0.
    M = std::move(AM);
    for (std::size_t i = 0; i < n; ++i) M[i][i] += c[n - k + 1];
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += A[i][l] * M[l][i];
    c[n - k] = -trace / Rational(static_cast<long long>(k));
  }
  return c;
}

inline std::size_t sign_changes(const std::vector<Rational>& coeffs) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& x : coeffs) {
    const int s = x > 0 ? 1 : (x < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Inertia by Descartes' rule, exact for the real-rooted characteristic
// polynomial of a symmetric matrix.
inline std::pair<std::size_t, std::size_t> inertia(const IntMatrix& gram) {
  std::vector<Rational> c = characteristic_polynomial(gram);
  const std::size_t pos = sign_changes(c);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (k % 2 == 1) c[k] = -c[k];
  return {pos, sign_changes(c)};
}

struct DualElement {
  std::vector<std::int64_t> y;  // numerators over d
  std::int64_t order;
  Rational q;  // y.G.y / d^2 mod 2
};

// All of L*/L as vectors y/d, y in [0, d)^n with G y = 0 mod d.
inline std::vector<DualElement> dual_quotient(const IntLattice& l) {
  const std::int64_t d = k3real::to_int64(k3real::abs(k3real::determinant(l)));
  const std::size_t n = l.rank();
  std::vector<DualElement> out;
  std::vector<std::int64_t> y(n, 0);
  for (;;) {
    bool dual = true;
    for (std::size_t i = 0; i < n && dual; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += l.gram()(i, j) * y[j];
      dual = s % d == 0;
    }
    if (dual) {
      std::int64_t g = d;
      for (auto c : y) g = std::gcd(g, c);
      Integer num = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) num += l.gram()(i, j) * y[i] * y[j];
      out.push_back({y, d / g, k3real::reduce_mod(Rational(num, Integer(d) * d), 2)});
    }
    std::size_t k = 0;
    while (k < n && ++y[k] == d) y[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline std::map<std::int64_t, std::int64_t> order_census(const std::vector<DualElement>& els) {
  std::map<std::int64_t, std::int64_t> c;
  for (const auto& e : els) ++c[e.order];
  return c;
}

inline std::map<Rational, std::int64_t> value_census(const std::vector<DualElement>& els) {
  std::map<Rational, std::int64_t> c;
  for (const auto& e : els) ++c[e.q];
  return c;
}

inline std::map<std::int64_t, std::int64_t> order_census(const k3real::FiniteQuadraticForm& f) {
  std::map<std::int64_t, std::int64_t> c;
  for (const auto& x : f.elements()) ++c[f.element_order(x)];
  return c;
}

inline std::map<Rational, std::int64_t> value_census(const k3real::FiniteQuadraticForm& f) {
  std::map<Rational, std::int64_t> c;
  for (const auto& x : f.elements()) ++c[f.value(x)];
  return c;
}

// Gauss sum in floating point; the argument is rounded to a multiple of pi/4.
inline int float_gauss_signature(const k3real::FiniteQuadraticForm& f) {
  std::complex<double> sum = 0;
  for (const auto& x : f.elements()) {
    const Rational q = f.value(x);
    const double v = boost::multiprecision::numerator(q).convert_to<double>() /
                     boost::multiprecision::denominator(q).convert_to<double>();
    sum += std::polar(1.0, M_PI * v);
  }
  const double k = std::arg(sum) / (M_PI / 4);
  return static_cast<int>(((std::lround(k) % 8) + 8) % 8);
}

// Gluing by enumeration of A + B: returns (order, value census) of graph-perp / graph.
inline std::pair<std::int64_t, std::map<Rational, std::int64_t>> glue_census(
    const k3real::FiniteQuadraticForm& a, const k3real::FiniteQuadraticForm& b,
    const k3real::SubgroupAntiIsometry& g) {
  using k3real::Element;
  auto sum_value = [&](const Element& x, const Element& y) { return a.value(x) + b.value(y); };
  auto sum_pair = [&](const Element& x, const Element& y, const Element& u, const Element& v) {
    return k3real::reduce_mod(a.pairing(x, u) + b.pairing(y, v), 1);
  };
  // Graph elements: all combinations of generator pairs.
  std::set<std::pair<Element, Element>> graph{{a.zero(), b.zero()}};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [x, y] : std::set<std::pair<Element, Element>>(graph))
      for (std::size_t k = 0; k < g.domain_generators.size(); ++k) {
        auto e = std::make_pair(a.add(x, a.reduce(g.domain_generators[k])), b.add(y, b.reduce(g.image_generators[k])));
        grew |= graph.insert(e).second;
      }
  }
  std::vector<std::pair<Element, Element>> perp;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) {
      bool ok = true;
      for (const auto& [u, v] : graph)
        if (sum_pair(x, y, u, v) != 0) {
          ok = false;
          break;
        }
      if (ok) perp.emplace_back(x, y);
    }
  const std::int64_t order = static_cast<std::int64_t>(perp.size() / graph.size());
  // Each coset of the graph contributes graph.size() equal values.
  std::map<Rational, std::int64_t> values;
  for (const auto& [x, y] : perp) ++values[k3real::reduce_mod(sum_value(x, y), 2)];
  for (auto& [q, n] : values) n /= static_cast<std::int64_t>(graph.size());
  return {order, values};
}

// Every scheme with at most n ovals and at most `levels` nesting levels, built
// by repeatedly inserting one oval; returned as canonical unicode texts.
inline std::set<std::string> grown_schemes(std::size_t n, std::size_t levels) {
  using k3real::Oval;
  std::set<std::string> all{"∅"};
  std::vector<std::vector<Oval>> frontier{{}};
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::vector<Oval>> next;
    std::set<std::string> seen;
    for (const auto& forest : frontier) {
      std::vector<std::vector<Oval>> variants;
      // New root.
      auto with_root = forest;
      with_root.push_back(Oval{});
      variants.push_back(with_root);
      // New child under an existing oval at depth < levels - 1.
      std::function<void(std::vector<Oval>&, std::size_t, const std::function<void()>&)> visit =
          [&](std::vector<Oval>& ovals, std::size_t depth, const std::function<void()>& emit) {
            for (auto& o : ovals) {
              if (depth + 1 < levels) {
                o.children.push_back(Oval{});
                emit();
                o.children.pop_back();
              }
              visit(o.children, depth + 1, emit);
            }
          };
      auto copy = forest;
      visit(copy, 0, [&] { variants.push_back(copy); });
      for (auto& v : variants) {
        const std::string text = k3real::render_viro(k3real::RealScheme(v));
        if (seen.insert(text).second) next.push_back(v);
      }
    }
    all.insert(seen.begin(), seen.end());
    frontier = std::move(next);
  }
  return all;
}

}  // namespace oracle
