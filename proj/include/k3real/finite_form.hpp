#pragma once

// Finite quadratic forms q: A -> Q/2Z on finite abelian groups A given by
// generators of prescribed orders. All group computations are brute force
// over the (small) group; normalization goes through Smith normal form.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "k3real/arith.hpp"
#include "k3real/matrix.hpp"

namespace k3real {

// Coefficients with respect to the generators, reduced modulo their orders.
using Element = std::vector<std::int64_t>;

class FiniteQuadraticForm {
 public:
  // Largest group the brute-force routines will enumerate.
  static constexpr std::int64_t kMaxEnumeratedOrder = std::int64_t{1} << 22;

  FiniteQuadraticForm() = default;

  FiniteQuadraticForm(std::vector<std::int64_t> orders, const std::vector<Rational>& q,
                      const std::vector<std::vector<Rational>>& b)
      : orders_(std::move(orders)) {
    const std::size_t n = orders_.size();
    if (q.size() != n || b.size() != n) throw DomainError("form data sizes do not match orders");
    for (const auto& row : b)
      if (row.size() != n) throw DomainError("pairing matrix must be square");
    for (auto o : orders_)
      if (o < 2) throw DomainError("generator orders must be >= 2");

    Integer lcm = 1;
    auto absorb = [&lcm](const Rational& x) {
      Integer den = boost::multiprecision::denominator(x);
      lcm = lcm / gcd(lcm, den) * den;
    };
    for (const auto& x : q) absorb(x);
    for (const auto& row : b)
      for (const auto& x : row) absorb(x);
    denom_ = to_int64(lcm);

    q_.resize(n);
    b_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      q_[i] = scaled_numerator(q[i], 2);
      for (std::size_t j = 0; j < n; ++j) b_[i * n + j] = scaled_numerator(b[i][j], 1);
    }
    validate();
  }

  // Cyclic group Z/order with generator value q; the pairing is q mod 1.
  static FiniteQuadraticForm cyclic(std::int64_t order, const Rational& q) {
    return FiniteQuadraticForm({order}, {q}, {{reduce_mod(q, 1)}});
  }

  std::size_t generator_count() const { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::int64_t denominator() const { return denom_; }

  std::int64_t group_order() const {
    std::int64_t n = 1;
    for (auto o : orders_) {
      if (n > kMaxEnumeratedOrder / o) throw DomainError("finite group too large to enumerate");
      n *= o;
    }
    return n;
  }

  // Generator value in [0, 2) and generator pairing in [0, 1).
  Rational q(std::size_t i) const { return Rational(Integer(q_[i]), Integer(denom_)); }
  Rational b(std::size_t i, std::size_t j) const {
    return Rational(Integer(b_[i * orders_.size() + j]), Integer(denom_));
  }

  // q(x) as a numerator over denominator(), in [0, 2*denominator()).
  std::int64_t value_numerator(const Element& x) const {
    const std::size_t n = orders_.size();
    const std::int64_t m2 = 2 * denom_;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      s = mod(s + mod(x[i] * x[i], m2) * q_[i], m2);
      for (std::size_t j = i + 1; j < n; ++j)
        if (x[j] != 0) s = mod(s + 2 * mod(x[i] * x[j], denom_) * b_[i * n + j], m2);
    }
    return s;
  }

  // b(x, y) as a numerator over denominator(), in [0, denominator()).
  std::int64_t pairing_numerator(const Element& x, const Element& y) const {
    const std::size_t n = orders_.size();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (y[j] != 0) s = mod(s + mod(x[i] * y[j], denom_) * b_[i * n + j], denom_);
    }
    return s;
  }

  Rational value(const Element& x) const {
    return Rational(Integer(value_numerator(x)), Integer(denom_));
  }
  Rational pairing(const Element& x, const Element& y) const {
    return Rational(Integer(pairing_numerator(x, y)), Integer(denom_));
  }

  Element zero() const { return Element(orders_.size(), 0); }
  Element generator(std::size_t i) const {
    Element e = zero();
    e[i] = 1;
    return e;
  }
  Element reduce(Element x) const {
    if (x.size() != orders_.size()) throw DomainError("element has wrong number of coordinates");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
    return x;
  }
  Element add(const Element& x, const Element& y) const {
    Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(x[i] + y[i], orders_[i]);
    return z;
  }
  Element negate(const Element& x) const { return scale(-1, x); }
  Element scale(std::int64_t k, const Element& x) const {
    Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(mod(k, orders_[i]) * x[i], orders_[i]);
    return z;
  }
  bool is_zero(const Element& x) const {
    return std::all_of(x.begin(), x.end(), [](std::int64_t c) { return c == 0; });
  }
  std::int64_t element_order(const Element& x) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      o = std::lcm(o, orders_[i] / std::gcd(orders_[i], x[i]));
    return o;
  }

  // Mixed-radix index of a reduced element.
  std::int64_t index(const Element& x) const {
    std::int64_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) k = k * orders_[i] + x[i];
    return k;
  }

  // All elements in mixed-radix order (index(elements()[k]) == k).
  std::vector<Element> elements() const {
    const std::int64_t total = group_order();
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(total));
    Element x = zero();
    for (std::int64_t k = 0; k < total; ++k) {
      out.push_back(x);
      for (std::size_t i = x.size(); i-- > 0;) {
        if (++x[i] < orders_[i]) break;
        x[i] = 0;
      }
    }
    return out;
  }

  friend bool operator==(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    if (a.orders_ != b.orders_) return false;
    for (std::size_t i = 0; i < a.orders_.size(); ++i) {
      if (a.q(i) != b.q(i)) return false;
      for (std::size_t j = 0; j < a.orders_.size(); ++j)
        if (a.b(i, j) != b.b(i, j)) return false;
    }
    return true;
  }

 private:
  // x * denom_ reduced into [0, period * denom_).
  std::int64_t scaled_numerator(const Rational& x, std::int64_t period) const {
    Rational scaled = x * Integer(denom_);
    return to_int64(mod(boost::multiprecision::numerator(scaled), Integer(period * denom_)));
  }

  void validate() const {
    const std::size_t n = orders_.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (b_[i * n + j] != b_[j * n + i]) throw DomainError("pairing matrix is not symmetric");
        if (mod(orders_[i] * b_[i * n + j], denom_) != 0)
          throw DomainError("generator order does not annihilate its pairings");
      }
      if (mod(q_[i] - b_[i * n + i], denom_) != 0)
        throw DomainError("q(g) mod 1 differs from b(g, g)");
      // q(order * g) must vanish mod 2.
      if (mod(mod(orders_[i] * orders_[i], 2 * denom_) * q_[i], 2 * denom_) != 0)
        throw DomainError("q is not well defined on a generator of order " +
                          std::to_string(orders_[i]));
    }
  }

  std::vector<std::int64_t> orders_;
  std::int64_t denom_ = 1;
  std::vector<std::int64_t> q_;  // over denom_, mod 2*denom_
  std::vector<std::int64_t> b_;  // over denom_, mod denom_
};

inline FiniteQuadraticForm trivial_form() { return {}; }

inline FiniteQuadraticForm orthogonal_sum(const FiniteQuadraticForm& a,
                                          const FiniteQuadraticForm& b) {
  const std::size_t na = a.generator_count(), nb = b.generator_count();
  std::vector<std::int64_t> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::vector<Rational> q;
  std::vector<std::vector<Rational>> pair(na + nb, std::vector<Rational>(na + nb));
  for (std::size_t i = 0; i < na; ++i) {
    q.push_back(a.q(i));
    for (std::size_t j = 0; j < na; ++j) pair[i][j] = a.b(i, j);
  }
  for (std::size_t i = 0; i < nb; ++i) {
    q.push_back(b.q(i));
    for (std::size_t j = 0; j < nb; ++j) pair[na + i][na + j] = b.b(i, j);
  }
  return FiniteQuadraticForm(std::move(orders), q, pair);
}

// Elements of the subgroup generated by `gens`, in discovery order.
inline std::vector<Element> subgroup_elements(const FiniteQuadraticForm& f,
                                              const std::vector<Element>& gens) {
  std::vector<Element> members{f.zero()};
  std::unordered_set<std::int64_t> seen{f.index(f.zero())};
  for (const auto& g0 : gens) {
    const Element g = f.reduce(g0);
    if (seen.count(f.index(g))) continue;
    // members is a subgroup; extend it by multiples of g.
    const std::size_t base = members.size();
    Element step = g;
    while (!seen.count(f.index(step))) {
      for (std::size_t k = 0; k < base; ++k) {
        Element z = f.add(members[k], step);
        if (seen.insert(f.index(z)).second) members.push_back(std::move(z));
      }
      step = f.add(step, g);
    }
  }
  return members;
}

// A small generating set for the subgroup formed by `members` (which must be
// closed under addition), picked greedily in the given order.
inline std::vector<Element> greedy_generators(const FiniteQuadraticForm& f,
                                              const std::vector<Element>& members) {
  std::vector<Element> gens;
  std::unordered_set<std::int64_t> span{f.index(f.zero())};
  for (const auto& x : members) {
    if (span.count(f.index(x))) continue;
    gens.push_back(x);
    span.clear();
    for (const auto& y : subgroup_elements(f, gens)) span.insert(f.index(y));
  }
  return gens;
}

// Elements orthogonal (pairing 0 mod 1) to every element of `gens`.
inline std::vector<Element> orthogonal_elements(const FiniteQuadraticForm& f,
                                                const std::vector<Element>& gens) {
  std::vector<Element> out;
  for (auto& x : f.elements()) {
    bool ok = std::all_of(gens.begin(), gens.end(),
                          [&](const Element& g) { return f.pairing_numerator(x, g) == 0; });
    if (ok) out.push_back(std::move(x));
  }
  return out;
}

struct Subquotient {
  FiniteQuadraticForm form;
  // Ambient representatives of the generators of `form`.
  std::vector<Element> generators;
};

// The form induced on U/N, where U = <upper> and N = <lower> must satisfy
// N <= U, b(N, U) = 0 and q(N) = 0. Generators follow Smith normal form, so
// the orders are the invariant factors in ascending divisibility.
inline Subquotient subquotient(const FiniteQuadraticForm& f, const std::vector<Element>& upper,
                               const std::vector<Element>& lower) {
  const std::size_t k = f.generator_count();
  const auto u_members = subgroup_elements(f, upper);
  std::unordered_set<std::int64_t> u_index;
  for (const auto& x : u_members) u_index.insert(f.index(x));
  for (const auto& w : lower) {
    const Element wr = f.reduce(w);
    if (!u_index.count(f.index(wr))) throw DomainError("subquotient: N is not contained in U");
    if (f.value_numerator(wr) != 0) throw DomainError("subquotient: N is not isotropic");
    for (const auto& u : upper)
      if (f.pairing_numerator(wr, f.reduce(u)) != 0)
        throw DomainError("subquotient: N is not orthogonal to U");
  }

  const std::size_t s = upper.size(), t = lower.size();
  if (s == 0) return {trivial_form(), {}};
  // Relations: sum c_j u_j + sum d_j w_j + sum e_i n_i g_i = 0.
  IntMatrix rel(k, s + t + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < s; ++j) rel(i, j) = upper[j][i];
    for (std::size_t j = 0; j < t; ++j) rel(i, s + j) = lower[j][i];
    rel(i, s + t + i) = f.orders()[i];
  }
  const IntMatrix kernel = integer_kernel(rel);
  IntMatrix projected(s, kernel.cols());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < kernel.cols(); ++j) projected(i, j) = kernel(i, j);

  const SmithForm snf = smith_normal_form(projected);
  if (snf.rank() != s) throw DomainError("subquotient is not finite");
  const IntMatrix change = inverse_unimodular(snf.u);

  Subquotient out;
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < s; ++i) {
    const Integer d = snf.d(i, i);
    if (d == 1) continue;
    Element g = f.zero();
    for (std::size_t j = 0; j < s; ++j) {
      const std::int64_t c = to_int64(mod(change(j, i), Integer(f.element_order(f.reduce(upper[j])))));
      g = f.add(g, f.scale(c, f.reduce(upper[j])));
    }
    orders.push_back(to_int64(d));
    out.generators.push_back(std::move(g));
  }
  const std::size_t n = orders.size();
  std::vector<Rational> q(n);
  std::vector<std::vector<Rational>> pair(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = f.value(out.generators[i]);
    for (std::size_t j = 0; j < n; ++j) pair[i][j] = f.pairing(out.generators[i], out.generators[j]);
  }
  out.form = FiniteQuadraticForm(std::move(orders), q, pair);
  return out;
}

// The form on the subgroup generated by `gens`, keeping `gens` as generators;
// throws unless the subgroup is the direct product of the cyclic groups <g_i>.
inline FiniteQuadraticForm form_on_independent_generators(const FiniteQuadraticForm& f,
                                                          const std::vector<Element>& gens) {
  std::vector<std::int64_t> orders;
  std::int64_t expected = 1;
  for (const auto& g : gens) {
    orders.push_back(f.element_order(f.reduce(g)));
    expected *= orders.back();
  }
  if (static_cast<std::int64_t>(subgroup_elements(f, gens).size()) != expected)
    throw DomainError("generators are not independent");
  const std::size_t n = gens.size();
  std::vector<Rational> q(n);
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = f.value(f.reduce(gens[i]));
    for (std::size_t j = 0; j < n; ++j) b[i][j] = f.pairing(f.reduce(gens[i]), f.reduce(gens[j]));
  }
  return FiniteQuadraticForm(std::move(orders), q, b);
}

// Re-expresses f on Smith-normal-form generators.
inline FiniteQuadraticForm normalized(const FiniteQuadraticForm& f) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < f.generator_count(); ++i) gens.push_back(f.generator(i));
  return subquotient(f, gens, {}).form;
}

// Restriction of f to the subgroup generated by `gens`.
inline Subquotient restrict_to(const FiniteQuadraticForm& f, const std::vector<Element>& gens) {
  return subquotient(f, gens, {});
}

// Invariant factors (d_1 | d_2 | ..., each > 1) of the underlying group.
inline std::vector<std::int64_t> invariant_factors(const FiniteQuadraticForm& f) {
  std::vector<Integer> orders(f.orders().begin(), f.orders().end());
  std::vector<std::int64_t> out;
  for (const auto& d : smith_normal_form(IntMatrix::diagonal(orders)).invariant_factors())
    if (d != 1) out.push_back(to_int64(d));
  return out;
}

enum class Parity { even, odd };

inline std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct Profile {
  std::size_t length = 0;
  std::int64_t period = 1;
  Parity parity = Parity::even;
  friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile profile(const FiniteQuadraticForm& f) {
  Profile p;
  const auto factors = invariant_factors(f);
  p.length = factors.size();
  for (auto d : factors) p.period = std::lcm(p.period, d);
  for (const auto& x : f.elements())
    if (f.value_numerator(x) % f.denominator() != 0) {
      p.parity = Parity::odd;
      break;
    }
  return p;
}

inline bool is_degenerate(const FiniteQuadraticForm& f) {
  const auto all = f.elements();
  for (std::size_t i = 1; i < all.size(); ++i) {
    bool radical = true;
    for (std::size_t j = 0; j < f.generator_count(); ++j)
      if (f.pairing_numerator(all[i], f.generator(j)) != 0) {
        radical = false;
        break;
      }
    if (radical) return true;
  }
  return false;
}

// An element v with b(v, x) = q(x) mod 1 for all x (the smallest in
// mixed-radix order when it is not unique).
inline Element characteristic_element(const FiniteQuadraticForm& f) {
  const auto all = f.elements();
  const std::int64_t den = f.denominator();
  std::vector<std::int64_t> target(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) target[k] = f.value_numerator(all[k]) % den;
  for (const auto& v : all) {
    bool ok = true;
    for (std::size_t k = 0; k < all.size() && ok; ++k)
      ok = f.pairing_numerator(v, all[k]) == target[k];
    if (ok) return v;
  }
  throw DomainError("form has no characteristic element");
}

// Pairs domain generators in A with image generators in B.
struct SubgroupAntiIsometry {
  std::vector<Element> domain_generators;
  std::vector<Element> image_generators;
};

// Checks that gamma extends to a group isomorphism <domain> -> <image> with
// q_B(gamma x) = -q_A(x); throws DomainError otherwise.
inline void validate_anti_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                   const SubgroupAntiIsometry& gamma) {
  const auto& dom = gamma.domain_generators;
  const auto& img = gamma.image_generators;
  if (dom.size() != img.size())
    throw DomainError("anti-isometry: domain and image generator counts differ");
  std::vector<Element> d, m;
  std::vector<std::int64_t> range;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    d.push_back(a.reduce(dom[k]));
    m.push_back(b.reduce(img[k]));
    range.push_back(a.element_order(d.back()));
  }
  std::unordered_map<std::int64_t, std::int64_t> forward, backward;
  std::vector<std::int64_t> c(dom.size(), 0);
  for (;;) {
    Element x = a.zero(), y = b.zero();
    for (std::size_t k = 0; k < c.size(); ++k) {
      x = a.add(x, a.scale(c[k], d[k]));
      y = b.add(y, b.scale(c[k], m[k]));
    }
    const auto ix = a.index(x), iy = b.index(y);
    auto [fit, fnew] = forward.emplace(ix, iy);
    if (!fnew && fit->second != iy) throw DomainError("anti-isometry: not a homomorphism");
    auto [bit, bnew] = backward.emplace(iy, ix);
    if (!bnew && bit->second != ix) throw DomainError("anti-isometry: not injective");
    if (reduce_mod(b.value(y) + a.value(x), 2) != 0)
      throw DomainError("anti-isometry: q_B(gamma x) != -q_A(x)");
    std::size_t k = 0;
    while (k < c.size() && ++c[k] == range[k]) c[k++] = 0;
    if (k == c.size()) break;
  }
}

// (Gamma)^perp / Gamma inside a (+) b, Gamma the graph of gamma.
inline FiniteQuadraticForm glue(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                const SubgroupAntiIsometry& gamma) {
  validate_anti_isometry(a, b, gamma);
  const FiniteQuadraticForm sum = orthogonal_sum(a, b);
  std::vector<Element> graph;
  for (std::size_t k = 0; k < gamma.domain_generators.size(); ++k) {
    Element g = a.reduce(gamma.domain_generators[k]);
    const Element y = b.reduce(gamma.image_generators[k]);
    g.insert(g.end(), y.begin(), y.end());
    graph.push_back(std::move(g));
  }
  const auto perp = orthogonal_elements(sum, graph);
  return subquotient(sum, greedy_generators(sum, perp), graph).form;
}

namespace detail {

inline std::map<Rational, std::int64_t> value_histogram(const FiniteQuadraticForm& f) {
  std::map<Rational, std::int64_t> h;
  for (const auto& x : f.elements()) ++h[f.value(x)];
  return h;
}

}  // namespace detail

// Brute-force isometry search between two forms.
inline bool is_isomorphic(const FiniteQuadraticForm& a0, const FiniteQuadraticForm& b) {
  if (invariant_factors(a0) != invariant_factors(b)) return false;
  if (detail::value_histogram(a0) != detail::value_histogram(b)) return false;
  const FiniteQuadraticForm a = normalized(a0);
  const std::size_t n = a.generator_count();
  const auto candidates = b.elements();
  std::vector<Element> image(n);

  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) return true;
    const std::int64_t order = a.orders()[i];
    for (const auto& y : candidates) {
      if (b.element_order(y) != order) continue;
      if (a.value(a.generator(i)) != b.value(y)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = a.b(i, j) == b.pairing(y, image[j]);
      if (!ok) continue;
      image[i] = y;
      // Independence: the images so far must generate a group of the right size.
      std::int64_t expected = 1;
      for (std::size_t j = 0; j <= i; ++j) expected *= a.orders()[j];
      std::vector<Element> gens(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(i + 1));
      if (static_cast<std::int64_t>(subgroup_elements(b, gens).size()) != expected) continue;
      if (extend(i + 1)) return true;
    }
    return false;
  };
  return extend(0);
}

// Square class of an odd 2-adic unit u in {1, -1, 5, -5}.
inline int two_adic_unit_square_class(const Rational& u) {
  const Integer num = boost::multiprecision::numerator(u);
  const Integer den = boost::multiprecision::denominator(u);
  if (num % 2 == 0 || den % 2 == 0) throw DomainError("not a 2-adic unit: " + to_string(u));
  // 1/den = den mod 8 for odd den.
  switch (static_cast<int>(mod(Integer(num * den), Integer(8)))) {
    case 1: return 1;
    case 3: return -5;
    case 5: return 5;
    default: return -1;
  }
}

}  // namespace k3real
