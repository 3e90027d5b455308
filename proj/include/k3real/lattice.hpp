#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3real/arith.hpp"
#include "k3real/finite_form.hpp"
#include "k3real/matrix.hpp"

namespace k3real {

class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(IntMatrix gram, std::string label = {})
      : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_square()) throw DomainError("Gram matrix must be square");
    if (!gram_.is_symmetric()) throw DomainError("Gram matrix must be symmetric");
  }

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const std::string& label() const { return label_; }

  Integer pair(const IntVector& x, const IntVector& y) const { return dot(x, gram_ * y); }
  Integer square(const IntVector& x) const { return pair(x, x); }

  friend bool operator==(const IntLattice& a, const IntLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string label_;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Basis vectors are the columns of `basis`, in ambient coordinates.
class Sublattice {
 public:
  Sublattice(IntLattice ambient, IntMatrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_.rank())
      throw DomainError("sublattice basis has wrong number of coordinates");
    if (matrix_rank(basis_) != basis_.cols())
      throw DomainError("sublattice basis is not linearly independent");
  }

  const IntLattice& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.cols(); }

  // The sublattice with its induced form.
  IntLattice lattice(std::string label = {}) const {
    return IntLattice(basis_.transpose() * ambient_.gram() * basis_, std::move(label));
  }

 private:
  IntLattice ambient_;
  IntMatrix basis_;
};

class LatticeInvolution {
 public:
  LatticeInvolution() = default;
  explicit LatticeInvolution(IntMatrix matrix) : matrix_(std::move(matrix)) {
    if (!matrix_.is_square()) throw DomainError("involution matrix must be square");
  }

  const IntMatrix& matrix() const { return matrix_; }
  IntVector apply(const IntVector& x) const { return matrix_ * x; }

  // Throws unless the matrix squares to the identity and preserves the form.
  void validate(const IntLattice& l) const {
    if (matrix_.rows() != l.rank()) throw DomainError("involution has wrong dimension");
    if (!(matrix_ * matrix_ == IntMatrix::identity(l.rank())))
      throw DomainError("involution does not square to the identity");
    if (!(matrix_.transpose() * l.gram() * matrix_ == l.gram()))
      throw DomainError("involution does not preserve the form");
  }

 private:
  IntMatrix matrix_;
};

inline IntLattice direct_sum(const IntLattice& a, const IntLattice& b) {
  const std::size_t na = a.rank(), nb = b.rank();
  IntMatrix g(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) g(na + i, na + j) = b.gram()(i, j);
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
  return IntLattice(std::move(g), std::move(label));
}

inline IntLattice scaled(const IntLattice& l, const Integer& k) {
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
  return IntLattice(std::move(g));
}

// Negated Cartan matrix of E8, Bourbaki numbering.
inline IntMatrix e8_minus_gram() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) g(a - 1, b - 1) = g(b - 1, a - 1) = 1;
  return g;
}

inline IntLattice make_standard(const std::string& name) {
  if (name == "U") return IntLattice(IntMatrix{{0, 1}, {1, 0}}, "U");
  if (name == "E8_minus") return IntLattice(e8_minus_gram(), "E8(-1)");
  if (name == "A1_minus") return IntLattice(IntMatrix{{-2}}, "A1(-1)");
  if (name == "two") return IntLattice(IntMatrix{{2}}, "<2>");
  if (name == "minus_four") return IntLattice(IntMatrix{{-4}}, "<-4>");
  if (name == "K3") {
    const IntLattice u = make_standard("U"), e8 = make_standard("E8_minus");
    IntLattice k3 = direct_sum(direct_sum(direct_sum(direct_sum(u, u), u), e8), e8);
    return IntLattice(k3.gram(), "K3");
  }
  throw DomainError("unknown standard lattice '" + name + "'");
}

inline Integer determinant(const IntLattice& l) { return determinant(l.gram()); }

inline bool is_even(const IntLattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (mod(l.gram()(i, i), Integer(2)) != 0) return false;
  return true;
}

inline bool is_unimodular(const IntLattice& l) { return abs(determinant(l)) == 1; }

// Inertia indices by symmetric elimination over Q.
inline Signature signature(const IntLattice& l) {
  const std::size_t n = l.rank();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(l.gram()(i, j));
  std::vector<bool> live(n, true);
  Signature sig;
  std::size_t remaining = n;
  auto count = [&](const Rational& x) { (x > 0 ? sig.positive : sig.negative) += 1; };

  while (remaining > 0) {
    std::optional<std::size_t> k;
    for (std::size_t i = 0; i < n && !k; ++i)
      if (live[i] && a[i][i] != 0) k = i;
    if (k) {
      const Rational p = a[*k][*k];
      count(p);
      live[*k] = false;
      --remaining;
      for (std::size_t i = 0; i < n; ++i) {
        if (!live[i] || a[i][*k] == 0) continue;
        const Rational f = a[i][*k] / p;
        for (std::size_t j = 0; j < n; ++j)
          if (live[j]) a[i][j] -= f * a[*k][j];
      }
      continue;
    }
    // All live diagonal entries vanish: pivot on a hyperbolic 2x2 block.
    std::optional<std::pair<std::size_t, std::size_t>> blk;
    for (std::size_t i = 0; i < n && !blk; ++i)
      for (std::size_t j = i + 1; j < n && !blk; ++j)
        if (live[i] && live[j] && a[i][j] != 0) blk = std::make_pair(i, j);
    if (!blk) throw DomainError("signature of a degenerate lattice");
    const auto [p, q] = *blk;
    const Rational c = a[p][q];
    sig.positive += 1;
    sig.negative += 1;
    live[p] = live[q] = false;
    remaining -= 2;
    // Schur complement with M = [[0, c], [c, 0]], M^-1 = [[0, 1/c], [1/c, 0]].
    std::vector<std::vector<Rational>> next = a;
    for (std::size_t i = 0; i < n; ++i) {
      if (!live[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!live[j]) continue;
        next[i][j] -= (a[i][p] * a[q][j] + a[i][q] * a[p][j]) / c;
      }
    }
    a = std::move(next);
  }
  return sig;
}

inline std::vector<Integer> discriminant_group(const IntLattice& l) {
  if (determinant(l) == 0) throw DomainError("discriminant group of a degenerate lattice");
  std::vector<Integer> out;
  for (const auto& d : smith_normal_form(l.gram()).invariant_factors())
    if (d != 1) out.push_back(d);
  return out;
}

struct DiscriminantForm {
  FiniteQuadraticForm form;
  // Generator i as a dual vector: numerators[i] / orders[i], ambient coordinates.
  std::vector<IntVector> numerators;
};

inline DiscriminantForm discriminant_form_with_generators(const IntLattice& l) {
  if (!is_even(l)) throw DomainError("discriminant form of an odd lattice");
  if (determinant(l) == 0) throw DomainError("discriminant form of a degenerate lattice");
  const SmithForm s = smith_normal_form(l.gram());
  std::vector<std::int64_t> orders;
  std::vector<IntVector> vs;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    if (s.d(i, i) == 1) continue;
    orders.push_back(to_int64(s.d(i, i)));
    vs.push_back(s.v.column(i));
  }
  const std::size_t n = orders.size();
  std::vector<Rational> q(n);
  std::vector<std::vector<Rational>> b(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = reduce_mod(Rational(l.square(vs[i]), Integer(orders[i]) * orders[i]), 2);
    for (std::size_t j = 0; j < n; ++j)
      b[i][j] = reduce_mod(Rational(l.pair(vs[i], vs[j]), Integer(orders[i]) * orders[j]), 1);
  }
  return {FiniteQuadraticForm(std::move(orders), q, b), std::move(vs)};
}

inline FiniteQuadraticForm discriminant_form(const IntLattice& l) {
  return discriminant_form_with_generators(l).form;
}

inline Sublattice orthogonal_complement(const IntLattice& l, const Sublattice& s) {
  const IntMatrix pairing = s.basis().transpose() * l.gram();
  return Sublattice(l, integer_kernel(pairing));
}

inline bool is_primitive_sublattice(const IntLattice& l, const Sublattice& s) {
  (void)l;
  const SmithForm snf = smith_normal_form(s.basis());
  if (snf.rank() != s.rank()) return false;
  for (const auto& d : snf.invariant_factors())
    if (d != 1) return false;
  return true;
}

inline Sublattice fixed_sublattice(const IntLattice& l, const LatticeInvolution& phi, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("fixed_sublattice sign must be +1 or -1");
  phi.validate(l);
  IntMatrix m = phi.matrix();
  for (std::size_t i = 0; i < l.rank(); ++i) m(i, i) -= sign;
  return Sublattice(l, integer_kernel(m));
}

// alpha with alpha.phi(x) = x.phi(x) mod 2 for all x, entries in {0, 1}.
inline IntVector twisted_characteristic_vector(const IntLattice& l, const LatticeInvolution& phi) {
  phi.validate(l);
  if (!is_unimodular(l)) throw DomainError("twisted characteristic vector needs a unimodular lattice");
  const IntMatrix gphi = l.gram() * phi.matrix();
  IntVector diag(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) diag[i] = gphi(i, i);
  const auto sol = solve_mod2(gphi.transpose(), diag);
  if (!sol) throw DomainError("twisted form has no characteristic vector");
  IntVector alpha(l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) alpha[i] = sol->x[i];
  return alpha;
}

}  // namespace k3real
