#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "k3real/arith.hpp"
#include "k3real/finite_form.hpp"

namespace k3real {

// Element of Z[zeta_L] as coefficients of 1, zeta, ..., zeta^(L-1). The
// representation is not unique; compare with is_zero(), which reduces modulo
// the L-th cyclotomic polynomial.
class CyclotomicInteger {
 public:
  explicit CyclotomicInteger(std::int64_t order) : coeffs_(static_cast<std::size_t>(order)) {}

  static CyclotomicInteger zeta_power(std::int64_t order, std::int64_t k) {
    CyclotomicInteger z(order);
    z.coeffs_[static_cast<std::size_t>(mod(k, order))] = 1;
    return z;
  }
  static CyclotomicInteger constant(std::int64_t order, const Integer& c) {
    CyclotomicInteger z(order);
    z.coeffs_[0] = c;
    return z;
  }

  std::int64_t order() const { return static_cast<std::int64_t>(coeffs_.size()); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  void add_zeta_power(std::int64_t k, const Integer& c = 1) {
    coeffs_[static_cast<std::size_t>(mod(k, order()))] += c;
  }

  CyclotomicInteger& operator+=(const CyclotomicInteger& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CyclotomicInteger& operator-=(const CyclotomicInteger& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
  friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }

  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    const std::int64_t n = a.order();
    CyclotomicInteger c(n);
    for (std::int64_t i = 0; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::int64_t j = 0; j < n; ++j)
        if (b.coeffs_[j] != 0) c.coeffs_[static_cast<std::size_t>((i + j) % n)] += a.coeffs_[i] * b.coeffs_[j];
    }
    return c;
  }

  bool is_zero() const;

 private:
  std::vector<Integer> coeffs_;
};

namespace detail {

inline std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Exact division by a monic polynomial; returns the quotient.
inline std::vector<Integer> poly_div_exact(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Integer> q(a.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + db];
    for (std::size_t j = 0; j <= db; ++j) a[k + j] -= q[k] * b[j];
  }
  return q;
}

}  // namespace detail

// Coefficients (ascending) of the n-th cyclotomic polynomial.
inline const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n) {
  static std::mutex guard;
  static std::map<std::int64_t, std::vector<Integer>> cache;
  {
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for all proper divisors d.
  std::vector<Integer> p(static_cast<std::size_t>(n) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d)
    if (n % d == 0) p = detail::poly_div_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(guard);
  return cache.emplace(n, std::move(p)).first->second;
}

inline bool CyclotomicInteger::is_zero() const {
  const auto& phi = cyclotomic_polynomial(order());
  std::vector<Integer> r = coeffs_;
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = r.size(); k-- > deg;) {
    if (r[k] == 0) continue;
    const Integer c = r[k];
    for (std::size_t j = 0; j <= deg; ++j) r[k - deg + j] -= c * phi[j];
  }
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

namespace detail {

inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// sqrt(n) as an element of Z[zeta_L]; L must be divisible by 8 and by every
// odd prime dividing n to an odd power.
inline CyclotomicInteger exact_sqrt(std::int64_t n, std::int64_t L) {
  CyclotomicInteger root = CyclotomicInteger::constant(L, 1);
  const std::int64_t eighth = L / 8;
  for (auto [p, e] : factorize(n)) {
    Integer scale = 1;
    for (int k = 0; k < e / 2; ++k) scale *= p;
    root = root * CyclotomicInteger::constant(L, scale);
    if (e % 2 == 0) continue;
    CyclotomicInteger s(L);
    if (p == 2) {
      // zeta_8 + zeta_8^-1
      s.add_zeta_power(eighth);
      s.add_zeta_power(-eighth);
    } else {
      const std::int64_t step = L / p;
      for (std::int64_t a = 0; a < p; ++a) s.add_zeta_power(step * ((a * a) % p));
      // g_p = sqrt(p) if p = 1 mod 4, i*sqrt(p) otherwise.
      if (p % 4 == 3) s = s * CyclotomicInteger::zeta_power(L, -2 * eighth);
    }
    root = root * s;
  }
  return root;
}

}  // namespace detail

// sigma in [0, 8) with sum_x exp(i pi q(x)) = sqrt|A| exp(2 pi i sigma / 8).
inline int gauss_signature(const FiniteQuadraticForm& f) {
  if (f.generator_count() == 0) return 0;
  if (is_degenerate(f)) throw DomainError("gauss_signature of a degenerate form");
  const std::int64_t size = f.group_order();
  std::int64_t L = std::lcm<std::int64_t>(2 * f.denominator(), 8);
  for (auto [p, e] : detail::factorize(size))
    if (p != 2) L = std::lcm(L, p);

  // exp(i pi v / D) = zeta_{2D}^v
  const std::int64_t step = L / (2 * f.denominator());
  CyclotomicInteger sum(L);
  for (const auto& x : f.elements()) sum.add_zeta_power(step * f.value_numerator(x));

  const CyclotomicInteger root = detail::exact_sqrt(size, L);
  for (int sigma = 0; sigma < 8; ++sigma)
    if ((sum - root * CyclotomicInteger::zeta_power(L, sigma * (L / 8))).is_zero()) return sigma;
  throw DomainError("Gauss sum does not have absolute value sqrt|A|");
}

}  // namespace k3real
