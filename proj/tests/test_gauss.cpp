#include <gtest/gtest.h>

#include "k3real/catalog.hpp"
#include "k3real/gauss.hpp"
#include "oracles.hpp"

using namespace k3real;

TEST(Cyclotomic, RelationsVanish) {
  // 1 + zeta_4^2 = 0 and 1 + zeta_3 + zeta_3^2 = 0.
  CyclotomicInteger a = CyclotomicInteger::constant(4, 1) + CyclotomicInteger::zeta_power(4, 2);
  EXPECT_TRUE(a.is_zero());
  CyclotomicInteger b = CyclotomicInteger::constant(3, 1);
  b.add_zeta_power(1);
  b.add_zeta_power(2);
  EXPECT_TRUE(b.is_zero());
  EXPECT_FALSE(CyclotomicInteger::zeta_power(8, 1).is_zero());
  // (zeta_8 + zeta_8^-1)^2 = 2.
  const CyclotomicInteger s = CyclotomicInteger::zeta_power(8, 1) + CyclotomicInteger::zeta_power(8, 7);
  EXPECT_TRUE((s * s - CyclotomicInteger::constant(8, 2)).is_zero());
}

TEST(Cyclotomic, PolynomialDegrees) {
  // deg Phi_n = Euler phi(n).
  const std::pair<std::int64_t, std::size_t> cases[] = {{1, 1}, {2, 1}, {8, 4}, {12, 4}, {15, 8}, {24, 8}, {40, 16}};
  for (const auto& [n, phi] : cases) EXPECT_EQ(cyclotomic_polynomial(n).size(), phi + 1) << n;
}

TEST(GaussSignature, Examples) {
  EXPECT_EQ(gauss_signature(trivial_form()), 0);
  EXPECT_EQ(gauss_signature(discriminant_form(make_standard("A1_minus"))), 7);
  const IntLattice l = direct_sum(make_standard("two"), make_standard("A1_minus"));
  EXPECT_EQ(gauss_signature(discriminant_form(l)), 0);
  EXPECT_EQ(gauss_signature(discriminant_form(IntLattice(IntMatrix{{6}}))), 1);
  EXPECT_EQ(gauss_signature(discriminant_form(IntLattice(IntMatrix{{-6, 0}, {0, -10}}))), 6);
}

TEST(GaussSignature, RejectsDegenerateForms) {
  EXPECT_THROW(gauss_signature(FiniteQuadraticForm::cyclic(2, Rational(1))), DomainError);
}

TEST(GaussSignature, MilgramOnCatalog) {
  const auto lattices = lattice_catalog();
  EXPECT_GT(lattices.size(), 500u);
  for (const auto& l : lattices) {
    ASSERT_LE(l.rank(), 4u);
    ASSERT_LE(abs(determinant(l)), 64);
    const Signature s = signature(l);
    const int expect = static_cast<int>(
        mod(static_cast<std::int64_t>(s.positive) - static_cast<std::int64_t>(s.negative), std::int64_t{8}));
    ASSERT_EQ(gauss_signature(discriminant_form(l)), expect) << l.label();
  }
}

TEST(GaussSignature, AgreesWithFloatingPointSum) {
  for (const auto& l : lattice_catalog()) {
    const FiniteQuadraticForm f = discriminant_form(l);
    ASSERT_EQ(gauss_signature(f), oracle::float_gauss_signature(f)) << l.label();
  }
}

TEST(GaussSignature, AdditiveUnderOrthogonalSum) {
  const auto lattices = lattice_catalog();
  for (std::size_t i = 0; i < lattices.size(); i += 37)
    for (std::size_t j = 0; j < lattices.size(); j += 53) {
      const FiniteQuadraticForm a = discriminant_form(lattices[i]), b = discriminant_form(lattices[j]);
      if (a.group_order() * b.group_order() > 4096) continue;
      ASSERT_EQ(gauss_signature(orthogonal_sum(a, b)), (gauss_signature(a) + gauss_signature(b)) % 8);
    }
}
