#include <gtest/gtest.h>

#include "k3real/catalog.hpp"
#include "k3real/lattice.hpp"
#include "oracles.hpp"

using namespace k3real;

namespace {

IntLattice diag(std::initializer_list<long long> d) {
  std::vector<Integer> v(d.begin(), d.end());
  return IntLattice(IntMatrix::diagonal(v));
}

IntLattice minus_four_power(std::size_t m) {
  IntLattice l = make_standard("minus_four");
  for (std::size_t i = 1; i < m; ++i) l = direct_sum(l, make_standard("minus_four"));
  return l;
}

Sublattice span(const IntLattice& l, std::vector<IntVector> cols) {
  return Sublattice(l, IntMatrix::from_columns(cols, l.rank()));
}

const LatticeInvolution u_swap{IntMatrix{{0, 1}, {1, 0}}};

}  // namespace

TEST(MakeStandard, NamedLattices) {
  EXPECT_EQ(make_standard("U").gram(), (IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(make_standard("minus_four").gram(), (IntMatrix{{-4}}));
  EXPECT_EQ(make_standard("two").gram(), (IntMatrix{{2}}));
  EXPECT_THROW(make_standard("E7"), DomainError);

  const IntLattice e8 = make_standard("E8_minus");
  EXPECT_EQ(e8.rank(), 8u);
  EXPECT_TRUE(is_even(e8));
  EXPECT_EQ(determinant(e8), 1);
  EXPECT_EQ(oracle::leibniz_determinant(e8.gram()), 1);
  EXPECT_EQ(oracle::inertia(e8.gram()), (std::pair<std::size_t, std::size_t>{0, 8}));
}

TEST(MakeStandard, K3Lattice) {
  const IntLattice k3 = make_standard("K3");
  EXPECT_EQ(k3.rank(), 22u);
  EXPECT_TRUE(is_even(k3));
  EXPECT_TRUE(is_unimodular(k3));
  EXPECT_EQ(abs(determinant(k3)), 1);
  EXPECT_EQ(signature(k3), (Signature{3, 19}));
  EXPECT_EQ(oracle::inertia(k3.gram()), (std::pair<std::size_t, std::size_t>{3, 19}));
}

TEST(DirectSum, Examples) {
  EXPECT_EQ(direct_sum(make_standard("two"), make_standard("A1_minus")).gram(), (IntMatrix{{2, 0}, {0, -2}}));
  const IntLattice uu = direct_sum(make_standard("U"), make_standard("U"));
  EXPECT_EQ(uu.rank(), 4u);
  EXPECT_EQ(signature(uu), (Signature{2, 2}));
}

TEST(Signature, ExamplesAndDegenerateInput) {
  EXPECT_EQ(signature(make_standard("two")), (Signature{1, 0}));
  EXPECT_EQ(signature(make_standard("U")), (Signature{1, 1}));
  EXPECT_THROW(signature(IntLattice(IntMatrix{{2, 2}, {2, 2}})), DomainError);
}

TEST(Signature, AgreesWithCharacteristicPolynomialOnCatalog) {
  for (const auto& l : lattice_catalog()) {
    const Signature s = signature(l);
    ASSERT_EQ(oracle::inertia(l.gram()), (std::pair<std::size_t, std::size_t>{s.positive, s.negative})) << l.label();
  }
}

TEST(IsEven, Examples) {
  EXPECT_TRUE(is_even(make_standard("U")));
  EXPECT_FALSE(is_even(IntLattice(IntMatrix{{1}})));
  EXPECT_TRUE(is_even(make_standard("K3")));
}

TEST(DiscriminantGroup, Examples) {
  EXPECT_TRUE(discriminant_group(make_standard("E8_minus")).empty());
  for (std::size_t m = 1; m <= 4; ++m)
    EXPECT_EQ(discriminant_group(minus_four_power(m)), std::vector<Integer>(m, 4));
  EXPECT_EQ(discriminant_group(diag({2, -2})), (std::vector<Integer>{2, 2}));
  EXPECT_THROW(discriminant_group(IntLattice(IntMatrix{{0}})), DomainError);
}

TEST(DiscriminantGroup, MatchesDualVectorEnumeration) {
  std::size_t checked = 0;
  for (const auto& l : lattice_catalog()) {
    if (l.rank() > 3 || abs(determinant(l)) > 16) continue;
    const auto dual = oracle::dual_quotient(l);
    Integer order = 1;
    for (const auto& d : discriminant_group(l)) order *= d;
    ASSERT_EQ(Integer(dual.size()), order) << l.label();
    ASSERT_EQ(oracle::order_census(dual), oracle::order_census(discriminant_form(l))) << l.label();
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}

TEST(DiscriminantForm, Examples) {
  const FiniteQuadraticForm a1 = discriminant_form(make_standard("A1_minus"));
  ASSERT_EQ(a1.orders(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(a1.q(0), make_rational(3, 2));

  const FiniteQuadraticForm m4 = discriminant_form(make_standard("minus_four"));
  ASSERT_EQ(m4.orders(), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(m4.q(0), make_rational(7, 4));

  EXPECT_EQ(discriminant_form(make_standard("U")).group_order(), 1);
  EXPECT_THROW(discriminant_form(IntLattice(IntMatrix{{1}})), DomainError);
}

TEST(DiscriminantForm, MinusFourPowersHaveQuarterValues) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const FiniteQuadraticForm f = discriminant_form(minus_four_power(m));
    ASSERT_EQ(f.orders(), std::vector<std::int64_t>(m, 4));
    for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(f.q(i), make_rational(-1, 4) + 2);
  }
}

TEST(DiscriminantForm, ValueCensusMatchesDualVectors) {
  for (const auto& l : lattice_catalog()) {
    if (l.rank() > 3 || abs(determinant(l)) > 16) continue;
    const auto dual = oracle::dual_quotient(l);
    ASSERT_EQ(oracle::value_census(dual), oracle::value_census(discriminant_form(l))) << l.label();
  }
}

TEST(DiscriminantForm, PolarizationIdentity) {
  for (const auto& l : lattice_catalog()) {
    const FiniteQuadraticForm f = discriminant_form(l);
    if (f.group_order() > 512) continue;
    for (const auto& x : f.elements())
      for (const auto& y : f.elements())
        ASSERT_EQ(reduce_mod(f.value(f.add(x, y)) - f.value(x) - f.value(y) - 2 * f.pairing(x, y), 2), 0)
            << l.label();
  }
}

TEST(DiscriminantGroup, OrdersMultiplyToDeterminant) {
  for (const auto& l : lattice_catalog()) {
    Integer prod = 1;
    for (const auto& d : discriminant_group(l)) prod *= d;
    ASSERT_EQ(prod, abs(determinant(l))) << l.label();
    const Signature s = signature(l);
    ASSERT_EQ(s.positive + s.negative, l.rank());
  }
}

TEST(OrthogonalComplement, Examples) {
  const IntLattice u = make_standard("U");
  const Sublattice c = orthogonal_complement(u, span(u, {{1, 1}}));
  ASSERT_EQ(c.rank(), 1u);
  const IntVector v = c.basis().column(0);
  EXPECT_EQ(abs(v[0]), 1);
  EXPECT_EQ(v[1], -v[0]);

  EXPECT_EQ(orthogonal_complement(u, Sublattice(u, IntMatrix(2, 0))).rank(), 2u);
}

TEST(OrthogonalComplement, AlwaysPrimitive) {
  const IntLattice k3 = make_standard("K3");
  for (std::size_t i = 0; i + 1 < 22; i += 3) {
    IntVector a(22), b(22);
    a[i] = 2;
    a[i + 1] = 3;
    b[(i + 5) % 22] = 4;
    const Sublattice s = span(k3, {a, b});
    const Sublattice c = orthogonal_complement(k3, s);
    EXPECT_EQ(c.rank(), 20u);
    EXPECT_TRUE(is_primitive_sublattice(k3, c));
  }
}

TEST(IsPrimitive, Examples) {
  const IntLattice u = make_standard("U");
  EXPECT_FALSE(is_primitive_sublattice(u, span(u, {{2, 0}})));
  EXPECT_TRUE(is_primitive_sublattice(u, span(u, {{1, 1}})));
  EXPECT_FALSE(is_primitive_sublattice(u, span(u, {{1, 1}, {1, -1}})));
}

TEST(Sublattice, RejectsDependentColumns) {
  const IntLattice u = make_standard("U");
  EXPECT_THROW(span(u, {{1, 1}, {2, 2}}), DomainError);
}

TEST(FixedSublattice, Examples) {
  const IntLattice u = make_standard("U");
  const Sublattice plus = fixed_sublattice(u, u_swap, 1);
  ASSERT_EQ(plus.rank(), 1u);
  EXPECT_EQ(plus.lattice().gram(), (IntMatrix{{2}}));
  const Sublattice minus = fixed_sublattice(u, u_swap, -1);
  ASSERT_EQ(minus.rank(), 1u);
  EXPECT_EQ(minus.lattice().gram(), (IntMatrix{{-2}}));

  const LatticeInvolution neg(IntMatrix{{-1, 0}, {0, -1}});
  EXPECT_EQ(fixed_sublattice(u, neg, 1).rank(), 0u);
  EXPECT_THROW(fixed_sublattice(u, LatticeInvolution(IntMatrix{{1, 1}, {0, 1}}), 1), DomainError);
}

TEST(FixedSublattice, HyperbolicModel) {
  const ModelCatalog cat = load_model_catalog();
  const MarkedInvolution hm1 = build_model_involution(cat.find("HM1").spec);
  const Sublattice plus = fixed_sublattice(hm1.lattice, hm1.phi, 1);
  EXPECT_EQ(plus.rank(), 10u);
  EXPECT_EQ(signature(plus.lattice()), (Signature{1, 9}));
  EXPECT_EQ(discriminant_group(plus.lattice()), std::vector<Integer>(8, 2));

  const Sublattice s(hm1.lattice, hm1.s_basis());
  EXPECT_EQ(orthogonal_complement(hm1.lattice, s).rank(), 19u);
}

TEST(FixedSublattice, OrthogonalWithComplementaryRanks) {
  const ModelCatalog cat = load_model_catalog();
  for (const auto& model : cat.models) {
    const MarkedInvolution mi = build_model_involution(model.spec);
    const Sublattice p = fixed_sublattice(mi.lattice, mi.phi, 1), m = fixed_sublattice(mi.lattice, mi.phi, -1);
    EXPECT_EQ(p.rank() + m.rank(), 22u) << model.spec.name;
    EXPECT_TRUE((p.basis().transpose() * mi.lattice.gram() * m.basis()).is_zero()) << model.spec.name;
  }
}

TEST(TwistedCharacteristicVector, Examples) {
  const IntLattice e8 = make_standard("E8_minus");
  const IntVector zero_e8 = twisted_characteristic_vector(e8, LatticeInvolution(IntMatrix::identity(8)));
  for (const auto& x : zero_e8) EXPECT_EQ(mod(x, Integer(2)), 0);

  const IntVector a = twisted_characteristic_vector(make_standard("U"), u_swap);
  EXPECT_EQ(mod(a[0], Integer(2)), 1);
  EXPECT_EQ(mod(a[1], Integer(2)), 1);

  const ModelCatalog cat = load_model_catalog();
  const MarkedInvolution hm1 = build_model_involution(cat.find("HM1").spec);
  for (const auto& x : twisted_characteristic_vector(hm1.lattice, hm1.phi)) EXPECT_EQ(mod(x, Integer(2)), 0);

  EXPECT_THROW(twisted_characteristic_vector(make_standard("minus_four"), LatticeInvolution(IntMatrix{{1}})),
               DomainError);
}

TEST(TwistedCharacteristicVector, DefiningCongruenceOnBasis) {
  const ModelCatalog cat = load_model_catalog();
  for (const auto& model : cat.models) {
    const MarkedInvolution mi = build_model_involution(model.spec);
    const IntVector alpha = twisted_characteristic_vector(mi.lattice, mi.phi);
    for (std::size_t i = 0; i < 22; ++i) {
      IntVector x(22);
      x[i] = 1;
      ASSERT_EQ(mod(mi.lattice.pair(x, mi.phi.apply(x)) - mi.lattice.pair(alpha, mi.phi.apply(x)), Integer(2)), 0);
    }
  }
}

TEST(LatticeInvolution, ValidateRejectsNonIsometries) {
  const IntLattice u = make_standard("U");
  EXPECT_NO_THROW(u_swap.validate(u));
  EXPECT_THROW(LatticeInvolution(IntMatrix{{1, 0}, {0, -1}}).validate(u), DomainError);
}
