#include "oracles.hpp"
#include "random.hpp"

#include <gtest/gtest.h>

using namespace sftdim;
using testing_support::Generator;

namespace {

const IntMatrix kJPlusI{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
const IntMatrix kX1{{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}};
const IntMatrix kX2{{0, 1, -1}, {0, -1, 1}, {0, 0, 0}};
const IntMatrix kX3{{0, 0, 0}, {1, -1, 0}, {-1, 1, 0}};
const IntMatrix kX4{{0, 0, 0}, {0, 1, -1}, {0, -1, 1}};

bool same_lattice(const std::vector<IntMatrix>& a, const std::vector<IntMatrix>& b, std::size_t n) {
  return lattice_contains(matrices_as_columns(a, n), matrices_as_columns(b, n)) &&
         lattice_contains(matrices_as_columns(b, n), matrices_as_columns(a, n));
}

}  // namespace

TEST(Centralizer, JPlusIMatchesListedGenerators) {
  const CentralizerLattice c = centralizer_basis(kJPlusI);
  EXPECT_EQ(c.rank(), 5u);
  for (const auto& x : c.basis) EXPECT_EQ(kJPlusI * x, x * kJPlusI);
  EXPECT_TRUE(same_lattice(c.basis, {kX1, kX2, kX3, kX4, IntMatrix::identity(3)}, 9));
}

TEST(Centralizer, SmallCases) {
  EXPECT_EQ(centralizer_basis(IntMatrix{{5}}).basis, (std::vector<IntMatrix>{IntMatrix{{1}}}));
  const IntMatrix g{{1, 1}, {1, 0}};
  EXPECT_TRUE(same_lattice(centralizer_basis(g).basis, {IntMatrix::identity(2), g}, 4));
}

TEST(Centralizer, SaturatedOnRandomMatrices) {
  Generator gen(41);
  for (int t = 0; t < 60; ++t) {
    const IntMatrix a = gen.irreducible(1, 4, 3, t % 2 == 0);
    const CentralizerLattice c = centralizer_basis(a);
    ASSERT_EQ(c.rank(), a.size() - rational_rank(commutator_operator(a)));
    // Polynomials in A commute with A, so they are integer combinations.
    for (std::size_t p = 0; p < 3; ++p) {
      IntMatrix x(a.rows(), a.cols());
      for (std::size_t i = 0; i < 3; ++i) x += Integer(gen.uniform(-2, 2)) * pow(a, i);
      ASSERT_TRUE(solve_integer_linear(matrices_as_columns(c.basis, a.size()), vec(x)).has_value());
    }
  }
}

TEST(Commutator, QuotientStructure) {
  EXPECT_EQ(k1_group_structure(IntMatrix{{4}}).free_rank, 1u);
  const QuotientStructure g = k1_group_structure(IntMatrix{{1, 1}, {1, 0}});
  EXPECT_EQ(g.free_rank, 2u);
  EXPECT_TRUE(g.torsion.empty());
  const QuotientStructure p = k1_group_structure(kJPlusI);
  EXPECT_EQ(p.free_rank, 5u);
  EXPECT_TRUE(p.torsion.empty());
  // Frozen from sympy: SNF diag(2,2,0,0) and diag(1,1,1,1,4,4,0,0,0).
  EXPECT_EQ(k1_group_structure(IntMatrix{{1, 2}, {2, 1}}).torsion, (std::vector<Integer>{2, 2}));
  EXPECT_EQ(k1_group_structure(IntMatrix{{0, 1, 5}, {1, 0, 1}, {1, 1, 0}}).torsion,
            (std::vector<Integer>{4, 4}));
}

TEST(Commutator, WitnessesReproduceBasis) {
  Generator gen(42);
  for (int t = 0; t < 30; ++t) {
    const IntMatrix a = gen.irreducible(1, 4, 3);
    const CommutatorLattice b = commutator_lattice(a);
    for (std::size_t i = 0; i < b.rank(); ++i)
      ASSERT_EQ(b.basis[i], a * b.witnesses[i] - b.witnesses[i] * a);
    ASSERT_EQ(b.rank(), rational_rank(commutator_operator(a)));
  }
}

TEST(K0, ConstructionChecksCommutation) {
  auto amb = Ambient::make(IntMatrix{{1, 2}, {2, 1}});
  EXPECT_NO_THROW(CylinderK0Element(amb, IntMatrix{{0, 1}, {1, 0}}, 0));
  try {
    CylinderK0Element(amb, IntMatrix{{1, 0}, {0, 0}}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_in_centralizer);
  }
}

TEST(K0, EqualityExamples) {
  auto amb = Ambient::make(IntMatrix{{1, 2}, {2, 1}});
  EXPECT_TRUE(k0_equal(k0_identity(amb), CylinderK0Element(amb, amb->power(2), 1)));
  EXPECT_FALSE(k0_equal(CylinderK0Element(amb, IntMatrix{{0, 1}, {1, 0}}, 0),
                        CylinderK0Element::zero(amb)));
}

TEST(K0, ProductsAndInverse) {
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  EXPECT_TRUE(k0_equal(mul_00(k0_generator(amb), k0_generator_inverse(amb)), k0_identity(amb)));
  Generator gen(43);
  for (int t = 0; t < 100; ++t) {
    auto a = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    const auto x = gen.cylinder(a), y = gen.cylinder(a), z = gen.cylinder(a);
    ASSERT_TRUE(k0_equal(mul_00(k0_identity(a), x), x));
    ASSERT_TRUE(k0_equal(mul_00(x, k0_identity(a)), x));
    ASSERT_TRUE(k0_equal(mul_00(mul_00(x, y), z), mul_00(x, mul_00(y, z))));
    ASSERT_TRUE(k0_equal(mul_00(x, y + z), mul_00(x, y) + mul_00(x, z)));
    // Respects equality of representatives.
    const CylinderK0Element x2(a, a->matrix() * x.payload() * a->matrix(), x.level() + 1);
    ASSERT_TRUE(k0_equal(mul_00(x2, y), mul_00(x, y)));
  }
}

TEST(K0, JPlusIIsNonCommutative) {
  auto amb = Ambient::make(kJPlusI);
  const CylinderK0Element x1(amb, kX1, 0), x3(amb, kX3, 0);
  EXPECT_FALSE(k0_equal(mul_00(x1, x3), mul_00(x3, x1)));
}

TEST(K1, EqualityVerdicts) {
  auto one = Ambient::make(IntMatrix{{3}});
  const auto r = k1_equal(CylinderK1Element(one, IntMatrix{{1}}, 0), CylinderK1Element::zero(one));
  EXPECT_EQ(r.verdict, K1Verdict::not_equal);

  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  const IntMatrix y{{1, 2}, {3, 4}}, z{{0, 1}, {5, -2}};
  const IntMatrix& a = amb->matrix();
  const auto e = k1_equal(CylinderK1Element(amb, y, 1), CylinderK1Element(amb, y + a * z - z * a, 1));
  EXPECT_EQ(e.verdict, K1Verdict::equal);
  EXPECT_EQ(e.exponent, 0u);
}

TEST(K1, AgreesWithSearchOracle) {
  Generator gen(44);
  int equal_cases = 0;
  for (int t = 0; t < 120; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 3, 3, t % 2 == 0));
    const auto a = gen.k1(amb);
    CylinderK1Element b = gen.k1(amb);
    if (t % 2 == 0) {
      const IntMatrix z = gen.matrix(amb->size(), amb->size(), 3);
      const IntMatrix& m = amb->matrix();
      b = CylinderK1Element(amb, a.raised(a.level() + 1).representative() + m * z - z * m, a.level() + 1);
    }
    const auto r = k1_equal(a, b);
    ASSERT_NE(r.verdict, K1Verdict::undecided) << amb->matrix();
    const bool expected = oracle::k1_equal_by_search(a, b);
    ASSERT_EQ(r.verdict == K1Verdict::equal, expected) << amb->matrix();
    equal_cases += expected;
  }
  EXPECT_GT(equal_cases, 30);
}

TEST(K1, ProductsAreWellDefined) {
  Generator gen(45);
  for (int t = 0; t < 60; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 3, 3, t % 2 == 0));
    const auto x = gen.cylinder(amb);
    const auto y = gen.k1(amb), y2 = gen.k1(amb);
    const IntMatrix z = gen.matrix(amb->size(), amb->size(), 3);
    const IntMatrix& m = amb->matrix();
    const CylinderK1Element shifted(amb, y.representative() + m * z - z * m, y.level());
    ASSERT_EQ(k1_equal(mul_01(x, y), mul_01(x, shifted)).verdict, K1Verdict::equal);
    ASSERT_EQ(k1_equal(mul_10(y, x), mul_10(shifted, x)).verdict, K1Verdict::equal);
    ASSERT_EQ(k1_equal(mul_01(k0_identity(amb), y), y).verdict, K1Verdict::equal);
    ASSERT_TRUE(is_zero(mul_11(y, y2)));
  }
}

TEST(K1, OneByOneArithmetic) {
  auto amb = Ambient::make(IntMatrix{{2}});
  const auto r = mul_01(CylinderK0Element(amb, IntMatrix{{3}}, 0), CylinderK1Element(amb, IntMatrix{{5}}, 2));
  EXPECT_EQ(r.representative(), IntMatrix{{15}});
  EXPECT_EQ(r.level(), 2u);
}

TEST(Actions, ModuleLawsAndAlpha) {
  Generator gen(46);
  for (int t = 0; t < 100; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    const auto s = gen.stable(amb);
    const auto u = gen.unstable(amb);
    const auto h1 = gen.cylinder(amb), h2 = gen.cylinder(amb);
    ASSERT_TRUE(equal(act_s(s, k0_identity(amb)), s));
    ASSERT_TRUE(equal(act_s(s, mul_00(h1, h2)), act_s(act_s(s, h1), h2)));
    ASSERT_TRUE(equal(act_u(k0_identity(amb), u), u));
    ASSERT_TRUE(equal(act_u(mul_00(h1, h2), u), act_u(h1, act_u(h2, u))));
    ASSERT_TRUE(equal(act_s(s, k0_generator(amb)), alpha(s)));
    ASSERT_TRUE(equal(act_s(s, k0_generator_inverse(amb)), alpha_inv(s)));
  }
}

TEST(RA, ReduceExamples) {
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  EXPECT_EQ(ra_reduce(amb, Polynomial::monomial(2), 0).polynomial(), (Polynomial{1, 1}));
  EXPECT_TRUE(ra_reduce(amb, amb->minpoly().p, 3).polynomial().is_zero());
  EXPECT_EQ(ra_reduce(amb, Polynomial{4, -2}, 1).polynomial(), (Polynomial{4, -2}));
}

TEST(RA, ReduceIsRemainderModP) {
  Generator gen(47);
  for (int t = 0; t < 80; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    std::vector<Integer> c(static_cast<std::size_t>(gen.uniform(0, 7)));
    for (auto& x : c) x = gen.uniform(-4, 4);
    const Polynomial p(c);
    const std::size_t level = static_cast<std::size_t>(gen.uniform(0, 2));
    const RAElement r = ra_reduce(amb, p, level);
    ASSERT_EQ(r.polynomial(), p.mod_monic(amb->minpoly().p));
    ASSERT_TRUE(k0_equal(r.to_k0(), CylinderK0Element(amb, p.evaluate(amb->matrix()), level)));
  }
}

TEST(RA, MembershipKnownExamples) {
  auto a = Ambient::make(IntMatrix{{1, 2}, {2, 1}});
  const CylinderK0Element half(a, IntMatrix{{0, 1}, {1, 0}}, 0);  // (A - I)/2
  EXPECT_FALSE(ra_membership(half).has_value());

  const IntMatrix b{{0, 1, 5}, {1, 0, 1}, {1, 1, 0}};
  auto bb = Ambient::make(b);
  IntMatrix x = b * b + b;
  for (auto& e : x.entries()) {
    ASSERT_EQ(e % 2, 0);
    e /= 2;
  }
  EXPECT_FALSE(ra_membership(CylinderK0Element(bb, x, 0)).has_value());
}

TEST(RA, MembershipNeedsHigherLevels) {
  // X = (A - 2I)/2 is not in the integer span of I, A, but A^2 X = 10A - 8I.
  auto amb = Ambient::make(IntMatrix{{2, 2}, {2, 4}});
  const CylinderK0Element x(amb, IntMatrix{{0, 1}, {1, 1}}, 0);
  const auto r = ra_membership(x);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->level(), 1u);
  EXPECT_EQ(r->polynomial(), (Polynomial{-8, 10}));
  EXPECT_TRUE(k0_equal(r->to_k0(), x));
}

TEST(RA, MembershipOfPowers) {
  auto amb = Ambient::make(IntMatrix{{1, 1, 2}, {1, 1, 2}, {0, 1, 1}});  // l = 2
  const auto r = ra_membership(CylinderK0Element(amb, amb->power(3), 2));
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(k0_equal(r->to_k0(), CylinderK0Element(amb, amb->power(3), 2)));
}

TEST(RA, MembershipAgreesWithSearchOracle) {
  Generator gen(48);
  int members = 0, non_members = 0;
  for (int t = 0; t < 150; ++t) {
    // Symmetric 2x2 matrices [[a,b],[b,a]] have (A - aI)/b in C(A), often outside R_A.
    const long d = gen.uniform(0, 4), o = gen.uniform(1, 4);
    auto amb = Ambient::make(t % 2 == 0 ? IntMatrix{{d, o}, {o, d}} : gen.irreducible(1, 3, 3, t % 3 == 0));
    if (amb->k() > 2) continue;
    // q(A) divided by the content of its entries, or a random centralizer element.
    IntMatrix x(amb->size(), amb->size());
    for (std::size_t i = 0; i < amb->k(); ++i) x += Integer(gen.uniform(-4, 4)) * amb->power(i);
    Integer content = 0;
    for (const auto& e : x.entries()) content = gcd(content, e);
    if (content > 1 && t % 4 != 0)
      for (auto& e : x.entries()) e /= content;
    else if (t % 4 == 0)
      x = gen.centralizer_matrix(*amb, 2);
    const CylinderK0Element e(amb, x, gen.level(1));
    const auto r = ra_membership(e);
    if (r) {
      ASSERT_TRUE(k0_equal(r->to_k0(), e));
      ++members;
    } else {
      ASSERT_FALSE(oracle::ra_member_by_search(e, 4, 30)) << amb->matrix() << " " << x;
      ++non_members;
    }
  }
  EXPECT_GT(members, 10);
  EXPECT_GT(non_members, 5);
}

TEST(RA, RingOperations) {
  Generator gen(49);
  for (int t = 0; t < 60; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    auto rand_ra = [&] {
      std::vector<Integer> c(amb->k());
      for (auto& x : c) x = gen.uniform(-3, 3);
      return RAElement(amb, Polynomial(c), gen.level(2));
    };
    const RAElement a = rand_ra(), b = rand_ra();
    ASSERT_TRUE(k0_equal(ra_mul(a, b).to_k0(), mul_00(a.to_k0(), b.to_k0())));
    ASSERT_TRUE(k0_equal(ra_add(a, b).to_k0(), a.to_k0() + b.to_k0()));
    ASSERT_EQ(ra_equal(a, b), k0_equal(a.to_k0(), b.to_k0()));
    ASSERT_TRUE(ra_equal(a, ra_reduce(amb, a.polynomial().shifted_up(2), a.level() + 1)));
  }
}

TEST(Center, Examples) {
  auto a = Ambient::make(IntMatrix{{1, 2}, {2, 1}});
  const CentralizerLattice c = center_basis(*a);
  EXPECT_EQ(c.rank(), 2u);
  EXPECT_TRUE(same_lattice(c.basis, a->centralizer().basis, 4));
  // R_A at level 0 is span{I, A}, of index 2 in the center.
  EXPECT_EQ(lattice_index(ra_level_lattice(*a), c.basis), Integer(2));

  EXPECT_EQ(center_basis(*Ambient::make(IntMatrix{{7}})).rank(), 1u);
  EXPECT_LT(center_basis(*Ambient::make(kJPlusI)).rank(), 5u);
}
