#include "oracles.hpp"
#include "random.hpp"

#include <gtest/gtest.h>

using namespace sftdim;
using testing_support::Generator;

namespace {

IntMatrix row(std::initializer_list<long> v) {
  std::vector<Integer> e(v.begin(), v.end());
  return IntMatrix::row_vector(e);
}
IntMatrix col(std::initializer_list<long> v) {
  std::vector<Integer> e(v.begin(), v.end());
  return IntMatrix::column_vector(e);
}

// Element equal to `e` built by adding something the connecting map kills.
template <Flavor F>
LimitElement<F> perturb_in_kernel(const LimitElement<F>& e, Generator& gen) {
  const Ambient& amb = e.ambient();
  const IntMatrix& al = amb.power(amb.l());
  IntMatrix payload = e.payload();
  if constexpr (F == Flavor::stable) {
    for (const auto& v : integer_kernel(al.transposed())) payload += Integer(gen.uniform(-2, 2)) * v.transposed();
  } else if constexpr (F == Flavor::unstable) {
    for (const auto& v : integer_kernel(al)) payload += Integer(gen.uniform(-2, 2)) * v;
  } else {
    for (const auto& v : integer_kernel(al)) {
      IntMatrix y = gen.matrix(1, amb.size(), 2);
      payload += v * y;
    }
  }
  return LimitElement<F>(e.ambient_ptr(), payload, e.level());
}

template <Flavor F>
void check_against_oracle(std::uint64_t seed, int trials) {
  Generator gen(seed);
  for (int t = 0; t < trials; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    auto make = [&] {
      if constexpr (F == Flavor::stable) return gen.stable(amb);
      else if constexpr (F == Flavor::unstable) return gen.unstable(amb);
      else return gen.homoclinic(amb);
    };
    const auto a = make();
    LimitElement<F> b = make();
    switch (t % 3) {
      case 0: b = raise(a, a.level() + static_cast<std::size_t>(gen.uniform(0, 3))); break;
      case 1: b = perturb_in_kernel(raise(a, a.level() + 1), gen); break;
      default: break;
    }
    ASSERT_EQ(equal(a, b), oracle::equal_by_search(a, b)) << amb->matrix();
    ASSERT_EQ(equal(b, a), equal(a, b));
  }
}

}  // namespace

TEST(Equality, FullTwoShiftStable) {
  auto amb = Ambient::make(IntMatrix{{2}});
  EXPECT_TRUE(equal(StableElement(amb, row({1}), 1), StableElement(amb, row({2}), 2)));
  EXPECT_FALSE(equal(StableElement(amb, row({1}), 1), StableElement(amb, row({1}), 2)));
}

TEST(Equality, DefiningRelations) {
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  const IntMatrix& a = amb->matrix();
  EXPECT_TRUE(equal(StableElement(amb, row({1, 0}), 0), StableElement(amb, row({1, 0}) * a, 1)));
  EXPECT_TRUE(equal(UnstableElement(amb, col({1, 2}), 0), UnstableElement(amb, a * col({1, 2}), 1)));
  const IntMatrix x{{1, 2}, {3, 4}};
  EXPECT_TRUE(equal(HomoclinicElement(amb, x, 2), HomoclinicElement(amb, a * x * a, 3)));
  EXPECT_FALSE(equal(StableElement(amb, row({1, 0}), 0), StableElement(amb, row({0, 1}), 0)));
}

TEST(Equality, NilpotentPartIsForgotten) {
  // [[1,1],[1,1]]: (1,-1) is killed by A, so [(1,-1), 0] = 0.
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 1}});
  EXPECT_TRUE(is_zero(StableElement(amb, row({1, -1}), 0)));
  EXPECT_TRUE(equal(StableElement(amb, row({3, 1}), 0), StableElement(amb, row({2, 2}), 0)));
}

TEST(Equality, StableAgreesWithOracle) { check_against_oracle<Flavor::stable>(31, 300); }
TEST(Equality, UnstableAgreesWithOracle) { check_against_oracle<Flavor::unstable>(32, 300); }
TEST(Equality, HomoclinicAgreesWithOracle) { check_against_oracle<Flavor::homoclinic>(33, 300); }

TEST(Group, AdditionIsWellDefined) {
  Generator gen(34);
  for (int t = 0; t < 100; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 3 == 0));
    const auto a = gen.stable(amb), b = gen.stable(amb);
    const auto a2 = raise(a, a.level() + 2);
    ASSERT_TRUE(equal(a + b, a2 + b));
    ASSERT_TRUE(is_zero(a - a2));
    ASSERT_TRUE(equal(Integer(3) * a, a + a + a));
  }
}

TEST(Group, AmbientMismatchIsRejected) {
  auto a = Ambient::make(IntMatrix{{2}});
  auto b = Ambient::make(IntMatrix{{3}});
  try {
    (void)(StableElement(a, row({1}), 0) + StableElement(b, row({1}), 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ambient_mismatch);
  }
  EXPECT_THROW(StableElement(a, row({1, 2}), 0), Error);
}

TEST(Alpha, FullTwoShift) {
  auto amb = Ambient::make(IntMatrix{{2}});
  const StableElement s(amb, row({1}), 0);
  EXPECT_TRUE(equal(alpha(s), Integer(2) * s));
  const UnstableElement u(amb, col({1}), 0);
  // alpha_u divides by 2: twice alpha_u[1,0] is [1,0].
  EXPECT_TRUE(equal(Integer(2) * alpha(u), u));
  const HomoclinicElement h(amb, IntMatrix{{3}}, 1);
  EXPECT_TRUE(equal(alpha(h), h));
}

TEST(Alpha, InverseLaws) {
  Generator gen(35);
  for (int t = 0; t < 100; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    const auto s = gen.stable(amb);
    const auto u = gen.unstable(amb);
    const auto h = gen.homoclinic(amb);
    ASSERT_TRUE(equal(alpha(alpha_inv(s)), s));
    ASSERT_TRUE(equal(alpha_inv(alpha(s)), s));
    ASSERT_TRUE(equal(alpha(alpha_inv(u)), u));
    ASSERT_TRUE(equal(alpha_inv(alpha(u)), u));
    ASSERT_TRUE(equal(alpha(alpha_inv(h)), h));
    ASSERT_TRUE(equal(alpha_inv(alpha(h)), h));
  }
}

TEST(Normalize, PreservesTheClass) {
  Generator gen(36);
  for (int t = 0; t < 100; ++t) {
    auto amb = Ambient::make(gen.irreducible(1, 4, 3, t % 2 == 0));
    const auto s = gen.stable(amb);
    const auto u = gen.unstable(amb);
    ASSERT_TRUE(equal(normalize(s), s));
    ASSERT_TRUE(equal(normalize(u), u));
    ASSERT_LE(normalize(s).level(), s.level() + amb->l());
  }
  auto amb = Ambient::make(IntMatrix{{2}});
  const auto n = normalize(StableElement(amb, row({4}), 3));
  EXPECT_EQ(n.payload(), row({1}));
  EXPECT_EQ(n.level(), 1u);
}

TEST(Positivity, Verdicts) {
  auto amb = Ambient::make(IntMatrix{{1, 1}, {1, 0}});
  EXPECT_EQ(is_positive(StableElement(amb, row({1, 0}), 0)).verdict, Positivity::positive);
  EXPECT_EQ(is_positive(StableElement(amb, row({-1, 0}), 0)).verdict, Positivity::negative_or_mixed);
  EXPECT_EQ(is_positive(StableElement(amb, row({0, 0}), 4)).verdict, Positivity::zero);
  // (2, -1) A^j becomes positive after a few steps.
  const auto r = is_positive(StableElement(amb, row({2, -1}), 0));
  EXPECT_EQ(r.verdict, Positivity::positive);
  EXPECT_GT(r.steps, 0u);
  EXPECT_THROW(is_positive(StableElement(Ambient::make(IntMatrix{{0, 1}, {1, 0}}), row({1, 0}), 0)),
               Error);
}

TEST(Positivity, BoundaryIsUndecided) {
  // A = [[1,1],[1,1]]: (1,-1) pairs to 0 with u_r but is the zero class.
  // With A = [[2,1],[1,2]], (1,-1) is an eigenvector for 1 and never positive.
  auto amb = Ambient::make(IntMatrix{{2, 1}, {1, 2}});
  PositivityOptions o;
  o.j_max = 10;
  const auto r = is_positive(StableElement(amb, row({1, -1}), 0), o);
  EXPECT_EQ(r.verdict, Positivity::undecided);
  EXPECT_EQ(r.steps, 10u);
}
