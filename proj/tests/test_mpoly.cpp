#include <ilab/generate.hpp>
#include <ilab/io.hpp>
#include <ilab/mpoly.hpp>

#include <gtest/gtest.h>

using namespace ilab;

namespace {

const FieldSpec F7 = FieldSpec::prime(7);
const FieldSpec Q = FieldSpec::rational();

template <ExactField K>
MultiPoly<K> random_poly(const FieldSpec& f, SplitMix64& rng, std::size_t n, std::size_t deg, std::size_t terms) {
  MultiPoly<K> p(f, n);
  for (std::size_t i = 0; i < terms; ++i) {
    Exponent e(n, 0);
    std::uint32_t budget = static_cast<std::uint32_t>(rng.below(deg + 1));
    for (std::uint32_t k = 0; k < budget; ++k) ++e[rng.below(n)];
    p.add_term(e, random_scalar<K>(f, rng, 9));
  }
  return p;
}

Vector<Fp> fp(std::initializer_list<std::int64_t> xs) {
  Vector<Fp> out;
  for (auto x : xs) out.push_back(Fp(F7, x));
  return out;
}

}  // namespace

TEST(MonomialBasis, SizeIsBinomial) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 0; d <= 6; ++d) EXPECT_EQ(MonomialBasis(n, d).size(), binomial(n + d, d));
}

TEST(MonomialBasis, GrlexOrder) {
  const MonomialBasis b(2, 2);
  const std::vector<Exponent> want{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  EXPECT_EQ(b.monomials(), want);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.index_of(b[i]), std::optional<std::size_t>(i));
  EXPECT_FALSE(b.index_of({3, 0}).has_value());
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424ULL);
  EXPECT_THROW(binomial(200, 100), std::overflow_error);
}

TEST(MultiPoly, ArithmeticAndDegree) {
  const auto x = MultiPoly<Fp>::variable(F7, 2, 0), y = MultiPoly<Fp>::variable(F7, 2, 1);
  const auto one = MultiPoly<Fp>::constant(F7, 2, Fp(F7, 1));
  const auto f = (x + y) * (x - y);
  EXPECT_EQ(f, x * x - y * y);
  EXPECT_EQ(f.total_degree(), 2);
  EXPECT_EQ((f - f).total_degree(), -1);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ(one.total_degree(), 0);
  EXPECT_EQ(f.evaluate(fp({3, 1})), Fp(F7, 8));
  EXPECT_EQ((Fp(F7, 0) * f), MultiPoly<Fp>(F7, 2));
  // 7 x = 0 over F_7
  auto g = MultiPoly<Fp>(F7, 2);
  for (int i = 0; i < 7; ++i) g += x;
  EXPECT_TRUE(g.is_zero());
}

TEST(MultiPoly, RejectsMismatches) {
  const auto x2 = MultiPoly<Fp>::variable(F7, 2, 0);
  const auto x3 = MultiPoly<Fp>::variable(F7, 3, 0);
  const auto y2 = MultiPoly<Fp>::variable(FieldSpec::prime(11), 2, 0);
  EXPECT_THROW(x2 + x3, InputError);
  EXPECT_THROW(x2 * y2, InputError);
  EXPECT_THROW(x2.evaluate(fp({1})), InputError);
  MultiPoly<Fp> p(F7, 2);
  EXPECT_THROW(p.add_term({1}, Fp(F7, 1)), InputError);
}

TEST(Restrict, LineKnownCase) {
  // f = x^2 + y^2 - 1 on the line (t, 1): t^2
  auto f = MultiPoly<Rational>::variable(Q, 2, 0) * MultiPoly<Rational>::variable(Q, 2, 0);
  f += MultiPoly<Rational>::variable(Q, 2, 1) * MultiPoly<Rational>::variable(Q, 2, 1);
  f -= MultiPoly<Rational>::constant(Q, 2, Rational(Q, 1));
  const auto l = AffineObject<Rational>::line(Q, {Rational(Q, 0), Rational(Q, 1)}, {Rational(Q, 1), Rational(Q, 0)});
  const auto u = restrict_to_line_dense(f, l);
  ASSERT_EQ(u.degree(), 2);
  EXPECT_TRUE(u.coeffs()[0].is_zero());
  EXPECT_TRUE(u.coeffs()[1].is_zero());
  EXPECT_EQ(u.coeffs()[2], Rational(Q, 1));
  EXPECT_EQ(count_roots(u), 1u);
}

TEST(VanishesOn, SymbolicNotSampled) {
  // x^7 - x vanishes at every F_7 point but is not the zero polynomial on a
  // line in the symbolic sense.
  auto x = MultiPoly<Fp>::variable(F7, 2, 0);
  auto f = x;
  for (int i = 0; i < 6; ++i) f = f * x;
  f -= x;
  const auto l = AffineObject<Fp>::line(F7, fp({0, 0}), fp({1, 0}));
  for (int t = 0; t < 7; ++t) EXPECT_TRUE(f.evaluate(fp({t, 0})).is_zero());
  EXPECT_FALSE(vanishes_on(f, l));
  // y vanishes on that line.
  EXPECT_TRUE(vanishes_on(MultiPoly<Fp>::variable(F7, 2, 1), l));
}

TEST(VanishesOn, Flats) {
  // z vanishes on the plane z = 0, x does not.
  const auto w = AffineObject<Fp>::from_parametrization(F7, fp({0, 0, 0}), {fp({1, 0, 0}), fp({0, 1, 0})});
  EXPECT_TRUE(vanishes_on(MultiPoly<Fp>::variable(F7, 3, 2), w));
  EXPECT_FALSE(vanishes_on(MultiPoly<Fp>::variable(F7, 3, 0), w));
  EXPECT_THROW(vanishes_on(MultiPoly<Fp>::variable(F7, 2, 0), w), InputError);
}

template <class K>
void restriction_matches_evaluation(const FieldSpec& f, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GeneratorConfig cfg;
  cfg.field = f;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    cfg.ambient_dim = n;
    const auto p = random_poly<K>(f, rng, n, 5, 6);
    const auto l = detail::random_flat<K>(cfg, rng, 1);
    const auto u = restrict_to_line_dense(p, l);
    EXPECT_LE(u.degree(), p.total_degree());
    for (int k = 0; k < 6; ++k) {
      const K t = random_scalar<K>(f, rng, 30);
      EXPECT_EQ(u(t), p.evaluate(l.point_at({t})));
    }
    const auto w = detail::random_flat<K>(cfg, rng, 2);
    const auto r = restrict_to_flat(p, w);
    for (int k = 0; k < 4; ++k) {
      const Vector<K> params{random_scalar<K>(f, rng, 30), random_scalar<K>(f, rng, 30)};
      EXPECT_EQ(r.evaluate(params), p.evaluate(w.point_at(params)));
    }
  }
}

TEST(Property, RestrictionMatchesEvaluationFp) { restriction_matches_evaluation<Fp>(FieldSpec::prime(101), 3); }
TEST(Property, RestrictionMatchesEvaluationQ) { restriction_matches_evaluation<Rational>(Q, 4); }

TEST(Property, ConstraintMatricesAgreeWithVanishesOn) {
  SplitMix64 rng(21);
  GeneratorConfig cfg;
  cfg.field = F7;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + rng.below(2), D = 1 + rng.below(3);
    cfg.ambient_dim = n;
    const MonomialBasis basis(n, D);
    const auto l = detail::random_flat<Fp>(cfg, rng, 1);
    const auto w = detail::random_flat<Fp>(cfg, rng, 2);
    // Half the time take a kernel element so vanishing cases occur.
    auto p = random_poly<Fp>(F7, rng, n, D, 4);
    if (rng.below(2) == 0) {
      const auto ker = kernel_basis(line_vanishing_constraints(l, basis));
      p = from_coefficients(F7, basis, ker[rng.below(ker.size())]);
    }
    const auto c = to_coefficients(p, basis);
    auto zero_image = [](const Matrix<Fp>& m, const Vector<Fp>& v) {
      for (const auto& x : m.apply(v))
        if (!x.is_zero()) return false;
      return true;
    };
    EXPECT_EQ(zero_image(line_vanishing_constraints(l, basis), c), vanishes_on(p, l));
    EXPECT_EQ(zero_image(flat_restriction_matrix(w, basis), c), vanishes_on(p, w));
    const auto pt = AffineObject<Fp>::point(F7, l.base());
    EXPECT_EQ(zero_image(point_vanishing_constraint(pt, basis), c), p.evaluate(l.base()).is_zero());
  }
}

TEST(Property, CoefficientRoundTrip) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_poly<Rational>(Q, rng, 3, 4, 7);
    const MonomialBasis b(3, 4);
    EXPECT_EQ(from_coefficients(Q, b, to_coefficients(p, b)), p);
    EXPECT_EQ(poly_from_json<Rational>(Q, Json::parse(poly_to_json(p).dump())), p);
  }
  MultiPoly<Rational> x5(Q, 3);
  x5.add_term({5, 0, 0}, Rational(Q, 1));
  EXPECT_THROW(to_coefficients(x5, MonomialBasis(3, 4)), InputError);
}

TEST(Json, PolyTermsDescending) {
  auto p = MultiPoly<Fp>::variable(F7, 2, 0) * MultiPoly<Fp>::variable(F7, 2, 0);
  p += MultiPoly<Fp>::constant(F7, 2, Fp(F7, 3));
  const auto j = poly_to_json(p);
  ASSERT_TRUE(j.contains("terms"));
  ASSERT_EQ(j["terms"].size(), 2u);
  EXPECT_EQ(j["terms"][0]["exp"], Json::parse("[2,0]"));
}

TEST(CountRoots, AgreesWithEnumerationOverFp) {
  SplitMix64 rng(31);
  const auto f = FieldSpec::prime(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Fp> c;
    const std::size_t deg = 1 + rng.below(7);
    for (std::size_t i = 0; i <= deg; ++i) c.push_back(random_scalar<Fp>(f, rng));
    const UPoly<Fp> u(c);
    if (u.is_zero()) continue;
    std::size_t brute = 0;
    for (std::int64_t t = 0; t < 13; ++t) brute += u(Fp(f, t)).is_zero() ? 1 : 0;
    EXPECT_EQ(count_roots(u), brute);
  }
}

TEST(CountRoots, RationalProducts) {
  // (t - 1/2)(t + 3)(t - 3)^2 (t^2 + 1): roots 1/2, -3, 3.
  const auto lin = [](std::int64_t a, std::int64_t b) {
    return UPoly<Rational>(std::vector<Rational>{Rational(Q, a), Rational(Q, b)});
  };
  const auto g = lin(-1, 2) * lin(3, 1) * lin(-3, 1) * lin(-3, 1) *
                 UPoly<Rational>(std::vector<Rational>{Rational(Q, 1), Rational(Q, 0), Rational(Q, 1)});
  EXPECT_EQ(count_roots(g), 3u);
  EXPECT_EQ(count_roots(lin(0, 5) * lin(0, 1)), 1u);  // 5t^2, root 0
  EXPECT_THROW(count_roots(UPoly<Rational>()), InputError);
}
