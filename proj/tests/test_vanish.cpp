#include <ilab/generate.hpp>
#include <ilab/vanish.hpp>

#include <gtest/gtest.h>

using namespace ilab;

namespace {

const FieldSpec F5 = FieldSpec::prime(5);
const FieldSpec F7 = FieldSpec::prime(7);
const FieldSpec Q = FieldSpec::rational();

template <ExactField K>
Vector<K> v(const FieldSpec& f, std::initializer_list<std::int64_t> xs) {
  Vector<K> out;
  for (auto x : xs) out.push_back(K::from_int(f, x));
  return out;
}

// Independent check by exhaustive search over all coefficient vectors in
// F_p for MonomialBasis(n, D). A line is tested at D+1 distinct parameters,
// which decides vanishing when D < p.
bool brute_exists(const VarietySet<Fp>& ts, std::size_t D) {
  const FieldSpec f = ts.field();
  const MonomialBasis basis(ts.ambient_dim(), D);
  std::vector<std::vector<Vector<Fp>>> samples;
  for (const auto& t : ts.members()) {
    std::vector<Vector<Fp>> pts;
    if (t.dim() == 0) pts.push_back(t.base());
    else
      for (std::size_t s = 0; s <= D; ++s) pts.push_back(t.point_at({Fp(f, static_cast<std::int64_t>(s))}));
    samples.push_back(pts);
  }
  // Precompute monomial values at every sample point.
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& pts : samples)
    for (const auto& x : pts) {
      std::vector<std::uint64_t> r;
      for (const auto& e : basis.monomials()) {
        Fp m(f, 1);
        for (std::size_t i = 0; i < e.size(); ++i) m *= power(x[i], e[i]);
        r.push_back(m.residue());
      }
      rows.push_back(r);
    }
  const std::size_t N = basis.size();
  std::vector<std::uint64_t> c(N, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < N && ++c[i] == f.p) c[i++] = 0;
    if (i == N) return false;  // wrapped around to zero
    bool ok = true;
    for (const auto& r : rows) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < N; ++j) acc = (acc + r[j] * c[j]) % f.p;
      if (acc) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
}

}  // namespace

TEST(ParameterCount, Values) {
  const auto l = AffineObject<Fp>::line(F7, v<Fp>(F7, {0, 0}), v<Fp>(F7, {1, 0}));
  EXPECT_EQ(parameter_count_degree(VarietySet<Fp>(F7, 2, {l})), 1u);  // 3 > 2
  std::vector<AffineObject<Fp>> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(AffineObject<Fp>::point(F7, v<Fp>(F7, {i, i * i})));
  EXPECT_EQ(parameter_count_degree(VarietySet<Fp>(F7, 2, pts)), 2u);  // 6 > 5
  EXPECT_EQ(parameter_count_degree(VarietySet<Fp>(F7, 2)), 0u);
}

TEST(MinVanishing, KnownCases) {
  // Three non-collinear points need a conic, two skew lines in 3-space a quadric.
  const VarietySet<Fp> tri(F7, 2,
                           {AffineObject<Fp>::point(F7, v<Fp>(F7, {0, 0})), AffineObject<Fp>::point(F7, v<Fp>(F7, {1, 0})),
                            AffineObject<Fp>::point(F7, v<Fp>(F7, {0, 1}))});
  EXPECT_EQ(min_vanishing_degree(tri).degree, 2u);
  const VarietySet<Rational> skew(Q, 3,
                                  {AffineObject<Rational>::line(Q, v<Rational>(Q, {0, 0, 0}), v<Rational>(Q, {1, 0, 0})),
                                   AffineObject<Rational>::line(Q, v<Rational>(Q, {0, 0, 1}), v<Rational>(Q, {0, 1, 0}))});
  const auto r = min_vanishing_degree(skew);
  EXPECT_EQ(r.degree, 2u);
  ASSERT_TRUE(r.polynomial);
  for (const auto& t : skew.members()) EXPECT_TRUE(vanishes_on(*r.polynomial, t));
  // Coplanar lines: one plane.
  GeneratorConfig cfg;
  cfg.family = Family::lines_in_flats;
  cfg.flats = 1;
  cfg.lines_per_flat = 6;
  cfg.field = FieldSpec::prime(101);
  EXPECT_EQ(min_vanishing_degree(generate<Fp>(cfg)).degree, 1u);
  // Empty set: any nonzero constant qualifies.
  EXPECT_EQ(min_vanishing_degree(VarietySet<Fp>(F7, 2)).degree, 0u);
}

TEST(MinVanishing, CapLeavesNoPolynomial) {
  const VarietySet<Fp> tri(F7, 2,
                           {AffineObject<Fp>::point(F7, v<Fp>(F7, {0, 0})), AffineObject<Fp>::point(F7, v<Fp>(F7, {1, 0})),
                            AffineObject<Fp>::point(F7, v<Fp>(F7, {0, 1}))});
  EXPECT_FALSE(min_vanishing_degree(tri, 1).polynomial.has_value());
}

TEST(Property, MinVanishingMatchesBruteForce) {
  SplitMix64 rng(100);
  GeneratorConfig cfg;
  cfg.field = F5;
  cfg.ambient_dim = 2;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<AffineObject<Fp>> members;
    const bool lines = rng.below(2) == 0;
    const std::size_t count = 1 + rng.below(lines ? 3 : 6);
    for (std::size_t i = 0; i < count; ++i) members.push_back(detail::random_flat<Fp>(cfg, rng, lines ? 1 : 0));
    const VarietySet<Fp> ts(F5, 2, members);
    const auto r = min_vanishing_degree(ts, 2);
    std::optional<std::size_t> brute;
    for (std::size_t D = 0; D <= 2 && !brute; ++D)
      if (brute_exists(ts, D)) brute = D;
    ASSERT_EQ(r.polynomial.has_value(), brute.has_value()) << "trial " << trial;
    if (brute) {
      EXPECT_EQ(r.degree, *brute);
    }
  }
}

TEST(Property, ParameterCountDegreeAlwaysAdmitsAPolynomial) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    GeneratorConfig cfg;
    cfg.field = FieldSpec::prime(101);
    cfg.ambient_dim = 2 + rng.below(3);
    cfg.count = 1 + rng.below(12);
    cfg.seed = rng();
    const auto t = generate<Fp>(cfg);
    const auto D = parameter_count_degree(t);
    const auto r = vanishing_poly(t, D);
    ASSERT_TRUE(r.polynomial);
    EXPECT_LE(r.polynomial->total_degree(), static_cast<int>(D));
    EXPECT_GE(r.kernel_dim, r.monomial_count - r.constraint_count);
  }
}

TEST(RelativeDegree, KnownCases) {
  const auto line = AffineObject<Fp>::line(F7, v<Fp>(F7, {0, 0, 0}), v<Fp>(F7, {1, 0, 0}));
  const auto plane =
      AffineObject<Fp>::from_parametrization(F7, v<Fp>(F7, {0, 0, 0}), {v<Fp>(F7, {1, 0, 0}), v<Fp>(F7, {0, 1, 0})});
  const VarietySet<Fp> xs(F7, 3, {line});
  const auto r = relative_degree(xs, {plane});
  EXPECT_EQ(r.degree, 1u);
  EXPECT_TRUE(vanishes_on(r.witness, line));
  EXPECT_FALSE(vanishes_on(r.witness, plane));
  // Without flats to avoid it is the plain vanishing degree.
  EXPECT_EQ(relative_degree(xs, {}).degree, min_vanishing_degree(xs).degree);
  // A member containing an avoided flat admits no separation.
  EXPECT_THROW(relative_degree(xs, {AffineObject<Fp>::point(F7, v<Fp>(F7, {3, 0, 0}))}), NoSeparation);
  EXPECT_THROW(relative_degree(xs, {AffineObject<Fp>::point(F5, v<Fp>(F5, {3, 0, 0}))}), InputError);
}

TEST(RelativeDegree, ThreeConcurrentLinesInPlaneAvoidingThePlane) {
  // Three lines through the origin of z = 0: a polynomial of degree 3 can
  // vanish on them without vanishing on the plane; z itself is excluded.
  const auto plane =
      AffineObject<Fp>::from_parametrization(F7, v<Fp>(F7, {0, 0, 0}), {v<Fp>(F7, {1, 0, 0}), v<Fp>(F7, {0, 1, 0})});
  std::vector<AffineObject<Fp>> ls;
  for (int s : {0, 1, 2}) ls.push_back(AffineObject<Fp>::line(F7, v<Fp>(F7, {0, 0, 0}), v<Fp>(F7, {1, s, 0})));
  const VarietySet<Fp> xs(F7, 3, ls);
  const auto r = relative_degree(xs, {plane});
  EXPECT_EQ(r.degree, 3u);
  for (const auto& l : ls) EXPECT_TRUE(vanishes_on(r.witness, l));
  EXPECT_FALSE(vanishes_on(r.witness, plane));
}

TEST(Property, RelativeDegreeWitnessAndMinimality) {
  SplitMix64 rng(55);
  GeneratorConfig cfg;
  cfg.field = FieldSpec::prime(11);
  cfg.ambient_dim = 3;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<AffineObject<Fp>> members;
    const std::size_t count = 1 + rng.below(4);
    for (std::size_t i = 0; i < count; ++i) members.push_back(detail::random_flat<Fp>(cfg, rng, 1));
    const VarietySet<Fp> xs(cfg.field, 3, members);
    std::vector<AffineObject<Fp>> ws;
    const std::size_t nw = 1 + rng.below(3);
    for (std::size_t i = 0; i < nw; ++i) ws.push_back(detail::random_flat<Fp>(cfg, rng, 1 + rng.below(2)));
    std::optional<RelativeDegreeResult<Fp>> found;
    try {
      found = relative_degree(xs, ws);
    } catch (const NoSeparation&) {
      continue;  // a member contains a flat; covered above
    }
    const auto& r = *found;
    for (const auto& x : xs.members()) EXPECT_TRUE(vanishes_on(r.witness, x));
    for (const auto& w : ws) EXPECT_FALSE(vanishes_on(r.witness, w));
    EXPECT_LE(r.witness.total_degree(), static_cast<int>(r.degree));
    // One degree lower, some flat absorbs the whole vanishing space, or no
    // combination survives on all flats. For a single flat the first is exact.
    if (ws.size() == 1 && r.degree > 0) {
      const auto low = vanishing_space(xs, r.degree - 1);
      EXPECT_TRUE(low.kernel.empty() || kernel_contained(low.constraints, flat_restriction_matrix(ws[0], low.basis)));
    }
  }
}
