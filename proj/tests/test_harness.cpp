#include <ilab/experiment.hpp>

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

void expect_report_invariants(const VerificationReport& rep) {
  double sum = 0;
  for (const auto& t : rep.rhs_terms) sum += t.value;
  EXPECT_NEAR(rep.rhs_total, sum, 1e-12 * std::max(1.0, std::abs(sum)));
  if (rep.lhs == 0) {
    EXPECT_EQ(rep.ratio, 0.0);
  } else {
    EXPECT_NEAR(rep.ratio, static_cast<double>(rep.lhs) / sum, 1e-12 * rep.ratio);
  }
  EXPECT_EQ(rep.instance_digest.rfind("sha256:", 0), 0u);
  EXPECT_EQ(rep.instance_digest.size(), 7u + 64u);
}

template <ExactField K>
std::pair<VarietySet<K>, VarietySet<K>> grid_instance(const FieldSpec& f, std::size_t side) {
  GeneratorConfig cfg;
  cfg.family = Family::grid;
  cfg.field = f;
  cfg.ambient_dim = 2;
  cfg.grid_side = side;
  auto s = generate<K>(cfg);
  cfg.grid_lines = true;
  return {s, generate<K>(cfg)};
}

}  // namespace

TEST(ExponentSchedule, AlphaTable) {
  EXPECT_EQ(ExponentSchedule(2).alpha(1), Fraction(1, 1));
  EXPECT_EQ(ExponentSchedule(3).alpha(2), Fraction(3, 5));
  for (std::uint64_t k = 2; k < 8; ++k) {
    const ExponentSchedule s(k);
    EXPECT_EQ(s.alpha(0), Fraction(0, 1));
    EXPECT_EQ(s.alpha(1), Fraction(1, 1));  // k / k
    for (std::uint64_t m = 1; m < 6; ++m) {
      // 1 - alpha(m) = beta(m) - gamma(m), cross-multiplied.
      const auto a = s.alpha(m), b = s.beta(m), g = s.gamma(m);
      EXPECT_EQ(static_cast<__int128>(a.den - a.num) * b.den * g.den,
                static_cast<__int128>(a.den) * (static_cast<__int128>(b.num) * g.den - static_cast<__int128>(g.num) * b.den));
    }
  }
  EXPECT_THROW(ExponentSchedule(1), InputError);
}

TEST(Theorem, ParseRoundTrip) {
  for (Theorem t : {Theorem::i0, Theorem::i1, Theorem::r, Theorem::trivial, Theorem::cii, Theorem::bezout_suite})
    EXPECT_EQ(parse_theorem(to_string(t)), t);
  EXPECT_THROW(parse_theorem("i2"), InputError);
}

TEST(SafeRatio, Cases) {
  EXPECT_EQ(safe_ratio(0, 0.0), 0.0);
  EXPECT_TRUE(std::isinf(safe_ratio(1, 0.0)));
  EXPECT_DOUBLE_EQ(safe_ratio(3, 4.0), 0.75);
}

TEST(VerifyI0, ConcurrentLines) {
  // Common point of 3 concurrent lines in F_7^2: lhs 3, terms 1 (m=1) and 3 (m=2).
  GeneratorConfig cfg;
  cfg.family = Family::concurrent_bundle;
  cfg.field = F7;
  cfg.ambient_dim = 2;
  cfg.count = 3;
  const auto t = generate<Fp>(cfg);
  const auto s = rich_points(t, 2).points;
  ASSERT_EQ(s.size(), 1u);
  for (Oracle o : {Oracle::spanned, Oracle::exhaustive}) {
    const auto rep = verify_i0(s, t, o);
    EXPECT_EQ(rep.lhs, 3u);
    ASSERT_EQ(rep.rhs_terms.size(), 2u);
    EXPECT_NEAR(rep.rhs_terms[0].value, 1.0, 1e-12);
    EXPECT_NEAR(rep.rhs_terms[1].value, 3.0, 1e-12);
    EXPECT_NEAR(rep.ratio, 0.75, 1e-12);
    expect_report_invariants(rep);
  }
}

TEST(VerifyI0, EmptySAndGrid) {
  GeneratorConfig cfg;
  cfg.field = F7;
  cfg.count = 4;
  const auto t = generate<Fp>(cfg);
  const auto rep = verify_i0(VarietySet<Fp>(F7, 3), t, Oracle::spanned);
  EXPECT_EQ(rep.lhs, 0u);
  EXPECT_EQ(rep.ratio, 0.0);

  const auto [s, lines] = grid_instance<Fp>(F5, 3);
  const auto g = verify_i0(s, lines, Oracle::exhaustive);
  EXPECT_EQ(g.lhs, 18u);
  ASSERT_EQ(g.concentration.size(), 2u);
  EXPECT_EQ(g.concentration[0].second, Fraction(1, 1));  // D_1: a line holds one member line
  EXPECT_EQ(g.concentration[1].second, Fraction(6, 1));  // D_2 = deg T
  expect_report_invariants(g);
}

TEST(VerifyI0, TopTermIsDegSRootTimesDegT) {
  // With points S, the m = n term is deg(S)^(1/n)·deg(T), since D_n = deg T.
  SplitMix64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    GeneratorConfig cfg;
    cfg.field = FieldSpec::prime(101);
    cfg.ambient_dim = 2 + rng.below(3);
    cfg.count = 2 + rng.below(15);
    cfg.seed = rng();
    const auto t = generate<Fp>(cfg);
    const auto s = rich_points(t, 2).points;
    const auto rep = verify_i0(s, t, Oracle::spanned);
    const std::size_t n = cfg.ambient_dim;
    ASSERT_EQ(rep.rhs_terms.size(), n);
    EXPECT_EQ(rep.concentration.back().second, Fraction(t.total_degree(), 1));
    const double want = std::pow(static_cast<double>(s.size()), 1.0 / static_cast<double>(n)) *
                        static_cast<double>(t.total_degree());
    EXPECT_NEAR(rep.rhs_terms.back().value, want, 1e-12 * want + 1e-300);
    expect_report_invariants(rep);
  }
}

TEST(VerifyI1, TwoPlanesOfThreeLines) {
  GeneratorConfig cfg;
  cfg.family = Family::lines_in_flats;
  cfg.field = FieldSpec::prime(11);
  cfg.flats = 2;
  cfg.lines_per_flat = 3;
  const auto t = generate<Fp>(cfg);
  const auto rep = verify_i1(t, 2, 2, Oracle::spanned);
  EXPECT_EQ(rep.lhs, 6u);
  ASSERT_EQ(rep.concentration.size(), 2u);
  EXPECT_EQ(rep.concentration[0], std::make_pair(std::size_t{2}, Fraction(3, 1)));
  EXPECT_EQ(rep.concentration[1], std::make_pair(std::size_t{3}, Fraction(6, 1)));
  EXPECT_NEAR(rep.rhs_terms[0].value, 3.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(rep.rhs_terms[1].value, 3.0 * 1.5, 1e-12);
  EXPECT_NEAR(rep.rhs_terms[2].value, 3.0 * std::sqrt(3.0), 1e-12);
  expect_report_invariants(rep);
}

TEST(VerifyI1, TrivialCases) {
  GeneratorConfig cfg;
  cfg.field = F7;
  cfg.count = 3;
  EXPECT_EQ(verify_i1(generate<Fp>(cfg), 4, 2, Oracle::spanned).lhs, 0u);  // r > |T|
  cfg.family = Family::concurrent_bundle;
  cfg.ambient_dim = 2;
  cfg.count = 5;
  EXPECT_EQ(verify_i1(generate<Fp>(cfg), 2, 5, Oracle::spanned).lhs, 1u);
  EXPECT_THROW(verify_i1(generate<Fp>(cfg), 1, 2, Oracle::spanned), InputError);
}

TEST(GreedyKFree, KeptSetIsKFreeAndMaximal) {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 15; ++trial) {
    GeneratorConfig cfg;
    cfg.family = Family::lines_in_flats;
    cfg.field = FieldSpec::prime(7);
    cfg.flats = 2;
    cfg.lines_per_flat = 3 + rng.below(3);
    cfg.seed = rng();
    const auto t = generate<Fp>(cfg);
    // Planes as T and covered points as S make k-freeness bite.
    auto pts = detail::covered_points(t);
    const auto g = generate_detailed<Fp>(cfg);
    const VarietySet<Fp> planes(cfg.field, 3, g.flats);
    const std::size_t k = 2 + rng.below(3);
    const auto kept = greedy_k_free_subset(pts, planes, k);
    EXPECT_TRUE(k_free_check(kept, planes, k).k_free);
    for (const auto& x : pts.members()) {
      if (kept.holds(x)) continue;
      std::vector<AffineObject<Fp>> more = kept.members();
      more.push_back(x);
      EXPECT_FALSE(k_free_check(VarietySet<Fp>(cfg.field, 3, more), planes, k).k_free);
    }
  }
}

TEST(VerifyR, GridOverQ) {
  const auto [s, t] = grid_instance<Rational>(Q, 3);
  const auto rep = verify_r(s, t, 2, Oracle::spanned);
  EXPECT_EQ(rep.lhs, 18u);
  ASSERT_EQ(rep.rhs_terms.size(), 3u);  // m = 0, 1, 2
  EXPECT_EQ(rep.rhs_terms[0].m, 0);
  EXPECT_NEAR(rep.rhs_terms[0].value, 2.0 * 6.0, 1e-12);
  // m = 2, k = 2: a = 2/3, D_2 = 6.
  const double a = 2.0 / 3.0;
  EXPECT_NEAR(rep.rhs_terms[2].value,
              std::pow(2.0, 1 - a) * std::pow(9.0, a) * std::pow(6.0, 1 - a) * std::pow(6.0, 0.5 * a), 1e-9);
  expect_report_invariants(rep);
  EXPECT_EQ(verify_r(VarietySet<Rational>(Q, 2), t, 2, Oracle::spanned).lhs, 0u);
}

TEST(VerifyR, Errors) {
  const auto [s, t] = grid_instance<Fp>(F5, 3);
  EXPECT_THROW(verify_r(s, t, 2, Oracle::spanned), InputError);  // prime field
  const auto [sq, tq] = grid_instance<Rational>(Q, 2);
  EXPECT_THROW(verify_r(sq, tq, 1, Oracle::spanned), InputError);  // k < 2
  EXPECT_THROW(verify_trivial(sq, tq, 1), InputError);
  // Lines against planes: the right codimension but T is not a set of lines.
  const auto plane = AffineObject<Rational>::from_parametrization(
      Q, v<Rational>(Q, {0, 0, 0}), {v<Rational>(Q, {1, 0, 0}), v<Rational>(Q, {0, 1, 0})});
  const auto line = AffineObject<Rational>::line(Q, v<Rational>(Q, {0, 0, 0}), v<Rational>(Q, {1, 0, 0}));
  EXPECT_THROW(verify_r(VarietySet<Rational>(Q, 3, {line}), VarietySet<Rational>(Q, 3, {plane}), 2, Oracle::spanned),
               InputError);
  // Points against planes: wrong codimension.
  const VarietySet<Rational> pts(Q, 3, {AffineObject<Rational>::point(Q, v<Rational>(Q, {0, 0, 0}))});
  EXPECT_THROW(verify_r(pts, VarietySet<Rational>(Q, 3, {plane}), 2, Oracle::spanned), InputError);
  EXPECT_THROW(verify_trivial(pts, VarietySet<Rational>(Q, 3, {plane}), 2), InputError);
}

TEST(VerifyTrivial, HoldsOnGrids) {
  for (std::size_t side = 2; side <= 5; ++side) {
    const auto [s, t] = grid_instance<Rational>(Q, side);
    const auto rep = verify_trivial(s, t, 2);
    EXPECT_EQ(rep.lhs, 2 * side * side);
    EXPECT_LE(static_cast<double>(rep.lhs), rep.rhs_total + 1e-9);
    expect_report_invariants(rep);
  }
}

TEST(CiiSuite, ZeroViolationsAndDeterminism) {
  const auto a = verify_cii_suite(200, 17);
  EXPECT_EQ(a.instances, 200u);
  EXPECT_EQ(a.violations, 0u);
  EXPECT_FALSE(a.first_violation.has_value());
  EXPECT_GT(a.equality_cases, 0u);
  const auto b = verify_cii_suite(200, 17);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  const auto empty = verify_cii_suite(0, 17);
  EXPECT_EQ(empty.instances, 0u);
  EXPECT_EQ(empty.violations, 0u);
}

TEST(CiiSuite, InstancesStayInDistribution) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto inst = cii_instance(3, i);
    EXPECT_LE(inst.s.size(), 30u);
    EXPECT_LE(inst.t.size(), 30u);
    EXPECT_GE(inst.t.size(), 1u);
    EXPECT_LE(inst.f.total_degree(), 4);
    const auto n = inst.t.ambient_dim();
    EXPECT_TRUE(n >= 2 && n <= 4);
    const auto p = inst.t.field().p;
    EXPECT_TRUE(p == 7 || p == 11 || p == 13);
  }
}

TEST(BezoutSuite, ZeroViolations) {
  const auto s = verify_bezout_suite(2000, 5);
  EXPECT_EQ(s.violations, 0u);
  EXPECT_GT(s.contained, 0u);
  EXPECT_LE(s.max_fill, 1.0);
}

TEST(ReportJson, Shape) {
  const auto [s, t] = grid_instance<Fp>(F5, 3);
  const auto j = to_json(verify_i0(s, t, Oracle::spanned));
  for (const char* key : {"theorem", "lhs", "rhs_terms", "rhs_total", "ratio", "params", "concentration",
                          "instance_digest", "notes"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["params"]["field"]["p"], 5);
  EXPECT_EQ(j["concentration"][1]["value"], "6");
  VerificationReport inf;
  inf.lhs = 1;
  inf.ratio = std::numeric_limits<double>::infinity();
  EXPECT_EQ(to_json(inf)["ratio"], "inf");
}

TEST(Digest, SameInputSameDigest) {
  const auto [s, t] = grid_instance<Fp>(F5, 3);
  EXPECT_EQ(verify_i0(s, t, Oracle::spanned).instance_digest, verify_i0(s, t, Oracle::spanned).instance_digest);
  EXPECT_NE(verify_i0(s, t, Oracle::spanned).instance_digest, verify_i0(s, t, Oracle::exhaustive).instance_digest);
}

TEST(Experiment, EmptySweepIsHeaderOnly) {
  const auto r = run_experiment(Json::parse(R"({"seed": 3, "cells": []})"));
  EXPECT_EQ(r.csv, kCsvHeader);
  EXPECT_EQ(r.report_count, 0u);
  EXPECT_EQ(run_experiment(Json::object()).csv, kCsvHeader);
}

TEST(Experiment, LinesInFlatsSweep) {
  const auto cfg = Json::parse(R"({"seed": 1, "cells": [{"family": "lines_in_flats", "fields": [101],
      "ambient_dim": 3, "flats": 2, "sizes": [6, 12, 24, 48], "theorems": ["i1"]}]})");
  const auto r = run_experiment(cfg);
  EXPECT_EQ(r.report_count, 4u);
  EXPECT_EQ(r.errors, 0u);
  EXPECT_EQ(std::count(r.csv.begin(), r.csv.end(), '\n'), 5);
  EXPECT_NE(r.csv.find("lines_in_flats,3,101,48,i1,"), std::string::npos);
  for (const auto& rep : r.reports["reports"]) {
    const auto& j = rep["report"];
    double sum = 0;
    for (const auto& t : j["rhs_terms"]) sum += t["value"].get<double>();
    EXPECT_NEAR(j["rhs_total"].get<double>(), sum, 1e-12 * sum);
    EXPECT_NEAR(j["ratio"].get<double>(), j["lhs"].get<double>() / sum, 1e-12);
  }
}

TEST(Experiment, PerCellErrorsAreRecorded) {
  const auto cfg = Json::parse(R"({"cells": [
      {"family": "direction_cover", "fields": ["Q", 7], "sizes": [0], "theorems": ["i0"]},
      {"family": "generic_lines", "fields": [12], "sizes": [5], "theorems": ["i0"]},
      {"family": "no_such_family", "fields": [7], "sizes": [5], "theorems": ["i0"]},
      {"family": "grid", "fields": ["Q"], "sizes": [3], "theorems": ["r", "bogus"]}]})");
  const auto r = run_experiment(cfg);
  // direction_cover over Q, F_12, unknown family, unknown theorem.
  EXPECT_EQ(r.errors, 4u);
  EXPECT_EQ(r.report_count, 2u);  // direction_cover over F_7 and the grid R report
  EXPECT_NE(r.csv.find("grid,2,Q,3,r,18,"), std::string::npos);
}

TEST(Experiment, ByteIdenticalReruns) {
  const auto cfg = Json::parse(R"({"seed": 9, "cells": [
      {"family": "generic_lines", "fields": [101], "sizes": [10, 20], "theorems": ["i0", "i1"], "repeats": 2},
      {"family": "grid", "fields": ["Q"], "sizes": [3, 4], "theorems": ["i0", "r", "trivial"]}]})");
  const auto a = run_experiment(cfg), b = run_experiment(cfg);
  EXPECT_EQ(a.reports.dump(), b.reports.dump());
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_EQ(a.errors, 0u);
  EXPECT_EQ(a.report_count, 2u * 2u * 2u + 2u * 3u);
}

TEST(Experiment, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(3.0), "3");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}
