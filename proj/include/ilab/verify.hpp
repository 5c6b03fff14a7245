#pragma once

// Verifiers for the incidence bounds. Each returns the exact left-hand side,
// the right-hand side term by term (the unspecified implied constant is taken
// to be 1), and their ratio. No verifier asserts a constant; the alarm
// threshold is applied by callers.
//
// All counts use base-field points only (F_p- or Q-rational). The R bound is a
// statement over the reals; verify_r evaluates the inequality on
// rational-coordinate instances only.

#include <ilab/concentrate.hpp>
#include <ilab/generate.hpp>
#include <ilab/incidence.hpp>
#include <ilab/io.hpp>
#include <ilab/partition.hpp>

#include <cmath>
#include <limits>

namespace ilab {

enum class Theorem { i0, i1, r, trivial, cii, bezout_suite };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::i0: return "i0";
    case Theorem::i1: return "i1";
    case Theorem::r: return "r";
    case Theorem::trivial: return "trivial";
    case Theorem::cii: return "cii";
    case Theorem::bezout_suite: return "bezout_suite";
  }
  return "?";
}

inline Theorem parse_theorem(const std::string& s) {
  for (Theorem t : {Theorem::i0, Theorem::i1, Theorem::r, Theorem::trivial, Theorem::cii, Theorem::bezout_suite})
    if (s == to_string(t)) return t;
  throw InputError("unknown theorem '" + s + "'");
}

inline constexpr double kDefaultAlarmThreshold = 8.0;

struct RhsTerm {
  int m = 0;          // -1 when the term is not indexed by a dimension
  std::string label;
  double value = 0;
};

struct ReportParams {
  std::optional<std::size_t> k, r;
  std::size_t n = 0;
  FieldSpec field;
  std::optional<Oracle> oracle;
};

struct VerificationReport {
  Theorem theorem = Theorem::i0;
  std::uint64_t lhs = 0;
  std::vector<RhsTerm> rhs_terms;
  double rhs_total = 0;
  double ratio = 0;
  ReportParams params;
  std::vector<std::pair<std::size_t, Fraction>> concentration;  // (m, D_m)
  std::string instance_digest;
  std::vector<std::string> notes;

  bool alarm(double threshold = kDefaultAlarmThreshold) const { return ratio > threshold; }
};

/// lhs / rhs, with 0/0 = 0 and x/0 = inf.
inline double safe_ratio(std::uint64_t lhs, double rhs) {
  if (lhs == 0) return 0.0;
  if (rhs <= 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(lhs) / rhs;
}

namespace detail {

inline void finish(VerificationReport& rep) {
  rep.rhs_total = 0;
  for (const auto& t : rep.rhs_terms) rep.rhs_total += t.value;
  rep.ratio = safe_ratio(rep.lhs, rep.rhs_total);
}

template <ExactField K>
std::string digest_of(const std::vector<const VarietySet<K>*>& sets, const ReportParams& p, Theorem th) {
  Json j;
  j["theorem"] = to_string(th);
  Json arr = Json::array();
  for (auto* s : sets) arr.push_back(set_to_json(*s));
  j["sets"] = arr;
  if (p.k) j["k"] = *p.k;
  if (p.r) j["r"] = *p.r;
  if (p.oracle) j["oracle"] = to_string(*p.oracle);
  return instance_digest(j);
}

// D_m(T), or 0 when T is empty.
template <ExactField K>
Fraction conc_value(const VarietySet<K>& t, std::size_t m, Oracle oracle) {
  if (t.empty()) return Fraction(0, 1);
  return concentration(t, m, oracle).value;
}

}  // namespace detail

/// alpha(k,m) = k/(m(k-1)+1) for m >= 1, alpha(k,0) = 0, and the companions
/// beta(k,s) = s(k-1)/(s(k-1)+1), gamma(k,s) = (k-1)/(s(k-1)+1), with
/// 1 - alpha = beta - gamma.
struct ExponentSchedule {
  std::uint64_t k = 2;

  explicit ExponentSchedule(std::uint64_t kk) : k(kk) {
    if (k < 2) throw InputError("freeness parameter k must be >= 2");
  }
  Fraction alpha(std::uint64_t m) const { return m == 0 ? Fraction(0, 1) : Fraction(k, m * (k - 1) + 1); }
  Fraction beta(std::uint64_t s) const { return Fraction(s * (k - 1), s * (k - 1) + 1); }
  Fraction gamma(std::uint64_t s) const { return Fraction(k - 1, s * (k - 1) + 1); }
};

/// I(S,T) against Σ_{1<=m<=n-dim S} deg(S)^{1/m} deg(T)^{1-1/m} D_{m+dim S}(T)^{1/m}.
template <ExactField K>
VerificationReport verify_i0(const VarietySet<K>& s, const VarietySet<K>& t, Oracle oracle) {
  require_codim_one(s, t);
  VerificationReport rep;
  rep.theorem = Theorem::i0;
  rep.params.n = t.ambient_dim();
  rep.params.field = t.field();
  rep.params.oracle = oracle;
  rep.lhs = incidence_degree(s, t).total;
  std::size_t d = 0;
  if (s.member_dim()) d = *s.member_dim();
  else if (t.member_dim()) d = *t.member_dim() - 1;
  const double ds = static_cast<double>(s.total_degree()), dt = static_cast<double>(t.total_degree());
  for (std::size_t m = 1; m + d <= rep.params.n; ++m) {
    const Fraction dm = detail::conc_value(t, m + d, oracle);
    rep.concentration.emplace_back(m + d, dm);
    const double inv = 1.0 / static_cast<double>(m);
    rep.rhs_terms.push_back({static_cast<int>(m), "deg(S)^(1/m) deg(T)^(1-1/m) D_{m+dim S}^(1/m)",
                             std::pow(ds, inv) * std::pow(dt, 1.0 - inv) * std::pow(dm.to_double(), inv)});
  }
  detail::finish(rep);
  rep.instance_digest = detail::digest_of<K>({&s, &t}, rep.params, rep.theorem);
  rep.notes.push_back("implied constant taken as 1; base-field points only");
  return rep;
}

/// Greedy maximal k-free subset: points in canonical order, each kept iff the
/// kept set stays k-free with respect to t.
template <ExactField K>
VarietySet<K> greedy_k_free_subset(const VarietySet<K>& s, const VarietySet<K>& t, std::size_t k) {
  if (k < 2) throw InputError("k-freeness needs k >= 2");
  std::vector<std::vector<std::size_t>> kept_in(t.size());  // kept S-indices inside each member
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<std::size_t> hosts;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (contains(t[j], s[i])) hosts.push_back(j);
    bool ok = true;
    for (std::size_t a = 0; a < hosts.size() && ok; ++a)
      for (std::size_t b = a + 1; b < hosts.size() && ok; ++b) {
        std::vector<std::size_t> shared;
        const auto& x = kept_in[hosts[a]];
        const auto& y = kept_in[hosts[b]];
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(shared));
        ok = shared.size() + 1 < k;
      }
    if (!ok) continue;
    kept.push_back(i);
    for (auto j : hosts) kept_in[j].push_back(i);
  }
  return s.subset(kept);
}

/// deg(S) for a greedy k-free S ⊆ P_r(T), against
/// deg(T)/r · (k^{1/2} + Σ_{1<=m<=n-d} (D_{m+d}(T)/r)^{1/m}).
template <ExactField K>
VerificationReport verify_i1(const VarietySet<K>& t, std::size_t r, std::size_t k, Oracle oracle) {
  if (r < 2) throw InputError("richness r must be >= 2");
  VerificationReport rep;
  rep.theorem = Theorem::i1;
  rep.params.n = t.ambient_dim();
  rep.params.field = t.field();
  rep.params.oracle = oracle;
  rep.params.k = k;
  rep.params.r = r;
  const auto rich = rich_points(t, r);
  const auto s = greedy_k_free_subset(rich.points, t, k);
  rep.lhs = s.total_degree();
  const std::size_t d = t.member_dim().value_or(1);
  const double scale = static_cast<double>(t.total_degree()) / static_cast<double>(r);
  rep.rhs_terms.push_back({0, "deg(T)/r k^(1/2)", scale * std::sqrt(static_cast<double>(k))});
  for (std::size_t m = 1; m + d <= rep.params.n; ++m) {
    const Fraction dm = detail::conc_value(t, m + d, oracle);
    rep.concentration.emplace_back(m + d, dm);
    rep.rhs_terms.push_back({static_cast<int>(m), "deg(T)/r (D_{m+d}/r)^(1/m)",
                             scale * std::pow(dm.to_double() / static_cast<double>(r), 1.0 / static_cast<double>(m))});
  }
  detail::finish(rep);
  rep.instance_digest = detail::digest_of<K>({&t}, rep.params, rep.theorem);
  rep.notes.push_back("S = greedy k-free subset of " + std::to_string(rich.points.size()) + " r-rich points");
  return rep;
}

/// I(S,T) against Σ_{0<=m<=n} k^{1-a} |S|^a deg(T)^{1-a} D_m(T)^{(k-1)a/k},
/// a = alpha(k,m); the m = 0 term is k·deg(T).
template <ExactField K>
VerificationReport verify_r(const VarietySet<K>& s, const VarietySet<K>& t, std::size_t k, Oracle oracle) {
  if (t.field().is_prime_field()) throw InputError("verify_r runs over the rationals only");
  require_codim_one(s, t);
  if (t.member_dim() && *t.member_dim() != 1) throw InputError("verify_r expects T to be a set of lines");
  const ExponentSchedule sched(k);
  if (const auto kf = k_free_check(s, t, k); !kf.k_free) {
    std::string pts;
    for (auto i : kf.witness->shared_points) pts += " " + s[i].to_string();
    throw InputError("S is not " + std::to_string(k) + "-free: points" + pts + " lie on both " +
                     t[kf.witness->t_first].to_string() + " and " + t[kf.witness->t_second].to_string());
  }
  VerificationReport rep;
  rep.theorem = Theorem::r;
  rep.params.n = t.ambient_dim();
  rep.params.field = t.field();
  rep.params.oracle = oracle;
  rep.params.k = k;
  rep.lhs = incidence_degree(s, t).total;
  const double kk = static_cast<double>(k), ss = static_cast<double>(s.size()), dt = static_cast<double>(t.total_degree());
  rep.rhs_terms.push_back({0, "k deg(T)", kk * dt});
  for (std::size_t m = 1; m <= rep.params.n; ++m) {
    const Fraction dm = detail::conc_value(t, m, oracle);
    rep.concentration.emplace_back(m, dm);
    const double a = sched.alpha(m).to_double();
    rep.rhs_terms.push_back({static_cast<int>(m), "k^(1-a) |S|^a deg(T)^(1-a) D_m^((k-1)a/k)",
                             std::pow(kk, 1 - a) * std::pow(ss, a) * std::pow(dt, 1 - a) *
                                 std::pow(dm.to_double(), (kk - 1) / kk * a)});
  }
  detail::finish(rep);
  rep.instance_digest = detail::digest_of<K>({&s, &t}, rep.params, rep.theorem);
  rep.notes.push_back("final inequality only, on rational coordinates standing in for the reals");
  return rep;
}

/// I(S,T) against 2|S||T|^{1-1/k} + (k-1)|T| for k-free S.
template <ExactField K>
VerificationReport verify_trivial(const VarietySet<K>& s, const VarietySet<K>& t, std::size_t k) {
  require_codim_one(s, t);
  if (!k_free_check(s, t, k).k_free) throw InputError("S is not " + std::to_string(k) + "-free with respect to T");
  VerificationReport rep;
  rep.theorem = Theorem::trivial;
  rep.params.n = t.ambient_dim();
  rep.params.field = t.field();
  rep.params.k = k;
  rep.lhs = incidence_degree(s, t).total;
  const double kk = static_cast<double>(k);
  rep.rhs_terms.push_back({-1, "2|S||T|^(1-1/k)",
                           2.0 * static_cast<double>(s.size()) * std::pow(static_cast<double>(t.size()), 1.0 - 1.0 / kk)});
  rep.rhs_terms.push_back({-1, "(k-1)|T|", (kk - 1.0) * static_cast<double>(t.size())});
  detail::finish(rep);
  rep.instance_digest = detail::digest_of<K>({&s, &t}, rep.params, rep.theorem);
  return rep;
}

// ---------------------------------------------------------------------------
// Randomized exactness suites.

struct Reproducer {
  std::uint64_t seed = 0;
  std::size_t index = 0;
};

struct SuiteSummary {
  Theorem theorem = Theorem::cii;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::size_t equality_cases = 0;   // cii: lhs == rhs
  std::size_t contained = 0;        // bezout: line inside Z(f)
  std::uint64_t max_slack = 0;      // cii: largest rhs - lhs
  double max_fill = 0;              // bezout: largest count / deg f
  std::optional<Reproducer> first_violation;
  std::vector<std::string> notes;
};

template <ExactField K>
struct CiiInstance {
  VarietySet<K> s, t;
  MultiPoly<K> f;
};

namespace detail {

// A linear form vanishing on the whole of x (a point or a line).
template <ExactField K>
MultiPoly<K> linear_form_through(const AffineObject<K>& x, SplitMix64& rng) {
  const FieldSpec& f = x.field();
  const std::size_t n = x.ambient_dim();
  // Normal vector: a random element of the kernel of x's directions.
  Matrix<K> dirs(f, 0, n);
  for (const auto& v : x.basis()) dirs.append_row(v);
  const auto ker = kernel_basis(dirs);
  Vector<K> a(n, K::from_int(f, 0));
  while (std::all_of(a.begin(), a.end(), [](const K& c) { return c.is_zero(); }))
    for (const auto& v : ker) {
      const K c = random_scalar<K>(f, rng, 3);
      for (std::size_t i = 0; i < n; ++i) a[i] += c * v[i];
    }
  MultiPoly<K> g(f, n);
  K b = K::from_int(f, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g += a[i] * MultiPoly<K>::variable(f, n, i);
    b += a[i] * x.base()[i];
  }
  return g - MultiPoly<K>::constant(f, n, b);
}

template <ExactField K>
MultiPoly<K> random_dense_poly(const FieldSpec& f, std::size_t n, std::size_t deg, SplitMix64& rng) {
  MultiPoly<K> g(f, n);
  const MonomialBasis basis(n, deg);
  const std::size_t terms = 1 + rng.below(std::min<std::size_t>(basis.size(), 8));
  for (std::size_t i = 0; i < terms; ++i) g.add_term(basis[rng.below(basis.size())], random_scalar<K>(f, rng, 5));
  return g;
}

}  // namespace detail

/// Instance `index` of the CII suite. Distribution: n in {2,3,4}, p in
/// {7,11,13}, 1..30 random lines, up to 30 points (pairwise intersections,
/// points placed on lines, free points), and f either a product of up to 4
/// linear forms (some through members of S or T) or a random sparse
/// polynomial of degree <= 4.
inline CiiInstance<Fp> cii_instance(std::uint64_t seed, std::size_t index) {
  SplitMix64 rng = SplitMix64(seed).fork(index + 1);
  static constexpr std::size_t dims[] = {2, 3, 4};
  static constexpr std::uint64_t primes[] = {7, 11, 13};
  const std::size_t n = dims[rng.below(3)];
  const FieldSpec field = FieldSpec::prime(primes[rng.below(3)]);
  GeneratorConfig cfg;
  cfg.field = field;
  cfg.ambient_dim = n;
  cfg.seed = rng();
  cfg.count = 1 + rng.below(30);
  const auto t = generate<Fp>(cfg);

  std::vector<AffineObject<Fp>> pts;
  for (std::size_t i = 0; i < t.size() && pts.size() < 12; ++i)
    for (std::size_t j = i + 1; j < t.size() && pts.size() < 12; ++j)
      if (auto x = intersect_lines(t[i], t[j])) pts.push_back(AffineObject<Fp>::point(field, *x));
  const std::size_t on_lines = rng.below(15);
  for (std::size_t i = 0; i < on_lines; ++i) {
    const auto& l = t[rng.below(t.size())];
    pts.push_back(AffineObject<Fp>::point(field, l.point_at({random_scalar<Fp>(field, rng)})));
  }
  const std::size_t free_pts = rng.below(5);
  for (std::size_t i = 0; i < free_pts; ++i) {
    Vector<Fp> x;
    for (std::size_t c = 0; c < n; ++c) x.push_back(random_scalar<Fp>(field, rng));
    pts.push_back(AffineObject<Fp>::point(field, x));
  }
  VarietySet<Fp> s(field, n, pts);
  if (s.size() > 30) {
    std::vector<std::size_t> keep(30);
    std::iota(keep.begin(), keep.end(), 0);
    s = s.subset(keep);
  }

  MultiPoly<Fp> f(field, n);
  if (rng.below(2) == 0) {
    f = MultiPoly<Fp>::constant(field, n, Fp(field, 1 + static_cast<std::int64_t>(rng.below(field.p - 1))));
    const std::size_t factors = rng.below(5);
    for (std::size_t i = 0; i < factors; ++i) {
      const bool through_t = rng.below(3) != 0 || s.empty();
      const auto& x = through_t ? t[rng.below(t.size())] : s[rng.below(s.size())];
      f = f * detail::linear_form_through(x, rng);
    }
  } else {
    f = detail::random_dense_poly<Fp>(field, n, rng.below(5), rng);
  }
  return {std::move(s), t, std::move(f)};
}

inline SuiteSummary verify_cii_suite(std::size_t instances, std::uint64_t seed) {
  SuiteSummary sum;
  sum.theorem = Theorem::cii;
  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = cii_instance(seed, i);
    const auto step = cii_step(inst.s, inst.t, inst.f);
    ++sum.instances;
    if (!step.holds) {
      ++sum.violations;
      if (!sum.first_violation) sum.first_violation = Reproducer{seed, i};
      continue;
    }
    if (step.lhs == step.rhs()) ++sum.equality_cases;
    sum.max_slack = std::max(sum.max_slack, step.rhs() - step.lhs);
  }
  return sum;
}

template <ExactField K>
struct BezoutInstance {
  AffineObject<K> line;
  MultiPoly<K> f;
};

/// Instance `index` of the Bezout suite: a random line in F_p^n (n in
/// {2,3,4}, p in {7,11,13}) and f of degree <= 5, built as a product of
/// linear forms (often through random points of the line, sometimes through
/// the line itself) or a random sparse polynomial.
inline BezoutInstance<Fp> bezout_instance(std::uint64_t seed, std::size_t index) {
  SplitMix64 rng = SplitMix64(seed).fork(index + 1);
  static constexpr std::size_t dims[] = {2, 3, 4};
  static constexpr std::uint64_t primes[] = {7, 11, 13};
  const std::size_t n = dims[rng.below(3)];
  const FieldSpec field = FieldSpec::prime(primes[rng.below(3)]);
  GeneratorConfig cfg;
  cfg.field = field;
  cfg.ambient_dim = n;
  cfg.seed = rng();
  cfg.count = 1;
  const auto line = generate<Fp>(cfg)[0];
  const std::size_t deg = rng.below(6);
  MultiPoly<Fp> f(field, n);
  if (rng.below(2) == 0) {
    f = MultiPoly<Fp>::constant(field, n, Fp(field, 1));
    for (std::size_t i = 0; i < deg; ++i) {
      if (rng.below(8) == 0) {
        f = f * detail::linear_form_through(line, rng);
      } else {
        const auto pt = AffineObject<Fp>::point(field, line.point_at({random_scalar<Fp>(field, rng)}));
        f = f * detail::linear_form_through(pt, rng);
      }
    }
  } else {
    f = detail::random_dense_poly<Fp>(field, n, deg, rng);
    if (f.is_zero()) f = MultiPoly<Fp>::constant(field, n, Fp(field, 1));
  }
  return {line, std::move(f)};
}

inline SuiteSummary verify_bezout_suite(std::size_t instances, std::uint64_t seed) {
  SuiteSummary sum;
  sum.theorem = Theorem::bezout_suite;
  for (std::size_t i = 0; i < instances; ++i) {
    const auto inst = bezout_instance(seed, i);
    const auto chk = bezout_line_check(inst.line, inst.f);
    ++sum.instances;
    if (chk.contained) {
      ++sum.contained;
      continue;
    }
    const auto deg = static_cast<std::size_t>(std::max(chk.degree, 0));
    if (chk.count > deg) {
      ++sum.violations;
      if (!sum.first_violation) sum.first_violation = Reproducer{seed, i};
    } else if (deg > 0) {
      sum.max_fill = std::max(sum.max_fill, static_cast<double>(chk.count) / static_cast<double>(deg));
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// JSON forms.

inline Json to_json(const VerificationReport& rep) {
  Json j;
  j["theorem"] = to_string(rep.theorem);
  j["lhs"] = rep.lhs;
  Json terms = Json::array();
  for (const auto& t : rep.rhs_terms) {
    Json tj;
    tj["m"] = t.m >= 0 ? Json(t.m) : Json(nullptr);
    tj["label"] = t.label;
    tj["value"] = t.value;
    terms.push_back(tj);
  }
  j["rhs_terms"] = terms;
  j["rhs_total"] = rep.rhs_total;
  j["ratio"] = std::isfinite(rep.ratio) ? Json(rep.ratio) : Json("inf");
  Json p;
  p["k"] = rep.params.k ? Json(*rep.params.k) : Json(nullptr);
  p["r"] = rep.params.r ? Json(*rep.params.r) : Json(nullptr);
  p["n"] = rep.params.n;
  p["field"] = field_to_json(rep.params.field);
  p["oracle"] = rep.params.oracle ? Json(to_string(*rep.params.oracle)) : Json(nullptr);
  j["params"] = p;
  Json conc = Json::array();
  for (const auto& [m, v] : rep.concentration) conc.push_back({{"m", m}, {"value", v.to_string()}});
  j["concentration"] = conc;
  j["instance_digest"] = rep.instance_digest;
  j["notes"] = rep.notes;
  return j;
}

inline Json to_json(const SuiteSummary& s) {
  Json j;
  j["theorem"] = to_string(s.theorem);
  j["instances"] = s.instances;
  j["violations"] = s.violations;
  if (s.theorem == Theorem::cii) {
    j["equality_cases"] = s.equality_cases;
    j["max_slack"] = s.max_slack;
  } else {
    j["contained"] = s.contained;
    j["max_count_over_degree"] = s.max_fill;
  }
  j["first_violation"] = s.first_violation ? Json{{"seed", s.first_violation->seed}, {"index", s.first_violation->index}}
                                           : Json(nullptr);
  j["notes"] = s.notes;
  return j;
}

template <ExactField K>
Json to_json(const ConcentrationEstimate<K>& e) {
  Json j;
  j["m"] = e.m;
  j["value"] = e.value.to_string();
  j["oracle"] = to_string(e.oracle);
  j["witness_members"] = e.witness_members;
  Json w = Json::array();
  for (const auto& f : e.witness) w.push_back(object_to_json(f));
  j["witness"] = w;
  j["candidates"] = e.candidates;
  return j;
}

template <ExactField K>
Json to_json(const PartitionStep<K>& st) {
  Json j;
  j["piece"] = st.piece;
  j["piece_in"] = st.piece_in;
  j["piece_out"] = st.piece_out;
  j["budget"] = st.budget;
  j["f"] = poly_to_json(st.f);
  j["deg_f"] = st.f.total_degree();
  j["s_in"] = st.s_in.size();
  j["s_out"] = st.s_out.size();
  j["t_in"] = st.t_in.size();
  j["t_out"] = st.t_out.size();
  j["lhs"] = st.lhs;
  j["i_in"] = st.i_in;
  j["i_out"] = st.i_out;
  j["error_term"] = st.error_term;
  j["holds"] = st.holds;
  return j;
}

template <ExactField K>
Json to_json(const PartitionTrace<K>& tr) {
  Json j;
  Json pieces = Json::array();
  for (const auto& p : tr.pieces) {
    Json pj;
    pj["id"] = p.id;
    pj["incidences"] = p.incidences;
    pj["s"] = set_to_json(p.s);
    pj["t"] = set_to_json(p.t);
    pieces.push_back(pj);
  }
  j["pieces"] = pieces;
  Json steps = Json::array();
  for (const auto& s : tr.steps) steps.push_back(to_json(s));
  j["steps"] = steps;
  j["total_error"] = tr.total_error;
  j["budget"] = tr.budget;
  j["lhs"] = tr.lhs;
  j["piece_incidences"] = tr.piece_incidences;
  j["all_steps_hold"] = tr.all_steps_hold;
  j["global_holds"] = tr.global_holds;
  return j;
}

}  // namespace ilab
