#pragma once

/**
 * @file concentrate.hpp
 * @brief Concentration parameters D_m(T) = max deg(T_W)/deg(W) over m-flats W.
 *
 * Oracles:
 *  - spanned: candidates are the flats spanned by subsets of members (explored
 *    as a closure over spans, pruned above dimension m), with spans of lower
 *    dimension completed to m-flats by coordinate directions. Any maximizing
 *    flat contains a member subset whose span is explored, so the result
 *    equals the maximum over all m-flats.
 *  - exhaustive: every m-flat of F_p^n, under a configurable ceiling.
 *  - union_greedy: unions of distinct candidate m-flats (degree = number of
 *    flats), grown greedily by newly covered members; best prefix ratio.
 *
 * brute_force_reference describes flats by equation systems instead of
 * parametrizations, as an independent cross-check on tiny instances.
 */

#include <ilab/geom.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace ilab {

/// Nonnegative exact ratio num/den, kept reduced.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Fraction() = default;
  Fraction(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (d == 0) throw InputError("fraction with zero denominator");
    const auto g = std::gcd(n, d);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <=> static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// "2/5", "0.4" or "1" as an exact fraction.
inline Fraction parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto n = detail::parse_int64(text.substr(0, slash));
    const auto d = detail::parse_int64(text.substr(slash + 1));
    if (n < 0 || d <= 0) throw InputError("expected a nonnegative fraction, got '" + text + "'");
    return Fraction(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d));
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    const auto n = detail::parse_int64(text);
    if (n < 0) throw InputError("expected a nonnegative fraction, got '" + text + "'");
    return Fraction(static_cast<std::uint64_t>(n), 1);
  }
  const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("malformed decimal '" + text + "'");
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const auto w = whole.empty() ? 0 : detail::parse_int64(whole);
  if (w < 0) throw InputError("expected a nonnegative fraction, got '" + text + "'");
  return Fraction(static_cast<std::uint64_t>(w) * den + std::stoull(frac), den);
}

enum class Oracle { spanned, exhaustive, union_greedy };

inline const char* to_string(Oracle o) {
  switch (o) {
    case Oracle::spanned: return "spanned";
    case Oracle::exhaustive: return "exhaustive";
    case Oracle::union_greedy: return "union_greedy";
  }
  return "?";
}

inline Oracle parse_oracle(const std::string& s) {
  for (Oracle o : {Oracle::spanned, Oracle::exhaustive, Oracle::union_greedy})
    if (s == to_string(o)) return o;
  throw InputError("unknown oracle '" + s + "'");
}

inline constexpr std::uint64_t kDefaultExhaustiveCeiling = 2'000'000;

template <ExactField K>
struct ConcentrationEstimate {
  std::size_t m = 0;
  Fraction value;
  std::vector<AffineObject<K>> witness;  // one flat, or several for union_greedy
  std::size_t witness_members = 0;       // deg(T restricted to the witness)
  Oracle oracle = Oracle::spanned;
  std::size_t candidates = 0;            // containers examined
};

namespace detail {

template <ExactField K>
void check_concentration_args(const VarietySet<K>& t, std::size_t m) {
  if (m > t.ambient_dim())
    throw InputError("container dimension " + std::to_string(m) + " exceeds ambient dimension " +
                     std::to_string(t.ambient_dim()));
  if (t.member_dim() && *t.member_dim() > m)
    throw InputError("container dimension " + std::to_string(m) + " is below member dimension " +
                     std::to_string(*t.member_dim()));
}

template <ExactField K>
AffineObject<K> complete_to_dim(const AffineObject<K>& f, std::size_t m) {
  std::vector<Vector<K>> dirs = f.basis();
  const std::size_t n = f.ambient_dim();
  for (std::size_t i = 0; i < n && dirs.size() < m; ++i) {
    Vector<K> e(n, K::from_int(f.field(), 0));
    e[i] = K::from_int(f.field(), 1);
    auto trial = dirs;
    trial.push_back(e);
    if (rank(Matrix<K>::from_rows(f.field(), n, trial)) == trial.size()) dirs = std::move(trial);
  }
  return AffineObject<K>::from_parametrization(f.field(), f.base(), dirs);
}

template <ExactField K>
std::vector<std::size_t> members_inside(const VarietySet<K>& t, const AffineObject<K>& w) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (contains(w, t[i])) idx.push_back(i);
  return idx;
}

}  // namespace detail

/// Distinct m-flats spanned by member subsets (completed when the span is
/// smaller), each with the indices of the members it contains.
template <ExactField K>
std::map<AffineObject<K>, std::vector<std::size_t>> spanned_candidates(const VarietySet<K>& t, std::size_t m) {
  detail::check_concentration_args(t, m);
  std::map<AffineObject<K>, std::vector<std::size_t>> cands;
  if (t.empty()) return cands;
  if (m == t.ambient_dim()) {
    auto whole = AffineObject<K>::whole_space(t.field(), m);
    cands.emplace(whole, detail::members_inside(t, whole));
    return cands;
  }
  std::set<AffineObject<K>> seen;
  std::vector<AffineObject<K>> frontier;
  for (const auto& x : t.members())
    if (seen.insert(x).second) frontier.push_back(x);
  while (!frontier.empty()) {
    std::vector<AffineObject<K>> next;
    for (const auto& f : frontier) {
      if (f.dim() == m) {
        cands.try_emplace(f);
        continue;
      }
      cands.try_emplace(detail::complete_to_dim(f, m));
      for (const auto& x : t.members()) {
        if (contains(f, x)) continue;
        auto g = span_of<K>({f, x});
        if (g.dim() <= m && seen.insert(g).second) next.push_back(std::move(g));
      }
    }
    frontier = std::move(next);
  }
  for (auto& [w, idx] : cands) idx = detail::members_inside(t, w);
  return cands;
}

namespace detail {

template <ExactField K>
ConcentrationEstimate<K> best_single(const VarietySet<K>& t, std::size_t m,
                                     const std::map<AffineObject<K>, std::vector<std::size_t>>& cands, Oracle o) {
  ConcentrationEstimate<K> est;
  est.m = m;
  est.oracle = o;
  est.candidates = cands.size();
  bool have = false;
  for (const auto& [w, idx] : cands) {
    if (!have || idx.size() > est.witness_members) {
      est.witness = {w};
      est.witness_members = idx.size();
      have = true;
    }
  }
  est.value = Fraction(est.witness_members, 1);
  (void)t;
  return est;
}

// Number of m-dimensional subspaces of F_p^n times p^(n-m) translates.
inline long double affine_flat_count(std::uint64_t p, std::size_t n, std::size_t m) {
  long double g = 1;
  for (std::size_t i = 0; i < m; ++i)
    g *= (std::pow(static_cast<long double>(p), n - i) - 1) / (std::pow(static_cast<long double>(p), m - i) - 1);
  return g * std::pow(static_cast<long double>(p), n - m);
}

}  // namespace detail

template <ExactField K>
ConcentrationEstimate<K> concentration_spanned(const VarietySet<K>& t, std::size_t m) {
  return detail::best_single(t, m, spanned_candidates(t, m), Oracle::spanned);
}

/// Every m-flat of F_p^n, enumerated in canonical (RREF) form.
template <ExactField K>
ConcentrationEstimate<K> concentration_exhaustive(const VarietySet<K>& t, std::size_t m,
                                                  std::uint64_t ceiling = kDefaultExhaustiveCeiling) {
  detail::check_concentration_args(t, m);
  const FieldSpec& f = t.field();
  if (!f.is_prime_field()) throw InputError("exhaustive oracle needs a finite field");
  const std::size_t n = t.ambient_dim();
  const std::uint64_t p = f.p;
  const long double total = detail::affine_flat_count(p, n, m);
  if (total > static_cast<long double>(ceiling))
    throw InputError("exhaustive oracle: " + std::to_string(static_cast<double>(total)) + " flats exceed the ceiling of " +
                     std::to_string(ceiling));

  std::map<AffineObject<K>, std::vector<std::size_t>> cands;
  if constexpr (std::same_as<K, Fp>) {
    // Pivot column sets.
    std::vector<std::size_t> piv(m);
    std::iota(piv.begin(), piv.end(), 0);
    for (;;) {
      std::vector<bool> is_piv(n, false);
      for (auto c : piv) is_piv[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free_slots;  // (row, col)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = piv[i] + 1; j < n; ++j)
          if (!is_piv[j]) free_slots.emplace_back(i, j);
      std::vector<std::size_t> base_slots;
      for (std::size_t j = 0; j < n; ++j)
        if (!is_piv[j]) base_slots.push_back(j);

      std::vector<std::uint64_t> digits(free_slots.size() + base_slots.size(), 0);
      for (;;) {
        std::vector<Vector<K>> rows(m, Vector<K>(n, Fp(f, 0)));
        for (std::size_t i = 0; i < m; ++i) rows[i][piv[i]] = Fp(f, 1);
        for (std::size_t s = 0; s < free_slots.size(); ++s)
          rows[free_slots[s].first][free_slots[s].second] = Fp(f, static_cast<std::int64_t>(digits[s]));
        Vector<K> base(n, Fp(f, 0));
        for (std::size_t s = 0; s < base_slots.size(); ++s)
          base[base_slots[s]] = Fp(f, static_cast<std::int64_t>(digits[free_slots.size() + s]));
        auto w = AffineObject<K>::from_parametrization(f, std::move(base), rows);
        auto idx = detail::members_inside(t, w);
        cands.emplace(std::move(w), std::move(idx));

        std::size_t d = 0;
        while (d < digits.size() && ++digits[d] == p) digits[d++] = 0;
        if (d == digits.size()) break;
      }

      // Next pivot combination.
      std::size_t i = m;
      while (i > 0 && piv[i - 1] == n - m + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < m; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return detail::best_single(t, m, cands, Oracle::exhaustive);
}

template <ExactField K>
ConcentrationEstimate<K> concentration_union_greedy(const VarietySet<K>& t, std::size_t m) {
  const auto cands = spanned_candidates(t, m);
  ConcentrationEstimate<K> est;
  est.m = m;
  est.oracle = Oracle::union_greedy;
  est.candidates = cands.size();
  if (cands.empty()) return est;

  // Seed order: deg(T_W) descending, canonical order among ties.
  std::vector<const std::pair<const AffineObject<K>, std::vector<std::size_t>>*> order;
  for (const auto& c : cands) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a->second.size() > b->second.size(); });

  std::vector<bool> covered(t.size(), false), used(order.size(), false);
  std::vector<AffineObject<K>> chosen;
  std::size_t covered_count = 0;
  for (;;) {
    std::size_t best = order.size(), best_gain = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (used[i]) continue;
      std::size_t gain = 0;
      for (auto idx : order[i]->second) gain += covered[idx] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == order.size()) break;
    used[best] = true;
    for (auto idx : order[best]->second) covered[idx] = true;
    covered_count += best_gain;
    chosen.push_back(order[best]->first);
    Fraction ratio(covered_count, chosen.size());
    if (ratio > est.value) {
      est.value = ratio;
      est.witness = chosen;
      est.witness_members = covered_count;
    }
  }
  return est;
}

template <ExactField K>
ConcentrationEstimate<K> concentration(const VarietySet<K>& t, std::size_t m, Oracle oracle,
                                       std::uint64_t exhaustive_ceiling = kDefaultExhaustiveCeiling) {
  switch (oracle) {
    case Oracle::spanned: return concentration_spanned(t, m);
    case Oracle::exhaustive: return concentration_exhaustive(t, m, exhaustive_ceiling);
    case Oracle::union_greedy: return concentration_union_greedy(t, m);
  }
  throw InputError("unknown oracle");
}

/// D_m for m = dim(T) .. n (m = 0 .. n for an empty set).
template <ExactField K>
std::vector<ConcentrationEstimate<K>> concentration_profile(const VarietySet<K>& t, Oracle oracle) {
  std::vector<ConcentrationEstimate<K>> out;
  for (std::size_t m = t.member_dim().value_or(0); m <= t.ambient_dim(); ++m) out.push_back(concentration(t, m, oracle));
  return out;
}

namespace detail {

// Tiny modular helpers kept apart from matrix.hpp so the reference oracle
// shares no elimination code with the oracles it checks.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    std::int64_t inv = 1;
    for (std::int64_t x = 1; x < p; ++x)
      if ((a[r][c] % p) * x % p == 1) inv = x;
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const std::int64_t fct = a[i][c] % p * inv % p;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = ((a[i][j] - fct * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// Independent reference for D_m on tiny instances (|T| <= 8, p <= 7,
/// n <= 3): flats are enumerated as solution sets of n - m normalized
/// equations rather than through parametrizations.
template <ExactField K>
ConcentrationEstimate<K> brute_force_reference(const VarietySet<K>& t, std::size_t m) {
  detail::check_concentration_args(t, m);
  const FieldSpec& f = t.field();
  const std::size_t n = t.ambient_dim();
  if (!f.is_prime_field() || f.p > 7 || n > 3 || t.size() > 8)
    throw InputError("brute_force_reference is limited to |T| <= 8, p <= 7, n <= 3");
  ConcentrationEstimate<K> est;
  est.m = m;
  est.oracle = Oracle::exhaustive;
  if constexpr (std::same_as<K, Fp>) {
    const std::int64_t p = f.p;
    auto residue = [](const Fp& x) { return static_cast<std::int64_t>(x.residue()); };
    if (m == n) {
      est.witness = {AffineObject<K>::whole_space(f, n)};
      est.witness_members = t.size();
      est.value = Fraction(t.size(), 1);
      est.candidates = 1;
      return est;
    }
    if (m == 0) {
      // Containers are single points; only point members can lie in them.
      std::vector<std::int64_t> x(n, 0);
      for (;;) {
        std::size_t inside = 0;
        for (const auto& s : t.members()) {
          if (s.dim() != 0) continue;
          bool same = true;
          for (std::size_t i = 0; i < n; ++i) same = same && residue(s.base()[i]) == x[i];
          inside += same ? 1 : 0;
        }
        ++est.candidates;
        if (est.witness.empty() || inside > est.witness_members) {
          Vector<K> pt;
          for (auto v : x) pt.push_back(Fp(f, v));
          est.witness = {AffineObject<K>::point(f, pt)};
          est.witness_members = inside;
        }
        std::size_t d = 0;
        while (d < n && ++x[d] == p) x[d++] = 0;
        if (d == n) break;
      }
      est.value = Fraction(est.witness_members, 1);
      return est;
    }

    // Normalized equations a·x = b: first nonzero entry of a equals 1.
    std::vector<std::vector<std::int64_t>> eqs;  // a_1..a_n, b
    std::vector<std::int64_t> a(n + 1, 0);
    for (;;) {
      std::size_t lead = 0;
      while (lead < n && a[lead] == 0) ++lead;
      if (lead < n && a[lead] == 1) eqs.push_back(a);
      std::size_t d = 0;
      while (d <= n && ++a[d] == p) a[d++] = 0;
      if (d > n) break;
    }
    const std::size_t c = n - m;
    std::vector<std::size_t> pick(c);
    std::iota(pick.begin(), pick.end(), 0);
    auto satisfies = [&](const AffineObject<K>& s, const std::vector<std::int64_t>& e) {
      std::int64_t v = 0;
      for (std::size_t i = 0; i < n; ++i) v += e[i] * residue(s.base()[i]);
      if (((v - e[n]) % p + p) % p != 0) return false;
      for (const auto& d : s.basis()) {
        std::int64_t w = 0;
        for (std::size_t i = 0; i < n; ++i) w += e[i] * residue(d[i]);
        if (w % p != 0) return false;
      }
      return true;
    };
    std::vector<std::vector<std::int64_t>> best_system;
    bool have = false;
    for (;;) {
      std::vector<std::vector<std::int64_t>> lhs, aug;
      for (auto i : pick) {
        lhs.emplace_back(eqs[i].begin(), eqs[i].begin() + static_cast<std::ptrdiff_t>(n));
        aug.push_back(eqs[i]);
      }
      if (detail::rank_mod_p(lhs, p) == c && detail::rank_mod_p(aug, p) == c) {
        ++est.candidates;
        std::size_t inside = 0;
        for (const auto& s : t.members()) {
          bool ok = true;
          for (auto i : pick) ok = ok && satisfies(s, eqs[i]);
          inside += ok ? 1 : 0;
        }
        if (!have || inside > est.witness_members) {
          have = true;
          est.witness_members = inside;
          best_system = aug;
        }
      }
      std::size_t i = c;
      while (i > 0 && pick[i - 1] == eqs.size() - c + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < c; ++j) pick[j] = pick[j - 1] + 1;
    }
    est.value = Fraction(est.witness_members, 1);
    // Parametrize the winning system for the report: solve by rref.
    Matrix<K> sys(f, 0, n + 1);
    for (const auto& row : best_system) {
      Vector<K> r;
      for (auto v : row) r.push_back(Fp(f, v));
      sys.append_row(r);
    }
    auto ech = rref(sys);
    Vector<K> base(n, Fp(f, 0));
    for (std::size_t i = 0; i < ech.rank; ++i) base[ech.pivot_cols[i]] = ech.matrix(i, n);
    Matrix<K> coeffs(f, 0, n);
    for (std::size_t i = 0; i < ech.rank; ++i) {
      auto row = ech.matrix.row(i);
      coeffs.append_row(std::span<const K>(row.data(), n));
    }
    est.witness = {AffineObject<K>::from_parametrization(f, base, kernel_basis(coeffs))};
  }
  return est;
}

}  // namespace ilab
