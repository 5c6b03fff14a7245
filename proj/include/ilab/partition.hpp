#pragma once

// Polynomial partition steps with exact incidence bookkeeping.
//
// One step splits (S, T) by a polynomial f into the parts inside Z(f) and the
// rest. A member t of T outside Z(f) meets Z(f) in at most deg f members of
// S_f, which gives
//     I(S,T) <= I(S_f,T_f) + I(S \ S_f, T \ T_f) + deg(T \ T_f)·deg f.
// partition_iterate keeps splitting the largest piece while a tau-good split
// exists within the degree budget.

#include <ilab/concentrate.hpp>
#include <ilab/incidence.hpp>
#include <ilab/random.hpp>
#include <ilab/vanish.hpp>

#include <optional>

namespace ilab {

template <ExactField K>
struct PartitionStep {
  MultiPoly<K> f;
  VarietySet<K> s_in, s_out, t_in, t_out;
  std::uint64_t error_term = 0;  // deg(T \ T_f)·deg f
  std::uint64_t lhs = 0;         // I(S,T)
  std::uint64_t i_in = 0;        // I(S_f,T_f)
  std::uint64_t i_out = 0;       // I(S \ S_f, T \ T_f)
  bool holds = false;
  // Piece bookkeeping, filled by partition_iterate.
  std::size_t piece = 0, piece_in = 0, piece_out = 0;
  std::size_t budget = 0;

  std::uint64_t rhs() const { return i_in + i_out + error_term; }
};

template <ExactField K>
PartitionStep<K> cii_step(const VarietySet<K>& s, const VarietySet<K>& t, const MultiPoly<K>& f) {
  require_codim_one(s, t);
  if (f.nvars() != t.ambient_dim() || !(f.field() == t.field()))
    throw InputError("partition polynomial does not live on the ambient space of T");
  std::vector<std::size_t> si, so, ti, to;
  for (std::size_t i = 0; i < s.size(); ++i) (vanishes_on(f, s[i]) ? si : so).push_back(i);
  for (std::size_t i = 0; i < t.size(); ++i) (vanishes_on(f, t[i]) ? ti : to).push_back(i);
  PartitionStep<K> step{f, s.subset(si), s.subset(so), t.subset(ti), t.subset(to)};
  const auto deg_f = static_cast<std::uint64_t>(std::max(f.total_degree(), 0));
  step.error_term = step.t_out.total_degree() * deg_f;
  step.lhs = incidence_degree(s, t).total;
  step.i_in = incidence_degree(step.s_in, step.t_in).total;
  step.i_out = incidence_degree(step.s_out, step.t_out).total;
  step.holds = step.lhs <= step.rhs();
  return step;
}

namespace detail {

template <ExactField K>
std::size_t members_in_zero_set(const VarietySet<K>& t, const MultiPoly<K>& f) {
  std::size_t c = 0;
  for (const auto& x : t.members()) c += vanishes_on(f, x) ? 1 : 0;
  return c;
}

// tau·total < count < total, exactly.
inline bool tau_good(const Fraction& tau, std::size_t count, std::size_t total) {
  const auto lhs = static_cast<unsigned __int128>(tau.num) * total;
  const auto rhs = static_cast<unsigned __int128>(count) * tau.den;
  return lhs < rhs && count < total;
}

}  // namespace detail

inline constexpr std::size_t kRandomSubsetAttempts = 16;
inline constexpr std::size_t kMaxRankedFlats = 32;

/// First f of degree <= budget with tau·deg T < deg T_f < deg T.
///
/// For each D = 1..budget the candidates are kernel polynomials of the
/// vanishing space of: members of concentration-ranked flats, greedy unions of
/// up to D of those flats (largest subsets first), then seeded random subsets
/// of floor(tau·deg T)+1 members.
template <ExactField K>
std::optional<MultiPoly<K>> good_partition_search(const VarietySet<K>& t, const Fraction& tau, std::size_t budget,
                                                  std::uint64_t seed = 1) {
  if (tau.num == 0 || tau.num >= tau.den) throw InputError("tau must lie strictly between 0 and 1");
  if (budget < 1) throw InputError("degree budget must be at least 1");
  const std::size_t total = t.size();
  if (total < 2) return std::nullopt;
  const std::size_t n = t.ambient_dim();

  // Flats below the ambient dimension, ranked by deg(T_W); only those that
  // could seed a proper split are kept.
  std::vector<std::vector<std::size_t>> flats;
  {
    std::vector<std::pair<AffineObject<K>, std::vector<std::size_t>>> ranked;
    for (std::size_t m = t.member_dim().value_or(0); m < n; ++m)
      for (auto& [w, idx] : spanned_candidates(t, m))
        if (idx.size() < total) ranked.emplace_back(w, idx);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
      return a.first < b.first;
    });
    std::set<std::vector<std::size_t>> seen;
    for (auto& r : ranked) {
      if (flats.size() == kMaxRankedFlats) break;
      if (seen.insert(r.second).second) flats.push_back(std::move(r.second));
    }
  }

  auto try_subset = [&](const std::vector<std::size_t>& idx, std::size_t D) -> std::optional<MultiPoly<K>> {
    auto space = vanishing_space(t.subset(idx), D);
    for (const auto& v : space.kernel) {
      auto f = from_coefficients(t.field(), space.basis, v);
      if (detail::tau_good(tau, detail::members_in_zero_set(t, f), total)) return f;
    }
    return std::nullopt;
  };

  SplitMix64 rng(seed);
  const std::size_t random_size =
      static_cast<std::size_t>(static_cast<unsigned __int128>(tau.num) * total / tau.den) + 1;
  for (std::size_t D = 1; D <= budget; ++D) {
    std::vector<std::vector<std::size_t>> subsets = flats;
    for (std::size_t j = 2; j <= D; ++j) {
      // Greedy union of j ranked flats by newly covered members.
      std::vector<bool> covered(total, false);
      std::vector<std::size_t> uni;
      for (std::size_t step = 0; step < j; ++step) {
        std::size_t best = flats.size(), gain_best = 0;
        for (std::size_t c = 0; c < flats.size(); ++c) {
          std::size_t gain = 0;
          for (auto i : flats[c]) gain += covered[i] ? 0 : 1;
          if (gain > gain_best) {
            gain_best = gain;
            best = c;
          }
        }
        if (best == flats.size()) break;
        for (auto i : flats[best])
          if (!covered[i]) {
            covered[i] = true;
            uni.push_back(i);
          }
      }
      std::sort(uni.begin(), uni.end());
      if (uni.size() < total) subsets.push_back(std::move(uni));
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& idx : subsets)
      if (auto f = try_subset(idx, D)) return f;

    if (random_size < total) {
      for (std::size_t a = 0; a < kRandomSubsetAttempts; ++a) {
        std::vector<std::size_t> perm(total);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = 0; i < random_size; ++i) std::swap(perm[i], perm[i + rng.below(total - i)]);
        std::vector<std::size_t> idx(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(random_size));
        std::sort(idx.begin(), idx.end());
        if (auto f = try_subset(idx, D)) return f;
      }
    }
  }
  return std::nullopt;
}

struct BudgetRule {
  enum class Kind { fixed, relative } kind = Kind::relative;
  std::size_t degree = 1;  // used by fixed

  static BudgetRule fixed(std::size_t d) { return {Kind::fixed, d}; }
  static BudgetRule relative() { return {Kind::relative, 0}; }
  std::string to_string() const { return kind == Kind::fixed ? "fixed(" + std::to_string(degree) + ")" : "relative"; }
};

/// "relative" or a fixed degree such as "3".
inline BudgetRule parse_budget(const std::string& s) {
  if (s == "relative") return BudgetRule::relative();
  const auto d = detail::parse_int64(s);
  if (d < 1) throw InputError("fixed degree budget must be at least 1");
  return BudgetRule::fixed(static_cast<std::size_t>(d));
}

template <ExactField K>
struct Piece {
  std::size_t id = 0;
  VarietySet<K> s, t;
  std::uint64_t incidences = 0;
};

template <ExactField K>
struct PartitionTrace {
  std::vector<Piece<K>> pieces;  // final pieces, by id
  std::vector<PartitionStep<K>> steps;
  std::uint64_t total_error = 0;
  std::size_t budget = 0;        // largest degree cap used
  std::uint64_t lhs = 0;         // I(S,T)
  std::uint64_t piece_incidences = 0;
  bool all_steps_hold = true;
  bool global_holds = false;     // piece_incidences + total_error >= lhs
};

namespace detail {

template <ExactField K>
bool piece_before(const Piece<K>& a, const Piece<K>& b) {
  if (a.t.total_degree() != b.t.total_degree()) return a.t.total_degree() > b.t.total_degree();
  return std::lexicographical_compare(a.t.members().begin(), a.t.members().end(), b.t.members().begin(),
                                      b.t.members().end());
}

}  // namespace detail

/// Splits the largest open piece until every piece is final: no tau-good
/// partition within budget, or total degree <= floor.
template <ExactField K>
PartitionTrace<K> partition_iterate(const VarietySet<K>& s, const VarietySet<K>& t, const Fraction& tau,
                                    const BudgetRule& rule, std::uint64_t seed = 1, std::size_t floor = 2) {
  require_codim_one(s, t);
  PartitionTrace<K> trace;
  trace.lhs = incidence_degree(s, t).total;
  std::size_t next_id = 0;
  std::vector<Piece<K>> open{Piece<K>{next_id++, s, t, trace.lhs}};
  SplitMix64 seeds(seed);

  while (!open.empty()) {
    auto it = std::min_element(open.begin(), open.end(), detail::piece_before<K>);
    Piece<K> cur = std::move(*it);
    open.erase(it);
    if (cur.t.total_degree() <= floor) {
      trace.pieces.push_back(std::move(cur));
      continue;
    }
    std::size_t budget = rule.degree;
    if (rule.kind == BudgetRule::Kind::relative) budget = std::max<std::size_t>(1, min_vanishing_degree(cur.t).degree);
    trace.budget = std::max(trace.budget, budget);
    auto f = good_partition_search(cur.t, tau, budget, seeds());
    if (!f) {
      trace.pieces.push_back(std::move(cur));
      continue;
    }
    auto step = cii_step(cur.s, cur.t, *f);
    step.piece = cur.id;
    step.budget = budget;
    step.piece_in = next_id++;
    step.piece_out = next_id++;
    trace.total_error += step.error_term;
    trace.all_steps_hold = trace.all_steps_hold && step.holds;
    open.push_back(Piece<K>{step.piece_in, step.s_in, step.t_in, step.i_in});
    open.push_back(Piece<K>{step.piece_out, step.s_out, step.t_out, step.i_out});
    trace.steps.push_back(std::move(step));
  }
  std::sort(trace.pieces.begin(), trace.pieces.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& p : trace.pieces) trace.piece_incidences += p.incidences;
  trace.global_holds = trace.piece_incidences + trace.total_error >= trace.lhs;
  return trace;
}

}  // namespace ilab
