#pragma once

// Exact incidence accounting: I(S,T), rich points, k-freeness, Bezout checks
// on lines, and the elementary k-free bound 2|S||T|^(1-1/k) + (k-1)|T|.
//
// Intersection points are counted over the base field only (F_p- or
// Q-rational points).

#include <ilab/mpoly.hpp>

#include <cmath>
#include <map>
#include <optional>

namespace ilab {

struct IncidenceCount {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_point;   // per S member: number of T members containing it
  std::vector<std::uint64_t> per_member;  // per T member: contained S-degree
};

template <ExactField K>
void require_codim_one(const VarietySet<K>& s, const VarietySet<K>& t) {
  if (!(s.field() == t.field())) throw InputError("S and T over different fields");
  if (s.ambient_dim() != t.ambient_dim()) throw InputError("S and T in different ambient dimensions");
  if (s.member_dim() && t.member_dim() && *t.member_dim() != *s.member_dim() + 1)
    throw InputError("incidence needs dim(T) = dim(S) + 1, got dim(S) = " + std::to_string(*s.member_dim()) +
                     ", dim(T) = " + std::to_string(*t.member_dim()));
}

/// I(S,T) = Σ_s deg(s)·|{t : s ⊆ t}|, with both aggregations populated.
template <ExactField K>
IncidenceCount incidence_degree(const VarietySet<K>& s, const VarietySet<K>& t) {
  require_codim_one(s, t);
  IncidenceCount out;
  out.per_point.assign(s.size(), 0);
  out.per_member.assign(t.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      if (contains(t[j], s[i])) {
        out.per_point[i] += 1;
        out.per_member[j] += s[i].degree();
      }
  std::uint64_t by_s = 0, by_t = 0;
  for (std::size_t i = 0; i < s.size(); ++i) by_s += s[i].degree() * out.per_point[i];
  for (auto v : out.per_member) by_t += v;
  if (by_s != by_t) throw std::logic_error("incidence aggregations disagree");
  out.total = by_s;
  return out;
}

template <ExactField K>
struct RichSet {
  std::size_t r = 2;
  VarietySet<K> points;
  std::vector<std::size_t> multiplicity;  // aligned with points
};

/// Points lying on at least r lines of t, via pairwise intersection.
template <ExactField K>
RichSet<K> rich_points(const VarietySet<K>& t, std::size_t r) {
  if (r < 2) throw InputError("rich point threshold must be >= 2");
  if (t.member_dim() && *t.member_dim() != 1) throw InputError("rich_points expects a set of lines");
  std::map<Vector<K>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (auto pt = intersect_lines(t[i], t[j])) {
        auto& b = buckets[*pt];
        b.push_back(i);
        b.push_back(j);
      }
  std::vector<AffineObject<K>> pts;
  std::vector<std::size_t> mult;
  for (auto& [pt, idx] : buckets) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.size() >= r) {
      pts.push_back(AffineObject<K>::point(t.field(), pt));
      mult.push_back(idx.size());
    }
  }
  // Map keys are ordered the same way as canonical points, so the
  // multiplicities stay aligned after the set sorts its members.
  return {r, VarietySet<K>(t.field(), t.ambient_dim(), std::move(pts)), std::move(mult)};
}

struct KFreeWitness {
  std::size_t t_first = 0, t_second = 0;   // indices into T
  std::vector<std::size_t> shared_points;  // k indices into S
};

struct KFreeResult {
  bool k_free = true;
  std::optional<KFreeWitness> witness;
};

/// No k points of S lie together in two distinct members of T, decided by
/// counting |S ∩ t ∩ t'| over all pairs.
template <ExactField K>
KFreeResult k_free_check(const VarietySet<K>& s, const VarietySet<K>& t, std::size_t k) {
  if (k < 2) throw InputError("k-freeness needs k >= 2");
  if (s.member_dim() && *s.member_dim() != 0) throw InputError("k_free_check expects S to be a point set");
  if (s.ambient_dim() != t.ambient_dim()) throw InputError("S and T in different ambient dimensions");
  std::vector<std::vector<std::size_t>> inside(t.size());
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t i = 0; i < s.size(); ++i)
      if (contains(t[j], s[i])) inside[j].push_back(i);
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (inside[a].size() < k) continue;
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      std::vector<std::size_t> shared;
      std::set_intersection(inside[a].begin(), inside[a].end(), inside[b].begin(), inside[b].end(),
                            std::back_inserter(shared));
      if (shared.size() >= k) {
        shared.resize(k);
        return {false, KFreeWitness{a, b, std::move(shared)}};
      }
    }
  }
  return {true, std::nullopt};
}

struct BezoutCheck {
  bool contained = false;
  std::size_t count = 0;  // base-field points of Z(f) ∩ l when not contained
  int degree = -1;        // deg f
};

template <ExactField K>
BezoutCheck bezout_line_check(const AffineObject<K>& l, const MultiPoly<K>& f) {
  const auto r = restrict_to_line_dense(f, l);
  if (r.is_zero()) return {true, 0, f.total_degree()};
  return {false, count_roots(r), f.total_degree()};
}

/// 2|S||T|^(1-1/k) + (k-1)|T|, in floating point (reporting and margins only).
inline double trivial_bound(std::uint64_t s_count, std::uint64_t t_count, std::uint64_t k) {
  if (k < 2) throw InputError("trivial_bound needs k >= 2");
  const double kk = static_cast<double>(k);
  return 2.0 * static_cast<double>(s_count) * std::pow(static_cast<double>(t_count), 1.0 - 1.0 / kk) +
         (kk - 1.0) * static_cast<double>(t_count);
}

/// Integer LHS against a real RHS, with the tolerance added to the bound side.
inline bool within_bound(std::uint64_t lhs, double rhs, double tol = 1e-9) {
  return static_cast<double>(lhs) <= rhs + tol;
}

}  // namespace ilab
