#pragma once

/**
 * @file geom.hpp
 * @brief Points, lines and flats of K^n in canonical form.
 *
 * An affine object is stored parametrically as base + span(basis). The
 * canonical representative keeps `basis` as the nonzero rows of the RREF of
 * the direction span and reduces `base` so that it is zero in every pivot
 * coordinate of that span. Two objects are equal as sets iff their canonical
 * encodings coincide, which makes ordering, deduplication and hashing cheap.
 *
 * All objects here have degree 1.
 */

#include <ilab/matrix.hpp>

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace ilab {

enum class ObjectKind { point, line, flat };

inline const char* to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::point: return "point";
    case ObjectKind::line: return "line";
    case ObjectKind::flat: return "flat";
  }
  return "?";
}

namespace detail {

template <ExactField K>
std::strong_ordering compare_vectors(const Vector<K>& a, const Vector<K>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

template <ExactField K>
class AffineObject {
 public:
  /// base + span(directions); directions must be linearly independent.
  static AffineObject from_parametrization(const FieldSpec& field, Vector<K> base,
                                           const std::vector<Vector<K>>& directions) {
    return AffineObject(field, std::move(base), directions, /*allow_dependent=*/false);
  }

  /// Smallest flat through `base` with direction space span(directions).
  static AffineObject spanned_by(const FieldSpec& field, Vector<K> base, const std::vector<Vector<K>>& directions) {
    return AffineObject(field, std::move(base), directions, /*allow_dependent=*/true);
  }

  static AffineObject point(const FieldSpec& field, Vector<K> coords) {
    return AffineObject(field, std::move(coords), {}, false);
  }

  static AffineObject line(const FieldSpec& field, Vector<K> base, Vector<K> dir) {
    return AffineObject(field, std::move(base), {std::move(dir)}, false);
  }

  static AffineObject whole_space(const FieldSpec& field, std::size_t n) {
    std::vector<Vector<K>> dirs;
    for (std::size_t i = 0; i < n; ++i) {
      Vector<K> e(n, K::from_int(field, 0));
      e[i] = K::from_int(field, 1);
      dirs.push_back(std::move(e));
    }
    return AffineObject(field, Vector<K>(n, K::from_int(field, 0)), dirs, false);
  }

  const FieldSpec& field() const { return field_; }
  std::size_t ambient_dim() const { return base_.size(); }
  std::size_t dim() const { return basis_.size(); }
  std::size_t degree() const { return 1; }
  ObjectKind kind() const {
    return dim() == 0 ? ObjectKind::point : dim() == 1 ? ObjectKind::line : ObjectKind::flat;
  }

  const Vector<K>& base() const { return base_; }
  const std::vector<Vector<K>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Direction of a line (the single basis vector).
  const Vector<K>& direction() const { return basis_.at(0); }

  bool direction_in_span(const Vector<K>& v) const {
    Vector<K> w = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const K c = w[pivots_[i]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (!basis_[i][j].is_zero()) w[j] -= c * basis_[i][j];
    }
    return std::all_of(w.begin(), w.end(), [](const K& x) { return x.is_zero(); });
  }

  bool contains_point(const Vector<K>& x) const {
    Vector<K> d(x.size(), K::from_int(field_, 0));
    for (std::size_t j = 0; j < x.size(); ++j) d[j] = x[j] - base_[j];
    return direction_in_span(d);
  }

  /// base + Σ params[j] · basis[j]
  Vector<K> point_at(const Vector<K>& params) const {
    Vector<K> x = base_;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += params[i] * basis_[i][j];
    return x;
  }

  friend bool operator==(const AffineObject& a, const AffineObject& b) {
    return a.base_ == b.base_ && a.basis_ == b.basis_;
  }

  /// Total order on canonical encodings: (ambient dim, dim, basis rows, base).
  friend std::strong_ordering operator<=>(const AffineObject& a, const AffineObject& b) {
    if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    for (std::size_t i = 0; i < a.basis_.size(); ++i)
      if (auto c = detail::compare_vectors(a.basis_[i], b.basis_[i]); c != 0) return c;
    return detail::compare_vectors(a.base_, b.base_);
  }

  std::string to_string() const {
    auto vec = [](const Vector<K>& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
      return s + ")";
    };
    std::string s = std::string(ilab::to_string(kind())) + " " + vec(base_);
    for (const auto& b : basis_) s += " + t" + vec(b);
    return s;
  }

 private:
  AffineObject(const FieldSpec& field, Vector<K> base, const std::vector<Vector<K>>& directions,
               bool allow_dependent)
      : field_(field), base_(std::move(base)) {
    const std::size_t n = base_.size();
    if (n == 0) throw InputError("affine objects need ambient dimension >= 1");
    for (const K& x : base_) check_scalar(x);
    Matrix<K> dirs(field_, 0, n);
    for (const auto& d : directions) {
      if (d.size() != n) throw InputError("direction vector length differs from ambient dimension");
      dirs.append_row(d);
    }
    auto ech = rref(dirs);
    if (!allow_dependent && ech.rank < directions.size())
      throw InputError("direction vectors are linearly dependent");
    for (std::size_t i = 0; i < ech.rank; ++i)
      basis_.emplace_back(ech.matrix.row(i).begin(), ech.matrix.row(i).end());
    pivots_ = std::move(ech.pivot_cols);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const K c = base_[pivots_[i]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) base_[j] -= c * basis_[i][j];
    }
  }

  void check_scalar(const K& x) const {
    if constexpr (std::same_as<K, Fp>) {
      if (x.modulus() != 0 && !(x.spec() == field_))
        throw InputError("coordinate in " + x.spec().name() + " for object over " + field_.name());
    } else if (field_.is_prime_field()) {
      throw InputError("rational coordinate for object over " + field_.name());
    }
  }

  FieldSpec field_;
  Vector<K> base_;
  std::vector<Vector<K>> basis_;
  std::vector<std::size_t> pivots_;
};

/// A deduplicated, canonically sorted collection of equal-dimension objects.
template <ExactField K>
class VarietySet {
 public:
  VarietySet(const FieldSpec& field, std::size_t ambient_dim, std::vector<AffineObject<K>> members = {})
      : field_(field), ambient_dim_(ambient_dim), members_(std::move(members)) {
    for (const auto& m : members_) {
      if (!(m.field() == field_)) throw InputError("member over " + m.field().name() + " in set over " + field_.name());
      if (m.ambient_dim() != ambient_dim_) throw InputError("member ambient dimension differs from set");
      if (m.dim() != members_.front().dim()) throw InputError("members of a variety set must share their dimension");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const FieldSpec& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<AffineObject<K>>& members() const { return members_; }
  const AffineObject<K>& operator[](std::size_t i) const { return members_[i]; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  std::size_t total_degree() const {
    std::size_t d = 0;
    for (const auto& m : members_) d += m.degree();
    return d;
  }

  /// Common member dimension, absent for the empty set.
  std::optional<std::size_t> member_dim() const {
    if (members_.empty()) return std::nullopt;
    return members_.front().dim();
  }

  bool holds(const AffineObject<K>& x) const { return std::binary_search(members_.begin(), members_.end(), x); }

  VarietySet subset(const std::vector<std::size_t>& indices) const {
    std::vector<AffineObject<K>> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(members_.at(i));
    return VarietySet(field_, ambient_dim_, std::move(out));
  }

  /// Members not in `other`.
  VarietySet minus(const VarietySet& other) const {
    std::vector<AffineObject<K>> out;
    std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
    return VarietySet(field_, ambient_dim_, std::move(out));
  }

  bool operator==(const VarietySet& o) const {
    return field_ == o.field_ && ambient_dim_ == o.ambient_dim_ && members_ == o.members_;
  }

 private:
  FieldSpec field_;
  std::size_t ambient_dim_;
  std::vector<AffineObject<K>> members_;
};

namespace detail {

template <ExactField K>
void require_same_space(const AffineObject<K>& a, const AffineObject<K>& b) {
  if (!(a.field() == b.field())) throw InputError("objects over different fields");
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("objects in different ambient dimensions");
}

}  // namespace detail

/// inner ⊆ outer, by exact linear algebra on the canonical forms.
template <ExactField K>
bool contains(const AffineObject<K>& outer, const AffineObject<K>& inner) {
  detail::require_same_space(outer, inner);
  if (inner.dim() > outer.dim()) return false;
  if (!outer.contains_point(inner.base())) return false;
  for (const auto& d : inner.basis())
    if (!outer.direction_in_span(d)) return false;
  return true;
}

/// The unique common point of two distinct lines, or nothing for parallel or
/// skew lines.
template <ExactField K>
std::optional<Vector<K>> intersect_lines(const AffineObject<K>& a, const AffineObject<K>& b) {
  detail::require_same_space(a, b);
  if (a.dim() != 1 || b.dim() != 1) throw InputError("intersect_lines expects two lines");
  if (a == b) throw InputError("intersect_lines called on identical lines");
  const FieldSpec& f = a.field();
  const std::size_t n = a.ambient_dim();
  // a.base + s·a.dir = b.base + t·b.dir  <=>  s·a.dir - t·b.dir = b.base - a.base
  Matrix<K> sys(f, n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    sys(i, 0) = a.direction()[i];
    sys(i, 1) = -b.direction()[i];
    sys(i, 2) = b.base()[i] - a.base()[i];
  }
  auto ech = rref(sys);
  if (ech.rank != 2 || ech.pivot_cols[0] != 0 || ech.pivot_cols[1] != 1) return std::nullopt;
  Vector<K> pt = a.base();
  const K s = ech.matrix(0, 2);
  for (std::size_t i = 0; i < n; ++i) pt[i] += s * a.direction()[i];
  return pt;
}

/// Members of `ts` contained in `w`.
template <ExactField K>
VarietySet<K> restrict_to(const VarietySet<K>& ts, const AffineObject<K>& w) {
  std::vector<AffineObject<K>> kept;
  for (const auto& t : ts.members())
    if (contains(w, t)) kept.push_back(t);
  return VarietySet<K>(ts.field(), ts.ambient_dim(), std::move(kept));
}

/// Smallest flat containing every input object.
template <ExactField K>
AffineObject<K> span_of(const std::vector<AffineObject<K>>& objects) {
  if (objects.empty()) throw InputError("span_of needs at least one object");
  const auto& first = objects.front();
  std::vector<Vector<K>> dirs;
  for (const auto& o : objects) {
    detail::require_same_space(first, o);
    for (const auto& d : o.basis()) dirs.push_back(d);
    if (&o != &first) {
      Vector<K> diff = o.base();
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= first.base()[j];
      dirs.push_back(std::move(diff));
    }
  }
  return AffineObject<K>::spanned_by(first.field(), first.base(), dirs);
}

}  // namespace ilab
