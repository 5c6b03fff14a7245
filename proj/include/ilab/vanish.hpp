#pragma once

/**
 * @file vanish.hpp
 * @brief Vanishing polynomials by parameter counting, and relative degrees.
 *
 * A degree-D polynomial vanishes at a point under one linear condition on its
 * C(D+n, n) coefficients and on a line under D+1 conditions (all coefficients
 * of its restriction). A nonzero solution therefore exists as soon as
 * C(D+n, n) exceeds #points + (D+1)·#lines.
 *
 * relative_degree finds the smallest D admitting a polynomial that vanishes on
 * X without vanishing identically on any of the given flats W_i. Per flat this
 * is a kernel containment test; a single polynomial good for every flat at
 * once is then assembled from kernel basis vectors by successive linear
 * combination.
 */

#include <ilab/mpoly.hpp>

#include <optional>
#include <stdexcept>

namespace ilab {

/// X contains a member that contains some W_i, so nothing vanishing on X
/// can avoid W_i.
class NoSeparation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <ExactField K>
struct VanishResult {
  std::size_t degree = 0;
  std::optional<MultiPoly<K>> polynomial;
  std::size_t kernel_dim = 0;
  std::size_t constraint_count = 0;
  std::size_t monomial_count = 0;
};

template <ExactField K>
struct VanishingSpace {
  std::size_t degree = 0;
  MonomialBasis basis;
  Matrix<K> constraints;
  std::vector<Vector<K>> kernel;
};

template <ExactField K>
struct RelativeDegreeResult {
  std::size_t degree = 0;
  MultiPoly<K> witness;
  std::vector<AffineObject<K>> avoided;
};

/// Stacked vanishing conditions of all members over MonomialBasis(n, D).
template <ExactField K>
Matrix<K> vanishing_constraints(const VarietySet<K>& ts, const MonomialBasis& basis) {
  Matrix<K> m(ts.field(), 0, basis.size());
  for (const auto& t : ts.members()) {
    if (t.dim() == 0) m = m.stacked(point_vanishing_constraint(t, basis));
    else if (t.dim() == 1) m = m.stacked(line_vanishing_constraints(t, basis));
    else throw InputError("vanishing constraints are only encoded for points and lines");
  }
  return m;
}

template <ExactField K>
VanishingSpace<K> vanishing_space(const VarietySet<K>& ts, std::size_t D) {
  MonomialBasis basis(ts.ambient_dim(), D);
  Matrix<K> c = vanishing_constraints(ts, basis);
  auto kernel = kernel_basis(c);
  return {D, std::move(basis), std::move(c), std::move(kernel)};
}

/// Smallest D with C(D+n, n) > #points + (D+1)·#lines.
template <ExactField K>
std::size_t parameter_count_degree(const VarietySet<K>& ts) {
  std::size_t points = 0, lines = 0;
  for (const auto& t : ts.members()) (t.dim() == 0 ? points : lines) += 1;
  for (std::size_t D = 0;; ++D)
    if (binomial(D + ts.ambient_dim(), ts.ambient_dim()) > points + (D + 1) * lines) return D;
}

template <ExactField K>
VanishResult<K> vanishing_poly(const VarietySet<K>& ts, std::size_t D) {
  auto space = vanishing_space(ts, D);
  VanishResult<K> r;
  r.degree = D;
  r.kernel_dim = space.kernel.size();
  r.constraint_count = space.constraints.rows();
  r.monomial_count = space.basis.size();
  if (!space.kernel.empty()) {
    auto f = from_coefficients(ts.field(), space.basis, space.kernel.front());
    for (const auto& t : ts.members())
      if (!vanishes_on(f, t)) throw std::logic_error("kernel polynomial fails to vanish on " + t.to_string());
    r.polynomial = std::move(f);
  }
  return r;
}

/// First degree with a nonzero vanishing polynomial. `max_degree` caps the
/// sweep; the result is absent only when the cap is hit first.
template <ExactField K>
VanishResult<K> min_vanishing_degree(const VarietySet<K>& ts, std::optional<std::size_t> max_degree = std::nullopt) {
  const std::size_t bound = parameter_count_degree(ts);
  const std::size_t last = max_degree ? std::min(*max_degree, bound) : bound;
  VanishResult<K> r;
  for (std::size_t D = 0; D <= last; ++D) {
    r = vanishing_poly(ts, D);
    if (r.polynomial) return r;
  }
  return r;
}

namespace detail {

template <ExactField K>
bool is_zero_vector_of(const Vector<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <ExactField K>
Vector<K> axpy(const Vector<K>& x, const K& a, const Vector<K>& y) {
  Vector<K> out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * y[i];
  return out;
}

// Smallest D guaranteed to admit, for this single flat, a polynomial vanishing
// on X but not identically on w: a witness inside w times one linear form per
// member outside w.
template <ExactField K>
std::size_t single_flat_degree_bound(const VarietySet<K>& xs, const AffineObject<K>& w) {
  std::size_t pts_in = 0, lines_in = 0, outside = 0;
  for (const auto& x : xs.members()) {
    if (contains(w, x)) (x.dim() == 0 ? pts_in : lines_in) += 1;
    else ++outside;
  }
  for (std::size_t D = 0;; ++D)
    if (binomial(D + w.dim(), w.dim()) > pts_in + (D + 1) * lines_in) return D + outside;
}

}  // namespace detail

/// Smallest degree of a polynomial vanishing on xs without vanishing
/// identically on any flat in ws, with a witness.
template <ExactField K>
RelativeDegreeResult<K> relative_degree(const VarietySet<K>& xs, const std::vector<AffineObject<K>>& ws) {
  const FieldSpec& field = xs.field();
  for (const auto& w : ws) {
    if (w.ambient_dim() != xs.ambient_dim() || !(w.field() == field))
      throw InputError("avoided flats must share the ambient space of X");
    for (const auto& x : xs.members())
      if (contains(x, w))
        throw NoSeparation("no separation: " + x.to_string() + " contains the avoided flat " + w.to_string());
  }

  std::size_t cap = parameter_count_degree(xs);
  for (const auto& w : ws) cap = std::max(cap, detail::single_flat_degree_bound(xs, w));
  if (field.is_prime_field()) cap += ws.size();

  for (std::size_t D = 0; D <= cap; ++D) {
    auto space = vanishing_space(xs, D);
    if (space.kernel.empty()) continue;
    std::vector<Matrix<K>> restrict;
    bool all_separable = true;
    for (const auto& w : ws) {
      restrict.push_back(flat_restriction_matrix(w, space.basis));
      if (kernel_contained(space.constraints, restrict.back())) {
        all_separable = false;
        break;
      }
    }
    if (!all_separable) continue;

    auto alive_on = [&](const Vector<K>& v, std::size_t i) {
      return !detail::is_zero_vector_of(restrict[i].apply(v));
    };
    auto alive_on_all = [&](const Vector<K>& v) {
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (!alive_on(v, i)) return false;
      return true;
    };

    std::optional<Vector<K>> witness;
    for (const auto& v : space.kernel)
      if (alive_on_all(v)) {
        witness = v;
        break;
      }

    if (!witness) {
      // Repair one flat at a time: f <- f + c·v with v alive on the flat that
      // f dies on. Each flat f is already alive on forbids at most one c.
      Vector<K> f = space.kernel.front();
      bool ok = true;
      for (std::size_t i = 0; i < ws.size() && ok; ++i) {
        if (alive_on(f, i)) continue;
        const Vector<K>* fix = nullptr;
        for (const auto& v : space.kernel)
          if (alive_on(v, i)) {
            fix = &v;
            break;
          }
        bool repaired = false;
        const std::int64_t tries = static_cast<std::int64_t>(ws.size()) + 1;
        for (std::int64_t c = 1; c <= tries && !repaired; ++c) {
          if (field.is_prime_field() && static_cast<std::uint64_t>(c) >= field.p) break;
          Vector<K> g = detail::axpy(f, K::from_int(field, c), *fix);
          bool good = true;
          for (std::size_t j = 0; j <= i && good; ++j) good = alive_on(g, j);
          if (good) {
            f = std::move(g);
            repaired = true;
          }
        }
        ok = repaired;
      }
      if (ok && alive_on_all(f)) witness = std::move(f);
    }
    if (!witness) continue;

    auto poly = from_coefficients(field, space.basis, *witness);
    return {D, std::move(poly), ws};
  }
  throw NoSeparation("no separating polynomial found up to degree " + std::to_string(cap) + " over " + field.name());
}

}  // namespace ilab
