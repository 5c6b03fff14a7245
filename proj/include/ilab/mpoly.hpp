#pragma once

/**
 * @file mpoly.hpp
 * @brief Sparse multivariate polynomials with exact coefficients.
 *
 * Terms live in a map keyed by exponent vector under graded-lex order
 * (total degree first, then lexicographic with x_1 most significant), so the
 * ascending order reads 1, x_n, ..., x_1, x_n^2, ... . The same order fixes
 * the columns of every constraint matrix built over a MonomialBasis.
 *
 * Restriction to a line or flat substitutes the affine parametrization
 * symbolically; the result is the zero polynomial iff the object lies in
 * Z(f), independently of the field size.
 */

#include <ilab/geom.hpp>
#include <ilab/univariate.hpp>

#include <map>
#include <numeric>
#include <stdexcept>

namespace ilab {

using Exponent = std::vector<std::uint32_t>;

inline std::uint32_t exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0U); }

struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const auto da = exponent_degree(a), db = exponent_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <ExactField K>
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, K, GrlexLess>;

  MultiPoly(const FieldSpec& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static MultiPoly constant(const FieldSpec& field, std::size_t nvars, const K& c) {
    MultiPoly f(field, nvars);
    f.add_term(Exponent(nvars, 0), c);
    return f;
  }
  static MultiPoly variable(const FieldSpec& field, std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    MultiPoly f(field, nvars);
    f.add_term(std::move(e), K::from_int(field, 1));
    return f;
  }

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Maximum exponent sum; -1 flags the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(exponent_degree(terms_.rbegin()->first));
  }

  K coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K::from_int(field_, 0) : it->second;
  }

  /// Adds c·x^e, dropping the term if it cancels.
  void add_term(Exponent e, const K& c) {
    if (e.size() != nvars_) throw InputError("exponent length differs from number of variables");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.field_, a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const K& s, MultiPoly f) {
    if (s.is_zero()) return MultiPoly(f.field_, f.nvars_);
    for (auto& [e, c] : f.terms_) c *= s;
    return f;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  K evaluate(const Vector<K>& x) const {
    if (x.size() != nvars_) throw InputError("evaluation point has wrong dimension");
    K acc = K::from_int(field_, 0);
    std::vector<std::vector<K>> pw(nvars_);
    for (const auto& [e, c] : terms_) {
      K term = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& cache = pw[i];
        if (cache.empty()) cache.push_back(K::from_int(field_, 1));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * x[i]);
        term *= cache[e[i]];
      }
      acc += term;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += it->second.to_string();
      for (std::size_t i = 0; i < nvars_; ++i)
        if (it->first[i]) s += "*x" + std::to_string(i + 1) + (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
    }
    return s;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw InputError("polynomials in different numbers of variables");
    if (!(o.field_ == field_)) throw InputError("polynomials over different fields");
  }

  FieldSpec field_;
  std::size_t nvars_;
  TermMap terms_;
};

/// C(n, k) exactly; throws on 64-bit overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

/// All exponent vectors in n variables with total degree <= D, ascending grlex.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t nvars, std::size_t max_degree) : nvars_(nvars), max_degree_(max_degree) {
    Exponent cur(nvars, 0);
    for (std::size_t d = 0; d <= max_degree; ++d) {
      const std::size_t first = monomials_.size();
      enumerate(cur, 0, static_cast<std::uint32_t>(d));
      std::sort(monomials_.begin() + static_cast<std::ptrdiff_t>(first), monomials_.end());
    }
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Exponent>& monomials() const { return monomials_; }
  const Exponent& operator[](std::size_t i) const { return monomials_[i]; }

  std::optional<std::size_t> index_of(const Exponent& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void enumerate(Exponent& cur, std::size_t var, std::uint32_t remaining) {
    if (var + 1 == nvars_ || nvars_ == 0) {
      if (nvars_ == 0) {
        if (remaining == 0) monomials_.push_back(cur);
        return;
      }
      cur[var] = remaining;
      monomials_.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
      cur[var] = e;
      enumerate(cur, var + 1, remaining - e);
    }
    cur[var] = 0;
  }

  std::size_t nvars_;
  std::size_t max_degree_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> index_;
};

template <ExactField K>
MultiPoly<K> from_coefficients(const FieldSpec& field, const MonomialBasis& basis, const Vector<K>& coeffs) {
  if (coeffs.size() != basis.size()) throw InputError("coefficient vector length differs from monomial basis");
  MultiPoly<K> f(field, basis.nvars());
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term(basis[i], coeffs[i]);
  return f;
}

/// Dense coefficients of f over `basis`; throws if f has a term outside it.
template <ExactField K>
Vector<K> to_coefficients(const MultiPoly<K>& f, const MonomialBasis& basis) {
  Vector<K> out(basis.size(), K::from_int(f.field(), 0));
  for (const auto& [e, c] : f.terms()) {
    auto idx = basis.index_of(e);
    if (!idx) throw InputError("polynomial has a term outside the monomial basis");
    out[*idx] = c;
  }
  return out;
}

namespace detail {

// Powers L^0..L^maxdeg of each coordinate's restriction L_i(t) = b_i + d_i t.
template <ExactField K>
std::vector<std::vector<UPoly<K>>> line_coordinate_powers(const AffineObject<K>& l, std::size_t maxdeg) {
  const FieldSpec& f = l.field();
  std::vector<std::vector<UPoly<K>>> pw(l.ambient_dim());
  for (std::size_t i = 0; i < l.ambient_dim(); ++i) {
    UPoly<K> lin(std::vector<K>{l.base()[i], l.direction()[i]});
    pw[i].push_back(UPoly<K>(std::vector<K>{K::from_int(f, 1)}));
    for (std::size_t e = 1; e <= maxdeg; ++e) pw[i].push_back(pw[i].back() * lin);
  }
  return pw;
}

template <ExactField K>
UPoly<K> restrict_monomial(const std::vector<std::vector<UPoly<K>>>& pw, const Exponent& e, const FieldSpec& f) {
  UPoly<K> r(std::vector<K>{K::from_int(f, 1)});
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) r = r * pw[i][e[i]];
  return r;
}

template <ExactField K>
void check_object_for(const MultiPoly<K>& f, const AffineObject<K>& w) {
  if (w.ambient_dim() != f.nvars())
    throw InputError("object in K^" + std::to_string(w.ambient_dim()) + " vs polynomial in " +
                     std::to_string(f.nvars()) + " variables");
  if (!(w.field() == f.field())) throw InputError("object and polynomial over different fields");
}

}  // namespace detail

/// f(base + t·dir) as a dense univariate polynomial in t.
template <ExactField K>
UPoly<K> restrict_to_line_dense(const MultiPoly<K>& f, const AffineObject<K>& l) {
  detail::check_object_for(f, l);
  if (l.dim() != 1) throw InputError("restrict_to_line expects a line");
  if (f.is_zero()) return {};
  const auto pw = detail::line_coordinate_powers(l, static_cast<std::size_t>(f.total_degree()));
  std::vector<K> acc(static_cast<std::size_t>(f.total_degree()) + 1, K::from_int(f.field(), 0));
  for (const auto& [e, c] : f.terms()) {
    const auto r = detail::restrict_monomial(pw, e, f.field());
    for (std::size_t k = 0; k < r.coeffs().size(); ++k) acc[k] += c * r.coeffs()[k];
  }
  return UPoly<K>(std::move(acc));
}

/// f(base + t·dir) as a polynomial in one variable.
template <ExactField K>
MultiPoly<K> restrict_to_line(const MultiPoly<K>& f, const AffineObject<K>& l) {
  const auto u = restrict_to_line_dense(f, l);
  MultiPoly<K> r(f.field(), 1);
  for (std::size_t k = 0; k < u.coeffs().size(); ++k) r.add_term(Exponent{static_cast<std::uint32_t>(k)}, u.coeffs()[k]);
  return r;
}

/// f(base + Σ u_j basis_j) as a polynomial in dim(w) parameters.
template <ExactField K>
MultiPoly<K> restrict_to_flat(const MultiPoly<K>& f, const AffineObject<K>& w) {
  detail::check_object_for(f, w);
  const FieldSpec& fs = f.field();
  const std::size_t m = w.dim(), n = w.ambient_dim();
  MultiPoly<K> out(fs, m);
  if (f.is_zero()) return out;
  // Coordinate i as an affine form in the parameters.
  std::vector<std::vector<MultiPoly<K>>> pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly<K> lin = MultiPoly<K>::constant(fs, m, w.base()[i]);
    for (std::size_t j = 0; j < m; ++j)
      lin += w.basis()[j][i] * MultiPoly<K>::variable(fs, m, j);
    pw[i].push_back(MultiPoly<K>::constant(fs, m, K::from_int(fs, 1)));
    pw[i].push_back(std::move(lin));
  }
  for (const auto& [e, c] : f.terms()) {
    MultiPoly<K> term = MultiPoly<K>::constant(fs, m, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      while (pw[i].size() <= e[i]) pw[i].push_back(pw[i].back() * pw[i][1]);
      term = term * pw[i][e[i]];
    }
    out += term;
  }
  return out;
}

/// True iff f vanishes identically on the object (symbolic, no sampling).
template <ExactField K>
bool vanishes_on(const MultiPoly<K>& f, const AffineObject<K>& x) {
  if (x.dim() == 0) {
    detail::check_object_for(f, x);
    return f.evaluate(x.base()).is_zero();
  }
  if (x.dim() == 1) return restrict_to_line_dense(f, x).is_zero();
  return restrict_to_flat(f, x).is_zero();
}

/// D+1 rows over `basis` (degree D): c is in their kernel iff the polynomial
/// with coefficients c restricts to zero on the line.
template <ExactField K>
Matrix<K> line_vanishing_constraints(const AffineObject<K>& l, const MonomialBasis& basis) {
  if (l.dim() != 1) throw InputError("line_vanishing_constraints expects a line");
  if (l.ambient_dim() != basis.nvars()) throw InputError("line and monomial basis differ in dimension");
  const FieldSpec& f = l.field();
  const std::size_t D = basis.max_degree();
  Matrix<K> m(f, D + 1, basis.size());
  const auto pw = detail::line_coordinate_powers(l, D);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto r = detail::restrict_monomial(pw, basis[j], f);
    for (std::size_t k = 0; k < r.coeffs().size(); ++k) m(k, j) = r.coeffs()[k];
  }
  return m;
}

/// Single row of monomial values at the point.
template <ExactField K>
Matrix<K> point_vanishing_constraint(const AffineObject<K>& pt, const MonomialBasis& basis) {
  if (pt.dim() != 0) throw InputError("point_vanishing_constraint expects a point");
  if (pt.ambient_dim() != basis.nvars()) throw InputError("point and monomial basis differ in dimension");
  const FieldSpec& f = pt.field();
  Matrix<K> m(f, 1, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    K v = K::from_int(f, 1);
    for (std::size_t i = 0; i < basis.nvars(); ++i) v *= power(pt.base()[i], basis[j][i]);
    m(0, j) = v;
  }
  return m;
}

/// Linear map coefficient vector over `basis` -> coefficients of the
/// restriction to w over MonomialBasis(dim w, D). Its kernel is the space of
/// polynomials vanishing identically on w.
template <ExactField K>
Matrix<K> flat_restriction_matrix(const AffineObject<K>& w, const MonomialBasis& basis) {
  if (w.ambient_dim() != basis.nvars()) throw InputError("flat and monomial basis differ in dimension");
  const FieldSpec& f = w.field();
  const MonomialBasis target(w.dim(), basis.max_degree());
  Matrix<K> m(f, target.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    MultiPoly<K> mono(f, basis.nvars());
    mono.add_term(basis[j], K::from_int(f, 1));
    const auto r = restrict_to_flat(mono, w);
    for (const auto& [e, c] : r.terms()) m(*target.index_of(e), j) = c;
  }
  return m;
}

}  // namespace ilab
