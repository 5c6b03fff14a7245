#pragma once

// Dense univariate polynomials, used for restrictions of multivariate
// polynomials to lines and for counting base-field roots.

#include <ilab/field.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

namespace ilab {

/// Coefficients from t^0 upwards; trimmed so the leading coefficient is
/// nonzero. The zero polynomial has no coefficients.
template <ExactField K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& lead() const { return c_.back(); }

  K operator()(const K& t) const {
    if (c_.empty()) return K{};
    K acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, K::from_int(a.lead().spec(), 0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(out));
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<K> out = a.c_;
    if (out.size() < b.c_.size()) {
      const FieldSpec f = b.lead().spec();
      out.resize(b.c_.size(), K::from_int(f, 0));
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return UPoly(std::move(out));
  }

  /// Remainder of a modulo a nonzero b.
  friend UPoly operator%(UPoly a, const UPoly& b) {
    if (b.is_zero()) throw InputError("polynomial remainder by zero");
    const K inv = b.lead().inv();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const K q = a.lead() * inv;
      const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
      for (std::size_t i = 0; i < b.c_.size(); ++i) a.c_[i + shift] -= q * b.c_[i];
      a.trim();
    }
    return a;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    const K inv = lead().inv();
    std::vector<K> out = c_;
    for (auto& x : out) x *= inv;
    return UPoly(std::move(out));
  }

  bool operator==(const UPoly& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <ExactField K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m.
template <ExactField K>
UPoly<K> powmod(UPoly<K> base, std::uint64_t e, const UPoly<K>& m) {
  const FieldSpec f = m.lead().spec();
  UPoly<K> result(std::vector<K>{K::from_int(f, 1)});
  result = result % m;
  base = base % m;
  while (e > 0) {
    if (e & 1U) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1U;
  }
  return result;
}

/// Number of distinct roots in F_p of a nonzero polynomial: deg gcd(g, t^p - t).
inline std::size_t count_roots(const UPoly<Fp>& g) {
  if (g.is_zero()) throw InputError("count_roots of the zero polynomial");
  if (g.degree() == 0) return 0;
  const FieldSpec f = g.lead().spec();
  const UPoly<Fp> t(std::vector<Fp>{Fp(f, 0), Fp(f, 1)});
  UPoly<Fp> tp = powmod(t, f.p, g);
  return static_cast<std::size_t>(gcd(g, tp - t).degree());
}

namespace detail {

// Positive divisors of |n| by trial division; n != 0.
inline std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  static const mpz_class limit("1000000000000");
  if (n > limit) throw InputError("rational root search: coefficient too large to factor (" + n.get_str() + ")");
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (mpz_class d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t sz = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace detail

/// Number of distinct rational roots, by the rational root theorem.
inline std::size_t count_roots(const UPoly<Rational>& g) {
  if (g.is_zero()) throw InputError("count_roots of the zero polynomial");
  if (g.degree() == 0) return 0;
  // Integer coefficients.
  mpz_class l = 1;
  for (const auto& c : g.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
  std::vector<mpz_class> a;
  for (const auto& c : g.coeffs()) a.push_back(c.value().get_num() * (l / c.value().get_den()));
  std::size_t count = 0;
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) ++count;  // t = 0
  if (low + 1 == a.size()) return count;
  const auto ps = detail::divisors(a[low]);
  const auto qs = detail::divisors(a.back());
  std::set<mpq_class> tried;
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int sign : {1, -1}) {
        mpq_class r(sign * p, q);
        r.canonicalize();
        if (!tried.insert(r).second) continue;
        if (g(Rational(r)).is_zero()) ++count;
      }
  return count;
}

}  // namespace ilab
