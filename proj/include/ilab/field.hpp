#pragma once

/**
 * @file field.hpp
 * @brief Exact scalars: prime-field residues and arbitrary-precision rationals.
 *
 * Every algorithm in ilab is a template over a scalar type satisfying
 * ExactField. Two models are provided:
 *
 * - Fp: residues modulo a runtime prime p < 2^31. The modulus travels with
 *   each value so that mixing fields is caught at the point of arithmetic.
 *   A default-constructed Fp is an unbound zero that adopts the modulus of
 *   the other operand.
 * - Rational: reduced fractions backed by GMP's mpq_class.
 */

#include <gmpxx.h>

#include <charconv>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ilab {

/// Malformed or inconsistent input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

struct FieldSpec {
  enum class Kind { prime, rational };

  Kind kind = Kind::rational;
  std::uint32_t p = 0;

  static FieldSpec prime(std::uint64_t modulus) {
    if (modulus >= (std::uint64_t{1} << 31))
      throw InputError("prime modulus must be below 2^31, got " + std::to_string(modulus));
    if (!is_prime(modulus)) throw InputError(std::to_string(modulus) + " is not prime");
    return FieldSpec{Kind::prime, static_cast<std::uint32_t>(modulus)};
  }
  static FieldSpec rational() { return FieldSpec{Kind::rational, 0}; }

  bool is_prime_field() const { return kind == Kind::prime; }
  bool operator==(const FieldSpec&) const = default;

  std::string name() const { return is_prime_field() ? "F_" + std::to_string(p) : "Q"; }
};

namespace detail {

inline std::int64_t parse_int64(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InputError("malformed integer literal '" + std::string(s) + "'");
  return v;
}

// Accepts a leading U+2011 (non-breaking hyphen) as a minus sign as well.
inline std::string normalize_minus(std::string_view s) {
  static constexpr std::string_view nb_hyphen = "\xE2\x80\x91";
  std::string out(s);
  if (out.starts_with(nb_hyphen)) out = "-" + out.substr(nb_hyphen.size());
  return out;
}

}  // namespace detail

class Fp {
 public:
  constexpr Fp() = default;

  Fp(const FieldSpec& spec, std::int64_t value) : p_(spec.p) {
    if (!spec.is_prime_field() || p_ == 0) throw InputError("Fp requires a prime field spec");
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    v_ = static_cast<std::uint32_t>(r);
  }

  static Fp from_int(const FieldSpec& spec, std::int64_t v) { return Fp(spec, v); }
  static Fp zero(const FieldSpec& spec) { return Fp(spec, 0); }
  static Fp one(const FieldSpec& spec) { return Fp(spec, 1); }

  /// Decimal integer or fraction "a/b" (interpreted as a * b^-1).
  static Fp parse(const FieldSpec& spec, std::string_view text) {
    std::string s = detail::normalize_minus(text);
    auto slash = s.find('/');
    if (slash == std::string::npos) return Fp(spec, detail::parse_int64(s));
    Fp num(spec, detail::parse_int64(std::string_view(s).substr(0, slash)));
    Fp den(spec, detail::parse_int64(std::string_view(s).substr(slash + 1)));
    return num / den;
  }

  std::uint32_t residue() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::prime, p_}; }
  bool is_zero() const { return v_ == 0; }

  Fp inv() const {
    if (v_ == 0) throw InputError("division by zero in " + spec().name());
    // Extended Euclid on (v, p).
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    Fp r;
    r.p_ = p_;
    r.v_ = static_cast<std::uint32_t>(((x0 % p_) + p_) % p_);
    return r;
  }

  Fp operator-() const {
    Fp r = *this;
    if (v_ != 0) r.v_ = p_ - v_;
    return r;
  }
  Fp& operator+=(const Fp& o) {
    p_ = common(o);
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    p_ = common(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t{v_} + p_ - o.v_);
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    p_ = common(o);
    v_ = p_ == 0 ? 0 : static_cast<std::uint32_t>(std::uint64_t{v_} * o.v_ % p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Fp& a, const Fp& b) { return a.v_ <=> b.v_; }

  std::string to_string() const { return std::to_string(v_); }
  std::size_t hash() const { return std::hash<std::uint32_t>{}(v_); }

 private:
  std::uint32_t common(const Fp& o) const {
    if (p_ == o.p_ || o.p_ == 0) return p_;
    if (p_ == 0) return o.p_;
    throw InputError("mixed field specs: F_" + std::to_string(p_) + " vs F_" + std::to_string(o.p_));
  }

  std::uint32_t p_ = 0;
  std::uint32_t v_ = 0;
};

class Rational {
 public:
  Rational() = default;
  Rational(const FieldSpec& spec, std::int64_t value) : q_(static_cast<long>(value)) {
    if (spec.is_prime_field()) throw InputError("Rational requires the rational field spec");
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational from_int(const FieldSpec& spec, std::int64_t v) { return Rational(spec, v); }
  static Rational zero(const FieldSpec& spec) { return Rational(spec, 0); }
  static Rational one(const FieldSpec& spec) { return Rational(spec, 1); }

  static Rational parse(const FieldSpec& spec, std::string_view text) {
    if (spec.is_prime_field()) throw InputError("Rational requires the rational field spec");
    std::string s = detail::normalize_minus(text);
    if (s.starts_with('+')) s.erase(0, 1);
    if (s.empty()) throw InputError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational literal '" + std::string(text) + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpq_class& value() const { return q_; }
  FieldSpec spec() const { return FieldSpec::rational(); }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational inv() const {
    if (is_zero()) throw InputError("division by zero in Q");
    return Rational(mpq_class(1) / q_);
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero in Q");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

  std::string to_string() const { return q_.get_str(10); }
  std::size_t hash() const { return std::hash<std::string>{}(to_string()); }

 private:
  mpq_class q_;
};

template <class K>
concept ExactField = std::regular<K> && std::three_way_comparable<K, std::strong_ordering> &&
                     requires(const K a, const K b, const FieldSpec& s, std::int64_t n, std::string_view t) {
                       { K::from_int(s, n) } -> std::same_as<K>;
                       { K::parse(s, t) } -> std::same_as<K>;
                       { a + b } -> std::same_as<K>;
                       { a - b } -> std::same_as<K>;
                       { a * b } -> std::same_as<K>;
                       { a / b } -> std::same_as<K>;
                       { -a } -> std::same_as<K>;
                       { a.inv() } -> std::same_as<K>;
                       { a.is_zero() } -> std::convertible_to<bool>;
                       { a.spec() } -> std::same_as<FieldSpec>;
                       { a.to_string() } -> std::convertible_to<std::string>;
                     };

static_assert(ExactField<Fp>);
static_assert(ExactField<Rational>);

template <ExactField K>
K power(K base, std::uint64_t e) {
  K result = K::from_int(base.spec(), 1);
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

/// Scalar type matching a field spec kind.
template <ExactField K>
bool field_matches(const FieldSpec& spec) {
  if constexpr (std::same_as<K, Fp>) return spec.is_prime_field();
  else return !spec.is_prime_field();
}

/// Invokes f(std::type_identity<K>{}) with the scalar type for `spec`.
template <class F>
decltype(auto) with_field(const FieldSpec& spec, F&& f) {
  if (spec.is_prime_field()) return std::forward<F>(f)(std::type_identity<Fp>{});
  return std::forward<F>(f)(std::type_identity<Rational>{});
}

}  // namespace ilab
