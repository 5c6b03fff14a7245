#pragma once

// JSON encodings for fields, scalars, object sets and polynomials, and the
// SHA-256 instance digest used in reports.
//
//   field:      {"kind":"prime","p":7} | {"kind":"rational"}
//   scalar:     decimal string, "13" or "-3/7"
//   object set: {"field":..,"ambient_dim":3,"objects":[
//                  {"kind":"point","coords":[..]},
//                  {"kind":"line","base":[..],"dir":[..]},
//                  {"kind":"flat","dim":2,"base":[..],"basis":[[..],[..]]}]}
//   polynomial: {"nvars":2,"terms":[{"exp":[2,0],"coef":"1"},..]}, terms in
//               descending graded-lex order

#include <ilab/geom.hpp>
#include <ilab/mpoly.hpp>

#include <json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <sstream>

namespace ilab {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const FieldSpec& f) {
  Json j;
  if (f.is_prime_field()) {
    j["kind"] = "prime";
    j["p"] = f.p;
  } else {
    j["kind"] = "rational";
  }
  return j;
}

inline FieldSpec field_from_json(const Json& j) {
  if (j.is_number_integer()) return FieldSpec::prime(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Q" || s == "rational") return FieldSpec::rational();
    return FieldSpec::prime(static_cast<std::uint64_t>(detail::parse_int64(s)));
  }
  if (!j.is_object() || !j.contains("kind")) throw InputError("field must be {\"kind\":...}");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "rational") return FieldSpec::rational();
  if (kind == "prime") {
    if (!j.contains("p") || !j.at("p").is_number_integer() || j.at("p").get<std::int64_t>() < 0)
      throw InputError("prime field needs a nonnegative integer \"p\"");
    return FieldSpec::prime(j.at("p").get<std::uint64_t>());
  }
  throw InputError("unknown field kind '" + kind + "'");
}

/// Field from a CLI string: a prime such as "101", or "Q".
inline FieldSpec parse_field(const std::string& s) { return field_from_json(Json(s)); }

namespace detail {

template <ExactField K>
Json vector_to_json(const Vector<K>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

template <ExactField K>
Vector<K> vector_from_json(const FieldSpec& f, const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    throw InputError(std::string(what) + ": expected an array of " + std::to_string(n) + " scalars");
  Vector<K> v;
  for (const auto& x : j) {
    if (x.is_string()) v.push_back(K::parse(f, x.get<std::string>()));
    else if (x.is_number_integer()) v.push_back(K::from_int(f, x.get<std::int64_t>()));
    else throw InputError(std::string(what) + ": scalars must be strings or integers");
  }
  return v;
}

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

template <ExactField K>
Json object_to_json(const AffineObject<K>& o) {
  Json j;
  switch (o.kind()) {
    case ObjectKind::point:
      j["kind"] = "point";
      j["coords"] = detail::vector_to_json(o.base());
      break;
    case ObjectKind::line:
      j["kind"] = "line";
      j["base"] = detail::vector_to_json(o.base());
      j["dir"] = detail::vector_to_json(o.direction());
      break;
    case ObjectKind::flat: {
      j["kind"] = "flat";
      j["dim"] = o.dim();
      j["base"] = detail::vector_to_json(o.base());
      Json b = Json::array();
      for (const auto& v : o.basis()) b.push_back(detail::vector_to_json(v));
      j["basis"] = b;
      break;
    }
  }
  return j;
}

template <ExactField K>
AffineObject<K> object_from_json(const FieldSpec& f, std::size_t n, const Json& j) {
  const auto kind = detail::require(j, "kind").get<std::string>();
  if (kind == "point") return AffineObject<K>::point(f, detail::vector_from_json<K>(f, detail::require(j, "coords"), n, "coords"));
  if (kind == "line")
    return AffineObject<K>::line(f, detail::vector_from_json<K>(f, detail::require(j, "base"), n, "base"),
                                 detail::vector_from_json<K>(f, detail::require(j, "dir"), n, "dir"));
  if (kind == "flat") {
    const auto& basis = detail::require(j, "basis");
    if (!basis.is_array()) throw InputError("flat basis must be an array");
    std::vector<Vector<K>> dirs;
    for (const auto& b : basis) dirs.push_back(detail::vector_from_json<K>(f, b, n, "basis"));
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != dirs.size())
      throw InputError("flat dim does not match its basis size");
    return AffineObject<K>::from_parametrization(f, detail::vector_from_json<K>(f, detail::require(j, "base"), n, "base"),
                                                 dirs);
  }
  throw InputError("unknown object kind '" + kind + "'");
}

template <ExactField K>
Json set_to_json(const VarietySet<K>& s) {
  Json j;
  j["field"] = field_to_json(s.field());
  j["ambient_dim"] = s.ambient_dim();
  Json objs = Json::array();
  for (const auto& o : s.members()) objs.push_back(object_to_json(o));
  j["objects"] = objs;
  return j;
}

template <ExactField K>
VarietySet<K> set_from_json(const Json& j) {
  const FieldSpec f = field_from_json(detail::require(j, "field"));
  if (!field_matches<K>(f)) throw InputError("object set field does not match the requested scalar type");
  const auto& nj = detail::require(j, "ambient_dim");
  if (!nj.is_number_integer() || nj.get<std::int64_t>() < 1) throw InputError("ambient_dim must be a positive integer");
  const auto n = nj.get<std::size_t>();
  const auto& objs = detail::require(j, "objects");
  if (!objs.is_array()) throw InputError("objects must be an array");
  std::vector<AffineObject<K>> members;
  for (const auto& o : objs) members.push_back(object_from_json<K>(f, n, o));
  return VarietySet<K>(f, n, std::move(members));
}

/// Objects listed without a wrapping set (e.g. flats to avoid): either a set
/// document or a bare array, read against a known field and dimension.
template <ExactField K>
std::vector<AffineObject<K>> objects_from_json(const FieldSpec& f, std::size_t n, const Json& j) {
  const Json& arr = j.is_array() ? j : detail::require(j, "objects");
  std::vector<AffineObject<K>> out;
  for (const auto& o : arr) out.push_back(object_from_json<K>(f, n, o));
  return out;
}

template <ExactField K>
Json poly_to_json(const MultiPoly<K>& p) {
  Json j;
  j["nvars"] = p.nvars();
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Json t;
    t["exp"] = it->first;
    t["coef"] = it->second.to_string();
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

template <ExactField K>
MultiPoly<K> poly_from_json(const FieldSpec& f, const Json& j) {
  const auto n = detail::require(j, "nvars").get<std::size_t>();
  MultiPoly<K> p(f, n);
  for (const auto& t : detail::require(j, "terms")) {
    const auto e = detail::require(t, "exp").get<Exponent>();
    if (e.size() != n) throw InputError("term exponent length differs from nvars");
    const auto& c = detail::require(t, "coef");
    p.add_term(e, c.is_string() ? K::parse(f, c.get<std::string>()) : K::from_int(f, c.get<std::int64_t>()));
  }
  return p;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

/// Hex SHA-256 of a string.
inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// Digest of the canonical (sorted, compact) JSON dump of an instance.
inline std::string instance_digest(const Json& instance) { return "sha256:" + sha256_hex(instance.dump()); }

}  // namespace ilab
