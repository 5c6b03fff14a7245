#pragma once

// Deterministic configuration generators. Identical configs (including the
// seed) always produce identical sets; degenerate draws are rejected with a
// bounded number of retries.

#include <ilab/geom.hpp>
#include <ilab/random.hpp>

#include <set>
#include <string>

namespace ilab {

enum class Family { generic_lines, lines_in_flats, grid, concurrent_bundle, direction_cover };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::generic_lines: return "generic_lines";
    case Family::lines_in_flats: return "lines_in_flats";
    case Family::grid: return "grid";
    case Family::concurrent_bundle: return "concurrent_bundle";
    case Family::direction_cover: return "direction_cover";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::generic_lines, Family::lines_in_flats, Family::grid, Family::concurrent_bundle,
                   Family::direction_cover})
    if (s == to_string(f)) return f;
  throw InputError("unknown family '" + s + "'");
}

struct GeneratorConfig {
  Family family = Family::generic_lines;
  FieldSpec field = FieldSpec::prime(101);
  std::size_t ambient_dim = 3;
  std::size_t count = 10;           // generic_lines, concurrent_bundle
  std::size_t flat_dim = 2;         // lines_in_flats
  std::size_t flats = 2;            // lines_in_flats
  std::size_t lines_per_flat = 3;   // lines_in_flats
  std::size_t grid_side = 3;        // grid
  bool grid_lines = false;          // grid: emit the 2g axis-parallel lines instead of the points
  bool general_position = true;     // lines_in_flats: no parallels or triple points inside a flat,
                                    // no meetings across flats
  std::int64_t rational_bound = 20; // coordinate range over Q
  std::uint64_t seed = 1;
};

template <ExactField K>
struct Generated {
  VarietySet<K> set;
  std::vector<AffineObject<K>> flats;  // designated containers (lines_in_flats only)
};

namespace detail {

inline constexpr std::size_t kMaxAttemptsPerObject = 2000;

// Number of lines in F_p^m: p^(m-1) (p^m - 1) / (p - 1); saturates.
inline std::uint64_t lines_in_affine_space(std::uint64_t p, std::size_t m) {
  long double total = 1;
  for (std::size_t i = 0; i + 1 < m; ++i) total *= p;
  long double pm = 1;
  for (std::size_t i = 0; i < m; ++i) pm *= p;
  total *= (pm - 1) / (p - 1);
  return total > 1e18L ? std::uint64_t{1'000'000'000'000'000'000ULL} : static_cast<std::uint64_t>(total);
}

template <ExactField K>
Vector<K> random_vector(const GeneratorConfig& cfg, SplitMix64& rng, std::size_t n) {
  Vector<K> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar<K>(cfg.field, rng, cfg.rational_bound));
  return v;
}

template <ExactField K>
bool is_zero_vector(const Vector<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <ExactField K>
AffineObject<K> random_line_in(const GeneratorConfig& cfg, SplitMix64& rng, const AffineObject<K>& flat) {
  for (;;) {
    Vector<K> dir_params = random_vector<K>(cfg, rng, flat.dim());
    if (is_zero_vector(dir_params)) continue;
    Vector<K> base = flat.point_at(random_vector<K>(cfg, rng, flat.dim()));
    Vector<K> dir(flat.ambient_dim(), K::from_int(cfg.field, 0));
    for (std::size_t i = 0; i < flat.dim(); ++i)
      for (std::size_t j = 0; j < dir.size(); ++j) dir[j] += dir_params[i] * flat.basis()[i][j];
    return AffineObject<K>::line(cfg.field, std::move(base), std::move(dir));
  }
}

template <ExactField K>
AffineObject<K> random_flat(const GeneratorConfig& cfg, SplitMix64& rng, std::size_t m) {
  const std::size_t n = cfg.ambient_dim;
  for (std::size_t attempt = 0; attempt < kMaxAttemptsPerObject; ++attempt) {
    std::vector<Vector<K>> dirs;
    for (std::size_t i = 0; i < m; ++i) dirs.push_back(random_vector<K>(cfg, rng, n));
    Matrix<K> d = Matrix<K>::from_rows(cfg.field, n, dirs);
    if (rank(d) < m) continue;
    return AffineObject<K>::from_parametrization(cfg.field, random_vector<K>(cfg, rng, n), dirs);
  }
  throw InputError("could not draw an independent " + std::to_string(m) + "-flat");
}

template <ExactField K>
Generated<K> generic_lines(const GeneratorConfig& cfg, SplitMix64& rng) {
  const std::size_t n = cfg.ambient_dim;
  if (n < 2) throw InputError("generic_lines needs ambient dimension >= 2");
  if (cfg.field.is_prime_field() && cfg.count > lines_in_affine_space(cfg.field.p, n))
    throw InputError("more distinct lines requested than exist in " + cfg.field.name() + "^" + std::to_string(n));
  std::set<AffineObject<K>> lines;
  std::size_t attempts = 0;
  while (lines.size() < cfg.count) {
    if (++attempts > kMaxAttemptsPerObject * (cfg.count + 1)) throw InputError("generic_lines: too many rejected draws");
    Vector<K> dir = random_vector<K>(cfg, rng, n);
    if (is_zero_vector(dir)) continue;
    lines.insert(AffineObject<K>::line(cfg.field, random_vector<K>(cfg, rng, n), std::move(dir)));
  }
  return {VarietySet<K>(cfg.field, n, {lines.begin(), lines.end()}), {}};
}

template <ExactField K>
Generated<K> lines_in_flats(const GeneratorConfig& cfg, SplitMix64& rng) {
  const std::size_t n = cfg.ambient_dim, m = cfg.flat_dim;
  if (m < 2 || m > n) throw InputError("lines_in_flats needs 2 <= flat_dim <= ambient_dim");
  if (cfg.flats > 1 && m == n) throw InputError("only one flat of full dimension exists");
  if (cfg.field.is_prime_field() && cfg.lines_per_flat > lines_in_affine_space(cfg.field.p, m))
    throw InputError("more distinct lines requested than exist in a " + std::to_string(m) + "-flat over " +
                     cfg.field.name());

  std::vector<AffineObject<K>> flats;
  while (flats.size() < cfg.flats) {
    auto f = random_flat<K>(cfg, rng, m);
    if (std::find(flats.begin(), flats.end(), f) == flats.end()) flats.push_back(std::move(f));
  }

  std::vector<AffineObject<K>> all;
  std::vector<std::size_t> owner;
  for (std::size_t fi = 0; fi < flats.size(); ++fi) {
    std::vector<Vector<K>> triple_points;  // pairwise intersections inside this flat
    std::size_t placed = 0, attempts = 0;
    while (placed < cfg.lines_per_flat) {
      if (++attempts > kMaxAttemptsPerObject * (cfg.lines_per_flat + 1))
        throw InputError("lines_in_flats: could not place " + std::to_string(cfg.lines_per_flat) +
                         " lines in flat " + std::to_string(fi) + " over " + cfg.field.name());
      auto cand = random_line_in(cfg, rng, flats[fi]);
      if (std::find(all.begin(), all.end(), cand) != all.end()) continue;
      bool ok = true;
      for (std::size_t fj = 0; fj < flats.size() && ok; ++fj)
        if (fj != fi && contains(flats[fj], cand)) ok = false;
      std::vector<Vector<K>> new_points;
      if (ok && cfg.general_position) {
        for (const auto& pt : triple_points)
          if (cand.contains_point(pt)) ok = false;
        for (std::size_t i = 0; i < all.size() && ok; ++i) {
          auto hit = intersect_lines(all[i], cand);
          if (owner[i] == fi) {
            if (!hit) ok = false;  // parallel inside the flat
            else new_points.push_back(*hit);
          } else if (hit) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      all.push_back(std::move(cand));
      owner.push_back(fi);
      triple_points.insert(triple_points.end(), new_points.begin(), new_points.end());
      ++placed;
    }
  }
  return {VarietySet<K>(cfg.field, n, std::move(all)), std::move(flats)};
}

template <ExactField K>
Generated<K> grid(const GeneratorConfig& cfg) {
  const std::size_t n = cfg.ambient_dim, g = cfg.grid_side;
  if (n < 2) throw InputError("grid needs ambient dimension >= 2");
  if (cfg.field.is_prime_field() && g > cfg.field.p)
    throw InputError("grid side " + std::to_string(g) + " exceeds field size " + std::to_string(cfg.field.p));
  const FieldSpec& f = cfg.field;
  auto unit = [&](std::size_t i) {
    Vector<K> e(n, K::from_int(f, 0));
    e[i] = K::from_int(f, 1);
    return e;
  };
  std::vector<AffineObject<K>> out;
  for (std::size_t i = 0; i < g; ++i) {
    if (cfg.grid_lines) {
      Vector<K> b(n, K::from_int(f, 0));
      b[0] = K::from_int(f, static_cast<std::int64_t>(i));
      out.push_back(AffineObject<K>::line(f, b, unit(1)));
      Vector<K> c(n, K::from_int(f, 0));
      c[1] = K::from_int(f, static_cast<std::int64_t>(i));
      out.push_back(AffineObject<K>::line(f, c, unit(0)));
      continue;
    }
    for (std::size_t j = 0; j < g; ++j) {
      Vector<K> x(n, K::from_int(f, 0));
      x[0] = K::from_int(f, static_cast<std::int64_t>(i));
      x[1] = K::from_int(f, static_cast<std::int64_t>(j));
      out.push_back(AffineObject<K>::point(f, std::move(x)));
    }
  }
  return {VarietySet<K>(f, n, std::move(out)), {}};
}

template <ExactField K>
Generated<K> concurrent_bundle(const GeneratorConfig& cfg, SplitMix64& rng) {
  const std::size_t n = cfg.ambient_dim;
  if (n < 2) throw InputError("concurrent_bundle needs ambient dimension >= 2");
  if (cfg.field.is_prime_field()) {
    long double classes = 1;
    for (std::size_t i = 0; i < n; ++i) classes *= cfg.field.p;
    classes = (classes - 1) / (cfg.field.p - 1);
    if (static_cast<long double>(cfg.count) > classes)
      throw InputError("more concurrent lines requested than direction classes exist");
  }
  Vector<K> centre = random_vector<K>(cfg, rng, n);
  std::set<AffineObject<K>> lines;
  std::size_t attempts = 0;
  while (lines.size() < cfg.count) {
    if (++attempts > kMaxAttemptsPerObject * (cfg.count + 1)) throw InputError("concurrent_bundle: too many rejected draws");
    Vector<K> dir = random_vector<K>(cfg, rng, n);
    if (is_zero_vector(dir)) continue;
    lines.insert(AffineObject<K>::line(cfg.field, centre, std::move(dir)));
  }
  return {VarietySet<K>(cfg.field, n, {lines.begin(), lines.end()}), {}};
}

template <ExactField K>
Generated<K> direction_cover(const GeneratorConfig& cfg, SplitMix64& rng) {
  if constexpr (!std::same_as<K, Fp>) {
    throw InputError("direction_cover needs a prime field");
  } else {
    if (cfg.ambient_dim != 2) throw InputError("direction_cover is defined in the plane (ambient_dim = 2)");
    const FieldSpec& f = cfg.field;
    std::vector<AffineObject<K>> out;
    for (std::uint32_t c = 0; c <= f.p; ++c) {
      Vector<K> dir = c < f.p ? Vector<K>{Fp(f, 1), Fp(f, c)} : Vector<K>{Fp(f, 0), Fp(f, 1)};
      out.push_back(AffineObject<K>::line(f, random_vector<K>(cfg, rng, 2), std::move(dir)));
    }
    return {VarietySet<K>(f, 2, std::move(out)), {}};
  }
}

}  // namespace detail

template <ExactField K>
Generated<K> generate_detailed(const GeneratorConfig& cfg) {
  if (!field_matches<K>(cfg.field)) throw InputError("scalar type does not match " + cfg.field.name());
  SplitMix64 rng(cfg.seed);
  switch (cfg.family) {
    case Family::generic_lines: return detail::generic_lines<K>(cfg, rng);
    case Family::lines_in_flats: return detail::lines_in_flats<K>(cfg, rng);
    case Family::grid: return detail::grid<K>(cfg);
    case Family::concurrent_bundle: return detail::concurrent_bundle<K>(cfg, rng);
    case Family::direction_cover: return detail::direction_cover<K>(cfg, rng);
  }
  throw InputError("unknown family");
}

template <ExactField K>
VarietySet<K> generate(const GeneratorConfig& cfg) {
  return generate_detailed<K>(cfg).set;
}

}  // namespace ilab
