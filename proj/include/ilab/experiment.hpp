#pragma once

// Batch experiments: families x fields x sizes x theorems, one report per
// cell, plus a CSV summary for ratio-versus-size inspection.
//
// Config:
//   {"seed": 1, "alarm_threshold": 8.0, "oracle": "spanned",
//    "cells": [{"family": "generic_lines", "fields": [101], "ambient_dim": 3,
//               "sizes": [25, 50], "theorems": ["i0", "i1"], "repeats": 3,
//               "s_mode": "rich", "r": 2, "k": 2, "flats": 2}]}
//
// Size is the line count for generic_lines and concurrent_bundle, the total
// line count for lines_in_flats (split evenly over "flats"), the side for
// grid (S = grid points, T = the 2·side axis lines) and is ignored by
// direction_cover. S for i0, r and trivial is chosen by s_mode: "rich"
// (r-rich points of T), "covered" (every base-field point on a line of T,
// prime fields only) or "grid" (default for the grid family).

#include <ilab/verify.hpp>

#include <charconv>

namespace ilab {

struct ExperimentResult {
  Json reports;        // full JSON document
  std::string csv;     // family,n,p,size,theorem,lhs,rhs_total,ratio
  std::size_t report_count = 0;
  std::size_t errors = 0;
  std::size_t alarms = 0;
};

inline constexpr const char* kCsvHeader = "family,n,p,size,theorem,lhs,rhs_total,ratio\n";

/// Shortest round-trip decimal form, locale independent.
inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

namespace detail {

enum class SMode { rich, covered, grid };

inline SMode parse_s_mode(const std::string& s) {
  if (s == "rich") return SMode::rich;
  if (s == "covered") return SMode::covered;
  if (s == "grid") return SMode::grid;
  throw InputError("unknown s_mode '" + s + "'");
}

// Every base-field point on some line of t.
template <ExactField K>
VarietySet<K> covered_points(const VarietySet<K>& t) {
  if constexpr (!std::same_as<K, Fp>) {
    throw InputError("s_mode \"covered\" needs a prime field");
  } else {
    std::vector<AffineObject<K>> pts;
    for (const auto& l : t.members()) {
      if (l.dim() != 1) throw InputError("s_mode \"covered\" expects lines");
      for (std::uint64_t c = 0; c < t.field().p; ++c)
        pts.push_back(AffineObject<K>::point(t.field(), l.point_at({Fp(t.field(), static_cast<std::int64_t>(c))})));
    }
    return VarietySet<K>(t.field(), t.ambient_dim(), std::move(pts));
  }
}

inline std::uint64_t cell_seed(std::uint64_t base, std::size_t cell, std::size_t field, std::size_t size, std::size_t rep) {
  SplitMix64 g(base);
  g = g.fork(cell + 1);
  g = g.fork(field + 1);
  g = g.fork(size + 1);
  g = g.fork(rep + 1);
  return g();
}

struct CellSpec {
  Family family = Family::generic_lines;
  std::size_t n = 3, flats = 2, r = 2, k = 2, repeats = 1;
  std::vector<Json> fields;
  std::vector<std::size_t> sizes;
  std::vector<std::string> theorems;
  std::optional<SMode> s_mode;
};

inline CellSpec parse_cell(const Json& c) {
  CellSpec s;
  s.family = parse_family(require(c, "family").get<std::string>());
  s.n = c.value("ambient_dim", s.family == Family::grid || s.family == Family::direction_cover ? 2 : 3);
  s.flats = c.value("flats", std::size_t{2});
  s.r = c.value("r", std::size_t{2});
  s.k = c.value("k", std::size_t{2});
  s.repeats = c.value("repeats", std::size_t{1});
  for (const auto& f : require(c, "fields")) s.fields.push_back(f);
  for (const auto& z : require(c, "sizes")) s.sizes.push_back(z.get<std::size_t>());
  for (const auto& t : require(c, "theorems")) s.theorems.push_back(t.get<std::string>());
  if (c.contains("s_mode")) s.s_mode = parse_s_mode(c.at("s_mode").get<std::string>());
  return s;
}

template <ExactField K>
VerificationReport run_one(const CellSpec& cell, const FieldSpec& field, std::size_t size, std::uint64_t seed,
                           Theorem th, Oracle oracle) {
  GeneratorConfig g;
  g.family = cell.family;
  g.field = field;
  g.ambient_dim = cell.n;
  g.seed = seed;
  g.count = size;
  g.grid_side = size;
  g.flats = cell.flats;
  if (cell.family == Family::lines_in_flats) {
    if (cell.flats == 0 || size % cell.flats != 0)
      throw InputError("lines_in_flats size " + std::to_string(size) + " is not a multiple of flats = " +
                       std::to_string(cell.flats));
    g.lines_per_flat = size / cell.flats;
  }
  VarietySet<K> t = generate<K>(g);
  std::optional<VarietySet<K>> grid_pts;
  if (cell.family == Family::grid) {
    grid_pts = t;
    g.grid_lines = true;
    t = generate<K>(g);
  }
  const SMode mode = cell.s_mode.value_or(cell.family == Family::grid ? SMode::grid : SMode::rich);
  auto s_for = [&]() -> VarietySet<K> {
    switch (mode) {
      case SMode::rich: return rich_points(t, cell.r).points;
      case SMode::covered: return covered_points(t);
      case SMode::grid:
        if (!grid_pts) throw InputError("s_mode \"grid\" needs the grid family");
        return *grid_pts;
    }
    throw InputError("unknown s_mode");
  };
  switch (th) {
    case Theorem::i0: return verify_i0(s_for(), t, oracle);
    case Theorem::i1: return verify_i1(t, cell.r, cell.k, oracle);
    case Theorem::r: return verify_r(s_for(), t, cell.k, oracle);
    case Theorem::trivial: return verify_trivial(s_for(), t, cell.k);
    default: throw InputError(std::string("theorem '") + to_string(th) + "' is not an experiment theorem");
  }
}

}  // namespace detail

inline ExperimentResult run_experiment(const Json& config) {
  ExperimentResult res;
  const auto base_seed = config.value("seed", std::uint64_t{1});
  const double threshold = config.value("alarm_threshold", kDefaultAlarmThreshold);
  const Oracle oracle = parse_oracle(config.value("oracle", std::string("spanned")));
  Json reports = Json::array(), errors = Json::array();
  std::string csv = kCsvHeader;

  const Json cells = config.contains("cells") ? config.at("cells") : Json::array();
  if (!cells.is_array()) throw InputError("\"cells\" must be an array");
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    detail::CellSpec cell;
    try {
      cell = detail::parse_cell(cells[ci]);
    } catch (const std::exception& e) {
      errors.push_back({{"cell", ci}, {"error", e.what()}});
      continue;
    }
    for (std::size_t fi = 0; fi < cell.fields.size(); ++fi) {
      for (std::size_t zi = 0; zi < cell.sizes.size(); ++zi) {
        for (std::size_t rep = 0; rep < cell.repeats; ++rep) {
          const std::uint64_t seed = detail::cell_seed(base_seed, ci, fi, zi, rep);
          for (const auto& th_name : cell.theorems) {
            Json where{{"cell", ci},
                       {"family", to_string(cell.family)},
                       {"n", cell.n},
                       {"field", cell.fields[fi]},
                       {"size", cell.sizes[zi]},
                       {"repeat", rep},
                       {"seed", seed},
                       {"theorem", th_name}};
            try {
              const FieldSpec field = field_from_json(cell.fields[fi]);
              const Theorem th = parse_theorem(th_name);
              const auto rep_v = with_field(field, [&]<class K>(std::type_identity<K>) {
                return detail::run_one<K>(cell, field, cell.sizes[zi], seed, th, oracle);
              });
              where["alarm"] = rep_v.alarm(threshold);
              where["report"] = to_json(rep_v);
              reports.push_back(where);
              ++res.report_count;
              if (rep_v.alarm(threshold)) ++res.alarms;
              csv += std::string(to_string(cell.family)) + "," + std::to_string(cell.n) + "," +
                     (field.is_prime_field() ? std::to_string(field.p) : std::string("Q")) + "," +
                     std::to_string(cell.sizes[zi]) + "," + th_name + "," + std::to_string(rep_v.lhs) + "," +
                     format_double(rep_v.rhs_total) + "," + format_double(rep_v.ratio) + "\n";
            } catch (const std::exception& e) {
              where["error"] = e.what();
              errors.push_back(where);
            }
          }
        }
      }
    }
  }
  res.errors = errors.size();
  res.reports = Json{{"seed", base_seed},
                     {"alarm_threshold", threshold},
                     {"oracle", to_string(oracle)},
                     {"config_digest", instance_digest(config)},
                     {"reports", reports},
                     {"errors", errors},
                     {"alarms", res.alarms}};
  res.csv = std::move(csv);
  return res;
}

}  // namespace ilab
