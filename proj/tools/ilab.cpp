// ilab: command-line front end.
//
//   ilab gen --family lines_in_flats --field 11 --flats 3 --lines-per-flat 4 --out t.json
//   ilab rich --t t.json --r 2 --out s.json
//   ilab incidence --s s.json --t t.json
//   ilab vanish --t t.json [--max-degree D] [--avoid flats.json]
//   ilab conc --t t.json [--m 2] --oracle spanned
//   ilab partition --s s.json --t t.json --tau 0.4 --budget relative
//   ilab verify --theorem i0 --s s.json --t t.json
//   ilab verify --theorem cii --instances 1000 --seed 1
//   ilab experiment --config configs/stock_experiment.json --out results/
//
// Exit codes: 0 success, 1 verification violation (or alarm), 2 input error.

#include <ilab/experiment.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace ilab;

struct Violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out;
  std::uint64_t seed = 1;
  std::string field = "101";
  std::string oracle = "spanned";
  // gen
  std::string family = "generic_lines";
  std::size_t n = 3, count = 10, flat_dim = 2, flats = 2, lines_per_flat = 3, grid_side = 3;
  bool grid_lines = false, no_general_position = false;
  // inputs
  std::string s_path, t_path, avoid_path, config_path;
  std::size_t r = 2, k = 2;
  std::optional<std::size_t> m, max_degree, degree;
  std::uint64_t ceiling = kDefaultExhaustiveCeiling;
  std::string tau = "0.4", budget = "relative", theorem = "i0";
  std::size_t floor = 2, instances = 1000;
  double alarm = kDefaultAlarmThreshold;
};

void emit(const Options& o, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) std::cout << text;
  else write_text_file(o.out, text);
}

FieldSpec field_of_file(const Json& j) { return field_from_json(detail::require(j, "field")); }

template <ExactField K>
VarietySet<K> load_set(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("missing --") + flag);
  return set_from_json<K>(read_json_file(path));
}

int cmd_gen(const Options& o) {
  GeneratorConfig g;
  g.family = parse_family(o.family);
  g.field = parse_field(o.field);
  g.ambient_dim = o.n;
  g.count = o.count;
  g.flat_dim = o.flat_dim;
  g.flats = o.flats;
  g.lines_per_flat = o.lines_per_flat;
  g.grid_side = o.grid_side;
  g.grid_lines = o.grid_lines;
  g.general_position = !o.no_general_position;
  g.seed = o.seed;
  with_field(g.field, [&]<class K>(std::type_identity<K>) { emit(o, set_to_json(generate<K>(g))); });
  return 0;
}

int cmd_rich(const Options& o) {
  const Json tj = read_json_file(o.t_path);
  with_field(field_of_file(tj), [&]<class K>(std::type_identity<K>) {
    const auto rich = rich_points(set_from_json<K>(tj), o.r);
    Json j = set_to_json(rich.points);
    j["r"] = rich.r;
    j["multiplicity"] = rich.multiplicity;
    emit(o, j);
  });
  return 0;
}

int cmd_incidence(const Options& o) {
  if (o.s_path.empty() || o.t_path.empty()) throw InputError("incidence needs --s and --t");
  const Json tj = read_json_file(o.t_path);
  with_field(field_of_file(tj), [&]<class K>(std::type_identity<K>) {
    const auto s = load_set<K>(o.s_path, "s");
    const auto t = set_from_json<K>(tj);
    const auto inc = incidence_degree(s, t);
    Json j;
    j["incidence_total"] = inc.total;
    j["per_point"] = inc.per_point;
    j["per_member"] = inc.per_member;
    if (t.member_dim().value_or(1) == 1) {
      const auto rich = rich_points(t, o.r);
      j["rich"] = {{"r", o.r}, {"count", rich.points.size()}};
    }
    if (s.member_dim().value_or(0) == 0) {
      const auto kf = k_free_check(s, t, o.k);
      j["k"] = o.k;
      j["k_free"] = kf.k_free;
      if (kf.witness)
        j["k_free_witness"] = {{"t", {kf.witness->t_first, kf.witness->t_second}}, {"s", kf.witness->shared_points}};
    }
    emit(o, j);
  });
  return 0;
}

int cmd_vanish(const Options& o) {
  const Json tj = read_json_file(o.t_path);
  with_field(field_of_file(tj), [&]<class K>(std::type_identity<K>) {
    const auto t = set_from_json<K>(tj);
    Json j;
    if (!o.avoid_path.empty()) {
      const auto ws = objects_from_json<K>(t.field(), t.ambient_dim(), read_json_file(o.avoid_path));
      const auto rd = relative_degree(t, ws);
      j["relative_degree"] = rd.degree;
      j["witness"] = poly_to_json(rd.witness);
      Json av = Json::array();
      for (const auto& w : rd.avoided) av.push_back(object_to_json(w));
      j["avoided"] = av;
    } else {
      const auto v = o.degree ? vanishing_poly(t, *o.degree) : min_vanishing_degree(t, o.max_degree);
      j["degree"] = v.degree;
      j["polynomial"] = v.polynomial ? poly_to_json(*v.polynomial) : Json(nullptr);
      j["kernel_dim"] = v.kernel_dim;
      j["constraint_count"] = v.constraint_count;
      j["monomial_count"] = v.monomial_count;
    }
    emit(o, j);
  });
  return 0;
}

int cmd_conc(const Options& o) {
  const Json tj = read_json_file(o.t_path);
  const Oracle oracle = parse_oracle(o.oracle);
  with_field(field_of_file(tj), [&]<class K>(std::type_identity<K>) {
    const auto t = set_from_json<K>(tj);
    if (o.m) {
      emit(o, to_json(concentration(t, *o.m, oracle, o.ceiling)));
    } else {
      Json arr = Json::array();
      for (std::size_t m = t.member_dim().value_or(0); m <= t.ambient_dim(); ++m)
        arr.push_back(to_json(concentration(t, m, oracle, o.ceiling)));
      emit(o, Json{{"profile", arr}});
    }
  });
  return 0;
}

int cmd_partition(const Options& o) {
  const Json tj = read_json_file(o.t_path);
  const Fraction tau = parse_fraction(o.tau);
  const BudgetRule rule = parse_budget(o.budget);
  bool ok = true;
  with_field(field_of_file(tj), [&]<class K>(std::type_identity<K>) {
    const auto t = set_from_json<K>(tj);
    const auto s = load_set<K>(o.s_path, "s");
    const auto tr = partition_iterate(s, t, tau, rule, o.seed, o.floor);
    ok = tr.all_steps_hold && tr.global_holds;
    Json j = to_json(tr);
    j["tau"] = tau.to_string();
    j["budget_rule"] = rule.to_string();
    emit(o, j);
  });
  if (!ok) throw Violation("partition inequality violated");
  return 0;
}

int cmd_verify(const Options& o) {
  const Theorem th = parse_theorem(o.theorem);
  if (th == Theorem::cii || th == Theorem::bezout_suite) {
    const auto sum = th == Theorem::cii ? verify_cii_suite(o.instances, o.seed) : verify_bezout_suite(o.instances, o.seed);
    emit(o, to_json(sum));
    if (sum.violations)
      throw Violation(std::to_string(sum.violations) + " violations; first reproducer seed " +
                      std::to_string(sum.first_violation->seed) + " index " + std::to_string(sum.first_violation->index));
    return 0;
  }
  const Json tj = read_json_file(o.t_path);
  const Oracle oracle = parse_oracle(o.oracle);
  VerificationReport rep;
  with_field(field_of_file(tj), [&]<class K>(std::type_identity<K>) {
    const auto t = set_from_json<K>(tj);
    switch (th) {
      case Theorem::i0: rep = verify_i0(load_set<K>(o.s_path, "s"), t, oracle); break;
      case Theorem::i1: rep = verify_i1(t, o.r, o.k, oracle); break;
      case Theorem::r: rep = verify_r(load_set<K>(o.s_path, "s"), t, o.k, oracle); break;
      case Theorem::trivial: rep = verify_trivial(load_set<K>(o.s_path, "s"), t, o.k); break;
      default: break;
    }
  });
  Json j = to_json(rep);
  j["alarm_threshold"] = o.alarm;
  j["alarm"] = rep.alarm(o.alarm);
  emit(o, j);
  if (th == Theorem::trivial && !within_bound(rep.lhs, rep.rhs_total)) throw Violation("trivial bound violated");
  if (rep.alarm(o.alarm)) throw Violation("ratio " + format_double(rep.ratio) + " exceeds alarm threshold");
  return 0;
}

int cmd_experiment(const Options& o) {
  if (o.config_path.empty()) throw InputError("missing --config");
  const auto res = run_experiment(read_json_file(o.config_path));
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::filesystem::create_directories(dir);
  write_text_file((dir / "report.json").string(), res.reports.dump(2) + "\n");
  write_text_file((dir / "summary.csv").string(), res.csv);
  std::cerr << res.report_count << " reports, " << res.errors << " cell errors, " << res.alarms << " alarms -> "
            << dir.string() << "\n";
  if (res.alarms) throw Violation("alarm threshold exceeded in " + std::to_string(res.alarms) + " reports");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact incidence-geometry laboratory"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sc) {
    sc->add_option("--out", o.out, "output file (directory for experiment); stdout if omitted");
    sc->add_option("--seed", o.seed, "random seed");
  };
  auto field_opt = [&](CLI::App* sc) { sc->add_option("--field", o.field, "prime p or Q")->capture_default_str(); };
  auto oracle_opt = [&](CLI::App* sc) {
    sc->add_option("--oracle", o.oracle, "spanned | exhaustive | union_greedy")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "generate an object set");
  common(gen);
  field_opt(gen);
  gen->add_option("--family", o.family, "generic_lines | lines_in_flats | grid | concurrent_bundle | direction_cover")
      ->capture_default_str();
  gen->add_option("--n", o.n, "ambient dimension")->capture_default_str();
  gen->add_option("--count", o.count, "number of lines")->capture_default_str();
  gen->add_option("--flat-dim", o.flat_dim)->capture_default_str();
  gen->add_option("--flats", o.flats)->capture_default_str();
  gen->add_option("--lines-per-flat", o.lines_per_flat)->capture_default_str();
  gen->add_option("--grid-side", o.grid_side)->capture_default_str();
  gen->add_flag("--grid-lines", o.grid_lines, "emit the axis lines of the grid instead of its points");
  gen->add_flag("--no-general-position", o.no_general_position);

  auto* rich = app.add_subcommand("rich", "r-rich points of a line set");
  common(rich);
  rich->add_option("--t", o.t_path)->required();
  rich->add_option("--r", o.r)->capture_default_str();

  auto* inc = app.add_subcommand("incidence", "incidence degree I(S,T)");
  common(inc);
  inc->add_option("--s", o.s_path)->required();
  inc->add_option("--t", o.t_path)->required();
  inc->add_option("--r", o.r)->capture_default_str();
  inc->add_option("--k", o.k)->capture_default_str();

  auto* van = app.add_subcommand("vanish", "vanishing polynomial or relative degree");
  common(van);
  van->add_option("--t", o.t_path)->required();
  van->add_option("--max-degree", o.max_degree);
  van->add_option("--degree", o.degree, "use exactly this degree");
  van->add_option("--avoid", o.avoid_path, "flats the polynomial must not vanish on");

  auto* conc = app.add_subcommand("conc", "concentration parameters D_m(T)");
  common(conc);
  oracle_opt(conc);
  conc->add_option("--t", o.t_path)->required();
  conc->add_option("--m", o.m, "container dimension; whole profile if omitted");
  conc->add_option("--ceiling", o.ceiling, "flat count limit for the exhaustive oracle")->capture_default_str();

  auto* part = app.add_subcommand("partition", "iterated polynomial partition");
  common(part);
  part->add_option("--s", o.s_path)->required();
  part->add_option("--t", o.t_path)->required();
  part->add_option("--tau", o.tau)->capture_default_str();
  part->add_option("--budget", o.budget, "relative | fixed degree")->capture_default_str();
  part->add_option("--floor", o.floor, "pieces of total degree <= floor are final")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "check one bound or run an exactness suite");
  common(ver);
  oracle_opt(ver);
  ver->add_option("--theorem", o.theorem, "i0 | i1 | r | trivial | cii | bezout_suite")->capture_default_str();
  ver->add_option("--s", o.s_path);
  ver->add_option("--t", o.t_path);
  ver->add_option("--r", o.r)->capture_default_str();
  ver->add_option("--k", o.k)->capture_default_str();
  ver->add_option("--instances", o.instances)->capture_default_str();
  ver->add_option("--alarm-threshold", o.alarm)->capture_default_str();

  auto* exp = app.add_subcommand("experiment", "run an experiment config");
  common(exp);
  exp->add_option("--config", o.config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*rich) return cmd_rich(o);
    if (*inc) return cmd_incidence(o);
    if (*van) return cmd_vanish(o);
    if (*conc) return cmd_conc(o);
    if (*part) return cmd_partition(o);
    if (*ver) return cmd_verify(o);
    if (*exp) return cmd_experiment(o);
  } catch (const Violation& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NoSeparation& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
