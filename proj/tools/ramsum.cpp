// ramsum: command-line front end.
//
// Exit codes: 0 success, 1 check failures, 2 input errors.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "ramsum/arith_fn.hpp"
#include "ramsum/checks.hpp"
#include "ramsum/element_spec.hpp"
#include "ramsum/number_field.hpp"
#include "ramsum/ramanujan.hpp"

namespace {

using namespace ramsum;

struct Options {
  std::string instance = "z";
  std::string k = "1";
  std::string m = "1";
  double x = 100;
  double y = 10;
  double bound = 300;
  std::uint64_t trials = 500;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string format = "csv";
  std::string out;
  std::string suite = "all";
  bool grouped = false;
  bool direct = false;
  bool scan = false;
  double max_x = 1e7;
  double max_y = 1e3;
  bool inject_fault = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

using Cell = std::variant<std::monostate, BigInt, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string csv() const {
    std::string s;
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ',';
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, BigInt>) s += v.get_str();
              else if constexpr (std::is_same_v<T, double>) s += fmt12(v);
              else if constexpr (std::is_same_v<T, std::string>) s += v;
            },
            row[i]);
      }
      s += '\n';
    }
    return s;
  }

  nlohmann::json json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        obj[columns[i]] = std::visit(
            [](const auto& v) -> nlohmann::json {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
              else if constexpr (std::is_same_v<T, BigInt>) {
                if (const auto i64 = big_to_i64(v)) return *i64;
                return v.get_str();
              } else {
                return v;
              }
            },
            row[i]);
      }
      arr.push_back(std::move(obj));
    }
    return arr;
  }
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit_table(const Options& o, const Table& t) {
  if (o.format == "json") emit(o, t.json().dump(2));
  else emit(o, t.csv());
}

void require_cap(const Options& o, double x, double y) {
  if (!(x >= 0) || x > o.max_x) {
    throw InputError("x = " + fmt12(x) + " outside [0, " + fmt12(o.max_x) + "]; raise --max-x");
  }
  if (!(y >= 0) || y > o.max_y) {
    throw InputError("y = " + fmt12(y) + " outside [0, " + fmt12(o.max_y) + "]; raise --max-y");
  }
}

// Decades 10, 100, ... below x, then x itself.
std::vector<double> decade_scan(double x) {
  std::vector<double> xs;
  for (double t = 10; t < x; t *= 10) xs.push_back(t);
  xs.push_back(x);
  return xs;
}

std::vector<double> y_scan(double y) {
  std::vector<double> ys;
  for (double base = 1; base <= y; base *= 10) {
    for (double step : {1.0, 2.0, 5.0}) {
      if (base * step <= y) ys.push_back(base * step);
    }
  }
  if (ys.empty() || ys.back() != y) ys.push_back(y);
  return ys;
}

Workspace make_workspace(const Options& o) { return Workspace(make_instance(o.instance), o.workers); }

int cmd_atoms(const Options& o) {
  require_cap(o, o.x, 0);
  Workspace ws = make_workspace(o);
  const auto atoms = ws.atoms(o.x);
  Table t{{"id", "label", "norm"}, {}};
  for (const auto& a : atoms->atoms()) {
    if (static_cast<double>(a.norm) > o.x) break;
    t.rows.push_back({BigInt(a.id), a.label, big_from_u64(a.norm)});
  }
  emit_table(o, t);
  return 0;
}

int cmd_csum(const Options& o) {
  Workspace ws = make_workspace(o);
  const Element k = parse_element(ws.table(), o.k);
  const Element m = parse_element(ws.table(), o.m);
  emit(o, ramanujan_sum(*ws.table().snapshot(), k, m).get_str());
  return 0;
}

int cmd_table(const Options& o) {
  require_cap(o, o.x, o.y);
  Workspace ws = make_workspace(o);
  const auto atoms = ws.atoms(std::max({o.x, o.y, 1.0}));
  const auto ks = enumerate_up_to(*atoms, o.y);
  const auto ms = enumerate_up_to(*atoms, o.x);
  Table t{{"k", "m", "c"}, {}};
  for (const auto& k : ks) {
    for (const auto& m : ms) {
      t.rows.push_back({format_element(*atoms, k), format_element(*atoms, m),
                        ramanujan_sum(*atoms, k, m)});
    }
  }
  emit_table(o, t);
  return 0;
}

int cmd_check(const Options& o) {
  CheckConfig config;
  config.instance = o.instance;
  config.bound = o.bound;
  config.trials = o.trials;
  config.seed = o.seed;
  config.workers = o.workers;
  config.inject_fault = o.inject_fault;
  require_cap(o, config.bound, 0);
  const auto report = run_suite(o.suite, config);
  emit(o, report.to_json());
  return report.ok() ? 0 : 1;
}

int cmd_count(const Options& o) {
  require_cap(o, o.x, 0);
  Workspace ws = make_workspace(o);
  const auto xs = o.scan ? decade_scan(o.x) : std::vector<double>{o.x};
  ws.histogram(std::max(o.x, 1.0));
  Table t{{"x", "count", "count_over_x"}, {}};
  for (double x : xs) {
    const auto count = ws.count_up_to(x);
    t.rows.push_back({x, big_from_u64(count), x > 0 ? static_cast<double>(count) / x : 0.0});
  }
  emit_table(o, t);
  return 0;
}

int cmd_residue(const Options& o) {
  require_cap(o, o.x, 0);
  if (o.grouped && o.direct) throw InputError("--grouped and --direct are exclusive");
  Workspace ws = make_workspace(o);
  const Element k = parse_element(ws.table(), o.k);
  if (k.is_zero()) throw InputError("residue needs K != 1");
  const auto mode = o.direct ? ResidueMode::direct : ResidueMode::grouped;
  const auto atoms = ws.atoms(std::max(o.x, 1.0));
  const double lambda = von_mangoldt(*atoms, k);
  const auto c = ws.density().c;
  std::optional<double> target;
  // With Lambda(K) = 0 the target is 0 whatever c is.
  if (lambda == 0.0) target = 0.0;
  else if (c) target = -*c * lambda;

  Table t{{"x", "estimate", "target", "abs_err"}, {}};
  for (double x : o.scan ? decade_scan(o.x) : std::vector<double>{o.x}) {
    const double est = residue_series(ws, k, x, mode);
    std::vector<Cell> row{x, est, std::monostate{}, std::monostate{}};
    if (target) {
      row[2] = *target;
      row[3] = std::abs(est - *target);
    }
    t.rows.push_back(std::move(row));
  }
  emit_table(o, t);
  return 0;
}

int cmd_sxy(const Options& o) {
  require_cap(o, o.x, o.y);
  Workspace ws = make_workspace(o);
  Table t{{"x", "y", "S", "S_minus_cx", "bound"}, {}};
  const auto xs = o.scan ? decade_scan(o.x) : std::vector<double>{o.x};
  const auto ys = o.scan ? y_scan(o.y) : std::vector<double>{o.y};
  for (double x : xs) {
    for (double y : ys) {
      const auto r = double_sum(ws, x, y);
      if (!r.agree) throw std::runtime_error("direct and regrouped S(x, y) disagree");
      std::vector<Cell> row{x, y, r.s, std::monostate{}, r.bound_scale};
      if (r.residual) row[3] = *r.residual;
      t.rows.push_back(std::move(row));
    }
  }
  emit_table(o, t);
  return 0;
}

int cmd_invariants(const Options& o) {
  require_cap(o, o.x, 0);
  const auto source = make_instance(o.instance);
  nlohmann::json j = nlohmann::json::object();
  FieldInvariants inv;
  if (const auto* q = dynamic_cast<const QuadraticField*>(source.get())) {
    inv = q->invariants();
    j["d"] = q->field().d;
    j["disc"] = q->field().disc;
  } else {
    inv = rational_invariants();
  }
  j["instance"] = source->descriptor();
  j["r1"] = inv.r1;
  j["r2"] = inv.r2;
  j["regulator"] = inv.regulator;
  j["roots_of_unity"] = inv.roots_of_unity;
  j["abs_disc"] = inv.abs_disc;
  j["x"] = o.x;
  j["class_number"] = inv.class_number ? nlohmann::json(*inv.class_number) : nlohmann::json(nullptr);

  Workspace ws(source, o.workers);
  std::optional<std::uint64_t> h_counted;
  try {
    const auto est = h_from_counting(ws, inv, o.x);
    j["h_estimate"] = est.estimate;
    j["h_rounded"] = est.rounded;
    h_counted = est.rounded;
  } catch (const InconclusiveError& e) {
    j["h_estimate"] = nullptr;
    j["h_rounded"] = nullptr;
    j["h_note"] = e.what();
  }
  // Real fields take h from counting when the forms route is not available.
  FieldInvariants for_cf = inv;
  if (!for_cf.class_number && h_counted) for_cf.class_number = h_counted;
  j["c_F"] = for_cf.class_number ? nlohmann::json(cf_from_formula(for_cf)) : nlohmann::json(nullptr);
  j["c_F_h_source"] = inv.class_number ? "forms" : (h_counted ? "counting" : "none");
  const double count = static_cast<double>(ws.count_up_to(o.x));
  j["count_over_x"] = o.x > 0 ? count / o.x : 0.0;
  emit(o, j.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Generalized Ramanujan sums over free abelian monoids"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--instance", o.instance, "z or q:<d>");
  app.add_option("--k", o.k, "element spec for K");
  app.add_option("--m", o.m, "element spec for M");
  app.add_option("--x", o.x, "norm bound x");
  app.add_option("--y", o.y, "norm bound y");
  app.add_option("--bound", o.bound, "norm bound for check suites");
  app.add_option("--trials", o.trials, "random trials for check suites");
  app.add_option("--seed", o.seed, "seed for check suites");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "write output to this file");
  app.add_option("--suite", o.suite, "check suite")->check(CLI::IsMember(suite_names()));
  app.add_flag("--grouped", o.grouped, "grouped residue estimator (default)");
  app.add_flag("--direct", o.direct, "direct residue partial sum");
  app.add_flag("--scan", o.scan, "emit a row per decade up to x");
  app.add_option("--max-x", o.max_x, "cap on x");
  app.add_option("--max-y", o.max_y, "cap on y");
  app.add_flag("--inject-fault", o.inject_fault)->group("");

  std::function<int(const Options&)> run;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Command commands[] = {
      {"atoms", "list atoms with norm <= x", cmd_atoms},
      {"csum", "C_K(M) for one pair", cmd_csum},
      {"table", "C_K(M) for all N(K) <= x, N(M) <= y", cmd_table},
      {"check", "run a seeded property suite", cmd_check},
      {"count", "number of elements with norm <= x", cmd_count},
      {"residue", "partial sums of C_K(M)/N(M) against the -c Lambda(K) target", cmd_residue},
      {"sxy", "double sum S(x, y) against c x", cmd_sxy},
      {"invariants", "field invariants and the class number from counting", cmd_invariants}};
  for (const auto& c : commands) {
    app.add_subcommand(c.name, c.help)->callback([&run, fn = c.fn] { run = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ramsum::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ramsum::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
