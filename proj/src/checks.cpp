#include "ramsum/checks.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "json.hpp"

#include "ramsum/arith_fn.hpp"
#include "ramsum/element_spec.hpp"
#include "ramsum/number_field.hpp"
#include "ramsum/parallel.hpp"
#include "ramsum/ramanujan.hpp"

namespace ramsum {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % n;
}

Element random_root(const AtomList& atoms, SplitMix64& rng, std::size_t pool,
                    std::size_t max_atoms, std::uint32_t max_exp) {
  pool = std::min(pool, atoms.size());
  if (pool == 0) return {};
  std::vector<AtomId> ids(pool);
  std::iota(ids.begin(), ids.end(), AtomId{0});
  const std::size_t count = 1 + rng.below(std::min(max_atoms, pool));
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(pool - i);
    std::swap(ids[i], ids[j]);
    factors.push_back({ids[i], static_cast<std::uint32_t>(1 + rng.below(max_exp))});
  }
  return Element::from_factors(std::move(factors));
}

Element random_divisor(const Element& root, SplitMix64& rng) {
  std::vector<Factor> factors;
  for (const auto& f : root.factors()) {
    factors.push_back({f.atom, static_cast<std::uint32_t>(rng.below(f.exp + 1))});
  }
  return Element::from_factors(std::move(factors));
}

std::string CheckReport::to_json() const {
  nlohmann::json failures_json = nlohmann::json::array();
  for (const auto& f : failures) {
    failures_json.push_back({{"suite", f.suite},
                             {"check", f.check},
                             {"context", f.context},
                             {"lhs", f.lhs},
                             {"rhs", f.rhs}});
  }
  const nlohmann::json j = {{"suite", suite}, {"trials", trials}, {"failures", failures_json}};
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"th1",    "th2",    "apostol", "holder",
                                                 "oracle", "inner",  "algebra", "all"};
  return names;
}

namespace {

using Failures = std::vector<CheckFailure>;

std::uint64_t suite_salt(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

SplitMix64 trial_rng(const CheckConfig& config, std::string_view suite, std::uint64_t trial) {
  SplitMix64 mix(config.seed ^ suite_salt(suite));
  const std::uint64_t base = mix.next();
  return SplitMix64(base + trial * 0xD1B54A32D192ED03ULL);
}

// Runs body(i) for i < n in parallel and concatenates failures in index order.
template <class Body>
Failures run_indexed(std::size_t n, unsigned workers, Body&& body) {
  std::vector<Failures> per(n);
  parallel_for(n, effective_workers(workers, n),
               [&](std::size_t i, unsigned) { per[i] = body(i); });
  Failures out;
  for (auto& f : per) out.insert(out.end(), f.begin(), f.end());
  return out;
}

void record(Failures& out, std::string suite, std::string check, std::string context,
            const Value& lhs, const Value& rhs) {
  out.push_back({std::move(suite), std::move(check), std::move(context), to_string(lhs),
                 to_string(rhs)});
}

DownsetTable random_table(const Element& root, SplitMix64& rng) {
  DownsetTable t(root, Ring::integer);
  for (std::size_t i = 0; i < t.size(); ++i) t.set(i, BigInt(rng.between(-4, 4)));
  return t;
}

bool tables_equal(const DownsetTable& a, const DownsetTable& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_value(a[i], b[i])) return false;
  }
  return true;
}

// First index where the tables differ, for the failure message.
std::size_t first_difference(const DownsetTable& a, const DownsetTable& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_value(a[i], b[i])) return i;
  }
  return 0;
}

struct Context {
  CheckConfig config;
  Workspace ws;
  AtomListPtr atoms;

  explicit Context(const CheckConfig& c)
      : config(c), ws(make_instance(c.instance), c.workers) {
    // The random suites draw from the first eight atoms.
    double reach = std::max(c.bound, 2.0);
    atoms = ws.atoms(reach);
    while (atoms->size() < 8) {
      reach *= 2;
      atoms = ws.atoms(reach);
    }
  }
};

CheckReport suite_th1(Context& ctx) {
  const auto elements = enumerate_up_to(*ctx.atoms, ctx.config.bound);
  CheckReport r{"th1", elements.size(), {}};
  r.failures = run_indexed(elements.size(), ctx.config.workers, [&](std::size_t i) {
    Failures out;
    const auto rep = theorem1_1_pair(*ctx.atoms, elements[i]);
    if (!rep.pass) record(out, "th1", "divisor_sum", rep.context, rep.lhs, rep.rhs);
    return out;
  });
  return r;
}

CheckReport suite_th2(Context& ctx) {
  const auto elements = enumerate_up_to(*ctx.atoms, ctx.config.bound);
  const std::size_t n = elements.size();
  CheckReport r{"th2", n * n, {}};
  r.failures = run_indexed(n, ctx.config.workers, [&](std::size_t i) {
    Failures out;
    for (std::size_t j = 0; j < n; ++j) {
      const auto rep = theorem1_2_pair(*ctx.atoms, elements[i], elements[j]);
      if (!rep.pass) record(out, "th2", "modulus_sum", rep.context, rep.lhs, rep.rhs);
    }
    return out;
  });
  return r;
}

CheckReport suite_apostol(Context& ctx) {
  CheckReport r{"apostol", ctx.config.trials, {}};
  const auto& atoms = ctx.atoms;
  r.failures = run_indexed(ctx.config.trials, ctx.config.workers, [&](std::size_t t) {
    Failures out;
    auto rng = trial_rng(ctx.config, "apostol", t);
    const Element root = random_root(*atoms, rng);
    const auto f = random_table(root, rng).as_fn("f");
    const auto g = random_table(root, rng).as_fn("g");
    const auto h = random_table(root, rng).as_fn("h");
    const Element k = random_divisor(root, rng);
    const Element m = random_divisor(root, rng);
    const Element n = random_divisor(root, rng);
    const auto a = apostol_identity_a(atoms, f, g, h, k, n);
    if (!a.pass) {
      record(out, "apostol", "identity_a", "trial=" + std::to_string(t) + " " + a.context, a.lhs,
             a.rhs);
    }
    const auto b = apostol_identity_b(atoms, f, g, h, m, n);
    if (!b.pass) {
      record(out, "apostol", "identity_b", "trial=" + std::to_string(t) + " " + b.context, b.lhs,
             b.rhs);
    }
    return out;
  });
  return r;
}

// Divisor sum straight from the definition, independent of the product form
// used by ramanujan_sum.
BigInt definitional_sum(const AtomList& atoms, const Element& k, const Element& m) {
  BigInt total = 0;
  for (const auto& d : divisors(atoms, gcd(m, k))) {
    const int mu = mobius(sub(k, d));
    if (mu != 0) total += atoms.norm(d) * mu;
  }
  return total;
}

CheckReport suite_holder(Context& ctx) {
  const auto elements = enumerate_up_to(*ctx.atoms, ctx.config.bound);
  const std::size_t n = elements.size();
  CheckReport r{"holder", ctx.config.trials, {}};
  const auto& atoms = *ctx.atoms;
  r.failures = run_indexed(ctx.config.trials, ctx.config.workers, [&](std::size_t t) {
    Failures out;
    auto rng = trial_rng(ctx.config, "holder", t);
    const Element& k = elements[rng.below(n)];
    const Element& m = elements[rng.below(n)];
    const Element& k2 = elements[rng.below(n)];
    const std::string ctx_str = "K=" + format_element(atoms, k) + " M=" + format_element(atoms, m);

    const BigInt c = ramanujan_sum(atoms, k, m);
    const BigInt def = definitional_sum(atoms, k, m);
    if (c != def) record(out, "holder", "definition", ctx_str, c, def);

    const Element g = gcd(m, k);
    const BigInt cg = ramanujan_sum(atoms, k, g);
    if (c != cg) record(out, "holder", "gcd_dependence", ctx_str, c, cg);

    const BigInt phi_k = phi_exact(atoms, k, 1);
    const BigInt phi_kg = phi_exact(atoms, sub(k, g), 1);
    if (phi_kg != 0 && phi_k % phi_kg == 0) {
      const BigInt local = BigInt(mobius(sub(k, g))) * (phi_k / phi_kg);
      if (local != def) record(out, "holder", "local_form", ctx_str, local, def);
    }

    if (gcd(k, k2).is_zero()) {
      const BigInt joint = definitional_sum(atoms, add(k, k2), m);
      const BigInt prod = ramanujan_sum(atoms, k, m) * ramanujan_sum(atoms, k2, m);
      if (joint != prod) {
        record(out, "holder", "multiplicativity", ctx_str + " K2=" + format_element(atoms, k2),
               joint, prod);
      }
    }
    return out;
  });
  return r;
}

CheckReport suite_oracle(Context& ctx) {
  if (ctx.config.instance != "z") {
    throw PreconditionError("the exponential-sum oracle applies to instance z only");
  }
  const auto bound = static_cast<std::uint64_t>(norm_floor(ctx.config.bound));
  std::vector<Element> by_int(bound + 1);
  for (std::uint64_t v = 1; v <= bound; ++v) {
    by_int[v] = parse_element(ctx.ws.table(), std::to_string(v));
  }
  const auto atoms = ctx.ws.atoms(ctx.config.bound);
  CheckReport r{"oracle", bound * bound, {}};
  r.failures = run_indexed(bound, ctx.config.workers, [&](std::size_t i) {
    Failures out;
    const std::uint64_t k = i + 1;
    for (std::uint64_t m = 1; m <= bound; ++m) {
      double re = 0.0;
      for (std::uint64_t h = 1; h <= k; ++h) {
        if (std::gcd(h, k) != 1) continue;
        re += std::cos(2 * std::numbers::pi * static_cast<double>((m * h) % k) /
                       static_cast<double>(k));
      }
      const double rounded = std::round(re);
      const BigInt c = ramanujan_sum(*atoms, by_int[k], by_int[m]);
      if (std::abs(re - rounded) >= 1e-6 || c != BigInt(static_cast<long>(rounded))) {
        record(out, "oracle", "exponential_sum",
               "k=" + std::to_string(k) + " m=" + std::to_string(m), c, re);
      }
    }
    return out;
  });
  return r;
}

CheckReport suite_inner(Context& ctx) {
  const auto bound = norm_floor(ctx.config.bound);
  CheckReport r{"inner", bound, {}};
  for (Norm y = 1; y <= bound; ++y) {
    const BigInt v = inner_identity(ctx.ws, static_cast<double>(y));
    if (v != 1) record(r.failures, "inner", "mobius_pairs", "y=" + std::to_string(y), v, BigInt(1));
  }
  return r;
}

CheckReport suite_algebra(Context& ctx) {
  CheckReport r{"algebra", ctx.config.trials, {}};
  const auto& atoms = *ctx.atoms;
  r.failures = run_indexed(ctx.config.trials, ctx.config.workers, [&](std::size_t t) {
    Failures out;
    auto rng = trial_rng(ctx.config, "algebra", t);
    const Element root = random_root(atoms, rng);
    const auto f = random_table(root, rng);
    const auto g = random_table(root, rng);
    const auto h = random_table(root, rng);
    const std::string where = "trial=" + std::to_string(t) + " root=" + format_element(atoms, root);
    auto fail = [&](const char* check, const DownsetTable& a, const DownsetTable& b) {
      const std::size_t i = first_difference(a, b);
      record(out, "algebra", check, where + " at=" + format_element(atoms, a.element_at(i)), a[i],
             b[i]);
    };

    const auto fg = convolve(f, g);
    const auto gf = convolve(g, f);
    if (!tables_equal(fg, gf)) fail("commutativity", fg, gf);

    const auto left = convolve(fg, h);
    const auto right = convolve(f, convolve(g, h));
    if (!tables_equal(left, right)) fail("associativity", left, right);

    const auto one = DownsetTable::tabulate(fns::one(), root);
    const auto mu = DownsetTable::tabulate(fns::mobius(), root);
    const auto delta = DownsetTable::tabulate(fns::delta(), root);
    const auto mu_one = convolve(mu, one);
    if (!tables_equal(mu_one, delta)) fail("mobius_one", mu_one, delta);

    const auto df = convolve(delta, f);
    if (!tables_equal(df, f)) fail("delta_identity", df, f);

    const auto recovered = convolve(convolve(f, one), mu);
    if (!tables_equal(recovered, f)) fail("mobius_inversion", recovered, f);

    auto unit = random_table(root, rng);
    unit.set(std::size_t{0}, BigInt(rng.below(2) == 0 ? 1 : -1));
    const auto inv = dirichlet_inverse(unit.as_fn("u"), root);
    const auto prod = convolve(unit, inv);
    if (!tables_equal(prod, delta)) fail("dirichlet_inverse", prod, delta);
    return out;
  });
  return r;
}

CheckReport run_one(const std::string& suite, Context& ctx) {
  if (suite == "th1") return suite_th1(ctx);
  if (suite == "th2") return suite_th2(ctx);
  if (suite == "apostol") return suite_apostol(ctx);
  if (suite == "holder") return suite_holder(ctx);
  if (suite == "oracle") return suite_oracle(ctx);
  if (suite == "inner") return suite_inner(ctx);
  if (suite == "algebra") return suite_algebra(ctx);
  throw PreconditionError("unknown suite '" + suite + "'");
}

}  // namespace

CheckReport run_suite(const std::string& suite, const CheckConfig& config) {
  Context ctx(config);
  CheckReport all{"all", 0, {}};
  if (suite != "all") all = run_one(suite, ctx);
  for (const auto& name : suite == "all" ? suite_names() : std::vector<std::string>{}) {
    if (name == "all" || (name == "oracle" && config.instance != "z")) continue;
    auto r = run_one(name, ctx);
    all.trials += r.trials;
    all.failures.insert(all.failures.end(), r.failures.begin(), r.failures.end());
  }
  if (config.inject_fault) all.failures.push_back({suite, "injected_fault", "", "0", "1"});
  return all;
}

}  // namespace ramsum
