#include "doctest.h"
#include "ramsum/checks.hpp"
#include "ramsum/number_field.hpp"

using namespace ramsum;

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  SplitMix64 b(1);
  for (int i = 0; i < 1000; ++i) CHECK(b.below(7) < 7);
}

TEST_CASE("random roots respect the shape limits") {
  Workspace ws(rational_integers());
  const auto atoms = ws.atoms(100);
  SplitMix64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const Element r = random_root(*atoms, rng);
    CHECK(r.support_size() >= 1);
    CHECK(r.support_size() <= 4);
    for (const auto& f : r.factors()) {
      CHECK(f.atom < 8);
      CHECK(f.exp >= 1);
      CHECK(f.exp <= 3);
    }
    CHECK(leq(random_divisor(r, rng), r));
  }
}

TEST_CASE("each suite passes on each instance") {
  for (const char* inst : {"z", "q:-1", "q:-23", "q:2"}) {
    CheckConfig c;
    c.instance = inst;
    c.bound = 120;
    c.trials = 150;
    for (const auto& s : suite_names()) {
      if (s == "oracle" && std::string(inst) != "z") {
        CHECK_THROWS_AS(run_suite(s, c), PreconditionError);
        continue;
      }
      const auto r = run_suite(s, c);
      INFO(inst, " ", s, " ", r.to_json());
      CHECK(r.ok());
      CHECK(r.trials > 0);
      CHECK(r.suite == s);
    }
  }
  CHECK_THROWS_AS(run_suite("nope", CheckConfig{}), PreconditionError);
}

TEST_CASE("reports depend on the seed but not on workers") {
  CheckConfig c;
  c.bound = 100;
  c.trials = 200;
  const auto one = run_suite("all", c).to_json();
  c.workers = 4;
  CHECK(run_suite("all", c).to_json() == one);
  c.inject_fault = true;
  const auto faulty = run_suite("apostol", c);
  CHECK_FALSE(faulty.ok());
  CHECK(faulty.failures.back().check == "injected_fault");
  CHECK(faulty.to_json().find("\"failures\": [\n") != std::string::npos);
}
