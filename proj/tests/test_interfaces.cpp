#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "kdvred/suites.hpp"
#include "kdvred/wave.hpp"

using namespace kdvred;

TEST_CASE("suite reports are deterministic for a fixed config") {
  SuiteConfig cfg;
  cfg.N = 4;
  cfg.M = 3;
  cfg.alpha = Rat(-1);
  cfg.seed = 12;
  cfg.samples = 2;
  cfg.steps = 6;
  cfg.suite = "poisson";
  auto r1 = run_suite(cfg);
  auto r2 = run_suite(cfg);
  REQUIRE(r1.certs.size() == r2.certs.size());
  for (size_t i = 0; i < r1.certs.size(); ++i)
    CHECK(r1.certs[i].to_json().dump() == r2.certs[i].to_json().dump());
  CHECK(r1.pass());
}

TEST_CASE("certificates name the relation tag they verify") {
  SuiteConfig cfg;
  cfg.N = 5;
  cfg.M = 2;
  cfg.alpha = Rat(1, 3);
  cfg.samples = 2;
  cfg.suite = "cluster";
  auto rep = run_suite(cfg);
  for (const auto& c : rep.certs) {
    auto j = c.to_json();
    CHECK(j.contains("anchor"));
    CHECK_FALSE(j["anchor"].get<std::string>().empty());
  }
}

TEST_CASE("wave CSV format, exact and decimal") {
  ReductionSpec s(4, 3, Rat(-1));
  std::vector<Rat> init{Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(3)};
  auto grid = emit_wave(s, init, 3, 3, 10);
  std::ostringstream exact;
  write_wave_csv(grid, exact);
  auto text = exact.str();
  CHECK(text.rfind("k,l,value\n", 0) == 0);
  // 4x4 grid plus header
  int lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 17);

  std::ostringstream dec;
  write_wave_csv(grid, dec, 4);
  CHECK(dec.str().find('.') != std::string::npos);

  // determinism: emitting twice gives byte-identical output
  std::ostringstream again;
  write_wave_csv(emit_wave(s, init, 3, 3, 10), again);
  CHECK(again.str() == text);
}

TEST_CASE("unknown suite is rejected") {
  SuiteConfig cfg;
  cfg.suite = "nonsense";
  CHECK_THROWS_AS(run_suite(cfg), BadParams);
}

TEST_CASE("sweep certifies every coprime pair in range") {
  auto rep = run_sweep(9);
  CHECK(rep.pass());
  // pairs with gcd > 1 are skipped
  for (const auto& c : rep.certs) CHECK(std::gcd(c.N, c.M) == 1);
}
