#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdvred/dynamics.hpp"
#include "kdvred/exchange.hpp"
#include "kdvred/lax.hpp"
#include "kdvred/suites.hpp"
#include "kdvred/ucoeffs.hpp"
#include "kdvred/wave.hpp"

namespace {

using namespace kdvred;

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(Rat::parse(item));
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw BadParams("cannot open output file: " + path);
  f << content;
}

nlohmann::json orbit_json(const char* kind, const ReductionSpec& s,
                          const std::vector<std::vector<Rat>>& steps) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& st : steps) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : st) row.push_back(x.str());
    vals.push_back(std::move(row));
  }
  return {{"kind", kind}, {"N", s.N}, {"M", s.M}, {"alpha", s.alpha.str()},
          {"values", std::move(vals)}};
}

int cmd_exchange(const std::string& family, int N, int M, bool reduced,
                 const std::string& out) {
  Family f = family == "t1" ? Family::T1 : Family::T2;
  auto em = build_exchange(f, N, M);
  nlohmann::json j;
  if (reduced) {
    auto basis = palindromic_basis(em);
    j = intmat_to_json(f, N, M, reduced_exchange(em, basis));
  } else {
    j = exchange_to_json(em);
  }
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_ubracket(int N, int M, bool tableau, const std::string& out) {
  auto a = solve_u_coefficients(N, M);
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& x : a.a) coeffs.push_back(x.str());
  nlohmann::json j{{"N", N}, {"M", M}, {"a", coeffs}};
  std::ostringstream os;
  os << j.dump(2) << "\n";
  if (tableau) os << index_tableau(N, M);
  write_output(out, os.str());
  return 0;
}

int cmd_iterate(const std::string& system, int N, int M, const std::string& alpha,
                const std::string& beta, const std::string& beta_prime,
                const std::string& init, int steps, const std::string& out) {
  ReductionSpec s(N, M, Rat::parse(alpha));
  if (!beta.empty()) s.beta = parse_rat_list(beta);
  if (!beta_prime.empty()) s.beta_prime = parse_rat_list(beta_prime);
  if (s.beta.size() != static_cast<size_t>(M)) throw BadParams("beta must have length M");
  if (s.beta_prime.size() != static_cast<size_t>(N))
    throw BadParams("beta_prime must have length N");
  auto state = parse_rat_list(init);
  std::vector<std::vector<Rat>> history;

  auto run_orbit = [&](StateKind kind, TauFamily fam, UVariant var) {
    Orbit orb;
    orb.spec = s;
    orb.kind = kind;
    orb.family = fam;
    orb.variant = var;
    orb.values = state;
    orb.max_history = 0;
    int D = orb.window();
    if (static_cast<int>(state.size()) != D)
      throw BadParams("init must have " + std::to_string(D) + " entries");
    history.push_back(state);
    for (int t = 0; t < steps; ++t) {
      orb.extend(1);
      history.emplace_back(orb.values.end() - D, orb.values.end());
    }
  };

  if (system == "tau1") run_orbit(StateKind::Tau, TauFamily::One, UVariant::OneOdd);
  else if (system == "tau2") run_orbit(StateKind::Tau, TauFamily::Two, UVariant::OneOdd);
  else if (system == "u1")
    run_orbit(StateKind::U, TauFamily::One, s.odd() ? UVariant::OneOdd : UVariant::OneEven);
  else if (system == "u2")
    run_orbit(StateKind::UPrime, TauFamily::Two, s.odd() ? UVariant::TwoOdd : UVariant::TwoEven);
  else if (system == "kdv") run_orbit(StateKind::V, TauFamily::One, UVariant::OneOdd);
  else if (system == "w") run_orbit(StateKind::W, TauFamily::One, UVariant::OneOdd);
  else if (system == "g") {
    if (static_cast<int>(state.size()) != s.sum())
      throw BadParams("init must have " + std::to_string(s.sum()) + " entries");
    history.push_back(state);
    for (int t = 0; t < steps; ++t) {
      state = g_step<Rat>(s, state);
      history.push_back(state);
    }
  } else {
    throw BadParams("unknown system: " + system);
  }
  const char* kind = system == "tau1" || system == "tau2" ? "tau"
                     : system == "u1"                     ? "u"
                     : system == "u2"                     ? "uprime"
                     : system == "kdv"                    ? "v"
                                                          : system.c_str();
  write_output(out, orbit_json(kind, s, history).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& suite, int N, int M, const std::string& alpha,
               const std::string& beta, const std::string& beta_prime, uint64_t seed,
               int samples, int steps, const std::string& out) {
  SuiteConfig cfg;
  cfg.N = N;
  cfg.M = M;
  cfg.alpha = Rat::parse(alpha);
  if (!beta.empty()) cfg.beta = parse_rat_list(beta);
  if (!beta_prime.empty()) cfg.beta_prime = parse_rat_list(beta_prime);
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.steps = steps;
  cfg.suite = suite;
  auto rep = run_suite(cfg);
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : rep.certs) certs.push_back(c.to_json());
  if (!out.empty()) write_output(out, certs.dump(2) + "\n");
  size_t width = 0;
  for (const auto& c : rep.certs) width = std::max(width, c.check.size() + c.family.size());
  for (const auto& c : rep.certs)
    std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.check << " [" << c.family
              << "] (" << c.N << "," << c.M << ")\n";
  std::cout << (rep.pass() ? "all checks passed" : "CHECK FAILURES") << " ("
            << rep.certs.size() << " certificates)\n";
  return rep.pass() ? 0 : 1;
}

int cmd_wave(int N, int M, const std::string& alpha, const std::string& init, long kmax,
             long lmax, long offset, int decimal, const std::string& out) {
  ReductionSpec s(N, M, Rat::parse(alpha));
  auto v0 = parse_rat_list(init);
  auto grid = emit_wave(s, v0, kmax, lmax, offset);
  std::ostringstream os;
  write_wave_csv(grid, os, decimal);
  write_output(out, os.str());
  std::cerr << "orbit steps: " << grid.orbit_steps << ", grid "
            << (kmax + 1) << "x" << (lmax + 1) << ", all interior sites verified\n";
  return 0;
}

int cmd_sweep(int max_sum, const std::string& out) {
  auto rep = run_sweep(max_sum);
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : rep.certs) certs.push_back(c.to_json());
  if (!out.empty()) write_output(out, certs.dump(2) + "\n");
  int fails = 0;
  for (const auto& c : rep.certs)
    if (!c.pass) {
      ++fails;
      std::cout << "FAIL  " << c.check << " (" << c.N << "," << c.M << ")\n";
    }
  std::cout << rep.certs.size() << " checks, " << fails << " failures\n";
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact integrable-map toolkit for lattice reductions"};
  app.require_subcommand(1);

  std::string family = "t2", alpha = "1", beta, beta_prime, init, out, suite = "all",
              system = "kdv";
  int N = 4, M = 3, samples = 5, steps = 10, decimal = -1, max_sum = 20;
  long kmax = 20, lmax = 20, offset = 0;
  bool reduced = false, tableau = false;
  uint64_t seed = 1;

  auto* ex = app.add_subcommand("exchange", "Print an exchange matrix as JSON");
  ex->add_option("--family", family)->check(CLI::IsMember({"t1", "t2"}));
  ex->add_option("--N,-N", N)->required();
  ex->add_option("--M,-M", M)->required();
  ex->add_flag("--reduced", reduced, "print the reduced matrix instead");
  ex->add_option("--out,-o", out);

  auto* ub = app.add_subcommand("ubracket", "Solve the log-canonical bracket coefficients");
  ub->add_option("--N,-N", N)->required();
  ub->add_option("--M,-M", M)->required();
  ub->add_flag("--tableau", tableau, "print the diagnostic index tableau");
  ub->add_option("--out,-o", out);

  auto* it = app.add_subcommand("iterate", "Iterate one of the maps");
  it->add_option("--system", system)
      ->check(CLI::IsMember({"tau1", "tau2", "u1", "u2", "kdv", "w", "g"}));
  it->add_option("--N,-N", N)->required();
  it->add_option("--M,-M", M)->required();
  it->add_option("--alpha", alpha);
  it->add_option("--beta", beta, "comma-separated rationals, length M");
  it->add_option("--beta-prime", beta_prime, "comma-separated rationals, length N");
  it->add_option("--init", init, "comma-separated rationals")->required();
  it->add_option("--steps", steps);
  it->add_option("--out,-o", out);

  auto* vf = app.add_subcommand("verify", "Run a verification suite");
  vf->add_option("--suite", suite)
      ->check(CLI::IsMember({"cluster", "poisson", "lax", "dressing", "even53", "all"}));
  vf->add_option("--N,-N", N);
  vf->add_option("--M,-M", M);
  vf->add_option("--alpha", alpha);
  vf->add_option("--beta", beta, "periodic coefficients, length M (default: seeded)");
  vf->add_option("--beta-prime", beta_prime, "periodic coefficients, length N (default: seeded)");
  vf->add_option("--seed", seed);
  vf->add_option("--samples", samples);
  vf->add_option("--steps", steps);
  vf->add_option("--out,-o", out, "write JSON certificates here");

  auto* wv = app.add_subcommand("wave", "Emit a travelling-wave grid as CSV");
  wv->add_option("--N,-N", N)->required();
  wv->add_option("--M,-M", M)->required();
  wv->add_option("--alpha", alpha)->required();
  wv->add_option("--init", init)->required();
  wv->add_option("--kmax", kmax);
  wv->add_option("--lmax", lmax);
  wv->add_option("--offset", offset);
  wv->add_option("--decimal", decimal, "decimal digits; default exact p/q");
  wv->add_option("--out,-o", out);

  auto* sw = app.add_subcommand("sweep", "Rank/uniqueness sweep over coprime pairs");
  sw->add_option("--max-sum", max_sum);
  sw->add_option("--out,-o", out);

  try {
    app.parse(argc, argv);
    if (ex->parsed()) return cmd_exchange(family, N, M, reduced, out);
    if (ub->parsed()) return cmd_ubracket(N, M, tableau, out);
    if (it->parsed())
      return cmd_iterate(system, N, M, alpha, beta, beta_prime, init, steps, out);
    if (vf->parsed())
      return cmd_verify(suite, N, M, alpha, beta, beta_prime, seed, samples, steps, out);
    if (wv->parsed()) return cmd_wave(N, M, alpha, init, kmax, lmax, offset, decimal, out);
    if (sw->parsed()) return cmd_sweep(max_sum, out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BadParams& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const BadParity& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
