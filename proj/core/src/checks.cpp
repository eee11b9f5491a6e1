#include "kdvred/checks.hpp"

namespace kdvred {

nlohmann::json Certificate::to_json() const {
  nlohmann::json j{{"check", check},   {"family", family}, {"anchor", anchor},
                   {"N", N},           {"M", M},           {"seed", seed},
                   {"points", points}, {"result", pass ? "pass" : "fail"}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

std::vector<Rat> sample_regular_point(RatSampler& sampler, size_t dim) {
  return sampler.point(dim);  // numerators never zero by construction
}

namespace {

constexpr int kMaxResample = 64;

// Runs body at freshly sampled points, resampling on SingularPoint.
template <class Body>
Certificate run_sampled(const BracketSpec& b, const std::string& check,
                        const std::string& anchor, int samples, uint64_t seed,
                        Body&& body) {
  Certificate cert;
  cert.check = check;
  cert.family = b.name;
  cert.anchor = anchor;
  cert.N = b.N;
  cert.M = b.M;
  cert.seed = seed;
  cert.points = samples;
  cert.pass = true;
  if (b.outside_hypotheses) cert.witness["note"] = "outside closed-form hypotheses (M=1)";
  RatSampler sampler(seed);
  for (int p = 0; p < samples; ++p) {
    int tries = 0;
    for (;;) {
      auto x = sample_regular_point(sampler, static_cast<size_t>(b.dim));
      try {
        if (!body(x, cert)) cert.pass = false;
        break;
      } catch (const SingularPoint&) {
        if (++tries > kMaxResample) throw;
      } catch (const SingularStep&) {
        if (++tries > kMaxResample) throw SingularPoint("resampling exhausted");
      }
    }
    if (!cert.pass) break;
  }
  return cert;
}

bool jacobi_at(const BracketSpec& b, std::span<const Rat> x, Certificate& cert) {
  const int n = b.dim;
  auto xd = dual_vars(x);
  auto e = bracket_table<Dual>(b, std::span<const Dual>(xd));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Rat total;
        for (int q = 0; q < n; ++q) {
          const size_t qu = static_cast<size_t>(q);
          total += e[static_cast<size_t>(i)][qu].v * e[static_cast<size_t>(j)][static_cast<size_t>(k)].partial(qu);
          total += e[static_cast<size_t>(j)][qu].v * e[static_cast<size_t>(k)][static_cast<size_t>(i)].partial(qu);
          total += e[static_cast<size_t>(k)][qu].v * e[static_cast<size_t>(i)][static_cast<size_t>(j)].partial(qu);
        }
        if (!total.is_zero()) {
          cert.witness["triple"] = {i, j, k};
          cert.witness["residual"] = total.str();
          return false;
        }
      }
  return true;
}

}  // namespace

Certificate jacobi_check(const BracketSpec& b, int samples, uint64_t seed) {
  return run_sampled(b, "jacobi", "12bras", samples, seed,
                     [&](std::span<const Rat> x, Certificate& c) { return jacobi_at(b, x, c); });
}

Certificate pencil_check(const BracketSpec& s1, const BracketSpec& s2, const Rat& w1,
                         const Rat& w2, int samples, uint64_t seed) {
  BracketSpec combo = BracketSpec::pencil(s1, s2, w1, w2);
  Certificate cert = run_sampled(
      combo, "pencil", "poi3", samples, seed,
      [&](std::span<const Rat> x, Certificate& c) { return jacobi_at(combo, x, c); });
  cert.witness["weights"] = {w1.str(), w2.str()};
  return cert;
}

Certificate poisson_map_check(const StateMap& map, const BracketSpec& src,
                              const BracketSpec& dst, int samples, uint64_t seed) {
  Certificate cert = run_sampled(
      src, "poisson_map", "thm-poisson-map", samples, seed,
      [&](std::span<const Rat> x, Certificate& c) {
        auto xd = dual_vars(x);
        auto img = map(std::span<const Dual>(xd));
        if (static_cast<int>(img.size()) != dst.dim)
          throw BadParams("map image dimension mismatch");
        auto etab = bracket_values(src, x);
        std::vector<Rat> y(img.size());
        for (size_t i = 0; i < img.size(); ++i) y[i] = img[i].v;
        for (int i = 0; i < dst.dim; ++i)
          for (int j = i + 1; j < dst.dim; ++j) {
            Rat lhs = poisson_pairing(img[static_cast<size_t>(i)], img[static_cast<size_t>(j)], etab);
            Rat rhs = bracket_entry<Rat>(dst, i, j, y);
            if (lhs != rhs) {
              c.witness["pair"] = {i, j};
              c.witness["lhs"] = lhs.str();
              c.witness["rhs"] = rhs.str();
              return false;
            }
          }
        return true;
      });
  cert.witness["src"] = src.name;
  cert.witness["dst"] = dst.name;
  return cert;
}

int bracket_rank(const BracketSpec& b, std::span<const Rat> point) {
  return rank_exact(bracket_matrix(b, point));
}

Certificate bracket_rank_check(const BracketSpec& b, int expected, int samples,
                               uint64_t seed) {
  Certificate cert = run_sampled(
      b, "bracket_rank", "rank", samples, seed,
      [&](std::span<const Rat> x, Certificate& c) {
        int r = bracket_rank(b, x);
        if (r != expected) {
          c.witness["got"] = r;
          c.witness["expected"] = expected;
          return false;
        }
        return true;
      });
  cert.witness["expected"] = expected;
  return cert;
}

Certificate casimir_check(const ScalarFn& f, const BracketSpec& b, int samples,
                          uint64_t seed, const std::string& label) {
  Certificate cert = run_sampled(
      b, "casimir", "casimir", samples, seed,
      [&](std::span<const Rat> x, Certificate& c) {
        auto xd = dual_vars(x);
        Dual fv = f(xd);
        auto etab = bracket_values(b, x);
        for (int i = 0; i < b.dim; ++i) {
          Rat total;
          for (int q = 0; q < b.dim; ++q)
            total += etab[static_cast<size_t>(i)][static_cast<size_t>(q)] *
                     fv.partial(static_cast<size_t>(q));
          if (!total.is_zero()) {
            c.witness["coordinate"] = i;
            c.witness["residual"] = total.str();
            return false;
          }
        }
        return true;
      });
  cert.witness["function"] = label;
  return cert;
}

Certificate involution_check(const std::vector<ScalarFn>& fns, const BracketSpec& b,
                             int samples, uint64_t seed, const std::string& label) {
  Certificate cert = run_sampled(
      b, "involution", "involution", samples, seed,
      [&](std::span<const Rat> x, Certificate& c) {
        auto xd = dual_vars(x);
        std::vector<Dual> vals;
        vals.reserve(fns.size());
        for (const auto& f : fns) vals.push_back(f(xd));
        auto etab = bracket_values(b, x);
        for (size_t p = 0; p < vals.size(); ++p)
          for (size_t q = p; q < vals.size(); ++q) {
            Rat pb = poisson_pairing(vals[p], vals[q], etab);
            if (!pb.is_zero()) {
              c.witness["pair"] = {p, q};
              c.witness["residual"] = pb.str();
              return false;
            }
          }
        return true;
      });
  cert.witness["functions"] = label;
  return cert;
}

int independence_check(const std::vector<ScalarFn>& fns, std::span<const Rat> point) {
  auto xd = dual_vars(point);
  std::vector<std::vector<Rat>> grads;
  for (const auto& f : fns) {
    Dual v = f(xd);
    std::vector<Rat> g(point.size());
    for (size_t i = 0; i < point.size(); ++i) g[i] = v.partial(i);
    grads.push_back(std::move(g));
  }
  return gradient_rank(grads);
}

Rat poisson_pairing(const Dual& f, const Dual& g,
                    const std::vector<std::vector<Rat>>& table) {
  Rat total;
  const size_t n = table.size();
  for (size_t i = 0; i < n; ++i) {
    Rat fi = f.partial(i);
    if (fi.is_zero()) continue;
    for (size_t j = 0; j < n; ++j) {
      if (table[i][j].is_zero()) continue;
      total += fi * g.partial(j) * table[i][j];
    }
  }
  return total;
}

std::vector<std::vector<Rat>> bracket_values(const BracketSpec& b,
                                             std::span<const Rat> point) {
  return bracket_table<Rat>(b, point);
}

}  // namespace kdvred
