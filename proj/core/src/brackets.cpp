#include "kdvred/brackets.hpp"

namespace kdvred {

std::string family_label(BracketFamily f) {
  switch (f) {
    case BracketFamily::ULog: return "u_log";
    case BracketFamily::Kdv1: return "kdv1";
    case BracketFamily::Kdv2: return "kdv2";
    case BracketFamily::Kdv3: return "kdv3";
    case BracketFamily::G3: return "g3";
    case BracketFamily::Dressing: return "dressing";
    case BracketFamily::W1_53: return "w1_53";
    case BracketFamily::W2_53: return "w2_53";
  }
  return "?";
}

BracketSpec BracketSpec::u_log(const ReductionSpec& s, const UCoefficients& a) {
  BracketSpec b;
  b.name = "u_log";
  b.dim = state_dim(s, StateKind::U);
  b.N = s.N;
  b.M = s.M;
  b.alpha = s.alpha;
  b.terms.push_back({BracketFamily::ULog, Rat(1), a.a});
  return b;
}

BracketSpec BracketSpec::u_log_custom(const ReductionSpec& s, std::vector<Rat> a,
                                      std::string name) {
  BracketSpec b;
  b.name = std::move(name);
  b.dim = state_dim(s, StateKind::U);
  b.N = s.N;
  b.M = s.M;
  b.alpha = s.alpha;
  b.terms.push_back({BracketFamily::ULog, Rat(1), std::move(a)});
  return b;
}

BracketSpec BracketSpec::kdv1(const ReductionSpec& s) {
  return kdv1_custom(s, kdv_coefficients(s.N, s.M), "kdv1");
}

BracketSpec BracketSpec::kdv2(const ReductionSpec& s) {
  return kdv2_custom(s, kdv_coefficients(s.N, s.M), "kdv2");
}

BracketSpec BracketSpec::kdv1_custom(const ReductionSpec& s, std::vector<Rat> c,
                                     std::string name) {
  BracketSpec b;
  b.name = std::move(name);
  b.dim = s.sum();
  b.N = s.N;
  b.M = s.M;
  b.alpha = s.alpha;
  b.outside_hypotheses = s.M == 1;
  b.terms.push_back({BracketFamily::Kdv1, Rat(1), std::move(c)});
  return b;
}

BracketSpec BracketSpec::kdv2_custom(const ReductionSpec& s, std::vector<Rat> d,
                                     std::string name) {
  BracketSpec b;
  b.name = std::move(name);
  b.dim = s.sum();
  b.N = s.N;
  b.M = s.M;
  b.alpha = s.alpha;
  b.outside_hypotheses = s.M == 1;
  b.terms.push_back({BracketFamily::Kdv2, Rat(1), std::move(d)});
  return b;
}

BracketSpec BracketSpec::kdv3(const ReductionSpec& s) {
  BracketSpec b;
  b.name = "kdv3";
  b.dim = s.sum();
  b.N = s.N;
  b.M = s.M;
  b.alpha = s.alpha;
  b.outside_hypotheses = s.M == 1;
  b.terms.push_back({BracketFamily::Kdv3, Rat(1), {}});
  return b;
}

BracketSpec BracketSpec::g3(const ReductionSpec& s) {
  BracketSpec b;
  b.name = "g3";
  b.dim = s.sum();
  b.N = s.N;
  b.M = s.M;
  b.alpha = s.alpha;
  b.terms.push_back({BracketFamily::G3, Rat(1), {}});
  return b;
}

BracketSpec BracketSpec::dressing(int K) {
  BracketSpec b;
  b.name = "dressing";
  b.dim = K;
  b.N = K;  // no (N, M) structure; keep the size for labelling
  b.M = 1;
  b.alpha = Rat(0);
  b.terms.push_back({BracketFamily::Dressing, Rat(1), {}});
  return b;
}

BracketSpec BracketSpec::w1_53(const Rat& alpha) {
  BracketSpec b;
  b.name = "w1_53";
  b.dim = 7;
  b.N = 5;
  b.M = 3;
  b.alpha = alpha;
  b.terms.push_back({BracketFamily::W1_53, Rat(1), {}});
  return b;
}

BracketSpec BracketSpec::w2_53(const Rat& alpha) {
  BracketSpec b;
  b.name = "w2_53";
  b.dim = 7;
  b.N = 5;
  b.M = 3;
  b.alpha = alpha;
  b.terms.push_back({BracketFamily::W2_53, Rat(1), {}});
  return b;
}

BracketSpec BracketSpec::w3_53(const Rat& alpha) {
  BracketSpec b = w1_53(alpha);
  b.name = "w3_53";
  b.terms.push_back({BracketFamily::W2_53, Rat(-1), {}});
  return b;
}

BracketSpec BracketSpec::pencil(const BracketSpec& s1, const BracketSpec& s2,
                                const Rat& w1, const Rat& w2) {
  if (s1.dim != s2.dim) throw BadParams("pencil needs equal dimensions");
  BracketSpec b = s1;
  b.name = "pencil(" + s1.name + "," + s2.name + ";" + w1.str() + "," + w2.str() + ")";
  for (auto& t : b.terms) t.weight *= w1;
  for (auto t : s2.terms) {
    t.weight *= w2;
    b.terms.push_back(std::move(t));
  }
  return b;
}

RatMat bracket_matrix(const BracketSpec& b, std::span<const Rat> point) {
  auto table = bracket_table<Rat>(b, point);
  RatMat m(static_cast<size_t>(b.dim), static_cast<size_t>(b.dim));
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j)
      m(static_cast<size_t>(i), static_cast<size_t>(j)) =
          table[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

}  // namespace kdvred
