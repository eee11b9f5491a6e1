#include "kdvred/wave.hpp"

#include <ostream>

#include "kdvred/dynamics.hpp"

namespace kdvred {

WaveGrid emit_wave(const ReductionSpec& s, std::span<const Rat> init, long kmax,
                   long lmax, long offset) {
  if (static_cast<int>(init.size()) != s.sum()) throw BadParams("wave needs a full v state");
  if (kmax < 1 || lmax < 1) throw BadParams("grid bounds must be positive");
  long mmin = -lmax * s.N + offset;
  long mmax = kmax * s.M + offset;
  Orbit orb;
  orb.spec = s;
  orb.kind = StateKind::V;
  orb.max_history = 0;  // wave reconstruction needs the whole range
  orb.values.assign(init.begin(), init.end());
  size_t fwd = 0;
  if (mmax >= orb.next_index()) {
    fwd = static_cast<size_t>(mmax - orb.next_index() + 1);
    orb.extend(fwd);
  }
  if (mmin < orb.base) orb.extend_back(static_cast<size_t>(orb.base - mmin));

  WaveGrid g;
  g.spec = s;
  g.kmax = kmax;
  g.lmax = lmax;
  g.offset = offset;
  g.orbit_steps = fwd;
  g.values.assign(static_cast<size_t>(kmax + 1),
                  std::vector<Rat>(static_cast<size_t>(lmax + 1)));
  for (long k = 0; k <= kmax; ++k)
    for (long l = 0; l <= lmax; ++l)
      g.values[static_cast<size_t>(k)][static_cast<size_t>(l)] =
          orb.at(k * s.M - l * s.N + offset);

  // every interior plaquette must satisfy the lattice relation exactly
  for (long k = 0; k + 1 <= kmax; ++k)
    for (long l = 0; l + 1 <= lmax; ++l) {
      const Rat& v00 = g.values[static_cast<size_t>(k)][static_cast<size_t>(l)];
      const Rat& v10 = g.values[static_cast<size_t>(k + 1)][static_cast<size_t>(l)];
      const Rat& v01 = g.values[static_cast<size_t>(k)][static_cast<size_t>(l + 1)];
      const Rat& v11 = g.values[static_cast<size_t>(k + 1)][static_cast<size_t>(l + 1)];
      if (v00.is_zero() || v11.is_zero())
        throw SingularStep("lattice value zero at interior site");
      if (v10 - v01 != s.alpha * (v00.inv() - v11.inv()))
        throw Inconsistent("lattice relation violated on the grid");
    }
  return g;
}

void write_wave_csv(const WaveGrid& g, std::ostream& os, int decimal_digits) {
  os << "k,l,value\n";
  for (long k = 0; k <= g.kmax; ++k)
    for (long l = 0; l <= g.lmax; ++l) {
      const Rat& v = g.values[static_cast<size_t>(k)][static_cast<size_t>(l)];
      os << k << ',' << l << ',';
      if (decimal_digits >= 0)
        os << v.decimal(decimal_digits);
      else
        os << v.str();
      os << '\n';
    }
}

}  // namespace kdvred
