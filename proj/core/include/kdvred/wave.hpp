#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "kdvred/reduction.hpp"

namespace kdvred {

// Travelling-wave grid V_{k,l} = v_{kM - lN + offset} over the rectangle
// [0,kmax] x [0,lmax], filled from one orbit of the reduced recurrence.
struct WaveGrid {
  ReductionSpec spec;
  long kmax = 0, lmax = 0;
  long offset = 0;
  std::vector<std::vector<Rat>> values;  // values[k][l]

  size_t orbit_steps = 0;  // forward steps taken to fill the grid
};

// Fills the grid from initial data (v_0 .. v_{N+M-1}); extends the orbit
// backwards when the index range requires it. Every interior plaquette is
// verified against the lattice relation before returning.
WaveGrid emit_wave(const ReductionSpec& s, std::span<const Rat> init, long kmax,
                   long lmax, long offset);

// CSV with header k,l,value; exact "p/q" values, or rounded decimals when
// decimal_digits >= 0.
void write_wave_csv(const WaveGrid& g, std::ostream& os, int decimal_digits = -1);

}  // namespace kdvred
