#pragma once

#include <complex>
#include <vector>

#include "latdsp/errors.hpp"
#include "latdsp/lattice.hpp"

namespace latdsp {

// Signals, spectra, and filter coefficient vectors are all dense vectors
// aligned to the lattice's topological order.
using RealSignal = std::vector<double>;
using ComplexSignal = std::vector<std::complex<double>>;

inline void require_length(const Lattice& L, std::size_t len) {
  if (len != std::size_t(L.n()))
    fail(Errc::LatticeMismatch, "vector length " + std::to_string(len) +
                                    " does not match lattice size " + std::to_string(L.n()));
}

inline ComplexSignal to_complex(const RealSignal& s) {
  ComplexSignal out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i];
  return out;
}

}  // namespace latdsp
