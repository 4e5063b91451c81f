#pragma once

#include <string>
#include <vector>

#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"
#include "latdsp/transforms.hpp"

namespace latdsp {

// Shift by a: result_x = s at x meet a (join variant: x join a).
// The variant's semilattice check must pass so the product is total.
RealSignal shift(const Lattice& L, const RealSignal& s, int a, Variant variant);
ComplexSignal shift(const Lattice& L, const ComplexSignal& s, int a, Variant variant);
RealSignal shift(const Lattice& L, const RealSignal& s, const std::string& a,
                 Variant variant);

// Dense 0/1 matrix of the shift: row x carries a single 1 in column x meet a.
IntMatrix shift_matrix(const Lattice& L, int a, Variant variant,
                       std::size_t max_n = 4096);

// (h * s)_x = sum_a h_a s_{x meet a}, the filter sum_a h_a T_a applied to s.
// Complex taps are allowed; the algebra is unchanged over either field.
RealSignal convolve(const Lattice& L, const RealSignal& h, const RealSignal& s,
                    Variant variant);
ComplexSignal convolve(const Lattice& L, const RealSignal& h, const ComplexSignal& s,
                       Variant variant);
ComplexSignal convolve(const Lattice& L, const ComplexSignal& h, const ComplexSignal& s,
                       Variant variant);

// Frequency response r_y = sum over a >= y of h_a (join: a <= y).
RealSignal freq_response(const Lattice& L, const RealSignal& h, Variant variant);
ComplexSignal freq_response(const Lattice& L, const ComplexSignal& h, Variant variant);

// Inverse of freq_response: h_x = sum over y >= x of mu(x,y) r_y.
RealSignal filter_from_response(const Lattice& L, const RealSignal& r, Variant variant);
ComplexSignal filter_from_response(const Lattice& L, const ComplexSignal& r,
                                   Variant variant);

// Trivial filter (all-ones response) plus one unit tap per generator.
RealSignal lowpass_filter(const Lattice& L, Variant variant);

// Per-generator total variation TV_g(s) = ||s - T_g s||_2 and its sum.
// Generators are the variant's irreducibles in topological order.
struct TotalVariation {
  std::vector<int> generators;
  std::vector<double> tv;
  double stv = 0.0;
};

TotalVariation total_variation(const Lattice& L, const RealSignal& s, Variant variant);

// Frequencies ranked by the total variation of the normalized basis vectors,
// ascending by stv with topological index as the tie-break.
struct FrequencyRank {
  int element;
  std::vector<double> tv;
  double stv;
};

std::vector<FrequencyRank> frequency_order(const Lattice& L, Variant variant);

}  // namespace latdsp
