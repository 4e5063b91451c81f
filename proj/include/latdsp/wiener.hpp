#pragma once

#include <cstdint>

#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"

// Energy-preserving shift and Wiener filtering. This module works over the
// complex numbers; real inputs are promoted. The shift is
//
//   T_e = iDLT . diag(w^0, w^1, ..., w^(n-1)) . DLT,   w = exp(-2*pi*i/n),
//
// with the spectral index k running in topological order. Every diagonal
// entry is a distinct unit-modulus root of unity, so T_e preserves spectral
// energy and every lattice filter is a polynomial in it.
namespace latdsp {

// (T_e^k s). k >= 0; k = 0 is the identity, k = n cycles back to it.
// Powers are reduced mod n through an exact root table, so T_e^n = I holds
// to transform roundoff rather than accumulated phase error.
ComplexSignal apply_energy_shift(const Lattice& L, const ComplexSignal& s,
                                 std::int64_t k, Variant variant);
ComplexSignal apply_energy_shift(const Lattice& L, const RealSignal& s,
                                 std::int64_t k, Variant variant);

// Polynomial p(T_e) = sum_k coefficients[k] T_e^k. From wiener_fit the order
// is the requested one; from filter_to_polynomial it is n-1.
struct WienerModel {
  int order = 0;
  ComplexSignal coefficients;  // h_0..h_order
  // Set when the least-squares system was rank-deficient and the minimum-norm
  // solution was taken instead.
  bool ill_conditioned = false;
};

// Interpolates the filter's frequency response on the diagonal of T_e:
// the returned p satisfies p(w^i) = freq_response(h)_i for every spectral
// index i, so p(T_e) acts exactly like convolution by h.
WienerModel filter_to_polynomial(const Lattice& L, const RealSignal& h, Variant variant);
WienerModel filter_to_polynomial(const Lattice& L, const ComplexSignal& h,
                                 Variant variant);

// Noise drawn i.i.d. circularly-symmetric complex Gaussian with variance
// sigma^2 per spectrum entry, then inverse-transformed to the lattice
// domain. Deterministic per seed. The lattice-domain samples are neither
// independent nor identically distributed; whiteness lives in the spectrum.
ComplexSignal white_noise(const Lattice& L, double sigma, std::uint64_t seed,
                          Variant variant);

// Least-squares fit of sum_k h_k T_e^k y to s_ref over h_0..h_order,
// solved by column-pivoted QR on the (n x order+1) basis matrix. A
// rank-deficient basis falls back to the minimum-norm solution and flags
// ill_conditioned. Requires 0 <= order < n.
WienerModel wiener_fit(const Lattice& L, const ComplexSignal& y,
                       const ComplexSignal& s_ref, int order, Variant variant);
WienerModel wiener_fit(const Lattice& L, const RealSignal& y, const RealSignal& s_ref,
                       int order, Variant variant);

// Evaluates sum_k h_k T_e^k y with one transform pair: spectrum entry i is
// scaled by p(w^i).
ComplexSignal wiener_apply(const Lattice& L, const WienerModel& model,
                           const ComplexSignal& y, Variant variant);
ComplexSignal wiener_apply(const Lattice& L, const WienerModel& model,
                           const RealSignal& y, Variant variant);

// 10*log10(|DLT s|^2 / |DLT noise|^2), both norms in the frequency domain
// where the noise is injected. Zero noise yields +inf, zero signal -inf.
double snr_db(const Lattice& L, const RealSignal& s, const ComplexSignal& noise,
              Variant variant);

// The sigma for white_noise whose expected spectral energy n*sigma^2 puts a
// clean signal s at target_db.
double sigma_for_snr(const Lattice& L, const RealSignal& s, double target_db,
                     Variant variant);

}  // namespace latdsp
