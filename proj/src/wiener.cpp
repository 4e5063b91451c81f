#include "latdsp/wiener.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "latdsp/errors.hpp"
#include "latdsp/filtering.hpp"
#include "latdsp/transforms.hpp"

namespace latdsp {

namespace {

void require_variant(const Lattice& L, Variant variant) {
  const bool ok = variant == Variant::Meet ? L.check_meet_semilattice().ok
                                           : L.check_join_semilattice().ok;
  if (!ok)
    fail(Errc::StructureNotVerified,
         variant == Variant::Meet ? "operation requires a verified meet-semilattice"
                                  : "operation requires a verified join-semilattice");
}

// w^j for j = 0..n-1, w = exp(-2*pi*i/n). Diagonal powers are read from this
// table at (i*k) mod n, so w^n == w^0 == 1 exactly and T_e^n is the identity
// up to transform roundoff.
std::vector<std::complex<double>> root_table(int n) {
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    w[std::size_t(j)] =
        std::polar(1.0, -2.0 * std::numbers::pi * double(j) / double(n));
  return w;
}

// spectrum[i] *= w^(i*k), in place.
void scale_by_power(ComplexSignal& spectrum,
                    const std::vector<std::complex<double>>& w, std::int64_t k) {
  const std::int64_t n = static_cast<std::int64_t>(spectrum.size());
  const std::int64_t kr = k % n;
  for (std::int64_t i = 0; i < n; ++i)
    spectrum[std::size_t(i)] *= w[std::size_t((i * kr) % n)];
}

ComplexSignal shift_impl(const Lattice& L, const ComplexSignal& s, std::int64_t k,
                         Variant variant) {
  require_variant(L, variant);
  require_length(L, s.size());
  if (k < 0) fail(Errc::BadInput, "shift power must be nonnegative");
  const std::vector<std::complex<double>> w = root_table(L.n());
  ComplexSignal spec = dlt(L, s, variant);
  scale_by_power(spec, w, k);
  return idlt(L, spec, variant);
}

WienerModel to_polynomial_impl(const Lattice& L, const ComplexSignal& response) {
  const int n = L.n();
  const std::vector<std::complex<double>> w = root_table(n);
  WienerModel model;
  model.order = n - 1;
  model.coefficients.assign(static_cast<std::size_t>(n), {});
  // Inverse discrete Fourier transform of the response: with
  // c_m = (1/n) sum_k v_k w^(-k*m), the polynomial sum_m c_m x^m takes the
  // value v_j at x = w^j, which is Lagrange interpolation on the roots of
  // unity in closed form.
  for (int m = 0; m < n; ++m) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const std::int64_t idx =
          (static_cast<std::int64_t>(k) * m) % static_cast<std::int64_t>(n);
      acc += response[std::size_t(k)] * std::conj(w[std::size_t(idx)]);
    }
    model.coefficients[std::size_t(m)] = acc / double(n);
  }
  return model;
}

}  // namespace

ComplexSignal apply_energy_shift(const Lattice& L, const ComplexSignal& s,
                                 std::int64_t k, Variant variant) {
  return shift_impl(L, s, k, variant);
}

ComplexSignal apply_energy_shift(const Lattice& L, const RealSignal& s,
                                 std::int64_t k, Variant variant) {
  return shift_impl(L, to_complex(s), k, variant);
}

WienerModel filter_to_polynomial(const Lattice& L, const ComplexSignal& h,
                                 Variant variant) {
  require_variant(L, variant);
  require_length(L, h.size());
  return to_polynomial_impl(L, freq_response(L, h, variant));
}

WienerModel filter_to_polynomial(const Lattice& L, const RealSignal& h,
                                 Variant variant) {
  return filter_to_polynomial(L, to_complex(h), variant);
}

ComplexSignal white_noise(const Lattice& L, double sigma, std::uint64_t seed,
                          Variant variant) {
  require_variant(L, variant);
  if (!(sigma >= 0.0)) fail(Errc::BadInput, "sigma must be nonnegative");
  const int n = L.n();
  std::mt19937_64 rng(seed);
  // Box-Muller on raw 53-bit draws; u1 is kept away from zero for the log.
  auto unit = [&rng](std::uint64_t low) {
    return double((rng() >> 11) + low) * 0x1p-53;
  };
  ComplexSignal spec(static_cast<std::size_t>(n));
  const double amp = sigma / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(-2.0 * std::log(unit(1)));
    const double theta = 2.0 * std::numbers::pi * unit(0);
    // Real and imaginary parts are each N(0, sigma^2/2), so E|z|^2 = sigma^2.
    spec[std::size_t(i)] = amp * r * std::complex<double>(std::cos(theta),
                                                          std::sin(theta));
  }
  return idlt(L, spec, variant);
}

WienerModel wiener_fit(const Lattice& L, const ComplexSignal& y,
                       const ComplexSignal& s_ref, int order, Variant variant) {
  require_variant(L, variant);
  require_length(L, y.size());
  require_length(L, s_ref.size());
  const int n = L.n();
  if (order < 0 || order >= n)
    fail(Errc::BadInput, "fit order must be in [0, n)");
  const std::vector<std::complex<double>> w = root_table(n);
  const ComplexSignal yhat = dlt(L, y, variant);

  // Basis column k holds T_e^k y in the lattice domain; the objective
  // |B h - s_ref| is the lattice-domain error.
  Eigen::MatrixXcd B(n, order + 1);
  for (int k = 0; k <= order; ++k) {
    ComplexSignal spec = yhat;
    scale_by_power(spec, w, k);
    const ComplexSignal col = idlt(L, spec, variant);
    for (int i = 0; i < n; ++i) B(i, k) = col[std::size_t(i)];
  }
  Eigen::VectorXcd target(n);
  for (int i = 0; i < n; ++i) target(i) = s_ref[std::size_t(i)];

  WienerModel model;
  model.order = order;
  // QR instead of normal equations: the columns are near-Vandermonde and
  // forming B^H B would square their conditioning.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(B);
  Eigen::VectorXcd h;
  if (qr.rank() < order + 1) {
    model.ill_conditioned = true;
    h = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd>(B).solve(target);
  } else {
    h = qr.solve(target);
  }
  model.coefficients.assign(static_cast<std::size_t>(order + 1), {});
  for (int k = 0; k <= order; ++k) model.coefficients[std::size_t(k)] = h(k);
  return model;
}

WienerModel wiener_fit(const Lattice& L, const RealSignal& y, const RealSignal& s_ref,
                       int order, Variant variant) {
  return wiener_fit(L, to_complex(y), to_complex(s_ref), order, variant);
}

ComplexSignal wiener_apply(const Lattice& L, const WienerModel& model,
                           const ComplexSignal& y, Variant variant) {
  require_variant(L, variant);
  require_length(L, y.size());
  if (model.order < 0 ||
      model.coefficients.size() != static_cast<std::size_t>(model.order) + 1)
    fail(Errc::BadInput, "model coefficients do not match its order");
  const int n = L.n();
  const std::vector<std::complex<double>> w = root_table(n);
  ComplexSignal spec = dlt(L, y, variant);
  for (int i = 0; i < n; ++i) {
    // p(w^i), with powers reduced mod n so orders at or above n wrap exactly.
    std::complex<double> p = 0.0;
    for (int k = 0; k <= model.order; ++k) {
      const std::int64_t idx =
          (static_cast<std::int64_t>(i) * k) % static_cast<std::int64_t>(n);
      p += model.coefficients[std::size_t(k)] * w[std::size_t(idx)];
    }
    spec[std::size_t(i)] *= p;
  }
  return idlt(L, spec, variant);
}

ComplexSignal wiener_apply(const Lattice& L, const WienerModel& model,
                           const RealSignal& y, Variant variant) {
  return wiener_apply(L, model, to_complex(y), variant);
}

double snr_db(const Lattice& L, const RealSignal& s, const ComplexSignal& noise,
              Variant variant) {
  require_variant(L, variant);
  require_length(L, s.size());
  require_length(L, noise.size());
  const RealSignal shat = dlt(L, s, variant);
  const ComplexSignal nhat = dlt(L, noise, variant);
  double es = 0.0, en = 0.0;
  for (double v : shat) es += v * v;
  for (const std::complex<double>& v : nhat) en += std::norm(v);
  return 10.0 * std::log10(es / en);
}

double sigma_for_snr(const Lattice& L, const RealSignal& s, double target_db,
                     Variant variant) {
  require_variant(L, variant);
  require_length(L, s.size());
  const RealSignal shat = dlt(L, s, variant);
  double es = 0.0;
  for (double v : shat) es += v * v;
  return std::sqrt(es / (double(L.n()) * std::pow(10.0, target_db / 10.0)));
}

}  // namespace latdsp
