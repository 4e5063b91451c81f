#include "latdsp/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "latdsp/errors.hpp"

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

void require_element(const Lattice& L, int a) {
  if (a < 0 || a >= L.n()) fail(Errc::OutOfBounds, "element index out of range");
}

template <typename T>
std::vector<T> shift_impl(const Lattice& L, const std::vector<T>& s, int a,
                          Variant variant) {
  require_variant(L, variant);
  require_element(L, a);
  require_length(L, s.size());
  const int n = L.n();
  std::vector<T> out(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    const int m = variant == Variant::Meet ? L.meet(x, a) : L.join(x, a);
    out[std::size_t(x)] = s[std::size_t(m)];
  }
  return out;
}

}  // namespace

RealSignal shift(const Lattice& L, const RealSignal& s, int a, Variant variant) {
  return shift_impl(L, s, a, variant);
}

ComplexSignal shift(const Lattice& L, const ComplexSignal& s, int a, Variant variant) {
  return shift_impl(L, s, a, variant);
}

RealSignal shift(const Lattice& L, const RealSignal& s, const std::string& a,
                 Variant variant) {
  return shift_impl(L, s, L.index_checked(a), variant);
}

IntMatrix shift_matrix(const Lattice& L, int a, Variant variant, std::size_t max_n) {
  require_variant(L, variant);
  require_element(L, a);
  const int n = L.n();
  if (std::size_t(n) > max_n) fail(Errc::TooLarge, "shift_matrix over the size cap");
  IntMatrix M(std::size_t(n), std::vector<std::int64_t>(std::size_t(n), 0));
  for (int x = 0; x < n; ++x) {
    const int m = variant == Variant::Meet ? L.meet(x, a) : L.join(x, a);
    M[std::size_t(x)][std::size_t(m)] = 1;
  }
  return M;
}

RealSignal convolve(const Lattice& L, const RealSignal& h, const RealSignal& s,
                    Variant variant) {
  require_variant(L, variant);
  require_length(L, h.size());
  require_length(L, s.size());
  const int n = L.n();
  RealSignal out(static_cast<std::size_t>(n), 0.0);
  for (int a = 0; a < n; ++a) {
    const double c = h[std::size_t(a)];
    if (c == 0.0) continue;
    RealSignal t = shift(L, s, a, variant);
    for (int x = 0; x < n; ++x) out[std::size_t(x)] += c * t[std::size_t(x)];
  }
  return out;
}

ComplexSignal convolve(const Lattice& L, const RealSignal& h, const ComplexSignal& s,
                       Variant variant) {
  require_variant(L, variant);
  require_length(L, h.size());
  require_length(L, s.size());
  const int n = L.n();
  ComplexSignal out(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const double c = h[std::size_t(a)];
    if (c == 0.0) continue;
    ComplexSignal t = shift(L, s, a, variant);
    for (int x = 0; x < n; ++x) out[std::size_t(x)] += c * t[std::size_t(x)];
  }
  return out;
}

ComplexSignal convolve(const Lattice& L, const ComplexSignal& h, const ComplexSignal& s,
                       Variant variant) {
  require_variant(L, variant);
  require_length(L, h.size());
  require_length(L, s.size());
  const int n = L.n();
  ComplexSignal out(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const std::complex<double> c = h[std::size_t(a)];
    if (c == 0.0) continue;
    ComplexSignal t = shift(L, s, a, variant);
    for (int x = 0; x < n; ++x) out[std::size_t(x)] += c * t[std::size_t(x)];
  }
  return out;
}

RealSignal freq_response(const Lattice& L, const RealSignal& h, Variant variant) {
  require_variant(L, variant);
  // meet-side response sums taps above y, which is the up-going zeta sweep
  return variant == Variant::Meet ? zeta_up(L, h) : zeta_down(L, h);
}

ComplexSignal freq_response(const Lattice& L, const ComplexSignal& h, Variant variant) {
  require_variant(L, variant);
  return variant == Variant::Meet ? zeta_up(L, h) : zeta_down(L, h);
}

RealSignal filter_from_response(const Lattice& L, const RealSignal& r, Variant variant) {
  require_variant(L, variant);
  return variant == Variant::Meet ? moebius_up(L, r) : moebius_down(L, r);
}

ComplexSignal filter_from_response(const Lattice& L, const ComplexSignal& r,
                                   Variant variant) {
  require_variant(L, variant);
  return variant == Variant::Meet ? moebius_up(L, r) : moebius_down(L, r);
}

RealSignal lowpass_filter(const Lattice& L, Variant variant) {
  RealSignal ones(static_cast<std::size_t>(L.n()), 1.0);
  RealSignal h = filter_from_response(L, ones, variant);
  for (int g : L.irreducibles(variant)) h[std::size_t(g)] += 1.0;
  return h;
}

TotalVariation total_variation(const Lattice& L, const RealSignal& s, Variant variant) {
  require_variant(L, variant);
  require_length(L, s.size());
  TotalVariation out;
  out.generators = L.irreducibles(variant);
  out.tv.reserve(out.generators.size());
  for (int g : out.generators) {
    RealSignal t = shift(L, s, g, variant);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double d = s[i] - t[i];
      acc += d * d;
    }
    const double v = std::sqrt(acc);
    out.tv.push_back(v);
    out.stv += v;
  }
  return out;
}

std::vector<FrequencyRank> frequency_order(const Lattice& L, Variant variant) {
  require_variant(L, variant);
  const int n = L.n();
  std::vector<FrequencyRank> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) {
    RealSignal f(static_cast<std::size_t>(n), 0.0);
    int cnt = 0;
    for (int x = 0; x < n; ++x) {
      const bool in = variant == Variant::Meet ? L.leq(y, x) : L.leq(x, y);
      if (in) {
        f[std::size_t(x)] = 1.0;
        ++cnt;
      }
    }
    const double norm = std::sqrt(double(cnt));
    for (double& v : f) v /= norm;
    TotalVariation tv = total_variation(L, f, variant);
    out.push_back({y, std::move(tv.tv), tv.stv});
  }
  std::stable_sort(out.begin(), out.end(), [](const FrequencyRank& a, const FrequencyRank& b) {
    // each shift scales a basis vector by 0 or 1, so stv is an integer up
    // to roundoff; snapping keeps the topological tie-break stable
    const long long ka = std::llround(a.stv), kb = std::llround(b.stv);
    if (ka != kb) return ka < kb;
    return a.element < b.element;
  });
  return out;
}

}  // namespace latdsp
