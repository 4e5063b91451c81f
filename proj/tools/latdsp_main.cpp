// latdsp: command line front end over the library. One subcommand per
// operation; outputs are CSV, lattice text, model JSON or DOT on stdout
// unless -o names a file. Exit codes: 0 success, 1 usage or file format
// error, 2 domain error (failed structure check, mismatched inputs).
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latdsp/errors.hpp"
#include "latdsp/fca.hpp"
#include "latdsp/filtering.hpp"
#include "latdsp/io.hpp"
#include "latdsp/lattice.hpp"
#include "latdsp/multiset.hpp"
#include "latdsp/sampling.hpp"
#include "latdsp/transforms.hpp"
#include "latdsp/wiener.hpp"

namespace {

using latdsp::ComplexSignal;
using latdsp::Errc;
using latdsp::Lattice;
using latdsp::RealSignal;
using latdsp::SignalRows;
using latdsp::Variant;

int g_status = 0;

latdsp::Variant variant_of(const std::string& s) {
  return s == "meet" ? Variant::Meet : Variant::Join;
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  latdsp::write_text_file(path, text);
}

Lattice load_lattice(const std::string& path, bool reduce) {
  return latdsp::parse_lattice(latdsp::read_text_file(path), reduce);
}

// Dense-size caps honor LATTICE_DSP_MAX_N when set.
int dense_cap(int fallback) {
  const char* v = std::getenv("LATTICE_DSP_MAX_N");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const long long x = std::strtoll(v, &end, 10);
  if (*end != '\0' || x < 0 || x > (1LL << 30)) {
    std::cerr << "error: invalid LATTICE_DSP_MAX_N '" << v << "'\n";
    std::exit(1);
  }
  return static_cast<int>(x);
}

template <class S>
void cross_check(const Lattice& L, const S& fast, const S& dense) {
  double scale = 1.0;
  for (const auto& v : dense) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (std::abs(fast[i] - dense[i]) > 1e-10 * scale)
      latdsp::fail(Errc::StructureNotVerified,
                   "fast and dense transforms disagree at element " +
                       L.name(static_cast<int>(i)));
}

struct TransformArgs {
  std::string lattice, signal, variant, out = "-";
  int precision = 17;
  bool fast = false, check = false, reduce = false;
};

template <class S>
std::string transform_text(const Lattice& L, const S& s, Variant v,
                           const TransformArgs& a, bool forward) {
  S dense, fast;
  if (!a.fast || a.check)
    dense = forward ? latdsp::dlt(L, s, v) : latdsp::idlt(L, s, v);
  if (a.fast || a.check)
    fast = forward ? latdsp::dlt_fast(L, s, v) : latdsp::idlt_fast(L, s, v);
  if (a.check) cross_check(L, fast, dense);
  return latdsp::format_signal_csv(L, a.fast ? fast : dense, a.precision);
}

void run_transform(const TransformArgs& a, bool forward) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  SignalRows rows = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal));
  if (rows.is_complex)
    emit(a.out, transform_text(L, latdsp::to_full_complex(L, rows), v, a, forward));
  else
    emit(a.out, transform_text(L, latdsp::to_full_real(L, rows), v, a, forward));
}

struct ValidateArgs {
  std::string lattice, require = "any";
  bool reduce = false;
};

void run_validate(const ValidateArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const latdsp::PairVerdict& mv = L.check_meet_semilattice();
  const latdsp::PairVerdict& jv = L.check_join_semilattice();
  std::ostringstream rep;
  rep << L.kind_string() << "; " << L.n() << (L.n() == 1 ? " element" : " elements");
  if (mv.ok || jv.ok) {
    const std::vector<int>& gens =
        L.irreducibles(mv.ok ? Variant::Meet : Variant::Join);
    if (!gens.empty()) {
      rep << "; generators ";
      for (std::size_t i = 0; i < gens.size(); ++i)
        rep << (i ? "," : "") << L.name(gens[i]);
    }
  }
  if (auto lo = L.minimum()) rep << "; minimum " << L.name(*lo);
  if (auto hi = L.maximum()) rep << "; maximum " << L.name(*hi);
  std::cout << rep.str() << "\n";

  const bool need_meet = a.require == "meet" || a.require == "lattice";
  const bool need_join = a.require == "join" || a.require == "lattice";
  bool ok = a.require == "any" ? (mv.ok || jv.ok)
                               : (!need_meet || mv.ok) && (!need_join || jv.ok);
  if (!ok) {
    if (!mv.ok)
      std::cout << "no meet: witness (" << L.name(mv.x) << "," << L.name(mv.y) << ")\n";
    if (!jv.ok)
      std::cout << "no join: witness (" << L.name(jv.x) << "," << L.name(jv.y) << ")\n";
    g_status = 2;
  }
}

struct FilterArgs {
  std::string lattice, filter, signal, response, by, variant, out = "-";
  int precision = 17;
  bool lowpass = false, reduce = false;
};

void run_freqresp(const FilterArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  SignalRows rows = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.filter));
  std::string text =
      rows.is_complex
          ? latdsp::format_signal_csv(
                L, latdsp::freq_response(L, latdsp::to_full_complex(L, rows), v),
                a.precision)
          : latdsp::format_signal_csv(
                L, latdsp::freq_response(L, latdsp::to_full_real(L, rows), v),
                a.precision);
  emit(a.out, text);
}

void run_filter(const FilterArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  std::string text;
  if (a.lowpass) {
    text = latdsp::format_signal_csv(L, latdsp::lowpass_filter(L, v), a.precision);
  } else {
    SignalRows rows = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.response));
    text = rows.is_complex
               ? latdsp::format_signal_csv(
                     L,
                     latdsp::filter_from_response(L, latdsp::to_full_complex(L, rows), v),
                     a.precision)
               : latdsp::format_signal_csv(
                     L,
                     latdsp::filter_from_response(L, latdsp::to_full_real(L, rows), v),
                     a.precision);
  }
  emit(a.out, text);
}

void run_shift(const FilterArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  const int by = L.index_checked(a.by);
  SignalRows rows = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal));
  std::string text =
      rows.is_complex
          ? latdsp::format_signal_csv(
                L, latdsp::shift(L, latdsp::to_full_complex(L, rows), by, v), a.precision)
          : latdsp::format_signal_csv(
                L, latdsp::shift(L, latdsp::to_full_real(L, rows), by, v), a.precision);
  emit(a.out, text);
}

void run_convolve(const FilterArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  SignalRows hr = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.filter));
  SignalRows sr = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal));
  std::string text;
  if (!hr.is_complex && !sr.is_complex) {
    text = latdsp::format_signal_csv(
        L,
        latdsp::convolve(L, latdsp::to_full_real(L, hr), latdsp::to_full_real(L, sr), v),
        a.precision);
  } else if (!hr.is_complex) {
    text = latdsp::format_signal_csv(
        L,
        latdsp::convolve(L, latdsp::to_full_real(L, hr), latdsp::to_full_complex(L, sr), v),
        a.precision);
  } else {
    text = latdsp::format_signal_csv(
        L,
        latdsp::convolve(L, latdsp::to_full_complex(L, hr),
                         latdsp::to_full_complex(L, sr), v),
        a.precision);
  }
  emit(a.out, text);
}

void run_tv(const FilterArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  RealSignal s = latdsp::to_full_real(
      L, latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal)));
  latdsp::TotalVariation tv = latdsp::total_variation(L, s, v);
  std::ostringstream out;
  out << "generator,tv\n";
  char buf[64];
  for (std::size_t i = 0; i < tv.generators.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.*g", a.precision, tv.tv[i]);
    out << L.name(tv.generators[i]) << "," << buf << "\n";
  }
  std::snprintf(buf, sizeof buf, "%.*g", a.precision, tv.stv);
  out << "total," << buf << "\n";
  emit(a.out, out.str());
}

struct SamplingArgs {
  std::string lattice, signal, support, samples, variant, out = "-";
  double tol = 1e-9;
  int precision = 17;
  bool reduce = false;
};

void run_support(const SamplingArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  RealSignal s = latdsp::to_full_real(
      L, latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal)));
  emit(a.out, latdsp::format_support(L, latdsp::fourier_support(L, s, v, a.tol)));
}

void run_sample(const SamplingArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  RealSignal s = latdsp::to_full_real(
      L, latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal)));
  std::vector<int> sup = latdsp::parse_support(L, latdsp::read_text_file(a.support));
  latdsp::SamplingPlan plan = latdsp::make_plan(L, sup, v);
  std::vector<double> vals = latdsp::sample(plan, s);
  emit(a.out, latdsp::format_subset_csv(L, plan.support(), vals, a.precision));
}

void run_reconstruct(const SamplingArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  std::vector<int> sup = latdsp::parse_support(L, latdsp::read_text_file(a.support));
  latdsp::SamplingPlan plan = latdsp::make_plan(L, sup, v);
  SignalRows rows = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.samples));
  if (rows.is_complex) latdsp::fail(Errc::BadFormat, "samples must be real");
  std::vector<double> vals(static_cast<std::size_t>(plan.k()), 0.0);
  std::vector<char> used(rows.elements.size(), 0);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const int el = plan.support()[i];
    bool found = false;
    for (std::size_t r = 0; r < rows.elements.size() && !found; ++r)
      if (rows.elements[r] == el) {
        vals[i] = rows.values[r].real();
        used[r] = 1;
        found = true;
      }
    if (!found) latdsp::fail(Errc::BadFormat, "no sample for element " + L.name(el));
  }
  for (std::size_t r = 0; r < used.size(); ++r)
    if (!used[r])
      latdsp::fail(Errc::BadFormat, "sample for element " + L.name(rows.elements[r]) +
                                        " is outside the support");
  emit(a.out, latdsp::format_signal_csv(L, latdsp::reconstruct(plan, vals), a.precision));
}

struct FclArgs {
  std::string context, labels, signal_out, out = "-";
  int precision = 17;
  bool clarify = false;
};

void run_fcl(const FclArgs& a) {
  latdsp::Context ctx = latdsp::parse_context_csv(latdsp::read_text_file(a.context));
  if (a.clarify) ctx = ctx.clarified();
  latdsp::ConceptLattice cl = latdsp::build_concept_lattice(ctx);
  std::cerr << cl.concepts.size() << " concepts; " << ctx.object_count()
            << " objects; " << ctx.attribute_count() << " attributes\n";
  std::ostringstream out;
  for (int i = 0; i < cl.lattice.n(); ++i) {
    out << "# " << cl.lattice.name(i) << ": extent {";
    bool first = true;
    cl.concepts[std::size_t(i)].extent.for_each([&](std::size_t o) {
      out << (first ? "" : ",") << cl.objects[o];
      first = false;
    });
    out << "}; intent {";
    first = true;
    cl.concepts[std::size_t(i)].intent.for_each([&](std::size_t at) {
      out << (first ? "" : ",") << cl.attributes[at];
      first = false;
    });
    out << "}\n";
  }
  out << latdsp::format_lattice(cl.lattice);
  emit(a.out, out.str());
  if (!a.labels.empty()) {
    latdsp::LabeledSignal ls = latdsp::attach_signal(
        cl, latdsp::parse_labels_csv(latdsp::read_text_file(a.labels)));
    if (ls.empty_extent)
      std::cerr << "note: concepts with empty extents carry label 0\n";
    emit(a.signal_out,
         latdsp::format_signal_csv(cl.lattice, ls.signal, a.precision));
  }
}

struct MultisetArgs {
  std::vector<int> m;
  std::string type, variant, out = "-";
  std::uint32_t seed = 0;
  int precision = 17;
};

void run_multiset_gen(const MultisetArgs& a) {
  latdsp::MultisetSpec spec{a.m};
  emit(a.out, latdsp::format_lattice(latdsp::build_multiset_lattice(
                  spec, dense_cap(1 << 14))));
}

void run_multiset_bidder(const MultisetArgs& a) {
  latdsp::MultisetSpec spec{a.m};
  Lattice L = latdsp::build_multiset_lattice(spec, dense_cap(1 << 14));
  RealSignal s = latdsp::synth_bidder(spec, latdsp::bidder_type_from_string(a.type),
                                      a.seed, variant_of(a.variant));
  emit(a.out, latdsp::format_signal_csv(L, s, a.precision));
}

struct WienerArgs {
  std::string lattice, ref, noisy, model, signal, variant, out = "-";
  int order = 0;
  int precision = 17;
  bool reduce = false;
};

void run_wiener_fit(const WienerArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  ComplexSignal y = latdsp::to_full_complex(
      L, latdsp::parse_signal_rows(L, latdsp::read_text_file(a.noisy)));
  ComplexSignal ref = latdsp::to_full_complex(
      L, latdsp::parse_signal_rows(L, latdsp::read_text_file(a.ref)));
  latdsp::WienerModel model = latdsp::wiener_fit(L, y, ref, a.order, v);
  if (model.ill_conditioned)
    std::cerr << "note: rank-deficient basis, minimum-norm solution\n";
  emit(a.out, latdsp::format_model_json(model));
}

void run_wiener_apply(const WienerArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  const Variant v = variant_of(a.variant);
  latdsp::WienerModel model =
      latdsp::parse_model_json(latdsp::read_text_file(a.model));
  ComplexSignal y = latdsp::to_full_complex(
      L, latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal)));
  emit(a.out,
       latdsp::format_signal_csv(L, latdsp::wiener_apply(L, model, y, v), a.precision));
}

struct NoiseArgs {
  std::string lattice, variant, out = "-";
  double sigma = 0.0;
  std::uint64_t seed = 0;
  int precision = 17;
  bool reduce = false;
};

void run_noise(const NoiseArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  emit(a.out, latdsp::format_signal_csv(
                  L, latdsp::white_noise(L, a.sigma, a.seed, variant_of(a.variant)),
                  a.precision));
}

struct DotArgs {
  std::string lattice, signal, out = "-";
  bool dual = false, reduce = false;
};

void run_export_dot(const DotArgs& a) {
  Lattice L = load_lattice(a.lattice, a.reduce);
  std::vector<std::string> values;
  if (!a.signal.empty()) {
    SignalRows rows = latdsp::parse_signal_rows(L, latdsp::read_text_file(a.signal));
    latdsp::to_full_complex(L, rows);  // demands one row per element
    values.assign(static_cast<std::size_t>(L.n()), std::string());
    for (std::size_t r = 0; r < rows.elements.size(); ++r)
      values[static_cast<std::size_t>(rows.elements[r])] = rows.raw[r];
  }
  emit(a.out, latdsp::format_dot(L, values, a.dual));
}

void add_out(CLI::App* sub, std::string& out) {
  sub->add_option("-o,--output", out, "output file, - for stdout");
}

void add_precision(CLI::App* sub, int& precision) {
  sub->add_option("--precision", precision, "significant digits")
      ->check(CLI::Range(1, 17));
}

void add_variant(CLI::App* sub, std::string& variant) {
  sub->add_option("--variant", variant, "meet or join")
      ->required()
      ->check(CLI::IsMember({"meet", "join"}));
}

CLI::Option* add_lattice(CLI::App* sub, std::string& path, bool& reduce) {
  sub->add_flag("--reduce", reduce, "reduce transitively implied cover edges");
  return sub->add_option("--lattice", path, "lattice file (text or JSON)")
      ->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-lattice signal processing toolkit"};
  app.require_subcommand(1);

  ValidateArgs va;
  CLI::App* validate = app.add_subcommand("validate", "check lattice structure");
  validate->add_option("lattice", va.lattice, "lattice file")->required();
  validate->add_option("--require", va.require, "structure to demand")
      ->check(CLI::IsMember({"any", "meet", "join", "lattice"}));
  validate->add_flag("--reduce", va.reduce, "reduce transitively implied cover edges");
  validate->callback([&va] { run_validate(va); });

  TransformArgs da;
  CLI::App* dlt = app.add_subcommand("dlt", "signal to spectrum");
  add_lattice(dlt, da.lattice, da.reduce);
  dlt->add_option("--signal", da.signal, "signal CSV")->required();
  add_variant(dlt, da.variant);
  dlt->add_flag("--fast", da.fast, "use the fast plan");
  dlt->add_flag("--check", da.check, "cross-validate fast against dense");
  add_out(dlt, da.out);
  add_precision(dlt, da.precision);
  dlt->callback([&da] { run_transform(da, true); });

  TransformArgs ia;
  CLI::App* idlt = app.add_subcommand("idlt", "spectrum to signal");
  add_lattice(idlt, ia.lattice, ia.reduce);
  idlt->add_option("--signal", ia.signal, "spectrum CSV")->required();
  add_variant(idlt, ia.variant);
  idlt->add_flag("--fast", ia.fast, "use the fast plan");
  idlt->add_flag("--check", ia.check, "cross-validate fast against dense");
  add_out(idlt, ia.out);
  add_precision(idlt, ia.precision);
  idlt->callback([&ia] { run_transform(ia, false); });

  FilterArgs fr;
  CLI::App* freqresp = app.add_subcommand("freqresp", "frequency response of a filter");
  add_lattice(freqresp, fr.lattice, fr.reduce);
  freqresp->add_option("--filter", fr.filter, "filter coefficient CSV")->required();
  add_variant(freqresp, fr.variant);
  add_out(freqresp, fr.out);
  add_precision(freqresp, fr.precision);
  freqresp->callback([&fr] { run_freqresp(fr); });

  FilterArgs fd;
  CLI::App* filter = app.add_subcommand("filter", "filter taps from a response");
  add_lattice(filter, fd.lattice, fd.reduce);
  CLI::Option* resp = filter->add_option("--response", fd.response, "target response CSV");
  CLI::Option* lp = filter->add_flag("--lowpass", fd.lowpass,
                                     "emit the generator low-pass filter");
  resp->excludes(lp);
  add_variant(filter, fd.variant);
  add_out(filter, fd.out);
  add_precision(filter, fd.precision);
  filter->callback([&fd, resp, lp] {
    if (!*resp && !*lp)
      throw CLI::RequiredError("--response or --lowpass");
    run_filter(fd);
  });

  FilterArgs sh;
  CLI::App* shift = app.add_subcommand("shift", "shift a signal by an element");
  add_lattice(shift, sh.lattice, sh.reduce);
  shift->add_option("--signal", sh.signal, "signal CSV")->required();
  shift->add_option("--by", sh.by, "shift element name")->required();
  add_variant(shift, sh.variant);
  add_out(shift, sh.out);
  add_precision(shift, sh.precision);
  shift->callback([&sh] { run_shift(sh); });

  FilterArgs cv;
  CLI::App* convolve = app.add_subcommand("convolve", "apply a filter to a signal");
  add_lattice(convolve, cv.lattice, cv.reduce);
  convolve->add_option("--filter", cv.filter, "filter coefficient CSV")->required();
  convolve->add_option("--signal", cv.signal, "signal CSV")->required();
  add_variant(convolve, cv.variant);
  add_out(convolve, cv.out);
  add_precision(convolve, cv.precision);
  convolve->callback([&cv] { run_convolve(cv); });

  FilterArgs tv;
  CLI::App* tvc = app.add_subcommand("tv", "per-generator total variation");
  add_lattice(tvc, tv.lattice, tv.reduce);
  tvc->add_option("--signal", tv.signal, "signal CSV")->required();
  add_variant(tvc, tv.variant);
  add_out(tvc, tv.out);
  add_precision(tvc, tv.precision);
  tvc->callback([&tv] { run_tv(tv); });

  SamplingArgs su;
  CLI::App* support = app.add_subcommand("support", "spectral support of a signal");
  add_lattice(support, su.lattice, su.reduce);
  support->add_option("--signal", su.signal, "signal CSV")->required();
  support->add_option("--tol", su.tol, "relative magnitude threshold");
  add_variant(support, su.variant);
  add_out(support, su.out);
  support->callback([&su] { run_support(su); });

  SamplingArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "sample a signal on a support");
  add_lattice(sample, sa.lattice, sa.reduce);
  sample->add_option("--signal", sa.signal, "signal CSV")->required();
  sample->add_option("--support,--plan", sa.support, "support file")->required();
  add_variant(sample, sa.variant);
  add_out(sample, sa.out);
  add_precision(sample, sa.precision);
  sample->callback([&sa] { run_sample(sa); });

  SamplingArgs re;
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "rebuild a signal from samples");
  add_lattice(reconstruct, re.lattice, re.reduce);
  reconstruct->add_option("--samples", re.samples, "sample CSV")->required();
  reconstruct->add_option("--support,--plan", re.support, "support file")->required();
  add_variant(reconstruct, re.variant);
  add_out(reconstruct, re.out);
  add_precision(reconstruct, re.precision);
  reconstruct->callback([&re] { run_reconstruct(re); });

  FclArgs fc;
  CLI::App* fcl = app.add_subcommand("fcl", "concept lattice from a context");
  fcl->add_option("--context", fc.context, "context CSV")->required();
  CLI::Option* lab = fcl->add_option("--labels", fc.labels, "object label CSV");
  CLI::Option* sig =
      fcl->add_option("--signal-out", fc.signal_out, "mean-label signal CSV path");
  lab->needs(sig);
  sig->needs(lab);
  fcl->add_flag("--clarify", fc.clarify, "merge objects with identical rows");
  add_out(fcl, fc.out);
  add_precision(fcl, fc.precision);
  fcl->callback([&fc] { run_fcl(fc); });

  CLI::App* multiset = app.add_subcommand("multiset", "multiset lattice tools");
  multiset->require_subcommand(1);
  MultisetArgs mg;
  CLI::App* gen = multiset->add_subcommand("gen", "build a multiset lattice");
  gen->add_option("--m", mg.m, "per-type capacities, comma separated")
      ->required()
      ->delimiter(',');
  add_out(gen, mg.out);
  gen->callback([&mg] { run_multiset_gen(mg); });

  MultisetArgs mb;
  CLI::App* bidder = multiset->add_subcommand("bidder", "synthetic bidder valuation");
  bidder->add_option("--m", mb.m, "per-type capacities, comma separated")
      ->required()
      ->delimiter(',');
  bidder->add_option("--type", mb.type, "bidder profile")
      ->required()
      ->check(CLI::IsMember({"small", "highfreq", "secondary", "primary"}));
  bidder->add_option("--seed", mb.seed, "draw seed")->required();
  add_variant(bidder, mb.variant);
  add_out(bidder, mb.out);
  add_precision(bidder, mb.precision);
  bidder->callback([&mb] { run_multiset_bidder(mb); });

  CLI::App* wiener = app.add_subcommand("wiener", "energy-shift Wiener filtering");
  wiener->require_subcommand(1);
  WienerArgs wf;
  CLI::App* fit = wiener->add_subcommand("fit", "fit shift-polynomial coefficients");
  add_lattice(fit, wf.lattice, wf.reduce);
  fit->add_option("--order", wf.order, "polynomial order")->required();
  fit->add_option("--ref", wf.ref, "reference signal CSV")->required();
  fit->add_option("--noisy", wf.noisy, "observed signal CSV")->required();
  add_variant(fit, wf.variant);
  add_out(fit, wf.out);
  fit->callback([&wf] { run_wiener_fit(wf); });

  WienerArgs wa;
  CLI::App* apply = wiener->add_subcommand("apply", "apply a fitted model");
  add_lattice(apply, wa.lattice, wa.reduce);
  apply->add_option("--model", wa.model, "model JSON")->required();
  apply->add_option("--signal", wa.signal, "signal CSV")->required();
  add_variant(apply, wa.variant);
  add_out(apply, wa.out);
  add_precision(apply, wa.precision);
  apply->callback([&wa] { run_wiener_apply(wa); });

  NoiseArgs na;
  CLI::App* noise = app.add_subcommand("noise", "spectrally white noise draw");
  add_lattice(noise, na.lattice, na.reduce);
  noise->add_option("--sigma", na.sigma, "spectral standard deviation")->required();
  noise->add_option("--seed", na.seed, "draw seed")->required();
  add_variant(noise, na.variant);
  add_out(noise, na.out);
  add_precision(noise, na.precision);
  noise->callback([&na] { run_noise(na); });

  DotArgs dt;
  CLI::App* dot = app.add_subcommand("export-dot", "Hasse diagram in DOT");
  add_lattice(dot, dt.lattice, dt.reduce);
  dot->add_option("--signal", dt.signal, "value overlay CSV");
  dot->add_flag("--dual", dt.dual, "flip edge direction");
  add_out(dot, dt.out);
  dot->callback([&dt] { run_export_dot(dt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const latdsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::BadFormat ? 1 : 2;
  }
  return g_status;
}
