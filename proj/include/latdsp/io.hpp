#pragma once

#include <map>
#include <string>
#include <vector>

#include "latdsp/fca.hpp"
#include "latdsp/lattice.hpp"
#include "latdsp/signal.hpp"
#include "latdsp/wiener.hpp"

// Text formats tying the library to files: a lattice description, signal and
// context CSVs, support lists, Wiener models as JSON, and DOT export. Every
// formatter is deterministic and every parser reports the offending line.
namespace latdsp {

// Whole-file helpers. Unopenable paths raise BadFormat naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Lattice text format: line-oriented `elem <id>` declarations followed by
// `cover <upper> <lower>` lines. Blank lines and lines starting with '#' are
// skipped; ids must be free of whitespace. The formatter writes elements in
// topological order, so export/import round-trips byte-identically.
//
// parse_lattice also accepts a JSON object {"elements":[...],"covers":
// [["upper","lower"],...]}, detected by a leading '{'. Either way the lattice
// is rebuilt from the cover relation, so structural defects surface with
// their usual error codes; `reduce` forwards to Lattice::from_covers and
// permits transitively implied edges, which are an error by default.
std::string format_lattice(const Lattice& L);
Lattice parse_lattice(const std::string& text, bool reduce = false);

// Signal CSV: header "element,value", one row per element. Values print with
// %.17g by default, which round-trips doubles exactly; complex values print
// as re{+-}im i, e.g. "2.5-0.25i".
std::string format_signal_csv(const Lattice& L, const RealSignal& s, int precision = 17);
std::string format_signal_csv(const Lattice& L, const ComplexSignal& s,
                              int precision = 17);
std::string format_subset_csv(const Lattice& L, const std::vector<int>& elements,
                              const std::vector<double>& values, int precision = 17);

// Rows of a signal CSV in file order. raw keeps the value fields verbatim
// for overlays; is_complex records whether any imaginary part appeared.
struct SignalRows {
  std::vector<int> elements;
  ComplexSignal values;
  std::vector<std::string> raw;
  bool is_complex = false;
};
SignalRows parse_signal_rows(const Lattice& L, const std::string& text);

// Full-coverage views of parsed rows, reordered to topological order.
// Missing or duplicate elements are BadFormat; to_full_real also rejects
// nonzero imaginary parts.
ComplexSignal to_full_complex(const Lattice& L, const SignalRows& rows);
RealSignal to_full_real(const Lattice& L, const SignalRows& rows);

// Support list: one element name per line, written in topological order.
std::string format_support(const Lattice& L, const std::vector<int>& support);
std::vector<int> parse_support(const Lattice& L, const std::string& text);

// Context CSV: first row ",attr1,attr2,...", then one row per object with
// cells 1/x/X for incidence and 0/blank for none.
std::string format_context_csv(const Context& ctx);
Context parse_context_csv(const std::string& text);

// Labels CSV: header "object,value", one numeric label per object.
std::string format_labels_csv(const std::vector<std::string>& objects,
                              const std::vector<double>& values, int precision = 17);
std::map<std::string, double> parse_labels_csv(const std::string& text);

// Wiener model JSON: {"order": k, "coefficients": [[re, im], ...]}.
std::string format_model_json(const WienerModel& m);
WienerModel parse_model_json(const std::string& text);

// Hasse diagram in DOT. Edges run lower -> upper (flipped under dual);
// node_values, when nonempty, must hold one preformatted label per element
// and is quoted verbatim under the element name.
std::string format_dot(const Lattice& L, const std::vector<std::string>& node_values,
                       bool dual = false);

}  // namespace latdsp
