#include "latdsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "latdsp/errors.hpp"

namespace latdsp {

namespace {

[[noreturn]] void fail_line(int line, const std::string& msg) {
  fail(Errc::BadFormat, "line " + std::to_string(line) + ": " + msg);
}

// Lines with their 1-based numbers, CR stripped. keep_blank retains empty
// lines so CSV row numbering stays faithful; they are skipped either way.
std::vector<std::pair<int, std::string>> split_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  int line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string s = text.substr(pos, end - pos);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    out.emplace_back(line, std::move(s));
    ++line;
    pos = end + 1;
  }
  if (!out.empty() && out.back().second.empty()) out.pop_back();
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string fmt_complex(const std::complex<double>& z, int precision) {
  std::string out = fmt_double(z.real(), precision);
  std::string im = fmt_double(z.imag(), precision);
  if (im[0] != '-') out += '+';
  out += im;
  out += 'i';
  return out;
}

double parse_double(const std::string& field, int line) {
  const std::string t = trim(field);
  if (t.empty()) fail_line(line, "empty number");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) fail_line(line, "bad number '" + t + "'");
  return v;
}

std::complex<double> parse_value(const std::string& field, int line) {
  std::string t = trim(field);
  if (t.empty()) fail_line(line, "empty value");
  if (t.back() != 'i') return {parse_double(t, line), 0.0};
  t.pop_back();
  // split before the sign of the imaginary part, ignoring exponent signs
  std::size_t split = std::string::npos;
  for (std::size_t p = t.size(); p-- > 1;) {
    if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_double(t, line)};
  return {parse_double(t.substr(0, split), line), parse_double(t.substr(split), line)};
}

int require_element(const Lattice& L, const std::string& name, int line) {
  const int idx = L.index(name);
  if (idx < 0) fail_line(line, "unknown element '" + name + "'");
  return idx;
}

void check_name(const std::string& name) {
  bool bad = name.empty() || name[0] == '#';
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c))) bad = true;
  if (bad)
    fail(Errc::BadFormat,
         "element name '" + name + "' cannot be written to the text format");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::BadFormat, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::BadFormat, "cannot open file for writing: " + path);
  out << text;
  if (!out) fail(Errc::BadFormat, "write failed: " + path);
}

std::string format_lattice(const Lattice& L) {
  // without dense structure the cover relation was never materialized, so a
  // faithful export is impossible
  if (!L.has_dense_order() && L.n() > 1)
    fail(Errc::TooLarge, "cover relation is not materialized at this size");
  for (const std::string& name : L.names()) check_name(name);
  std::ostringstream out;
  for (const std::string& name : L.names()) out << "elem " << name << "\n";
  for (auto [u, l] : L.covers()) out << "cover " << L.name(u) << " " << L.name(l) << "\n";
  return out.str();
}

namespace {

Lattice parse_lattice_json(const std::string& text, bool reduce) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(Errc::BadFormat, "lattice JSON does not parse");
  if (!j.contains("elements") || !j["elements"].is_array())
    fail(Errc::BadFormat, "lattice JSON needs an \"elements\" array");
  if (!j.contains("covers") || !j["covers"].is_array())
    fail(Errc::BadFormat, "lattice JSON needs a \"covers\" array");
  std::vector<std::string> names;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) fail(Errc::BadFormat, "element ids must be strings");
    names.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : j["covers"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      fail(Errc::BadFormat, "covers must be [\"upper\",\"lower\"] pairs");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  if (names.empty()) fail(Errc::BadFormat, "no elements declared");
  return Lattice::from_covers(names, covers, reduce);
}

}  // namespace

Lattice parse_lattice(const std::string& text, bool reduce) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_lattice_json(text, reduce);
    break;
  }
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto& [num, s] : split_lines(text)) {
    const std::string t = trim(s);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string kw, extra;
    ls >> kw;
    if (kw == "elem") {
      std::string name;
      if (!(ls >> name)) fail_line(num, "expected 'elem <id>'");
      if (ls >> extra) fail_line(num, "element id '" + name + "' has trailing text");
      names.push_back(std::move(name));
    } else if (kw == "cover") {
      std::string upper, lower;
      if (!(ls >> upper >> lower)) fail_line(num, "expected 'cover <upper> <lower>'");
      if (ls >> extra) fail_line(num, "trailing text after cover pair");
      covers.emplace_back(std::move(upper), std::move(lower));
    } else {
      fail_line(num, "expected 'elem' or 'cover', got '" + kw + "'");
    }
  }
  if (names.empty()) fail(Errc::BadFormat, "no elements declared");
  return Lattice::from_covers(names, covers, reduce);
}

std::string format_signal_csv(const Lattice& L, const RealSignal& s, int precision) {
  require_length(L, s.size());
  std::ostringstream out;
  out << "element,value\n";
  for (int i = 0; i < L.n(); ++i)
    out << L.name(i) << "," << fmt_double(s[std::size_t(i)], precision) << "\n";
  return out.str();
}

std::string format_signal_csv(const Lattice& L, const ComplexSignal& s, int precision) {
  require_length(L, s.size());
  std::ostringstream out;
  out << "element,value\n";
  for (int i = 0; i < L.n(); ++i)
    out << L.name(i) << "," << fmt_complex(s[std::size_t(i)], precision) << "\n";
  return out.str();
}

std::string format_subset_csv(const Lattice& L, const std::vector<int>& elements,
                              const std::vector<double>& values, int precision) {
  if (elements.size() != values.size())
    fail(Errc::DimensionMismatch, "one value per element required");
  std::ostringstream out;
  out << "element,value\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const int e = elements[i];
    if (e < 0 || e >= L.n()) fail(Errc::OutOfBounds, "element index out of range");
    out << L.name(e) << "," << fmt_double(values[i], precision) << "\n";
  }
  return out.str();
}

SignalRows parse_signal_rows(const Lattice& L, const std::string& text) {
  SignalRows rows;
  bool header_seen = false;
  std::vector<char> seen(static_cast<std::size_t>(L.n()), 0);
  for (auto& [num, s] : split_lines(text)) {
    if (trim(s).empty()) continue;
    if (!header_seen) {
      if (trim(s) != "element,value")
        fail_line(num, "expected header 'element,value'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = s.find(',');
    if (comma == std::string::npos) fail_line(num, "expected 'element,value' row");
    const std::string name = trim(s.substr(0, comma));
    const std::string field = trim(s.substr(comma + 1));
    const int idx = require_element(L, name, num);
    if (seen[std::size_t(idx)]) fail_line(num, "duplicate element '" + name + "'");
    seen[std::size_t(idx)] = 1;
    const std::complex<double> v = parse_value(field, num);
    rows.elements.push_back(idx);
    rows.values.push_back(v);
    rows.raw.push_back(field);
    if (v.imag() != 0.0 || field.back() == 'i') rows.is_complex = true;
  }
  if (!header_seen) fail(Errc::BadFormat, "empty signal file");
  return rows;
}

ComplexSignal to_full_complex(const Lattice& L, const SignalRows& rows) {
  if (int(rows.elements.size()) != L.n())
    fail(Errc::BadFormat, "signal file covers " + std::to_string(rows.elements.size()) +
                              " of " + std::to_string(L.n()) + " elements");
  ComplexSignal out(static_cast<std::size_t>(L.n()));
  for (std::size_t i = 0; i < rows.elements.size(); ++i)
    out[std::size_t(rows.elements[i])] = rows.values[i];
  return out;
}

RealSignal to_full_real(const Lattice& L, const SignalRows& rows) {
  ComplexSignal full = to_full_complex(L, rows);
  RealSignal out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full[i].imag() != 0.0)
      fail(Errc::BadFormat, "signal has an imaginary part at element " +
                                L.name(int(i)) + "; a real signal is required");
    out[i] = full[i].real();
  }
  return out;
}

std::string format_support(const Lattice& L, const std::vector<int>& support) {
  std::vector<int> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (int e : sorted) {
    if (e < 0 || e >= L.n()) fail(Errc::OutOfBounds, "element index out of range");
    out << L.name(e) << "\n";
  }
  return out.str();
}

std::vector<int> parse_support(const Lattice& L, const std::string& text) {
  std::vector<int> out;
  std::vector<char> seen(static_cast<std::size_t>(L.n()), 0);
  for (auto& [num, s] : split_lines(text)) {
    const std::string t = trim(s);
    if (t.empty() || t[0] == '#') continue;
    const int idx = require_element(L, t, num);
    if (seen[std::size_t(idx)]) fail_line(num, "duplicate element '" + t + "'");
    seen[std::size_t(idx)] = 1;
    out.push_back(idx);
  }
  return out;
}

std::string format_context_csv(const Context& ctx) {
  std::ostringstream out;
  for (const std::string& a : ctx.attributes()) {
    if (a.find(',') != std::string::npos)
      fail(Errc::BadFormat, "attribute name '" + a + "' contains a comma");
    out << "," << a;
  }
  out << "\n";
  for (int o = 0; o < ctx.object_count(); ++o) {
    const std::string& name = ctx.objects()[std::size_t(o)];
    if (name.find(',') != std::string::npos)
      fail(Errc::BadFormat, "object name '" + name + "' contains a comma");
    out << name;
    for (int a = 0; a < ctx.attribute_count(); ++a)
      out << "," << (ctx.incident(o, a) ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

Context parse_context_csv(const std::string& text) {
  auto lines = split_lines(text);
  std::size_t pos = 0;
  while (pos < lines.size() && trim(lines[pos].second).empty()) ++pos;
  if (pos == lines.size()) fail(Errc::BadFormat, "empty context file");

  auto split_cells = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(s.substr(start));
        return cells;
      }
      cells.push_back(s.substr(start, comma - start));
      start = comma + 1;
    }
  };

  auto [hline, hrow] = lines[pos++];
  std::vector<std::string> head = split_cells(hrow);
  if (!trim(head[0]).empty())
    fail_line(hline, "context header must start with an empty cell");
  std::vector<std::string> attrs;
  for (std::size_t i = 1; i < head.size(); ++i) {
    const std::string a = trim(head[i]);
    if (a.empty()) fail_line(hline, "empty attribute name");
    attrs.push_back(a);
  }

  std::vector<std::string> objects;
  std::vector<std::vector<bool>> cells;
  for (; pos < lines.size(); ++pos) {
    auto& [num, row] = lines[pos];
    if (trim(row).empty()) continue;
    std::vector<std::string> fields = split_cells(row);
    if (fields.size() != attrs.size() + 1)
      fail_line(num, "expected " + std::to_string(attrs.size() + 1) + " cells, got " +
                         std::to_string(fields.size()));
    const std::string name = trim(fields[0]);
    if (name.empty()) fail_line(num, "empty object name");
    objects.push_back(name);
    std::vector<bool> inc;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string c = trim(fields[i]);
      if (c.empty() || c == "0")
        inc.push_back(false);
      else if (c == "1" || c == "x" || c == "X" || c == "\xc3\x97")  // multiplication sign
        inc.push_back(true);
      else
        fail_line(num, "cell '" + c + "' is not 0/1/x/blank");
    }
    cells.push_back(std::move(inc));
  }

  Context ctx(objects, attrs);
  for (std::size_t o = 0; o < cells.size(); ++o)
    for (std::size_t a = 0; a < cells[o].size(); ++a)
      if (cells[o][a]) ctx.relate(int(o), int(a));
  return ctx;
}

std::string format_labels_csv(const std::vector<std::string>& objects,
                              const std::vector<double>& values, int precision) {
  if (objects.size() != values.size())
    fail(Errc::DimensionMismatch, "one label per object required");
  std::ostringstream out;
  out << "object,value\n";
  for (std::size_t i = 0; i < objects.size(); ++i)
    out << objects[i] << "," << fmt_double(values[i], precision) << "\n";
  return out.str();
}

std::map<std::string, double> parse_labels_csv(const std::string& text) {
  std::map<std::string, double> out;
  bool header_seen = false;
  for (auto& [num, s] : split_lines(text)) {
    if (trim(s).empty()) continue;
    if (!header_seen) {
      if (trim(s) != "object,value") fail_line(num, "expected header 'object,value'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = s.find(',');
    if (comma == std::string::npos) fail_line(num, "expected 'object,value' row");
    const std::string name = trim(s.substr(0, comma));
    if (name.empty()) fail_line(num, "empty object name");
    if (out.count(name)) fail_line(num, "duplicate object '" + name + "'");
    out[name] = parse_double(s.substr(comma + 1), num);
  }
  if (!header_seen) fail(Errc::BadFormat, "empty labels file");
  return out;
}

std::string format_model_json(const WienerModel& m) {
  nlohmann::json j;
  j["order"] = m.order;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& h : m.coefficients)
    coeffs.push_back(nlohmann::json::array({h.real(), h.imag()}));
  j["coefficients"] = coeffs;
  if (m.ill_conditioned) j["ill_conditioned"] = true;
  return j.dump(2) + "\n";
}

WienerModel parse_model_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::BadFormat, "model file is not valid JSON");
  if (!j.is_object() || !j.contains("order") || !j.contains("coefficients") ||
      !j["order"].is_number_integer() || !j["coefficients"].is_array())
    fail(Errc::BadFormat, "model JSON must hold \"order\" and \"coefficients\"");
  WienerModel m;
  m.order = j["order"].get<int>();
  for (const auto& entry : j["coefficients"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      fail(Errc::BadFormat, "each coefficient must be a [re, im] pair");
    m.coefficients.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  if (j.contains("ill_conditioned")) {
    if (!j["ill_conditioned"].is_boolean())
      fail(Errc::BadFormat, "ill_conditioned must be a boolean");
    m.ill_conditioned = j["ill_conditioned"].get<bool>();
  }
  return m;
}

std::string format_dot(const Lattice& L, const std::vector<std::string>& node_values,
                       bool dual) {
  if (!node_values.empty() && int(node_values.size()) != L.n())
    fail(Errc::DimensionMismatch, "one value per element required");
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  auto quote = [&escape](const std::string& s) { return "\"" + escape(s) + "\""; };
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n";
  for (int i = 0; i < L.n(); ++i) {
    out << "  " << quote(L.name(i));
    if (!node_values.empty())
      out << " [label=\"" << escape(L.name(i)) << "\\n"
          << escape(node_values[std::size_t(i)]) << "\"]";
    out << ";\n";
  }
  for (auto [u, l] : L.covers()) {
    if (dual)
      out << "  " << quote(L.name(u)) << " -> " << quote(L.name(l)) << ";\n";
    else
      out << "  " << quote(L.name(l)) << " -> " << quote(L.name(u)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace latdsp
