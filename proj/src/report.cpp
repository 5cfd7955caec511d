#include "sharpwave/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sharpwave {

namespace {

using nlohmann::json;

std::string quote(const std::string& s) { return json(s).dump(); }

std::string num(double x) {
  if (std::isfinite(x)) return format_double(x);
  return quote(format_double(x));
}

// Small streaming writer; keeps key order exactly as written.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostringstream& os) : os_(os) {}

  void open(char c) {
    comma();
    os_ << c;
    first_ = true;
  }
  void close(char c) {
    os_ << c;
    first_ = false;
  }
  void key(const std::string& k) {
    comma();
    os_ << quote(k) << ':';
    first_ = true;  // value follows without a comma
  }
  void raw(const std::string& v) {
    comma();
    os_ << v;
  }
  void kv(const std::string& k, const std::string& raw_value) {
    key(k);
    raw(raw_value);
  }

 private:
  void comma() {
    if (!first_) os_ << ',';
    first_ = false;
  }
  std::ostringstream& os_;
  bool first_ = true;
};

template <class M, class F>
void write_map(JsonWriter& w, const std::string& name, const M& m, F value) {
  w.key(name);
  w.open('{');
  for (const auto& [k, v] : m) w.kv(k, value(v));
  w.close('}');
}

void write_report(JsonWriter& w, const VerificationReport& r) {
  w.open('{');
  w.kv("name", quote(r.name));
  w.kv("status", quote(r.status));
  w.kv("passed", r.passed ? "true" : "false");
  w.kv("runtime_ms", std::to_string(r.runtime_ms));
  write_map(w, "inputs", r.inputs, quote);
  write_map(w, "computed", r.computed, num);
  w.key("reference");
  w.open('{');
  for (const auto& [k, ref] : r.reference) {
    w.key(k);
    w.open('{');
    w.kv("value", num(ref.value));
    w.kv("provenance", quote(ref.provenance));
    w.close('}');
  }
  w.close('}');
  write_map(w, "rel_errors", r.rel_errors, num);
  write_map(w, "tolerances", r.tolerances, num);
  write_map(w, "stderrs", r.stderrs, num);
  write_map(w, "relations", r.relations, quote);
  w.key("notes");
  w.open('[');
  for (const auto& n : r.notes) w.raw(quote(n));
  w.close(']');
  w.close('}');
}

double read_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("report_from_json: expected a number, got " + j.dump());
}

VerificationReport read_report(const json& j) {
  VerificationReport r;
  r.name = j.at("name").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  for (const auto& [k, v] : j.at("inputs").items()) r.inputs[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("computed").items()) r.computed[k] = read_double(v);
  for (const auto& [k, v] : j.at("reference").items())
    r.reference[k] = Reference{read_double(v.at("value")), v.at("provenance").get<std::string>()};
  for (const auto& [k, v] : j.at("rel_errors").items()) r.rel_errors[k] = read_double(v);
  for (const auto& [k, v] : j.at("tolerances").items()) r.tolerances[k] = read_double(v);
  for (const auto& [k, v] : j.at("stderrs").items()) r.stderrs[k] = read_double(v);
  for (const auto& [k, v] : j.at("relations").items()) r.relations[k] = v.get<std::string>();
  for (const auto& n : j.at("notes")) r.notes.push_back(n.get<std::string>());
  return r;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report_from_json: ") + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void csv_row(std::ostringstream& os, const std::string& k, const std::string& v) {
  os << csv_field(k) << ',' << csv_field(v) << '\n';
}

}  // namespace

std::string to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "json";
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw std::invalid_argument("unknown format '" + s + "' (expected json, csv or text)");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const VerificationReport& r) {
  std::ostringstream os;
  JsonWriter w(os);
  write_report(w, r);
  return os.str();
}

std::string to_json(const std::vector<VerificationReport>& rs) {
  std::ostringstream os;
  JsonWriter w(os);
  w.open('[');
  for (const auto& r : rs) write_report(w, r);
  w.close(']');
  return os.str();
}

std::string to_json(const ScanResult& s) {
  std::ostringstream os;
  JsonWriter w(os);
  w.open('{');
  w.kv("name", quote(s.name));
  w.key("delta");
  w.open('[');
  for (double p : s.params) w.raw(num(p));
  w.close(']');
  w.key("value");
  w.open('[');
  for (double v : s.values) w.raw(num(v));
  w.close(']');
  w.kv("slope", num(s.slope));
  w.kv("slope_stderr", num(s.slope_stderr));
  w.kv("theory_slope", num(s.theory_slope));
  w.kv("fit_points", std::to_string(s.fit_points));
  w.close('}');
  return os.str();
}

std::string to_json(const std::vector<ConstantEntry>& table) {
  std::ostringstream os;
  JsonWriter w(os);
  w.open('[');
  for (const auto& e : table) {
    w.open('{');
    w.kv("name", quote(e.name));
    w.kv("d", std::to_string(e.d));
    w.kv("beta", num(e.beta));
    w.kv("value", num(e.value));
    w.kv("log_value", num(e.log_value));
    w.close('}');
  }
  w.close(']');
  return os.str();
}

VerificationReport report_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    return read_report(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report_from_json: ") + e.what());
  }
}

std::vector<VerificationReport> reports_from_json(const std::string& text) {
  const json j = parse(text);
  std::vector<VerificationReport> out;
  try {
    if (j.is_array()) {
      for (const auto& e : j) out.push_back(read_report(e));
    } else {
      out.push_back(read_report(j));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("reports_from_json: ") + e.what());
  }
  return out;
}

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "key,value\n";
  csv_row(os, "name", r.name);
  csv_row(os, "status", r.status);
  csv_row(os, "passed", r.passed ? "true" : "false");
  csv_row(os, "runtime_ms", std::to_string(r.runtime_ms));
  for (const auto& [k, v] : r.inputs) csv_row(os, "inputs." + k, v);
  for (const auto& [k, v] : r.computed) csv_row(os, "computed." + k, format_double(v));
  for (const auto& [k, v] : r.reference) {
    csv_row(os, "reference." + k + ".value", format_double(v.value));
    csv_row(os, "reference." + k + ".provenance", v.provenance);
  }
  for (const auto& [k, v] : r.rel_errors) csv_row(os, "rel_errors." + k, format_double(v));
  for (const auto& [k, v] : r.tolerances) csv_row(os, "tolerances." + k, format_double(v));
  for (const auto& [k, v] : r.stderrs) csv_row(os, "stderrs." + k, format_double(v));
  for (const auto& [k, v] : r.relations) csv_row(os, "relations." + k, v);
  for (std::size_t i = 0; i < r.notes.size(); ++i) csv_row(os, "notes." + std::to_string(i), r.notes[i]);
  return os.str();
}

std::string scan_to_csv(const ScanResult& s) {
  std::ostringstream os;
  os << "delta,value\n";
  for (std::size_t i = 0; i < s.params.size(); ++i)
    os << format_double(s.params[i]) << ',' << format_double(s.values[i]) << '\n';
  return os.str();
}

std::string to_csv(const std::vector<ConstantEntry>& table) {
  std::ostringstream os;
  os << "name,d,beta,value,log_value\n";
  for (const auto& e : table)
    os << csv_field(e.name) << ',' << e.d << ',' << format_double(e.beta) << ',' << format_double(e.value)
       << ',' << format_double(e.log_value) << '\n';
  return os.str();
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.name << ": " << r.status;
  if (r.runtime_ms > 0) os << " (" << r.runtime_ms << " ms)";
  os << '\n';
  for (const auto& [k, v] : r.inputs) os << "  " << k << " = " << v << '\n';
  std::size_t width = 8;
  for (const auto& [k, v] : r.computed) width = std::max(width, k.size());
  os << std::setprecision(12);
  for (const auto& [k, v] : r.computed) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << std::setw(20) << v;
    auto ref = r.reference.find(k);
    if (ref != r.reference.end()) {
      const auto rel = r.relations.count(k) ? r.relations.at(k) : std::string("eq");
      const char* sym = rel == "le" ? "<=" : rel == "ge" ? ">=" : "~ ";
      const double err = r.rel_errors.count(k) ? r.rel_errors.at(k) : 0.0;
      const double tol = r.tolerances.count(k) ? r.tolerances.at(k) : 0.0;
      const bool ok = err <= tol;
      os << sym << ' ' << std::setw(20) << ref->second.value << std::setprecision(2) << std::scientific
         << " err " << err << " tol " << tol << (ok ? "  ok" : "  FAIL") << std::defaultfloat
         << std::setprecision(12);
    }
    os << '\n';
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return os.str();
}

std::string to_text(const ScanResult& s) {
  std::ostringstream os;
  os << s.name << ": slope " << std::setprecision(6) << s.slope << " +- " << s.slope_stderr << " (theory "
     << s.theory_slope << ", " << s.fit_points << " points)\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < s.params.size(); ++i)
    os << "  " << std::setw(22) << s.params[i] << "  " << s.values[i] << '\n';
  return os.str();
}

std::string to_text(const std::vector<ConstantEntry>& table) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "name" << std::setw(4) << "d" << std::setw(12) << "beta"
     << std::setw(26) << "value" << "log_value\n";
  os << std::setprecision(17);
  for (const auto& e : table)
    os << std::left << std::setw(16) << e.name << std::setw(4) << e.d << std::setw(12) << e.beta
       << std::setw(26) << e.value << e.log_value << '\n';
  return os.str();
}

void emit_report(const VerificationReport& r, Format format, std::ostream& out) {
  switch (format) {
    case Format::Json: out << to_json(r) << '\n'; break;
    case Format::Csv: out << to_csv(r); break;
    case Format::Text: out << to_text(r); break;
  }
  out.flush();
  if (!out) throw std::runtime_error("emit_report: write failed");
}

}  // namespace sharpwave
