#pragma once

// Serialisation of reports, scan tables and constant tables.
//
// JSON keys come out in a fixed order (struct fields in declaration order,
// map entries sorted), floats with 17 significant digits, and non-finite
// values as the strings "inf", "-inf", "nan".

#include <iosfwd>
#include <string>
#include <vector>

#include "sharpwave/constants.hpp"
#include "sharpwave/experiments.hpp"

namespace sharpwave {

enum class Format { Json, Csv, Text };

std::string to_string(Format f);
Format parse_format(const std::string& s);

/// %.17g, or "inf"/"-inf"/"nan" (quoted in JSON).
std::string format_double(double x);

std::string to_json(const VerificationReport& r);
std::string to_json(const std::vector<VerificationReport>& rs);
std::string to_json(const ScanResult& s);
std::string to_json(const std::vector<ConstantEntry>& table);

/// Inverse of to_json for a single report. Throws std::invalid_argument on
/// malformed input.
VerificationReport report_from_json(const std::string& text);
std::vector<VerificationReport> reports_from_json(const std::string& text);

/// "key,value" rows; map entries flattened to dotted keys
/// (computed.ratio, reference.ratio.value, notes.0, ...).
std::string to_csv(const VerificationReport& r);
/// Two columns "delta,value", one row per delta.
std::string scan_to_csv(const ScanResult& s);
std::string to_csv(const std::vector<ConstantEntry>& table);

/// Human-readable summary with one line per check.
std::string to_text(const VerificationReport& r);
std::string to_text(const ScanResult& s);
std::string to_text(const std::vector<ConstantEntry>& table);

/// Writes r to out; throws std::runtime_error if the stream fails.
void emit_report(const VerificationReport& r, Format format, std::ostream& out);

}  // namespace sharpwave
