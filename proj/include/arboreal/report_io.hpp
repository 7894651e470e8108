#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "arboreal/dynamics.hpp"
#include "arboreal/experiments.hpp"
#include "arboreal/perm.hpp"
#include "arboreal/rational.hpp"
#include "arboreal/wreath.hpp"

namespace arboreal {

/* Serialized reports, CSV and JSON.
 *
 * CSV files are small multi-section documents: sections are separated by one
 * blank line, each starts with a "#name" line followed by a header row and
 * data rows.  Every file opens with a #meta section whose first row is
 * type,<tag>.  Exact quantities travel as decimal strings (rationals as
 * separate _num/_den columns); the deviation column is a display-only double
 * recomputed by the writer and ignored by the parser.  JSON documents mirror
 * the CSV column names exactly.  Parsing a document of the wrong type throws
 * std::invalid_argument. */

// command-line wrappers for the wreath statistics
struct FppReport {
  int d = 0;
  int n = 0;
  std::string method;  // "from_distribution" | "recursive"
  Rational value;
  bool operator==(const FppReport&) const = default;
};

struct SampleReport {
  int d = 0;
  int n = 0;
  uint64_t count = 0;
  uint64_t seed = 0;
  std::map<CyclePattern, Integer> tallies;
  bool operator==(const SampleReport&) const = default;
};

std::string to_csv(const PatternDistribution& r);
std::string to_csv(const FppReport& r);
std::string to_csv(const SampleReport& r);
std::string to_csv(const HReport& r);
std::string to_csv(const DiscReport& r);
std::string to_csv(const IterDiscReport& r);
std::string to_csv(const ScanReport& r);
std::string to_csv(const FrobReport& r);
std::string to_csv(const OrbitDensityReport& r);
std::string to_csv(const Char2FppReport& r);
std::string to_csv(const Char2QuadReport& r);

std::string to_json(const PatternDistribution& r);
std::string to_json(const FppReport& r);
std::string to_json(const SampleReport& r);
std::string to_json(const HReport& r);
std::string to_json(const DiscReport& r);
std::string to_json(const IterDiscReport& r);
std::string to_json(const ScanReport& r);
std::string to_json(const FrobReport& r);
std::string to_json(const OrbitDensityReport& r);
std::string to_json(const Char2FppReport& r);
std::string to_json(const Char2QuadReport& r);

PatternDistribution dist_from_csv(const std::string& text);
FppReport fpp_from_csv(const std::string& text);
SampleReport sample_from_csv(const std::string& text);
HReport h_from_csv(const std::string& text);
DiscReport disc_from_csv(const std::string& text);
IterDiscReport iterdisc_from_csv(const std::string& text);
ScanReport scan_from_csv(const std::string& text);
FrobReport frob_from_csv(const std::string& text);
OrbitDensityReport orbit_from_csv(const std::string& text);
Char2FppReport char2_from_csv(const std::string& text);
Char2QuadReport char2quad_from_csv(const std::string& text);

PatternDistribution dist_from_json(const std::string& text);
FppReport fpp_from_json(const std::string& text);
SampleReport sample_from_json(const std::string& text);
HReport h_from_json(const std::string& text);
DiscReport disc_from_json(const std::string& text);
IterDiscReport iterdisc_from_json(const std::string& text);
ScanReport scan_from_json(const std::string& text);
FrobReport frob_from_json(const std::string& text);
OrbitDensityReport orbit_from_json(const std::string& text);
Char2FppReport char2_from_json(const std::string& text);
Char2QuadReport char2quad_from_json(const std::string& text);

// the type,<tag> of a serialized report, without a full parse
std::string report_type_csv(const std::string& text);
std::string report_type_json(const std::string& text);

}  // namespace arboreal
