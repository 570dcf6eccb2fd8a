#pragma once

#include "bianchi/chenruan.hpp"
#include "bianchi/dioph.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bianchi {

inline constexpr int kReportSchema = 1;
inline constexpr int kCacheVersion = 1;

enum class OutputFormat { Json, Text };

struct RunConfig {
  std::vector<long> m_list;
  std::int64_t norm_ceiling = 10000;  // largest norm bound tried for the floor
  std::int64_t dioph_bound = 50;
  std::optional<std::filesystem::path> cache_dir;
  OutputFormat format = OutputFormat::Json;
  bool verify = false;
};

struct NamedQuotient {
  std::string name;
  MoebiusElt element;
  AxisQuotient quotient;
};

struct FullReport {
  OrbReport orb;
  std::vector<NamedQuotient> centraliser_quotients;
  std::vector<std::string> warnings;  // not part of the serialized report
  std::string error;                  // set when the pipeline threw for this m

  bool ok() const { return error.empty() && orb.all_pass(); }
};

// Floor cache: one JSON file per m.
std::string floor_to_json(const FloorComplex& fc);
// Throws std::runtime_error on a version mismatch or malformed input.
FloorComplex floor_from_json(const std::string& text);
std::filesystem::path cache_path(const std::filesystem::path& dir, long m);

struct FloorSource {
  std::shared_ptr<const FloorComplex> floor;
  bool from_cache = false;
  std::vector<std::string> warnings;
};
FloorSource load_or_compute_floor(long m, const RunConfig& cfg);

// Standard elements whose centraliser quotients are cross-checked for m.
std::vector<std::pair<std::string, MoebiusElt>> standard_elements(const RingBasis& r);

// Exhaustive scan of j^2 = 3 m k^2 + 1 over |k| <= bound, |j| <= jmax.
std::vector<std::pair<Integer, Integer>> pell_brute_force(long m, std::int64_t bound);

// Compares a certified centraliser quotient with the torsion component that
// contains its axis; inconclusive quotients pass with an explanation.
Check compare_with_torsion(const OrbReport& orb, const NamedQuotient& nq);

// Checks that need the search modules: Swan stability witnesses, centraliser
// quotients against the torsion components, and the Pell scan.
void add_verification(FullReport& rep, const RunConfig& cfg);

FullReport run_one(long m, const RunConfig& cfg);
// All m of the configuration, processed in parallel, in input order.  A failure
// for one m is recorded in its report and does not stop the others.
std::vector<FullReport> run(const RunConfig& cfg);

std::string report_json(const FullReport& rep);
std::string reports_json(const std::vector<FullReport>& reps);
std::string report_text(const FullReport& rep);

// Centraliser search for one element: commuting and anti-commuting elements,
// the equation coefficients when they apply, the axis quotient and its
// comparison with the torsion sub-complex.
struct CentraliserRun {
  std::string json;
  bool ok = false;
};
CentraliserRun centraliser_run(long m, const std::string& name, const MoebiusElt& g, const RunConfig& cfg);

}  // namespace bianchi
