#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evolia/algebra.hpp"
#include "evolia/analysis.hpp"

namespace evolia {

/// Malformed or inconsistent input (job file, report file). Distinct from
/// std::logic_error, which marks internal invariant violations.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parsed job: the algebra to analyze, which analyses to run, and the
/// knobs. Input matrices are row-wise (entry [k][j] is the coefficient of
/// generator k in the square of generator j); construction transposes them
/// into the column-per-square form the library uses.
struct JobSpec {
  AlgebraPtr algebra;
  std::vector<std::string> analyses;
  AnalysisOptions options;

  std::optional<Element> element;        // for the element-* analyses
  std::optional<std::string> power_kind; // "principal" | "plenary"
  std::uint64_t power_n = 0;

  // Set in shift mode: the algebra is the rule's n-generator window.
  std::optional<Value> shift_nu;
  std::optional<std::size_t> shift_window;
};

/// Analysis names accepted in a job's "analyses" array.
const std::vector<std::string>& known_analyses();

JobSpec parse_job(const nlohmann::json& job);

/// Run results: `machine` is the byte-stable certificate (no timings, keys
/// sorted by the JSON library); wall-clock timings ride alongside and only
/// the human formatter prints them.
struct Report {
  nlohmann::json machine;
  std::vector<std::pair<std::string, double>> timings_seconds;
};

/// Runs every requested analysis. Precondition failures inside one analysis
/// become {"status":"error"} entries; std::logic_error propagates.
Report run_job(const JobSpec& job);

std::string emit_machine(const Report& report);
std::string emit_human(const Report& report);

/// FNV-1a 64-bit hash (hex) of the algebra's canonical identity: ring,
/// dimension, structure entries, and the shift parameters when present.
/// Labels are cosmetic and excluded.
std::string algebra_hash(const JobSpec& job);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> failures;  // one line per independently failed check
};

/// Re-derives every "ok" analysis entry of `report` against the job's
/// algebra using routes independent of the ones that produced it (brute
/// force paths, naive repeated multiplication, direct property checks).
/// Throws ParseError when the report's hash names a different algebra.
VerifyResult verify_certificate(const nlohmann::json& report, const JobSpec& job);

}  // namespace evolia
