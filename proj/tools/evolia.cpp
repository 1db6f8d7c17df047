// Command-line front end: analyze a job file, verify a machine report
// against its job, or compute one element power.
//
// Exit codes: 0 all requested work completed, 1 bad input or any analysis
// that could not run (or a failed verification), 2 internal invariant
// violation.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "evolia/job.hpp"

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw evolia::ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw evolia::ParseError(path + ": " + e.what());
  }
}

int run_and_print(const evolia::JobSpec& spec, const std::string& format) {
  evolia::Report rep = evolia::run_job(spec);
  if (format == "machine") {
    std::cout << evolia::emit_machine(rep);
  } else {
    std::cout << evolia::emit_human(rep);
  }
  for (const json& entry : rep.machine.at("analyses")) {
    if (entry.at("status").get<std::string>() != "ok") return 1;
  }
  return 0;
}

int protected_main(int argc, char** argv) {
  CLI::App app{"exact nil and nilpotency analysis for evolution algebras"};
  app.require_subcommand(1);

  std::string job_path;
  std::string format = "human";
  bool parallel = false;
  std::uint64_t cap = 0;
  std::uint64_t bound = 0;

  CLI::App* analyze = app.add_subcommand("analyze", "run the analyses a job file requests");
  analyze->add_option("file", job_path, "job JSON file")->required();
  analyze->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "machine"}));
  analyze->add_flag("--parallel", parallel,
                    "use all hardware threads for the exhaustive nil scan");
  analyze->add_option("--cap", cap, "override the exhaustive scan candidate cap")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--bound", bound,
                      "iteration bound for analyses over infinite rings")
      ->check(CLI::PositiveNumber);

  std::string report_path;
  std::string verify_job_path;
  CLI::App* verify = app.add_subcommand("verify", "re-check a machine report against its job");
  verify->add_option("report", report_path, "machine report JSON file")->required();
  verify->add_option("job", verify_job_path, "job JSON file the report was made from")
      ->required();

  std::string power_path;
  std::string power_format = "human";
  CLI::App* power = app.add_subcommand("power", "compute the element power a job file requests");
  power->add_option("file", power_path, "job JSON file with element and power")
      ->required();
  power->add_option("--format", power_format, "output format")
      ->check(CLI::IsMember({"human", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (analyze->parsed()) {
    evolia::JobSpec spec = evolia::parse_job(load_json(job_path));
    if (analyze->count("--cap")) spec.options.exhaustive_cap = cap;
    if (analyze->count("--bound")) spec.options.iteration_bound = bound;
    if (parallel) {
      spec.options.threads = std::max(1u, std::thread::hardware_concurrency());
    }
    return run_and_print(spec, format);
  }

  if (verify->parsed()) {
    evolia::JobSpec spec = evolia::parse_job(load_json(verify_job_path));
    evolia::VerifyResult r = evolia::verify_certificate(load_json(report_path), spec);
    if (r.ok) {
      std::cout << "OK: report verified against " << verify_job_path << "\n";
      return 0;
    }
    for (const std::string& f : r.failures) std::cout << "FAIL: " << f << "\n";
    return 1;
  }

  json jobj = load_json(power_path);
  if (jobj.is_object()) {
    if (!jobj.contains("analyses")) {
      jobj["analyses"] = json::array({"element-power"});
    } else if (jobj.at("analyses").is_array()) {
      const auto& an = jobj.at("analyses");
      if (std::find(an.begin(), an.end(), json("element-power")) == an.end()) {
        jobj["analyses"].push_back("element-power");
      }
    }
  }
  return run_and_print(evolia::parse_job(jobj), power_format);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return protected_main(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
