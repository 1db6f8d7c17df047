#include "evolia/job.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

#include "evolia/shift_algebra.hpp"

namespace evolia {

using nlohmann::json;

namespace {

json indices_1based(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (std::size_t i : v) a.push_back(i + 1);
  return a;
}

std::vector<std::size_t> indices_0based(const json& arr, std::size_t dim,
                                        const std::string& what) {
  if (!arr.is_array()) throw ParseError(what + " must be an array");
  std::vector<std::size_t> out;
  out.reserve(arr.size());
  for (const json& x : arr) {
    const bool integral = x.is_number_unsigned() ||
                          (x.is_number_integer() && x.get<std::int64_t>() > 0);
    if (!integral || x.get<std::uint64_t>() == 0 || x.get<std::uint64_t>() > dim) {
      throw ParseError(what + " holds an out-of-range generator index (1.." +
                       std::to_string(dim) + " expected): " + x.dump());
    }
    out.push_back(static_cast<std::size_t>(x.get<std::uint64_t>() - 1));
  }
  return out;
}

json coeffs_json(const std::vector<Value>& coeffs) {
  json a = json::array();
  for (const Value& c : coeffs) a.push_back(value_to_json(c));
  return a;
}

std::vector<Value> coeffs_from_json(const RingPtr& ring, const json& arr,
                                    std::size_t dim, const std::string& what) {
  if (!arr.is_array() || arr.size() != dim) {
    throw ParseError(what + " must list one coefficient per generator (" +
                     std::to_string(dim) + " expected)");
  }
  std::vector<Value> out;
  out.reserve(dim);
  for (const json& c : arr) out.push_back(value_from_json(ring, c));
  return out;
}

std::uint64_t positive_integer(const json& j, const std::string& what) {
  // Accept any integer-typed JSON number: the parser stores small literals
  // as signed, programmatic construction may too.
  const bool integral = j.is_number_unsigned() ||
                        (j.is_number_integer() && j.get<std::int64_t>() > 0);
  if (!integral || j.get<std::uint64_t>() == 0) {
    throw ParseError(what + " must be a positive integer, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

}  // namespace

const std::vector<std::string>& known_analyses() {
  static const std::vector<std::string> names = {
      "nilpotent",      "nil",         "strongly-nilpotent", "filtration",
      "quotient-check", "diag-precheck", "element-nil",      "element-power"};
  return names;
}

JobSpec parse_job(const json& job) {
  if (!job.is_object()) throw ParseError("job must be a JSON object");
  static const std::set<std::string> allowed = {"mode",     "ring",   "matrix",
                                                "labels",   "nu",     "window",
                                                "analyses", "element", "power",
                                                "options"};
  for (const auto& item : job.items()) {
    if (!allowed.count(item.key())) {
      throw ParseError("unknown job key \"" + item.key() + "\"");
    }
  }

  std::string mode = "matrix";
  if (job.contains("mode")) {
    if (!job.at("mode").is_string()) throw ParseError("\"mode\" must be a string");
    mode = job.at("mode").get<std::string>();
  }
  if (mode != "matrix" && mode != "shift") {
    throw ParseError("mode must be \"matrix\" or \"shift\", got \"" + mode + "\"");
  }
  if (!job.contains("ring")) throw ParseError("job needs a \"ring\" descriptor");
  RingPtr ring = ring_from_json(job.at("ring"));

  JobSpec spec;
  if (mode == "matrix") {
    if (job.contains("nu") || job.contains("window")) {
      throw ParseError("\"nu\" and \"window\" only apply in shift mode");
    }
    if (!job.contains("matrix")) {
      throw ParseError("matrix mode needs a \"matrix\" (array of rows)");
    }
    const json& m = job.at("matrix");
    if (!m.is_array()) throw ParseError("\"matrix\" must be an array of rows");
    const std::size_t n = m.size();
    std::vector<std::vector<Value>> cols(n);
    for (std::size_t k = 0; k < n; ++k) {
      const json& row = m[k];
      if (!row.is_array() || row.size() != n) {
        throw ParseError("matrix row " + std::to_string(k + 1) + " must list " +
                         std::to_string(n) + " entries");
      }
      // Input rows: entry [k][j] is the coefficient of generator k in the
      // square of generator j. Internally squares live in columns.
      for (std::size_t j = 0; j < n; ++j) {
        cols[j].push_back(value_from_json(ring, row[j]));
      }
    }
    std::vector<std::string> labels;
    if (job.contains("labels")) {
      const json& ls = job.at("labels");
      if (!ls.is_array() || ls.size() != n) {
        throw ParseError("\"labels\" must list one name per generator");
      }
      for (const json& l : ls) {
        if (!l.is_string()) throw ParseError("labels must be strings");
        labels.push_back(l.get<std::string>());
      }
    }
    spec.algebra = EvolutionAlgebra::from_columns(ring, cols, std::move(labels));
  } else {
    if (job.contains("matrix") || job.contains("labels")) {
      throw ParseError("\"matrix\" and \"labels\" only apply in matrix mode");
    }
    if (!job.contains("nu")) throw ParseError("shift mode needs \"nu\"");
    if (!job.contains("window")) throw ParseError("shift mode needs \"window\"");
    Value nu = value_from_json(ring, job.at("nu"));
    const std::uint64_t w = positive_integer(job.at("window"), "\"window\"");
    if (w > 4096) throw ParseError("\"window\" larger than 4096 generators");
    try {
      ShiftRulePtr rule = ShiftRule::make(ring, nu);
      spec.algebra = rule->window(static_cast<std::size_t>(w));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());  // rejected nu is a bad job, not a bad call
    }
    spec.shift_nu = std::move(nu);
    spec.shift_window = static_cast<std::size_t>(w);
  }

  if (!job.contains("analyses")) throw ParseError("job needs an \"analyses\" array");
  const json& an = job.at("analyses");
  if (!an.is_array() || an.empty()) {
    throw ParseError("\"analyses\" must be a nonempty array");
  }
  const auto& known = known_analyses();
  for (const json& a : an) {
    if (!a.is_string()) throw ParseError("analysis names must be strings");
    const std::string s = a.get<std::string>();
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ParseError("unknown analysis \"" + s + "\"");
    }
    spec.analyses.push_back(s);
  }

  if (job.contains("element")) {
    spec.element = Element(spec.algebra,
                           coeffs_from_json(ring, job.at("element"),
                                            spec.algebra->dimension(), "\"element\""));
  }
  const bool needs_element =
      std::count(spec.analyses.begin(), spec.analyses.end(), "element-nil") ||
      std::count(spec.analyses.begin(), spec.analyses.end(), "element-power");
  if (needs_element && !spec.element) {
    throw ParseError("the element analyses need an \"element\"");
  }

  if (job.contains("power")) {
    const json& p = job.at("power");
    if (!p.is_object() || !p.contains("kind") || !p.contains("n") || p.size() != 2) {
      throw ParseError("\"power\" must be {\"kind\": ..., \"n\": ...}");
    }
    if (!p.at("kind").is_string()) throw ParseError("power kind must be a string");
    const std::string kind = p.at("kind").get<std::string>();
    if (kind != "principal" && kind != "plenary") {
      throw ParseError("power kind must be \"principal\" or \"plenary\"");
    }
    spec.power_kind = kind;
    spec.power_n = positive_integer(p.at("n"), "power exponent");
  }
  if (std::count(spec.analyses.begin(), spec.analyses.end(), "element-power") &&
      !spec.power_kind) {
    throw ParseError("\"element-power\" needs a \"power\" request");
  }

  if (job.contains("options")) {
    const json& o = job.at("options");
    if (!o.is_object()) throw ParseError("\"options\" must be an object");
    static const std::set<std::string> keys = {"exhaustive_cap", "path_guard",
                                               "paren_guard",    "plenary_cap",
                                               "iteration_bound", "threads"};
    for (const auto& item : o.items()) {
      if (!keys.count(item.key())) {
        throw ParseError("unknown option \"" + item.key() + "\"");
      }
    }
    AnalysisOptions& opt = spec.options;
    if (o.contains("exhaustive_cap")) {
      opt.exhaustive_cap = positive_integer(o.at("exhaustive_cap"), "exhaustive_cap");
    }
    if (o.contains("path_guard")) {
      opt.path_guard = positive_integer(o.at("path_guard"), "path_guard");
    }
    if (o.contains("paren_guard")) {
      opt.paren_guard = positive_integer(o.at("paren_guard"), "paren_guard");
    }
    if (o.contains("plenary_cap")) {
      opt.plenary_cap = positive_integer(o.at("plenary_cap"), "plenary_cap");
    }
    if (o.contains("iteration_bound")) {
      opt.iteration_bound = positive_integer(o.at("iteration_bound"), "iteration_bound");
    }
    if (o.contains("threads")) {
      opt.threads =
          static_cast<unsigned>(positive_integer(o.at("threads"), "threads"));
    }
  }
  return spec;
}

std::string algebra_hash(const JobSpec& job) {
  json id;
  id["mode"] = job.shift_nu ? "shift" : "matrix";
  id["ring"] = ring_to_json(*job.algebra->ring());
  id["dimension"] = job.algebra->dimension();
  json rows = json::array();
  for (std::size_t k = 0; k < job.algebra->dimension(); ++k) {
    json row = json::array();
    for (std::size_t j = 0; j < job.algebra->dimension(); ++j) {
      row.push_back(value_to_json(job.algebra->coeff(k, j)));
    }
    rows.push_back(std::move(row));
  }
  id["structure"] = std::move(rows);
  if (job.shift_nu) {
    id["shift"] = {{"nu", value_to_json(*job.shift_nu)},
                   {"window", *job.shift_window}};
  }
  const std::string bytes = id.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

namespace {

const char* method_name(NilpotencyVerdict::Method m) {
  switch (m) {
    case NilpotencyVerdict::Method::state_dp:
      return "state-dp";
    case NilpotencyVerdict::Method::triangular:
      return "triangular";
    case NilpotencyVerdict::Method::degenerate:
      return "degenerate";
  }
  throw std::logic_error("unhandled method");
}

json verdict_nilpotent(const NilpotencyVerdict& v) {
  if (const auto* n = std::get_if<NilpotencyVerdict::Nilpotent>(&v.result)) {
    json j{{"kind", "nilpotent"},
           {"exponent", n->exponent},
           {"minimal", n->minimal},
           {"method", method_name(n->method)}};
    if (!n->witness_path.empty()) {
      j["witness_path"] = indices_1based(n->witness_path);
      if (n->witness_product) j["witness_product"] = value_to_json(*n->witness_product);
    }
    return j;
  }
  if (const auto* n = std::get_if<NilpotencyVerdict::NotNilpotent>(&v.result)) {
    json j{{"kind", "not-nilpotent"},
           {"method", method_name(n->method)},
           {"witness_path", indices_1based(n->witness_path)},
           {"witness_product", value_to_json(n->witness_product)}};
    if (n->method == NilpotencyVerdict::Method::state_dp) {
      j["cycle_start"] = n->cycle_start;
      j["cycle_end"] = n->cycle_end;
    }
    return j;
  }
  const auto& u = std::get<NilpotencyVerdict::Unknown>(v.result);
  return json{{"kind", "unknown"}, {"bound", u.bound}};
}

json verdict_nil(const NilAlgebraVerdict& v) {
  if (const auto* n = std::get_if<NilAlgebraVerdict::Nil>(&v.result)) {
    return json{{"kind", "nil"},
                {"max_exponent", n->max_exponent},
                {"candidates", n->candidates}};
  }
  if (const auto* n = std::get_if<NilAlgebraVerdict::NotNil>(&v.result)) {
    const auto* e = std::get_if<NilElementVerdict::NotNil>(&n->element.result);
    if (!e) throw std::logic_error("nil-scan witness lacks a cycle");
    return json{{"kind", "not-nil"},
                {"witness", coeffs_json(n->witness)},
                {"cycle_start", e->cycle_start},
                {"cycle_end", e->cycle_end}};
  }
  const auto& s = std::get<NilAlgebraVerdict::Skipped>(v.result);
  return json{{"kind", "skipped"},
              {"reason", s.reason},
              {"required", s.required.str()},
              {"cap", s.cap}};
}

json verdict_strong(const StrongNilpotencyVerdict& v) {
  if (const auto* n =
          std::get_if<StrongNilpotencyVerdict::StronglyNilpotent>(&v.result)) {
    return json{{"kind", "strongly-nilpotent"},
                {"chain_step", n->chain_step},
                {"product_length_bound", n->product_length_bound}};
  }
  if (const auto* n =
          std::get_if<StrongNilpotencyVerdict::NotStronglyNilpotent>(&v.result)) {
    json j{{"kind", "not-strongly-nilpotent"},
           {"stable_dimension", n->stable_dimension},
           {"stable_step", n->stable_step}};
    if (!n->witness_word.empty()) {
      j["witness_word"] = indices_1based(n->witness_word);
      if (n->witness_applied_to) {
        j["witness_applied_to"] = *n->witness_applied_to + 1;
      }
    }
    return j;
  }
  const auto& u = std::get<StrongNilpotencyVerdict::Unsupported>(v.result);
  return json{{"kind", "unsupported"}, {"reason", u.reason}};
}

json verdict_filtration(const Filtration& f) {
  json layers = json::array();
  for (const auto& layer : f.layers) layers.push_back(indices_1based(layer));
  json j{{"kind", "filtration"},
         {"complete", f.complete},
         {"layers", std::move(layers)},
         {"residue", indices_1based(f.residue)}};
  if (f.permutation) j["permutation"] = indices_1based(*f.permutation);
  return j;
}

json run_one(const std::string& name, const JobSpec& job) {
  const AlgebraPtr& alg = job.algebra;
  if (name == "nilpotent") return verdict_nilpotent(is_nilpotent(alg, job.options));
  if (name == "nil") return verdict_nil(is_nil_algebra(alg, job.options));
  if (name == "strongly-nilpotent") return verdict_strong(is_strongly_nilpotent(alg));
  if (name == "filtration") return verdict_filtration(compute_filtration(alg));
  if (name == "quotient-check") {
    const bool nil = quotient_reduction_check(alg, job.options);
    return json{{"kind", "quotient-check"}, {"nilpotent", nil}};
  }
  if (name == "diag-precheck") {
    DiagPrecheck d = diag_nil_precheck(alg);
    if (d.pass) return json{{"kind", "diag-precheck"}, {"pass", true}};
    return json{{"kind", "diag-precheck"},
                {"pass", false},
                {"fail_index", d.fail_index + 1},
                {"fail_entry", value_to_json(*d.fail_entry)}};
  }
  if (name == "element-nil") {
    NilElementVerdict v = is_nil_element(*job.element, job.options.iteration_bound);
    json j;
    if (const auto* n = std::get_if<NilElementVerdict::Nil>(&v.result)) {
      j = json{{"kind", "nil-element"}, {"exponent", n->exponent}};
    } else if (const auto* n = std::get_if<NilElementVerdict::NotNil>(&v.result)) {
      j = json{{"kind", "not-nil-element"},
               {"cycle_start", n->cycle_start},
               {"cycle_end", n->cycle_end}};
    } else {
      j = json{{"kind", "unknown"},
               {"bound", std::get<NilElementVerdict::Unknown>(v.result).bound}};
    }
    j["element"] = coeffs_json(job.element->coeffs());
    return j;
  }
  if (name == "element-power") {
    const Element& a = *job.element;
    Element r = *job.power_kind == "principal"
                    ? principal_power(a, job.power_n)
                    : plenary_power(a, job.power_n, job.options.plenary_cap);
    return json{{"kind", "element-power"},
                {"power", *job.power_kind},
                {"n", job.power_n},
                {"element", coeffs_json(a.coeffs())},
                {"result", coeffs_json(r.coeffs())},
                {"is_zero", r.is_zero()}};
  }
  throw std::logic_error("unrecognized analysis slipped through parsing: " + name);
}

}  // namespace

Report run_job(const JobSpec& job) {
  Report rep;
  json& m = rep.machine;
  m["v"] = 1;
  json alg;
  alg["hash"] = algebra_hash(job);
  alg["mode"] = job.shift_nu ? "shift" : "matrix";
  alg["ring"] = ring_to_json(*job.algebra->ring());
  alg["dimension"] = job.algebra->dimension();
  alg["labels"] = job.algebra->labels();
  json rows = json::array();
  for (std::size_t k = 0; k < job.algebra->dimension(); ++k) {
    json row = json::array();
    for (std::size_t j = 0; j < job.algebra->dimension(); ++j) {
      row.push_back(value_to_json(job.algebra->coeff(k, j)));
    }
    rows.push_back(std::move(row));
  }
  alg["structure"] = std::move(rows);
  alg["input_convention"] = "rows";
  alg["internal_convention"] = "columns";
  if (job.shift_nu) {
    alg["shift"] = {{"nu", value_to_json(*job.shift_nu)},
                    {"window", *job.shift_window}};
  }
  m["algebra"] = std::move(alg);

  json entries = json::array();
  for (const std::string& name : job.analyses) {
    json entry;
    entry["analysis"] = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      entry["verdict"] = run_one(name, job);
      entry["status"] = "ok";
    } catch (const std::invalid_argument& e) {
      entry.erase("verdict");
      entry["status"] = "error";
      entry["error"] = e.what();
    } catch (const std::logic_error&) {
      throw;
    } catch (const std::exception& e) {
      entry.erase("verdict");
      entry["status"] = "error";
      entry["error"] = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.timings_seconds.emplace_back(
        name, std::chrono::duration<double>(t1 - t0).count());
    entries.push_back(std::move(entry));
  }
  m["analyses"] = std::move(entries);
  return rep;
}

std::string emit_machine(const Report& report) {
  return report.machine.dump(2) + "\n";
}

namespace {

std::string fmt_time(double sec) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2);
  if (sec >= 1.0) {
    o << sec << "s";
  } else {
    o << sec * 1000.0 << "ms";
  }
  return o.str();
}

AlgebraPtr display_algebra(const json& m) {
  const json& a = m.at("algebra");
  RingPtr ring = ring_from_json(a.at("ring"));
  const json& rows = a.at("structure");
  const std::size_t n = rows.size();
  std::vector<std::vector<Value>> cols(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      cols[j].push_back(value_from_json(ring, rows[k][j]));
    }
  }
  std::vector<std::string> labels;
  for (const json& l : a.at("labels")) labels.push_back(l.get<std::string>());
  return EvolutionAlgebra::from_columns(ring, cols, std::move(labels));
}

std::string path_str(const AlgebraPtr& alg, const json& arr) {
  std::string s;
  for (const json& x : arr) {
    if (!s.empty()) s += "->";
    s += alg->label(x.get<std::size_t>() - 1);
  }
  return s;
}

std::string word_str(const AlgebraPtr& alg, const json& arr) {
  std::string s;
  for (const json& x : arr) {
    s += "L[" + alg->label(x.get<std::size_t>() - 1) + "]";
  }
  return s;
}

std::string value_str(const AlgebraPtr& alg, const json& vj) {
  const RingPtr& ring = alg->ring();
  return ring->to_string(value_from_json(ring, vj));
}

std::string element_str(const AlgebraPtr& alg, const json& arr) {
  std::vector<Value> cs;
  for (const json& c : arr) cs.push_back(value_from_json(alg->ring(), c));
  return to_string(Element(alg, std::move(cs)));
}

std::string index_list_str(const AlgebraPtr& alg, const json& arr) {
  std::string s;
  for (const json& x : arr) {
    if (!s.empty()) s += ",";
    s += alg->label(x.get<std::size_t>() - 1);
  }
  return s;
}

std::string human_line(const json& entry, const AlgebraPtr& alg) {
  const std::string name = entry.at("analysis").get<std::string>();
  if (entry.at("status").get<std::string>() != "ok") {
    return name + ": ERROR " + entry.at("error").get<std::string>();
  }
  const json& v = entry.at("verdict");
  const std::string kind = v.at("kind").get<std::string>();
  std::ostringstream o;
  o << name << ": ";
  if (kind == "nilpotent") {
    o << "YES exponent=" << v.at("exponent").get<std::uint64_t>();
    if (v.at("minimal").get<bool>()) o << " minimal";
    o << " method=" << v.at("method").get<std::string>();
    if (v.contains("witness_path")) {
      o << " witness=" << path_str(alg, v.at("witness_path"));
      if (v.contains("witness_product")) {
        o << " product=" << value_str(alg, v.at("witness_product"));
      }
    }
  } else if (kind == "not-nilpotent") {
    o << "NO method=" << v.at("method").get<std::string>()
      << " witness=" << path_str(alg, v.at("witness_path"))
      << " product=" << value_str(alg, v.at("witness_product"));
    if (v.contains("cycle_start")) {
      o << " cycle=(" << v.at("cycle_start").get<std::uint64_t>() << ","
        << v.at("cycle_end").get<std::uint64_t>() << ")";
    }
  } else if (kind == "nil") {
    o << "YES max_exponent=" << v.at("max_exponent").get<std::uint64_t>()
      << " candidates=" << v.at("candidates").get<std::uint64_t>();
  } else if (kind == "not-nil") {
    o << "NO witness=" << element_str(alg, v.at("witness")) << " cycle=("
      << v.at("cycle_start").get<std::uint64_t>() << ","
      << v.at("cycle_end").get<std::uint64_t>() << ")";
  } else if (kind == "skipped") {
    o << "SKIPPED " << v.at("reason").get<std::string>();
  } else if (kind == "strongly-nilpotent") {
    o << "YES chain_step=" << v.at("chain_step").get<std::uint64_t>()
      << " every product of " << v.at("product_length_bound").get<std::uint64_t>()
      << " factors vanishes";
  } else if (kind == "not-strongly-nilpotent") {
    o << "NO stable_dimension=" << v.at("stable_dimension").get<std::uint64_t>()
      << " from_step=" << v.at("stable_step").get<std::uint64_t>();
    if (v.contains("witness_word")) {
      o << " witness=" << word_str(alg, v.at("witness_word"));
      if (v.contains("witness_applied_to")) {
        o << " on "
          << alg->label(v.at("witness_applied_to").get<std::size_t>() - 1);
      }
    }
  } else if (kind == "unsupported") {
    o << "UNSUPPORTED " << v.at("reason").get<std::string>();
  } else if (kind == "filtration") {
    o << (v.at("complete").get<bool>() ? "COMPLETE" : "INCOMPLETE") << " layers=";
    for (const json& layer : v.at("layers")) {
      o << "[" << index_list_str(alg, layer) << "]";
    }
    if (!v.at("residue").empty()) {
      o << " residue=[" << index_list_str(alg, v.at("residue")) << "]";
    }
    if (v.contains("permutation")) {
      o << " order=" << index_list_str(alg, v.at("permutation"));
    }
  } else if (kind == "quotient-check") {
    o << "CONSISTENT nilpotent="
      << (v.at("nilpotent").get<bool>() ? "YES" : "NO");
  } else if (kind == "diag-precheck") {
    if (v.at("pass").get<bool>()) {
      o << "PASS";
    } else {
      o << "FAIL generator="
        << alg->label(v.at("fail_index").get<std::size_t>() - 1)
        << " entry=" << value_str(alg, v.at("fail_entry"));
    }
  } else if (kind == "nil-element") {
    o << "YES element=" << element_str(alg, v.at("element"))
      << " exponent=" << v.at("exponent").get<std::uint64_t>();
  } else if (kind == "not-nil-element") {
    o << "NO element=" << element_str(alg, v.at("element")) << " cycle=("
      << v.at("cycle_start").get<std::uint64_t>() << ","
      << v.at("cycle_end").get<std::uint64_t>() << ")";
  } else if (kind == "unknown") {
    o << "UNKNOWN bound=" << v.at("bound").get<std::uint64_t>();
    if (v.contains("element")) o << " element=" << element_str(alg, v.at("element"));
  } else if (kind == "element-power") {
    const bool plenary = v.at("power").get<std::string>() == "plenary";
    o << "(" << element_str(alg, v.at("element")) << ")^"
      << (plenary ? "[" : "") << v.at("n").get<std::uint64_t>()
      << (plenary ? "]" : "") << " = " << element_str(alg, v.at("result"));
  } else {
    o << "UNRECOGNIZED verdict kind \"" << kind << "\"";
  }
  return o.str();
}

}  // namespace

std::string emit_human(const Report& report) {
  const json& m = report.machine;
  AlgebraPtr alg = display_algebra(m);
  const json& a = m.at("algebra");
  std::ostringstream out;
  out << "algebra: dimension " << a.at("dimension").get<std::size_t>() << " over "
      << alg->ring()->name() << " hash=" << a.at("hash").get<std::string>() << "\n";
  if (a.contains("shift")) {
    out << "  shift: nu=" << value_str(alg, a.at("shift").at("nu"))
        << " window=" << a.at("shift").at("window").get<std::size_t>() << "\n";
  }
  for (std::size_t j = 0; j < alg->dimension(); ++j) {
    out << "  " << alg->label(j) << "^2 = "
        << to_string(Element(alg, alg->structure().column(j))) << "\n";
  }
  const json& entries = m.at("analyses");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << human_line(entries[i], alg);
    if (i < report.timings_seconds.size()) {
      out << " [" << fmt_time(report.timings_seconds[i].second) << "]";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

Element naive_principal(const Element& a, std::uint64_t n) {
  Element p = a;
  for (std::uint64_t k = 2; k <= n; ++k) p = multiply(p, a);
  return p;
}

Element naive_plenary(const Element& a, std::uint64_t n) {
  Element p = multiply(a, a);
  for (std::uint64_t k = 2; k <= n; ++k) p = multiply(p, p);
  return p;
}

constexpr std::uint64_t kVerifyIterationCap = 100'000;

// Shared check for the orbit-revisit evidence: a^m nonzero for m <= e+1 by
// naive repeated multiplication, and a^(s+1) equal to a^(e+1).
void check_not_nil_cycle(const Element& a, std::uint64_t s, std::uint64_t e,
                         const std::string& name,
                         std::vector<std::string>& failures) {
  auto fail = [&](const std::string& msg) { failures.push_back(name + ": " + msg); };
  if (s >= e) {
    fail("cycle must advance (start " + std::to_string(s) + ", end " +
         std::to_string(e) + ")");
    return;
  }
  if (e > kVerifyIterationCap) {
    fail("cycle end " + std::to_string(e) + " is past the verification cap");
    return;
  }
  Element cur = a;
  std::optional<Element> at_start;
  for (std::uint64_t m = 1; m <= e + 1; ++m) {
    if (m > 1) cur = multiply(cur, a);
    if (cur.is_zero()) {
      fail("witness power " + std::to_string(m) + " vanishes, so the element is nil");
      return;
    }
    if (m == s + 1) at_start = cur;
  }
  if (!(cur == *at_start)) {
    fail("orbit states at the claimed cycle indices differ");
  }
}

void verify_entry(const json& entry, const JobSpec& job,
                  std::vector<std::string>& failures) {
  const std::string name = entry.at("analysis").get<std::string>();
  auto fail = [&](const std::string& msg) { failures.push_back(name + ": " + msg); };
  if (entry.at("status").get<std::string>() != "ok") return;
  const json& v = entry.at("verdict");
  const std::string kind = v.at("kind").get<std::string>();
  const AlgebraPtr& alg = job.algebra;
  const RingPtr& ring = alg->ring();
  const std::size_t dim = alg->dimension();

  if (name == "nilpotent") {
    if (kind == "nilpotent") {
      const std::uint64_t e = v.at("exponent").get<std::uint64_t>();
      if (e == 0) {
        fail("exponent must be positive");
        return;
      }
      if (e == 1) {
        if (dim != 0) fail("exponent 1 claims the zero algebra, dimension is positive");
      } else if (dim == 0) {
        if (v.at("minimal").get<bool>()) fail("no exponent above 1 is minimal in dimension 0");
      } else {
        if (auto p = find_nonzero_path(alg, static_cast<std::size_t>(e - 1))) {
          fail("claimed vanishing at " + std::to_string(e) +
               " factors, but a product of " + std::to_string(e) +
               " generators is nonzero");
        }
        if (v.at("minimal").get<bool>() && e >= 3 &&
            !find_nonzero_path(alg, static_cast<std::size_t>(e - 2))) {
          fail("claimed minimal, but all products of " + std::to_string(e - 1) +
               " generators vanish");
        }
      }
      if (v.contains("witness_path")) {
        auto path = indices_0based(v.at("witness_path"), dim, "witness path");
        if (path.size() + 1 != e) {
          fail("witness path length disagrees with the exponent");
        } else {
          Value p = path_product(alg, path);
          if (is_zero(p)) fail("witness product vanishes");
          if (v.contains("witness_product") &&
              value_from_json(ring, v.at("witness_product")) != p) {
            fail("witness product does not recompute");
          }
        }
      }
    } else if (kind == "not-nilpotent") {
      const std::string method = v.at("method").get<std::string>();
      auto path = indices_0based(v.at("witness_path"), dim, "witness path");
      if (path.size() < 2) {
        fail("witness path needs at least one edge");
        return;
      }
      Value p = path_product(alg, path);
      if (is_zero(p)) fail("witness product vanishes");
      if (value_from_json(ring, v.at("witness_product")) != p) {
        fail("witness product does not recompute");
      }
      if (method == "state-dp") {
        NilpotencyVerdict rv = is_nilpotent(alg, job.options);
        const auto* nn = std::get_if<NilpotencyVerdict::NotNilpotent>(&rv.result);
        if (!nn) {
          fail("re-analysis does not reach a not-nilpotent verdict");
        } else if (nn->cycle_start != v.at("cycle_start").get<std::uint64_t>() ||
                   nn->cycle_end != v.at("cycle_end").get<std::uint64_t>()) {
          fail("state cycle indices do not re-derive");
        }
      } else if (method == "triangular") {
        if (!ring->is_domain()) fail("pumping evidence needs a domain");
        if (path.front() != path.back()) fail("pumping witness must be a closed walk");
      } else {
        fail("unrecognized method \"" + method + "\"");
      }
    } else if (kind != "unknown") {
      fail("unrecognized verdict kind \"" + kind + "\"");
    }
    return;
  }

  if (name == "nil") {
    if (kind == "nil") {
      NilAlgebraVerdict rv = is_nil_algebra(alg, job.options);
      const auto* n = std::get_if<NilAlgebraVerdict::Nil>(&rv.result);
      if (!n) {
        fail("re-scan does not confirm every element nil");
      } else {
        if (n->max_exponent != v.at("max_exponent").get<std::uint64_t>()) {
          fail("max exponent does not re-derive");
        }
        if (n->candidates != v.at("candidates").get<std::uint64_t>()) {
          fail("candidate count does not re-derive");
        }
      }
    } else if (kind == "not-nil") {
      Element a(alg, coeffs_from_json(ring, v.at("witness"), dim, "witness"));
      check_not_nil_cycle(a, v.at("cycle_start").get<std::uint64_t>(),
                          v.at("cycle_end").get<std::uint64_t>(), name, failures);
    } else if (kind != "skipped") {
      fail("unrecognized verdict kind \"" + kind + "\"");
    }
    return;
  }

  if (name == "strongly-nilpotent") {
    if (kind == "strongly-nilpotent") {
      StrongNilpotencyVerdict rv = is_strongly_nilpotent(alg);
      const auto* n =
          std::get_if<StrongNilpotencyVerdict::StronglyNilpotent>(&rv.result);
      if (!n) {
        fail("re-analysis does not confirm strong nilpotency");
        return;
      }
      if (n->chain_step != v.at("chain_step").get<std::uint64_t>()) {
        fail("chain step does not re-derive");
      }
      if (n->product_length_bound !=
          v.at("product_length_bound").get<std::uint64_t>()) {
        fail("product length bound does not re-derive");
      }
      const std::uint64_t b = v.at("product_length_bound").get<std::uint64_t>();
      if (b >= 2 && b <= 5) {
        try {
          if (!brute_force_parenthesized_products(alg, static_cast<std::size_t>(b))) {
            fail("a parenthesized product of " + std::to_string(b) +
                 " generators is nonzero");
          }
        } catch (const std::invalid_argument&) {
          // enumeration too large for a spot check; the chain stands alone
        }
      }
    } else if (kind == "not-strongly-nilpotent") {
      StrongNilpotencyVerdict rv = is_strongly_nilpotent(alg);
      const auto* n =
          std::get_if<StrongNilpotencyVerdict::NotStronglyNilpotent>(&rv.result);
      if (!n) {
        fail("re-analysis does not confirm the stabilized chain");
        return;
      }
      if (n->stable_dimension != v.at("stable_dimension").get<std::uint64_t>()) {
        fail("stable dimension does not re-derive");
      }
      if (n->stable_step != v.at("stable_step").get<std::uint64_t>()) {
        fail("stabilization step does not re-derive");
      }
      if (v.contains("witness_word")) {
        auto word = indices_0based(v.at("witness_word"), dim, "witness word");
        if (word.empty()) {
          fail("witness word is empty");
          return;
        }
        RingMatrix mprod = left_mult_matrix(Element::basis(alg, word[0]));
        for (std::size_t i = 1; i < word.size(); ++i) {
          mprod = mprod * left_mult_matrix(Element::basis(alg, word[i]));
        }
        if (mprod.is_zero()) {
          fail("witness operator word multiplies to zero");
        } else if (v.contains("witness_applied_to")) {
          const std::size_t j =
              indices_0based(json::array({v.at("witness_applied_to")}), dim,
                             "witness target")[0];
          bool nonzero = false;
          for (std::size_t i = 0; i < dim; ++i) {
            if (!is_zero(mprod(i, j))) {
              nonzero = true;
              break;
            }
          }
          if (!nonzero) fail("witness word annihilates the claimed generator");
        }
      }
    } else if (kind != "unsupported") {
      fail("unrecognized verdict kind \"" + kind + "\"");
    }
    return;
  }

  if (name == "filtration") {
    if (kind != "filtration") {
      fail("unrecognized verdict kind \"" + kind + "\"");
      return;
    }
    std::vector<char> captured(dim, 0);
    std::size_t layer_no = 0;
    for (const json& lj : v.at("layers")) {
      ++layer_no;
      auto layer = indices_0based(lj, dim, "layer " + std::to_string(layer_no));
      std::vector<std::size_t> eligible;
      for (std::size_t i = 0; i < dim; ++i) {
        if (captured[i]) continue;
        bool inside = true;
        for (std::size_t k = 0; k < dim; ++k) {
          if (!is_zero(alg->coeff(k, i)) && !captured[k]) {
            inside = false;
            break;
          }
        }
        if (inside) eligible.push_back(i);
      }
      if (layer != eligible) {
        fail("layer " + std::to_string(layer_no) +
             " is not the full set of captured-square generators at that step");
        return;
      }
      for (std::size_t i : layer) captured[i] = 1;
    }
    std::vector<std::size_t> residue;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!captured[i]) residue.push_back(i);
    }
    if (indices_0based(v.at("residue"), dim, "residue") != residue) {
      fail("residue set does not match the layers");
    }
    if (v.at("complete").get<bool>() != residue.empty()) {
      fail("completeness flag contradicts the residue set");
    }
    if (v.contains("permutation")) {
      auto perm = indices_0based(v.at("permutation"), dim, "permutation");
      std::vector<std::size_t> concat;
      for (const json& lj : v.at("layers")) {
        for (const json& x : lj) concat.push_back(x.get<std::size_t>() - 1);
      }
      if (perm != concat) {
        fail("permutation is not the concatenation of the layers");
        return;
      }
      for (std::size_t p = 0; p < dim; ++p) {
        for (std::size_t q = 0; q <= p; ++q) {
          if (!is_zero(alg->coeff(perm[p], perm[q]))) {
            fail("reordered matrix is not strictly upper triangular at (" +
                 std::to_string(p + 1) + "," + std::to_string(q + 1) + ")");
            return;
          }
        }
      }
    } else if (residue.empty() && dim > 0) {
      fail("complete filtration must carry its permutation");
    }
    return;
  }

  if (name == "quotient-check") {
    if (kind != "quotient-check") {
      fail("unrecognized verdict kind \"" + kind + "\"");
      return;
    }
    const bool again = quotient_reduction_check(alg, job.options);
    if (again != v.at("nilpotent").get<bool>()) {
      fail("shared nilpotency answer does not re-derive");
    }
    return;
  }

  if (name == "diag-precheck") {
    if (kind != "diag-precheck") {
      fail("unrecognized verdict kind \"" + kind + "\"");
      return;
    }
    if (v.at("pass").get<bool>()) {
      for (std::size_t i = 0; i < dim; ++i) {
        if (!nilpotency_index(alg->coeff(i, i)).nilpotent()) {
          fail("diagonal entry " + std::to_string(i + 1) +
               " is not nilpotent despite the pass");
          return;
        }
      }
    } else {
      const std::size_t i =
          indices_0based(json::array({v.at("fail_index")}), dim, "fail index")[0];
      if (value_from_json(ring, v.at("fail_entry")) != alg->coeff(i, i)) {
        fail("reported entry does not match the matrix");
      }
      NilIndex idx = nilpotency_index(alg->coeff(i, i));
      if (idx.kind != NilIndex::Kind::not_nilpotent) {
        fail("reported diagonal entry is not provably non-nilpotent");
      }
    }
    return;
  }

  if (name == "element-nil") {
    Element a(alg, coeffs_from_json(ring, v.at("element"), dim, "element"));
    if (kind == "nil-element") {
      const std::uint64_t e = v.at("exponent").get<std::uint64_t>();
      if (e == 0 || e > kVerifyIterationCap) {
        fail("exponent out of verification range");
        return;
      }
      if (e == 1) {
        if (!a.is_zero()) fail("exponent 1 claims the zero element");
        return;
      }
      Element prev = naive_principal(a, e - 1);
      if (prev.is_zero()) {
        fail("exponent is not minimal: the previous power already vanishes");
      }
      if (!multiply(prev, a).is_zero()) {
        fail("the claimed power is nonzero");
      }
    } else if (kind == "not-nil-element") {
      check_not_nil_cycle(a, v.at("cycle_start").get<std::uint64_t>(),
                          v.at("cycle_end").get<std::uint64_t>(), name, failures);
    } else if (kind != "unknown") {
      fail("unrecognized verdict kind \"" + kind + "\"");
    }
    return;
  }

  if (name == "element-power") {
    if (kind != "element-power") {
      fail("unrecognized verdict kind \"" + kind + "\"");
      return;
    }
    Element a(alg, coeffs_from_json(ring, v.at("element"), dim, "element"));
    const std::string pk = v.at("power").get<std::string>();
    const std::uint64_t n = v.at("n").get<std::uint64_t>();
    if (n == 0 || n > kVerifyIterationCap || (pk == "plenary" && n > 64)) {
      fail("power exponent out of verification range");
      return;
    }
    Element r = pk == "principal" ? naive_principal(a, n) : naive_plenary(a, n);
    std::vector<Value> stored =
        coeffs_from_json(ring, v.at("result"), dim, "result");
    if (r.coeffs() != stored) {
      fail("power result does not recompute by repeated multiplication");
      return;
    }
    if (r.is_zero() != v.at("is_zero").get<bool>()) {
      fail("zero flag contradicts the result");
    }
    return;
  }

  fail("unknown analysis name");
}

}  // namespace

VerifyResult verify_certificate(const json& report, const JobSpec& job) {
  VerifyResult out;
  auto fail = [&](std::string msg) { out.failures.push_back(std::move(msg)); };

  if (!report.is_object()) {
    fail("report: not a JSON object");
    return out;
  }
  if (!report.contains("v") || report.at("v") != 1) {
    fail("report: missing or unsupported version");
    return out;
  }
  if (!report.contains("algebra") || !report.at("algebra").is_object() ||
      !report.at("algebra").contains("hash") ||
      !report.at("algebra").at("hash").is_string()) {
    fail("report: missing algebra hash");
    return out;
  }
  const std::string expected = algebra_hash(job);
  if (report.at("algebra").at("hash").get<std::string>() != expected) {
    throw ParseError("certificate is for a different algebra: hash " +
                     report.at("algebra").at("hash").get<std::string>() +
                     " does not match " + expected);
  }
  const json& a = report.at("algebra");
  if (!a.contains("dimension") || a.at("dimension") != job.algebra->dimension()) {
    fail("report: dimension echo disagrees with the job");
  }
  if (!a.contains("ring") || a.at("ring") != ring_to_json(*job.algebra->ring())) {
    fail("report: ring echo disagrees with the job");
  }
  if (!report.contains("analyses") || !report.at("analyses").is_array()) {
    fail("report: missing analyses array");
    out.ok = false;
    return out;
  }
  for (const json& entry : report.at("analyses")) {
    try {
      verify_entry(entry, job, out.failures);
    } catch (const std::invalid_argument& e) {
      out.failures.push_back(std::string("could not verify an entry: ") + e.what());
    } catch (const std::logic_error&) {
      throw;
    } catch (const std::exception& e) {
      out.failures.push_back(std::string("malformed entry: ") + e.what());
    }
  }
  out.ok = out.failures.empty();
  return out;
}

}  // namespace evolia
