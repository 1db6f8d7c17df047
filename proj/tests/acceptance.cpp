// Acceptance harness: ten end-to-end criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "evolia/analysis.hpp"
#include "evolia/job.hpp"
#include "evolia/shift_algebra.hpp"
#include "support.hpp"

using namespace evolia;
using json = nlohmann::json;

namespace {

int g_failed = 0;
int g_criterion = 0;

/// Runs one criterion body (which returns problem strings; empty = pass),
/// times it against its budget, prints exactly one PASS/FAIL line.
void criterion(const std::string& description, double budget_seconds,
               const std::function<std::vector<std::string>()>& body) {
  ++g_criterion;
  std::vector<std::string> problems;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    problems = body();
  } catch (const std::exception& e) {
    problems.push_back(std::string("threw: ") + e.what());
  }
  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (sec > budget_seconds) {
    std::ostringstream o;
    o << "took " << sec << "s, budget " << budget_seconds << "s";
    problems.push_back(o.str());
  }
  std::ostringstream line;
  line << (problems.empty() ? "PASS" : "FAIL") << " criterion-" << g_criterion
       << ": " << description << " (" << std::fixed << std::setprecision(2) << sec
       << "s)";
  std::cout << line.str() << "\n";
  for (const std::string& p : problems) std::cout << "       - " << p << "\n";
  if (!problems.empty()) ++g_failed;
}

/// Collects mismatch descriptions; keeps the first few to stay readable.
struct Problems {
  std::vector<std::string> items;
  void add(const std::string& s) {
    if (items.size() < 5) items.push_back(s);
    if (items.size() == 5) items.push_back("(further problems suppressed)");
  }
  bool any() const { return !items.empty(); }
};

std::mt19937 g_rng(20260816u);

// =============================================================================
// criterion 1: the nilpotent fixture re-derives end to end
// =============================================================================

std::vector<std::string> c1_nilpotent_fixture() {
  Problems p;
  AlgebraPtr alg = testutil::z36_nilpotent();
  RingPtr r = alg->ring();

  NilpotencyVerdict v = is_nilpotent(alg);
  const auto* nil = std::get_if<NilpotencyVerdict::Nilpotent>(&v.result);
  if (!nil) {
    p.add("expected a nilpotent verdict");
    return p.items;
  }
  if (nil->exponent != 5) p.add("exponent != 5");
  if (!nil->minimal) p.add("exponent not flagged minimal");
  if (nil->witness_path != std::vector<std::size_t>{0, 1, 0, 1}) {
    p.add("witness path is not x1->x2->x1->x2");
  }
  if (!nil->witness_product || *nil->witness_product != r->from_int(12)) {
    p.add("witness product != 12");
  }
  if (path_product(alg, nil->witness_path) != r->from_int(12)) {
    p.add("witness product does not recompute");
  }

  Filtration f = compute_filtration(alg);
  if (f.complete || f.residue != std::vector<std::size_t>{0, 1}) {
    p.add("filtration should leave both generators uncaptured");
  }
  if (!diag_nil_precheck(alg).pass) p.add("diagonal precheck should pass");
  if (!quotient_reduction_check(alg)) p.add("quotient check should agree nilpotent");
  if (!std::holds_alternative<StrongNilpotencyVerdict::Unsupported>(
          is_strongly_nilpotent(alg).result)) {
    p.add("strong nilpotency should be unsupported over Z/36");
  }
  return p.items;
}

// =============================================================================
// criterion 2: the non-nil fixture yields a checkable witness
// =============================================================================

std::vector<std::string> c2_not_nil_fixture() {
  Problems p;
  AlgebraPtr alg = testutil::z36_not_nil();
  RingPtr r = alg->ring();

  NilpotencyVerdict v = is_nilpotent(alg);
  const auto* bad = std::get_if<NilpotencyVerdict::NotNilpotent>(&v.result);
  if (!bad) {
    p.add("expected a not-nilpotent verdict");
    return p.items;
  }
  if (bad->cycle_start != 2 || bad->cycle_end != 8) p.add("state cycle != (2,8)");
  if (bad->witness_path !=
      std::vector<std::size_t>{0, 1, 0, 1, 0, 1, 0, 1, 0}) {
    p.add("witness path is not the alternating 8-edge walk");
  }
  if (bad->witness_product != r->from_int(4)) p.add("witness product != 4");
  if (path_product(alg, bad->witness_path) != bad->witness_product) {
    p.add("witness product does not recompute");
  }

  NilAlgebraVerdict scan = is_nil_algebra(alg);
  const auto* w = std::get_if<NilAlgebraVerdict::NotNil>(&scan.result);
  if (!w) {
    p.add("exhaustive scan should find a non-nil element");
    return p.items;
  }
  if (w->witness != testutil::coeffs_from_ints(r, {1, 1})) {
    p.add("scan witness is not x1+x2");
  }
  const auto* cyc = std::get_if<NilElementVerdict::NotNil>(&w->element.result);
  if (!cyc || cyc->cycle_start != 2 || cyc->cycle_end != 8) {
    p.add("witness orbit cycle != (2,8)");
  }

  AnalysisOptions par;
  par.threads = 4;
  NilAlgebraVerdict scan4 = is_nil_algebra(alg, par);
  const auto* w4 = std::get_if<NilAlgebraVerdict::NotNil>(&scan4.result);
  if (!w4 || w4->witness != w->witness) {
    p.add("witness changes under a different thread count");
  }
  return p.items;
}

// =============================================================================
// criterion 3: the Z/4 shift rule, dense windows and sparse powers
// =============================================================================

std::vector<std::string> c3_shift_z4() {
  Problems p;
  RingPtr r = Ring::mod(4);
  ShiftRulePtr rule = ShiftRule::make(r, r->from_int(2));

  for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{7},
                        std::size_t{64}}) {
    AlgebraPtr w = rule->window(k);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t row = 0; row < k; ++row) {
        Value want = row == c ? r->from_int(2)
                              : (row == c + 1 ? r->one() : r->zero());
        if (w->coeff(row, c) != want) {
          p.add("window " + std::to_string(k) + " wrong at (" +
                std::to_string(row + 1) + "," + std::to_string(c + 1) + ")");
        }
      }
    }
  }

  // Plenary powers of the first generator walk down the chain:
  // x1^[n] = 2 x_n + x_{n+1}.
  SparseElement x1 = SparseElement::basis(rule, 1);
  for (std::uint64_t n = 1; n <= 64; ++n) {
    SparseElement want(rule, {{n, r->from_int(2)}, {n + 1, r->one()}});
    if (plenary_power(x1, n) != want) {
      p.add("x1^[" + std::to_string(n) + "] != 2x" + std::to_string(n) + "+x" +
            std::to_string(n + 1));
    }
  }

  // Random sparse elements: the nil exponent is minimal and bounded by
  // twice the top index plus two.
  std::uniform_int_distribution<std::uint64_t> idx(1, 20);
  std::uniform_int_distribution<int> coeff(0, 3);
  std::uniform_int_distribution<int> terms(1, 8);
  for (int rep = 0; rep < 200; ++rep) {
    std::map<std::uint64_t, Value> sup;
    for (int t = terms(g_rng); t > 0; --t) {
      sup.insert_or_assign(idx(g_rng), r->from_int(coeff(g_rng)));
    }
    SparseElement a(rule, std::move(sup));
    std::uint64_t e = nil_exponent(a);
    if (!principal_power(a, e).is_zero()) {
      p.add("a^e != 0 at rep " + std::to_string(rep));
    }
    if (a.is_zero()) {
      if (e != 1) p.add("zero element should have exponent 1");
      continue;
    }
    if (e > 2 * a.max_index() + 2) {
      p.add("exponent exceeds 2*max_index+2 at rep " + std::to_string(rep));
    }
    if (e >= 2 && principal_power(a, e - 1).is_zero()) {
      p.add("exponent not minimal at rep " + std::to_string(rep));
    }
  }
  return p.items;
}

// =============================================================================
// criterion 4: the Q[t]/(t^2) shift rule behaves identically with nu = t
// =============================================================================

std::vector<std::string> c4_shift_qt() {
  Problems p;
  RingPtr r = Ring::polyquot(Ring::rationals(), 2);
  Value t = r->indeterminate();
  ShiftRulePtr rule = ShiftRule::make(r, t);

  SparseElement x1 = SparseElement::basis(rule, 1);
  for (std::uint64_t n = 1; n <= 32; ++n) {
    SparseElement want(rule, {{n, t}, {n + 1, r->one()}});
    if (plenary_power(x1, n) != want) {
      p.add("x1^[" + std::to_string(n) + "] != t*x" + std::to_string(n) + "+x" +
            std::to_string(n + 1));
    }
  }

  std::uniform_int_distribution<std::uint64_t> idx(1, 10);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> terms(1, 4);
  for (int rep = 0; rep < 50; ++rep) {
    std::map<std::uint64_t, Value> sup;
    for (int k = terms(g_rng); k > 0; --k) {
      sup.insert_or_assign(idx(g_rng),
                           r->from_int(small(g_rng)) + r->from_int(small(g_rng)) * t);
    }
    SparseElement a(rule, std::move(sup));
    std::uint64_t e = nil_exponent(a);
    if (!principal_power(a, e).is_zero()) {
      p.add("a^e != 0 at rep " + std::to_string(rep));
    }
    if (a.is_zero()) continue;
    if (e > 2 * a.max_index() + 2) {
      p.add("exponent exceeds 2*max_index+2 at rep " + std::to_string(rep));
    }
    if (e >= 2 && principal_power(a, e - 1).is_zero()) {
      p.add("exponent not minimal at rep " + std::to_string(rep));
    }
  }
  return p.items;
}

// =============================================================================
// criterion 5: every 2-dim structure over Z/4, scan versus element oracle
// =============================================================================

std::vector<AlgebraPtr> all_z4_dim2() {
  RingPtr r = Ring::mod(4);
  std::vector<AlgebraPtr> out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          out.push_back(testutil::from_rows(r, {{a, b}, {c, d}}));
        }
      }
    }
  }
  return out;
}

std::vector<std::string> c5_scan_vs_oracle() {
  Problems p;
  RingPtr r = Ring::mod(4);
  const std::vector<Value> elems = r->enumerate();
  int nil_count = 0;
  for (const AlgebraPtr& alg : all_z4_dim2()) {
    bool oracle_nil = true;
    std::uint64_t oracle_max = 1;
    for (const Value& a0 : elems) {
      for (const Value& a1 : elems) {
        testutil::OracleNil o = testutil::oracle_nil_element(alg, {a0, a1});
        if (o.kind == testutil::OracleNil::Kind::exhausted) {
          p.add("oracle exhausted, cannot adjudicate");
          return p.items;
        }
        if (o.kind == testutil::OracleNil::Kind::not_nil) {
          oracle_nil = false;
        } else {
          oracle_max = std::max(oracle_max, o.exponent);
        }
      }
    }
    NilAlgebraVerdict v = is_nil_algebra(alg);
    if (v.nil() != oracle_nil) {
      p.add("scan disagrees with the element oracle");
      continue;
    }
    if (oracle_nil) {
      ++nil_count;
      const auto& n = std::get<NilAlgebraVerdict::Nil>(v.result);
      if (n.max_exponent != oracle_max) p.add("max exponent disagrees");
      if (n.candidates != 16) p.add("candidate count != 16");
    }
  }
  // Sanity: the corpus must exercise both outcomes.
  if (nil_count == 0 || nil_count == 256) p.add("degenerate corpus split");
  return p.items;
}

// =============================================================================
// criterion 6: DP nilpotency versus brute-force paths on random Z/36 input
// =============================================================================

std::vector<std::string> c6_dp_vs_paths() {
  Problems p;
  RingPtr r = Ring::mod(36);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rep % 2);
    AlgebraPtr alg = testutil::random_algebra(r, n, g_rng);
    NilpotencyVerdict v = is_nilpotent(alg);
    if (const auto* nil = std::get_if<NilpotencyVerdict::Nilpotent>(&v.result)) {
      for (std::size_t edges = 1; edges <= 8; ++edges) {
        const bool expect_empty = edges >= nil->exponent - 1;
        if (find_nonzero_path(alg, edges).has_value() == expect_empty) {
          p.add("path oracle contradicts exponent " +
                std::to_string(nil->exponent) + " at " + std::to_string(edges) +
                " edges (rep " + std::to_string(rep) + ")");
        }
      }
      if (nil->exponent >= 3) {
        if (path_product(alg, nil->witness_path) != *nil->witness_product ||
            is_zero(*nil->witness_product)) {
          p.add("nilpotent witness does not recompute (rep " +
                std::to_string(rep) + ")");
        }
      }
    } else if (const auto* bad =
                   std::get_if<NilpotencyVerdict::NotNilpotent>(&v.result)) {
      for (std::size_t edges = 1; edges <= 8; ++edges) {
        if (!find_nonzero_path(alg, edges).has_value()) {
          p.add("claimed not nilpotent but paths die at " +
                std::to_string(edges) + " edges (rep " + std::to_string(rep) + ")");
        }
      }
      if (path_product(alg, bad->witness_path) != bad->witness_product ||
          is_zero(bad->witness_product)) {
        p.add("non-nilpotent witness does not recompute (rep " +
              std::to_string(rep) + ")");
      }
    } else {
      p.add("unknown verdict over a finite ring (rep " + std::to_string(rep) + ")");
    }
  }
  return p.items;
}

// =============================================================================
// criterion 7: the triangular route over Z, scrambled DAGs and planted loops
// =============================================================================

std::vector<std::string> c7_triangular_route() {
  Problems p;
  RingPtr r = Ring::integers();
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<std::size_t> dim(2, 6);

  for (int rep = 0; rep < 500; ++rep) {
    // A strictly upper matrix under a random generator relabeling.
    const std::size_t n = dim(g_rng);
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), g_rng);
    std::vector<std::vector<Value>> cols(n, std::vector<Value>(n, r->zero()));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = k + 1; j < n; ++j) {
        cols[sigma[j]][sigma[k]] = r->from_int(entry(g_rng));  // c[s(k)][s(j)]
      }
    }
    AlgebraPtr alg = EvolutionAlgebra::from_columns(r, cols);

    NilpotencyVerdict v = is_nilpotent(alg);
    const auto* nil = std::get_if<NilpotencyVerdict::Nilpotent>(&v.result);
    if (!nil) {
      p.add("scrambled DAG not recognized nilpotent (rep " + std::to_string(rep) + ")");
      continue;
    }
    if (nil->exponent > n + 1) p.add("exponent exceeds dimension + 1");
    Filtration f = compute_filtration(alg);
    if (!f.complete || !f.permutation) {
      p.add("filtration incomplete on a scrambled DAG (rep " + std::to_string(rep) + ")");
      continue;
    }
    const auto& perm = *f.permutation;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b <= a; ++b) {
        if (!is_zero(alg->coeff(perm[a], perm[b]))) {
          p.add("permutation fails to triangularize (rep " + std::to_string(rep) + ")");
        }
      }
    }
    if (nil->exponent >= 3 &&
        (path_product(alg, nil->witness_path) != *nil->witness_product ||
         is_zero(*nil->witness_product))) {
      p.add("triangular witness does not recompute (rep " + std::to_string(rep) + ")");
    }
  }

  for (int rep = 0; rep < 500; ++rep) {
    // Any nonzero diagonal entry is a loop no reordering can clear.
    const std::size_t n = dim(g_rng);
    std::vector<std::vector<Value>> cols(n, std::vector<Value>(n, r->zero()));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) cols[j][k] = r->from_int(entry(g_rng));
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t d = pick(g_rng);
    std::uniform_int_distribution<int> nonzero(1, 3);
    cols[d][d] = r->from_int(nonzero(g_rng));
    AlgebraPtr alg = EvolutionAlgebra::from_columns(r, cols);

    NilpotencyVerdict v = is_nilpotent(alg);
    const auto* bad = std::get_if<NilpotencyVerdict::NotNilpotent>(&v.result);
    if (!bad) {
      p.add("planted loop not refuted (rep " + std::to_string(rep) + ")");
      continue;
    }
    if (bad->witness_path.front() != bad->witness_path.back()) {
      p.add("pumping witness is not a closed walk (rep " + std::to_string(rep) + ")");
    }
    if (is_zero(path_product(alg, bad->witness_path))) {
      p.add("pumping witness product vanishes (rep " + std::to_string(rep) + ")");
    }
    if (compute_filtration(alg).permutation.has_value()) {
      p.add("a permutation exists despite the loop (rep " + std::to_string(rep) + ")");
    }
    if (!find_nonzero_path(alg, n).has_value()) {
      p.add("no surviving path at dimension length (rep " + std::to_string(rep) + ")");
    }
  }
  return p.items;
}

// =============================================================================
// criterion 8: strong nilpotency versus the parenthesized oracle, F2 and F3
// =============================================================================

std::vector<std::string> c8_strong_vs_oracle() {
  Problems p;
  for (std::int64_t mod : {2, 3}) {
    RingPtr f = Ring::mod(mod);
    for (std::int64_t a = 0; a < mod; ++a) {
      for (std::int64_t b = 0; b < mod; ++b) {
        for (std::int64_t c = 0; c < mod; ++c) {
          for (std::int64_t d = 0; d < mod; ++d) {
            AlgebraPtr alg = testutil::from_rows(f, {{a, b}, {c, d}});
            StrongNilpotencyVerdict v = is_strongly_nilpotent(alg);
            const bool strong = v.strongly_nilpotent();
            const bool nilpotent = is_nilpotent(alg).nilpotent();
            const bool nil = is_nil_algebra(alg).nil();
            if (strong && !nilpotent) p.add("strongly nilpotent but not nilpotent");
            if (nilpotent && !nil) p.add("nilpotent but not nil");

            if (strong) {
              const auto& sn =
                  std::get<StrongNilpotencyVerdict::StronglyNilpotent>(v.result);
              if (sn.product_length_bound <= 5 &&
                  !brute_force_parenthesized_products(
                      alg, static_cast<std::size_t>(sn.product_length_bound))) {
                p.add("a product survives past the certified bound");
              }
            } else {
              const auto& ns =
                  std::get<StrongNilpotencyVerdict::NotStronglyNilpotent>(v.result);
              for (std::size_t len = 2; len <= 5; ++len) {
                if (brute_force_parenthesized_products(alg, len)) {
                  p.add("stabilized chain but all products of " +
                        std::to_string(len) + " vanish");
                }
              }
              if (!ns.witness_word.empty() && ns.witness_applied_to) {
                Element acc = Element::basis(alg, *ns.witness_applied_to);
                for (auto it = ns.witness_word.rbegin();
                     it != ns.witness_word.rend(); ++it) {
                  acc = multiply(Element::basis(alg, *it), acc);
                }
                if (acc.is_zero()) p.add("witness word annihilates its target");
              }
            }
          }
        }
      }
    }
  }
  return p.items;
}

// =============================================================================
// criterion 9: quotient reduction is total and consistent on the Z/4 corpus
// =============================================================================

std::vector<std::string> c9_quotient_consistency() {
  Problems p;
  for (const AlgebraPtr& alg : all_z4_dim2()) {
    bool shared = false;
    try {
      shared = quotient_reduction_check(alg);
    } catch (const std::exception& e) {
      p.add(std::string("quotient check threw: ") + e.what());
      continue;
    }
    if (shared != is_nilpotent(alg).nilpotent()) {
      p.add("quotient answer disagrees with the direct verdict");
    }
  }
  return p.items;
}

// =============================================================================
// criterion 10: certificates verify, and provably broken mutants never do
// =============================================================================

json& verdict_of(json& machine, const std::string& name) {
  for (json& e : machine.at("analyses")) {
    if (e.at("analysis") == name) return e.at("verdict");
  }
  throw std::runtime_error("no such analysis: " + name);
}

struct Mutant {
  std::string label;
  json report;
};

/// Single-index flips of a 1-based witness path, pre-screened so every kept
/// mutant provably breaks: the mutated product must differ from the stored
/// one (or vanish).
void add_path_flips(std::vector<Mutant>& out, const json& clean,
                    const std::string& analysis, const AlgebraPtr& alg,
                    const std::string& tag) {
  json peek = clean;
  const json& v = verdict_of(peek, analysis);
  const std::vector<std::size_t> path = [&] {
    std::vector<std::size_t> z;
    for (const json& x : v.at("witness_path")) z.push_back(x.get<std::size_t>() - 1);
    return z;
  }();
  const Value stored = [&] {
    return value_from_json(alg->ring(), v.at("witness_product"));
  }();
  for (std::size_t pos = 0; pos < path.size(); ++pos) {
    for (std::size_t sub = 0; sub < alg->dimension(); ++sub) {
      if (sub == path[pos]) continue;
      std::vector<std::size_t> mutated = path;
      mutated[pos] = sub;
      Value prod = path_product(alg, mutated);
      if (!is_zero(prod) && prod == stored) continue;  // a valid alternative
      json m = clean;
      json arr = json::array();
      for (std::size_t i : mutated) arr.push_back(i + 1);
      verdict_of(m, analysis)["witness_path"] = std::move(arr);
      out.push_back({tag + " path flip at " + std::to_string(pos + 1), std::move(m)});
    }
  }
  // Truncation breaks the stated length contract.
  json shorter = clean;
  json arr = verdict_of(shorter, analysis).at("witness_path");
  arr.erase(arr.size() - 1);
  verdict_of(shorter, analysis)["witness_path"] = std::move(arr);
  out.push_back({tag + " truncated path", std::move(shorter)});
  // An out-of-range generator index can never re-derive.
  json bad = clean;
  verdict_of(bad, analysis)["witness_path"][0] = alg->dimension() + 1;
  out.push_back({tag + " out-of-range index", std::move(bad)});
}

void add_common(std::vector<Mutant>& out, const json& clean,
                const std::string& tag) {
  json m = clean;
  m["v"] = 2;
  out.push_back({tag + " version bump", std::move(m)});

  m = clean;
  m["algebra"]["dimension"] = m["algebra"]["dimension"].get<int>() + 1;
  out.push_back({tag + " dimension echo", std::move(m)});

  m = clean;
  m["algebra"]["ring"]["modulus"] = 37;
  out.push_back({tag + " ring echo", std::move(m)});

  m = clean;
  std::string h = m["algebra"]["hash"].get<std::string>();
  h[0] = h[0] == 'f' ? '0' : 'f';
  m["algebra"]["hash"] = h;
  out.push_back({tag + " hash flip", std::move(m)});

  for (const json& e : clean.at("analyses")) {
    m = clean;
    verdict_of(m, e.at("analysis").get<std::string>())["kind"] = "garbled";
    out.push_back({tag + " garbled kind for " + e.at("analysis").get<std::string>(),
                   std::move(m)});
  }
}

void bump(std::vector<Mutant>& out, const json& clean, const std::string& analysis,
          const std::string& field, std::int64_t delta, const std::string& tag) {
  json m = clean;
  json& v = verdict_of(m, analysis);
  v[field] = v.at(field).get<std::int64_t>() + delta;
  out.push_back({tag + " " + analysis + "." + field + (delta > 0 ? "+" : "") +
                     std::to_string(delta),
                 std::move(m)});
}

std::vector<std::string> c10_certificates() {
  Problems p;

  json job1{{"mode", "matrix"},
            {"ring", {{"kind", "mod"}, {"modulus", 36}}},
            {"matrix", {{6, 3}, {2, 12}}},
            {"analyses", {"nilpotent", "nil", "filtration", "diag-precheck",
                          "quotient-check", "strongly-nilpotent"}}};
  json job2{{"mode", "matrix"},
            {"ring", {{"kind", "mod"}, {"modulus", 36}}},
            {"matrix", {{6, 2}, {2, 12}}},
            {"analyses", {"nilpotent", "nil", "element-nil"}},
            {"element", {1, 1}}};
  json job3{{"mode", "shift"},
            {"ring", {{"kind", "mod"}, {"modulus", 4}}},
            {"nu", 2},
            {"window", 4},
            {"analyses", {"nilpotent", "nil", "element-power"}},
            {"element", {1, 0, 0, 0}},
            {"power", {{"kind", "plenary"}, {"n", 2}}}};

  JobSpec spec1 = parse_job(job1);
  JobSpec spec2 = parse_job(job2);
  JobSpec spec3 = parse_job(job3);
  const json rep1 = run_job(spec1).machine;
  const json rep2 = run_job(spec2).machine;
  const json rep3 = run_job(spec3).machine;

  // Genuine certificates must verify clean.
  for (const auto& [rep, spec] : {std::pair<const json&, const JobSpec&>{rep1, spec1},
                                  {rep2, spec2},
                                  {rep3, spec3}}) {
    VerifyResult r = verify_certificate(rep, spec);
    if (!r.ok) {
      for (const std::string& f : r.failures) p.add("genuine report rejected: " + f);
    }
  }

  std::vector<Mutant> muts;

  // --- report 1: the nilpotent fixture ---
  add_common(muts, rep1, "rep1");
  for (std::int64_t d : {-2, -1, 1, 2}) bump(muts, rep1, "nilpotent", "exponent", d, "rep1");
  for (std::int64_t d : {-1, 1}) bump(muts, rep1, "nilpotent", "witness_product", d, "rep1");
  for (std::int64_t d : {-1, 1, 10}) bump(muts, rep1, "nil", "max_exponent", d, "rep1");
  for (std::int64_t d : {-1, 1, 10}) bump(muts, rep1, "nil", "candidates", d, "rep1");
  add_path_flips(muts, rep1, "nilpotent", spec1.algebra, "rep1");
  {
    json m = rep1;
    verdict_of(m, "filtration")["complete"] = true;
    muts.push_back({"rep1 filtration completeness", std::move(m)});
    m = rep1;
    verdict_of(m, "filtration")["residue"] = {1};
    muts.push_back({"rep1 filtration residue drop", std::move(m)});
    m = rep1;
    verdict_of(m, "filtration")["residue"] = json::array();
    muts.push_back({"rep1 filtration residue empty", std::move(m)});
    m = rep1;
    verdict_of(m, "filtration")["layers"] = {{1}};
    muts.push_back({"rep1 filtration fake layer", std::move(m)});
    m = rep1;
    verdict_of(m, "filtration")["layers"] = {{1}, {2}};
    muts.push_back({"rep1 filtration fake layers", std::move(m)});
    m = rep1;
    verdict_of(m, "quotient-check")["nilpotent"] = false;
    muts.push_back({"rep1 quotient flip", std::move(m)});
    m = rep1;
    verdict_of(m, "diag-precheck")["pass"] = false;
    muts.push_back({"rep1 diag flip", std::move(m)});
    m = rep1;
    verdict_of(m, "strongly-nilpotent") =
        json{{"kind", "strongly-nilpotent"}, {"chain_step", 1},
             {"product_length_bound", 2}};
    muts.push_back({"rep1 forged strong verdict", std::move(m)});
    m = rep1;
    json& entries = m["analyses"];
    std::swap(entries[0]["analysis"], entries[1]["analysis"]);
    muts.push_back({"rep1 analysis name swap", std::move(m)});
  }

  // --- report 2: the non-nil fixture ---
  add_common(muts, rep2, "rep2");
  for (std::int64_t d : {-1, 1}) {
    bump(muts, rep2, "nilpotent", "cycle_start", d, "rep2");
    bump(muts, rep2, "nilpotent", "cycle_end", d, "rep2");
    bump(muts, rep2, "nilpotent", "witness_product", d, "rep2");
    bump(muts, rep2, "nil", "cycle_start", d, "rep2");
    bump(muts, rep2, "nil", "cycle_end", d, "rep2");
    bump(muts, rep2, "element-nil", "cycle_start", d, "rep2");
    bump(muts, rep2, "element-nil", "cycle_end", d, "rep2");
  }
  {
    // Shifting both ends by the same offset still misses: the orbit enters
    // its cycle exactly at 2, so states 1 and 7 differ.
    json m = rep2;
    verdict_of(m, "nil")["cycle_start"] = 1;
    verdict_of(m, "nil")["cycle_end"] = 7;
    muts.push_back({"rep2 cycle shifted left", std::move(m)});
    m = rep2;
    verdict_of(m, "nil")["witness"] = {1, 0};  // x1 alone is nil
    muts.push_back({"rep2 nil witness that is nil", std::move(m)});
    m = rep2;
    verdict_of(m, "nil")["witness"] = {0, 0};
    muts.push_back({"rep2 zero witness", std::move(m)});
  }
  add_path_flips(muts, rep2, "nilpotent", spec2.algebra, "rep2");

  // --- report 3: the shift window ---
  add_common(muts, rep3, "rep3");
  for (std::int64_t d : {-1, 1}) {
    bump(muts, rep3, "nilpotent", "exponent", d, "rep3");
    bump(muts, rep3, "nilpotent", "witness_product", d, "rep3");
    bump(muts, rep3, "nil", "max_exponent", d, "rep3");
    bump(muts, rep3, "nil", "candidates", d, "rep3");
    bump(muts, rep3, "element-power", "n", d, "rep3");
  }
  add_path_flips(muts, rep3, "nilpotent", spec3.algebra, "rep3");
  {
    json m = rep3;
    verdict_of(m, "element-power")["power"] = "principal";
    muts.push_back({"rep3 power kind flip", std::move(m)});
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::int64_t d : {-1, 1}) {
        m = rep3;
        json& res = verdict_of(m, "element-power")["result"];
        res[i] = (res[i].get<std::int64_t>() + d + 4) % 4;
        muts.push_back({"rep3 power result bump " + std::to_string(i), std::move(m)});
      }
    }
    m = rep3;
    verdict_of(m, "element-power")["element"] = {2, 0, 0, 0};  // (2x1)^[2] = 0
    muts.push_back({"rep3 power element swap", std::move(m)});
    m = rep3;
    verdict_of(m, "element-power")["element"] = {0, 1, 0, 0};  // x2^[2] = 2x3+x4
    muts.push_back({"rep3 power element shift", std::move(m)});
  }

  if (muts.size() < 100) {
    p.add("only " + std::to_string(muts.size()) + " mutants generated, need 100");
  }

  int rejected = 0;
  for (const Mutant& m : muts) {
    const JobSpec& spec = m.label.rfind("rep1", 0) == 0
                              ? spec1
                              : (m.label.rfind("rep2", 0) == 0 ? spec2 : spec3);
    try {
      VerifyResult r = verify_certificate(m.report, spec);
      if (r.ok) {
        p.add("mutant verified clean: " + m.label);
      } else {
        ++rejected;
      }
    } catch (const ParseError&) {
      ++rejected;  // refusing the certificate outright is a rejection
    }
  }
  if (rejected != static_cast<int>(muts.size()) && !p.any()) {
    p.add("rejected " + std::to_string(rejected) + " of " +
          std::to_string(muts.size()));
  }
  return p.items;
}

}  // namespace

int main() {
  std::cout << "evolution-algebra acceptance run\n";
  criterion("Z/36 nilpotent fixture re-derives with exponent 5 and witness", 1.0,
            c1_nilpotent_fixture);
  criterion("Z/36 non-nil fixture yields the x1+x2 witness and (2,8) cycle", 5.0,
            c2_not_nil_fixture);
  criterion("Z/4 shift rule: windows, plenary chain walk, sparse nil bounds", 5.0,
            c3_shift_z4);
  criterion("Q[t]/(t^2) shift rule matches with nu = t", 5.0, c4_shift_qt);
  criterion("all 256 Z/4 structures: exhaustive scan equals element oracle", 30.0,
            c5_scan_vs_oracle);
  criterion("500 random Z/36 algebras: DP verdicts match brute-force paths", 60.0,
            c6_dp_vs_paths);
  criterion("1000 integer algebras: triangular route proves and refutes", 60.0,
            c7_triangular_route);
  criterion("all F2/F3 2-dim structures: strong chain matches the oracle", 30.0,
            c8_strong_vs_oracle);
  criterion("quotient reduction total and consistent on the Z/4 corpus", 30.0,
            c9_quotient_consistency);
  criterion("3 genuine certificates accepted, 100+ broken mutants rejected", 30.0,
            c10_certificates);
  if (g_failed == 0) {
    std::cout << "all " << g_criterion << " criteria passed\n";
  } else {
    std::cout << g_failed << " of " << g_criterion << " criteria FAILED\n";
  }
  return g_failed;
}
