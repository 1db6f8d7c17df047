#include "evolia/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace evolia {

namespace {

Int int_pow(const Int& base, std::size_t e) {
  Int out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

NilElementVerdict is_nil_element(const Element& a, std::optional<std::uint64_t> bound) {
  if (a.is_zero()) return {NilElementVerdict::Nil{1}};
  const RingPtr& ring = a.algebra()->ring();
  if (!ring->is_finite() && !bound) {
    throw std::invalid_argument("element nil check over infinite ring " + ring->name() +
                                " needs an iteration bound");
  }
  // beta_k holds the coefficients of a^(k+1); the recurrence beta_{k+1} =
  // M beta_k is a fixed linear map, so a revisited state loops forever.
  const RingMatrix m = power_matrix(a);
  std::map<std::vector<Value>, std::uint64_t> seen;
  std::vector<Value> beta = a.coeffs();
  std::uint64_t k = 0;
  for (;;) {
    bool zero = true;
    for (const Value& v : beta) {
      if (!is_zero(v)) {
        zero = false;
        break;
      }
    }
    if (zero) return {NilElementVerdict::Nil{k + 1}};
    auto it = seen.find(beta);
    if (it != seen.end()) return {NilElementVerdict::NotNil{it->second, k}};
    if (bound && k >= *bound) return {NilElementVerdict::Unknown{*bound}};
    std::vector<Value> next = m * beta;
    seen.emplace(std::move(beta), k);
    beta = std::move(next);
    ++k;
  }
}

DiagPrecheck diag_nil_precheck(const AlgebraPtr& algebra, std::uint64_t bound) {
  for (std::size_t i = 0; i < algebra->dimension(); ++i) {
    NilIndex idx = nilpotency_index(algebra->coeff(i, i), bound);
    if (idx.kind == NilIndex::Kind::not_nilpotent_within) {
      throw std::invalid_argument("bound " + std::to_string(bound) +
                                  " too small to settle diagonal entry " +
                                  std::to_string(i + 1));
    }
    if (!idx.nilpotent()) return {false, i, algebra->coeff(i, i)};
  }
  return {true, 0, {}};
}

namespace {

// Decode linear index into ring-element digits, first coordinate fastest.
std::vector<Value> decode_candidate(const std::vector<Value>& elems, std::uint64_t idx,
                                    std::size_t n) {
  std::vector<Value> out;
  out.reserve(n);
  const std::uint64_t base = elems.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(elems[idx % base]);
    idx /= base;
  }
  return out;
}

}  // namespace

NilAlgebraVerdict is_nil_algebra(const AlgebraPtr& algebra,
                                 const AnalysisOptions& options) {
  const RingPtr& ring = algebra->ring();
  const std::size_t n = algebra->dimension();
  if (n == 0) return {NilAlgebraVerdict::Nil{1, 1}};
  if (!ring->is_finite()) {
    throw std::invalid_argument("exhaustive nil scan needs a finite ring, not " +
                                ring->name());
  }
  const Int total = int_pow(ring->cardinality(), n);
  if (total > options.exhaustive_cap) {
    return {NilAlgebraVerdict::Skipped{
        "candidate count " + total.str() + " exceeds cap " +
            std::to_string(options.exhaustive_cap),
        total, options.exhaustive_cap}};
  }
  const std::uint64_t count = static_cast<std::uint64_t>(total);
  const std::vector<Value> elems = ring->enumerate();

  const unsigned threads =
      std::max(1u, count > 64 ? options.threads : 1u);
  std::atomic<std::uint64_t> best_witness{count};
  std::vector<std::uint64_t> max_exp(threads, 0);

  auto worker = [&](unsigned tid) {
    for (std::uint64_t idx = tid; idx < count; idx += threads) {
      if (idx >= best_witness.load(std::memory_order_relaxed)) continue;
      Element a(algebra, decode_candidate(elems, idx, n));
      NilElementVerdict v = is_nil_element(a);
      if (v.nil()) {
        std::uint64_t e = std::get<NilElementVerdict::Nil>(v.result).exponent;
        if (e > max_exp[tid]) max_exp[tid] = e;
      } else {
        std::uint64_t prev = best_witness.load(std::memory_order_relaxed);
        while (idx < prev &&
               !best_witness.compare_exchange_weak(prev, idx,
                                                   std::memory_order_relaxed)) {
        }
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  const std::uint64_t w = best_witness.load();
  if (w < count) {
    // Re-derive the verdict for the winning index: a slower thread may have
    // raced the slot after losing the min.
    Element a(algebra, decode_candidate(elems, w, n));
    NilElementVerdict v = is_nil_element(a);
    return {NilAlgebraVerdict::NotNil{a.coeffs(), v}};
  }
  std::uint64_t maxe = 0;
  for (std::uint64_t e : max_exp) maxe = std::max(maxe, e);
  return {NilAlgebraVerdict::Nil{maxe, count}};
}

Value path_product(const AlgebraPtr& algebra, const std::vector<std::size_t>& path) {
  Value p = algebra->ring()->one();
  for (std::size_t m = 0; m + 1 < path.size(); ++m) {
    p = p * algebra->coeff(path[m + 1], path[m]);
  }
  return p;
}

namespace {

// Shared DFS over index paths with zero-prefix pruning: once a prefix
// product is zero every extension is zero and the subtree is skipped.
bool path_dfs(const AlgebraPtr& algebra, std::size_t edges,
              std::vector<std::size_t>& path, const Value& prefix,
              const std::function<bool(const std::vector<std::size_t>&, const Value&)>&
                  emit) {
  if (path.size() == edges + 1) return emit(path, prefix);
  const std::size_t n = algebra->dimension();
  const std::size_t from = path.back();
  for (std::size_t next = 0; next < n; ++next) {
    const Value& c = algebra->coeff(next, from);
    if (is_zero(c)) continue;
    Value ext = prefix * c;
    if (is_zero(ext)) continue;
    path.push_back(next);
    if (!path_dfs(algebra, edges, path, ext, emit)) return false;
    path.pop_back();
  }
  return true;
}

void check_path_guard(const AlgebraPtr& algebra, std::size_t edges,
                      std::uint64_t guard) {
  if (edges == 0) throw std::invalid_argument("path enumeration needs at least 1 edge");
  const Int total = int_pow(Int(algebra->dimension()), edges + 1);
  if (total > guard) {
    throw std::invalid_argument("path enumeration of " + total.str() +
                                " sequences exceeds guard " + std::to_string(guard));
  }
}

}  // namespace

std::vector<PathProduct> brute_force_path_products(const AlgebraPtr& algebra,
                                                   std::size_t edges,
                                                   std::uint64_t guard) {
  check_path_guard(algebra, edges, guard);
  std::vector<PathProduct> out;
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < algebra->dimension(); ++start) {
    path.assign(1, start);
    path_dfs(algebra, edges, path, algebra->ring()->one(),
             [&](const std::vector<std::size_t>& p, const Value& v) {
               out.push_back({p, v});
               return true;
             });
  }
  return out;
}

std::optional<PathProduct> find_nonzero_path(const AlgebraPtr& algebra,
                                             std::size_t edges, std::uint64_t guard) {
  check_path_guard(algebra, edges, guard);
  std::optional<PathProduct> found;
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < algebra->dimension() && !found; ++start) {
    path.assign(1, start);
    path_dfs(algebra, edges, path, algebra->ring()->one(),
             [&](const std::vector<std::size_t>& p, const Value& v) {
               found = PathProduct{p, v};
               return false;
             });
  }
  return found;
}

Filtration compute_filtration(const AlgebraPtr& algebra) {
  const std::size_t n = algebra->dimension();
  std::vector<bool> captured(n, false);
  std::size_t captured_count = 0;
  Filtration f;
  for (;;) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < n; ++i) {
      if (captured[i]) continue;
      bool inside = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_zero(algebra->coeff(k, i)) && !captured[k]) {
          inside = false;
          break;
        }
      }
      if (inside) layer.push_back(i);
    }
    if (layer.empty()) break;
    for (std::size_t i : layer) captured[i] = true;
    captured_count += layer.size();
    f.layers.push_back(std::move(layer));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!captured[i]) f.residue.push_back(i);
  }
  f.complete = captured_count == n;
  if (f.complete) {
    std::vector<std::size_t> perm;
    perm.reserve(n);
    for (const auto& layer : f.layers) {
      for (std::size_t i : layer) perm.push_back(i);
    }
    f.permutation = std::move(perm);
  }
  return f;
}

std::optional<std::vector<std::size_t>> strict_upper_permutation(
    const AlgebraPtr& algebra) {
  return compute_filtration(algebra).permutation;
}

namespace {

// ---- set-valued path-product DP ----
//
// Cell (start, end) holds every nonzero coefficient product attainable
// along an index path of the current length from start to end, each with
// one representative path. The full state determines its successor, so a
// revisited nonempty state proves the sets never empty out.

using DpCell = std::map<Value, std::vector<std::size_t>>;
using DpState = std::vector<DpCell>;                 // n*n cells, start*n + end
using DpKey = std::vector<std::vector<Value>>;       // values only, paths stripped

DpKey dp_key(const DpState& s) {
  DpKey key;
  key.reserve(s.size());
  for (const DpCell& cell : s) {
    std::vector<Value> vals;
    vals.reserve(cell.size());
    for (const auto& [v, p] : cell) vals.push_back(v);
    key.push_back(std::move(vals));
  }
  return key;
}

bool dp_empty(const DpState& s) {
  for (const DpCell& cell : s) {
    if (!cell.empty()) return false;
  }
  return true;
}

// First nonempty cell scanning start-major, then its smallest value. The
// scan order is load-bearing: it keeps reported witnesses deterministic.
std::pair<std::vector<std::size_t>, Value> dp_witness(const DpState& s, std::size_t n) {
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t end = 0; end < n; ++end) {
      const DpCell& cell = s[start * n + end];
      if (!cell.empty()) {
        return {cell.begin()->second, cell.begin()->first};
      }
    }
  }
  throw std::logic_error("witness requested from empty DP state");
}

DpState dp_init(const AlgebraPtr& algebra) {
  const std::size_t n = algebra->dimension();
  DpState s(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Value& c = algebra->coeff(k, j);
      if (!is_zero(c)) s[j * n + k].emplace(c, std::vector<std::size_t>{j, k});
    }
  }
  return s;
}

DpState dp_step(const AlgebraPtr& algebra, const DpState& s) {
  const std::size_t n = algebra->dimension();
  DpState out(n * n);
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t mid = 0; mid < n; ++mid) {
      const DpCell& cell = s[start * n + mid];
      if (cell.empty()) continue;
      for (std::size_t end = 0; end < n; ++end) {
        const Value& c = algebra->coeff(end, mid);
        if (is_zero(c)) continue;
        DpCell& target = out[start * n + end];
        for (const auto& [v, path] : cell) {
          Value ext = c * v;
          if (is_zero(ext)) continue;
          auto it = target.find(ext);
          if (it == target.end()) {
            std::vector<std::size_t> np = path;
            np.push_back(end);
            target.emplace(std::move(ext), std::move(np));
          }
        }
      }
    }
  }
  return out;
}

NilpotencyVerdict dp_run(const AlgebraPtr& algebra, std::uint64_t bound) {
  DpState state = dp_init(algebra);
  DpState prev;  // state one step back, for the minimality witness
  std::map<DpKey, std::uint64_t> seen;
  std::uint64_t len = 1;  // edges per path in `state`
  for (;;) {
    if (dp_empty(state)) {
      // All products of `len` edges vanish: A^(len+1) = (0), and the
      // previous state witnesses A^len != (0).
      NilpotencyVerdict::Nilpotent v;
      v.exponent = len + 1;
      v.minimal = true;
      v.method = NilpotencyVerdict::Method::state_dp;
      if (len >= 2) {
        auto [path, product] = dp_witness(prev, algebra->dimension());
        v.witness_path = std::move(path);
        v.witness_product = std::move(product);
      }
      // exponent 2 carries no path: A itself is nonzero because the
      // dimension is positive.
      return {std::move(v)};
    }
    auto [it, fresh] = seen.emplace(dp_key(state), len);
    if (!fresh) {
      auto [path, product] = dp_witness(state, algebra->dimension());
      NilpotencyVerdict::NotNilpotent v{std::move(path), std::move(product),
                                        it->second, len,
                                        NilpotencyVerdict::Method::state_dp};
      return {std::move(v)};
    }
    if (len >= bound) return {NilpotencyVerdict::Unknown{bound}};
    prev = std::move(state);
    state = dp_step(algebra, prev);
    ++len;
  }
}

// Longest edge count along nonzero-coefficient paths when the filtration is
// complete (the edge digraph is then acyclic), plus one realizing path.
std::pair<std::size_t, std::vector<std::size_t>> longest_dag_path(
    const AlgebraPtr& algebra) {
  const std::size_t n = algebra->dimension();
  std::vector<std::ptrdiff_t> best(n, -1);  // -1: not computed
  std::vector<std::ptrdiff_t> next(n, -1);
  // The filtration layers give a topological order; recursion depth is
  // bounded by it, but an explicit stack keeps this robust for n ~ 10^3.
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (best[seed] >= 0) continue;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t j = stack.back();
      bool ready = true;
      std::ptrdiff_t b = 0, nx = -1;
      for (std::size_t k = 0; k < n; ++k) {
        if (is_zero(algebra->coeff(k, j))) continue;
        if (best[k] < 0) {
          stack.push_back(k);
          ready = false;
          break;
        }
        if (best[k] + 1 > b) {
          b = best[k] + 1;
          nx = static_cast<std::ptrdiff_t>(k);
        }
      }
      if (ready) {
        best[j] = b;
        next[j] = nx;
        stack.pop_back();
      }
    }
  }
  std::size_t argmax = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (best[j] > best[argmax]) argmax = j;
  }
  std::vector<std::size_t> path{argmax};
  while (next[path.back()] >= 0) path.push_back(static_cast<std::size_t>(next[path.back()]));
  return {static_cast<std::size_t>(best[argmax]), std::move(path)};
}

// Closed walk in the residue digraph. When the filtration stalls, every
// residue generator has a nonzero coefficient on some residue generator, so
// following any out-edge must revisit a vertex.
std::vector<std::size_t> residue_cycle(const AlgebraPtr& algebra,
                                       const std::vector<std::size_t>& residue) {
  const std::size_t n = algebra->dimension();
  std::set<std::size_t> in_residue(residue.begin(), residue.end());
  std::vector<std::size_t> walk{residue.front()};
  std::map<std::size_t, std::size_t> pos{{residue.front(), 0}};
  for (;;) {
    const std::size_t j = walk.back();
    std::size_t chosen = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (in_residue.count(k) && !is_zero(algebra->coeff(k, j))) {
        chosen = k;
        break;
      }
    }
    if (chosen == n) {
      throw std::logic_error("residue generator with no residue out-edge");
    }
    auto it = pos.find(chosen);
    if (it != pos.end()) {
      // Trim the tail before the cycle entry and close the walk.
      std::vector<std::size_t> cycle(walk.begin() + it->second, walk.end());
      cycle.push_back(chosen);
      return cycle;
    }
    pos.emplace(chosen, walk.size());
    walk.push_back(chosen);
  }
}

}  // namespace

NilpotencyVerdict is_nilpotent(const AlgebraPtr& algebra,
                               const AnalysisOptions& options) {
  const std::size_t n = algebra->dimension();
  if (n == 0) {
    NilpotencyVerdict::Nilpotent v;
    v.exponent = 1;
    v.minimal = true;
    v.method = NilpotencyVerdict::Method::degenerate;
    return {std::move(v)};
  }
  const RingPtr& ring = algebra->ring();
  if (ring->is_finite()) {
    // Finitely many full DP states, so the run ends on its own; the huge
    // fallback bound only protects against astronomical state orbits.
    NilpotencyVerdict v =
        dp_run(algebra, options.iteration_bound.value_or(1'000'000));
    if (std::holds_alternative<NilpotencyVerdict::Unknown>(v.result) &&
        !options.iteration_bound) {
      throw std::logic_error("DP state orbit exceeded the internal safety bound");
    }
    return v;
  }
  if (ring->is_domain()) {
    // Over a domain a product of nonzero coefficients never vanishes, so
    // nilpotency is exactly the triangular reordering criterion.
    Filtration f = compute_filtration(algebra);
    if (f.complete) {
      auto [edges, path] = longest_dag_path(algebra);
      NilpotencyVerdict::Nilpotent v;
      v.exponent = edges + 2;
      v.minimal = true;
      v.method = NilpotencyVerdict::Method::triangular;
      if (edges >= 1) {
        v.witness_path = std::move(path);
        v.witness_product = path_product(algebra, v.witness_path);
      }
      return {std::move(v)};
    }
    std::vector<std::size_t> cycle = residue_cycle(algebra, f.residue);
    Value product = path_product(algebra, cycle);
    if (is_zero(product)) {
      throw std::logic_error("residue cycle product vanished over a domain");
    }
    NilpotencyVerdict::NotNilpotent v{std::move(cycle), std::move(product), 0, 0,
                                      NilpotencyVerdict::Method::triangular};
    return {std::move(v)};
  }
  // Infinite ring with zero divisors. A complete filtration still forces
  // all paths dead within n-1 edges, so the DP then terminates on its own.
  std::uint64_t bound;
  if (options.iteration_bound) {
    bound = *options.iteration_bound;
  } else if (compute_filtration(algebra).complete) {
    bound = n + 1;
  } else {
    throw std::invalid_argument("nilpotency over " + ring->name() +
                                " needs options.iteration_bound");
  }
  return dp_run(algebra, bound);
}

bool quotient_reduction_check(const AlgebraPtr& algebra,
                              const AnalysisOptions& options) {
  if (!algebra->ring()->is_finite()) {
    throw std::invalid_argument("quotient reduction check needs a finite ring");
  }
  std::vector<std::size_t> square_zero;
  for (std::size_t i = 0; i < algebra->dimension(); ++i) {
    bool zero = true;
    for (std::size_t k = 0; k < algebra->dimension(); ++k) {
      if (!is_zero(algebra->coeff(k, i))) {
        zero = false;
        break;
      }
    }
    if (zero) square_zero.push_back(i);
  }
  BasisQuotient q = quotient_by_basis_ideal(algebra, square_zero);
  const bool whole = is_nilpotent(algebra, options).nilpotent();
  const bool reduced = is_nilpotent(q.algebra, options).nilpotent();
  if (whole != reduced) {
    throw std::logic_error("algebra and its square-zero quotient disagree on nilpotency");
  }
  return whole;
}

namespace {

// ---- field-linear span machinery for the operator chain ----
//
// Rows are flattened n*n operator matrices kept in reduced echelon form
// (pivot entries normalized to 1 and cleared above and below), so membership
// reduction is a single sweep.

struct SpanBasis {
  std::vector<std::vector<Value>> rows;
  std::vector<std::size_t> pivots;

  // Reduce v against the basis in place; returns the first nonzero column
  // or npos when v reduces to zero.
  std::size_t reduce(std::vector<Value>& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Value& lead = v[pivots[r]];
      if (is_zero(lead)) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (is_zero(rows[r][c])) continue;
        v[c] = v[c] - lead * rows[r][c];
      }
    }
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (!is_zero(v[c])) return c;
    }
    return static_cast<std::size_t>(-1);
  }

  // Insert if independent; returns true when the dimension grew.
  bool insert(std::vector<Value> v) {
    const std::size_t p = reduce(v);
    if (p == static_cast<std::size_t>(-1)) return false;
    const RingPtr ring = v.front().ring();
    const Value scale = ring->inv(v[p]);
    for (Value& x : v) x = x * scale;
    // Clear the new pivot column in the existing rows.
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Value& lead = rows[r][p];
      if (is_zero(lead)) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (is_zero(v[c])) continue;
        rows[r][c] = rows[r][c] - lead * v[c];
      }
    }
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }

  std::size_t dimension() const { return rows.size(); }
};

std::vector<Value> flatten(const RingMatrix& m) {
  std::vector<Value> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  }
  return v;
}

RingMatrix unflatten(const RingPtr& ring, const std::vector<Value>& v, std::size_t n) {
  RingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, v[i * n + j]);
  }
  return m;
}

// Bounded search for a pure generator word with nonzero operator product at
// the target length. Matrices are deduplicated per level; over the small
// fields this runs on, levels stay tiny.
std::optional<std::pair<std::vector<std::size_t>, RingMatrix>> find_word_witness(
    const std::vector<RingMatrix>& gens, std::size_t length, std::size_t level_cap) {
  struct Node {
    RingMatrix m;
    std::vector<std::size_t> word;
  };
  std::vector<Node> level;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_zero()) level.push_back({gens[i], {i}});
  }
  for (std::size_t len = 1; len < length; ++len) {
    std::vector<Node> nxt;
    std::set<std::vector<Value>> seen;
    for (const Node& node : level) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        RingMatrix p = node.m * gens[g];
        if (p.is_zero()) continue;
        if (!seen.insert(flatten(p)).second) continue;
        std::vector<std::size_t> w = node.word;
        w.push_back(g);
        nxt.push_back({std::move(p), std::move(w)});
        if (nxt.size() > level_cap) return std::nullopt;
      }
    }
    if (nxt.empty()) return std::nullopt;
    level = std::move(nxt);
  }
  if (level.empty()) return std::nullopt;
  return std::make_pair(level.front().word, level.front().m);
}

}  // namespace

StrongNilpotencyVerdict is_strongly_nilpotent(const AlgebraPtr& algebra) {
  const RingPtr& ring = algebra->ring();
  if (!ring->is_field()) {
    return {StrongNilpotencyVerdict::Unsupported{
        "operator-span criterion needs a field; " + ring->name() + " is not one"}};
  }
  const std::size_t n = algebra->dimension();

  // Generators: left multiplication by each basis element. Every left
  // multiplication operator is a linear combination of these, so the span
  // they generate under products is the whole operator algebra.
  std::vector<RingMatrix> gens;
  gens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    gens.push_back(left_mult_matrix(Element::basis(algebra, i)));
  }

  // Close the span of the generators under right multiplication by a
  // generator; every product word factors as (shorter word) * generator.
  SpanBasis full;
  std::vector<std::vector<Value>> work;
  for (const RingMatrix& g : gens) {
    std::vector<Value> v = flatten(g);
    if (full.insert(v)) work.push_back(std::move(v));
  }
  while (!work.empty()) {
    std::vector<Value> row = std::move(work.back());
    work.pop_back();
    RingMatrix m = unflatten(ring, row, n);
    for (const RingMatrix& g : gens) {
      std::vector<Value> v = flatten(m * g);
      if (full.insert(v)) work.push_back(std::move(v));
    }
  }

  if (full.dimension() == 0) {
    // Zero structure matrix: products of two elements already vanish.
    return {StrongNilpotencyVerdict::StronglyNilpotent{1, 2}};
  }

  // Descending chain: span of products of m factors from the operator
  // algebra. Each step multiplies the previous basis by the generator span
  // basis; the chain either hits zero or stabilizes strictly above it.
  std::vector<std::vector<Value>> prev_rows = full.rows;
  std::uint64_t step = 1;
  for (;;) {
    SpanBasis next;
    for (const std::vector<Value>& u : prev_rows) {
      RingMatrix mu = unflatten(ring, u, n);
      for (const std::vector<Value>& w : full.rows) {
        next.insert(flatten(mu * unflatten(ring, w, n)));
      }
    }
    ++step;
    if (next.dimension() == 0) {
      std::uint64_t bound =
          step >= 63 ? UINT64_MAX : (std::uint64_t{1} << step);
      return {StrongNilpotencyVerdict::StronglyNilpotent{step, bound}};
    }
    if (next.dimension() == prev_rows.size()) {
      // Contained in the previous span with equal dimension: stabilized.
      StrongNilpotencyVerdict::NotStronglyNilpotent v;
      v.stable_dimension = next.dimension();
      v.stable_step = step;
      if (auto w = find_word_witness(gens, static_cast<std::size_t>(step), 10'000)) {
        v.witness_word = w->first;
        for (std::size_t j = 0; j < n; ++j) {
          bool nonzero = false;
          for (std::size_t i = 0; i < n; ++i) {
            if (!is_zero(w->second(i, j))) {
              nonzero = true;
              break;
            }
          }
          if (nonzero) {
            v.witness_applied_to = j;
            break;
          }
        }
      }
      return {std::move(v)};
    }
    prev_rows = std::move(next.rows);
  }
}

namespace {

std::uint64_t catalan(std::size_t n) {
  // n <= 32 keeps this exact in 64 bits; parenthesization guards hit first.
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    c = c * 2 * (2 * i + 1) / (i + 2);
  }
  return c;
}

// Every fully parenthesized product of elems[lo..hi) (order fixed).
std::vector<Element> all_products(const std::vector<Element>& elems, std::size_t lo,
                                  std::size_t hi) {
  if (hi - lo == 1) return {elems[lo]};
  std::vector<Element> out;
  for (std::size_t mid = lo + 1; mid < hi; ++mid) {
    for (const Element& l : all_products(elems, lo, mid)) {
      for (const Element& r : all_products(elems, mid, hi)) {
        out.push_back(multiply(l, r));
      }
    }
  }
  return out;
}

}  // namespace

bool brute_force_parenthesized_products(const AlgebraPtr& algebra, std::size_t n,
                                        const std::vector<Element>& sample,
                                        std::uint64_t guard) {
  if (n == 0) throw std::invalid_argument("product length must be at least 1");
  for (const Element& s : sample) {
    if (s.algebra().get() != algebra.get() && !s.algebra()->same_as(*algebra)) {
      throw std::invalid_argument("sample element belongs to a different algebra");
    }
  }
  if (sample.empty()) return true;
  if (n > 32) {
    throw std::invalid_argument("product length " + std::to_string(n) +
                                " is past the enumeration range");
  }
  const Int total = catalan(n - 1) * int_pow(Int(sample.size()), n);
  if (total > guard) {
    throw std::invalid_argument("parenthesized product enumeration of " + total.str() +
                                " evaluations exceeds guard " + std::to_string(guard));
  }
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    std::vector<Element> tuple;
    tuple.reserve(n);
    for (std::size_t i = 0; i < n; ++i) tuple.push_back(sample[pick[i]]);
    for (const Element& p : all_products(tuple, 0, n)) {
      if (!p.is_zero()) return false;
    }
    std::size_t pos = 0;
    while (pos < n) {
      if (++pick[pos] < sample.size()) break;
      pick[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return true;
}

bool brute_force_parenthesized_products(const AlgebraPtr& algebra, std::size_t n,
                                        std::uint64_t guard) {
  std::vector<Element> basis;
  basis.reserve(algebra->dimension());
  for (std::size_t i = 0; i < algebra->dimension(); ++i) {
    basis.push_back(Element::basis(algebra, i));
  }
  return brute_force_parenthesized_products(algebra, n, basis, guard);
}

}  // namespace evolia
