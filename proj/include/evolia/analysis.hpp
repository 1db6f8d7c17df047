#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "evolia/algebra.hpp"

namespace evolia {

/// Per-run knobs for the analysis entry points. Caps and guards bound work,
/// never correctness: exceeding one produces a Skipped verdict or an error,
/// not a wrong answer.
struct AnalysisOptions {
  std::uint64_t exhaustive_cap = 1'000'000;  // max |R|^n candidates for the nil scan
  std::uint64_t path_guard = 10'000'000;     // max n^(L+1) enumerated index paths
  std::uint64_t paren_guard = 10'000'000;    // max parenthesization * tuple count
  std::uint64_t plenary_cap = 64;
  /// Required for analyses that may not terminate over infinite rings.
  std::optional<std::uint64_t> iteration_bound;
  unsigned threads = 1;
};

/// Verdict on a single element: some principal power vanishes, or its
/// coefficient-vector orbit revisits a state and never can.
struct NilElementVerdict {
  struct Nil {
    std::uint64_t exponent;  // smallest n with a^n = 0
  };
  struct NotNil {
    std::uint64_t cycle_start;  // orbit states at these two iterations are
    std::uint64_t cycle_end;    // equal and no earlier state was zero
  };
  struct Unknown {
    std::uint64_t bound;
  };
  std::variant<Nil, NotNil, Unknown> result;

  bool nil() const { return std::holds_alternative<Nil>(result); }
  bool not_nil() const { return std::holds_alternative<NotNil>(result); }
};

/// a^n = 0 for some n at first orbit zero; NotNil on an orbit state revisit.
/// Over a finite ring the orbit is finite, so one of the two must happen and
/// no bound is needed; otherwise `bound` is required and Unknown is possible.
NilElementVerdict is_nil_element(const Element& a,
                                 std::optional<std::uint64_t> bound = {});

/// Whole-algebra nil verdict by exhausting all |R|^n coefficient vectors.
struct NilAlgebraVerdict {
  struct Nil {
    std::uint64_t max_exponent;  // largest per-element exponent observed
    std::uint64_t candidates;
  };
  struct NotNil {
    std::vector<Value> witness;  // first non-nil element in enumeration order
    NilElementVerdict element;
  };
  struct Skipped {
    std::string reason;
    Int required;
    std::uint64_t cap;
  };
  std::variant<Nil, NotNil, Skipped> result;

  bool nil() const { return std::holds_alternative<Nil>(result); }
  bool not_nil() const { return std::holds_alternative<NotNil>(result); }
};

/// Enumerates R^n in little-endian order (first coordinate fastest) and
/// checks each element; the reported witness is the first one found in that
/// order regardless of thread count. Requires a finite ring; returns Skipped
/// when |R|^n exceeds the cap.
NilAlgebraVerdict is_nil_algebra(const AlgebraPtr& algebra,
                                 const AnalysisOptions& options = {});

/// Cheap necessary condition: x_i^k = c_ii^(k-2) x_i^2 for k > 2, so a nil
/// algebra needs every diagonal structure entry nilpotent in the ring.
struct DiagPrecheck {
  bool pass;
  std::size_t fail_index = 0;       // 0-based generator index when !pass
  std::optional<Value> fail_entry;  // the offending diagonal coefficient
};
DiagPrecheck diag_nil_precheck(const AlgebraPtr& algebra, std::uint64_t bound = 256);

/// Verdict on nilpotency of the whole algebra, with re-checkable evidence.
struct NilpotencyVerdict {
  enum class Method { state_dp, triangular, degenerate };
  struct Nilpotent {
    std::uint64_t exponent;  // smallest n with A^n = (0)
    bool minimal;
    // Evidence that A^(exponent-1) != (0): an index path of exponent-2 edges
    // whose coefficient product is nonzero (empty for exponent <= 2).
    std::vector<std::size_t> witness_path;  // 0-based generator indices
    std::optional<Value> witness_product;
    Method method;
  };
  struct NotNilpotent {
    std::vector<std::size_t> witness_path;  // 0-based; nonzero product
    Value witness_product;
    // state_dp: the set-valued DP state at steps cycle_start and cycle_end
    // was identical (and nonempty), so it never empties. triangular: the
    // witness path is a closed walk with unit-free nonzero factors over a
    // domain, so it pumps to every length.
    std::uint64_t cycle_start = 0;
    std::uint64_t cycle_end = 0;
    Method method;
  };
  struct Unknown {
    std::uint64_t bound;
  };
  std::variant<Nilpotent, NotNilpotent, Unknown> result;

  bool nilpotent() const { return std::holds_alternative<Nilpotent>(result); }
  bool not_nilpotent() const { return std::holds_alternative<NotNilpotent>(result); }
};

/// Decides A^n = (0). Matrix powers of the structure matrix cannot see this
/// over rings with zero divisors, so the decision tracks, per ordered
/// generator pair, the set of nonzero coefficient products along index paths
/// of the current length. Finite rings terminate by state revisit; infinite
/// domains go through the triangular criterion; other infinite rings need
/// options.iteration_bound unless the layer filtration completes (then the
/// DP provably empties within dimension steps).
NilpotencyVerdict is_nilpotent(const AlgebraPtr& algebra,
                               const AnalysisOptions& options = {});

/// One index path and its coefficient product.
struct PathProduct {
  std::vector<std::size_t> path;  // edges+1 generator indices, 0-based
  Value product;
};

/// All index paths of `edges` edges with nonzero coefficient product, by
/// depth-first enumeration with zero-prefix pruning. Independent of the DP;
/// kept brute-force on purpose so the two can check each other.
std::vector<PathProduct> brute_force_path_products(const AlgebraPtr& algebra,
                                                   std::size_t edges,
                                                   std::uint64_t guard = 10'000'000);

/// First nonzero-product path of `edges` edges, if any (same enumeration,
/// early exit).
std::optional<PathProduct> find_nonzero_path(const AlgebraPtr& algebra,
                                             std::size_t edges,
                                             std::uint64_t guard = 10'000'000);

/// Coefficient product along a path of generator indices (ring one for
/// paths with no edges).
Value path_product(const AlgebraPtr& algebra, const std::vector<std::size_t>& path);

/// Layer filtration: layer 1 holds the generators with square zero, layer
/// s+1 the remaining ones whose squares lie in the span of earlier layers.
/// Complete iff every generator is captured; then concatenating the layers
/// (ties ascending) reorders the structure matrix strictly upper triangular.
struct Filtration {
  std::vector<std::vector<std::size_t>> layers;  // 0-based, each ascending
  std::vector<std::size_t> residue;              // generators never captured
  bool complete;
  /// position -> original generator index; present iff complete.
  std::optional<std::vector<std::size_t>> permutation;
};
Filtration compute_filtration(const AlgebraPtr& algebra);

/// The filtration's permutation, when it exists.
std::optional<std::vector<std::size_t>> strict_upper_permutation(
    const AlgebraPtr& algebra);

/// Consistency check: A and A / span{x_i : x_i^2 = 0} are nilpotent
/// together. Returns the shared answer; a mismatch would be an internal
/// error. Finite rings only.
bool quotient_reduction_check(const AlgebraPtr& algebra,
                              const AnalysisOptions& options = {});

/// Verdict on strong nilpotency (every long enough fully parenthesized
/// product vanishes), decided over fields through the span of left
/// multiplication operators.
struct StrongNilpotencyVerdict {
  struct StronglyNilpotent {
    /// Step at which the descending chain of operator-product spans dies:
    /// every product of chain_step generators of the span is zero.
    std::uint64_t chain_step;
    /// Certified product length: every fully parenthesized product of this
    /// many algebra elements vanishes (2^chain_step; any product of that
    /// length peels into at least chain_step operator factors).
    std::uint64_t product_length_bound;
  };
  struct NotStronglyNilpotent {
    std::uint64_t stable_dimension;  // chain dimension once it stops falling
    std::uint64_t stable_step;
    /// Operator word L_{w1}...L_{wm} with nonzero matrix, when the bounded
    /// search finds one; applying it to x_{applied_to} gives a nonzero
    /// right-nested product of m+1 generators.
    std::vector<std::size_t> witness_word;  // 0-based generator indices
    std::optional<std::size_t> witness_applied_to;
  };
  struct Unsupported {
    std::string reason;
  };
  std::variant<StronglyNilpotent, NotStronglyNilpotent, Unsupported> result;

  bool strongly_nilpotent() const {
    return std::holds_alternative<StronglyNilpotent>(result);
  }
};
StrongNilpotencyVerdict is_strongly_nilpotent(const AlgebraPtr& algebra);

/// True iff every fully parenthesized product of n factors drawn from
/// `sample` evaluates to zero (all Catalan(n-1) shapes, all tuples). The
/// guard bounds shapes * tuples. Defaults to the generator basis.
bool brute_force_parenthesized_products(const AlgebraPtr& algebra, std::size_t n,
                                        const std::vector<Element>& sample,
                                        std::uint64_t guard = 10'000'000);
bool brute_force_parenthesized_products(const AlgebraPtr& algebra, std::size_t n,
                                        std::uint64_t guard = 10'000'000);

}  // namespace evolia
