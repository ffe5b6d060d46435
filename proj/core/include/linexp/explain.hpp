#ifndef LINEXP_EXPLAIN_HPP
#define LINEXP_EXPLAIN_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "linexp/xlc.hpp"

namespace linexp {

inline constexpr std::uint64_t kNoLimit =
    std::numeric_limits<std::uint64_t>::max();

/// A subset-minimal set of feature literals that entails the prediction.
/// Soundness: the picked deltas beat phi. Minimality: dropping any one
/// feature no longer beats phi.
struct PiExplanation {
  std::vector<std::size_t> features;  // 0-based model feature indices, ascending
  std::vector<std::string> literals;  // empty until rendered

  std::size_t cardinality() const noexcept { return features.size(); }
};

/// Fills expl.literals from the model/instance pair the problem was derived
/// from.
void render_literals(const XlcModel& model, const Instance& instance,
                     PiExplanation& expl);

/// Greedy smallest explanation: walk the deltas in sorted order and pick
/// until the running total beats phi. The result is both cardinality-minimum
/// and subset-minimal; it equals the first explanation the enumerator
/// yields. A negative (strict) or non-positive (non-strict) phi yields the
/// empty explanation. Throws std::logic_error if the problem is infeasible,
/// which derive_problem can never produce.
PiExplanation find_one(const ExplanationProblem& problem);

/// Depth-first search state over sorted delta positions.
///
/// flip[r] is -1 while position r is unassigned, 0 while its delta is
/// picked, and 1 once the pick has been backtracked into a skip.
/// phi_residual is phi minus the sum of picked deltas; phi_saved[r] snapshots
/// phi_residual from just before position r was picked so backtracking
/// restores it exactly. suffix_sums[r] (the sum of sorted deltas from rank r
/// on) makes the can-a-descendant-still-beat-phi pruning test O(1).
struct EnumerationState {
  std::vector<std::int8_t> flip;
  std::size_t idx = 0;  // number of assigned positions
  double phi_residual = 0.0;
  std::vector<double> suffix_sums;  // size term_count()+1
  std::vector<double> phi_saved;
};

EnumerationState make_state(const ExplanationProblem& problem);

enum class BacktrackResult { Continue, Exhausted };

/// Optional instrumentation for the no-dead-end guarantee: every search node
/// that passes the pruning test must produce at least one explanation before
/// it is abandoned. on_abandon throws std::logic_error when that is violated.
class NodeAudit {
public:
  explicit NodeAudit(std::size_t positions)
      : created_at_(positions, 0), yields_(0) {}

  void on_create(std::size_t pos) { created_at_[pos] = yields_; }
  void on_yield() noexcept { ++yields_; }
  void on_abandon(std::size_t pos) const;

private:
  std::vector<std::uint64_t> created_at_;
  std::uint64_t yields_;
};

/// Rewinds the deepest pick into a skip (popping exhausted skips on the
/// way) until the pruning test admits another explanation below the current
/// prefix, or reports Exhausted. Work is linear in the current depth.
BacktrackResult backtrack_to_valid(EnumerationState& state,
                                   const ExplanationProblem& problem,
                                   NodeAudit* audit = nullptr);

/// Greedily picks from state.idx on until the picked total beats phi.
/// Precondition: the current prefix passes the pruning test, which
/// guarantees a leaf is reached.
void extend_to_leaf(EnumerationState& state, const ExplanationProblem& problem,
                    NodeAudit* audit = nullptr);

/// Single-consumer explanation stream with O(feature count) working state.
///
/// Yields every subset-minimal explanation exactly once, first the greedy
/// smallest one, in depth-first pick-before-skip order. The problem must
/// outlive the enumerator; distinct enumerators over the same problem may
/// run concurrently.
class Enumerator {
public:
  explicit Enumerator(const ExplanationProblem& problem,
                      bool debug_checks = false);

  /// Moves to the next explanation; false once the stream is exhausted.
  bool advance();

  /// Feature indices (0-based, ascending) of the current explanation.
  /// Valid until the next advance().
  std::span<const std::size_t> current_features() const noexcept {
    return features_;
  }
  PiExplanation current() const;

  std::uint64_t yield_count() const noexcept { return yields_; }
  bool exhausted() const noexcept { return exhausted_; }
  const EnumerationState& state() const noexcept { return state_; }

  /// Bytes held by the search state and feature buffer; stays linear in the
  /// number of features no matter how many explanations are yielded.
  std::size_t state_bytes() const noexcept;

private:
  const ExplanationProblem* problem_;
  EnumerationState state_;
  std::vector<std::size_t> features_;
  std::unique_ptr<NodeAudit> audit_;
  std::uint64_t yields_ = 0;
  bool started_ = false;
  bool exhausted_ = false;

  void collect_features();
};

/// Collects up to `limit` explanations. Intended for small problems and
/// tests; the CLI streams through Enumerator instead.
std::vector<PiExplanation> enumerate_all(const ExplanationProblem& problem,
                                         std::uint64_t limit = kNoLimit);

/// Runs the enumerator capturing a monotone timestamp at every yield.
/// Returns nanosecond offsets from the start of the probe, one per
/// explanation, up to `limit`.
std::vector<std::int64_t> delay_probe(const ExplanationProblem& problem,
                                      std::uint64_t limit);

}  // namespace linexp

#endif
