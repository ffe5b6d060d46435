#include "linexp/explain.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

namespace linexp {

namespace {

bool crossed(const ExplanationProblem& p, double phi_residual) {
  return p.strict ? phi_residual < 0.0 : phi_residual <= 0.0;
}

// Pruning test: can picks from rank `pos` on still beat the residual?
bool viable(const ExplanationProblem& p, const EnumerationState& st,
            std::size_t pos) {
  return p.strict ? st.suffix_sums[pos] > st.phi_residual
                  : st.suffix_sums[pos] >= st.phi_residual;
}

}  // namespace

void render_literals(const XlcModel& model, const Instance& instance,
                     PiExplanation& expl) {
  expl.literals.clear();
  expl.literals.reserve(expl.features.size());
  for (std::size_t f : expl.features) {
    expl.literals.push_back(literal_of(model, instance, f));
  }
}

PiExplanation find_one(const ExplanationProblem& problem) {
  PiExplanation out;
  double phi_residual = problem.phi;
  if (crossed(problem, phi_residual)) {
    return out;  // the prediction cannot flip: empty explanation
  }
  for (std::size_t rank = 0; rank < problem.term_count(); ++rank) {
    const DeltaTerm& term = problem.sorted_term(rank);
    out.features.push_back(term.feature);
    phi_residual -= term.delta;
    if (crossed(problem, phi_residual)) {
      std::sort(out.features.begin(), out.features.end());
      return out;
    }
  }
  throw std::logic_error(
      "infeasible explanation problem: total delta does not beat phi");
}

EnumerationState make_state(const ExplanationProblem& problem) {
  const std::size_t m = problem.term_count();
  EnumerationState st;
  st.flip.assign(m, -1);
  st.idx = 0;
  st.phi_residual = problem.phi;
  st.phi_saved.assign(m, 0.0);
  st.suffix_sums.assign(m + 1, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    st.suffix_sums[r] = problem.sorted_term(r).delta + st.suffix_sums[r + 1];
  }
  return st;
}

void NodeAudit::on_abandon(std::size_t pos) const {
  if (yields_ <= created_at_[pos]) {
    throw std::logic_error(
        "enumeration dead end: a node passed the pruning test but yielded "
        "no explanation");
  }
}

void extend_to_leaf(EnumerationState& state, const ExplanationProblem& problem,
                    NodeAudit* audit) {
  while (!crossed(problem, state.phi_residual)) {
    const std::size_t r = state.idx;
    assert(r < problem.term_count());
    if (audit) audit->on_create(r);
    state.phi_saved[r] = state.phi_residual;
    state.flip[r] = 0;
    state.phi_residual -= problem.sorted_term(r).delta;
    state.idx = r + 1;
  }
}

BacktrackResult backtrack_to_valid(EnumerationState& state,
                                   const ExplanationProblem& problem,
                                   NodeAudit* audit) {
  std::size_t depth = state.idx;
  while (depth > 0) {
    const std::size_t pos = depth - 1;
    if (state.flip[pos] == 1) {
      // Skip branch already explored: pop it.
      if (audit) audit->on_abandon(pos);
      state.flip[pos] = -1;
      --depth;
      continue;
    }
    // Turn the deepest pick into a skip and restore the residual it saw.
    if (audit) audit->on_abandon(pos);
    state.flip[pos] = 1;
    state.phi_residual = state.phi_saved[pos];
    if (viable(problem, state, pos + 1)) {
      if (audit) audit->on_create(pos);
      state.idx = pos + 1;
      return BacktrackResult::Continue;
    }
    // No descendant of the skip node can beat phi: it is never created.
    state.flip[pos] = -1;
    --depth;
  }
  state.idx = 0;
  return BacktrackResult::Exhausted;
}

Enumerator::Enumerator(const ExplanationProblem& problem, bool debug_checks)
    : problem_(&problem), state_(make_state(problem)) {
  if (debug_checks) {
    audit_ = std::make_unique<NodeAudit>(problem.term_count());
  }
}

void Enumerator::collect_features() {
  features_.clear();
  for (std::size_t pos = 0; pos < state_.idx; ++pos) {
    if (state_.flip[pos] == 0) {
      features_.push_back(problem_->sorted_term(pos).feature);
    }
  }
  std::sort(features_.begin(), features_.end());
}

bool Enumerator::advance() {
  if (exhausted_) return false;
  if (!started_) {
    started_ = true;
    if (!crossed(*problem_, state_.phi_residual) &&
        !viable(*problem_, state_, 0)) {
      // Degenerate hand-built problem: even picking everything cannot beat
      // phi. derive_problem never produces this.
      exhausted_ = true;
      return false;
    }
    extend_to_leaf(state_, *problem_, audit_.get());
  } else {
    if (backtrack_to_valid(state_, *problem_, audit_.get()) ==
        BacktrackResult::Exhausted) {
      exhausted_ = true;
      return false;
    }
    extend_to_leaf(state_, *problem_, audit_.get());
  }
  ++yields_;
  if (audit_) audit_->on_yield();
  collect_features();
  return true;
}

PiExplanation Enumerator::current() const {
  PiExplanation out;
  out.features.assign(features_.begin(), features_.end());
  return out;
}

std::size_t Enumerator::state_bytes() const noexcept {
  return state_.flip.capacity() * sizeof(std::int8_t) +
         state_.suffix_sums.capacity() * sizeof(double) +
         state_.phi_saved.capacity() * sizeof(double) +
         features_.capacity() * sizeof(std::size_t) + sizeof(*this) +
         (audit_ ? problem_->term_count() * sizeof(std::uint64_t) : 0);
}

std::vector<PiExplanation> enumerate_all(const ExplanationProblem& problem,
                                         std::uint64_t limit) {
  std::vector<PiExplanation> out;
  Enumerator it(problem);
  while (it.yield_count() < limit && it.advance()) {
    out.push_back(it.current());
  }
  return out;
}

std::vector<std::int64_t> delay_probe(const ExplanationProblem& problem,
                                      std::uint64_t limit) {
  using clock = std::chrono::steady_clock;
  std::vector<std::int64_t> stamps;
  if (limit != kNoLimit) {
    stamps.reserve(static_cast<std::size_t>(limit));
  }
  Enumerator it(problem);
  const clock::time_point start = clock::now();
  while (it.yield_count() < limit && it.advance()) {
    stamps.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(
                         clock::now() - start)
                         .count());
  }
  return stamps;
}

}  // namespace linexp
