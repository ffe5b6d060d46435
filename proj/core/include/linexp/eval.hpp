#ifndef LINEXP_EVAL_HPP
#define LINEXP_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "linexp/explain.hpp"

namespace linexp::eval {

/// How often each feature occurred across all enumerated explanations of one
/// instance. counts is dense over the model's feature range (0-based), so
/// features absent from every explanation sit at zero.
struct FeatureFrequency {
  std::vector<std::uint64_t> counts;
  std::uint64_t total_explanations = 0;

  std::size_t feature_count() const noexcept { return counts.size(); }
};

/// Streaming builder for FeatureFrequency, one add() per explanation.
/// finish() refuses an empty stream: every instance has at least one
/// explanation (possibly the empty one), so zero adds signals a broken
/// enumeration upstream.
class FrequencyAccumulator {
public:
  explicit FrequencyAccumulator(std::size_t feature_count)
      : freq_{std::vector<std::uint64_t>(feature_count, 0), 0} {}

  void add(std::span<const std::size_t> features);
  FeatureFrequency finish();

private:
  FeatureFrequency freq_;
};

/// Counts feature occurrences over a completed explanation list.
FeatureFrequency frequency(
    const std::vector<PiExplanation>& explanations, std::size_t feature_count);

/// The k highest-count features, widened by every feature tying with the
/// k-th count. Ascending feature indices; k >= 1 (values past the feature
/// count act like k = feature count).
std::vector<std::size_t> top_common(const FeatureFrequency& freq,
                                    std::size_t k);

/// Percentage of the heuristic's features that land in top_common(freq, k);
/// k defaults to the heuristic's size. Heuristic features outside the
/// frequency range simply miss. Throws ValidationError on an empty
/// heuristic.
double hit_score(std::span<const std::size_t> heuristic,
                 const FeatureFrequency& freq,
                 std::optional<std::size_t> k = std::nullopt);

}  // namespace linexp::eval

#endif
