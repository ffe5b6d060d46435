#include "linexp/eval.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "linexp/errors.hpp"

namespace linexp::eval {

void FrequencyAccumulator::add(std::span<const std::size_t> features) {
  for (std::size_t j : features) {
    if (j >= freq_.counts.size()) {
      throw ValidationError("explanation names feature e" +
                            std::to_string(j + 1) +
                            " outside the declared feature range");
    }
    ++freq_.counts[j];
  }
  ++freq_.total_explanations;
}

FeatureFrequency FrequencyAccumulator::finish() {
  if (freq_.total_explanations == 0) {
    throw ValidationError(
        "no explanations to aggregate; an enumeration always yields at least "
        "one");
  }
  return std::move(freq_);
}

FeatureFrequency frequency(const std::vector<PiExplanation>& explanations,
                           std::size_t feature_count) {
  FrequencyAccumulator acc(feature_count);
  for (const PiExplanation& e : explanations) acc.add(e.features);
  return acc.finish();
}

std::vector<std::size_t> top_common(const FeatureFrequency& freq,
                                    std::size_t k) {
  if (k == 0) {
    throw ValidationError("top_common needs k >= 1");
  }
  const std::size_t n = freq.counts.size();
  if (n == 0) return {};

  std::vector<std::uint64_t> sorted = freq.counts;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::uint64_t threshold = sorted[std::min(k, n) - 1];

  std::vector<std::size_t> common;
  for (std::size_t j = 0; j < n; ++j) {
    if (freq.counts[j] >= threshold) common.push_back(j);
  }
  return common;
}

double hit_score(std::span<const std::size_t> heuristic,
                 const FeatureFrequency& freq, std::optional<std::size_t> k) {
  if (heuristic.empty()) {
    throw ValidationError("heuristic explanation is empty");
  }
  const auto common = top_common(freq, k.value_or(heuristic.size()));
  std::size_t hits = 0;
  for (std::size_t j : heuristic) {
    if (std::binary_search(common.begin(), common.end(), j)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) /
         static_cast<double>(heuristic.size());
}

}  // namespace linexp::eval
