#include "linexp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "linexp/errors.hpp"

namespace linexp::oracle {

namespace {

constexpr std::size_t kMaxEntailsFeatures = 14;
constexpr std::uint64_t kMaxCompletions = 1'000'000;
constexpr std::size_t kMaxSweepFeatures = 12;

// Per-feature list of contribution candidates a completion may take. Fixed
// features contribute exactly their instance value's term; free features get
// their whole (corner) range, worst value first so a refutation shows up at
// the first leaf.
std::vector<std::vector<double>> candidate_terms(const XlcModel& model,
                                                 const Instance& instance,
                                                 std::uint32_t fixed_mask,
                                                 ClassLabel target) {
  const std::size_t n = model.feature_count();
  std::vector<std::vector<double>> terms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Feature& f = model.feature(j);
    const bool fixed = (fixed_mask >> j) & 1u;
    if (const auto* real = std::get_if<RealFeature>(&f)) {
      if (fixed) {
        terms[j] = {real->weight * instance.values[j]};
      } else if (real->lower == real->upper) {
        terms[j] = {real->weight * real->lower};
      } else {
        terms[j] = {real->weight * real->lower, real->weight * real->upper};
      }
    } else {
      const auto& cat = std::get<CategoricalFeature>(f);
      if (fixed) {
        terms[j] = {cat.values[static_cast<std::size_t>(instance.values[j]) - 1]};
      } else {
        terms[j] = cat.values;
      }
    }
    if (target == ClassLabel::Plus) {
      std::sort(terms[j].begin(), terms[j].end());
    } else {
      std::sort(terms[j].begin(), terms[j].end(), std::greater<>());
    }
  }
  return terms;
}

// Walks every completion, accumulating the score left to right. Bails out on
// the first completion that loses the target class; an entailing subset pays
// for the full walk.
bool every_completion_keeps(const std::vector<std::vector<double>>& terms,
                            std::size_t j, double sum, ClassLabel target) {
  if (j == terms.size()) {
    return (sum > 0.0 ? ClassLabel::Plus : ClassLabel::Minus) == target;
  }
  for (double term : terms[j]) {
    if (!every_completion_keeps(terms, j + 1, sum + term, target)) {
      return false;
    }
  }
  return true;
}

bool entails_mask(const XlcModel& model, const Instance& instance,
                  std::uint32_t fixed_mask, ClassLabel target) {
  const auto terms = candidate_terms(model, instance, fixed_mask, target);
  return every_completion_keeps(terms, 0, model.bias(), target);
}

}  // namespace

bool entails(const XlcModel& model, const Instance& instance,
             std::span<const std::size_t> subset) {
  validate_instance(model, instance);
  const std::size_t n = model.feature_count();
  if (n > kMaxEntailsFeatures) {
    throw GuardError("entails supports at most " +
                     std::to_string(kMaxEntailsFeatures) + " features, got " +
                     std::to_string(n));
  }
  std::uint32_t mask = 0;
  for (std::size_t j : subset) {
    if (j >= n) {
      throw ValidationError("subset names feature e" + std::to_string(j + 1) +
                            " but the model has only " + std::to_string(n));
    }
    mask |= std::uint32_t{1} << j;
  }

  std::uint64_t completions = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if ((mask >> j) & 1u) continue;
    std::size_t width = 2;
    if (const auto* cat = std::get_if<CategoricalFeature>(&model.feature(j))) {
      width = cat->domain_size();
    }
    completions *= width;
    if (completions > kMaxCompletions) {
      throw GuardError("entails would enumerate more than " +
                       std::to_string(kMaxCompletions) + " completions");
    }
  }

  return entails_mask(model, instance, mask, decide(model, instance));
}

OracleResult all_minimal_explanations(const XlcModel& model,
                                      const Instance& instance) {
  validate_instance(model, instance);
  const std::size_t n = model.feature_count();
  if (n > kMaxSweepFeatures) {
    throw GuardError("all_minimal_explanations supports at most " +
                     std::to_string(kMaxSweepFeatures) + " features, got " +
                     std::to_string(n));
  }
  const ClassLabel target = decide(model, instance);
  const std::uint32_t limit = std::uint32_t{1} << n;

  // entailed[] grows in ascending mask order, so every one-bit-removed
  // submask is settled first. Entailment is monotone in the fixed set, which
  // lets a superset of an entailing set skip the completion walk.
  std::vector<char> entailed(limit, 0);
  std::vector<char> inherited(limit, 0);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
      if (entailed[mask & ~(bits & -bits)]) {
        inherited[mask] = 1;
        break;
      }
    }
    entailed[mask] =
        inherited[mask] || entails_mask(model, instance, mask, target);
  }

  // Minimal means entailed with no one-bit-removed submask entailed; by
  // monotonicity that also rules out every smaller entailing subset.
  OracleResult result;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (!entailed[mask] || inherited[mask]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j) & 1u) members.push_back(j);
    }
    result.all_minimal.push_back(std::move(members));
  }

  std::sort(result.all_minimal.begin(), result.all_minimal.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  result.min_cardinality =
      result.all_minimal.empty() ? 0 : result.all_minimal.front().size();
  return result;
}

ClassLabel nbc_predict_direct(const NbcModel& model,
                              const Instance& instance) {
  if (instance.values.size() != model.feature_count()) {
    throw ValidationError("instance has " +
                          std::to_string(instance.values.size()) +
                          " values but the model has " +
                          std::to_string(model.feature_count()) + " features");
  }
  double product_plus = model.prior(ClassLabel::Plus);
  double product_minus = model.prior(ClassLabel::Minus);
  for (std::size_t i = 0; i < model.feature_count(); ++i) {
    const double raw = instance.values[i];
    if (raw != std::floor(raw) || raw < 1.0 ||
        raw > static_cast<double>(model.feature(i).domain_size())) {
      throw ValidationError("instance value for feature e" +
                                std::to_string(i + 1) + " out of domain",
                            i);
    }
    const auto value = static_cast<std::size_t>(raw);
    product_plus *= model.conditional(i, ClassLabel::Plus, value);
    product_minus *= model.conditional(i, ClassLabel::Minus, value);
  }
  return product_plus > product_minus ? ClassLabel::Plus : ClassLabel::Minus;
}

}  // namespace linexp::oracle
