#include "linexp/nbc.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace linexp {

namespace {

constexpr double kSumTolerance = 1e-9;

void fail(const std::string& msg, std::optional<std::size_t> feature) {
  if (feature) throw ValidationError(msg, *feature);
  throw ValidationError(msg);
}

void check_probability_vector(const std::vector<double>& probs,
                              const std::string& what,
                              std::optional<std::size_t> feature) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      fail(what + " has a probability outside [0, 1]", feature);
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    fail(what + " does not sum to 1", feature);
  }
}

double floored_log(double big_m, double p) {
  return p > 0.0 ? std::max(big_m, std::log(p)) : big_m;
}

}  // namespace

NbcModel::NbcModel(double prior_plus, double prior_minus,
                   std::vector<NbcFeature> features, double big_m,
                   double threshold)
    : prior_plus_(prior_plus),
      prior_minus_(prior_minus),
      features_(std::move(features)),
      big_m_(big_m),
      threshold_(threshold) {
  if (!std::isfinite(big_m_) || !std::isfinite(threshold_)) {
    throw ValidationError("big_m and threshold must be finite");
  }
  check_probability_vector({prior_plus_, prior_minus_}, "class priors",
                           std::nullopt);

  // big_m must sit strictly below the log of every nonzero probability, and
  // the threshold must lift every floored log to a nonnegative value.
  const auto check_used = [&](double p, const std::string& what,
                              std::optional<std::size_t> feature) {
    if (p > 0.0 && big_m_ >= std::log(p)) {
      fail("big_m is not below log(" + what + ")", feature);
    }
    if (threshold_ + floored_log(big_m_, p) < 0.0) {
      fail("threshold too small for " + what, feature);
    }
  };
  check_used(prior_plus_, "prior(+)", std::nullopt);
  check_used(prior_minus_, "prior(-)", std::nullopt);
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const NbcFeature& f = features_[i];
    if (f.cond_plus.empty() || f.cond_plus.size() != f.cond_minus.size()) {
      throw ValidationError(
          "feature e" + std::to_string(i + 1) +
              " conditional tables are empty or of mismatched size",
          i);
    }
    const std::string name = "conditionals of e" + std::to_string(i + 1);
    check_probability_vector(f.cond_plus, name, i);
    check_probability_vector(f.cond_minus, name, i);
    for (double p : f.cond_plus) check_used(p, name, i);
    for (double p : f.cond_minus) check_used(p, name, i);
  }
}

double NbcModel::conditional(std::size_t i, ClassLabel c,
                             std::size_t value) const {
  const NbcFeature& f = features_.at(i);
  if (value < 1 || value > f.domain_size()) {
    throw ValidationError("value " + std::to_string(value) +
                              " out of domain for feature e" +
                              std::to_string(i + 1),
                          i);
  }
  const auto& probs = c == ClassLabel::Plus ? f.cond_plus : f.cond_minus;
  return probs[value - 1];
}

double NbcModel::lprob(double probability) const {
  return linexp::lprob(probability, big_m_, threshold_);
}

double lprob(double probability, double big_m, double threshold) {
  return threshold + floored_log(big_m, probability);
}

ClassLabel predict(const NbcModel& model, const Instance& instance) {
  if (instance.values.size() != model.feature_count()) {
    throw ValidationError("instance has " +
                          std::to_string(instance.values.size()) +
                          " values but the model has " +
                          std::to_string(model.feature_count()) + " features");
  }
  double score_plus = model.lprob_prior(ClassLabel::Plus);
  double score_minus = model.lprob_prior(ClassLabel::Minus);
  for (std::size_t i = 0; i < model.feature_count(); ++i) {
    const double raw = instance.values[i];
    if (raw != std::floor(raw) || raw < 1.0 ||
        raw > static_cast<double>(model.feature(i).domain_size())) {
      throw ValidationError("instance value for feature e" +
                                std::to_string(i + 1) + " out of domain",
                            i);
    }
    const auto value = static_cast<std::size_t>(raw);
    score_plus += model.lprob_conditional(i, ClassLabel::Plus, value);
    score_minus += model.lprob_conditional(i, ClassLabel::Minus, value);
  }
  return score_plus > score_minus ? ClassLabel::Plus : ClassLabel::Minus;
}

XlcModel reduce_to_xlc(const NbcModel& model) {
  // The shared threshold cancels in every lprob difference, so only the
  // floored logs enter. This keeps the reduced weights bit-identical across
  // valid threshold choices.
  const double m = model.big_m();
  const double bias = floored_log(m, model.prior(ClassLabel::Plus)) -
                      floored_log(m, model.prior(ClassLabel::Minus));
  std::vector<Feature> features;
  features.reserve(model.feature_count());
  for (const NbcFeature& f : model.features()) {
    CategoricalFeature cat;
    cat.values.reserve(f.domain_size());
    for (std::size_t r = 0; r < f.domain_size(); ++r) {
      cat.values.push_back(floored_log(m, f.cond_plus[r]) -
                           floored_log(m, f.cond_minus[r]));
    }
    features.push_back(std::move(cat));
  }
  return XlcModel(bias, std::move(features));
}

NbcModel train(const LabeledDataset& dataset, double smoothing) {
  if (dataset.rows.empty()) {
    throw ValidationError("cannot train on an empty dataset");
  }
  if (dataset.rows.size() != dataset.labels.size()) {
    throw ValidationError("dataset rows and labels differ in length");
  }
  if (!std::isfinite(smoothing) || smoothing < 0.0) {
    throw ValidationError("smoothing must be a nonnegative number");
  }
  const std::size_t n = dataset.feature_count();

  // Domains: declared, widened to cover the data.
  std::vector<std::size_t> domains(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    domains[j] =
        j < dataset.declared_domains.size() ? dataset.declared_domains[j] : 0;
  }
  for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
    const auto& row = dataset.rows[r];
    if (row.size() != n) {
      throw ValidationError("row " + std::to_string(r) + " has " +
                            std::to_string(row.size()) + " values, expected " +
                            std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < 1) {
        throw ValidationError("row " + std::to_string(r) + " feature e" +
                                  std::to_string(j + 1) +
                                  " must be a 1-based value",
                              j);
      }
      const std::size_t declared =
          j < dataset.declared_domains.size() ? dataset.declared_domains[j] : 0;
      if (declared != 0 && row[j] > declared) {
        throw ValidationError(
            "row " + std::to_string(r) + " feature e" + std::to_string(j + 1) +
                " value " + std::to_string(row[j]) +
                " exceeds its declared domain " + std::to_string(declared),
            j);
      }
      domains[j] = std::max(domains[j], row[j]);
    }
  }

  const std::size_t total = dataset.rows.size();
  std::size_t count_plus = 0;
  for (ClassLabel c : dataset.labels) {
    if (c == ClassLabel::Plus) ++count_plus;
  }
  const std::size_t count_minus = total - count_plus;
  if (count_plus == 0 || count_minus == 0) {
    throw ValidationError(std::string("class ") +
                          (count_plus == 0 ? "+" : "-") +
                          " is absent from the dataset");
  }

  std::vector<NbcFeature> features(n);
  for (std::size_t j = 0; j < n; ++j) {
    features[j].cond_plus.assign(domains[j], 0.0);
    features[j].cond_minus.assign(domains[j], 0.0);
  }
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& table = dataset.labels[r] == ClassLabel::Plus
                        ? features[j].cond_plus
                        : features[j].cond_minus;
      table[dataset.rows[r][j] - 1] += 1.0;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double d = static_cast<double>(domains[j]);
    for (std::size_t v = 0; v < domains[j]; ++v) {
      features[j].cond_plus[v] =
          (features[j].cond_plus[v] + smoothing) /
          (static_cast<double>(count_plus) + smoothing * d);
      features[j].cond_minus[v] =
          (features[j].cond_minus[v] + smoothing) /
          (static_cast<double>(count_minus) + smoothing * d);
    }
  }

  const double prior_plus =
      static_cast<double>(count_plus) / static_cast<double>(total);
  const double prior_minus =
      static_cast<double>(count_minus) / static_cast<double>(total);

  // big_m: sum of the logs of all nonzero estimated probabilities, minus 1.
  // That is below every individual log since each term is nonpositive.
  double log_sum = 0.0;
  double worst_log = 0.0;  // most negative log among nonzero probabilities
  const auto absorb = [&](double p) {
    if (p > 0.0) {
      const double lg = std::log(p);
      log_sum += lg;
      worst_log = std::min(worst_log, lg);
    }
  };
  absorb(prior_plus);
  absorb(prior_minus);
  bool has_zero = false;
  for (const NbcFeature& f : features) {
    for (double p : f.cond_plus) {
      absorb(p);
      has_zero = has_zero || p == 0.0;
    }
    for (double p : f.cond_minus) {
      absorb(p);
      has_zero = has_zero || p == 0.0;
    }
  }
  const double big_m = log_sum - 1.0;
  const double threshold = 1.0 + (has_zero ? -big_m : -worst_log);

  return NbcModel(prior_plus, prior_minus, std::move(features), big_m,
                  threshold);
}

}  // namespace linexp
