#ifndef LINEXP_NBC_HPP
#define LINEXP_NBC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "linexp/xlc.hpp"

namespace linexp {

/// Conditional probability table of one categorical feature: one probability
/// per value 1..d, per class.
struct NbcFeature {
  std::vector<double> cond_plus;
  std::vector<double> cond_minus;

  std::size_t domain_size() const noexcept { return cond_plus.size(); }
};

/// Binary-class Naive Bayes classifier over categorical features, scored in
/// shifted log space.
///
/// big_m is the floor substituted for the log of a zero probability;
/// threshold is the shift that makes every floored log nonnegative. Both are
/// prediction-irrelevant by construction (the floor sits below every used
/// log probability, and the shift cancels between the two classes).
/// Immutable after construction.
class NbcModel {
public:
  NbcModel(double prior_plus, double prior_minus,
           std::vector<NbcFeature> features, double big_m, double threshold);

  double prior(ClassLabel c) const noexcept {
    return c == ClassLabel::Plus ? prior_plus_ : prior_minus_;
  }
  std::size_t feature_count() const noexcept { return features_.size(); }
  const NbcFeature& feature(std::size_t i) const { return features_.at(i); }
  const std::vector<NbcFeature>& features() const noexcept { return features_; }
  double big_m() const noexcept { return big_m_; }
  double threshold() const noexcept { return threshold_; }

  /// Conditional probability of `value` (1-based) for feature i given class c.
  double conditional(std::size_t i, ClassLabel c, std::size_t value) const;

  /// Shifted, floored log probability: threshold + max(big_m, ln p);
  /// p == 0 maps to threshold + big_m. Natural logarithm throughout.
  double lprob(double probability) const;

  double lprob_prior(ClassLabel c) const { return lprob(prior(c)); }
  double lprob_conditional(std::size_t i, ClassLabel c,
                           std::size_t value) const {
    return lprob(conditional(i, c, value));
  }

private:
  double prior_plus_;
  double prior_minus_;
  std::vector<NbcFeature> features_;
  double big_m_;
  double threshold_;
};

/// The raw score formula behind NbcModel::lprob, usable without a model:
/// threshold + max(big_m, ln p); p == 0 maps to threshold + big_m.
double lprob(double probability, double big_m, double threshold);

/// Log-space class prediction: argmax of lprob(prior) + sum of
/// lprob(conditional); an exact tie goes to Minus, mirroring the linear
/// decision rule.
ClassLabel predict(const NbcModel& model, const Instance& instance);

/// Reduction to an extended linear classifier with no real features: the
/// bias is the prior lprob difference and each categorical value's weight is
/// the per-value conditional lprob difference. The threshold cancels in
/// every difference and is left out of the arithmetic, so the reduced
/// weights are identical for any valid threshold. Satisfies
/// decide(reduce_to_xlc(m), x) == predict(m, x) for every instance.
XlcModel reduce_to_xlc(const NbcModel& model);

/// Labeled categorical dataset. Values are 1-based integers; a declared
/// domain of 0 means "infer from the data" (the largest value seen).
struct LabeledDataset {
  std::vector<std::string> feature_names;
  std::vector<std::size_t> declared_domains;
  std::vector<std::vector<std::size_t>> rows;
  std::vector<ClassLabel> labels;

  std::size_t feature_count() const noexcept { return feature_names.size(); }
};

/// Maximum-likelihood training with additive smoothing on the conditionals:
/// Prob(v|c) = (count + a) / (class count + a * domain). Priors are plain
/// relative frequencies. With a = 0 an unseen value gets probability zero,
/// which lprob's floor then handles. Defaults: big_m is the sum of the logs
/// of all nonzero estimated probabilities minus 1, threshold is 1 plus the
/// largest floored negative log in the model. Requires at least one row per
/// class.
NbcModel train(const LabeledDataset& dataset, double smoothing = 1.0);

}  // namespace linexp

#endif
