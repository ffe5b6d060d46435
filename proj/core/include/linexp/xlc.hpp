#ifndef LINEXP_XLC_HPP
#define LINEXP_XLC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "linexp/errors.hpp"

namespace linexp {

/// Binary class label. "+" wins the decision function strictly; ties and
/// negative scores go to "-".
enum class ClassLabel : std::uint8_t { Plus, Minus };

inline const char* to_symbol(ClassLabel c) noexcept {
  return c == ClassLabel::Plus ? "+" : "-";
}

/// Bounded real-valued feature and its weight in the decision function.
struct RealFeature {
  double lower = 0.0;
  double upper = 0.0;
  double weight = 0.0;
};

/// Categorical feature over values 1..d, one weight per value.
struct CategoricalFeature {
  std::vector<double> values;

  std::size_t domain_size() const noexcept { return values.size(); }
};

using Feature = std::variant<RealFeature, CategoricalFeature>;

/// Extended linear classifier: a bias plus a weighted sum over real-valued
/// features and per-value weight tables for categorical features. Immutable
/// after construction and safe to share across threads.
class XlcModel {
public:
  /// Validates all weights and bounds; throws ValidationError on non-finite
  /// numbers, inverted bounds, or an empty categorical domain.
  XlcModel(double bias, std::vector<Feature> features);

  double bias() const noexcept { return bias_; }
  std::size_t feature_count() const noexcept { return features_.size(); }
  const Feature& feature(std::size_t i) const { return features_.at(i); }
  const std::vector<Feature>& features() const noexcept { return features_; }

  /// Same model with the sign of the bias and every weight flipped, so that
  /// the returned model's score is exactly the negation of this model's.
  XlcModel negated() const;

private:
  double bias_;
  std::vector<Feature> features_;
};

/// One concrete feature assignment, one entry per model feature. Categorical
/// entries hold integers 1..d stored as doubles.
struct Instance {
  std::vector<double> values;
};

/// Throws ValidationError naming the offending feature if the instance does
/// not fit the model (wrong arity, out-of-bounds real, out-of-domain or
/// non-integer categorical value).
void validate_instance(const XlcModel& model, const Instance& instance);

/// Decision-function score: bias + sum of per-feature contributions,
/// accumulated left to right in ascending feature order.
double evaluate(const XlcModel& model, const Instance& instance);

/// Plus iff evaluate(...) > 0; ties go to Minus.
ClassLabel decide(const XlcModel& model, const Instance& instance);

/// Explanation power of fixing one feature: instance contribution minus the
/// feature's worst-case contribution. Zero-power features are dropped when
/// the problem is derived.
struct DeltaTerm {
  std::size_t feature = 0;  // 0-based model feature index
  double delta = 0.0;       // > 0 in a derived problem
};

/// Reduced form all explanation algorithms run on.
///
/// gamma is the score of the explained instance, phi = sum(delta) - gamma the
/// slack that a picked set's delta total must beat. order permutes `deltas`
/// into non-increasing delta, ties broken by ascending feature index. For a
/// "-" prediction the problem is derived from the negated model and `strict`
/// is false: a sound pick then needs sum >= phi instead of sum > phi,
/// preserving the score <= 0 boundary semantics.
struct ExplanationProblem {
  std::vector<DeltaTerm> deltas;   // ascending feature index, deltas > 0
  std::vector<std::size_t> order;  // indices into deltas
  double phi = 0.0;
  double gamma = 0.0;
  ClassLabel target_class = ClassLabel::Plus;
  bool strict = true;

  std::size_t term_count() const noexcept { return deltas.size(); }
  const DeltaTerm& sorted_term(std::size_t rank) const {
    return deltas[order[rank]];
  }
  /// sum > phi in strict mode, sum >= phi otherwise (C1).
  bool beats_phi(double sum) const noexcept {
    return strict ? sum > phi : sum >= phi;
  }
};

/// Derives the explanation problem for the model's own prediction on the
/// instance. Both classes are explainable; see ExplanationProblem.
ExplanationProblem derive_problem(const XlcModel& model,
                                  const Instance& instance);

/// No-change literal for one feature as rendered in explanations:
/// "(ek = v)" for categorical, "(ek >= v)" / "(ek <= v)" for real features
/// with positive / negative weight. Feature numbering in the text is
/// 1-based. A zero-weight real feature has no literal (it can never be part
/// of an explanation) and raises ValidationError.
std::string literal_of(const XlcModel& model, const Instance& instance,
                       std::size_t feature_index);

}  // namespace linexp

#endif
