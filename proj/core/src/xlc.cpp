#include "linexp/xlc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

namespace linexp {

namespace {

std::string feature_name(std::size_t index) {
  return "e" + std::to_string(index + 1);
}

std::string number_to_string(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

XlcModel::XlcModel(double bias, std::vector<Feature> features)
    : bias_(bias), features_(std::move(features)) {
  if (!std::isfinite(bias_)) {
    throw ValidationError("model bias is not finite");
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (const auto* rf = std::get_if<RealFeature>(&features_[i])) {
      if (!std::isfinite(rf->lower) || !std::isfinite(rf->upper) ||
          !std::isfinite(rf->weight)) {
        throw ValidationError(
            "real feature " + feature_name(i) + " has a non-finite number", i);
      }
      if (rf->lower > rf->upper) {
        throw ValidationError("real feature " + feature_name(i) +
                                  " has lower bound above upper bound",
                              i);
      }
    } else {
      const auto& cf = std::get<CategoricalFeature>(features_[i]);
      if (cf.values.empty()) {
        throw ValidationError("categorical feature " + feature_name(i) +
                                  " has an empty value table",
                              i);
      }
      for (double v : cf.values) {
        if (!std::isfinite(v)) {
          throw ValidationError("categorical feature " + feature_name(i) +
                                    " has a non-finite value weight",
                                i);
        }
      }
    }
  }
}

XlcModel XlcModel::negated() const {
  std::vector<Feature> flipped;
  flipped.reserve(features_.size());
  for (const auto& f : features_) {
    if (const auto* rf = std::get_if<RealFeature>(&f)) {
      flipped.push_back(RealFeature{rf->lower, rf->upper, -rf->weight});
    } else {
      const auto& cf = std::get<CategoricalFeature>(f);
      CategoricalFeature neg;
      neg.values.reserve(cf.values.size());
      for (double v : cf.values) neg.values.push_back(-v);
      flipped.push_back(std::move(neg));
    }
  }
  return XlcModel(-bias_, std::move(flipped));
}

void validate_instance(const XlcModel& model, const Instance& instance) {
  if (instance.values.size() != model.feature_count()) {
    throw ValidationError("instance has " +
                          std::to_string(instance.values.size()) +
                          " values but the model has " +
                          std::to_string(model.feature_count()) + " features");
  }
  for (std::size_t i = 0; i < instance.values.size(); ++i) {
    const double v = instance.values[i];
    if (!std::isfinite(v)) {
      throw ValidationError(
          "instance value for " + feature_name(i) + " is not finite", i);
    }
    if (const auto* rf = std::get_if<RealFeature>(&model.feature(i))) {
      if (v < rf->lower || v > rf->upper) {
        throw ValidationError("instance value " + number_to_string(v) +
                                  " for " + feature_name(i) +
                                  " is outside bounds [" +
                                  number_to_string(rf->lower) + ", " +
                                  number_to_string(rf->upper) + "]",
                              i);
      }
    } else {
      const auto& cf = std::get<CategoricalFeature>(model.feature(i));
      if (v != std::floor(v) || v < 1.0 ||
          v > static_cast<double>(cf.domain_size())) {
        throw ValidationError("instance value " + number_to_string(v) +
                                  " for " + feature_name(i) +
                                  " is not an integer in 1.." +
                                  std::to_string(cf.domain_size()),
                              i);
      }
    }
  }
}

double evaluate(const XlcModel& model, const Instance& instance) {
  validate_instance(model, instance);
  double acc = model.bias();
  for (std::size_t i = 0; i < model.feature_count(); ++i) {
    if (const auto* rf = std::get_if<RealFeature>(&model.feature(i))) {
      acc += rf->weight * instance.values[i];
    } else {
      const auto& cf = std::get<CategoricalFeature>(model.feature(i));
      acc += cf.values[static_cast<std::size_t>(instance.values[i]) - 1];
    }
  }
  return acc;
}

ClassLabel decide(const XlcModel& model, const Instance& instance) {
  return evaluate(model, instance) > 0.0 ? ClassLabel::Plus
                                         : ClassLabel::Minus;
}

ExplanationProblem derive_problem(const XlcModel& model,
                                  const Instance& instance) {
  validate_instance(model, instance);
  const ClassLabel target = decide(model, instance);

  // A "-" prediction is explained on the negated model with a non-strict
  // comparison, so the score <= 0 boundary stays where the decision rule
  // put it.
  std::optional<XlcModel> negated;
  if (target == ClassLabel::Minus) negated = model.negated();
  const XlcModel& m = negated ? *negated : model;

  ExplanationProblem problem;
  problem.target_class = target;
  problem.strict = target == ClassLabel::Plus;
  problem.gamma = evaluate(m, instance);

  double delta_sum = 0.0;
  for (std::size_t i = 0; i < m.feature_count(); ++i) {
    double delta = 0.0;
    if (const auto* rf = std::get_if<RealFeature>(&m.feature(i))) {
      if (rf->weight > 0.0) {
        delta = (instance.values[i] - rf->lower) * rf->weight;
      } else if (rf->weight < 0.0) {
        delta = (instance.values[i] - rf->upper) * rf->weight;
      }
    } else {
      const auto& cf = std::get<CategoricalFeature>(m.feature(i));
      const double worst = *std::min_element(cf.values.begin(), cf.values.end());
      delta = cf.values[static_cast<std::size_t>(instance.values[i]) - 1] - worst;
    }
    delta_sum += delta;
    if (delta > 0.0) {
      problem.deltas.push_back(DeltaTerm{i, delta});
    }
  }
  problem.phi = delta_sum - problem.gamma;

  problem.order.resize(problem.deltas.size());
  std::iota(problem.order.begin(), problem.order.end(), std::size_t{0});
  // deltas are in ascending feature order, so a stable sort breaks delta
  // ties by ascending feature index.
  std::stable_sort(problem.order.begin(), problem.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return problem.deltas[a].delta > problem.deltas[b].delta;
                   });
  return problem;
}

std::string literal_of(const XlcModel& model, const Instance& instance,
                       std::size_t feature_index) {
  if (feature_index >= model.feature_count()) {
    throw ValidationError("feature index " + std::to_string(feature_index) +
                          " out of range");
  }
  if (instance.values.size() != model.feature_count()) {
    throw ValidationError("instance does not match the model");
  }
  const double value = instance.values[feature_index];
  if (const auto* rf = std::get_if<RealFeature>(&model.feature(feature_index))) {
    if (rf->weight == 0.0) {
      throw ValidationError("real feature " + feature_name(feature_index) +
                                " has zero weight and never appears in an "
                                "explanation",
                            feature_index);
    }
    const char* op = rf->weight > 0.0 ? ">=" : "<=";
    return "(" + feature_name(feature_index) + " " + op + " " +
           number_to_string(value) + ")";
  }
  return "(" + feature_name(feature_index) + " = " +
         std::to_string(static_cast<long long>(value)) + ")";
}

}  // namespace linexp
