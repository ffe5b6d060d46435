#ifndef LINEXP_TESTS_FIXTURES_HPP
#define LINEXP_TESTS_FIXTURES_HPP

#include <vector>

#include "linexp/xlc.hpp"

namespace fixtures {

// Three binary-ish categorical features with value tables (3,0), (2,0),
// (1,0). With bias -2.5 the all-ones instance scores 3.5 and has the two
// minimal explanations {e1} and {e2,e3}.
inline linexp::XlcModel categorical_model(double bias) {
  std::vector<linexp::Feature> features;
  features.emplace_back(linexp::CategoricalFeature{{3.0, 0.0}});
  features.emplace_back(linexp::CategoricalFeature{{2.0, 0.0}});
  features.emplace_back(linexp::CategoricalFeature{{1.0, 0.0}});
  return linexp::XlcModel(bias, std::move(features));
}

inline linexp::Instance all_ones() { return linexp::Instance{{1.0, 1.0, 1.0}}; }

// Two real features, w = (2, -1) over [0,1] and [0,2]. With bias -0.4 the
// instance (1, 0.5) scores 1.1 and needs both features fixed.
inline linexp::XlcModel real_model() {
  std::vector<linexp::Feature> features;
  features.emplace_back(linexp::RealFeature{0.0, 1.0, 2.0});
  features.emplace_back(linexp::RealFeature{0.0, 2.0, -1.0});
  return linexp::XlcModel(-0.4, std::move(features));
}

inline linexp::Instance real_instance() {
  return linexp::Instance{{1.0, 0.5}};
}

}  // namespace fixtures

#endif
