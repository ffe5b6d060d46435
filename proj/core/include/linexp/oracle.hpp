#ifndef LINEXP_ORACLE_HPP
#define LINEXP_ORACLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "linexp/nbc.hpp"
#include "linexp/xlc.hpp"

namespace linexp::oracle {

/// Everything the brute-force sweep found for one instance. Sets hold
/// 0-based feature indices in ascending order; the list is sorted by size,
/// then lexicographically.
struct OracleResult {
  std::vector<std::vector<std::size_t>> all_minimal;
  std::size_t min_cardinality = 0;
};

/// True iff fixing the subset's features at their instance values keeps the
/// model's class for every completion of the remaining ones. Checked by
/// enumerating completions outright: categorical features run over their
/// whole domain, real features over both interval endpoints (the extremes of
/// a linear function over a box sit at corners). No derived shortcut is
/// consulted.
///
/// Guards: feature_count <= 14 and at most 10^6 completions; otherwise
/// GuardError.
bool entails(const XlcModel& model, const Instance& instance,
             std::span<const std::size_t> subset);

/// Sweeps all 2^n feature subsets and returns exactly the subset-minimal
/// entailing ones. Guard: feature_count <= 12.
OracleResult all_minimal_explanations(const XlcModel& model,
                                      const Instance& instance);

/// Class with the larger raw probability product Prob(c) * prod Prob(e_i|c);
/// a tie goes to Minus. No logs, no floor, no shift.
ClassLabel nbc_predict_direct(const NbcModel& model, const Instance& instance);

}  // namespace linexp::oracle

#endif
