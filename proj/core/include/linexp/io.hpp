#ifndef LINEXP_IO_HPP
#define LINEXP_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "linexp/explain.hpp"
#include "linexp/nbc.hpp"
#include "linexp/xlc.hpp"

namespace linexp::io {

using AnyModel = std::variant<XlcModel, NbcModel>;

/// Linear model JSON:
///   {"bias": b, "features": [{"kind":"real","lower":l,"upper":u,"weight":w}
///                            | {"kind":"categorical","values":[...]}]}
XlcModel parse_xlc_json(const std::string& text);
std::string to_json(const XlcModel& model);

/// Naive Bayes JSON:
///   {"priors":{"plus":p,"minus":q},
///    "features":[{"domain":d,"cond_plus":[...],"cond_minus":[...]}],
///    "big_m":m,"threshold":t}
NbcModel parse_nbc_json(const std::string& text);
std::string to_json(const NbcModel& model);

/// Reads either model flavor, told apart by the top-level "priors" /
/// "bias" key.
AnyModel parse_model_json(const std::string& text);
AnyModel load_model_file(const std::string& path);

/// Labeled CSV: a header line of feature names (a name may carry a declared
/// domain as "name:d"), one label column last; data rows hold 1-based
/// integers and end with "+" or "-".
LabeledDataset parse_dataset_csv(std::istream& in);
LabeledDataset load_dataset_file(const std::string& path);

/// Unlabeled instance rows for prediction and explanation. Each nonempty
/// line is either a JSON array of numbers or a CSV row; a leading header
/// line and a trailing "+"/"-" label cell are tolerated and dropped, so a
/// training CSV works here unchanged. line_numbers[i] is the 1-based source
/// line of rows[i].
struct InstanceRows {
  std::vector<Instance> rows;
  std::vector<std::size_t> line_numbers;
};
InstanceRows parse_instance_rows(std::istream& in);
InstanceRows load_instances_file(const std::string& path);

/// Heuristic explanations, one JSON object per line:
///   {"instance_id": i, "features": [1-based feature numbers]}
/// Features come back 0-based, sorted, deduplicated, keyed by instance id.
/// A repeated instance id is an error.
std::map<std::uint64_t, std::vector<std::size_t>> parse_heuristics_jsonl(
    std::istream& in);
std::map<std::uint64_t, std::vector<std::size_t>> load_heuristics_file(
    const std::string& path);

/// One explanation as a JSONL line (no trailing newline):
///   {"instance_id":i,"class":"+","size":k,"features":[...],"literals":[...]}
/// with 1-based feature numbers.
std::string explanation_line(std::uint64_t instance_id, ClassLabel cls,
                             const PiExplanation& expl);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace linexp::io

#endif
