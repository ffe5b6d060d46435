#include "linexp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "linexp/errors.hpp"

namespace linexp::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !cell.empty();
}

ordered_json parse_json_document(const std::string& text,
                                 std::size_t line = 0) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw ParseError("malformed JSON", line);
  }
  return doc;
}

double require_number(const ordered_json& obj, const char* key,
                      std::size_t line = 0) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ParseError(std::string("missing or non-numeric \"") + key + "\"",
                     line);
  }
  return obj[key].get<double>();
}

std::vector<double> require_number_array(const ordered_json& obj,
                                         const char* key,
                                         std::size_t line = 0) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw ParseError(std::string("missing or non-array \"") + key + "\"",
                     line);
  }
  std::vector<double> out;
  out.reserve(obj[key].size());
  for (const auto& v : obj[key]) {
    if (!v.is_number()) {
      throw ParseError(std::string("non-numeric entry in \"") + key + "\"",
                       line);
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

XlcModel parse_xlc_json(const std::string& text) {
  const ordered_json doc = parse_json_document(text);
  if (!doc.is_object()) throw ParseError("model document is not an object");
  const double bias = require_number(doc, "bias");
  if (!doc.contains("features") || !doc["features"].is_array()) {
    throw ParseError("missing or non-array \"features\"");
  }
  std::vector<Feature> features;
  features.reserve(doc["features"].size());
  for (const auto& f : doc["features"]) {
    if (!f.is_object() || !f.contains("kind") || !f["kind"].is_string()) {
      throw ParseError("feature entry lacks a \"kind\" string");
    }
    const std::string kind = f["kind"].get<std::string>();
    if (kind == "real") {
      RealFeature real;
      real.lower = require_number(f, "lower");
      real.upper = require_number(f, "upper");
      real.weight = require_number(f, "weight");
      features.emplace_back(real);
    } else if (kind == "categorical") {
      CategoricalFeature cat;
      cat.values = require_number_array(f, "values");
      features.emplace_back(std::move(cat));
    } else {
      throw ParseError("unknown feature kind \"" + kind + "\"");
    }
  }
  return XlcModel(bias, std::move(features));
}

std::string to_json(const XlcModel& model) {
  ordered_json doc;
  doc["bias"] = model.bias();
  doc["features"] = ordered_json::array();
  for (const Feature& f : model.features()) {
    ordered_json entry;
    if (const auto* real = std::get_if<RealFeature>(&f)) {
      entry["kind"] = "real";
      entry["lower"] = real->lower;
      entry["upper"] = real->upper;
      entry["weight"] = real->weight;
    } else {
      const auto& cat = std::get<CategoricalFeature>(f);
      entry["kind"] = "categorical";
      entry["values"] = cat.values;
    }
    doc["features"].push_back(std::move(entry));
  }
  return doc.dump();
}

NbcModel parse_nbc_json(const std::string& text) {
  const ordered_json doc = parse_json_document(text);
  if (!doc.is_object()) throw ParseError("model document is not an object");
  if (!doc.contains("priors") || !doc["priors"].is_object()) {
    throw ParseError("missing or non-object \"priors\"");
  }
  const double prior_plus = require_number(doc["priors"], "plus");
  const double prior_minus = require_number(doc["priors"], "minus");
  if (!doc.contains("features") || !doc["features"].is_array()) {
    throw ParseError("missing or non-array \"features\"");
  }
  std::vector<NbcFeature> features;
  features.reserve(doc["features"].size());
  std::size_t index = 0;
  for (const auto& f : doc["features"]) {
    ++index;
    if (!f.is_object()) throw ParseError("feature entry is not an object");
    NbcFeature feature;
    feature.cond_plus = require_number_array(f, "cond_plus");
    feature.cond_minus = require_number_array(f, "cond_minus");
    const double domain = require_number(f, "domain");
    if (domain != static_cast<double>(feature.cond_plus.size()) ||
        feature.cond_plus.size() != feature.cond_minus.size()) {
      throw ParseError("feature " + std::to_string(index) +
                       ": \"domain\" disagrees with the conditional tables");
    }
    features.push_back(std::move(feature));
  }
  const double big_m = require_number(doc, "big_m");
  const double threshold = require_number(doc, "threshold");
  return NbcModel(prior_plus, prior_minus, std::move(features), big_m,
                  threshold);
}

std::string to_json(const NbcModel& model) {
  ordered_json doc;
  doc["priors"] = {{"plus", model.prior(ClassLabel::Plus)},
                   {"minus", model.prior(ClassLabel::Minus)}};
  doc["features"] = ordered_json::array();
  for (const NbcFeature& f : model.features()) {
    ordered_json entry;
    entry["domain"] = f.domain_size();
    entry["cond_plus"] = f.cond_plus;
    entry["cond_minus"] = f.cond_minus;
    doc["features"].push_back(std::move(entry));
  }
  doc["big_m"] = model.big_m();
  doc["threshold"] = model.threshold();
  return doc.dump();
}

AnyModel parse_model_json(const std::string& text) {
  const ordered_json doc = parse_json_document(text);
  if (doc.is_object() && doc.contains("priors")) {
    return parse_nbc_json(text);
  }
  if (doc.is_object() && doc.contains("bias")) {
    return parse_xlc_json(text);
  }
  throw ParseError(
      "model document has neither \"priors\" (naive Bayes) nor \"bias\" "
      "(linear)");
}

AnyModel load_model_file(const std::string& path) {
  return parse_model_json(read_file(path));
}

LabeledDataset parse_dataset_csv(std::istream& in) {
  LabeledDataset ds;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    break;
  }
  if (trim(line).empty()) throw ParseError("dataset has no header", line_no);

  std::vector<std::string> header = split_csv(line);
  if (header.size() < 2) {
    throw ParseError("header needs at least one feature and a label column",
                     line_no);
  }
  header.pop_back();  // label column name is not used
  for (const std::string& name : header) {
    const std::size_t colon = name.rfind(':');
    if (colon == std::string::npos) {
      ds.feature_names.push_back(name);
      ds.declared_domains.push_back(0);
      continue;
    }
    const std::string digits = name.substr(colon + 1);
    std::size_t domain = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), domain);
    if (ec != std::errc() || ptr != digits.data() + digits.size() ||
        domain == 0) {
      throw ParseError("bad domain declaration in header cell \"" + name +
                           "\"",
                       line_no);
    }
    ds.feature_names.push_back(name.substr(0, colon));
    ds.declared_domains.push_back(domain);
  }

  const std::size_t n = ds.feature_names.size();
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != n + 1) {
      throw ParseError("expected " + std::to_string(n + 1) + " cells, got " +
                           std::to_string(cells.size()),
                       line_no);
    }
    std::vector<std::size_t> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t value = 0;
      const auto [ptr, ec] = std::from_chars(
          cells[j].data(), cells[j].data() + cells[j].size(), value);
      if (ec != std::errc() || ptr != cells[j].data() + cells[j].size() ||
          value == 0) {
        throw ParseError("cell \"" + cells[j] +
                             "\" is not a 1-based integer value",
                         line_no);
      }
      row[j] = value;
    }
    const std::string& label = cells[n];
    if (label != "+" && label != "-") {
      throw ParseError("label \"" + label + "\" is neither \"+\" nor \"-\"",
                       line_no);
    }
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(label == "+" ? ClassLabel::Plus : ClassLabel::Minus);
  }
  return ds;
}

LabeledDataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_dataset_csv(in);
}

namespace {

// A data row is all numbers, optionally ending in a +/- label that gets
// dropped. Returns false if some cell is not numeric.
bool try_parse_csv_row(const std::string& line, std::vector<double>& out) {
  std::vector<std::string> cells = split_csv(line);
  if (cells.empty()) return false;
  if (cells.back() == "+" || cells.back() == "-") cells.pop_back();
  if (cells.empty()) return false;
  out.clear();
  out.reserve(cells.size());
  for (const std::string& cell : cells) {
    double value = 0.0;
    if (!parse_number(cell, value)) return false;
    out.push_back(value);
  }
  return true;
}

}  // namespace

InstanceRows parse_instance_rows(std::istream& in) {
  InstanceRows result;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty()) continue;

    if (body.front() == '[') {
      const ordered_json doc = parse_json_document(body, line_no);
      if (!doc.is_array()) {
        throw ParseError("expected a JSON array of numbers", line_no);
      }
      Instance inst;
      inst.values.reserve(doc.size());
      for (const auto& v : doc) {
        if (!v.is_number()) {
          throw ParseError("expected a JSON array of numbers", line_no);
        }
        inst.values.push_back(v.get<double>());
      }
      result.rows.push_back(std::move(inst));
      result.line_numbers.push_back(line_no);
      first_content = false;
      continue;
    }

    std::vector<double> values;
    if (try_parse_csv_row(body, values)) {
      result.rows.push_back(Instance{std::move(values)});
      result.line_numbers.push_back(line_no);
      first_content = false;
      continue;
    }
    if (first_content) {
      first_content = false;  // header line
      continue;
    }
    throw ParseError("row is neither numeric CSV nor a JSON array", line_no);
  }
  return result;
}

InstanceRows load_instances_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_instance_rows(in);
}

std::map<std::uint64_t, std::vector<std::size_t>> parse_heuristics_jsonl(
    std::istream& in) {
  std::map<std::uint64_t, std::vector<std::size_t>> result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty()) continue;
    const ordered_json doc = parse_json_document(body, line_no);
    if (!doc.is_object() || !doc.contains("instance_id") ||
        !doc["instance_id"].is_number_unsigned()) {
      throw ParseError("expected an object with an unsigned \"instance_id\"",
                       line_no);
    }
    const auto id = doc["instance_id"].get<std::uint64_t>();
    if (result.count(id)) {
      throw ParseError("instance_id " + std::to_string(id) + " repeats",
                       line_no);
    }
    if (!doc.contains("features") || !doc["features"].is_array()) {
      throw ParseError("missing or non-array \"features\"", line_no);
    }
    std::vector<std::size_t> features;
    for (const auto& v : doc["features"]) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
        throw ParseError("features must be 1-based integers", line_no);
      }
      features.push_back(v.get<std::size_t>() - 1);
    }
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()),
                   features.end());
    result.emplace(id, std::move(features));
  }
  return result;
}

std::map<std::uint64_t, std::vector<std::size_t>> load_heuristics_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_heuristics_jsonl(in);
}

std::string explanation_line(std::uint64_t instance_id, ClassLabel cls,
                             const PiExplanation& expl) {
  ordered_json doc;
  doc["instance_id"] = instance_id;
  doc["class"] = to_symbol(cls);
  doc["size"] = expl.features.size();
  ordered_json features = ordered_json::array();
  for (std::size_t j : expl.features) features.push_back(j + 1);
  doc["features"] = std::move(features);
  doc["literals"] = expl.literals;
  return doc.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw ParseError("failed writing " + path);
}

}  // namespace linexp::io
