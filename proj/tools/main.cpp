#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linexp/errors.hpp"
#include "linexp/eval.hpp"
#include "linexp/explain.hpp"
#include "linexp/io.hpp"
#include "linexp/nbc.hpp"
#include "linexp/oracle.hpp"
#include "linexp/xlc.hpp"

namespace {

using linexp::ClassLabel;
using linexp::Instance;
using linexp::NbcModel;
using linexp::PiExplanation;
using linexp::XlcModel;
using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string model_path;
  std::string data_path;
  std::string out_path;
  std::string heuristic_path;
  std::uint64_t limit = 1'000'000;
  double smoothing = 1.0;
  bool verify = false;
  std::uint64_t seed = 0;
};

// Writes to --out when given, stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw linexp::ParseError("cannot open " + path + " for writing");
      }
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

XlcModel as_xlc(const linexp::io::AnyModel& any) {
  if (const auto* nbc = std::get_if<NbcModel>(&any)) {
    return linexp::reduce_to_xlc(*nbc);
  }
  return std::get<XlcModel>(any);
}

void report_row_failure(std::size_t row, std::size_t line,
                        const std::exception& e) {
  std::cerr << "row " << row << " (line " << line << "): " << e.what()
            << "\n";
}

int run_train(const Options& opt) {
  const linexp::LabeledDataset ds = linexp::io::load_dataset_file(opt.data_path);
  const NbcModel model = linexp::train(ds, opt.smoothing);
  Sink sink(opt.out_path);
  sink.out() << linexp::io::to_json(model) << '\n';
  return 0;
}

int run_predict(const Options& opt) {
  const linexp::io::AnyModel any = linexp::io::load_model_file(opt.model_path);
  const linexp::io::InstanceRows data =
      linexp::io::load_instances_file(opt.data_path);
  Sink sink(opt.out_path);
  int failures = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    try {
      ClassLabel cls;
      if (const auto* nbc = std::get_if<NbcModel>(&any)) {
        cls = linexp::predict(*nbc, data.rows[i]);
      } else {
        cls = linexp::decide(std::get<XlcModel>(any), data.rows[i]);
      }
      ordered_json line;
      line["instance_id"] = i;
      line["class"] = linexp::to_symbol(cls);
      sink.out() << line.dump() << '\n';
    } catch (const std::exception& e) {
      report_row_failure(i, data.line_numbers[i], e);
      ++failures;
    }
  }
  return failures ? 1 : 0;
}

// Oracle cross-check of one explanation: it must entail the class and stop
// entailing when any one feature is dropped.
void check_against_oracle(const XlcModel& model, const Instance& instance,
                          const PiExplanation& expl) {
  if (!linexp::oracle::entails(model, instance, expl.features)) {
    throw std::runtime_error("oracle rejects the explanation as unsound");
  }
  for (std::size_t drop = 0; drop < expl.features.size(); ++drop) {
    std::vector<std::size_t> reduced = expl.features;
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(drop));
    if (linexp::oracle::entails(model, instance, reduced)) {
      throw std::runtime_error(
          "oracle rejects the explanation as non-minimal: feature e" +
          std::to_string(expl.features[drop] + 1) + " is redundant");
    }
  }
}

int run_explain(const Options& opt) {
  const XlcModel model = as_xlc(linexp::io::load_model_file(opt.model_path));
  const linexp::io::InstanceRows data =
      linexp::io::load_instances_file(opt.data_path);
  Sink sink(opt.out_path);
  int failures = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    try {
      const linexp::ExplanationProblem problem =
          linexp::derive_problem(model, data.rows[i]);
      PiExplanation expl = linexp::find_one(problem);
      linexp::render_literals(model, data.rows[i], expl);
      if (opt.verify) check_against_oracle(model, data.rows[i], expl);
      sink.out() << linexp::io::explanation_line(i, problem.target_class, expl)
                 << '\n';
    } catch (const std::exception& e) {
      report_row_failure(i, data.line_numbers[i], e);
      ++failures;
    }
  }
  return failures ? 1 : 0;
}

int run_enumerate(const Options& opt) {
  const XlcModel model = as_xlc(linexp::io::load_model_file(opt.model_path));
  const linexp::io::InstanceRows data =
      linexp::io::load_instances_file(opt.data_path);
  Sink sink(opt.out_path);
  int failures = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    try {
      const linexp::ExplanationProblem problem =
          linexp::derive_problem(model, data.rows[i]);
      linexp::Enumerator it(problem);
      std::vector<std::vector<std::size_t>> yielded;
      while (it.yield_count() < opt.limit && it.advance()) {
        PiExplanation expl = it.current();
        linexp::render_literals(model, data.rows[i], expl);
        sink.out() << linexp::io::explanation_line(i, problem.target_class,
                                                   expl)
                   << '\n';
        if (opt.verify) yielded.push_back(std::move(expl.features));
      }
      const bool capped = !it.exhausted() && it.advance();
      if (capped) {
        std::cerr << "row " << i << ": stopped at --limit " << opt.limit
                  << ", more explanations exist\n";
      }
      if (opt.verify) {
        if (capped) {
          throw std::runtime_error(
              "cannot verify a capped enumeration; raise --limit");
        }
        const linexp::oracle::OracleResult reference =
            linexp::oracle::all_minimal_explanations(model, data.rows[i]);
        std::sort(yielded.begin(), yielded.end(),
                  [](const auto& a, const auto& b) {
                    if (a.size() != b.size()) return a.size() < b.size();
                    return a < b;
                  });
        if (yielded != reference.all_minimal) {
          throw std::runtime_error(
              "oracle disagrees with the enumerated explanation set");
        }
      }
    } catch (const std::exception& e) {
      report_row_failure(i, data.line_numbers[i], e);
      ++failures;
    }
  }
  return failures ? 1 : 0;
}

int run_assess(const Options& opt) {
  const XlcModel model = as_xlc(linexp::io::load_model_file(opt.model_path));
  const linexp::io::InstanceRows data =
      linexp::io::load_instances_file(opt.data_path);
  const std::map<std::uint64_t, std::vector<std::size_t>> heuristics =
      linexp::io::load_heuristics_file(opt.heuristic_path);
  Sink sink(opt.out_path);
  int failures = 0;

  std::vector<std::uint64_t> histogram(10, 0);
  double hit_sum = 0.0;
  std::uint64_t assessed = 0;

  for (const auto& kv : heuristics) {
    if (kv.first >= data.rows.size()) {
      std::cerr << "heuristic instance_id " << kv.first
                << " has no data row\n";
      ++failures;
    }
  }

  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const auto entry = heuristics.find(i);
    if (entry == heuristics.end()) continue;
    try {
      const linexp::ExplanationProblem problem =
          linexp::derive_problem(model, data.rows[i]);
      linexp::Enumerator it(problem);
      linexp::eval::FrequencyAccumulator acc(model.feature_count());
      while (it.yield_count() < opt.limit && it.advance()) {
        acc.add(it.current_features());
      }
      const bool partial = !it.exhausted() && it.advance();
      const linexp::eval::FeatureFrequency freq = acc.finish();

      const std::vector<std::size_t>& heuristic = entry->second;
      const double hit = linexp::eval::hit_score(heuristic, freq);
      const std::vector<std::size_t> common =
          linexp::eval::top_common(freq, heuristic.size());

      ordered_json line;
      line["instance_id"] = i;
      line["class"] = linexp::to_symbol(problem.target_class);
      line["hit"] = hit;
      line["k"] = heuristic.size();
      ordered_json common_json = ordered_json::array();
      for (std::size_t j : common) common_json.push_back(j + 1);
      line["common"] = std::move(common_json);
      line["total_explanations"] = freq.total_explanations;
      line["partial"] = partial;
      sink.out() << line.dump() << '\n';

      histogram[std::min<std::size_t>(9, static_cast<std::size_t>(hit / 10.0))]++;
      hit_sum += hit;
      ++assessed;
    } catch (const std::exception& e) {
      report_row_failure(i, data.line_numbers[i], e);
      ++failures;
    }
  }

  ordered_json summary;
  summary["summary"]["instances"] = assessed;
  summary["summary"]["mean_hit"] = assessed ? hit_sum / static_cast<double>(assessed) : 0.0;
  summary["summary"]["histogram"] = histogram;
  sink.out() << summary.dump() << '\n';
  return failures ? 1 : 0;
}

int run_verify(const Options& opt) {
  const XlcModel model = as_xlc(linexp::io::load_model_file(opt.model_path));
  const linexp::io::InstanceRows data =
      linexp::io::load_instances_file(opt.data_path);
  Sink sink(opt.out_path);
  int failures = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    try {
      const linexp::oracle::OracleResult reference =
          linexp::oracle::all_minimal_explanations(model, data.rows[i]);
      const linexp::ExplanationProblem problem =
          linexp::derive_problem(model, data.rows[i]);
      std::vector<std::vector<std::size_t>> mine;
      for (PiExplanation& e : linexp::enumerate_all(problem)) {
        mine.push_back(std::move(e.features));
      }
      const std::size_t first_size = mine.empty() ? 0 : mine.front().size();
      std::sort(mine.begin(), mine.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
      });
      const bool duplicates =
          std::adjacent_find(mine.begin(), mine.end()) != mine.end();
      const bool match = !duplicates && mine == reference.all_minimal &&
                         first_size == reference.min_cardinality;

      ordered_json line;
      line["instance_id"] = i;
      line["class"] = linexp::to_symbol(problem.target_class);
      line["match"] = match;
      line["explanations"] = mine.size();
      line["min_cardinality"] = reference.min_cardinality;
      sink.out() << line.dump() << '\n';
      if (!match) {
        std::cerr << "row " << i
                  << ": enumeration disagrees with the exhaustive sweep\n";
        ++failures;
      }
    } catch (const std::exception& e) {
      report_row_failure(i, data.line_numbers[i], e);
      ++failures;
    }
  }
  return failures ? 1 : 0;
}

// Synthetic workload: 40 binary features with unit explanation power and a
// bias placed so every minimal explanation needs exactly 20 of them. The
// seed flips which of the two values is the instance's high side, per
// feature.
linexp::ExplanationProblem bench_problem(std::uint64_t seed, XlcModel& model,
                                         Instance& instance) {
  std::mt19937_64 rng(seed);
  std::vector<linexp::Feature> features;
  Instance inst;
  for (int j = 0; j < 40; ++j) {
    linexp::CategoricalFeature cat;
    if (rng() & 1u) {
      cat.values = {0.0, 1.0};
      inst.values.push_back(2.0);
    } else {
      cat.values = {1.0, 0.0};
      inst.values.push_back(1.0);
    }
    features.emplace_back(std::move(cat));
  }
  model = XlcModel(-19.5, std::move(features));
  instance = std::move(inst);
  return linexp::derive_problem(model, instance);
}

int run_bench(const Options& opt) {
  XlcModel model(0.0, {});
  Instance instance;
  const linexp::ExplanationProblem problem =
      bench_problem(opt.seed, model, instance);

  using clock = std::chrono::steady_clock;
  std::vector<std::int64_t> find_ns;
  find_ns.reserve(1001);
  std::size_t guard = 0;
  for (int rep = 0; rep < 1001; ++rep) {
    const clock::time_point t0 = clock::now();
    const PiExplanation e = linexp::find_one(problem);
    const clock::time_point t1 = clock::now();
    guard += e.features.size();
    find_ns.push_back(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  std::sort(find_ns.begin(), find_ns.end());
  const std::int64_t find_median = find_ns[find_ns.size() / 2];

  const std::vector<std::int64_t> stamps =
      linexp::delay_probe(problem, opt.limit);
  const std::uint64_t yields = stamps.size();
  std::int64_t max_gap = 0;
  const std::size_t window = std::min<std::size_t>(100'000, stamps.size() / 2);
  std::int64_t max_gap_first = 0;
  std::int64_t max_gap_last = 0;
  for (std::size_t k = 1; k < stamps.size(); ++k) {
    const std::int64_t gap = stamps[k] - stamps[k - 1];
    max_gap = std::max(max_gap, gap);
    if (k < window) max_gap_first = std::max(max_gap_first, gap);
    if (k >= stamps.size() - window) max_gap_last = std::max(max_gap_last, gap);
  }

  linexp::Enumerator it(problem);
  it.advance();

  ordered_json doc;
  doc["seed"] = opt.seed;
  doc["features"] = 40;
  doc["explanation_size"] = guard / 1001;
  doc["limit"] = opt.limit;
  doc["yields"] = yields;
  doc["find_one_median_ns"] = find_median;
  doc["total_ns"] = stamps.empty() ? 0 : stamps.back();
  doc["max_gap_ns"] = max_gap;
  doc["max_gap_first_ns"] = max_gap_first;
  doc["max_gap_last_ns"] = max_gap_last;
  doc["state_bytes"] = it.state_bytes();
  Sink sink(opt.out_path);
  sink.out() << doc.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "Smallest and exhaustively enumerated instance explanations for linear "
      "and naive Bayes classifiers"};
  app.require_subcommand(1);

  const auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", opt.model_path, "model JSON file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  const auto add_data = [&](CLI::App* cmd) {
    cmd->add_option("--data", opt.data_path, "input rows")
        ->required()
        ->check(CLI::ExistingFile);
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "output file (default stdout)");
  };
  const auto add_limit = [&](CLI::App* cmd) {
    cmd->add_option("--limit", opt.limit,
                    "most explanations per instance (default 1000000)")
        ->check(CLI::PositiveNumber);
  };
  const auto add_verify = [&](CLI::App* cmd) {
    cmd->add_flag("--verify", opt.verify,
                  "cross-check results against the brute-force oracle");
  };

  CLI::App* train = app.add_subcommand(
      "train", "fit a naive Bayes model from a labeled CSV");
  add_data(train);
  add_out(train);
  train->add_option("--smoothing", opt.smoothing,
                    "additive smoothing for the conditionals (default 1)")
      ->check(CLI::NonNegativeNumber);

  CLI::App* predict =
      app.add_subcommand("predict", "classify each input row");
  add_model(predict);
  add_data(predict);
  add_out(predict);

  CLI::App* explain = app.add_subcommand(
      "explain", "one smallest sufficient explanation per row");
  add_model(explain);
  add_data(explain);
  add_out(explain);
  add_verify(explain);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "stream every minimal explanation per row");
  add_model(enumerate);
  add_data(enumerate);
  add_out(enumerate);
  add_limit(enumerate);
  add_verify(enumerate);

  CLI::App* assess = app.add_subcommand(
      "assess", "score heuristic explanations against enumerated ones");
  add_model(assess);
  add_data(assess);
  add_out(assess);
  add_limit(assess);
  assess
      ->add_option("--heuristic", opt.heuristic_path,
                   "heuristic explanations, one JSON object per line")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* verify = app.add_subcommand(
      "verify", "compare enumeration with the exhaustive subset sweep");
  add_model(verify);
  add_data(verify);
  add_out(verify);

  CLI::App* bench = app.add_subcommand(
      "bench", "timing statistics on a synthetic 40-feature workload");
  add_out(bench);
  add_limit(bench);
  bench->add_option("--seed", opt.seed,
                    "seed for the synthetic workload (default 0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(train)) return run_train(opt);
    if (app.got_subcommand(predict)) return run_predict(opt);
    if (app.got_subcommand(explain)) return run_explain(opt);
    if (app.got_subcommand(enumerate)) return run_enumerate(opt);
    if (app.got_subcommand(assess)) return run_assess(opt);
    if (app.got_subcommand(verify)) return run_verify(opt);
    if (app.got_subcommand(bench)) return run_bench(opt);
  } catch (const linexp::ParseError& e) {
    if (e.line() > 0) {
      std::cerr << "line " << e.line() << ": " << e.what() << "\n";
    } else {
      std::cerr << e.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
