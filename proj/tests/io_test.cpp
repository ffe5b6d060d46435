#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "linexp/io.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace linexp;

TEST_CASE("linear model JSON round-trips bit-exactly") {
  const XlcModel reduced = reduce_to_xlc(testgen::running_example_nbc());
  const std::string once = io::to_json(reduced);
  const XlcModel back = io::parse_xlc_json(once);
  CHECK(io::to_json(back) == once);
  CHECK(back.bias() == reduced.bias());
  REQUIRE(back.feature_count() == reduced.feature_count());
  for (std::size_t j = 0; j < back.feature_count(); ++j) {
    CHECK(std::get<CategoricalFeature>(back.feature(j)).values ==
          std::get<CategoricalFeature>(reduced.feature(j)).values);
  }

  const std::string mixed = io::to_json(fixtures::real_model());
  CHECK(io::to_json(io::parse_xlc_json(mixed)) == mixed);
}

TEST_CASE("a hand-written linear model document parses") {
  const std::string text = R"({
    "bias": -2.5,
    "features": [
      {"kind": "categorical", "values": [3.0, 0.0]},
      {"kind": "categorical", "values": [2.0, 0.0]},
      {"kind": "categorical", "values": [1.0, 0.0]}
    ]
  })";
  const XlcModel model = io::parse_xlc_json(text);
  CHECK(evaluate(model, fixtures::all_ones()) == 3.5);

  const XlcModel real = io::parse_xlc_json(
      R"({"bias":-0.4,"features":[{"kind":"real","lower":0,"upper":1,"weight":2},
          {"kind":"real","lower":0,"upper":2,"weight":-1}]})");
  CHECK(evaluate(real, fixtures::real_instance()) == doctest::Approx(1.1));
}

TEST_CASE("linear model parsing reports structural problems") {
  CHECK_THROWS_AS(io::parse_xlc_json("{"), ParseError);
  CHECK_THROWS_AS(io::parse_xlc_json(R"({"features":[]})"), ParseError);
  CHECK_THROWS_AS(io::parse_xlc_json(R"({"bias":0})"), ParseError);
  CHECK_THROWS_AS(io::parse_xlc_json(
                      R"({"bias":0,"features":[{"kind":"banana"}]})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_xlc_json(
                      R"({"bias":0,"features":[{"kind":"real","lower":0}]})"),
                  ParseError);
  CHECK_THROWS_AS(
      io::parse_xlc_json(
          R"({"bias":0,"features":[{"kind":"categorical","values":["x"]}]})"),
      ParseError);
}

TEST_CASE("naive Bayes JSON round-trips bit-exactly") {
  const NbcModel model = testgen::running_example_nbc();
  const std::string once = io::to_json(model);
  const NbcModel back = io::parse_nbc_json(once);
  CHECK(io::to_json(back) == once);
  CHECK(back.big_m() == model.big_m());
  CHECK(back.threshold() == model.threshold());
  CHECK(back.prior(ClassLabel::Plus) == model.prior(ClassLabel::Plus));
  REQUIRE(back.feature_count() == model.feature_count());
  for (std::size_t j = 0; j < back.feature_count(); ++j) {
    CHECK(back.feature(j).cond_plus == model.feature(j).cond_plus);
    CHECK(back.feature(j).cond_minus == model.feature(j).cond_minus);
  }
}

TEST_CASE("naive Bayes parsing cross-checks the declared domain") {
  const std::string good = R"({
    "priors": {"plus": 0.5, "minus": 0.5},
    "features": [{"domain": 2, "cond_plus": [0.2, 0.8],
                  "cond_minus": [0.8, 0.2]}],
    "big_m": -10, "threshold": 11
  })";
  const NbcModel model = io::parse_nbc_json(good);
  CHECK(model.conditional(0, ClassLabel::Plus, 2) == 0.8);

  std::string bad_domain = good;
  bad_domain.replace(bad_domain.find("\"domain\": 2"), 11, "\"domain\": 3");
  CHECK_THROWS_AS(io::parse_nbc_json(bad_domain), ParseError);

  CHECK_THROWS_AS(io::parse_nbc_json(R"({"priors":[0.5,0.5]})"), ParseError);
  CHECK_THROWS_AS(
      io::parse_nbc_json(
          R"({"priors":{"plus":0.5,"minus":0.5},"features":[],"big_m":-1})"),
      ParseError);
  CHECK_THROWS_AS(
      io::parse_nbc_json(
          R"({"priors":{"plus":0.5,"minus":0.5},
              "features":[{"domain":2,"cond_plus":[0.5,0.5],
                           "cond_minus":[1.0]}],
              "big_m":-10,"threshold":11})"),
      ParseError);
}

TEST_CASE("model documents are told apart by their top-level key") {
  const std::string nbc = io::to_json(testgen::running_example_nbc());
  const std::string xlc = io::to_json(fixtures::real_model());
  CHECK(std::holds_alternative<NbcModel>(io::parse_model_json(nbc)));
  CHECK(std::holds_alternative<XlcModel>(io::parse_model_json(xlc)));
  CHECK_THROWS_AS(io::parse_model_json(R"({"weights":[1,2]})"), ParseError);
  CHECK_THROWS_AS(io::parse_model_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(io::parse_model_json("not json"), ParseError);
}

TEST_CASE("dataset CSV parsing honors header domain declarations") {
  std::istringstream in(
      "\n"
      "a:3,b,label\n"
      "1,2,+\n"
      "3 , 1 , -\n");
  const LabeledDataset ds = io::parse_dataset_csv(in);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.declared_domains == std::vector<std::size_t>{3, 0});
  CHECK(ds.rows ==
        std::vector<std::vector<std::size_t>>{{1, 2}, {3, 1}});
  CHECK(ds.labels ==
        std::vector<ClassLabel>{ClassLabel::Plus, ClassLabel::Minus});
}

TEST_CASE("dataset CSV survives carriage returns") {
  std::istringstream in("a,b,label\r\n1,1,+\r\n2,2,-\r\n");
  const LabeledDataset ds = io::parse_dataset_csv(in);
  CHECK(ds.rows.size() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("dataset CSV errors carry 1-based line numbers") {
  const auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      io::parse_dataset_csv(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("a,label\n1,x\n") == 2);
  CHECK(line_of("a,label\n1,+\n1.5,+\n") == 3);
  CHECK(line_of("a,label\n1,2,+\n") == 2);
  CHECK(line_of("a,label\n0,+\n") == 2);
  CHECK(line_of("a:0,label\n1,+\n") == 1);
  CHECK(line_of("justlabel\n") == 1);
  CHECK_THROWS_AS(
      [] {
        std::istringstream empty("\n\n");
        io::parse_dataset_csv(empty);
      }(),
      ParseError);
}

TEST_CASE("instance rows accept JSON arrays and CSV alike") {
  std::istringstream in(
      "e1,e2,label\n"
      "1,0.5\n"
      "\n"
      "[1, 0.5]\n"
      "2,1,+\n");
  const io::InstanceRows rows = io::parse_instance_rows(in);
  REQUIRE(rows.rows.size() == 3);
  CHECK(rows.rows[0].values == std::vector<double>{1.0, 0.5});
  CHECK(rows.rows[1].values == std::vector<double>{1.0, 0.5});
  CHECK(rows.rows[2].values == std::vector<double>{2.0, 1.0});
  CHECK(rows.line_numbers == std::vector<std::size_t>{2, 4, 5});
}

TEST_CASE("instance rows reject garbage after the header") {
  std::istringstream in("1,2\nnot,numbers\n");
  CHECK_THROWS_AS(io::parse_instance_rows(in), ParseError);
  std::istringstream bad_json("[1, \"x\"]\n");
  CHECK_THROWS_AS(io::parse_instance_rows(bad_json), ParseError);
  std::istringstream header_only("e1,e2\n");
  CHECK(io::parse_instance_rows(header_only).rows.empty());
}

TEST_CASE("heuristic lines are keyed, rebased, and deduplicated") {
  std::istringstream in(
      "{\"instance_id\": 0, \"features\": [3, 1, 3]}\n"
      "\n"
      "{\"instance_id\": 2, \"features\": [2]}\n");
  const auto map = io::parse_heuristics_jsonl(in);
  REQUIRE(map.size() == 2);
  CHECK(map.at(0) == std::vector<std::size_t>{0, 2});
  CHECK(map.at(2) == std::vector<std::size_t>{1});
}

TEST_CASE("heuristic parsing rejects malformed lines") {
  const auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(io::parse_heuristics_jsonl(in), ParseError);
  };
  reject("{\"instance_id\": 0, \"features\": [1]}\n"
         "{\"instance_id\": 0, \"features\": [2]}\n");
  reject("{\"instance_id\": 0, \"features\": [0]}\n");
  reject("{\"instance_id\": -1, \"features\": [1]}\n");
  reject("{\"instance_id\": 0}\n");
  reject("{\"features\": [1]}\n");
  reject("nonsense\n");
}

TEST_CASE("explanation lines render compact ordered JSON") {
  PiExplanation expl;
  expl.features = {0};
  expl.literals = {"(e1 = 1)"};
  CHECK(io::explanation_line(0, ClassLabel::Plus, expl) ==
        R"x({"instance_id":0,"class":"+","size":1,"features":[1],"literals":["(e1 = 1)"]})x");

  PiExplanation empty;
  CHECK(io::explanation_line(7, ClassLabel::Minus, empty) ==
        R"({"instance_id":7,"class":"-","size":0,"features":[],"literals":[]})");
}

TEST_CASE("file helpers round-trip bytes and report missing paths") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "linexp_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "blob.txt").string();
  io::write_file(path, "line one\nline two\n");
  CHECK(io::read_file(path) == "line one\nline two\n");
  CHECK_THROWS_AS(io::read_file((dir / "absent").string()), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("a written model file loads back through the sniffing loader") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "linexp_io_model";
  fs::create_directories(dir);
  const std::string path = (dir / "model.json").string();
  io::write_file(path, io::to_json(testgen::running_example_nbc()));
  const io::AnyModel loaded = io::load_model_file(path);
  REQUIRE(std::holds_alternative<NbcModel>(loaded));
  CHECK(predict(std::get<NbcModel>(loaded),
                testgen::running_example_instance()) == ClassLabel::Plus);
  fs::remove_all(dir);
}
