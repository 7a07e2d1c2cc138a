#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "common/error.hpp"
#include "experiments/acceptance.hpp"
#include "experiments/config.hpp"
#include "experiments/manifest.hpp"
#include "experiments/registry.hpp"

namespace {

using namespace qf::experiments;

TEST(Config, ParsesFullDocument) {
  const ExperimentConfig c = parse_config(R"({
  "experiment": "qubit-decay-filter",
  "seed": 7,
  "output_dir": "out/q",
  "params": {"n_traj": 10},
  "model": {"dim": 2, "L": "sigma_minus", "H": "pauli_z"}
})");
  EXPECT_EQ(c.experiment, "qubit-decay-filter");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.output_dir.value(), "out/q");
  EXPECT_EQ(c.params.at("n_traj"), 10);
  ASSERT_TRUE(c.model.has_value());
}

TEST(Config, MalformedJsonReportsLineAndColumn) {
  try {
    parse_config("{\n  \"experiment\": \"x\",\n  \"seed\": 1,,\n}");
    FAIL();
  } catch (const qf::ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 13);
  }
}

TEST(Config, UnknownTopLevelKeyIsLocated) {
  try {
    parse_config("{\n  \"experiment\": \"x\",\n  \"seed\": 1,\n  \"sed\": 2\n}");
    FAIL();
  } catch (const qf::ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 3);
    EXPECT_NE(std::string(e.what()).find("sed"), std::string::npos);
  }
}

TEST(Config, TypeErrorsAndMissingKeys) {
  EXPECT_THROW(parse_config(R"({"experiment": "x", "seed": -1})"), qf::ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": 3, "seed": 1})"), qf::ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": 1})"), qf::ConfigError);
  EXPECT_THROW(parse_config(R"([1, 2])"), qf::ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), qf::Error);
}

TEST(Config, LineColumnOfOffset) {
  EXPECT_EQ(line_column("ab\ncd", 0), std::make_pair(1, 1));
  EXPECT_EQ(line_column("ab\ncd", 4), std::make_pair(2, 2));
}

TEST(ParamReader, StrictKeysAndTypes) {
  const std::string src = "{\"experiment\": \"x\", \"seed\": 1,\n \"params\": {\"dt\": 0.1, \"typo\": 1}}";
  ParamReader r(parse_config(src).params, src);
  EXPECT_EQ(r.positive("dt", 1.0), 0.1);
  EXPECT_EQ(r.count("n", 5), 5u);
  try {
    r.finish();
    FAIL();
  } catch (const qf::ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("typo"), std::string::npos);
  }
  ParamReader bad(nlohmann::json{{"dt", -1.0}, {"n", 0}, {"flag", 1}});
  EXPECT_THROW(bad.positive("dt", 1.0), qf::ConfigError);
  EXPECT_THROW(bad.count("n", 5), qf::ConfigError);
  EXPECT_THROW(bad.flag("flag", false), qf::ConfigError);
}

TEST(Registry, AlphabetizedAndCoversEveryCriterion) {
  const auto& reg = registry();
  EXPECT_GE(reg.size(), 12u);
  EXPECT_TRUE(std::is_sorted(reg.begin(), reg.end(),
                             [](const ExperimentInfo& a, const ExperimentInfo& b) { return a.name < b.name; }));
  std::set<int> criteria;
  for (const ExperimentInfo& e : reg) {
    EXPECT_GE(e.criterion, 1);
    EXPECT_LE(e.criterion, kCriterionCount);
    EXPECT_FALSE(e.doc.empty());
    criteria.insert(e.criterion);
  }
  EXPECT_EQ(criteria.size(), static_cast<std::size_t>(kCriterionCount));
  try {
    find_experiment("no-such-experiment");
    FAIL();
  } catch (const qf::Error& e) {
    EXPECT_EQ(e.code(), qf::ErrorCode::kExperimentUnknown);
  }
}

TEST(Registry, ModelOnlyForQuantumExperiments) {
  ParamReader p(nlohmann::json::object());
  RunContext ctx;
  ctx.model = nlohmann::json{{"dim", 2}, {"L", "sigma_minus"}, {"H", "pauli_z"}};
  EXPECT_THROW(run_experiment(find_experiment("ito-goldens"), p, ctx), qf::ConfigError);
}

TEST(Runner, ItoGoldensPassWithArtifacts) {
  ParamReader p(nlohmann::json::object());
  RunContext ctx;
  const Verdict v = run_experiment(find_experiment("ito-goldens"), p, ctx);
  EXPECT_TRUE(v.pass) << v.summary;
  EXPECT_EQ(v.criterion, 4);
  EXPECT_FALSE(ctx.artifacts.files().empty());
}

TEST(Runner, UnknownParamIsRejected) {
  ParamReader p(nlohmann::json{{"bogus", 1}});
  RunContext ctx;
  EXPECT_THROW(run_experiment(find_experiment("ito-goldens"), p, ctx), qf::ConfigError);
}

TEST(Manifest, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Manifest, ListsFilesAndVerdict) {
  const ExperimentConfig c = parse_config(R"({"experiment": "ito-goldens", "seed": 3})");
  Artifacts a;
  a.add("x.csv", "t\n1\n");
  EXPECT_THROW(a.add("x.csv", ""), qf::Error);
  Verdict v;
  v.experiment = "ito-goldens";
  v.criterion = 4;
  v.pass = true;
  const nlohmann::json m = make_manifest(c, a, v);
  EXPECT_EQ(m.at("config_sha256"), sha256_hex(c.source));
  EXPECT_EQ(m.at("seed"), 3);
  ASSERT_EQ(m.at("files").size(), 1u);
  EXPECT_EQ(m.at("files")[0].at("sha256"), sha256_hex("t\n1\n"));
  EXPECT_EQ(m.at("files")[0].at("bytes"), 4);
  EXPECT_EQ(m.at("verdict").at("pass"), true);
}

TEST(Acceptance, OptionsAreStrict) {
  const AcceptanceOptions o = acceptance_options_from_json({{"only", "4"}, {"seed", 5}, {"n_traj", 10}});
  EXPECT_EQ(o.only.value(), "4");
  EXPECT_EQ(o.seed, 5u);
  EXPECT_THROW(acceptance_options_from_json({{"onyl", "4"}}), qf::ConfigError);
  EXPECT_THROW(acceptance_options_from_json({{"n_traj", 1}}), qf::ConfigError);
  EXPECT_THROW(acceptance_options_from_json({{"perturb_lindblad_sign", 1}}), qf::ConfigError);
}

TEST(Acceptance, SelectionByNameAndCriterion) {
  EXPECT_EQ(select_experiments(std::nullopt).size(), registry().size());
  const auto by_name = select_experiments(std::string("ito-goldens"));
  ASSERT_EQ(by_name.size(), 1u);
  EXPECT_EQ(by_name[0]->criterion, 4);
  for (const ExperimentInfo* e : select_experiments(std::string("9"))) EXPECT_EQ(e->criterion, 9);
  EXPECT_THROW(select_experiments(std::string("13")), qf::Error);
  EXPECT_THROW(select_experiments(std::string("nope")), qf::Error);
}

TEST(Acceptance, SingleCriterionReport) {
  AcceptanceOptions o;
  o.only = "covariance-lemma";
  const AcceptanceReport r = run_acceptance(o);
  EXPECT_TRUE(r.pass());
  const auto lines = criterion_lines(r);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].rfind("PASS  criterion  6  covariance-lemma", 0), 0u) << lines[0];
  EXPECT_EQ(r.to_json().at("criteria")[0].at("criterion"), 6);
}

}  // namespace
