// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qfilter/qfilter.h"

namespace {

template <class F>
std::string fetch(F&& call) {
  size_t needed = 0;
  EXPECT_EQ(call(nullptr, 0, &needed), QF_E_BUFFER_TOO_SMALL);
  std::string buf(needed, '\0');
  EXPECT_EQ(call(buf.data(), buf.size(), nullptr), QF_OK);
  buf.resize(needed - 1);
  return buf;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(qf_version(), "");
  EXPECT_STREQ(qf_status_name(QF_OK), "Ok");
  EXPECT_STRNE(qf_status_name(QF_E_CONFIG_PARSE), qf_status_name(QF_E_IO));
}

TEST(CApi, RegistryListing) {
  const size_t n = qf_experiment_count();
  EXPECT_GE(n, 12u);
  std::string previous;
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* doc = nullptr;
    int criterion = 0;
    ASSERT_EQ(qf_experiment_info(i, &name, &criterion, &doc), QF_OK);
    EXPECT_LT(previous, std::string(name));
    EXPECT_GE(criterion, 1);
    EXPECT_LE(criterion, 12);
    previous = name;
  }
  EXPECT_NE(qf_experiment_info(n, nullptr, nullptr, nullptr), QF_OK);
}

TEST(CApi, ConfigErrorsCarryLocation) {
  qf_config* c = nullptr;
  EXPECT_EQ(qf_config_parse("{\n \"experiment\": \"ito-goldens\",\n \"seeed\": 1}", &c), QF_E_CONFIG_PARSE);
  EXPECT_EQ(c, nullptr);
  int line = 0, column = 0;
  qf_last_error_location(&line, &column);
  EXPECT_EQ(line, 3);
  EXPECT_EQ(column, 2);
  const std::string err = fetch([](char* b, size_t cap, size_t* n) { return qf_last_error_json(b, cap, n); });
  EXPECT_NE(err.find("seeed"), std::string::npos);
  EXPECT_EQ(qf_config_parse(nullptr, &c), QF_E_NULL_ARGUMENT);
  EXPECT_EQ(qf_config_load("/nonexistent.json", &c), QF_E_IO);
}

TEST(CApi, RunInMemory) {
  qf_config* c = nullptr;
  ASSERT_EQ(qf_config_parse(R"({"experiment": "ito-goldens", "seed": 1})", &c), QF_OK);
  EXPECT_EQ(qf_config_seed(c), 1u);
  EXPECT_EQ(fetch([c](char* b, size_t cap, size_t* n) { return qf_config_experiment(c, b, cap, n); }),
            "ito-goldens");
  qf_run* run = nullptr;
  ASSERT_EQ(qf_run_config(c, nullptr, 0, &run), QF_OK);
  qf_config_free(c);
  EXPECT_EQ(qf_run_pass(run), 1);
  const std::string verdict = fetch([run](char* b, size_t cap, size_t* n) { return qf_run_verdict_json(run, b, cap, n); });
  EXPECT_NE(verdict.find("\"pass\": true"), std::string::npos);
  ASSERT_GE(qf_run_artifact_count(run), 1u);
  const char* name = nullptr;
  const char* bytes = nullptr;
  size_t size = 0;
  ASSERT_EQ(qf_run_artifact(run, 0, &name, &bytes, &size), QF_OK);
  EXPECT_GT(size, 0u);
  qf_run_free(run);
}

TEST(CApi, UnknownExperimentStatus) {
  qf_config* c = nullptr;
  ASSERT_EQ(qf_config_parse(R"({"experiment": "nope", "seed": 1})", &c), QF_OK);
  qf_run* run = nullptr;
  EXPECT_EQ(qf_run_config(c, nullptr, 0, &run), QF_E_EXPERIMENT_UNKNOWN);
  qf_config_free(c);
}

TEST(CApi, ItoSimplifyAndSyntaxError) {
  EXPECT_EQ(fetch([](char* b, size_t cap, size_t* n) { return qf_ito_simplify("dB.dB*", b, cap, n); }), "dt");
  size_t needed = 0;
  EXPECT_EQ(qf_ito_simplify("dB..dB", nullptr, 0, &needed), QF_E_SYNTAX);
  int line = -1, column = -1;
  qf_last_error_location(&line, &column);
  EXPECT_EQ(line, 0);
  EXPECT_EQ(column, 3);
  const std::string table = fetch([](char* b, size_t cap, size_t* n) { return qf_ito_table(b, cap, n); });
  EXPECT_NE(table.find("dB*"), std::string::npos);
}

TEST(CApi, ModelGenerators) {
  qf_model* m = nullptr;
  ASSERT_EQ(qf_model_from_json(R"({"dim": 2, "L": "sigma_minus", "H": "zero"})", &m), QF_OK);
  EXPECT_EQ(qf_model_dim(m), 2u);
  // rho = |e><e| (basis index 1): L* rho = |g><g| - |e><e|.
  const double rho[8] = {0, 0, 0, 0, 0, 0, 1, 0};
  double out[8] = {};
  ASSERT_EQ(qf_model_master(m, rho, out), QF_OK);
  const double expected[8] = {1, 0, 0, 0, 0, 0, -1, 0};
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(out[i], expected[i], 1e-15);
  // X = |e><e|: L X = -X.
  ASSERT_EQ(qf_model_lindblad(m, rho, out), QF_OK);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(out[i], -rho[i], 1e-15);
  qf_model_free(m);
  EXPECT_EQ(qf_model_from_json(R"({"dim": 2, "L": "sigma_minus", "H": "pauli_q"})", &m), QF_E_INVALID_ARGUMENT);
}

TEST(CApi, AcceptanceSingleCriterion) {
  qf_acceptance* r = nullptr;
  ASSERT_EQ(qf_acceptance_run(R"({"only": "ito-goldens"})", nullptr, nullptr, nullptr, &r), QF_OK);
  EXPECT_EQ(qf_acceptance_pass(r), 1);
  ASSERT_EQ(qf_acceptance_line_count(r), 1u);
  int criterion = 0, pass = 0;
  size_t needed = 0;
  EXPECT_EQ(qf_acceptance_line(r, 0, &criterion, &pass, nullptr, 0, &needed), QF_E_BUFFER_TOO_SMALL);
  EXPECT_EQ(criterion, 4);
  EXPECT_EQ(pass, 1);
  qf_acceptance_free(r);
  EXPECT_EQ(qf_acceptance_run(R"({"bogus": 1})", nullptr, nullptr, nullptr, &r), QF_E_CONFIG_PARSE);
}

}  // namespace
