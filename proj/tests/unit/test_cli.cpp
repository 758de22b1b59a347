#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using namespace nodal_morse::cli;

namespace {

std::string data(const char* name) { return std::string(NODAL_MORSE_TEST_DATA) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze") {
    std::ostringstream out, log;
    CHECK(run_analyze(data("path3_laplacian.json"), 3, out, log) == kPass);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["lambda_n"].get<double>() == doctest::Approx(3.0));
    CHECK(doc["record"]["nu"] == 2);
    CHECK(doc["record"]["defect"] == 0);

    std::ostringstream out2, log2;
    CHECK(run_analyze(data("path3_laplacian.json"), 2, out2, log2) == kHypothesesViolated);
    CHECK(nlohmann::json::parse(out2.str())["vanishing"]["x0"] == 1);

    std::ostringstream out3, log3;
    CHECK(run_analyze(data("two_triangles.json"), 4, out3, log3) == kHypothesesViolated);
    const auto v = nlohmann::json::parse(out3.str())["vanishing"];
    CHECK(v["fd_nullity"] == 2);
    CHECK(v["bound_holds"] == true);
  }

  TEST_CASE("analyze input errors") {
    std::ostringstream out, log;
    CHECK(run_analyze(data("malformed.json"), 1, out, log) == kInputError);
    CHECK(log.str().find("line") != std::string::npos);
    CHECK(run_analyze(data("positive_weight.json"), 1, out, log) == kInputError);
    CHECK(run_analyze(data("missing.json"), 1, out, log) == kInputError);
    CHECK(run_analyze(data("path3_laplacian.json"), 0, out, log) == kInputError);
    CHECK(out.str().empty());
  }

  TEST_CASE("verify") {
    std::ostringstream out, log;
    VerifyArgs args{10, 3, 0, 1, true, 1};
    CHECK(run_verify(args, out, log) == kPass);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["summary"]["failures"] == 0);
    CHECK(doc["instances"].size() == 10);
    CHECK(doc["failures"].empty());

    std::ostringstream again, log2;
    args.threads = 3;
    run_verify(args, again, log2);
    CHECK(again.str() == out.str());

    std::ostringstream bad, log3;
    CHECK(run_verify(VerifyArgs{0, 5, 1, 1, false, 1}, bad, log3) == kInputError);
  }

  TEST_CASE("hill") {
    std::ostringstream out, log;
    CHECK(run_hill("cos:1", 2, 5, true, out, log) == kPass);
    CHECK(out.str().rfind("alpha,lambda\n", 0) == 0);
    std::ostringstream json_out, log2;
    CHECK(run_hill("zero", 1, 9, false, json_out, log2) == kPass);
    const auto doc = nlohmann::json::parse(json_out.str());
    CHECK(doc["samples"].size() == 9);
    CHECK(doc["hessian"]["morse_index"] == 0);
    std::ostringstream o3, l3;
    CHECK(run_hill("zero", 2, 9, false, o3, l3) == kHypothesesViolated);
    CHECK(run_hill("cos:", 1, 9, false, o3, l3) == kInputError);
    CHECK(run_hill("cos:1", 0, 9, false, o3, l3) == kInputError);
  }

  TEST_CASE("thread count from the environment") {
    setenv("NODAL_MORSE_THREADS", "3", 1);
    CHECK(thread_count_from_env() == 3);
    setenv("NODAL_MORSE_THREADS", "many", 1);
    CHECK(thread_count_from_env() == 1);
    unsetenv("NODAL_MORSE_THREADS");
    CHECK(thread_count_from_env() == 1);
  }
}
