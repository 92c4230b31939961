#include "crnbound/cli.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using crn::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("crnbound-cli-" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("analyze the reversible pair") {
  TempDir dir;
  const auto f = dir.write("pair.crn", "# name: pair\nA <-> B\n");
  const auto r = call({"analyze", f.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("linkage classes: 1") != std::string::npos);
  CHECK(r.out.find("weakly reversible: yes") != std::string::npos);
  CHECK(r.out.find("stoichiometric dimension: 1") != std::string::npos);
  CHECK(r.out.find("(1, 1)") != std::string::npos);

  const auto j = call({"analyze", f.string(), "--format", "json"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("linkage_classes").size() == 1);
  CHECK(doc.at("weakly_reversible") == true);
  CHECK(doc.at("stoichiometric_dimension") == 1);
}

TEST_CASE("analyze a single irreversible reaction") {
  TempDir dir;
  const auto f = dir.write("r.crn", "2 S1 + S2 -> S3 | k=1\n");
  const auto r = call({"analyze", f.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("weakly reversible: no") != std::string::npos);
}

TEST_CASE("input errors map to exit codes") {
  TempDir dir;
  CHECK(call({"analyze", (dir.path() / "missing.crn").string()}).code == crn::cli::kParseError);
  const auto bad = dir.write("bad.crn", "A -> -1 B\n");
  const auto r = call({"analyze", bad.string()});
  CHECK(r.code == crn::cli::kParseError);
  CHECK(r.err.find("bad.crn:1:") != std::string::npos);
  const auto invalid = dir.write("invalid.crn", "A -> A\n");
  CHECK(call({"analyze", invalid.string()}).code == crn::cli::kValidationError);
  CHECK(call({"frobnicate"}).code == crn::cli::kParseError);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("simulate writes CSV and summary") {
  TempDir dir;
  const auto f = dir.write("pair.crn", "S1 <-> S2\n");
  const auto out = dir.path() / "nested" / "run";
  const auto r = call({"simulate", f.string(), "--x0", "2,0.5", "--t-end", "20", "--out", out.string()});
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(out / "trajectory.csv"));
  REQUIRE(fs::exists(out / "summary.json"));

  std::istringstream csv(slurp(out / "trajectory.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,x1,x2,V1,descent");
  // V1 is non-increasing along the closed-form relaxation
  double prev = 1e300;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 5);
    CHECK(cols[3] <= prev + 1e-12);
    prev = cols[3];
    ++rows;
  }
  CHECK(rows > 100);
  const auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(std::abs(summary.at("final_state")[0].get<double>() - 1.25) < 1e-4);
}

TEST_CASE("simulate rejects bad initial states") {
  TempDir dir;
  const auto f = dir.write("pair.crn", "S1 <-> S2\n");
  CHECK(call({"simulate", f.string(), "--x0", "1,0"}).code == crn::cli::kValidationError);
  CHECK(call({"simulate", f.string(), "--x0", "1"}).code == crn::cli::kValidationError);
  CHECK(call({"simulate", f.string(), "--x0", "1,x"}).code == crn::cli::kValidationError);
}

TEST_CASE("certify exit codes and determinism") {
  TempDir dir;
  const auto pair = dir.write("pair.crn", "S1 <-> S2\n");
  const auto a = call({"certify", pair.string(), "--trials", "3", "--samples", "1000"});
  CHECK(a.code == crn::cli::kOk);
  const auto b = call({"certify", pair.string(), "--trials", "3", "--samples", "1000"});
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc.at("schema") == "crn-bound/report/v1");
  CHECK(doc.at("conclusion") == "CertifiedHypotheses+EmpiricallyBounded");

  const auto two = dir.write("two.crn", "A <-> B\nC <-> D\n");
  CHECK(call({"certify", two.string(), "--trials", "2", "--samples", "500"}).code == crn::cli::kHypothesesFail);

  const auto perm = call({"certify", pair.string(), "--trials", "2", "--samples", "500", "--permanence-delta",
                          "0.1", "--x0", "2,0.5"});
  CHECK(perm.code == crn::cli::kOk);
  CHECK(nlohmann::json::parse(perm.out).at("permanence").at("schema") == "crn-bound/permanence/v1");
  CHECK(call({"certify", pair.string(), "--permanence-delta", "0"}).code == crn::cli::kValidationError);
}

TEST_CASE("campaign runs and aggregates") {
  TempDir dir;
  const auto a = call({"campaign", "--random-spec", R"({"N": [2, 3], "num_complexes": [2, 4]})", "--count", "2",
                       "--trials", "1", "--samples", "300", "--t-end", "5"});
  REQUIRE(a.code == 0);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc.at("schema") == "crn-bound/campaign/v1");
  CHECK(doc.at("aggregate").at("networks") == 2);
  CHECK(doc.at("aggregate").at("hypotheses_certified") == 2);

  const auto empty = call({"campaign", "--count", "0"});
  CHECK(empty.code == 0);
  CHECK(nlohmann::json::parse(empty.out).at("aggregate").at("networks") == 0);

  CHECK(call({"campaign", "--random-spec", "{\"N\": [4, 1]}"}).code == crn::cli::kParseError);
  const auto spec = dir.write("spec.json", R"({"N": 2, "num_complexes": 3})");
  CHECK(call({"campaign", "--random-spec", spec.string(), "--count", "1", "--trials", "1", "--samples", "200",
              "--t-end", "5"})
            .code == 0);
}

TEST_CASE("installed executable runs") {
  TempDir dir;
  const auto f = dir.write("pair.crn", "A <-> B\n");
  const std::string cmd = std::string(CRN_BOUND_EXE) + " analyze " + f.string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  const std::string missing = std::string(CRN_BOUND_EXE) + " analyze " + (dir.path() / "nope.crn").string() +
                              " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(missing.c_str())) == 1);
}
