// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include "onebit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace onebit;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "onebit-sim");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "onebit_cli_test";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("rate - reports every method at the operating point") {
  const Run r = run({"rate", "--m", "283", "--k", "10", "--rho-p-db", "10", "--pt-db", "10", "--trials", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("closed_form") != std::string::npos);
  CHECK(r.out.find("35.0127") != std::string::npos);
  CHECK(r.out.find("use_and_forget") != std::string::npos);
  CHECK(r.out.find("conventional") != std::string::npos);
  CHECK(r.out.find("monte_carlo") == std::string::npos);

  const Run mc = run({"rate", "--m", "16", "--k", "4", "--trials", "20"});
  REQUIRE(mc.code == kExitOk);
  CHECK(mc.out.find("(20 trials)") != std::string::npos);
}

TEST_CASE("plan - antenna counts for a per-user target") {
  const Run r = run({"plan", "--target-per-user", "3.5", "--k", "10", "--rho-p-db", "10", "--pt-db", "10"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "one_bit 283\nconventional 115\nratio 2.4609\n");

  const Run missing = run({"plan"});
  CHECK(missing.code == kExitUsageError);
  CHECK(missing.err.find("--target-per-user") != std::string::npos);

  const Run unreachable = run({"plan", "--target-per-user", "1", "--pt-db", "-1000"});
  CHECK(unreachable.code == kExitUsageError);
}

TEST_CASE("parse errors exit with the usage code") {
  CHECK(run({}).code == kExitUsageError);
  CHECK(run({"rate", "--no-such-flag"}).code == kExitUsageError);
  CHECK(run({"bogus"}).code == kExitUsageError);
  CHECK(run({"rate", "--mode", "quantum"}).code == kExitUsageError);
  CHECK(run({"rate", "--k", "0"}).code == kExitUsageError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("rate-vs-power - CSV to stdout is repeatable") {
  const std::vector<std::string> args{"rate-vs-power", "--m", "8,16", "--k", "4", "--pt-db", "0,10",
                                      "--trials", "20", "--seed", "5"};
  const Run a = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out.rfind("# onebit-mimo-sim v1, seed=5\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 6);
  CHECK(run(args).out == a.out);

  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == a.out);
}

TEST_CASE("--out writes the file; failures leave nothing behind") {
  const auto path = scratch("sweep.csv");
  const Run ok = run({"power-scaling", "--m", "16,32", "--out", path.string()});
  REQUIRE(ok.code == kExitOk);
  CHECK(ok.out.empty());
  const std::string first = slurp(path);
  CHECK(first.find("power_scaling_case2") != std::string::npos);
  REQUIRE(run({"power-scaling", "--m", "16,32", "--out", path.string()}).code == kExitOk);
  CHECK(slurp(path) == first);

  const Run bad_path = run({"power-scaling", "--out", "/nonexistent-dir/x.csv"});
  CHECK(bad_path.code == kExitRuntimeError);
  CHECK(bad_path.err.find("/nonexistent-dir/x.csv") != std::string::npos);

  const auto never = scratch("never.csv");
  const Run zero = run({"rate-vs-power", "--trials", "0", "--out", never.string()});
  CHECK(zero.code == kExitUsageError);
  CHECK_FALSE(std::filesystem::exists(never));
}

TEST_CASE("antenna-comparison - crossing note") {
  const Run r = run({"antenna-comparison", "--m", "100,300"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# crossing target_sum_rate=35 one_bit_m=283 conventional_m=115") != std::string::npos);
}

TEST_CASE("--config - file values with command-line override") {
  const auto cfg = scratch("run.ini");
  {
    std::ofstream f(cfg);
    f << "k = 4\nrho-p-db = 5\ntarget-per-user = 2\n";
  }
  const Run from_file = run({"plan", "--config", cfg.string()});
  REQUIRE(from_file.code == kExitOk);
  const Run explicit_flags = run({"plan", "--k", "4", "--rho-p-db", "5", "--target-per-user", "2"});
  CHECK(from_file.out == explicit_flags.out);

  const Run overridden = run({"plan", "--config", cfg.string(), "--k", "10"});
  REQUIRE(overridden.code == kExitOk);
  const Run expected = run({"plan", "--k", "10", "--rho-p-db", "5", "--target-per-user", "2"});
  CHECK(overridden.out == expected.out);
  CHECK(overridden.out != from_file.out);
}
