// Copyright 2026 The ctxinc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctxinc/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace ctxinc;
using namespace ctxinc::cli;

namespace {

const std::string kDir = CTXINC_SCENARIO_DIR;

std::vector<std::string> lines_of(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<double> fields(const std::string &line) {
    std::vector<double> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) out.push_back(std::stod(f));
    return out;
}

}  // namespace

TEST(Cli, fixed6_formatting) {
    EXPECT_EQ(fixed6(std::log(2.0) / 2), "0.346574");
    EXPECT_EQ(fixed6(-1e-17), "0.000000");
    EXPECT_EQ(fixed6(-0.5), "-0.500000");
}

TEST(Cli, example1_text) {
    const auto r = cmd_example1({});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("new_avg = 0.346574\n"), std::string::npos);
    EXPECT_NE(r.out.find("old_avg = 0.000000\n"), std::string::npos);
    EXPECT_NE(r.out.find("sigma_z  sigma_x  0.000000   0.693147"), std::string::npos);
}

TEST(Cli, example1_json_and_bits) {
    const auto j = json::parse(cmd_example1({true, false}).out);
    EXPECT_EQ(j["new_avg"].get<double>(), 0.346574);
    EXPECT_EQ(j["old_avg"].get<double>(), 0.0);
    EXPECT_EQ(j["contexts"].size(), 4u);
    const auto b = json::parse(cmd_example1({true, true}).out);
    EXPECT_EQ(b["new_avg"].get<double>(), 0.5);
    EXPECT_EQ(b["units"], "bits");
    EXPECT_NE(cmd_example1({false, true}).out.find("new_avg = 0.500000"), std::string::npos);
}

TEST(Cli, example2_csv) {
    const auto r = cmd_example2({});
    ASSERT_EQ(r.status, 0);
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 102u);
    EXPECT_EQ(lines[0], kExample2Header);
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
    double previous = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = fields(lines[i]);
        ASSERT_EQ(f.size(), 9u);
        EXPECT_GE(f[5], previous);
        previous = f[5];
    }
    const auto last = fields(lines.back());
    EXPECT_EQ(last[0], 1.0);
    EXPECT_NEAR(last[5], 0.562335, 1e-6);
    EXPECT_EQ(last[6], 1.0);
    EXPECT_NE(r.err.find("p* = 0.548584"), std::string::npos);
}

TEST(Cli, example2_writes_file) {
    const auto path = (std::filesystem::temp_directory_path() / "ctxinc_cli_test.csv").string();
    Example2Options opt;
    opt.out_path = path;
    opt.p_steps = 11;
    const auto r = cmd_example2(opt);
    ASSERT_EQ(r.status, 0);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    opt.out_path.clear();
    EXPECT_EQ(buf.str(), cmd_example2(opt).out);
    EXPECT_NE(r.out.find("rows: 11"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, example2_usage_errors) {
    Example2Options opt;
    opt.p_min = 0.4;
    auto r = cmd_example2(opt);
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("usage error"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    opt = {};
    opt.p_max = 1.5;
    EXPECT_EQ(cmd_example2(opt).status, kExitUsage);
    opt = {};
    opt.basis = "w";
    EXPECT_EQ(cmd_example2(opt).status, kExitUsage);
    opt = {};
    opt.p_steps = 0;
    EXPECT_EQ(cmd_example2(opt).status, kExitUsage);
}

TEST(Cli, run_reports) {
    auto r = cmd_run({kDir + "/example1.json", false, false});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("ipc_modified = 0.693147\n"), std::string::npos);
    r = cmd_run({kDir + "/negativity-witness.json", false, false});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("old_ipc_generalized = -0.693147\n"), std::string::npos);
    EXPECT_NE(r.out.find("note: "), std::string::npos);
    const auto j = json::parse(cmd_run({kDir + "/example1.json", true, true}).out);
    EXPECT_EQ(j["values"]["ipc_modified"].get<double>(), 1.0);
}

TEST(Cli, run_parse_error_is_nonzero) {
    const auto path = (std::filesystem::temp_directory_path() / "ctxinc_bad.json").string();
    std::ofstream(path) << "{\n  \"outputs\": [\n    \"leak\"\n  ]\n  \"state\": 1\n}\n";
    const auto r = cmd_run({path, false, false});
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("line 5, column 3"), std::string::npos) << r.err;
    std::filesystem::remove(path);
    EXPECT_EQ(cmd_run({"/nonexistent/file.json", false, false}).status, kExitUsage);
}

TEST(Cli, verify_filter_and_smoke) {
    auto r = cmd_verify({0, 1, "data-processing"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("data-processing"), std::string::npos);
    EXPECT_EQ(r.out.find("naimark"), std::string::npos);
    r = cmd_verify({0, 1, "all"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("all suites passed"), std::string::npos);
    EXPECT_EQ(cmd_verify({0, 1, "bogus"}).status, kExitUsage);
}

TEST(Cli, outputs_are_byte_identical_across_runs) {
    EXPECT_EQ(cmd_example1({}).out, cmd_example1({}).out);
    EXPECT_EQ(cmd_example2({}).out, cmd_example2({}).out);
    EXPECT_EQ(cmd_run({kDir + "/example2.json", false, false}).out,
              cmd_run({kDir + "/example2.json", false, false}).out);
    EXPECT_EQ(cmd_verify({5, 20, "all"}).out, cmd_verify({5, 20, "all"}).out);
}
