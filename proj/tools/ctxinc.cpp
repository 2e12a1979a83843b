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

#include <iostream>

#include "CLI11.hpp"
#include "ctxinc/cli/commands.hpp"

namespace {

int emit(const ctxinc::cli::CommandResult &r) {
    std::cout << r.out;
    std::cerr << r.err;
    return r.status;
}

}  // namespace

int main(int argc, char **argv) {
    using namespace ctxinc::cli;

    CLI::App app{"Incompatibility of measurement contexts: examples, scenario runner and property checks"};
    app.require_subcommand(1);

    Example1Options e1;
    auto *example1 = app.add_subcommand("example1", "Random-basis key distribution on I/2");
    example1->add_flag("--json", e1.json, "Print a JSON object");
    example1->add_flag("--bits", e1.bits, "Report bits instead of nats");

    Example2Options e2;
    auto *example2 = app.add_subcommand("example2", "Qubit memory sweep as CSV");
    example2->add_option("--alpha", e2.alpha, "Weight of the first eigenvector of the input state")
        ->capture_default_str();
    example2->add_option("--p-min", e2.p_min, "Smallest mixing parameter (at least 0.5)")->capture_default_str();
    example2->add_option("--p-max", e2.p_max, "Largest mixing parameter")->capture_default_str();
    example2->add_option("--p-steps", e2.p_steps, "Number of grid points")->capture_default_str();
    example2->add_option("--basis", e2.basis, "Eigenbasis of the input state: x, y or z")->capture_default_str();
    example2->add_option("--out", e2.out_path, "CSV path; stdout when omitted");
    example2->add_flag("--bits", e2.bits, "Report entropic columns in bits");

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Evaluate a JSON scenario file");
    run_cmd->add_option("file", run.path, "Scenario file")->required();
    run_cmd->add_flag("--json", run.json, "Print a JSON object");
    run_cmd->add_flag("--bits", run.bits, "Report bits instead of nats");

    VerifyOptions ver;
    auto *verify = app.add_subcommand("verify", "Seeded randomized property suites");
    verify->add_option("--seed", ver.seed, "Base seed")->capture_default_str();
    verify->add_option("--trials", ver.trials, "Trials per suite")->capture_default_str();
    verify->add_option("--suite", ver.suite, "Suite name or 'all'")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*example1) return emit(cmd_example1(e1));
    if (*example2) return emit(cmd_example2(e2));
    if (*run_cmd) return emit(cmd_run(run));
    return emit(cmd_verify(ver));
}
