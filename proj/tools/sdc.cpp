// Copyright 2026 The sdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// sdc <command> <state.json> [flags]

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdc/cli.hpp"

int main(int argc, char **argv) {
    using sdc::cli::CommandOptions;
    using sdc::cli::OutputFormat;

    CLI::App app{"Exact-preparation analysis for superdense coding of quantum states"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::string method = "nelder-mead";
    std::string output = "json";
    std::vector<std::size_t> pair;
    std::string shared;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("state", opt.input, "JSON state file")->required()->check(CLI::ExistingFile);
        sub->add_option("--tol", opt.tol, "predicate tolerance")->capture_default_str();
        sub->add_option("--output", output, "json|text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
    };

    const std::map<std::string, std::string> descriptions = {
        {"analyze", "column Gram report and exact-preparability verdict"},
        {"plan", "column-weight resource, sender operation and Kraus pair"},
        {"baseline", "success probability with the maximally entangled resource"},
        {"bound", "single-overlap lower bound and Y^dagger Y spectrum"},
        {"schmidt", "Schmidt coefficients, bases and entanglement entropy"},
        {"simulate", "Monte-Carlo run of the preparation measurement"},
        {"optimize", "maximise the success probability over resource weights"},
    };
    for (const auto name : sdc::cli::kCommands) {
        const std::string key(name);
        CLI::App *sub = app.add_subcommand(key, descriptions.at(key));
        add_common(sub);
        if (key == "bound") {
            sub->add_option("--pair", pair, "1-based column pair j1,j2")->delimiter(',')->expected(2);
        }
        if (key == "simulate") {
            sub->add_option("--trials", opt.trials, "number of trials")->capture_default_str();
            sub->add_option("--seed", opt.seed, "generator seed")->capture_default_str();
            sub->add_option("--shared", shared, "shared-state JSON file")->check(CLI::ExistingFile);
        }
        if (key == "optimize") {
            sub->add_option("--method", method, "grid|nelder-mead")
                ->check(CLI::IsMember({"grid", "nelder-mead"}))
                ->capture_default_str();
            sub->add_option("--budget", opt.budget, "objective evaluations")->capture_default_str();
        }
        sub->callback([&, key] { opt.command = key; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        // --help exits 0; every other usage problem is an input error.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    opt.method = method == "grid" ? sdc::OptimizerMethod::grid : sdc::OptimizerMethod::nelder_mead;
    opt.output = output == "text" ? OutputFormat::text : OutputFormat::json;
    if (pair.size() == 2) {
        opt.pair = std::make_pair(pair[0], pair[1]);
    }
    if (!shared.empty()) {
        opt.shared = shared;
    }

    const auto result = sdc::cli::dispatch(opt);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
