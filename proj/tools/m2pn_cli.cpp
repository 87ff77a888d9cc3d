/*
 * Copyright 2026 The m2pn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// m2pn: runs or validates a declarative space/check document.
//
//   m2pn run <file> [--grid-scale N] [--trials N] [--seed N]
//   m2pn validate <file>
//
// Exit status: 0 all checks passed, 1 some check failed, 2 the document
// (or the command line) could not be parsed or validated.

#include "m2pn/document.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitInvalid = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw m2pn::DocumentError(m2pn::DocumentError::Kind::Validation,
                                  "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Menger 2-probabilistic normed space checks"};
    app.require_subcommand(1);

    std::string run_path, validate_path;
    m2pn::RunOptions options;
    int grid_scale = 1;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "Execute every check block and print the report");
    run->add_option("file", run_path, "Document to run")->required();
    auto* gs = run->add_option("--grid-scale", grid_scale, "Grid points per octave")
                   ->check(CLI::Range(1, 64));
    auto* tr = run->add_option("--trials", trials, "Override the trial count of axiom checks")
                   ->check(CLI::PositiveNumber);
    auto* sd = run->add_option("--seed", seed, "Override the document seed");

    auto* validate = app.add_subcommand("validate", "Parse and validate without running");
    validate->add_option("file", validate_path, "Document to validate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*validate) {
            const auto doc = m2pn::parse_document(read_file(validate_path));
            std::cout << "VALID checks=" << doc.checks.size() << "\n";
            return 0;
        }
        const auto doc = m2pn::parse_document(read_file(run_path));
        if (*gs)
            options.grid_scale = grid_scale;
        if (*tr)
            options.trials = trials;
        if (*sd)
            options.seed = seed;
        const auto report = m2pn::run(doc, options);
        std::cout << report.text();
        return report.exit_code;
    } catch (const m2pn::DocumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
