// Copyright 2026 The phasetomo Authors
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

// Command-line driver. Exit codes: 0 success, 1 usage / I/O / domain errors,
// 2 validation, 3 coverage, 4 estimation or fit, 5 singular system.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "phasetomo/pipeline.h"

namespace {

using namespace phasetomo;

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ValidationError *>(&e)) {
        return 2;
    }
    if (dynamic_cast<const CoverageError *>(&e)) {
        return 3;
    }
    if (dynamic_cast<const EstimationError *>(&e)) {
        return 4;
    }
    if (dynamic_cast<const SingularSystemError *>(&e)) {
        return 5;
    }
    return 1;
}

void print_report(const RunReport &report) {
    if (report.max_error) {
        std::printf("max |rho_hat - rho| = %.3e\n", *report.max_error);
    }
    for (const Gate &g : report.gates) {
        std::printf("gate %s: %s (value %.3e, limit %.3e)\n", g.name.c_str(), g.passed ? "PASS" : "FAIL", g.value,
                    g.limit);
    }
    if (report.validation && !report.validation->passed()) {
        std::printf("validation: %s\n", report.validation->summary().c_str());
    }
    for (const std::string &w : report.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Density matrix reconstruction from displaced photon number distributions"};
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string sim_mode = "analytic";
    auto *simulate = app.add_subcommand("simulate", "Write analytic profiles or samples for a state");
    simulate->add_option("--state", sim.state, "Density matrix JSON")->required();
    simulate->add_option("--s", sim.s_list, "Observable indices (default 0..dim-1)");
    simulate->add_option("--mode", sim_mode, "analytic | samples");
    simulate->add_option("--count", sim.count, "Samples per observable");
    simulate->add_option("--seed", sim.seed, "Base seed");
    simulate->add_option("--rmax", sim.r_max, "Sampling disk radius");
    simulate->add_option("--out", sim.out, "Tomogram JSON, or prefix for <out>_s<k>.csv")->required();

    EstimateOptions est;
    std::optional<int> est_degree;
    auto *estimate = app.add_subcommand("estimate", "Estimate radial profiles from sample files");
    estimate->add_option("--samples", est.samples, "Sample CSV files (sidecar JSON alongside)")->required();
    estimate->add_option("--dim", est.dim, "Assumed matrix size")->required();
    estimate->add_option("--bins", est.cfg.radial_bins, "Radial bins");
    estimate->add_option("--rfit", est.cfg.r_fit_max, "Largest radius used");
    estimate->add_option("--min-count", est.cfg.min_count_per_bin, "Smallest bin count kept");
    estimate->add_option("--out", est.out, "Tomogram JSON")->required();
    estimate->add_option("--report", est.report, "Run report JSON");

    ReconstructOptions rec;
    std::string rec_method = "tomogram";
    auto *reconstruct = app.add_subcommand("reconstruct", "Reconstruct a density matrix from a tomogram");
    reconstruct->add_option("--input", rec.input, "Tomogram JSON")->required();
    reconstruct->add_option("--method", rec_method, "tomogram | single");
    reconstruct->add_option("--s", rec.s, "Observable index for method single");
    reconstruct->add_option("--degree", rec.poly_degree, "Degree of the auxiliary polynomial (default exact)");
    reconstruct->add_option("--state", rec.reference, "Reference state for error reporting");
    reconstruct->add_option("--out", rec.out, "Density matrix JSON")->required();
    reconstruct->add_option("--report", rec.report, "Run report JSON");

    RoundtripOptions rt;
    std::string rt_method = "tomogram";
    std::string rt_mode = "analytic";
    auto *roundtrip = app.add_subcommand("roundtrip", "Simulate, reconstruct and compare");
    roundtrip->add_option("--dim", rt.dim, "Size of the random state");
    roundtrip->add_option("--seed", rt.seed, "Seed for the state and the samples");
    roundtrip->add_option("--state", rt.state, "Use this state instead of a random one");
    roundtrip->add_option("--method", rt_method, "tomogram | single");
    roundtrip->add_option("--s", rt.s, "Observable index for method single (default 0)");
    roundtrip->add_option("--mode", rt_mode, "analytic | samples");
    roundtrip->add_option("--count", rt.count, "Samples per observable");
    roundtrip->add_option("--bins", rt.cfg.radial_bins, "Radial bins");
    roundtrip->add_option("--rmax", rt.r_max, "Sampling disk radius");
    roundtrip->add_option("--report", rt.report, "Run report JSON");

    std::string val_state;
    auto *validate_cmd = app.add_subcommand("validate", "Check Hermiticity, trace and positivity of a state");
    validate_cmd->add_option("--state", val_state, "Density matrix JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*simulate) {
            sim.mode = parse_mode(sim_mode);
            for (const std::string &path : simulate_command(sim)) {
                std::printf("wrote %s\n", path.c_str());
            }
        } else if (*estimate) {
            const RunReport r = estimate_command(est);
            std::printf("wrote %s\n", est.out.c_str());
            print_report(r);
        } else if (*reconstruct) {
            rec.method = parse_method(rec_method);
            const RunReport r = reconstruct_command(rec);
            std::printf("wrote %s\n", rec.out.c_str());
            print_report(r);
        } else if (*roundtrip) {
            rt.method = parse_method(rt_method);
            rt.mode = parse_mode(rt_mode);
            const RunReport r = roundtrip_command(rt);
            print_report(r);
            std::printf("roundtrip %s\n", r.passed() ? "PASS" : "FAIL");
        } else if (*validate_cmd) {
            const ValidationReport v = validate_command(val_state);
            std::printf("%s\n", v.summary().c_str());
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return 0;
}
