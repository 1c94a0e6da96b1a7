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

#ifndef PHASETOMO_REPORT_H
#define PHASETOMO_REPORT_H

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasetomo/recon_tomogram.h"
#include "phasetomo/states.h"

namespace phasetomo {

struct Gate {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double limit = 0.0;
};

/// Summary of one pipeline run. Every field except timing_seconds is a
/// deterministic function of the inputs and seeds.
struct RunReport {
    std::string command;
    std::map<std::string, std::string> input_sha256;  ///< path -> hex digest
    std::string method;
    std::optional<int> s;
    int dim = 0;
    std::vector<BandDiagnostics> bands;
    std::optional<ValidationReport> validation;
    std::optional<double> max_error;            ///< max |rho_hat - rho| when a reference exists
    std::vector<double> diagonal_error;         ///< |rho_hat_nn - rho_nn|
    std::vector<double> diagonal_std_error;     ///< propagated standard error of rho_hat_nn
    std::vector<double> diagonal_error_bound;   ///< 3 x diagonal_std_error
    std::vector<Gate> gates;
    double truncated_mass = 0.0;                ///< largest over the sample sets used
    double timing_seconds = 0.0;
    std::vector<std::string> warnings;

    bool passed() const;
    std::string to_json() const;
};

/// Factor between propagated standard error and the reported error bound.
constexpr double kErrorBoundSigmas = 3.0;

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string &path);

}  // namespace phasetomo

#endif
