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

#ifndef PHASETOMO_PIPELINE_H
#define PHASETOMO_PIPELINE_H

// Simulate / estimate / reconstruct workflows shared by the command-line tool
// and the tests.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasetomo/estimate.h"
#include "phasetomo/recon_tomogram.h"
#include "phasetomo/report.h"

namespace phasetomo {

enum class Method { tomogram, single };
enum class Mode { analytic, samples };

Method parse_method(const std::string &name);
Mode parse_mode(const std::string &name);
std::string to_string(Method m);

/// Radii for analytic profiles: x = r^2 at Chebyshev points of [0, 6.25],
/// max(48, 6 (dim + s_max)) of them.
std::vector<double> analytic_radius_grid(int dim, int s_max);

/// Seed used for the samples of observable s: seed ^ (0x9E3779B97F4A7C15 (s + 1)).
std::uint64_t derived_seed(std::uint64_t seed, int s);

/// s = 0..dim-1.
std::vector<int> full_s_list(int dim);

/// Analytic profiles (s, l) for every s in s_list and l = 0..dim-1.
Tomogram simulate_tomogram(const DensityMatrix &rho, std::span<const int> s_list);

/// One sample set per s, seeded with derived_seed(seed, s). r_max defaults per s.
std::vector<SampleSet> simulate_samples(const DensityMatrix &rho, std::span<const int> s_list, std::int64_t count,
                                        std::uint64_t seed, std::optional<double> r_max = std::nullopt);

/// Profiles (s, l), l = 0..dim-1, estimated from each sample set.
Tomogram estimate_tomogram(std::span<const SampleSet> samples, int dim, const EstimationConfig &cfg,
                           std::vector<std::string> *warnings = nullptr);

/// Method 1 on the whole tomogram, or Method 2 on the profiles of one s. For
/// Method 2 without s the tomogram must hold a single s.
ReconstructionResult run_reconstruction(const Tomogram &t, Method method, std::optional<int> s,
                                        std::optional<int> p_degree = std::nullopt);

/// Fills the reconstruction fields of a report and, given a reference state,
/// the error fields.
void summarize(const ReconstructionResult &result, const DensityMatrix *reference, RunReport &report);

struct SimulateOptions {
    std::string state;
    std::vector<int> s_list;  ///< empty: 0..dim-1
    Mode mode = Mode::analytic;
    std::int64_t count = 100000;
    std::uint64_t seed = 1;
    std::optional<double> r_max;
    std::string out;  ///< tomogram JSON (analytic) or path prefix for <out>_s<k>.csv (samples)
};
/// Returns the files written.
std::vector<std::string> simulate_command(const SimulateOptions &opt);

struct EstimateOptions {
    std::vector<std::string> samples;
    int dim = 0;
    EstimationConfig cfg;
    std::string out;
    std::string report;
};
RunReport estimate_command(const EstimateOptions &opt);

struct ReconstructOptions {
    std::string input;
    Method method = Method::tomogram;
    std::optional<int> s;
    std::optional<int> poly_degree;
    std::string reference;  ///< optional state to compare with
    std::string out;
    std::string report;
};
RunReport reconstruct_command(const ReconstructOptions &opt);

struct RoundtripOptions {
    int dim = 3;
    std::uint64_t seed = 1;
    Method method = Method::tomogram;
    std::optional<int> s;
    Mode mode = Mode::analytic;
    std::int64_t count = 1000000;
    EstimationConfig cfg;
    std::optional<double> r_max;
    std::string state;  ///< optional; a random full-rank state of size dim otherwise
    std::string report;
};
/// Gates: analytic runs need max error <= 1e-9; sampled runs need every
/// diagonal error within 5 propagated standard errors.
RunReport roundtrip_command(const RoundtripOptions &opt);

constexpr double kAnalyticGate = 1e-9;
constexpr double kStatisticalGateSigmas = 5.0;

/// Throws ValidationError with the report summary if the state is invalid.
ValidationReport validate_command(const std::string &state);

}  // namespace phasetomo

#endif
