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

#include "phasetomo/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "phasetomo/io.h"
#include "phasetomo/recon_single.h"

namespace phasetomo {

namespace {

class Stopwatch {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

DensityMatrix load_valid_state(const std::string &path, RunReport *report) {
    DensityMatrix rho = read_density(path);
    if (report != nullptr) {
        report->input_sha256[path] = sha256_file(path);
    }
    const ValidationReport v = validate(rho);
    if (!v.passed()) {
        throw ValidationError(path + ": " + v.summary());
    }
    return rho;
}

void check_s_list(std::span<const int> s_list) {
    for (int s : s_list) {
        if (s < 0) {
            throw DomainError("s must be nonnegative");
        }
    }
}

}  // namespace

Method parse_method(const std::string &name) {
    if (name == "tomogram") {
        return Method::tomogram;
    }
    if (name == "single") {
        return Method::single;
    }
    throw DomainError("unknown method '" + name + "' (expected tomogram or single)");
}

Mode parse_mode(const std::string &name) {
    if (name == "analytic") {
        return Mode::analytic;
    }
    if (name == "samples") {
        return Mode::samples;
    }
    throw DomainError("unknown mode '" + name + "' (expected analytic or samples)");
}

std::string to_string(Method m) {
    return m == Method::tomogram ? "tomogram" : "single";
}

std::vector<double> analytic_radius_grid(int dim, int s_max) {
    const int n = std::max(48, 6 * (dim + s_max));
    const double x_max = 6.25;
    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = 0.5 * x_max * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / n));
        radii.push_back(std::sqrt(x));
    }
    return radii;
}

std::uint64_t derived_seed(std::uint64_t seed, int s) {
    return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s + 1));
}

std::vector<int> full_s_list(int dim) {
    std::vector<int> out;
    for (int s = 0; s < dim; ++s) {
        out.push_back(s);
    }
    return out;
}

Tomogram simulate_tomogram(const DensityMatrix &rho, std::span<const int> s_list) {
    check_s_list(s_list);
    const int dim = rho.dim();
    int s_max = 0;
    for (int s : s_list) {
        s_max = std::max(s_max, s);
    }
    const std::vector<double> radii = analytic_radius_grid(dim, s_max);
    Tomogram t(dim);
    for (int s : s_list) {
        for (int l = 0; l < dim; ++l) {
            t.add(fourier_component(s, rho, l, radii));
        }
    }
    return t;
}

std::vector<SampleSet> simulate_samples(const DensityMatrix &rho, std::span<const int> s_list, std::int64_t count,
                                        std::uint64_t seed, std::optional<double> r_max) {
    check_s_list(s_list);
    std::vector<SampleSet> out;
    for (int s : s_list) {
        const double radius = r_max ? *r_max : default_r_max(rho.dim(), s);
        out.push_back(sample(s, rho, count, derived_seed(seed, s), radius));
    }
    return out;
}

Tomogram estimate_tomogram(std::span<const SampleSet> samples, int dim, const EstimationConfig &cfg,
                           std::vector<std::string> *warnings) {
    if (dim < 1) {
        throw DomainError("estimate_tomogram: dim must be at least 1");
    }
    Tomogram t(dim);
    for (const SampleSet &set : samples) {
        if (set.truncation_warning && warnings != nullptr) {
            warnings->push_back("samples for s=" + std::to_string(set.s) + " miss probability mass " +
                                std::to_string(set.truncated_mass) + " outside r_max");
        }
        for (int l = 0; l < dim; ++l) {
            EstimateStats stats;
            t.add(estimate_profile(set, l, cfg, &stats));
            if (stats.bins_dropped > 0 && l == 0 && warnings != nullptr) {
                warnings->push_back("s=" + std::to_string(set.s) + ": " + std::to_string(stats.bins_dropped) +
                                    " radial bins below min_count_per_bin were dropped");
            }
        }
    }
    return t;
}

ReconstructionResult run_reconstruction(const Tomogram &t, Method method, std::optional<int> s,
                                        std::optional<int> p_degree) {
    if (method == Method::tomogram) {
        return reconstruct_tomogram(t, p_degree);
    }
    if (!s) {
        std::set<int> seen;
        for (const auto &[key, p] : t.profiles()) {
            seen.insert(key.first);
        }
        if (seen.size() != 1) {
            throw CoverageError("method single needs --s when the input holds " + std::to_string(seen.size()) +
                                " values of s");
        }
        s = *seen.begin();
    }
    return reconstruct_single(t, *s, p_degree);
}

void summarize(const ReconstructionResult &result, const DensityMatrix *reference, RunReport &report) {
    report.dim = result.rho.dim();
    report.bands = result.bands;
    report.validation = result.validation;
    for (const std::string &w : result.warnings) {
        report.warnings.push_back(w);
    }
    report.diagonal_std_error.clear();
    report.diagonal_error_bound.clear();
    for (int n = 0; n < result.rho.dim(); ++n) {
        report.diagonal_std_error.push_back(result.std_error(n, n));
        report.diagonal_error_bound.push_back(kErrorBoundSigmas * result.std_error(n, n));
    }
    if (reference != nullptr) {
        if (reference->dim() != result.rho.dim()) {
            throw DomainError("reference state has dimension " + std::to_string(reference->dim()) +
                              ", reconstruction has " + std::to_string(result.rho.dim()));
        }
        report.max_error = max_abs_difference(result.rho, *reference);
        report.diagonal_error.clear();
        for (int n = 0; n < result.rho.dim(); ++n) {
            report.diagonal_error.push_back(std::abs(result.rho(n, n) - (*reference)(n, n)));
        }
    }
}

std::vector<std::string> simulate_command(const SimulateOptions &opt) {
    const DensityMatrix rho = load_valid_state(opt.state, nullptr);
    const std::vector<int> s_list = opt.s_list.empty() ? full_s_list(rho.dim()) : opt.s_list;
    std::vector<std::string> written;
    if (opt.mode == Mode::analytic) {
        write_tomogram(opt.out, simulate_tomogram(rho, s_list));
        written.push_back(opt.out);
        return written;
    }
    for (const SampleSet &set : simulate_samples(rho, s_list, opt.count, opt.seed, opt.r_max)) {
        const std::string path = opt.out + "_s" + std::to_string(set.s) + ".csv";
        write_samples(path, set);
        written.push_back(path);
        written.push_back(sidecar_path(path));
    }
    return written;
}

RunReport estimate_command(const EstimateOptions &opt) {
    Stopwatch clock;
    RunReport report;
    report.command = "estimate";
    report.dim = opt.dim;
    std::vector<SampleSet> sets;
    for (const std::string &path : opt.samples) {
        report.input_sha256[path] = sha256_file(path);
        report.input_sha256[sidecar_path(path)] = sha256_file(sidecar_path(path));
        sets.push_back(read_samples(path));
        report.truncated_mass = std::max(report.truncated_mass, sets.back().truncated_mass);
    }
    const Tomogram t = estimate_tomogram(sets, opt.dim, opt.cfg, &report.warnings);
    write_tomogram(opt.out, t);
    report.timing_seconds = clock.seconds();
    if (!opt.report.empty()) {
        write_text(opt.report, report.to_json());
    }
    return report;
}

RunReport reconstruct_command(const ReconstructOptions &opt) {
    Stopwatch clock;
    RunReport report;
    report.command = "reconstruct";
    report.method = to_string(opt.method);
    report.s = opt.s;
    report.input_sha256[opt.input] = sha256_file(opt.input);
    const Tomogram t = read_tomogram(opt.input);
    const ReconstructionResult result = run_reconstruction(t, opt.method, opt.s, opt.poly_degree);
    std::optional<DensityMatrix> reference;
    if (!opt.reference.empty()) {
        reference = read_density(opt.reference);
        report.input_sha256[opt.reference] = sha256_file(opt.reference);
    }
    summarize(result, reference ? &*reference : nullptr, report);
    if (!opt.out.empty()) {
        write_density(opt.out, result.rho);
    }
    report.timing_seconds = clock.seconds();
    if (!opt.report.empty()) {
        write_text(opt.report, report.to_json());
    }
    return report;
}

RunReport roundtrip_command(const RoundtripOptions &opt) {
    Stopwatch clock;
    RunReport report;
    report.command = "roundtrip";
    report.method = to_string(opt.method);
    DensityMatrix rho;
    if (!opt.state.empty()) {
        rho = load_valid_state(opt.state, &report);
    } else {
        rho = random_density_matrix(opt.dim, opt.dim, opt.seed);
    }
    const int dim = rho.dim();
    std::vector<int> s_list;
    if (opt.method == Method::tomogram) {
        s_list = full_s_list(dim);
    } else {
        report.s = opt.s.value_or(0);
        s_list = {*report.s};
    }

    Tomogram t(dim);
    if (opt.mode == Mode::analytic) {
        t = simulate_tomogram(rho, s_list);
    } else {
        const std::vector<SampleSet> sets = simulate_samples(rho, s_list, opt.count, opt.seed, opt.r_max);
        for (const SampleSet &set : sets) {
            report.truncated_mass = std::max(report.truncated_mass, set.truncated_mass);
        }
        t = estimate_tomogram(sets, dim, opt.cfg, &report.warnings);
    }
    const ReconstructionResult result = run_reconstruction(t, opt.method, report.s, opt.cfg.poly_degree);
    summarize(result, &rho, report);

    if (opt.mode == Mode::analytic) {
        report.gates.push_back({"max_error", *report.max_error <= kAnalyticGate, *report.max_error, kAnalyticGate});
    } else {
        double worst = 0.0;
        for (int n = 0; n < dim; ++n) {
            const double sigma = report.diagonal_std_error[static_cast<std::size_t>(n)];
            const double ratio = sigma > 0.0 ? report.diagonal_error[static_cast<std::size_t>(n)] / sigma
                                             : std::numeric_limits<double>::infinity();
            worst = std::max(worst, ratio);
        }
        report.gates.push_back(
            {"diagonal_within_sigmas", worst <= kStatisticalGateSigmas, worst, kStatisticalGateSigmas});
    }
    report.timing_seconds = clock.seconds();
    if (!opt.report.empty()) {
        write_text(opt.report, report.to_json());
    }
    return report;
}

ValidationReport validate_command(const std::string &state) {
    const DensityMatrix rho = read_density(state);
    const ValidationReport v = validate(rho);
    if (!v.passed()) {
        throw ValidationError(state + ": " + v.summary());
    }
    return v;
}

}  // namespace phasetomo
