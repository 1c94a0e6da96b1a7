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

#include "phasetomo/io.h"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace phasetomo {

namespace {

using nlohmann::json;

json parse(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw IoError(what + ": invalid JSON: " + e.what());
    }
}

std::string dump(const json &j) {
    return j.dump(1) + "\n";
}

std::vector<double> doubles(const json &j, const char *key) {
    if (!j.contains(key)) {
        return {};
    }
    return j.at(key).get<std::vector<double>>();
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

std::string density_to_json(const DensityMatrix &rho) {
    json re = json::array();
    json im = json::array();
    for (int m = 0; m < rho.dim(); ++m) {
        json rr = json::array();
        json ii = json::array();
        for (int n = 0; n < rho.dim(); ++n) {
            rr.push_back(rho(m, n).real());
            ii.push_back(rho(m, n).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return dump(json{{"dim", rho.dim()}, {"re", re}, {"im", im}});
}

DensityMatrix density_from_json(const std::string &text) {
    const json j = parse(text, "density matrix");
    try {
        const int dim = j.at("dim").get<int>();
        if (dim < 1) {
            throw IoError("density matrix: dim must be at least 1");
        }
        const auto re = j.at("re").get<std::vector<std::vector<double>>>();
        std::vector<std::vector<double>> im;
        if (j.contains("im")) {
            im = j.at("im").get<std::vector<std::vector<double>>>();
        } else {
            im.assign(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
        }
        if (static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim) {
            throw IoError("density matrix: row count does not match dim");
        }
        ComplexMatrix m(dim, dim);
        for (int a = 0; a < dim; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            if (static_cast<int>(re[ua].size()) != dim || static_cast<int>(im[ua].size()) != dim) {
                throw IoError("density matrix: row length does not match dim");
            }
            for (int b = 0; b < dim; ++b) {
                m(a, b) = {re[ua][static_cast<std::size_t>(b)], im[ua][static_cast<std::size_t>(b)]};
            }
        }
        return DensityMatrix(std::move(m));
    } catch (const json::exception &e) {
        throw IoError(std::string("density matrix: ") + e.what());
    }
}

void write_density(const std::string &path, const DensityMatrix &rho) {
    write_text(path, density_to_json(rho));
}

DensityMatrix read_density(const std::string &path) {
    return density_from_json(read_text(path));
}

std::string tomogram_to_json(const Tomogram &t) {
    json profiles = json::array();
    for (const auto &[key, p] : t.profiles()) {
        json e;
        e["s"] = p.s;
        e["l"] = p.l;
        e["kind"] = p.kind == ProfileKind::analytic ? "analytic" : "sampled";
        e["radii"] = p.radii;
        std::vector<double> re, im;
        for (const auto &v : p.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
        }
        e["re"] = re;
        e["im"] = im;
        e["stderr"] = p.std_error;
        if (p.kind == ProfileKind::sampled) {
            e["bin_lo"] = p.bin_lo;
            e["bin_hi"] = p.bin_hi;
        }
        profiles.push_back(e);
    }
    return dump(json{{"dim_hint", t.dim_hint()}, {"profiles", profiles}});
}

Tomogram tomogram_from_json(const std::string &text) {
    const json j = parse(text, "tomogram");
    try {
        Tomogram t(j.at("dim_hint").get<int>());
        for (const json &e : j.at("profiles")) {
            RadialProfile p;
            p.s = e.at("s").get<int>();
            p.l = e.at("l").get<int>();
            const std::string kind = e.at("kind").get<std::string>();
            if (kind == "analytic") {
                p.kind = ProfileKind::analytic;
            } else if (kind == "sampled") {
                p.kind = ProfileKind::sampled;
            } else {
                throw IoError("tomogram: unknown profile kind '" + kind + "'");
            }
            p.radii = doubles(e, "radii");
            const auto re = doubles(e, "re");
            auto im = doubles(e, "im");
            if (im.empty()) {
                im.assign(re.size(), 0.0);
            }
            if (re.size() != im.size()) {
                throw IoError("tomogram: re and im differ in length");
            }
            for (std::size_t i = 0; i < re.size(); ++i) {
                p.values.emplace_back(re[i], im[i]);
            }
            p.std_error = doubles(e, "stderr");
            p.bin_lo = doubles(e, "bin_lo");
            p.bin_hi = doubles(e, "bin_hi");
            t.add(std::move(p));
        }
        return t;
    } catch (const json::exception &e) {
        throw IoError(std::string("tomogram: ") + e.what());
    }
}

void write_tomogram(const std::string &path, const Tomogram &t) {
    write_text(path, tomogram_to_json(t));
}

Tomogram read_tomogram(const std::string &path) {
    return tomogram_from_json(read_text(path));
}

std::string sidecar_path(const std::string &csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

void write_samples(const std::string &csv_path, const SampleSet &samples) {
    std::string text = "r,theta\n";
    text.reserve(samples.points.size() * 40 + 8);
    for (const PhasePoint &z : samples.points) {
        text += format_double(z.r());
        text += ',';
        text += format_double(z.theta());
        text += '\n';
    }
    write_text(csv_path, text);
    json meta{{"s", samples.s},
              {"count", samples.count},
              {"seed", samples.seed},
              {"r_max", samples.r_max},
              {"truncated_mass", samples.truncated_mass}};
    write_text(sidecar_path(csv_path), dump(meta));
}

SampleSet read_samples(const std::string &csv_path) {
    const json meta = parse(read_text(sidecar_path(csv_path)), "samples sidecar");
    SampleSet out;
    try {
        out.s = meta.at("s").get<int>();
        out.count = meta.at("count").get<std::int64_t>();
        out.seed = meta.at("seed").get<std::uint64_t>();
        out.r_max = meta.at("r_max").get<double>();
        out.truncated_mass = meta.at("truncated_mass").get<double>();
    } catch (const json::exception &e) {
        throw IoError(std::string("samples sidecar: ") + e.what());
    }
    out.truncation_warning = out.truncated_mass > 0.01;
    std::ifstream in(csv_path);
    if (!in) {
        throw IoError("cannot open " + csv_path);
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,theta", 0) != 0) {
        throw IoError(csv_path + ": missing header 'r,theta'");
    }
    out.points.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, out.count)));
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        double r = 0.0;
        double theta = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &r, &theta) != 2) {
            throw IoError(csv_path + ": malformed row " + std::to_string(row));
        }
        try {
            out.points.emplace_back(r, theta);
        } catch (const DomainError &e) {
            throw IoError(csv_path + ": row " + std::to_string(row) + ": " + e.what());
        }
    }
    if (static_cast<std::int64_t>(out.points.size()) != out.count) {
        throw IoError(csv_path + ": sidecar count " + std::to_string(out.count) + " but " +
                      std::to_string(out.points.size()) + " rows");
    }
    return out;
}

}  // namespace phasetomo
