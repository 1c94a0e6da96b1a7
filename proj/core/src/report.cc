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

#include "phasetomo/report.h"

#include <openssl/evp.h>

#include <cstdio>

#include "json.hpp"
#include "phasetomo/io.h"

namespace phasetomo {

bool RunReport::passed() const {
    for (const Gate &g : gates) {
        if (!g.passed) {
            return false;
        }
    }
    return true;
}

std::string RunReport::to_json() const {
    using nlohmann::json;
    json j;
    j["command"] = command;
    j["input_sha256"] = input_sha256;
    j["method"] = method;
    j["s"] = s ? json(*s) : json(nullptr);
    j["dim"] = dim;
    json bands_json = json::array();
    for (const BandDiagnostics &b : bands) {
        bands_json.push_back({{"l", b.l},
                              {"fit_misfit", b.max_misfit},
                              {"condition",
                               {{"passed", b.condition.passed},
                                {"finite_support", b.condition.finite_support},
                                {"slope", b.condition.slope},
                                {"detail", b.condition.detail}}}});
    }
    j["bands"] = bands_json;
    if (validation) {
        j["validation"] = {{"passed", validation->passed()},
                           {"hermiticity_defect", validation->hermiticity_defect},
                           {"trace_defect", validation->trace_defect},
                           {"min_eigenvalue", validation->min_eigenvalue}};
    } else {
        j["validation"] = nullptr;
    }
    j["max_error"] = max_error ? json(*max_error) : json(nullptr);
    j["diagonal_error"] = diagonal_error;
    j["diagonal_std_error"] = diagonal_std_error;
    j["diagonal_error_bound"] = diagonal_error_bound;
    json gates_json = json::array();
    for (const Gate &g : gates) {
        gates_json.push_back({{"name", g.name}, {"passed", g.passed}, {"value", g.value}, {"limit", g.limit}});
    }
    j["gates"] = gates_json;
    j["passed"] = passed();
    j["truncated_mass"] = truncated_mass;
    j["timing_seconds"] = timing_seconds;
    j["warnings"] = warnings;
    return j.dump(1) + "\n";
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256: digest failed");
    }
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
        out += buf;
    }
    return out;
}

std::string sha256_file(const std::string &path) {
    return sha256_hex(read_text(path));
}

}  // namespace phasetomo
