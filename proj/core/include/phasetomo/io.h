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

#ifndef PHASETOMO_IO_H
#define PHASETOMO_IO_H

// File formats. Numbers are written as decimal text with 17 significant digits.
//
//   density JSON   {"dim": N, "re": [[...]], "im": [[...]]}, row-major
//   tomogram JSON  {"dim_hint": N, "profiles": [{"s", "l", "kind", "radii", "re", "im",
//                   "stderr", "bin_lo", "bin_hi"}]}  (last three for sampled profiles)
//   samples CSV    header "r,theta", one outcome per row, with a sidecar
//                  <stem>.json {"s", "count", "seed", "r_max", "truncated_mass"}

#include <string>

#include "phasetomo/forward.h"
#include "phasetomo/recon_tomogram.h"
#include "phasetomo/states.h"

namespace phasetomo {

std::string density_to_json(const DensityMatrix &rho);
DensityMatrix density_from_json(const std::string &text);
void write_density(const std::string &path, const DensityMatrix &rho);
DensityMatrix read_density(const std::string &path);

std::string tomogram_to_json(const Tomogram &t);
Tomogram tomogram_from_json(const std::string &text);
void write_tomogram(const std::string &path, const Tomogram &t);
Tomogram read_tomogram(const std::string &path);

/// Path of the metadata sidecar of a samples CSV: the extension replaced by ".json".
std::string sidecar_path(const std::string &csv_path);
void write_samples(const std::string &csv_path, const SampleSet &samples);
SampleSet read_samples(const std::string &csv_path);

std::string read_text(const std::string &path);
void write_text(const std::string &path, const std::string &text);

}  // namespace phasetomo

#endif
