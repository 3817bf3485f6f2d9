/*
 * Copyright 2026 The fockforge authors
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

#ifndef FOCKFORGE_IO_HPP
#define FOCKFORGE_IO_HPP

#include <json.hpp>
#include <string>

#include "fockforge/device.hpp"
#include "fockforge/outcomes.hpp"

namespace fockforge {

/// Builds a device from its JSON description. Schema errors throw
/// ValidationError with a JSON-pointer-style location.
Device device_from_json(const nlohmann::json& j);
nlohmann::json device_to_json(const Device& device);

/// Reads a device file; parse errors are reported with the byte offset.
Device load_device(const std::string& path);

/// State serialization: array of {"ket": [ints], "re": x, "im": y},
/// lexicographically ordered by occupation vector.
nlohmann::json state_to_json(const State& s);
State state_from_json(const nlohmann::json& j, int nmodes);

/// "  0.500000000 + 0.000000000 j" (nine decimal places).
std::string format_amplitude(const Complex& a);

/// Text listing of a state in ket order.
std::string state_to_text(const State& s);

/// CSV with one row per outcome: "ket","probability".
std::string bins_to_csv(const ProbabilityBins& bins);

/// CSV with one row per sampled outcome: "ket","count","frequency".
std::string sample_counts_to_csv(const std::map<std::vector<int>, long>& counts,
                                 long total);

/// Labeled matrix in the row-per-basis-vector style, trace-normalized.
/// `layout_modes`/`kept_channels` describe the label space of the reduced
/// kets; pass the device's mode map and the kept channels of the reduction.
std::string density_matrix_to_text(const DensityMatrix& dm, const ModeMap& modes,
                                   const std::vector<int>& kept_channels,
                                   bool normalized = true);

}  // namespace fockforge

#endif
