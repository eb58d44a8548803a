// Copyright 2026 bimax contributors
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
#pragma once

#include <json.hpp>

#include "bimax/curve.hpp"
#include "bimax/czd.hpp"
#include "bimax/gridfn.hpp"

namespace bimax {

using Json = nlohmann::json;

// Curve spec format:
//   {"kind": "circle" | "degenerate-cubic" | "poly",
//    "coeffs1": [...], "coeffs2": [...],
//    "eta": {"center": c, "halfwidth": w}}
Json to_json(const CurveSpec& spec);
CurveSpec curve_spec_from_json(const Json& j);
Curve curve_from_file_or_name(const std::string& file_or_name);

Json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const Json& j);
FunctionSpec function_from_file(const std::string& path);
void write_function(const FunctionSpec& f, const std::string& path);

Json to_json(const SlopeFit& fit);
SlopeFit slope_fit_from_json(const Json& j);

// cz.json carries the good part, the atom list, and an invariant-audit block.
Json to_json(const CZOutput& cz);

Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

}  // namespace bimax
