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

#include <map>
#include <span>

#include "bimax/gridfn.hpp"

namespace bimax {

// Decomposition f = g + sum_beta h_beta at a height.  The input is read as a
// step function on a 0-anchored dyadic grid (cell width = the largest power
// of two <= resolution); all selected intervals are standard dyadic, so CZ
// arithmetic (averages, moments, measures) is exact on the grid.
struct CZAtom {
    Interval iv;
    FunctionSpec h;  // step grid supported on iv, mean zero
};

struct CZOutput {
    FunctionSpec good;
    std::vector<CZAtom> atoms;
    double level = 0.0;
    double cell = 0.0;       // dyadic cell width
    double grid_l1 = 0.0;    // ||f||_1 of the discretized input
};

CZOutput cz_decompose(const FunctionSpec& f, double level, double resolution);

// h^i = sum of atoms with |I_beta| = 2^-i; key is the dyadic scale index.
struct ScaleGrouping {
    std::map<int, FunctionSpec> by_scale;
};
ScaleGrouping group_by_scale(const CZOutput& cz);

// Union of concentric dilates of the atom intervals over all inputs.
std::pair<std::vector<Interval>, double> exceptional_set(std::span<const CZOutput> czs,
                                                         double dilation = 4.0);

}  // namespace bimax
