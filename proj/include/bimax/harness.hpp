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

#include "bimax/bilinear_ops.hpp"
#include "bimax/czd.hpp"
#include "bimax/json_io.hpp"
#include "bimax/smoothing.hpp"

namespace bimax {

struct Measurement {
    std::string label;
    double value = 0.0;
    bool operator==(const Measurement&) const = default;
};

struct ExperimentReport {
    std::string experiment;
    Json config;
    std::vector<Measurement> measurements;
    std::vector<std::pair<std::string, SlopeFit>> fits;
    bool pass = false;
    double runtime_seconds = 0.0;
    std::string config_hash;  // sha1 of the canonical config dump
};

bool structurally_equal(const ExperimentReport& a, const ExperimentReport& b);

void write_report(const ExperimentReport& r, const std::string& path,
                  const std::string& csv_path = "");
ExperimentReport read_report(const std::string& path);

// --- experiment configs -------------------------------------------------

struct SharpnessConfig {
    std::string variant = "qlt1";  // "qlt1" | "degenerate_J"
    std::vector<double> deltas;    // geometric, >= 5 entries
    double p1 = 1.0, p2 = 1.0;
    std::string curve;             // defaulted per variant when empty
    double slope_tol = 0.1;        // 0.15 for degenerate_J
};
SharpnessConfig default_sharpness_config(const std::string& variant);
ExperimentReport run_sharpness(const SharpnessConfig& cfg);

struct ExponentScanConfig {
    std::vector<std::pair<double, double>> grid;  // (1/p1, 1/p2)
    std::string op = "full0";                     // "lacunary" | "full" | "full0"
    int trials = 1;
    std::uint64_t seed = 7;
    double delta0 = 1.0 / 8.0;
    double growth_threshold = 1.25;  // flag when ratio grows by this per 4x shrink
    double boundary_margin = 0.05;   // dead zone around region boundaries
};
ExponentScanConfig default_exponent_scan_config(const std::string& op);
ExperimentReport run_exponent_scan(const ExponentScanConfig& cfg);

struct SumLemmaConfig {
    int n_max = 12;       // n1, n2 in [0, n_max]
    int i_abs = 20;       // i1, i2 in [-i_abs, i_abs]
    int k_margin = 40;    // k in [min(i)-margin, max(i)+max(n)+margin]
    double c_threshold = 8.0;
};
// Left side of the scale-summation bound, by direct summation.
double sum_lemma_lhs(int n1, int n2, int i1, int i2, int k_lo, int k_hi);
ExperimentReport verify_sum_lemma(const SumLemmaConfig& cfg);

struct WeakHalfConfig {
    std::string curve = "circle";
    std::vector<std::pair<int, int>> n_list;  // defaults to diagonal (0,0)..(6,6)
    int alpha_levels = 64;
    int trials = 3;
    std::uint64_t seed = 11;
    double exponent_threshold = 2.5;
};
WeakHalfConfig default_weak_half_config();
ExperimentReport run_weak_half_experiment(const WeakHalfConfig& cfg);

// weak-L^p quasinorm with an explicit level count (the norm module fixes 64)
double weak_quasinorm(const FunctionSpec& f, double p, int alpha_levels, double resolution);

// --- shared input generators ---------------------------------------------

// Nonnegative mixture of indicator and gaussian bumps (sampled), for L1-type
// experiments.
FunctionSpec bump_mixture(std::uint64_t seed, Interval support, double cell);
// Sum of narrow spikes on a step grid, normalized to ||f||_1 = 1.
FunctionSpec spike_packet(std::uint64_t seed, Interval support, double cell);
// Signed rough input for CZ experiments (spikes / gaussians / band noise).
FunctionSpec cz_test_input(std::uint64_t seed, Interval support, double cell);

}  // namespace bimax
