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

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "bimax/common.hpp"

namespace bimax {

// Test functions on the line.  Four closed-form-or-sampled variants:
//   grid         linear interpolation between samples, zero outside
//   indicator    height on [a,b]
//   gaussian     height * exp(-(x-c)^2 / w^2)
//   bandlimited  sum_k c_k e^{i k xi0 x} restricted to a support interval
struct GridData {
    enum class Interp { Linear, Step };

    double origin = 0.0;
    double spacing = 1.0;
    std::vector<Complex> samples;
    // Set when the samples fill an exact transform box; filter applications
    // reuse the box instead of re-padding.
    bool periodic_box = false;
    // Step grids read samples as cell values on [origin + i h, origin + (i+1) h);
    // integrals over cells are then exact, which the CZ decomposition relies on.
    Interp interp = Interp::Linear;
};
struct IndicatorData {
    Interval iv;
    double height = 1.0;
};
struct GaussianData {
    double center = 0.0, width = 1.0, height = 1.0;
};
struct BandlimitedData {
    std::vector<int> k;
    std::vector<Complex> c;
    double xi0 = 1.0;
    Interval support;
};

class FunctionSpec {
  public:
    using Storage = std::variant<GridData, IndicatorData, GaussianData, BandlimitedData>;

    FunctionSpec() : v_(IndicatorData{{0.0, 0.0}, 0.0}) {}

    static FunctionSpec grid(double origin, double spacing, std::vector<Complex> samples,
                             bool periodic_box = false);
    static FunctionSpec grid_real(double origin, double spacing, std::span<const double> samples);
    static FunctionSpec step(double origin, double spacing, std::vector<Complex> cell_values);
    static FunctionSpec indicator(Interval iv, double height);
    static FunctionSpec gaussian(double center, double width, double height);
    static FunctionSpec bandlimited(std::vector<int> k, std::vector<Complex> c, double xi0,
                                    Interval support);

    Complex evaluate(double x) const;
    double evaluate_abs(double x) const { return std::abs(evaluate(x)); }

    Interval support() const;
    bool is_real() const;
    bool is_zero() const;

    const Storage& storage() const { return v_; }
    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }

  private:
    explicit FunctionSpec(Storage v) : v_(std::move(v)) {}
    Storage v_;
};

// Strong L^p norm by Riemann sum at the given resolution (grid spacing over
// the support; <= 0 picks the default support/2^10).  With weak = true, the
// weak-L^p quasinorm sup_alpha alpha |{|f| > alpha}|^{1/p} over 64 geometric
// levels.  p = infinity gives the sample sup either way.
double lp_norm(const FunctionSpec& f, double p, bool weak = false, double resolution = 0.0);

// weak quasinorm with an explicit level count (lp_norm uses 64)
double weak_lp_norm_levels(const FunctionSpec& f, double p, int levels, double resolution = 0.0);

// Lebesgue measure of {|f| > alpha} by cell counting.
double distribution_size(const FunctionSpec& f, double alpha, double resolution = 0.0);

// Random trigonometric sum with spectrum in `band`, periodic over `support`,
// rescaled to the target L2 norm.  Deterministic in the seed.
FunctionSpec random_band_limited(std::uint64_t seed, Interval band, Interval support,
                                 double target_l2);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // as fitted (already log for fit_loglog)
};

SlopeFit fit_loglog(std::span<const std::pair<double, double>> pts);
SlopeFit fit_linear(std::span<const std::pair<double, double>> pts);

// Prefix-sum profile of |f|^tau for O(1) integrals over intervals; exact for
// indicators, sampled at `resolution` otherwise.
class AbsPowerProfile {
  public:
    AbsPowerProfile(const FunctionSpec& f, double tau, double resolution);
    double integral(double a, double b) const;

  private:
    bool exact_indicator_ = false;
    Interval iv_{};
    double height_pow_ = 0.0;
    double origin_ = 0.0, spacing_ = 1.0;
    std::vector<double> prefix_;  // prefix_[i] = integral over first i cells
};

}  // namespace bimax
