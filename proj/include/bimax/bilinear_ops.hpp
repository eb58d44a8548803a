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

#include "bimax/curve.hpp"
#include "bimax/gridfn.hpp"
#include "bimax/lp_filters.hpp"

namespace bimax {

// Panels over supp eta with optional dyadic refinement toward marked points
// (J-zeros), where the pushforward density behaves like 1/|J|.
struct QuadratureSpec {
    struct Refinement {
        double t = 0.0;
        int depth = 20;
    };
    int t_points = 256;
    std::vector<Refinement> refine;
};

QuadratureSpec default_quadrature(const Curve& c, int t_points = 256, int depth = 20);

// Lacunary scales r = 2^-k for k in [k_min, k_max]; the full supremum refines
// each octave with r_per_octave geometric intermediate radii.
struct ScaleRange {
    int k_min = -4;
    int k_max = 4;
    int r_per_octave = 8;
};

struct GridSpec {
    double origin = 0.0;
    double spacing = 1.0;
    std::size_t count = 0;

    double x(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
};

// Precomputed quadrature nodes for one curve/cutoff; all operators funnel
// through this.  With abs_values the integrand uses |f_j|, which is how the
// restricted full operators and the angular pieces are defined.
class BrEvaluator {
  public:
    BrEvaluator(const Curve& c, const QuadratureSpec& quad,
                const std::vector<Interval>* angular_restriction = nullptr, bool abs_values = false);

    Complex br(const FunctionSpec& f1, const FunctionSpec& f2, double r, double x) const;
    FunctionSpec br_grid(const FunctionSpec& f1, const FunctionSpec& f2, double r,
                         const GridSpec& xs) const;

    double eta_mass() const;  // sum of weights
    std::size_t node_count() const { return nodes_.size(); }
    bool abs_values() const { return abs_; }

    // max over pointwise |B_r| on the radius list; returns real grid values
    std::vector<double> sup_over_radii(const FunctionSpec& f1, const FunctionSpec& f2,
                                       std::span<const double> radii, const GridSpec& xs) const;

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;  // Simpson weight x eta
    std::vector<double> g1_, g2_;
    bool abs_;
};

std::vector<double> lacunary_radii(const ScaleRange& s);
std::vector<double> full_radii(const ScaleRange& s);

// B_r(f1,f2)(x) = int f1(x + r gamma1(t)) f2(x + r gamma2(t)) eta(t) dt
FunctionSpec eval_br(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2, double r,
                     const GridSpec& xs, const QuadratureSpec& quad);

// sup over r in 2^-[k_min..k_max] of |B_r|; values are certified lower bounds
// of the mathematical supremum.
FunctionSpec lacunary_maximal(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                              const ScaleRange& scales, const GridSpec& xs,
                              const QuadratureSpec& quad);

// sup over the geometric r-grid; with angular_restriction the cutoff support
// is intersected with the given t-intervals (realizes the restricted full
// operator and the angular pieces), and |f_j| is used inside the integral.
FunctionSpec full_maximal(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                          const ScaleRange& scales, const GridSpec& xs, const QuadratureSpec& quad,
                          const std::vector<Interval>* angular_restriction = nullptr);

// Angular intervals {t : |t - center| in [2^-n, 2^-n+1]} (both sides).
std::vector<Interval> angular_piece(double center, int n);

// M_n = sup_k |A_k(Q_{k+n1} f1, Q_{k+n2} f2)| and S_n = sum_k |...| over the
// truncated scale range.  The filter applications require resolution fine
// enough for scale k_max + max(n1,n2).
FunctionSpec mn_maximal(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                        std::pair<int, int> n, const ScaleRange& scales, const FilterBank& bank,
                        const GridSpec& xs, const QuadratureSpec& quad, double resolution);
FunctionSpec sn_sum(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                    std::pair<int, int> n, const ScaleRange& scales, const FilterBank& bank,
                    const GridSpec& xs, const QuadratureSpec& quad, double resolution);

// N_I f(x) = sup_{r lacunary} |I|^-1 int_I |f(x - r y)| dy, computed through
// exact interval integrals of |f|.
FunctionSpec ni_maximal(const FunctionSpec& f, Interval I, const ScaleRange& scales,
                        const GridSpec& xs, double resolution = 0.0);

// Centered Hardy-Littlewood maximal average over a geometric radius grid,
// composed with the tau-power transform.
FunctionSpec hl_maximal(const FunctionSpec& f, double tau, const ScaleRange& scales,
                        const GridSpec& xs, double resolution = 0.0);

}  // namespace bimax
