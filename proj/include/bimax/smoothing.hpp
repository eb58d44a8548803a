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

#include <array>
#include <functional>

#include "bimax/bilinear_ops.hpp"
#include "bimax/curve.hpp"
#include "bimax/gridfn.hpp"
#include "bimax/lp_filters.hpp"

namespace bimax {

// Trilinear form data: three real-analytic maps R^2 -> R and a product bump
// weight.  The curve-induced constructor wires phi0(x,t) = x and
// phi_j(x,t) = x + gamma_j(t).
struct TrilinearDatum {
    std::function<double(double, double)> phi0, phi1, phi2;
    std::function<std::array<double, 2>(double, double)> grad0, grad1, grad2;
    BumpParams wx, wt;  // eta2d(x,t) = bump(wx, x) * bump(wt, t)

    double eta2d(double x, double t) const { return bump_value(wx, x) * bump_value(wt, t); }
    Interval box_x() const { return {wx.center - wx.halfwidth, wx.center + wx.halfwidth}; }
    Interval box_t() const { return {wt.center - wt.halfwidth, wt.center + wt.halfwidth}; }

    static TrilinearDatum curve_induced(const Curve& c, BumpParams x_window);
};

// T(f) = iint f0(phi0) f1(phi1) f2(phi2) eta2d dx dt on a tensor grid.
Complex trilinear_form(const TrilinearDatum& d, const FunctionSpec& f0, const FunctionSpec& f1,
                       const FunctionSpec& f2, double resolution);

// Median over random unit-L2 band-limited inputs of ||B_1(Q_n1 f1, Q_n2 f2)||_1
// per n, fitted log2-linearly against |n| = max(n1, n2).  Curves failing H1
// are refused.
SlopeFit decay_experiment(const Curve& c, std::span<const std::pair<int, int>> n_values, int trials,
                          std::uint64_t seed, const FilterBank& bank, double resolution);

enum class Stationarity { Stationary, Nonstationary };

struct OscResult {
    Complex value;
    Stationarity cls;
    double grad_norm = 0.0;          // |sum_j k_j grad phi_j (x_m)|
    std::array<double, 2> x_m{};     // chosen interacting point
    double window_len = 0.0;         // lambda^-gamma
};

// I(m,k) = iint exp(i pi lambda^gamma sum k_j phi_j) prod eta_{m_j}(phi_j) eta2d.
// Windows I_m have length lambda^-gamma; eta_m is a smooth partition of unity.
// Throws NonInteracting when no point satisfies phi_j(x) in I_{m_j} for all j
// (the integral is exactly zero there).  Quadrature: Gauss-Legendre panels
// with at least 16 points per phase period.
OscResult oscillatory_integral(const TrilinearDatum& d, std::array<int, 3> m,
                               std::array<int, 3> kk, double lambda, double gamma_exp = 0.75,
                               double rho = 0.1, double resolution = 0.0);

// Sublevel sets {|f| <= eps} on nodal grids, 1-D or 2-D; measures are exact
// for per-cell linear data (second order at transversal crossings).
struct SublevelQuery {
    int dim = 1;
    Interval bx{0.0, 1.0}, by{0.0, 1.0};
    std::size_t nx = 0, ny = 1;  // node counts per axis
    std::vector<double> values;  // row-major nodal samples
    double epsilon = 0.0;
    int deriv_order = 1;
};

SublevelQuery make_sublevel_query(const std::function<double(double)>& f, Interval domain,
                                  double epsilon, int deriv_order, double spacing);
SublevelQuery make_sublevel_query_2d(const std::function<double(double, double)>& f, Interval bx,
                                     Interval by, double epsilon, int deriv_order, double spacing);
double sublevel_measure(const SublevelQuery& q);

SlopeFit sublevel_fit(const std::function<double(double)>& f, Interval domain, int deriv_order,
                      std::span<const double> eps_grid, double spacing);

}  // namespace bimax
