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

#include <memory>

#include "bimax/gridfn.hpp"

namespace bimax {

enum class Projection { P, Q, Qtilde };

// Littlewood-Paley multiplier family.
//   phi_hat:       even, == 1 on |xi| <= 1, == 0 on |xi| >= 2, smooth monotone
//                  transition built from exp(-a/s)
//   psi_hat:       phi_hat(xi/2) - phi_hat(xi); supported on 1 <= |xi| <= 4
//   psi_tilde_hat: == 1 on supp psi_hat, == 0 for |xi| <= 1/2 and |xi| >= 8
// Scaled multipliers: P_k ~ phi_hat(2^-k xi), Q_k ~ psi_hat(2^-k xi), so that
// Q_k = P_{k+1} - P_k exactly and Qtilde_k Q_k = Q_k.
class FilterBank {
  public:
    explicit FilterBank(double transition_sharpness = 1.0);

    double phi_hat(double xi) const;
    double psi_hat(double xi) const { return phi_hat(0.5 * xi) - phi_hat(xi); }
    double psi_tilde_hat(double xi) const;
    double multiplier(Projection which, int k, double xi) const;
    double sharpness() const { return a_; }

  private:
    double smooth_step(double s) const;  // 0 at s<=0, 1 at s>=1
    double a_;
};

FilterBank make_filter_bank(double transition_sharpness = 1.0);

// Applies the projection through the discrete transform on a padded box
// (support length x 8).  Inputs that carry their own exact box (periodic
// grids, or band-limited specs commensurate with their support) are
// transformed on that box, where the multiplier identities hold to roundoff.
// Requires resolution <= pi * 2^-(k+5) (Nyquist margin 4 at the top frequency
// 2^{k+3} of Qtilde), else throws ResolutionTooCoarse.
FunctionSpec apply_projection(const FilterBank& bank, Projection which, int k,
                              const FunctionSpec& f, double resolution);

// || f - P_k f - sum_{n=0..N} Q_{k+n} f ||_2 / ||f||_2, evaluated spectrally
// on one common box; by telescoping this equals ||(I - P_{k+N+1}) f||_2/||f||_2
// up to roundoff.  (With Q_k = P_{k+1} - P_k the n = 0 term is required for
// the telescoping; N = 0 already reduces to the P_{k+1} tail.)
double reconstruction_error(const FilterBank& bank, const FunctionSpec& f, int k, int N,
                            double resolution);

// Tabulated physical kernel of psi (inverse transform of psi_hat) and its
// antiderivative, for the edge-based application below.
struct PsiKernelTable {
    double du = 0.0;
    double umax = 0.0;
    double tail_radius = 0.0;  // |Psi| below 1e-10 * max beyond this
    std::vector<double> psi;       // psi_check on [-umax, umax)
    std::vector<double> antider;   // cumulative integral, 0 at -umax

    double value(double u) const;
    double antiderivative(double u) const;
};

const PsiKernelTable& psi_kernel(const FilterBank& bank);

// ||Q_k f||_1 for a step-grid f, computed from the exact edge decomposition
// Q_k f(x) = sum_edges w_e Psi(2^k (x - p_e)).  Valid for any k; cost scales
// with the number of nonzero jumps, not with the transform size.
double q_l1_norm_step(const FilterBank& bank, int k, const FunctionSpec& step_f);

}  // namespace bimax
