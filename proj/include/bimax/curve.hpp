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

#include <optional>
#include <string>
#include <vector>

#include "bimax/common.hpp"

namespace bimax {

// Analytic curves gamma = (gamma1, gamma2) : I0 -> R^2 given in closed form,
// so that first and second derivatives are exact.  Components are either
// polynomials with explicit coefficients or the circle pair (cos, sin).
class AnalyticComponent {
  public:
    static AnalyticComponent poly(std::vector<double> coeffs);
    static AnalyticComponent cosine();
    static AnalyticComponent sine();

    double value(double t) const;
    double deriv(double t) const;
    double second(double t) const;

  private:
    enum class Kind { Poly, Cos, Sin };
    Kind kind_ = Kind::Poly;
    std::vector<double> coeffs_;  // ascending powers
};

// Bump parameters for eta: center c, halfwidth w.  The profile is
// exp(1 - 1/(1 - s^2)) with s = (t-c)/w on |s| < 1, zero elsewhere, so that
// max eta = 1 at the center.
struct BumpParams {
    double center = 0.0;
    double halfwidth = 1.0;
};

double bump_value(const BumpParams& b, double t);
double bump_mass(const BumpParams& b);  // integral of the profile

struct CurveSpec {
    std::string kind;  // "circle" | "degenerate-cubic" | "poly"
    std::vector<double> coeffs1, coeffs2;
    BumpParams eta;
    std::optional<Interval> domain;  // defaulted per kind when absent
};

class Curve {
  public:
    Curve(AnalyticComponent g1, AnalyticComponent g2, Interval domain, BumpParams eta);

    double gamma1(double t) const { return g1_.value(t); }
    double gamma2(double t) const { return g2_.value(t); }
    double dgamma1(double t) const { return g1_.deriv(t); }
    double dgamma2(double t) const { return g2_.deriv(t); }
    double d2gamma1(double t) const { return g1_.second(t); }
    double d2gamma2(double t) const { return g2_.second(t); }

    // J = gamma1' - gamma2'; its zeros drive the singular change of variables.
    double jac(double t) const { return g1_.deriv(t) - g2_.deriv(t); }
    double djac(double t) const { return g1_.second(t) - g2_.second(t); }

    double eta(double t) const { return bump_value(eta_, t); }
    const BumpParams& eta_params() const { return eta_; }
    Interval eta_support() const {
        return {eta_.center - eta_.halfwidth, eta_.center + eta_.halfwidth};
    }
    Interval domain() const { return domain_; }

  private:
    AnalyticComponent g1_, g2_;
    Interval domain_;
    BumpParams eta_;
};

// Validates the spec: eta support strictly inside the domain, closed-form
// derivatives consistent with finite differences at random points, and
// dgamma/dt nonvanishing on supp eta.
Curve make_curve(const CurveSpec& spec);
Curve make_named_curve(const std::string& name);  // "circle", "degenerate-cubic"
Curve make_named_curve(const std::string& name, BumpParams eta);

struct CurvePoint {
    double gamma1, gamma2, dgamma1, dgamma2, jac, djac;
};
CurvePoint eval_curve(const Curve& c, double t);

enum class Hypothesis { H1, H2, H3 };
enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Hypothesis h);
const char* to_string(Verdict v);

struct HypothesisVerdict {
    Hypothesis hypothesis;
    Verdict verdict;
    // Parameter values exhibiting failure: t for H1/H3, (re a, im a, re b1,
    // im b1, re b2, im b2) for H2.  Present whenever verdict == Fail.
    std::optional<std::vector<double>> witness;
    double margin = 0.0;
};

std::vector<HypothesisVerdict> check_hypotheses(const Curve& c, int grid_density = 400,
                                                int search_budget = 2000, std::uint64_t seed = 1);

struct JZero {
    double t;
    int order;  // 1, or 2 meaning ">= 2"
};
std::vector<JZero> find_J_zeros(const Curve& c);

// q with 1/q = 1/p1 + 1/p2; infinity is admitted on both sides.
double q_exponent(double p1, double p2);

}  // namespace bimax
