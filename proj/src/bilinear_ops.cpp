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
#include "bimax/bilinear_ops.hpp"

#include <algorithm>
#include <cmath>

namespace bimax {

namespace {

// Evaluator with the variant dispatch hoisted out of the hot loops.
class Probe {
  public:
    Probe(const FunctionSpec& f, bool abs_mode) : abs_(abs_mode) {
        if (const auto* g = f.get_if<GridData>()) {
            kind_ = g->interp == GridData::Interp::Step ? Kind::Step : Kind::Grid;
            samples_ = g->samples.data();
            n_ = g->samples.size();
            origin_ = g->origin;
            inv_h_ = 1.0 / g->spacing;
            real_ = f.is_real();
        } else if (const auto* d = f.get_if<IndicatorData>()) {
            kind_ = Kind::Indicator;
            a_ = d->iv.lo;
            b_ = d->iv.hi;
            height_ = d->height;
            real_ = true;
        } else if (const auto* d = f.get_if<GaussianData>()) {
            kind_ = Kind::Gaussian;
            a_ = d->center;
            inv_h_ = 1.0 / d->width;
            height_ = d->height;
            real_ = true;
        } else {
            kind_ = Kind::Bandlimited;
            bl_ = f.get_if<BandlimitedData>();
            real_ = false;
        }
        if (abs_) real_ = true;
    }

    bool real() const { return real_; }

    double real_at(double x) const {
        switch (kind_) {
            case Kind::Indicator: return (x >= a_ && x <= b_) ? height_ : 0.0;
            case Kind::Gaussian: {
                double s = (x - a_) * inv_h_;
                return height_ * std::exp(-s * s);
            }
            case Kind::Grid: {
                if (n_ == 0) return 0.0;
                double u = (x - origin_) * inv_h_;
                if (u < 0.0 || u > static_cast<double>(n_ - 1)) return 0.0;
                if (n_ == 1) return pick(samples_[0]);
                std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), n_ - 2);
                double frac = u - static_cast<double>(i);
                if (abs_)
                    return std::abs(samples_[i] * (1.0 - frac) + samples_[i + 1] * frac);
                return samples_[i].real() * (1.0 - frac) + samples_[i + 1].real() * frac;
            }
            case Kind::Step: {
                if (n_ == 0) return 0.0;
                double u = (x - origin_) * inv_h_;
                if (u < 0.0 || u >= static_cast<double>(n_)) return 0.0;
                return pick(samples_[static_cast<std::size_t>(u)]);
            }
            case Kind::Bandlimited: return std::abs(cplx_at(x));
        }
        return 0.0;
    }

    Complex cplx_at(double x) const {
        switch (kind_) {
            case Kind::Bandlimited: {
                if (x < bl_->support.lo || x > bl_->support.hi) return {};
                Complex acc{};
                for (std::size_t i = 0; i < bl_->k.size(); ++i)
                    acc += bl_->c[i] * std::exp(Complex(0.0, bl_->k[i] * bl_->xi0 * x));
                return abs_ ? Complex(std::abs(acc), 0.0) : acc;
            }
            case Kind::Grid: {
                if (n_ == 0) return {};
                double u = (x - origin_) * inv_h_;
                if (u < 0.0 || u > static_cast<double>(n_ - 1)) return {};
                if (n_ == 1) return abs_ ? Complex(std::abs(samples_[0]), 0) : samples_[0];
                std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), n_ - 2);
                double frac = u - static_cast<double>(i);
                Complex v = samples_[i] * (1.0 - frac) + samples_[i + 1] * frac;
                return abs_ ? Complex(std::abs(v), 0.0) : v;
            }
            default: return Complex(real_at(x), 0.0);
        }
    }

  private:
    enum class Kind { Grid, Step, Indicator, Gaussian, Bandlimited };

    double pick(Complex v) const { return abs_ ? std::abs(v) : v.real(); }

    Kind kind_ = Kind::Indicator;
    const Complex* samples_ = nullptr;
    std::size_t n_ = 0;
    const BandlimitedData* bl_ = nullptr;
    double origin_ = 0.0, inv_h_ = 1.0, a_ = 0.0, b_ = 0.0, height_ = 0.0;
    bool abs_ = false;
    bool real_ = true;
};

void split_panel(double a, double b, int depth, std::span<const double> marks,
                 std::vector<std::pair<double, double>>& out) {
    bool has_mark = false;
    for (double m : marks)
        if (m > a && m < b) {
            has_mark = true;
            break;
        }
    if (depth <= 0 || !has_mark) {
        out.emplace_back(a, b);
        return;
    }
    double mid = 0.5 * (a + b);
    split_panel(a, mid, depth - 1, marks, out);
    split_panel(mid, b, depth - 1, marks, out);
}

}  // namespace

QuadratureSpec default_quadrature(const Curve& c, int t_points, int depth) {
    QuadratureSpec q;
    q.t_points = t_points;
    for (const JZero& z : find_J_zeros(c)) q.refine.push_back({z.t, depth});
    return q;
}

BrEvaluator::BrEvaluator(const Curve& c, const QuadratureSpec& quad,
                         const std::vector<Interval>* angular_restriction, bool abs_values)
    : abs_(abs_values) {
    if (quad.t_points < 64) throw Error("QuadratureSpec requires t_points >= 64");
    for (const auto& r : quad.refine)
        if (r.depth > 40) throw Error("refinement depth must be <= 40");

    const Interval supp = c.eta_support();
    std::vector<Interval> pieces;
    if (angular_restriction) {
        for (const Interval& iv : *angular_restriction) {
            Interval clipped{std::max(iv.lo, supp.lo), std::min(iv.hi, supp.hi)};
            if (clipped.lo < clipped.hi) pieces.push_back(clipped);
        }
    } else {
        pieces.push_back(supp);
    }

    double total_len = 0.0;
    for (const Interval& p : pieces) total_len += p.length();
    if (total_len <= 0.0) return;  // empty integrand; all values 0

    std::vector<double> marks;
    int max_depth = 0;
    for (const auto& r : quad.refine) {
        marks.push_back(r.t);
        max_depth = std::max(max_depth, r.depth);
    }

    std::vector<std::pair<double, double>> panels;
    for (const Interval& p : pieces) {
        int np = std::max(4, static_cast<int>(std::lround(quad.t_points * p.length() / total_len)));
        for (int i = 0; i < np; ++i) {
            double a = p.lo + p.length() * i / np;
            double b = p.lo + p.length() * (i + 1) / np;
            split_panel(a, b, max_depth, marks, panels);
        }
    }

    nodes_.reserve(panels.size() * 3);
    weights_.reserve(panels.size() * 3);
    for (const auto& [a, b] : panels) {
        double len = b - a;
        double mid = 0.5 * (a + b);
        const double ts[3] = {a, mid, b};
        const double ws[3] = {len / 6.0, 4.0 * len / 6.0, len / 6.0};
        for (int i = 0; i < 3; ++i) {
            double w = ws[i] * c.eta(ts[i]);
            if (w == 0.0) continue;
            nodes_.push_back(ts[i]);
            weights_.push_back(w);
            g1_.push_back(c.gamma1(ts[i]));
            g2_.push_back(c.gamma2(ts[i]));
        }
    }
}

double BrEvaluator::eta_mass() const {
    double acc = 0.0;
    for (double w : weights_) acc += w;
    return acc;
}

Complex BrEvaluator::br(const FunctionSpec& f1, const FunctionSpec& f2, double r, double x) const {
    if (!(r > 0.0)) throw InvalidRadius("radius must be positive");
    Probe p1(f1, abs_), p2(f2, abs_);
    if (p1.real() && p2.real()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            acc += weights_[i] * p1.real_at(x + r * g1_[i]) * p2.real_at(x + r * g2_[i]);
        return {acc, 0.0};
    }
    Complex acc{};
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        acc += weights_[i] * p1.cplx_at(x + r * g1_[i]) * p2.cplx_at(x + r * g2_[i]);
    return acc;
}

FunctionSpec BrEvaluator::br_grid(const FunctionSpec& f1, const FunctionSpec& f2, double r,
                                  const GridSpec& xs) const {
    if (!(r > 0.0)) throw InvalidRadius("radius must be positive");
    Probe p1(f1, abs_), p2(f2, abs_);
    std::vector<Complex> out(xs.count);
    const bool real_path = p1.real() && p2.real();
    parallel_for(xs.count, [&](std::size_t b, std::size_t e) {
        for (std::size_t ix = b; ix < e; ++ix) {
            double x = xs.x(ix);
            if (real_path) {
                double acc = 0.0;
                for (std::size_t i = 0; i < nodes_.size(); ++i)
                    acc += weights_[i] * p1.real_at(x + r * g1_[i]) * p2.real_at(x + r * g2_[i]);
                out[ix] = acc;
            } else {
                Complex acc{};
                for (std::size_t i = 0; i < nodes_.size(); ++i)
                    acc += weights_[i] * p1.cplx_at(x + r * g1_[i]) * p2.cplx_at(x + r * g2_[i]);
                out[ix] = acc;
            }
        }
    });
    return FunctionSpec::grid(xs.origin, xs.spacing, std::move(out));
}

std::vector<double> BrEvaluator::sup_over_radii(const FunctionSpec& f1, const FunctionSpec& f2,
                                                std::span<const double> radii,
                                                const GridSpec& xs) const {
    Probe p1(f1, abs_), p2(f2, abs_);
    std::vector<double> out(xs.count, 0.0);
    const bool real_path = p1.real() && p2.real();
    const std::size_t nn = nodes_.size();
    std::vector<double> rg1(nn), rg2(nn);
    for (double r : radii) {
        if (!(r > 0.0)) throw InvalidRadius("radius must be positive");
        for (std::size_t i = 0; i < nn; ++i) {
            rg1[i] = r * g1_[i];
            rg2[i] = r * g2_[i];
        }
        parallel_for(xs.count, [&](std::size_t b, std::size_t e) {
            for (std::size_t ix = b; ix < e; ++ix) {
                double x = xs.x(ix);
                double mag;
                if (real_path) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < nn; ++i)
                        acc += weights_[i] * p1.real_at(x + rg1[i]) * p2.real_at(x + rg2[i]);
                    mag = std::abs(acc);
                } else {
                    Complex acc{};
                    for (std::size_t i = 0; i < nn; ++i)
                        acc += weights_[i] * p1.cplx_at(x + rg1[i]) * p2.cplx_at(x + rg2[i]);
                    mag = std::abs(acc);
                }
                out[ix] = std::max(out[ix], mag);
            }
        });
    }
    return out;
}

std::vector<double> lacunary_radii(const ScaleRange& s) {
    if (s.k_min > s.k_max) throw Error("k_min must be <= k_max");
    std::vector<double> radii;
    for (int k = s.k_min; k <= s.k_max; ++k) radii.push_back(std::ldexp(1.0, -k));
    return radii;
}

std::vector<double> full_radii(const ScaleRange& s) {
    if (s.k_min > s.k_max) throw Error("k_min must be <= k_max");
    int m = std::max(1, s.r_per_octave);
    std::vector<double> radii;
    for (int k = s.k_min; k <= s.k_max; ++k)
        for (int j = 0; j < m; ++j)
            radii.push_back(std::ldexp(std::pow(2.0, -static_cast<double>(j) / m), -k));
    return radii;
}

FunctionSpec eval_br(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2, double r,
                     const GridSpec& xs, const QuadratureSpec& quad) {
    return BrEvaluator(c, quad).br_grid(f1, f2, r, xs);
}

namespace {

FunctionSpec wrap_real(const std::vector<double>& vals, const GridSpec& xs) {
    std::vector<Complex> out(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i];
    return FunctionSpec::grid(xs.origin, xs.spacing, std::move(out));
}

}  // namespace

FunctionSpec lacunary_maximal(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                              const ScaleRange& scales, const GridSpec& xs,
                              const QuadratureSpec& quad) {
    BrEvaluator ev(c, quad);
    auto vals = ev.sup_over_radii(f1, f2, lacunary_radii(scales), xs);
    return wrap_real(vals, xs);
}

FunctionSpec full_maximal(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                          const ScaleRange& scales, const GridSpec& xs, const QuadratureSpec& quad,
                          const std::vector<Interval>* angular_restriction) {
    BrEvaluator ev(c, quad, angular_restriction, /*abs_values=*/true);
    auto vals = ev.sup_over_radii(f1, f2, full_radii(scales), xs);
    return wrap_real(vals, xs);
}

std::vector<Interval> angular_piece(double center, int n) {
    double lo = std::ldexp(1.0, -n);
    double hi = std::ldexp(1.0, -n + 1);
    return {{center - hi, center - lo}, {center + lo, center + hi}};
}

namespace {

FunctionSpec mn_core(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                     std::pair<int, int> n, const ScaleRange& scales, const FilterBank& bank,
                     const GridSpec& xs, const QuadratureSpec& quad, double resolution, bool sum) {
    if (n.first < 0 || n.second < 0) throw Error("n must be nonnegative");
    int top = scales.k_max + std::max(n.first, n.second);
    if (resolution > kPi * std::ldexp(1.0, -top - 5))
        throw ResolutionTooCoarse("resolution too coarse for the top filter scale");

    // panels must resolve the oscillation of Q_{k+n_j} f_j along the curve,
    // which lives at frequency ~2^{n_j} |gamma_j'| independent of k
    const Interval supp = c.eta_support();
    double maxspeed = 0.0;
    for (int i = 0; i <= 256; ++i) {
        double t = supp.lo + supp.length() * i / 256;
        maxspeed = std::max(maxspeed, std::max(std::abs(c.dgamma1(t)), std::abs(c.dgamma2(t))));
    }
    double freq = std::ldexp(1.0, std::max(n.first, n.second));
    int need = static_cast<int>(std::ceil(16.0 * freq * maxspeed * supp.length() / (2.0 * kPi)));
    QuadratureSpec q = quad;
    q.t_points = std::max(quad.t_points, need);

    BrEvaluator ev(c, q);
    std::vector<double> acc(xs.count, 0.0);
    for (int k = scales.k_min; k <= scales.k_max; ++k) {
        FunctionSpec g1 = apply_projection(bank, Projection::Q, k + n.first, f1, resolution);
        FunctionSpec g2 = apply_projection(bank, Projection::Q, k + n.second, f2, resolution);
        double r = std::ldexp(1.0, -k);
        FunctionSpec piece = ev.br_grid(g1, g2, r, xs);
        const auto* pg = piece.get_if<GridData>();
        for (std::size_t i = 0; i < xs.count; ++i) {
            double mag = std::abs(pg->samples[i]);
            acc[i] = sum ? acc[i] + mag : std::max(acc[i], mag);
        }
    }
    return wrap_real(acc, xs);
}

}  // namespace

FunctionSpec mn_maximal(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                        std::pair<int, int> n, const ScaleRange& scales, const FilterBank& bank,
                        const GridSpec& xs, const QuadratureSpec& quad, double resolution) {
    return mn_core(c, f1, f2, n, scales, bank, xs, quad, resolution, /*sum=*/false);
}

FunctionSpec sn_sum(const Curve& c, const FunctionSpec& f1, const FunctionSpec& f2,
                    std::pair<int, int> n, const ScaleRange& scales, const FilterBank& bank,
                    const GridSpec& xs, const QuadratureSpec& quad, double resolution) {
    return mn_core(c, f1, f2, n, scales, bank, xs, quad, resolution, /*sum=*/true);
}

FunctionSpec ni_maximal(const FunctionSpec& f, Interval I, const ScaleRange& scales,
                        const GridSpec& xs, double resolution) {
    if (!(I.length() > 0.0)) throw Error("interval must have positive length");
    AbsPowerProfile profile(f, 1.0, resolution);
    auto radii = lacunary_radii(scales);
    std::vector<double> out(xs.count, 0.0);
    parallel_for(xs.count, [&](std::size_t b, std::size_t e) {
        for (std::size_t ix = b; ix < e; ++ix) {
            double x = xs.x(ix);
            double best = 0.0;
            for (double r : radii) {
                double v = profile.integral(x - r * I.hi, x - r * I.lo) / (r * I.length());
                best = std::max(best, v);
            }
            out[ix] = best;
        }
    });
    return wrap_real(out, xs);
}

FunctionSpec hl_maximal(const FunctionSpec& f, double tau, const ScaleRange& scales,
                        const GridSpec& xs, double resolution) {
    if (!(tau >= 1.0)) throw InvalidExponent("tau must be >= 1");
    AbsPowerProfile profile(f, tau, resolution);
    auto radii = full_radii(scales);
    std::vector<double> out(xs.count, 0.0);
    parallel_for(xs.count, [&](std::size_t b, std::size_t e) {
        for (std::size_t ix = b; ix < e; ++ix) {
            double x = xs.x(ix);
            double best = 0.0;
            for (double rho : radii) {
                double v = profile.integral(x - rho, x + rho) / (2.0 * rho);
                best = std::max(best, v);
            }
            out[ix] = std::pow(best, 1.0 / tau);
        }
    });
    return wrap_real(out, xs);
}

}  // namespace bimax
