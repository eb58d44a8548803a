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
#include "bimax/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bimax {

FunctionSpec FunctionSpec::grid(double origin, double spacing, std::vector<Complex> samples,
                                bool periodic_box) {
    if (!(spacing > 0.0)) throw Error("grid spacing must be positive");
    GridData g{origin, spacing, std::move(samples), periodic_box};
    for (const Complex& z : g.samples)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error("grid samples must be finite");
    return FunctionSpec(Storage{std::move(g)});
}

FunctionSpec FunctionSpec::grid_real(double origin, double spacing, std::span<const double> samples) {
    std::vector<Complex> s(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) s[i] = samples[i];
    return grid(origin, spacing, std::move(s));
}

FunctionSpec FunctionSpec::step(double origin, double spacing, std::vector<Complex> cell_values) {
    if (!(spacing > 0.0)) throw Error("grid spacing must be positive");
    GridData g{origin, spacing, std::move(cell_values), false, GridData::Interp::Step};
    return FunctionSpec(Storage{std::move(g)});
}

FunctionSpec FunctionSpec::indicator(Interval iv, double height) {
    if (!(iv.lo < iv.hi) || !(height > 0.0))
        throw Error("indicator requires a < b and height > 0");
    return FunctionSpec(Storage{IndicatorData{iv, height}});
}

FunctionSpec FunctionSpec::gaussian(double center, double width, double height) {
    if (!(width > 0.0)) throw Error("gaussian width must be positive");
    return FunctionSpec(Storage{GaussianData{center, width, height}});
}

FunctionSpec FunctionSpec::bandlimited(std::vector<int> k, std::vector<Complex> c, double xi0,
                                       Interval support) {
    if (k.size() != c.size() || k.empty()) throw Error("bandlimited: k and c must match, nonempty");
    return FunctionSpec(Storage{BandlimitedData{std::move(k), std::move(c), xi0, support}});
}

Complex FunctionSpec::evaluate(double x) const {
    switch (v_.index()) {
        case 0: {
            const auto& g = std::get<GridData>(v_);
            if (g.samples.empty()) return 0.0;
            double u = (x - g.origin) / g.spacing;
            if (g.interp == GridData::Interp::Step) {
                if (u < 0.0 || u >= static_cast<double>(g.samples.size())) return 0.0;
                return g.samples[static_cast<std::size_t>(u)];
            }
            if (u < 0.0 || u > static_cast<double>(g.samples.size() - 1)) return 0.0;
            if (g.samples.size() == 1) return g.samples[0];
            std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), g.samples.size() - 2);
            double frac = u - static_cast<double>(i);
            return g.samples[i] * (1.0 - frac) + g.samples[i + 1] * frac;
        }
        case 1: {
            const auto& d = std::get<IndicatorData>(v_);
            return (x >= d.iv.lo && x <= d.iv.hi) ? Complex(d.height, 0.0) : Complex(0.0, 0.0);
        }
        case 2: {
            const auto& d = std::get<GaussianData>(v_);
            double s = (x - d.center) / d.width;
            return Complex(d.height * std::exp(-s * s), 0.0);
        }
        case 3: {
            const auto& d = std::get<BandlimitedData>(v_);
            if (x < d.support.lo || x > d.support.hi) return 0.0;
            Complex acc{};
            for (std::size_t i = 0; i < d.k.size(); ++i)
                acc += d.c[i] * std::exp(Complex(0.0, d.k[i] * d.xi0 * x));
            return acc;
        }
    }
    return 0.0;
}

Interval FunctionSpec::support() const {
    switch (v_.index()) {
        case 0: {
            const auto& g = std::get<GridData>(v_);
            double cells = g.interp == GridData::Interp::Step ? static_cast<double>(g.samples.size())
                                                              : static_cast<double>(g.samples.size()) - 1.0;
            double len = g.samples.empty() ? 0.0 : g.spacing * std::max(0.0, cells);
            return {g.origin, g.origin + len};
        }
        case 1: return std::get<IndicatorData>(v_).iv;
        case 2: {
            const auto& d = std::get<GaussianData>(v_);
            return {d.center - 10.0 * d.width, d.center + 10.0 * d.width};
        }
        case 3: return std::get<BandlimitedData>(v_).support;
    }
    return {0.0, 0.0};
}

bool FunctionSpec::is_real() const {
    switch (v_.index()) {
        case 0: {
            for (const Complex& z : std::get<GridData>(v_).samples)
                if (z.imag() != 0.0) return false;
            return true;
        }
        case 3: return false;
        default: return true;
    }
}

bool FunctionSpec::is_zero() const {
    if (const auto* g = get_if<GridData>()) {
        for (const Complex& z : g->samples)
            if (z != Complex{}) return false;
        return true;
    }
    if (const auto* d = get_if<IndicatorData>()) return d->height == 0.0 || !(d->iv.lo < d->iv.hi);
    return false;
}

namespace {

double default_resolution(const FunctionSpec& f) {
    double len = f.support().length();
    if (len <= 0.0) len = 1.0;
    return len / 1024.0;
}

struct SampledAbs {
    std::vector<double> vals;
    double h;
};

SampledAbs sample_abs(const FunctionSpec& f, double resolution) {
    Interval s = f.support();
    double len = s.length();
    if (len <= 0.0) return {{0.0}, 1.0};
    double h = resolution > 0.0 ? resolution : default_resolution(f);
    std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(len / h)));
    h = len / static_cast<double>(n);
    SampledAbs out;
    out.h = h;
    out.vals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = s.lo + (static_cast<double>(i) + 0.5) * h;  // midpoint rule
        out.vals[i] = f.evaluate_abs(x);
    }
    return out;
}

}  // namespace

double weak_lp_norm_levels(const FunctionSpec& f, double p, int levels, double resolution) {
    if (!(p > 0.0)) throw InvalidExponent("weak norm requires p > 0");
    SampledAbs s = sample_abs(f, resolution);
    double maxv = 0.0;
    for (double v : s.vals) maxv = std::max(maxv, v);
    if (maxv == 0.0) return 0.0;
    if (std::isinf(p)) return maxv;
    // geometric levels on [1e-6, 1] * max; the top level uses >= so the
    // discrete sup matches the continuum limit alpha -> max
    double best = 0.0;
    for (int i = 0; i < levels; ++i) {
        double alpha = maxv * std::pow(1e-6, 1.0 - static_cast<double>(i) / (levels - 1));
        std::size_t count = 0;
        for (double v : s.vals)
            if (v >= alpha) ++count;
        best = std::max(best, alpha * std::pow(static_cast<double>(count) * s.h, 1.0 / p));
    }
    return best;
}

double lp_norm(const FunctionSpec& f, double p, bool weak, double resolution) {
    if (!(p > 0.0)) throw InvalidExponent("lp_norm requires p > 0");
    if (weak) return weak_lp_norm_levels(f, p, 64, resolution);
    SampledAbs s = sample_abs(f, resolution);
    double maxv = 0.0;
    for (double v : s.vals) maxv = std::max(maxv, v);
    if (maxv == 0.0) return 0.0;
    if (std::isinf(p)) return maxv;
    double acc = 0.0;
    for (double v : s.vals) acc += std::pow(v, p);
    return std::pow(acc * s.h, 1.0 / p);
}

double distribution_size(const FunctionSpec& f, double alpha, double resolution) {
    if (!(alpha > 0.0)) throw Error("distribution_size requires alpha > 0");
    SampledAbs s = sample_abs(f, resolution);
    std::size_t count = 0;
    for (double v : s.vals)
        if (v > alpha) ++count;
    return static_cast<double>(count) * s.h;
}

FunctionSpec random_band_limited(std::uint64_t seed, Interval band, Interval support,
                                 double target_l2) {
    if (!(band.lo >= 0.0) || !(band.hi > band.lo)) throw InvalidBand("band must satisfy 0 <= lo < hi");
    double len = support.length();
    if (!(len > 0.0)) throw InvalidBand("support must be nondegenerate");
    double xi0 = 2.0 * kPi / len;
    int klo = static_cast<int>(std::ceil(band.lo / xi0 - 1e-12));
    int khi = static_cast<int>(std::floor(band.hi / xi0 + 1e-12));
    if (band.lo == 0.0 && klo < 1) klo = band.lo == 0.0 ? std::max(klo, 0) : klo;
    if (khi < klo) throw InvalidBand("band too narrow for the support length");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<int> ks;
    std::vector<Complex> cs;
    for (int k = klo; k <= khi; ++k) {
        ks.push_back(k);
        cs.emplace_back(normal(rng), normal(rng));
    }
    // On the full period the modes are orthogonal, so the L2 norm is exactly
    // sqrt(len * sum |c_k|^2).
    double power = 0.0;
    for (const Complex& c : cs) power += std::norm(c);
    double norm = std::sqrt(len * power);
    double scale = norm > 0.0 ? target_l2 / norm : 0.0;
    for (Complex& c : cs) c *= scale;
    return FunctionSpec::bandlimited(std::move(ks), std::move(cs), xi0, support);
}

namespace {

SlopeFit least_squares(std::vector<std::pair<double, double>> pts) {
    std::size_t n = pts.size();
    double sx = 0, sy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx <= 0.0) throw DegenerateAbscissas("abscissas carry no variance");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (auto& [x, y] : pts) {
        double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
    fit.points = std::move(pts);
    return fit;
}

}  // namespace

SlopeFit fit_loglog(std::span<const std::pair<double, double>> pts) {
    if (pts.size() < 3) throw DegenerateAbscissas("need at least 3 points");
    std::vector<std::pair<double, double>> logpts;
    logpts.reserve(pts.size());
    for (const auto& [x, y] : pts) {
        if (!(x > 0.0) || !(y > 0.0)) throw Error("fit_loglog requires positive coordinates");
        logpts.emplace_back(std::log(x), std::log(y));
    }
    return least_squares(std::move(logpts));
}

SlopeFit fit_linear(std::span<const std::pair<double, double>> pts) {
    if (pts.size() < 3) throw DegenerateAbscissas("need at least 3 points");
    return least_squares({pts.begin(), pts.end()});
}

AbsPowerProfile::AbsPowerProfile(const FunctionSpec& f, double tau, double resolution) {
    if (!(tau > 0.0)) throw InvalidExponent("profile exponent must be positive");
    if (const auto* d = f.get_if<IndicatorData>()) {
        exact_indicator_ = true;
        iv_ = d->iv;
        height_pow_ = std::pow(d->height, tau);
        return;
    }
    Interval s = f.support();
    double len = s.length();
    double h = resolution > 0.0 ? resolution : default_resolution(f);
    std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(len / h)));
    spacing_ = len / static_cast<double>(n);
    origin_ = s.lo;
    prefix_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double x = origin_ + (static_cast<double>(i) + 0.5) * spacing_;
        prefix_[i + 1] = prefix_[i] + std::pow(f.evaluate_abs(x), tau) * spacing_;
    }
}

double AbsPowerProfile::integral(double a, double b) const {
    if (b <= a) return 0.0;
    if (exact_indicator_) {
        double lo = std::max(a, iv_.lo), hi = std::min(b, iv_.hi);
        return hi > lo ? (hi - lo) * height_pow_ : 0.0;
    }
    if (prefix_.empty()) return 0.0;
    double n = static_cast<double>(prefix_.size() - 1);
    auto at = [&](double x) {
        double u = (x - origin_) / spacing_;
        if (u <= 0.0) return 0.0;
        if (u >= n) return prefix_.back();
        std::size_t i = static_cast<std::size_t>(u);
        double frac = u - static_cast<double>(i);
        return prefix_[i] * (1.0 - frac) + prefix_[i + 1] * frac;
    };
    return at(b) - at(a);
}

}  // namespace bimax
