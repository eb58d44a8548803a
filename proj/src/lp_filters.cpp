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
#include "bimax/lp_filters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "bimax/fft.hpp"

namespace bimax {

FilterBank::FilterBank(double transition_sharpness) : a_(transition_sharpness) {
    if (!(a_ > 0.0)) throw Error("transition sharpness must be positive");
}

double FilterBank::smooth_step(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double e0 = std::exp(-a_ / s);
    double e1 = std::exp(-a_ / (1.0 - s));
    return e0 / (e0 + e1);
}

double FilterBank::phi_hat(double xi) const {
    double u = std::abs(xi);
    if (u <= 1.0) return 1.0;
    if (u >= 2.0) return 0.0;
    return 1.0 - smooth_step(u - 1.0);
}

double FilterBank::psi_tilde_hat(double xi) const {
    double u = std::abs(xi);
    if (u <= 0.5 || u >= 8.0) return 0.0;
    double rise = smooth_step((u - 0.5) * 2.0);
    double fall = 1.0 - smooth_step((u - 4.0) / 4.0);
    return rise * fall;
}

double FilterBank::multiplier(Projection which, int k, double xi) const {
    double scaled = std::ldexp(xi, -k);  // 2^-k xi
    switch (which) {
        case Projection::P: return phi_hat(scaled);
        case Projection::Q: return psi_hat(scaled);
        case Projection::Qtilde: return psi_tilde_hat(scaled);
    }
    return 0.0;
}

FilterBank make_filter_bank(double transition_sharpness) { return FilterBank(transition_sharpness); }

namespace {

struct Box {
    double origin = 0.0;
    double len = 0.0;
    std::size_t n = 0;
    bool exact = false;  // box is a true period of the input
};

constexpr std::size_t kMaxFft = std::size_t{1} << 24;

// Nyquist margin 4 at the top multiplier frequency 2^{k+3}; applied to the
// actual grid step, so reusing an exact box from an earlier application at a
// coarser scale cannot silently alias.
void check_resolution(int k, double resolution) {
    if (!(resolution > 0.0)) throw ResolutionTooCoarse("resolution must be positive");
    double need = kPi * std::ldexp(1.0, -k - 5);
    if (resolution > need) throw ResolutionTooCoarse("resolution too coarse for scale k");
}

Box choose_box(const FunctionSpec& f, double resolution) {
    Box box;
    if (const auto* g = f.get_if<GridData>(); g && g->periodic_box && !g->samples.empty() &&
                                              (g->samples.size() & (g->samples.size() - 1)) == 0) {
        box.origin = g->origin;
        box.n = g->samples.size();
        box.len = g->spacing * static_cast<double>(box.n);
        box.exact = true;
        return box;
    }
    if (const auto* b = f.get_if<BandlimitedData>()) {
        double len = b->support.length();
        double cycles = b->xi0 * len / (2.0 * kPi);
        if (len > 0.0 && std::abs(cycles - std::round(cycles)) < 1e-9) {
            box.origin = b->support.lo;
            box.len = len;
            box.n = next_pow2(static_cast<std::size_t>(std::ceil(len / resolution)));
            box.exact = true;
            return box;
        }
    }
    Interval s = f.support();
    double len = std::max(s.length(), resolution * 64);
    box.len = 8.0 * len;
    box.origin = s.center() - 0.5 * box.len;
    box.n = next_pow2(static_cast<std::size_t>(std::ceil(box.len / resolution)));
    box.exact = false;
    return box;
}

std::vector<Complex> sample_on_box(const FunctionSpec& f, const Box& box) {
    if (box.n > kMaxFft) throw ResolutionTooCoarse("transform size limit exceeded");
    std::vector<Complex> v(box.n);
    if (const auto* g = f.get_if<GridData>();
        g && box.exact && g->periodic_box && g->samples.size() == box.n) {
        std::copy(g->samples.begin(), g->samples.end(), v.begin());
        return v;
    }
    double h = box.len / static_cast<double>(box.n);
    for (std::size_t i = 0; i < box.n; ++i) v[i] = f.evaluate(box.origin + h * static_cast<double>(i));
    return v;
}

double bin_frequency(std::size_t m, std::size_t n, double boxlen) {
    double mm = static_cast<double>(m);
    if (m > n / 2) mm -= static_cast<double>(n);
    return 2.0 * kPi * mm / boxlen;
}

}  // namespace

FunctionSpec apply_projection(const FilterBank& bank, Projection which, int k,
                              const FunctionSpec& f, double resolution) {
    check_resolution(k, resolution);
    Box box = choose_box(f, resolution);
    check_resolution(k, box.len / static_cast<double>(box.n));
    std::vector<Complex> v = sample_on_box(f, box);
    fft_inplace(v, false);
    for (std::size_t m = 0; m < box.n; ++m)
        v[m] *= bank.multiplier(which, k, bin_frequency(m, box.n, box.len));
    fft_inplace(v, true);

    double h = box.len / static_cast<double>(box.n);
    if (box.exact) return FunctionSpec::grid(box.origin, h, std::move(v), /*periodic_box=*/true);

    // trim the padded result to the numerically significant extent
    double peak = 0.0;
    for (const Complex& z : v) peak = std::max(peak, std::abs(z));
    std::size_t lo = 0, hi = box.n;
    if (peak > 0.0) {
        double cut = 1e-12 * peak;
        while (lo < box.n && std::abs(v[lo]) < cut) ++lo;
        while (hi > lo && std::abs(v[hi - 1]) < cut) --hi;
        lo = lo >= 16 ? lo - 16 : 0;
        hi = std::min(box.n, hi + 16);
    }
    std::vector<Complex> out(v.begin() + static_cast<std::ptrdiff_t>(lo),
                             v.begin() + static_cast<std::ptrdiff_t>(hi));
    return FunctionSpec::grid(box.origin + h * static_cast<double>(lo), h, std::move(out));
}

double reconstruction_error(const FilterBank& bank, const FunctionSpec& f, int k, int N,
                            double resolution) {
    if (N < 0) throw Error("N must be nonnegative");
    check_resolution(k + N, resolution);
    Box box = choose_box(f, resolution);
    check_resolution(k + N, box.len / static_cast<double>(box.n));
    std::vector<Complex> v = sample_on_box(f, box);
    fft_inplace(v, false);
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < box.n; ++m) {
        double xi = bin_frequency(m, box.n, box.len);
        // P_k plus the annular terms at scales k..k+N telescopes to P_{k+N+1}
        double mult = bank.multiplier(Projection::P, k, xi);
        for (int n = 0; n <= N; ++n) mult += bank.multiplier(Projection::Q, k + n, xi);
        double w = std::norm(v[m]);
        num += w * (1.0 - mult) * (1.0 - mult);
        den += w;
    }
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

double PsiKernelTable::value(double u) const {
    double idx = (u + umax) / du;
    if (idx <= 0.0 || idx >= static_cast<double>(psi.size() - 1)) return 0.0;
    std::size_t i = static_cast<std::size_t>(idx);
    double frac = idx - static_cast<double>(i);
    return psi[i] * (1.0 - frac) + psi[i + 1] * frac;
}

double PsiKernelTable::antiderivative(double u) const {
    double idx = (u + umax) / du;
    if (idx <= 0.0) return 0.0;
    if (idx >= static_cast<double>(antider.size() - 1)) return antider.back();
    std::size_t i = static_cast<std::size_t>(idx);
    double frac = idx - static_cast<double>(i);
    return antider[i] * (1.0 - frac) + antider[i + 1] * frac;
}

const PsiKernelTable& psi_kernel(const FilterBank& bank) {
    static std::mutex mu;
    static std::map<long long, std::unique_ptr<PsiKernelTable>> cache;
    std::scoped_lock lock(mu);
    long long key = static_cast<long long>(std::round(bank.sharpness() * 1e9));
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto table = std::make_unique<PsiKernelTable>();
    const double umax = 256.0;
    const std::size_t n = std::size_t{1} << 18;
    const double du = 2.0 * umax / static_cast<double>(n);
    table->du = du;
    table->umax = umax;
    // psi_check(u) = (1/2pi) int psi_hat(xi) e^{i u xi} dxi via one transform;
    // aliasing is negligible because psi_check decays super-polynomially.
    std::vector<Complex> buf(n);
    double dxi = 2.0 * kPi / (2.0 * umax);
    for (std::size_t m = 0; m < n; ++m) {
        double mm = static_cast<double>(m) - (m > n / 2 ? static_cast<double>(n) : 0.0);
        buf[m] = bank.psi_hat(mm * dxi);
    }
    fft_inplace(buf, true);  // inverse, includes 1/n
    table->psi.resize(n);
    double scale = static_cast<double>(n) / (2.0 * umax);  // (n/U) * ifft
    for (std::size_t j = 0; j < n; ++j) {
        // reorder so index 0 corresponds to u = -umax
        std::size_t src = (j + n / 2) % n;
        table->psi[j] = buf[src].real() * scale;
    }
    table->antider.resize(n);
    table->antider[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j)
        table->antider[j] = table->antider[j - 1] + 0.5 * (table->psi[j - 1] + table->psi[j]) * du;

    double apeak = 0.0;
    for (double v : table->antider) apeak = std::max(apeak, std::abs(v));
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t j = n; j-- > 0;) suffix[j] = std::max(suffix[j + 1], std::abs(table->antider[j]));
    double radius = umax;
    for (std::size_t j = n / 2; j < n; ++j) {
        if (suffix[j] <= 1e-10 * apeak) {
            radius = -umax + du * static_cast<double>(j);
            break;
        }
    }
    table->tail_radius = std::max(8.0, radius);

    const PsiKernelTable& ref = *table;
    cache.emplace(key, std::move(table));
    return ref;
}

double q_l1_norm_step(const FilterBank& bank, int k, const FunctionSpec& step_f) {
    const auto* g = step_f.get_if<GridData>();
    if (!g || g->interp != GridData::Interp::Step)
        throw Error("q_l1_norm_step expects a step grid");
    const PsiKernelTable& tab = psi_kernel(bank);

    // jump weights at cell edges
    std::vector<double> pos;
    std::vector<Complex> w;
    const std::size_t nc = g->samples.size();
    Complex prev{};
    for (std::size_t i = 0; i <= nc; ++i) {
        Complex cur = i < nc ? g->samples[i] : Complex{};
        Complex jump = cur - prev;
        if (jump != Complex{}) {
            pos.push_back(g->origin + g->spacing * static_cast<double>(i));
            w.push_back(jump);
        }
        prev = cur;
    }
    if (pos.empty()) return 0.0;

    const double s = std::ldexp(1.0, k);  // 2^k
    const double W = tab.tail_radius / s;
    // merged integration windows around the edges
    std::vector<Interval> windows;
    for (double p : pos) {
        Interval iv{p - W, p + W};
        if (!windows.empty() && iv.lo <= windows.back().hi)
            windows.back().hi = iv.hi;
        else
            windows.push_back(iv);
    }

    double dx = 1.0 / (16.0 * s);
    double total = 0.0;
    std::size_t lo_edge = 0;
    for (const Interval& win : windows) {
        std::size_t steps = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(win.length() / dx)));
        steps = std::min<std::size_t>(steps, std::size_t{1} << 22);
        double h = win.length() / static_cast<double>(steps);
        // advance the lower edge pointer once per window
        while (lo_edge < pos.size() && pos[lo_edge] < win.lo - W) ++lo_edge;
        double acc = 0.0;
        for (std::size_t i = 0; i <= steps; ++i) {
            double x = win.lo + h * static_cast<double>(i);
            Complex val{};
            for (std::size_t e = lo_edge; e < pos.size() && pos[e] <= x + W; ++e) {
                if (pos[e] < x - W) continue;
                val += w[e] * tab.antiderivative(s * (x - pos[e]));
            }
            double weight = (i == 0 || i == steps) ? 0.5 : 1.0;  // trapezoid
            acc += weight * std::abs(val);
        }
        total += acc * h;
    }
    return total;
}

}  // namespace bimax
