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
#include "bimax/czd.hpp"

#include <algorithm>
#include <cmath>

namespace bimax {

namespace {

struct DyadicGrid {
    double cell = 0.0;
    double origin = 0.0;  // multiple of the root length
    std::size_t n = 0;    // power of two
    std::vector<Complex> vals;
    std::vector<double> abs_prefix;  // prefix sums of |v| * cell
    // Tree roots as [begin, end) cell ranges.  A support straddling 0 is not
    // contained in any single 0-anchored dyadic interval, so the lattice is
    // entered through one root per side of the origin.
    std::vector<std::pair<std::size_t, std::size_t>> roots;
};

DyadicGrid discretize(const FunctionSpec& f, double level, double resolution) {
    DyadicGrid g;
    g.cell = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(resolution))));

    Interval s = f.support();
    if (!(s.length() > 0.0)) throw Error("cz_decompose requires a function with support");

    // If the input is already a step grid on a compatible dyadic lattice, use
    // its cells directly; otherwise sample cell midpoints.
    const auto* gd = f.get_if<GridData>();
    bool direct = false;
    if (gd && gd->interp == GridData::Interp::Step) {
        double ratio = gd->spacing / g.cell;
        double offs = gd->origin / g.cell;
        if (std::abs(ratio - 1.0) < 1e-12 && std::abs(offs - std::round(offs)) < 1e-9) direct = true;
    }

    const bool straddles = s.lo < 0.0 && s.hi > 0.0;
    std::size_t n = 2;
    double origin = 0.0;
    const std::size_t n_cap = std::size_t{1} << 26;
    while (true) {
        double top = g.cell * static_cast<double>(n);
        if (straddles) {
            // two roots [-top/2, 0) and [0, top/2)
            origin = -0.5 * top;
            if (-origin >= -s.lo && 0.5 * top >= s.hi) break;
        } else {
            origin = std::floor(s.lo / top) * top;
            if (origin + top >= s.hi) break;
        }
        n *= 2;
        if (n > n_cap) throw Error("cz grid too large");
    }
    g.n = n;
    g.origin = origin;

    g.vals.assign(g.n, Complex{});
    for (std::size_t i = 0; i < g.n; ++i) {
        double mid = g.origin + g.cell * (static_cast<double>(i) + 0.5);
        if (direct) {
            double u = (mid - gd->origin) / gd->spacing;
            if (u >= 0.0 && u < static_cast<double>(gd->samples.size()))
                g.vals[i] = gd->samples[static_cast<std::size_t>(u)];
        } else {
            g.vals[i] = f.evaluate(mid);
        }
    }

    // grow the zero-padded box until every root average is <= level
    auto root_avg_ok = [&] {
        double acc_lo = 0.0, acc_hi = 0.0;
        std::size_t half = g.n / 2;
        for (std::size_t i = 0; i < half; ++i) acc_lo += std::abs(g.vals[i]);
        for (std::size_t i = half; i < g.n; ++i) acc_hi += std::abs(g.vals[i]);
        if (straddles)
            return acc_lo / static_cast<double>(half) <= level &&
                   acc_hi / static_cast<double>(half) <= level;
        return (acc_lo + acc_hi) / static_cast<double>(g.n) <= level;
    };
    while (!root_avg_ok()) {
        double top = g.cell * static_cast<double>(g.n);
        double new_top = 2.0 * top;
        double new_origin = straddles ? -top : std::floor(g.origin / new_top) * new_top;
        std::size_t shift = static_cast<std::size_t>(std::llround((g.origin - new_origin) / g.cell));
        std::vector<Complex> grown(2 * g.n, Complex{});
        for (std::size_t i = 0; i < g.n; ++i) grown[i + shift] = g.vals[i];
        g.vals = std::move(grown);
        g.origin = new_origin;
        g.n *= 2;
        if (g.n > n_cap) throw Error("cz grid too large");
    }

    if (straddles) {
        g.roots = {{0, g.n / 2}, {g.n / 2, g.n}};
    } else {
        g.roots = {{0, g.n}};
    }

    g.abs_prefix.assign(g.n + 1, 0.0);
    for (std::size_t i = 0; i < g.n; ++i)
        g.abs_prefix[i + 1] = g.abs_prefix[i] + std::abs(g.vals[i]) * g.cell;
    return g;
}

}  // namespace

CZOutput cz_decompose(const FunctionSpec& f, double level, double resolution) {
    if (!(level > 0.0)) throw LevelNonpositive("level must be positive");
    if (!(resolution > 0.0)) throw Error("resolution must be positive");

    DyadicGrid g = discretize(f, level, resolution);

    CZOutput out;
    out.level = level;
    out.cell = g.cell;
    out.grid_l1 = g.abs_prefix.back();

    std::vector<Complex> good = g.vals;
    std::vector<std::pair<std::size_t, std::size_t>> selected;  // [begin, end) cell ranges

    // stopping time: maximal dyadic intervals with average |f| > level
    auto avg = [&](std::size_t b, std::size_t e) {
        return (g.abs_prefix[e] - g.abs_prefix[b]) / (g.cell * static_cast<double>(e - b));
    };
    struct Frame {
        std::size_t b, e;
    };
    std::vector<Frame> stack;
    for (const auto& [b, e] : g.roots) stack.push_back({b, e});
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (avg(fr.b, fr.e) > level) {
            selected.emplace_back(fr.b, fr.e);
            continue;
        }
        if (fr.e - fr.b == 1) continue;
        std::size_t mid = fr.b + (fr.e - fr.b) / 2;
        stack.push_back({mid, fr.e});
        stack.push_back({fr.b, mid});
    }
    std::sort(selected.begin(), selected.end());

    for (const auto& [b, e] : selected) {
        Complex mean{};
        for (std::size_t i = b; i < e; ++i) mean += g.vals[i];
        mean /= static_cast<double>(e - b);
        std::vector<Complex> hvals(e - b);
        for (std::size_t i = b; i < e; ++i) {
            hvals[i - b] = g.vals[i] - mean;
            good[i] = mean;
        }
        CZAtom atom;
        atom.iv = {g.origin + g.cell * static_cast<double>(b), g.origin + g.cell * static_cast<double>(e)};
        atom.h = FunctionSpec::step(atom.iv.lo, g.cell, std::move(hvals));
        out.atoms.push_back(std::move(atom));
    }

    out.good = FunctionSpec::step(g.origin, g.cell, std::move(good));
    return out;
}

ScaleGrouping group_by_scale(const CZOutput& cz) {
    ScaleGrouping sg;
    if (cz.atoms.empty()) return sg;

    const auto* gd = cz.good.get_if<GridData>();
    std::map<int, std::vector<Complex>> acc;
    for (const CZAtom& atom : cz.atoms) {
        double len = atom.iv.length();
        int i = -static_cast<int>(std::lround(std::log2(len)));
        auto& vals = acc[i];
        if (vals.empty()) vals.assign(gd->samples.size(), Complex{});
        const auto* ag = atom.h.get_if<GridData>();
        std::size_t off = static_cast<std::size_t>(std::llround((atom.iv.lo - gd->origin) / cz.cell));
        for (std::size_t j = 0; j < ag->samples.size(); ++j) vals[off + j] += ag->samples[j];
    }
    for (auto& [i, vals] : acc)
        sg.by_scale.emplace(i, FunctionSpec::step(gd->origin, cz.cell, std::move(vals)));
    return sg;
}

std::pair<std::vector<Interval>, double> exceptional_set(std::span<const CZOutput> czs,
                                                         double dilation) {
    if (!(dilation >= 1.0)) throw Error("dilation must be >= 1");
    std::vector<Interval> dilated;
    for (const CZOutput& cz : czs) {
        for (const CZAtom& atom : cz.atoms) {
            double c = atom.iv.center();
            double half = 0.5 * dilation * atom.iv.length();
            dilated.push_back({c - half, c + half});
        }
    }
    std::sort(dilated.begin(), dilated.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo;
    });
    std::vector<Interval> merged;
    for (const Interval& iv : dilated) {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    double measure = 0.0;
    for (const Interval& iv : merged) measure += iv.length();
    return {std::move(merged), measure};
}

}  // namespace bimax
