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
#include "bimax/json_io.hpp"

#include <cmath>
#include <fstream>

namespace bimax {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoFailure("write failed: " + path);
}

Json to_json(const CurveSpec& spec) {
    Json j;
    j["kind"] = spec.kind;
    if (!spec.coeffs1.empty()) j["coeffs1"] = spec.coeffs1;
    if (!spec.coeffs2.empty()) j["coeffs2"] = spec.coeffs2;
    j["eta"] = {{"center", spec.eta.center}, {"halfwidth", spec.eta.halfwidth}};
    if (spec.domain) j["domain"] = {spec.domain->lo, spec.domain->hi};
    return j;
}

CurveSpec curve_spec_from_json(const Json& j) {
    CurveSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("coeffs1")) spec.coeffs1 = j["coeffs1"].get<std::vector<double>>();
    if (j.contains("coeffs2")) spec.coeffs2 = j["coeffs2"].get<std::vector<double>>();
    if (j.contains("eta")) {
        spec.eta.center = j["eta"].at("center").get<double>();
        spec.eta.halfwidth = j["eta"].at("halfwidth").get<double>();
    } else if (spec.kind == "circle") {
        spec.eta = {kPi, 0.5};
    } else {
        spec.eta = {0.0, 1.0};
    }
    if (j.contains("domain")) {
        auto d = j["domain"].get<std::vector<double>>();
        if (d.size() == 2) spec.domain = Interval{d[0], d[1]};
    }
    return spec;
}

Curve curve_from_file_or_name(const std::string& file_or_name) {
    if (file_or_name == "circle" || file_or_name == "degenerate-cubic")
        return make_named_curve(file_or_name);
    return make_curve(curve_spec_from_json(load_json(file_or_name)));
}

Json to_json(const FunctionSpec& f) {
    Json j;
    if (const auto* g = f.get_if<GridData>()) {
        j["variant"] = "grid";
        j["origin"] = g->origin;
        j["spacing"] = g->spacing;
        bool realonly = true;
        for (const Complex& z : g->samples)
            if (z.imag() != 0.0) {
                realonly = false;
                break;
            }
        std::vector<double> re(g->samples.size());
        for (std::size_t i = 0; i < g->samples.size(); ++i) re[i] = g->samples[i].real();
        j["samples"] = re;
        if (!realonly) {
            std::vector<double> im(g->samples.size());
            for (std::size_t i = 0; i < g->samples.size(); ++i) im[i] = g->samples[i].imag();
            j["samples_im"] = im;
        }
        if (g->periodic_box) j["periodic_box"] = true;
        if (g->interp == GridData::Interp::Step) j["interp"] = "step";
    } else if (const auto* d = f.get_if<IndicatorData>()) {
        j["variant"] = "indicator";
        j["interval"] = {d->iv.lo, d->iv.hi};
        j["height"] = d->height;
    } else if (const auto* d = f.get_if<GaussianData>()) {
        j["variant"] = "gaussian";
        j["center"] = d->center;
        j["width"] = d->width;
        j["height"] = d->height;
    } else if (const auto* d = f.get_if<BandlimitedData>()) {
        j["variant"] = "bandlimited";
        j["k"] = d->k;
        std::vector<double> re(d->c.size()), im(d->c.size());
        for (std::size_t i = 0; i < d->c.size(); ++i) {
            re[i] = d->c[i].real();
            im[i] = d->c[i].imag();
        }
        j["coeffs_re"] = re;
        j["coeffs_im"] = im;
        j["xi0"] = d->xi0;
        j["support"] = {d->support.lo, d->support.hi};
    }
    return j;
}

FunctionSpec function_from_json(const Json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "grid") {
        auto re = j.at("samples").get<std::vector<double>>();
        std::vector<Complex> s(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) s[i] = re[i];
        if (j.contains("samples_im")) {
            auto im = j["samples_im"].get<std::vector<double>>();
            for (std::size_t i = 0; i < im.size() && i < s.size(); ++i)
                s[i] = Complex(s[i].real(), im[i]);
        }
        if (j.value("interp", "") == std::string("step"))
            return FunctionSpec::step(j.at("origin").get<double>(), j.at("spacing").get<double>(),
                                      std::move(s));
        return FunctionSpec::grid(j.at("origin").get<double>(), j.at("spacing").get<double>(),
                                  std::move(s), j.value("periodic_box", false));
    }
    if (variant == "indicator") {
        auto iv = j.at("interval").get<std::vector<double>>();
        return FunctionSpec::indicator({iv.at(0), iv.at(1)}, j.at("height").get<double>());
    }
    if (variant == "gaussian") {
        return FunctionSpec::gaussian(j.at("center").get<double>(), j.at("width").get<double>(),
                                      j.at("height").get<double>());
    }
    if (variant == "bandlimited") {
        auto k = j.at("k").get<std::vector<int>>();
        auto re = j.at("coeffs_re").get<std::vector<double>>();
        auto im = j.at("coeffs_im").get<std::vector<double>>();
        std::vector<Complex> c(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) c[i] = Complex(re[i], i < im.size() ? im[i] : 0.0);
        auto s = j.at("support").get<std::vector<double>>();
        return FunctionSpec::bandlimited(std::move(k), std::move(c), j.at("xi0").get<double>(),
                                         {s.at(0), s.at(1)});
    }
    throw Error("unknown function variant: " + variant);
}

FunctionSpec function_from_file(const std::string& path) { return function_from_json(load_json(path)); }

void write_function(const FunctionSpec& f, const std::string& path) { save_json(to_json(f), path); }

Json to_json(const SlopeFit& fit) {
    Json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    Json pts = Json::array();
    for (const auto& [x, y] : fit.points) pts.push_back({x, y});
    j["points"] = pts;
    return j;
}

SlopeFit slope_fit_from_json(const Json& j) {
    SlopeFit fit;
    fit.slope = j.at("slope").get<double>();
    fit.intercept = j.at("intercept").get<double>();
    fit.r_squared = j.at("r_squared").get<double>();
    for (const auto& p : j.at("points")) fit.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return fit;
}

Json to_json(const CZOutput& cz) {
    Json j;
    j["level"] = cz.level;
    j["cell"] = cz.cell;
    j["good"] = to_json(cz.good);
    Json atoms = Json::array();
    double max_moment = 0.0, total_len = 0.0, max_h_ratio = 0.0;
    for (const CZAtom& atom : cz.atoms) {
        Json a;
        a["interval"] = {atom.iv.lo, atom.iv.hi};
        a["h"] = to_json(atom.h);
        atoms.push_back(std::move(a));
        const auto* g = atom.h.get_if<GridData>();
        Complex moment{};
        double l1 = 0.0;
        for (const Complex& v : g->samples) {
            moment += v;
            l1 += std::abs(v);
        }
        moment *= g->spacing;
        l1 *= g->spacing;
        if (l1 > 1e-12 * cz.level * atom.iv.length())
            max_moment = std::max(max_moment, std::abs(moment) / l1);
        max_h_ratio = std::max(max_h_ratio, l1 / (4.0 * cz.level * atom.iv.length()));
        total_len += atom.iv.length();
    }
    j["atoms"] = std::move(atoms);

    double ginf = 0.0;
    for (const Complex& v : cz.good.get_if<GridData>()->samples) ginf = std::max(ginf, std::abs(v));
    j["audit"] = {{"good_sup_over_level", ginf / cz.level},
                  {"max_relative_atom_moment", max_moment},
                  {"max_atom_l1_over_4_level_len", max_h_ratio},
                  {"total_atom_length", total_len},
                  {"l1_over_level", cz.grid_l1 / cz.level}};
    return j;
}

}  // namespace bimax
