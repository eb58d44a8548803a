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
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "bimax/harness.hpp"

using namespace bimax;

namespace {

GridSpec parse_grid(double xmin, double xmax, std::size_t n) {
    GridSpec g;
    g.origin = xmin;
    g.count = n;
    g.spacing = (xmax - xmin) / static_cast<double>(n > 1 ? n - 1 : 1);
    return g;
}

std::vector<double> parse_eps_range(const std::string& spec) {
    // "1e-1..1e-5" -> geometric decade steps
    auto pos = spec.find("..");
    if (pos == std::string::npos) return {std::stod(spec)};
    double hi = std::stod(spec.substr(0, pos));
    double lo = std::stod(spec.substr(pos + 2));
    if (hi < lo) std::swap(hi, lo);
    std::vector<double> out;
    for (double e = hi; e >= lo * (1.0 - 1e-12); e /= 10.0) out.push_back(e);
    return out;
}

Json default_configs() {
    Json j;
    {
        SharpnessConfig c = default_sharpness_config("qlt1");
        j["sharpness"] = {{"variant", c.variant}, {"deltas", c.deltas},     {"p1", c.p1},
                          {"p2", c.p2},           {"curve", c.curve},       {"slope_tol", c.slope_tol}};
        SharpnessConfig d = default_sharpness_config("degenerate_J");
        j["sharpness_degenerate"] = {{"variant", d.variant}, {"deltas", d.deltas},
                                     {"p1", d.p1},           {"p2", d.p2},
                                     {"curve", d.curve},     {"slope_tol", d.slope_tol}};
    }
    {
        ExponentScanConfig c = default_exponent_scan_config("full0");
        Json grid = Json::array();
        for (auto& [a, b] : c.grid) grid.push_back({a, b});
        j["scan"] = {{"grid", grid},
                     {"op", c.op},
                     {"trials", c.trials},
                     {"seed", c.seed},
                     {"delta0", c.delta0},
                     {"growth_threshold", c.growth_threshold},
                     {"boundary_margin", c.boundary_margin}};
    }
    {
        SumLemmaConfig c;
        j["sumlemma"] = {{"n_max", c.n_max},
                         {"i_abs", c.i_abs},
                         {"k_margin", c.k_margin},
                         {"c_threshold", c.c_threshold}};
    }
    {
        WeakHalfConfig c = default_weak_half_config();
        Json nl = Json::array();
        for (auto& [a, b] : c.n_list) nl.push_back({a, b});
        j["weakhalf"] = {{"curve", c.curve},
                         {"n_list", nl},
                         {"alpha_levels", c.alpha_levels},
                         {"trials", c.trials},
                         {"seed", c.seed},
                         {"exponent_threshold", c.exponent_threshold}};
    }
    return j;
}

SharpnessConfig sharpness_from_json(const Json& j) {
    SharpnessConfig c = default_sharpness_config(j.value("variant", "qlt1"));
    if (j.contains("deltas")) c.deltas = j["deltas"].get<std::vector<double>>();
    c.p1 = j.value("p1", c.p1);
    c.p2 = j.value("p2", c.p2);
    c.curve = j.value("curve", c.curve);
    c.slope_tol = j.value("slope_tol", c.slope_tol);
    return c;
}

ExponentScanConfig scan_from_json(const Json& j) {
    ExponentScanConfig c = default_exponent_scan_config(j.value("op", "full0"));
    if (j.contains("grid")) {
        c.grid.clear();
        for (const auto& p : j["grid"]) c.grid.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.delta0 = j.value("delta0", c.delta0);
    c.growth_threshold = j.value("growth_threshold", c.growth_threshold);
    c.boundary_margin = j.value("boundary_margin", c.boundary_margin);
    return c;
}

SumLemmaConfig sumlemma_from_json(const Json& j) {
    SumLemmaConfig c;
    c.n_max = j.value("n_max", c.n_max);
    c.i_abs = j.value("i_abs", c.i_abs);
    c.k_margin = j.value("k_margin", c.k_margin);
    c.c_threshold = j.value("c_threshold", c.c_threshold);
    return c;
}

WeakHalfConfig weakhalf_from_json(const Json& j) {
    WeakHalfConfig c = default_weak_half_config();
    c.curve = j.value("curve", c.curve);
    if (j.contains("n_list")) {
        c.n_list.clear();
        for (const auto& p : j["n_list"]) c.n_list.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }
    c.alpha_levels = j.value("alpha_levels", c.alpha_levels);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.exponent_threshold = j.value("exponent_threshold", c.exponent_threshold);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bimax: numerical laboratory for singular bilinear maximal operators"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

    // hyp check
    auto* hyp = app.add_subcommand("hyp", "curve hypothesis checks");
    auto* hyp_check = hyp->add_subcommand("check", "run H1/H2/H3 checkers");
    std::string hyp_curve = "circle";
    std::uint64_t hyp_seed = 1;
    int hyp_budget = 2000;
    hyp_check->add_option("--curve", hyp_curve, "curve name or JSON file")->required();
    hyp_check->add_option("--seed", hyp_seed, "search seed");
    hyp_check->add_option("--budget", hyp_budget, "search budget");

    // fn norm
    auto* fn = app.add_subcommand("fn", "test-function utilities");
    auto* fn_norm = fn->add_subcommand("norm", "Lp / weak-Lp norms");
    std::string fn_input;
    double fn_p = 2.0;
    bool fn_weak = false;
    double fn_res = 0.0;
    fn_norm->add_option("--input", fn_input, "function JSON")->required();
    fn_norm->add_option("--p", fn_p, "exponent (inf allowed as 'inf')");
    fn_norm->add_flag("--weak", fn_weak, "weak quasinorm");
    fn_norm->add_option("--resolution", fn_res, "sampling resolution");

    // lp apply / recon
    auto* lp = app.add_subcommand("lp", "Littlewood-Paley projections");
    auto* lp_apply = lp->add_subcommand("apply", "apply P/Q/Qtilde at scale k");
    std::string lp_which = "Q", lp_input, lp_out;
    int lp_k = 0;
    double lp_res = 0.0;
    lp_apply->add_option("--which", lp_which, "P | Q | Qtilde")->required();
    lp_apply->add_option("--k", lp_k, "scale index")->required();
    lp_apply->add_option("--input", lp_input, "function JSON")->required();
    lp_apply->add_option("--out", lp_out, "output JSON")->required();
    lp_apply->add_option("--resolution", lp_res, "grid resolution (default per scale)");
    auto* lp_recon = lp->add_subcommand("recon", "reconstruction error");
    std::string lpr_input;
    int lpr_k = 0, lpr_n = 12;
    double lpr_res = 0.0;
    lp_recon->add_option("--k", lpr_k, "base scale")->required();
    lp_recon->add_option("--N", lpr_n, "number of Q terms")->required();
    lp_recon->add_option("--input", lpr_input, "function JSON")->required();
    lp_recon->add_option("--resolution", lpr_res, "grid resolution");

    // op
    auto* op = app.add_subcommand("op", "bilinear operators");
    std::string op_kind, op_curve = "circle", op_f1, op_f2, op_out;
    double op_r = 1.0, op_xmin = -3.0, op_xmax = 3.0, op_tau = 2.0, op_res = 0.0;
    std::size_t op_xn = 1024;
    int op_kmin = -4, op_kmax = 4, op_per_octave = 8, op_n1 = 0, op_n2 = 0, op_tpoints = 256;
    double op_ilo = -0.5, op_ihi = 0.5;
    op->add_option("kind", op_kind, "br|lacunary|full|mn|ni|hl")->required();
    op->add_option("--curve", op_curve, "curve name or JSON file");
    op->add_option("--f1", op_f1, "first input JSON");
    op->add_option("--f2", op_f2, "second input JSON");
    op->add_option("--r", op_r, "radius for br");
    op->add_option("--kmin", op_kmin, "smallest scale index");
    op->add_option("--kmax", op_kmax, "largest scale index");
    op->add_option("--per-octave", op_per_octave, "radii per octave (full/hl)");
    op->add_option("--n1", op_n1, "first frequency offset (mn)");
    op->add_option("--n2", op_n2, "second frequency offset (mn)");
    op->add_option("--xmin", op_xmin, "output grid start");
    op->add_option("--xmax", op_xmax, "output grid end");
    op->add_option("--xn", op_xn, "output grid points");
    op->add_option("--t-points", op_tpoints, "quadrature panels");
    op->add_option("--tau", op_tau, "HL power");
    op->add_option("--interval-lo", op_ilo, "interval for ni");
    op->add_option("--interval-hi", op_ihi, "interval for ni");
    op->add_option("--resolution", op_res, "filter/profile resolution");
    op->add_option("--out", op_out, "output JSON")->required();

    // czd
    auto* czd_cmd = app.add_subcommand("czd", "Calderon-Zygmund decomposition");
    std::string cz_input, cz_out;
    double cz_level = 0.5, cz_res = 1.0 / 256.0;
    czd_cmd->add_option("--input", cz_input, "function JSON")->required();
    czd_cmd->add_option("--level", cz_level, "decomposition height")->required();
    czd_cmd->add_option("--resolution", cz_res, "dyadic cell target");
    czd_cmd->add_option("--out", cz_out, "output JSON")->required();

    // smooth
    auto* smooth = app.add_subcommand("smooth", "trilinear smoothing experiments");
    auto* sm_decay = smooth->add_subcommand("decay", "filtered decay experiment");
    std::string smd_curve = "circle", smd_csv;
    int smd_nmin = 3, smd_nmax = 9, smd_trials = 20;
    std::uint64_t smd_seed = 7;
    sm_decay->add_option("--curve", smd_curve, "curve name or JSON file");
    sm_decay->add_option("--nmin", smd_nmin, "smallest diagonal n");
    sm_decay->add_option("--nmax", smd_nmax, "largest diagonal n");
    sm_decay->add_option("--trials", smd_trials, "trials per n");
    sm_decay->add_option("--seed", smd_seed, "master seed");
    sm_decay->add_option("--csv", smd_csv, "CSV output path");
    auto* sm_sub = smooth->add_subcommand("sublevel", "sublevel measure fits");
    std::string sms_family = "poly", sms_eps = "1e-1..1e-4";
    int sms_n = 2;
    sm_sub->add_option("--family", sms_family, "family name (poly)");
    sm_sub->add_option("--N", sms_n, "monomial degree");
    sm_sub->add_option("--eps", sms_eps, "epsilon range lo..hi");

    // run
    auto* run = app.add_subcommand("run", "experiment harness");
    std::string run_kind, run_config, run_out = "report.json", run_csv;
    std::uint64_t run_seed = 0;
    bool run_has_seed = false;
    run->add_option("kind", run_kind, "sharpness|scan|sumlemma|weakhalf")->required();
    run->add_option("--config", run_config, "config JSON file");
    run->add_option("--out", run_out, "report path");
    run->add_option("--csv", run_csv, "CSV sidecar path");
    run->add_option("--seed", run_seed, "seed override")->each([&](const std::string&) {
        run_has_seed = true;
    });

    // config show
    auto* config = app.add_subcommand("config", "configuration");
    auto* config_show = config->add_subcommand("show", "print default experiment configs");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) set_max_threads(threads);

    try {
        if (hyp_check->parsed()) {
            Curve c = curve_from_file_or_name(hyp_curve);
            auto verdicts = check_hypotheses(c, 400, hyp_budget, hyp_seed);
            bool any_fail = false;
            for (const auto& v : verdicts) {
                std::printf("%s %s margin=%.3e", to_string(v.hypothesis), to_string(v.verdict),
                            v.margin);
                if (v.witness) {
                    std::printf(" witness=[");
                    for (std::size_t i = 0; i < v.witness->size(); ++i)
                        std::printf("%s%.6g", i ? ", " : "", (*v.witness)[i]);
                    std::printf("]");
                }
                std::printf("\n");
                if (v.verdict == Verdict::Fail) any_fail = true;
            }
            return any_fail ? 1 : 0;
        }
        if (fn_norm->parsed()) {
            FunctionSpec f = function_from_file(fn_input);
            double v = lp_norm(f, fn_p, fn_weak, fn_res);
            std::printf("%.12g\n", v);
            return 0;
        }
        if (lp_apply->parsed()) {
            FilterBank bank = make_filter_bank();
            Projection which = lp_which == "P"   ? Projection::P
                               : lp_which == "Q" ? Projection::Q
                                                 : Projection::Qtilde;
            double res = lp_res > 0.0 ? lp_res : kPi * std::ldexp(1.0, -lp_k - 6);
            FunctionSpec out = apply_projection(bank, which, lp_k, function_from_file(lp_input), res);
            write_function(out, lp_out);
            return 0;
        }
        if (lp_recon->parsed()) {
            FilterBank bank = make_filter_bank();
            double res = lpr_res > 0.0 ? lpr_res : kPi * std::ldexp(1.0, -lpr_k - lpr_n - 6);
            double err = reconstruction_error(bank, function_from_file(lpr_input), lpr_k, lpr_n, res);
            std::printf("%.12g\n", err);
            return 0;
        }
        if (op->parsed()) {
            GridSpec xs = parse_grid(op_xmin, op_xmax, op_xn);
            FunctionSpec out;
            if (op_kind == "ni" || op_kind == "hl") {
                FunctionSpec f = function_from_file(op_f1);
                ScaleRange s{op_kmin, op_kmax, op_per_octave};
                out = op_kind == "ni" ? ni_maximal(f, {op_ilo, op_ihi}, s, xs, op_res)
                                      : hl_maximal(f, op_tau, s, xs, op_res);
            } else {
                Curve c = curve_from_file_or_name(op_curve);
                FunctionSpec f1 = function_from_file(op_f1);
                FunctionSpec f2 = function_from_file(op_f2);
                QuadratureSpec quad = default_quadrature(c, op_tpoints);
                ScaleRange s{op_kmin, op_kmax, op_per_octave};
                if (op_kind == "br")
                    out = eval_br(c, f1, f2, op_r, xs, quad);
                else if (op_kind == "lacunary")
                    out = lacunary_maximal(c, f1, f2, s, xs, quad);
                else if (op_kind == "full")
                    out = full_maximal(c, f1, f2, s, xs, quad);
                else if (op_kind == "mn") {
                    double res = op_res > 0.0
                                     ? op_res
                                     : kPi * std::ldexp(1.0, -(op_kmax + std::max(op_n1, op_n2) + 6));
                    FilterBank bank = make_filter_bank();
                    out = mn_maximal(c, f1, f2, {op_n1, op_n2}, s, bank, xs, quad, res);
                } else {
                    throw Error("unknown op kind: " + op_kind);
                }
            }
            write_function(out, op_out);
            return 0;
        }
        if (czd_cmd->parsed()) {
            CZOutput cz = cz_decompose(function_from_file(cz_input), cz_level, cz_res);
            save_json(to_json(cz), cz_out);
            return 0;
        }
        if (sm_decay->parsed()) {
            Curve c = curve_from_file_or_name(smd_curve);
            FilterBank bank = make_filter_bank();
            std::vector<std::pair<int, int>> ns;
            for (int m = smd_nmin; m <= smd_nmax; ++m) ns.emplace_back(m, m);
            SlopeFit fit = decay_experiment(c, ns, smd_trials, smd_seed, bank,
                                            kPi * std::ldexp(1.0, -smd_nmax - 5));
            std::printf("slope=%.6g r2=%.6g\n", fit.slope, fit.r_squared);
            if (!smd_csv.empty()) {
                std::ofstream csv(smd_csv);
                csv << "n,median_l1,log2_median\n";
                for (std::size_t i = 0; i < fit.points.size(); ++i) {
                    double n = fit.points[i].first;       // log2 abscissa = n
                    double l2m = fit.points[i].second;    // log2 median
                    csv << n << ',' << std::exp2(l2m) << ',' << l2m << '\n';
                }
            }
            return 0;
        }
        if (sm_sub->parsed()) {
            if (sms_family != "poly") throw Error("unknown family: " + sms_family);
            auto eps = parse_eps_range(sms_eps);
            auto f = [n = sms_n](double x) { return std::pow(x, n); };
            SlopeFit fit = sublevel_fit(f, {-1.0, 1.0}, sms_n, eps, 2.0 / 8192.0);
            std::printf("slope=%.6g r2=%.6g expected=%.6g\n", fit.slope, fit.r_squared,
                        1.0 / sms_n);
            return 0;
        }
        if (run->parsed()) {
            Json cfg = run_config.empty() ? Json::object() : load_json(run_config);
            if (run_has_seed) cfg["seed"] = run_seed;
            ExperimentReport report;
            if (run_kind == "sharpness")
                report = run_sharpness(sharpness_from_json(cfg));
            else if (run_kind == "scan")
                report = run_exponent_scan(scan_from_json(cfg));
            else if (run_kind == "sumlemma")
                report = verify_sum_lemma(sumlemma_from_json(cfg));
            else if (run_kind == "weakhalf")
                report = run_weak_half_experiment(weakhalf_from_json(cfg));
            else
                throw Error("unknown experiment: " + run_kind);
            write_report(report, run_out, run_csv);
            std::printf("%s: %s (%.2fs) -> %s\n", report.experiment.c_str(),
                        report.pass ? "pass" : "fail", report.runtime_seconds, run_out.c_str());
            return report.pass ? 0 : 1;
        }
        if (config_show->parsed()) {
            std::cout << default_configs().dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
