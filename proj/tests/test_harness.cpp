#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "bimax/harness.hpp"

using namespace bimax;

TEST_SUITE_BEGIN("harness");

TEST_CASE("sum lemma left side at the origin matches direct summation") {
    // sum_k min(2^-k, 2^{k/2}, 1) = 1 + 1 + 2^{-1/2}/(1 - 2^{-1/2})
    double expect = 2.0 + std::exp2(-0.5) / (1.0 - std::exp2(-0.5));
    double lhs = sum_lemma_lhs(0, 0, 0, 0, -200, 200);
    CHECK(lhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(lhs == doctest::Approx(4.4142135623).epsilon(1e-9));
}

TEST_CASE("sum lemma tail value at offset 20, computed by the summation oracle") {
    // rising flank sums to 2^-7 / (1 - 2^-1/2), falling flank to 2^-6
    double expect = std::exp2(-7.0) / (1.0 - std::exp2(-0.5)) + std::exp2(-6.0);
    double lhs = sum_lemma_lhs(0, 0, 0, 20, -200, 220);
    CHECK(lhs == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("sum lemma left side is shift invariant") {
    double a = sum_lemma_lhs(3, 5, 2, -4, -50, 60);
    double b = sum_lemma_lhs(3, 5, 9, 3, -43, 67);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("verify_sum_lemma reports the measured constants") {
    SumLemmaConfig cfg;
    cfg.n_max = 4;
    cfg.i_abs = 8;
    cfg.k_margin = 30;
    ExperimentReport r = verify_sum_lemma(cfg);
    double c_half = 0.0, c_third = 0.0;
    for (const auto& m : r.measurements) {
        if (m.label == "min_constant_half_rate") c_half = m.value;
        if (m.label == "min_constant_third_rate") c_third = m.value;
    }
    CHECK(c_half > 0.0);
    CHECK(c_third > 0.0);
    // the 1/3-rate renormalization stays small; the literal 1/2-rate does not
    CHECK(c_third <= 8.0);
    CHECK(c_half >= c_third);
}

TEST_CASE("report round trip and content hash") {
    SumLemmaConfig cfg;
    cfg.n_max = 2;
    cfg.i_abs = 4;
    cfg.k_margin = 20;
    ExperimentReport r = verify_sum_lemma(cfg);
    r.fits.emplace_back("demo", fit_loglog(std::vector<std::pair<double, double>>{
                                    {1.0, 1.0}, {2.0, 2.0}, {4.0, 4.0}}));

    std::string path = (std::filesystem::temp_directory_path() / "bimax_report_test.json").string();
    std::string csv = (std::filesystem::temp_directory_path() / "bimax_report_test.csv").string();
    write_report(r, path, csv);
    ExperimentReport back = read_report(path);
    CHECK(structurally_equal(r, back));
    CHECK(back.config_hash == sha1_hex(back.config.dump()));
    CHECK(std::filesystem::exists(csv));
    std::remove(path.c_str());
    std::remove(csv.c_str());
}

TEST_CASE("reading a missing report raises IoFailure") {
    CHECK_THROWS_AS(read_report("/nonexistent/bimax/report.json"), IoFailure);
}

TEST_CASE("sha1 known vectors") {
    CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
    CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
}

TEST_CASE("function specs round-trip through their JSON schema") {
    std::vector<FunctionSpec> specs;
    specs.push_back(FunctionSpec::indicator({-0.25, 1.5}, 2.0));
    specs.push_back(FunctionSpec::gaussian(0.3, 0.7, 1.1));
    specs.push_back(FunctionSpec::grid(-1.0, 0.5, {Complex{1, 0}, Complex{2, -1}}));
    specs.push_back(FunctionSpec::step(0.0, 0.25, {Complex{1, 0}, Complex{-3, 0}}));
    specs.push_back(random_band_limited(9, {2.0, 9.0}, {-1.0, 1.0}, 1.0));
    for (const FunctionSpec& f : specs) {
        FunctionSpec back = function_from_json(to_json(f));
        Interval s = f.support();
        for (int i = 0; i <= 32; ++i) {
            double x = s.lo - 0.1 + (s.length() + 0.2) * i / 32.0;
            CHECK(std::abs(f.evaluate(x) - back.evaluate(x)) <= 1e-15);
        }
    }
}

TEST_CASE("curve specs round-trip through their JSON schema") {
    CurveSpec spec;
    spec.kind = "poly";
    spec.coeffs1 = {0.0, 1.0, 0.5};
    spec.coeffs2 = {0.0, -1.0};
    spec.eta = {0.25, 0.75};
    CurveSpec back = curve_spec_from_json(to_json(spec));
    CHECK(back.kind == spec.kind);
    CHECK(back.coeffs1 == spec.coeffs1);
    CHECK(back.coeffs2 == spec.coeffs2);
    CHECK(back.eta.center == spec.eta.center);
    CHECK(back.eta.halfwidth == spec.eta.halfwidth);
    Curve a = make_curve(spec);
    Curve b = make_curve(back);
    CHECK(a.gamma1(0.4) == b.gamma1(0.4));
    CHECK(a.jac(0.4) == b.jac(0.4));
}

TEST_CASE("norms of the zero function vanish without error") {
    FunctionSpec z = FunctionSpec::step(0.0, 0.5, {Complex{}, Complex{}});
    CHECK(lp_norm(z, 1.0) == 0.0);
    CHECK(lp_norm(z, 0.5, true) == 0.0);
}

TEST_CASE("band too narrow for the support raises InvalidBand") {
    CHECK_THROWS_AS(random_band_limited(1, {5.0, 5.5}, {-1.0, 1.0}, 1.0), InvalidBand);
}

TEST_CASE("weak-half experiment on zero-normalizable input produces zero quasinorm") {
    FunctionSpec z = FunctionSpec::step(0.0, 0.5, {Complex{}, Complex{}});
    CHECK(weak_quasinorm(z, 0.5, 64, 0.5) == 0.0);
}

TEST_CASE("doubling the alpha-grid density moves the quasinorm by at most 5 percent") {
    FunctionSpec f = FunctionSpec::gaussian(0.0, 1.0, 2.0);
    double a = weak_quasinorm(f, 0.5, 64, 1e-3);
    double b = weak_quasinorm(f, 0.5, 128, 1e-3);
    CHECK(std::abs(a - b) <= 0.05 * std::max(a, b));
}

TEST_CASE("spike packets are L1 normalized and deterministic") {
    FunctionSpec a = spike_packet(123, {-1.0, 1.0}, std::ldexp(1.0, -10));
    FunctionSpec b = spike_packet(123, {-1.0, 1.0}, std::ldexp(1.0, -10));
    const auto* ga = a.get_if<GridData>();
    const auto* gb = b.get_if<GridData>();
    REQUIRE(ga);
    double l1 = 0.0;
    for (std::size_t i = 0; i < ga->samples.size(); ++i) {
        CHECK(ga->samples[i] == gb->samples[i]);
        l1 += std::abs(ga->samples[i]) * ga->spacing;
    }
    CHECK(l1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weak-half growth fit runs on a reduced configuration") {
    WeakHalfConfig cfg = default_weak_half_config();
    cfg.n_list = {{0, 0}, {2, 2}, {4, 4}};
    cfg.trials = 1;
    ExperimentReport r = run_weak_half_experiment(cfg);
    REQUIRE(!r.fits.empty());
    CHECK(r.fits[0].second.points.size() == 3);
    // the paper's loss is quadratic; the measured growth must stay below 2.5
    CHECK(r.pass);
}

TEST_CASE("sharpness experiments reproduce across runs and thread counts") {
    SharpnessConfig cfg = default_sharpness_config("degenerate_J");
    cfg.deltas = {std::ldexp(1.0, -5), std::ldexp(1.0, -6), std::ldexp(1.0, -7),
                  std::ldexp(1.0, -8), std::ldexp(1.0, -9)};
    set_max_threads(1);
    ExperimentReport a = run_sharpness(cfg);
    set_max_threads(3);
    ExperimentReport b = run_sharpness(cfg);
    set_max_threads(0);
    REQUIRE(a.measurements.size() == b.measurements.size());
    for (std::size_t i = 0; i < a.measurements.size(); ++i)
        CHECK(a.measurements[i].value == b.measurements[i].value);
    CHECK(a.config_hash == b.config_hash);
}

TEST_CASE("halving the finest delta moves a converged sharpness slope only slightly") {
    SharpnessConfig cfg = default_sharpness_config("degenerate_J");
    ExperimentReport a = run_sharpness(cfg);
    SharpnessConfig finer = cfg;
    finer.deltas.push_back(cfg.deltas.back() / 2.0);
    ExperimentReport b = run_sharpness(finer);
    double sa = 0.0, sb = 0.0, r2 = 0.0;
    for (const auto& m : a.measurements)
        if (m.label == "slope") sa = m.value;
    for (const auto& m : b.measurements)
        if (m.label == "slope") sb = m.value;
    for (const auto& [label, fit] : a.fits) r2 = fit.r_squared;
    REQUIRE(r2 >= 0.95);
    CHECK(std::abs(sa - sb) <= 0.05);
}

TEST_CASE("exponent scan flags the spec triple correctly") {
    ExponentScanConfig cfg;
    cfg.op = "full0";
    cfg.grid = {{1.0, 1.0}, {0.0, 0.0}, {0.5, 0.5}};  // last point scales the first toward (0,0)
    cfg.delta0 = 1.0 / 4.0;
    ExperimentReport r = run_exponent_scan(cfg);
    double flag_11 = -1.0, flag_00 = -1.0, flag_half = -1.0;
    for (const auto& m : r.measurements) {
        if (m.label == "p0_flag") flag_11 = m.value;
        if (m.label == "p1_flag") flag_00 = m.value;
        if (m.label == "p2_flag") flag_half = m.value;
    }
    CHECK(flag_11 == 1.0);  // q = 1/2 < 1 blows up
    CHECK(flag_00 == 0.0);  // bounded at (0,0)
    CHECK(flag_half <= flag_11);  // flags are monotone along rays toward the origin
    CHECK(r.pass);

    ExponentScanConfig lac;
    lac.op = "lacunary";
    lac.grid = {{0.5, 0.5}};
    lac.delta0 = 1.0 / 4.0;
    ExperimentReport rl = run_exponent_scan(lac);
    for (const auto& m : rl.measurements)
        if (m.label == "p0_flag") CHECK(m.value == 0.0);
    CHECK(rl.pass);
}

TEST_SUITE_END();
