#include <doctest.h>

#include <cmath>
#include <random>

#include "bimax/curve.hpp"

using namespace bimax;

TEST_SUITE_BEGIN("curve");

namespace {

CurveSpec poly_spec(std::vector<double> c1, std::vector<double> c2, BumpParams eta = {0.0, 1.0}) {
    CurveSpec s;
    s.kind = "poly";
    s.coeffs1 = std::move(c1);
    s.coeffs2 = std::move(c2);
    s.eta = eta;
    return s;
}

const HypothesisVerdict& get(const std::vector<HypothesisVerdict>& vs, Hypothesis h) {
    for (const auto& v : vs)
        if (v.hypothesis == h) return v;
    throw std::runtime_error("missing verdict");
}

}  // namespace

TEST_CASE("circle builtin evaluates cos/sin with exact derivatives") {
    Curve c = make_named_curve("circle");
    CurvePoint p = eval_curve(c, 1.0);
    CHECK(p.gamma1 == doctest::Approx(std::cos(1.0)));
    CHECK(p.gamma2 == doctest::Approx(std::sin(1.0)));
    CHECK(p.dgamma1 == doctest::Approx(-std::sin(1.0)));
    CHECK(p.dgamma2 == doctest::Approx(std::cos(1.0)));
}

TEST_CASE("circle J vanishes at 3pi/4 and -pi/4") {
    Curve c = make_named_curve("circle", BumpParams{0.75 * kPi, 0.5});
    CHECK(std::abs(eval_curve(c, 0.75 * kPi).jac) < 1e-14);
    Curve c2 = make_named_curve("circle", BumpParams{-0.25 * kPi, 0.5});
    CHECK(std::abs(eval_curve(c2, -0.25 * kPi).jac) < 1e-14);
}

TEST_CASE("degenerate cubic has J = 3t^2") {
    Curve c = make_named_curve("degenerate-cubic");
    CurvePoint p = eval_curve(c, 0.5);
    CHECK(p.jac == doctest::Approx(3.0 * 0.25));
    CHECK(p.djac == doctest::Approx(6.0 * 0.5));
}

TEST_CASE("gamma = (t, -t) has constant J = 2") {
    Curve c = make_curve(poly_spec({0.0, 1.0}, {0.0, -1.0}));
    CHECK(eval_curve(c, 0.3).jac == doctest::Approx(2.0));
    CHECK(eval_curve(c, -0.9).jac == doctest::Approx(2.0));
}

TEST_CASE("eval_curve rejects out-of-domain arguments") {
    Curve c = make_named_curve("degenerate-cubic");
    CHECK_THROWS_AS(eval_curve(c, 100.0), OutOfDomain);
}

TEST_CASE("eta support must sit inside the domain") {
    CurveSpec s = poly_spec({0.0, 1.0}, {0.0, -1.0});
    s.domain = Interval{-1.0, 1.0};
    s.eta = {0.9, 0.5};
    CHECK_THROWS_AS(make_curve(s), EtaOutsideDomain);
}

TEST_CASE("finite differences validate closed-form derivatives at random points") {
    Curve c = make_named_curve("circle");
    Interval supp = c.eta_support();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(supp.lo, supp.hi);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        double t = unif(rng);
        double fd1 = (c.gamma1(t + h) - c.gamma1(t - h)) / (2 * h);
        double fd2 = (c.gamma2(t + h) - c.gamma2(t - h)) / (2 * h);
        CHECK(std::abs(fd1 - c.dgamma1(t)) < 1e-5 * std::max(1.0, std::abs(c.dgamma1(t))));
        CHECK(std::abs(fd2 - c.dgamma2(t)) < 1e-5 * std::max(1.0, std::abs(c.dgamma2(t))));
    }
}

TEST_CASE("hypothesis checks on the circle pass") {
    Curve c = make_named_curve("circle");
    auto vs = check_hypotheses(c, 400, 1024, 42);
    CHECK(get(vs, Hypothesis::H1).verdict == Verdict::Pass);
    CHECK(get(vs, Hypothesis::H2).verdict == Verdict::Pass);
    CHECK(get(vs, Hypothesis::H3).verdict == Verdict::Pass);
    CHECK(get(vs, Hypothesis::H2).margin > 0.0);
}

TEST_CASE("proportional derivatives fail H1") {
    Curve c = make_curve(poly_spec({0.0, 1.0}, {0.0, 2.0}));
    auto vs = check_hypotheses(c, 400, 256, 1);
    const auto& h1 = get(vs, Hypothesis::H1);
    CHECK(h1.verdict == Verdict::Fail);
    CHECK(h1.witness.has_value());
}

TEST_CASE("gamma2 - gamma1 constant fails H2 with a witness") {
    Curve c = make_curve(poly_spec({0.0, 1.0}, {1.0, 1.0}));  // (t, t+1)
    auto vs = check_hypotheses(c, 400, 512, 3);
    const auto& h2 = get(vs, Hypothesis::H2);
    CHECK(h2.verdict == Verdict::Fail);
    REQUIRE(h2.witness.has_value());
    // witness (a, b) should make b1 e^{a g1} + b2 e^{a g2} constant: b1 = -b2 e^a
    const auto& w = *h2.witness;
    Complex a{w[0], w[1]}, b1{w[2], w[3]}, b2{w[4], w[5]};
    Complex resid = b1 + b2 * std::exp(a);
    CHECK(std::abs(resid) < 1e-5);
}

TEST_CASE("degenerate cubic fails H3 at the double zero") {
    Curve c = make_named_curve("degenerate-cubic");
    auto vs = check_hypotheses(c, 400, 256, 5);
    const auto& h3 = get(vs, Hypothesis::H3);
    CHECK(h3.verdict == Verdict::Fail);
    REQUIRE(h3.witness.has_value());
    CHECK(std::abs((*h3.witness)[0]) < 1e-6);
}

TEST_CASE("check_hypotheses is deterministic in the seed") {
    Curve c = make_named_curve("circle");
    auto a = check_hypotheses(c, 300, 512, 99);
    auto b = check_hypotheses(c, 300, 512, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].verdict == b[i].verdict);
        CHECK(a[i].margin == b[i].margin);
    }
}

TEST_CASE("find_J_zeros locates the circle zeros inside supp eta") {
    Curve c = make_named_curve("circle", BumpParams{0.75 * kPi, 0.5});
    auto zs = find_J_zeros(c);
    REQUIRE(zs.size() == 1);
    CHECK(zs[0].t == doctest::Approx(0.75 * kPi).epsilon(1e-9));
    CHECK(zs[0].order == 1);
    CHECK(std::abs(c.jac(zs[0].t)) < 1e-9 * (1.0 + 1.5));
}

TEST_CASE("find_J_zeros is empty for nonvanishing J") {
    Curve c = make_curve(poly_spec({0.0, 1.0}, {0.0, -1.0}));
    CHECK(find_J_zeros(c).empty());
}

TEST_CASE("find_J_zeros reports an order >= 2 zero for the degenerate cubic") {
    Curve c = make_named_curve("degenerate-cubic");
    auto zs = find_J_zeros(c);
    REQUIRE(zs.size() == 1);
    CHECK(std::abs(zs[0].t) < 1e-9);
    CHECK(zs[0].order >= 2);
}

TEST_CASE("q exponent arithmetic") {
    CHECK(q_exponent(2, 2) == doctest::Approx(1.0));
    CHECK(q_exponent(1, 1) == doctest::Approx(0.5));
    CHECK(q_exponent(std::numeric_limits<double>::infinity(), 3) == doctest::Approx(3.0));
    CHECK(std::isinf(q_exponent(std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity())));
    CHECK_THROWS_AS(q_exponent(0.5, 2), InvalidExponent);
}

TEST_CASE("derivative mismatch is impossible for builtin forms but domain errors surface") {
    // polynomial with eta outside a restricted domain
    CurveSpec s = poly_spec({0.0, 0.0, 1.0}, {0.0, 1.0});
    s.domain = Interval{-2.0, 2.0};
    s.eta = {3.0, 0.5};
    CHECK_THROWS_AS(make_curve(s), EtaOutsideDomain);
}

TEST_SUITE_END();
