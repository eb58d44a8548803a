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
#include "bimax/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bimax {

AnalyticComponent AnalyticComponent::poly(std::vector<double> coeffs) {
    AnalyticComponent c;
    c.kind_ = Kind::Poly;
    c.coeffs_ = std::move(coeffs);
    if (c.coeffs_.empty()) c.coeffs_.push_back(0.0);
    return c;
}
AnalyticComponent AnalyticComponent::cosine() {
    AnalyticComponent c;
    c.kind_ = Kind::Cos;
    return c;
}
AnalyticComponent AnalyticComponent::sine() {
    AnalyticComponent c;
    c.kind_ = Kind::Sin;
    return c;
}

double AnalyticComponent::value(double t) const {
    switch (kind_) {
        case Kind::Cos: return std::cos(t);
        case Kind::Sin: return std::sin(t);
        case Kind::Poly: {
            double acc = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
            return acc;
        }
    }
    return 0.0;
}

double AnalyticComponent::deriv(double t) const {
    switch (kind_) {
        case Kind::Cos: return -std::sin(t);
        case Kind::Sin: return std::cos(t);
        case Kind::Poly: {
            double acc = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 1;) acc = acc * t + coeffs_[i] * static_cast<double>(i);
            return acc;
        }
    }
    return 0.0;
}

double AnalyticComponent::second(double t) const {
    switch (kind_) {
        case Kind::Cos: return -std::cos(t);
        case Kind::Sin: return -std::sin(t);
        case Kind::Poly: {
            double acc = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 2;)
                acc = acc * t + coeffs_[i] * static_cast<double>(i) * static_cast<double>(i - 1);
            return acc;
        }
    }
    return 0.0;
}

double bump_value(const BumpParams& b, double t) {
    double s = (t - b.center) / b.halfwidth;
    double u = 1.0 - s * s;
    if (u <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / u);
}

double bump_mass(const BumpParams& b) {
    // profile integral computed once by Simpson; the integrand vanishes to all
    // orders at the endpoints.
    static const double unit = [] {
        const int n = 1 << 12;
        double h = 2.0 / n;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double a = -1.0 + i * h;
            BumpParams unitb{0.0, 1.0};
            acc += (bump_value(unitb, a) + 4.0 * bump_value(unitb, a + 0.5 * h) + bump_value(unitb, a + h)) * h / 6.0;
        }
        return acc;
    }();
    return unit * b.halfwidth;
}

Curve::Curve(AnalyticComponent g1, AnalyticComponent g2, Interval domain, BumpParams eta)
    : g1_(std::move(g1)), g2_(std::move(g2)), domain_(domain), eta_(eta) {}

namespace {

void validate_curve(const Curve& c) {
    const Interval supp = c.eta_support();
    if (!(supp.lo > c.domain().lo && supp.hi < c.domain().hi) || !(c.eta_params().halfwidth > 0.0))
        throw EtaOutsideDomain("eta support must be a compact subset of the domain");

    // Closed-form derivatives must agree with central finite differences.
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unif(supp.lo, supp.hi);
    const double fd_h = 1e-6;
    for (int i = 0; i < 10; ++i) {
        double t = unif(rng);
        double fd1 = (c.gamma1(t + fd_h) - c.gamma1(t - fd_h)) / (2 * fd_h);
        double fd2 = (c.gamma2(t + fd_h) - c.gamma2(t - fd_h)) / (2 * fd_h);
        double scale1 = std::max(1.0, std::abs(c.dgamma1(t)));
        double scale2 = std::max(1.0, std::abs(c.dgamma2(t)));
        if (std::abs(fd1 - c.dgamma1(t)) > 1e-6 * scale1 || std::abs(fd2 - c.dgamma2(t)) > 1e-6 * scale2)
            throw DerivativeMismatch("closed-form derivative disagrees with finite difference");
    }

    // dgamma/dt must not vanish on supp eta.
    int n = 2048;
    double minspeed = std::numeric_limits<double>::infinity();
    double maxspeed = 0.0;
    for (int i = 0; i <= n; ++i) {
        double t = supp.lo + supp.length() * i / n;
        double sp = std::hypot(c.dgamma1(t), c.dgamma2(t));
        minspeed = std::min(minspeed, sp);
        maxspeed = std::max(maxspeed, sp);
    }
    if (minspeed <= 1e-12 * std::max(1.0, maxspeed))
        throw CurveDegenerate("dgamma/dt vanishes on supp eta");
}

}  // namespace

Curve make_curve(const CurveSpec& spec) {
    AnalyticComponent g1, g2;
    Interval dom;
    if (spec.kind == "circle") {
        g1 = AnalyticComponent::cosine();
        g2 = AnalyticComponent::sine();
        dom = spec.domain.value_or(Interval{-4 * kPi, 4 * kPi});
    } else if (spec.kind == "degenerate-cubic") {
        g1 = AnalyticComponent::poly({0.0, 1.0, 0.0, 1.0});  // t^3 + t
        g2 = AnalyticComponent::poly({0.0, 1.0});            // t
        dom = spec.domain.value_or(Interval{-4.0, 4.0});
    } else if (spec.kind == "poly") {
        g1 = AnalyticComponent::poly(spec.coeffs1);
        g2 = AnalyticComponent::poly(spec.coeffs2);
        dom = spec.domain.value_or(Interval{-16.0, 16.0});
    } else {
        throw Error("unknown curve kind: " + spec.kind);
    }
    Curve c(std::move(g1), std::move(g2), dom, spec.eta);
    validate_curve(c);
    return c;
}

Curve make_named_curve(const std::string& name) {
    if (name == "circle") return make_named_curve(name, BumpParams{kPi, 0.5});
    if (name == "degenerate-cubic") return make_named_curve(name, BumpParams{0.0, 1.0});
    throw Error("unknown curve name: " + name);
}

Curve make_named_curve(const std::string& name, BumpParams eta) {
    CurveSpec spec;
    spec.kind = name;
    spec.eta = eta;
    return make_curve(spec);
}

CurvePoint eval_curve(const Curve& c, double t) {
    if (!c.domain().contains_strictly(t)) throw OutOfDomain("t outside the curve domain");
    return {c.gamma1(t), c.gamma2(t), c.dgamma1(t), c.dgamma2(t), c.jac(t), c.djac(t)};
}

const char* to_string(Hypothesis h) {
    switch (h) {
        case Hypothesis::H1: return "H1";
        case Hypothesis::H2: return "H2";
        case Hypothesis::H3: return "H3";
    }
    return "?";
}
const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Scale-invariant dependence measure for the pair (e^{a g1}, e^{a g2}) over
// the bump-weighted grid: 1 - |corr|^2 of the centered components, which is
// zero iff some unit b makes b1 e^{a g1} + b2 e^{a g2} constant.  Components
// are rescaled by their max modulus first so large |Re a| cannot overflow.
struct H2Objective {
    const Curve* c;
    std::vector<double> ts;
    std::vector<double> wts;  // bump weights, normalized to total 1

    double normalized_lambda_min(Complex a, Complex* b_out = nullptr) const {
        double peak1 = -1e300, peak2 = -1e300;
        for (double t : ts) {
            peak1 = std::max(peak1, a.real() * c->gamma1(t));
            peak2 = std::max(peak2, a.real() * c->gamma2(t));
        }
        Complex m1{}, m2{};
        std::vector<Complex> v1(ts.size()), v2(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            v1[i] = std::exp(a * c->gamma1(ts[i]) - peak1);
            v2[i] = std::exp(a * c->gamma2(ts[i]) - peak2);
            m1 += wts[i] * v1[i];
            m2 += wts[i] * v2[i];
        }
        double p11 = 0, p22 = 0;
        Complex p12{};
        for (std::size_t i = 0; i < ts.size(); ++i) {
            p11 += wts[i] * std::norm(v1[i]);
            p22 += wts[i] * std::norm(v2[i]);
            p12 += wts[i] * v1[i] * std::conj(v2[i]);
        }
        double va = p11 - std::norm(m1);   // Var of component 1
        double vc = p22 - std::norm(m2);   // Var of component 2
        Complex vb = p12 - m1 * std::conj(m2);

        // a single essentially-constant component already breaks H2
        if (va <= 1e-26 || vc <= 1e-26) {
            if (b_out) {
                bool first = va <= vc;
                b_out[0] = first ? 1.0 : 0.0;
                b_out[1] = first ? 0.0 : 1.0;
            }
            return 0.0;
        }
        if (b_out) {
            // variance form is b^H M b with M = [[va, conj(vb)], [vb, vc]]
            double tr = va + vc;
            double det = va * vc - std::norm(vb);
            double lmin = 0.5 * tr - std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
            Complex b1 = std::conj(vb);
            Complex b2 = Complex(lmin - va, 0.0);
            // undo the per-component rescaling (phases only matter relatively)
            b1 *= std::exp(-std::clamp(peak1 - peak2, -700.0, 700.0));
            double nb = std::sqrt(std::norm(b1) + std::norm(b2));
            if (nb > 0) {
                b_out[0] = b1 / nb;
                b_out[1] = b2 / nb;
            }
        }
        double det = va * vc - std::norm(vb);
        return std::max(0.0, det) / std::max(va * vc, 1e-300);
    }
};

}  // namespace

std::vector<HypothesisVerdict> check_hypotheses(const Curve& c, int grid_density, int search_budget,
                                                std::uint64_t seed) {
    const Interval supp = c.eta_support();
    const int n = std::max(100, static_cast<int>(std::ceil(grid_density * supp.length())));

    std::vector<HypothesisVerdict> out;

    // H1: Gram determinant of (gamma1', gamma2') over supp eta, normalized.
    {
        double g11 = 0, g22 = 0, g12 = 0;
        for (int i = 0; i <= n; ++i) {
            double t = supp.lo + supp.length() * i / n;
            double d1 = c.dgamma1(t), d2 = c.dgamma2(t);
            g11 += d1 * d1;
            g22 += d2 * d2;
            g12 += d1 * d2;
        }
        double denom = std::max(g11 * g22, 1e-300);
        double gram = (g11 * g22 - g12 * g12) / denom;
        HypothesisVerdict v{Hypothesis::H1, Verdict::Pass, std::nullopt, gram};
        if (gram < 1e-10) {
            v.verdict = Verdict::Fail;
            v.witness = std::vector<double>{supp.center()};
        }
        out.push_back(std::move(v));
    }

    // H2: bounded-budget falsifier.  Searches complex a in [-10,10]^2 with
    // |a| >= 0.01, minimizing the normalized variance over unit (b1,b2).
    {
        H2Objective obj;
        obj.c = &c;
        obj.ts.resize(n + 1);
        obj.wts.resize(n + 1);
        double wsum = 0;
        for (int i = 0; i <= n; ++i) {
            double t = supp.lo + supp.length() * i / n;
            obj.ts[i] = t;
            obj.wts[i] = c.eta(t);
            wsum += obj.wts[i];
        }
        for (auto& w : obj.wts) w /= wsum;

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> box(-10.0, 10.0);
        double best = std::numeric_limits<double>::infinity();
        Complex best_a;
        int starts = std::max(8, search_budget / 16);
        std::vector<std::pair<double, Complex>> pool;
        for (int s = 0; s < starts; ++s) {
            Complex a(box(rng), box(rng));
            if (std::abs(a) < 0.01) a += Complex(0.05, 0.05);
            double val = obj.normalized_lambda_min(a);
            pool.emplace_back(val, a);
            if (val < best) {
                best = val;
                best_a = a;
            }
        }
        std::sort(pool.begin(), pool.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        // Nelder-Mead refinement of the best starts over (re a, im a).
        int refine_count = std::min<std::size_t>(4, pool.size());
        for (int r = 0; r < refine_count; ++r) {
            Complex a0 = pool[r].second;
            std::array<Complex, 3> simplex = {a0, a0 + Complex(0.3, 0.0), a0 + Complex(0.0, 0.3)};
            std::array<double, 3> fv;
            auto eval = [&](Complex a) {
                if (std::abs(a) < 0.01 || std::abs(a.real()) > 12 || std::abs(a.imag()) > 12)
                    return 1e9;
                return obj.normalized_lambda_min(a);
            };
            for (int i = 0; i < 3; ++i) fv[i] = eval(simplex[i]);
            int iters = std::max(20, search_budget / (4 * refine_count));
            for (int it = 0; it < iters; ++it) {
                // order
                std::array<int, 3> idx = {0, 1, 2};
                std::sort(idx.begin(), idx.end(), [&](int x, int y) { return fv[x] < fv[y]; });
                Complex xb = simplex[idx[0]], xm = simplex[idx[1]], xw = simplex[idx[2]];
                double fb = fv[idx[0]], fm = fv[idx[1]], fw = fv[idx[2]];
                Complex centroid = 0.5 * (xb + xm);
                Complex xr = centroid + (centroid - xw);
                double fr = eval(xr);
                Complex xnew;
                double fnew;
                if (fr < fb) {
                    Complex xe = centroid + 2.0 * (centroid - xw);
                    double fe = eval(xe);
                    if (fe < fr) {
                        xnew = xe;
                        fnew = fe;
                    } else {
                        xnew = xr;
                        fnew = fr;
                    }
                } else if (fr < fm) {
                    xnew = xr;
                    fnew = fr;
                } else {
                    Complex xc = centroid + 0.5 * (xw - centroid);
                    double fc = eval(xc);
                    if (fc < fw) {
                        xnew = xc;
                        fnew = fc;
                    } else {
                        // shrink
                        simplex = {xb, xb + 0.5 * (xm - xb), xb + 0.5 * (xw - xb)};
                        fv = {fb, eval(simplex[1]), eval(simplex[2])};
                        continue;
                    }
                }
                simplex = {xb, xm, xnew};
                fv = {fb, fm, fnew};
                if (fv[0] < 1e-14) break;
            }
            for (int i = 0; i < 3; ++i) {
                if (fv[i] < best) {
                    best = fv[i];
                    best_a = simplex[i];
                }
            }
        }

        HypothesisVerdict v{Hypothesis::H2, Verdict::Pass, std::nullopt, best};
        if (best < 1e-12) {
            Complex b[2];
            obj.normalized_lambda_min(best_a, b);
            v.verdict = Verdict::Fail;
            v.witness = std::vector<double>{best_a.real(), best_a.imag(), b[0].real(),
                                            b[0].imag(),   b[1].real(),  b[1].imag()};
        }
        out.push_back(std::move(v));
    }

    // H3: min over the grid of |J| + |J'| with bisection refinement at sign
    // changes of J and of J'.
    {
        auto m = [&](double t) { return std::abs(c.jac(t)) + std::abs(c.djac(t)); };
        double scale = 0.0;
        double minval = std::numeric_limits<double>::infinity();
        double min_t = supp.lo;
        std::vector<double> ts(n + 1);
        for (int i = 0; i <= n; ++i) {
            ts[i] = supp.lo + supp.length() * i / n;
            double mv = m(ts[i]);
            scale = std::max(scale, mv);
            if (mv < minval) {
                minval = mv;
                min_t = ts[i];
            }
        }
        auto bisect = [](const std::function<double(double)>& f, double a, double b) {
            double fa = f(a);
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                double fm = f(mid);
                if (fm == 0.0 || b - a < 1e-14) return mid;
                if ((fa < 0) != (fm < 0))
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            return 0.5 * (a + b);
        };
        for (int i = 0; i < n; ++i) {
            double ja = c.jac(ts[i]), jb = c.jac(ts[i + 1]);
            if ((ja < 0) != (jb < 0)) {
                double t = bisect([&](double x) { return c.jac(x); }, ts[i], ts[i + 1]);
                double mv = m(t);
                if (mv < minval) {
                    minval = mv;
                    min_t = t;
                }
            }
            double da = c.djac(ts[i]), db = c.djac(ts[i + 1]);
            if ((da < 0) != (db < 0)) {
                double t = bisect([&](double x) { return c.djac(x); }, ts[i], ts[i + 1]);
                double mv = m(t);
                if (mv < minval) {
                    minval = mv;
                    min_t = t;
                }
            }
        }
        double ref = std::max(scale, 1e-30);
        HypothesisVerdict v{Hypothesis::H3, Verdict::Pass, std::nullopt, minval};
        if (minval < 1e-9 * ref) {
            v.verdict = Verdict::Fail;
            v.witness = std::vector<double>{min_t};
        } else if (minval < 1e-6 * ref) {
            v.verdict = Verdict::Inconclusive;
            v.witness = std::vector<double>{min_t};
        }
        out.push_back(std::move(v));
    }

    return out;
}

std::vector<JZero> find_J_zeros(const Curve& c) {
    const Interval supp = c.eta_support();
    const int n = 4096;
    std::vector<double> ts(n + 1);
    double maxj = 0.0;
    for (int i = 0; i <= n; ++i) {
        ts[i] = supp.lo + supp.length() * i / n;
        maxj = std::max(maxj, std::abs(c.jac(ts[i])));
    }
    auto bisect_to = [&](const std::function<double(double)>& f, double a, double b) {
        double fa = f(a);
        while (b - a > 1e-12) {
            double mid = 0.5 * (a + b);
            double fm = f(mid);
            if (fm == 0.0) return mid;
            if ((fa < 0) != (fm < 0))
                b = mid;
            else {
                a = mid;
                fa = fm;
            }
        }
        return 0.5 * (a + b);
    };

    std::vector<double> candidates;
    for (int i = 0; i < n; ++i) {
        double ja = c.jac(ts[i]), jb = c.jac(ts[i + 1]);
        if (ja == 0.0) candidates.push_back(ts[i]);
        if ((ja < 0) != (jb < 0))
            candidates.push_back(bisect_to([&](double x) { return c.jac(x); }, ts[i], ts[i + 1]));
        // even-order zeros: J' changes sign and |J| is tiny there
        double da = c.djac(ts[i]), db = c.djac(ts[i + 1]);
        if ((da < 0) != (db < 0)) {
            double t = bisect_to([&](double x) { return c.djac(x); }, ts[i], ts[i + 1]);
            if (std::abs(c.jac(t)) < 1e-9 * (1.0 + maxj)) candidates.push_back(t);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    std::vector<JZero> zeros;
    for (double t : candidates) {
        if (std::abs(c.jac(t)) > 1e-9 * (1.0 + maxj)) continue;
        if (!zeros.empty() && std::abs(t - zeros.back().t) < 1e-8) continue;
        int order = std::abs(c.djac(t)) > 1e-8 ? 1 : 2;
        zeros.push_back({t, order});
    }
    return zeros;
}

double q_exponent(double p1, double p2) {
    if (std::isnan(p1) || std::isnan(p2) || p1 < 1.0 || p2 < 1.0)
        throw InvalidExponent("exponents must lie in [1, infinity]");
    double inv = (std::isinf(p1) ? 0.0 : 1.0 / p1) + (std::isinf(p2) ? 0.0 : 1.0 / p2);
    if (inv == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / inv;
}

}  // namespace bimax
