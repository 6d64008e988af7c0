// Copyright 2026 The cohlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cohlab/scaling.h"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "cohlab/rng.h"

namespace cohlab {

std::vector<PairCrossing> curve_crossings(const Curve &a, const Curve &b) {
    if (a.x != b.x) {
        throw std::invalid_argument("curve_crossings: curves must share the x grid");
    }
    std::vector<PairCrossing> out;
    for (size_t i = 0; i + 1 < a.x.size(); i++) {
        double d0 = a.y[i] - b.y[i], d1 = a.y[i + 1] - b.y[i + 1];
        double dx = a.x[i + 1] - a.x[i];
        if (d0 == 0) {
            // Touching at a grid point counts once, at the left end of an interval.
            if (i == 0 || (a.y[i - 1] - b.y[i - 1]) * d1 < 0) {
                out.push_back({a.x[i], std::abs(d1 - (i ? a.y[i - 1] - b.y[i - 1] : d0)) / dx});
            }
            continue;
        }
        if (d0 * d1 < 0) {
            double t = d0 / (d0 - d1);
            out.push_back({a.x[i] + t * dx, std::abs(d1 - d0) / dx});
        }
    }
    return out;
}

namespace {

void check_curves(std::vector<Curve> &curves) {
    if (curves.size() < 2) {
        throw std::invalid_argument("crossing_detect: need at least two system sizes");
    }
    std::sort(curves.begin(), curves.end(), [](const Curve &a, const Curve &b) { return a.L < b.L; });
    for (const auto &c : curves) {
        if (c.x.size() != c.y.size() || (!c.y_err.empty() && c.y_err.size() != c.y.size())) {
            throw std::invalid_argument("crossing_detect: inconsistent curve lengths");
        }
        if (c.x != curves[0].x) {
            throw std::invalid_argument("crossing_detect: curves must share the x grid");
        }
        if (!std::is_sorted(c.x.begin(), c.x.end()) || c.x.size() < 2) {
            throw std::invalid_argument("crossing_detect: x grid must be increasing with >= 2 points");
        }
    }
}

std::vector<double> steepest_pair_crossings(const std::vector<Curve> &curves) {
    std::vector<double> out;
    for (size_t i = 0; i + 1 < curves.size(); i++) {
        auto cs = curve_crossings(curves[i], curves[i + 1]);
        if (cs.empty()) {
            continue;
        }
        auto best = std::max_element(cs.begin(), cs.end(), [](const PairCrossing &a, const PairCrossing &b) {
            return a.steepness < b.steepness;
        });
        out.push_back(best->x);
    }
    return out;
}

double mean(const std::vector<double> &v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double> &v) {
    if (v.size() < 2) {
        return 0;
    }
    double m = mean(v), s = 0;
    for (double a : v) {
        s += (a - m) * (a - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

CrossingResult crossing_detect(std::vector<Curve> curves, size_t bootstrap, uint64_t seed) {
    check_curves(curves);
    CrossingResult res;
    res.pair_crossings = steepest_pair_crossings(curves);
    if (res.pair_crossings.empty()) {
        return res;
    }
    res.found = true;
    res.estimate = mean(res.pair_crossings);

    Rng rng(seed);
    bool have_err = std::all_of(curves.begin(), curves.end(), [](const Curve &c) { return !c.y_err.empty(); });
    std::vector<double> reps;
    for (size_t b = 0; b < bootstrap; b++) {
        if (have_err) {
            std::normal_distribution<double> gauss;
            auto noisy = curves;
            for (auto &c : noisy) {
                for (size_t i = 0; i < c.y.size(); i++) {
                    c.y[i] += c.y_err[i] * gauss(rng);
                }
            }
            auto xs = steepest_pair_crossings(noisy);
            if (!xs.empty()) {
                reps.push_back(mean(xs));
            }
        } else {
            std::vector<double> xs;
            for (size_t i = 0; i < res.pair_crossings.size(); i++) {
                xs.push_back(res.pair_crossings[uniform_below(rng, res.pair_crossings.size())]);
            }
            reps.push_back(mean(xs));
        }
    }
    res.error = stddev(reps);
    const auto &x = curves[0].x;
    size_t j = std::upper_bound(x.begin(), x.end(), res.estimate) - x.begin();
    j = std::clamp<size_t>(j, 1, x.size() - 1);
    res.error = std::max(res.error, (x[j] - x[j - 1]) / 2);
    return res;
}

CollapseForm parse_collapse_form(std::string_view name) {
    if (name == "I3" || name == "i3") {
        return CollapseForm::I3;
    }
    if (name == "coherent_info" || name == "C") {
        return CollapseForm::COHERENT_INFO;
    }
    throw std::invalid_argument("unknown collapse form '" + std::string(name) + "'");
}

double collapse_residual(
    const std::vector<CollapsePoint> &data, CollapseForm form, double x_c, double nu, double beta, int degree) {
    // Model y = L^(beta/nu) P(u), u = (x - x_c) L^(1/nu); fitting P by least
    // squares in y itself (rows scaled by L^(beta/nu)) keeps residuals in the
    // data's units, so rescaling cannot shrink them.
    size_t n = data.size();
    Eigen::VectorXd u(n), y(n), s(n);
    for (size_t i = 0; i < n; i++) {
        const auto &p = data[i];
        u(i) = (p.x - x_c) * std::pow(p.L, 1.0 / nu);
        y(i) = p.y;
        s(i) = form == CollapseForm::COHERENT_INFO ? std::pow(p.L, beta / nu) : 1.0;
    }
    // Rescale the abscissa to [-1, 1] for a well-conditioned Vandermonde matrix.
    double lo = u.minCoeff(), hi = u.maxCoeff();
    double mid = (lo + hi) / 2, half = std::max((hi - lo) / 2, 1e-300);
    Eigen::MatrixXd V(n, degree + 1);
    for (size_t i = 0; i < n; i++) {
        double t = (u(i) - mid) / half, pw = s(i);
        for (int d = 0; d <= degree; d++) {
            V(i, d) = pw;
            pw *= t;
        }
    }
    Eigen::VectorXd coef = V.colPivHouseholderQr().solve(y);
    double ssr = (V * coef - y).squaredNorm();
    double sst = (y.array() - y.mean()).square().sum();
    if (!(sst > 0)) {
        return std::numeric_limits<double>::infinity();
    }
    return ssr / sst;
}

CollapseFit collapse_fit(const std::vector<CollapsePoint> &data, CollapseForm form, const CollapseOptions &opt) {
    std::set<double> sizes;
    for (const auto &p : data) {
        if (!(p.L > 0)) {
            throw std::invalid_argument("collapse_fit: system sizes must be positive");
        }
        sizes.insert(p.L);
    }
    if (sizes.size() < 3) {
        throw std::invalid_argument("collapse_fit: need at least three system sizes");
    }
    if (opt.degree < 1 || data.size() <= static_cast<size_t>(opt.degree) + 1) {
        throw std::invalid_argument("collapse_fit: too few points for the polynomial degree");
    }
    auto [ymin, ymax] = std::minmax_element(data.begin(), data.end(),
                                            [](const CollapsePoint &a, const CollapsePoint &b) { return a.y < b.y; });
    if (ymax->y - ymin->y <= 1e-12 * std::max(1.0, std::abs(ymax->y))) {
        throw DegenerateData("collapse_fit: data are constant");
    }
    auto [xmin, xmax] = std::minmax_element(data.begin(), data.end(),
                                            [](const CollapsePoint &a, const CollapsePoint &b) { return a.x < b.x; });
    double lo[3] = {std::isnan(opt.x_c_lo) ? xmin->x : opt.x_c_lo, opt.nu_lo, opt.beta_lo};
    double hi[3] = {std::isnan(opt.x_c_hi) ? xmax->x : opt.x_c_hi, opt.nu_hi, opt.beta_hi};
    size_t dims = form == CollapseForm::COHERENT_INFO ? 3 : 2;
    if (dims == 2) {
        lo[2] = hi[2] = 0;
    }

    CollapseFit fit;
    fit.degree = opt.degree;
    double best[3] = {lo[0], lo[1], lo[2]};
    double best_r = std::numeric_limits<double>::infinity();
    size_t g = std::max<size_t>(opt.grid, 2);
    double step[3];
    for (size_t d = 0; d < 3; d++) {
        step[d] = (hi[d] - lo[d]) / static_cast<double>(g - 1);
    }
    auto search = [&](const double *center, const double *half, size_t pts) {
        double cur[3] = {best[0], best[1], best[2]};
        size_t per = pts;
        size_t total = per * per * (dims == 3 ? per : 1);
        for (size_t c = 0; c < total; c++) {
            size_t r = c;
            for (size_t d = 0; d < dims; d++) {
                size_t i = r % per;
                r /= per;
                double t = per == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(per - 1);
                cur[d] = std::clamp(center[d] + t * half[d], lo[d], hi[d]);
            }
            double res = collapse_residual(data, form, cur[0], cur[1], cur[2], opt.degree);
            if (res < best_r) {
                best_r = res;
                std::copy(cur, cur + 3, best);
            }
        }
    };
    double center[3], half[3];
    for (size_t d = 0; d < 3; d++) {
        center[d] = (lo[d] + hi[d]) / 2;
        half[d] = (hi[d] - lo[d]) / 2;
    }
    search(center, half, g);
    fit.level_residuals.push_back(best_r);
    for (size_t level = 0; level < opt.levels; level++) {
        std::copy(best, best + 3, center);
        std::copy(step, step + 3, half);
        search(center, half, 11);
        fit.level_residuals.push_back(best_r);
        for (double &s : step) {
            s /= 5;
        }
    }
    fit.x_c = best[0];
    fit.nu = best[1];
    fit.beta = best[2];
    fit.residual = best_r;
    return fit;
}

}  // namespace cohlab
