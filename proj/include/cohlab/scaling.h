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


#ifndef COHLAB_SCALING_H
#define COHLAB_SCALING_H

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cohlab {

/// One finite-size curve y(x) at system size L; x increasing. y_err is
/// optional (empty, or one standard error per point).
struct Curve {
    double L = 0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_err;
};

struct CrossingResult {
    bool found = false;
    double estimate = 0;
    double error = 0;
    /// Crossing of each adjacent-L pair that has one, smallest L first.
    std::vector<double> pair_crossings;
};

/// Linear-interpolated crossings of adjacent-L curves (sorted by L), averaged.
/// A pair with several sign changes contributes its steepest one.
/// The error is the bootstrap spread of the average: y values are resampled
/// from their standard errors when given, otherwise the pair crossings are
/// resampled; it never drops below half the grid spacing near the crossing.
CrossingResult crossing_detect(std::vector<Curve> curves, size_t bootstrap = 200, uint64_t seed = 1);

struct PairCrossing {
    double x;
    /// |d(y_a - y_b)/dx| on the bracketing interval.
    double steepness;
};

/// Every x where y_a - y_b changes sign on the common grid, by linear
/// interpolation. Both curves must share the same x grid.
std::vector<PairCrossing> curve_crossings(const Curve &a, const Curve &b);

enum class CollapseForm : uint8_t {
    I3,             // y = f((x - x_c) L^(1/nu))
    COHERENT_INFO,  // y = L^(beta/nu) g((x - x_c) L^(1/nu))
};

CollapseForm parse_collapse_form(std::string_view name);

struct CollapsePoint {
    double L;
    double x;
    double y;
};

struct CollapseFit {
    double x_c = 0;
    double nu = 0;
    double beta = 0;
    /// Unexplained fraction of the data's variance by the scaling form with
    /// a single polynomial: SSR / SST, both in units of y.
    double residual = 0;
    int degree = 4;
    /// Best residual after the grid and after each refinement level.
    std::vector<double> level_residuals;
};

struct CollapseOptions {
    int degree = 4;
    double x_c_lo = NAN, x_c_hi = NAN;  // default: the data's x range
    double nu_lo = 0.5, nu_hi = 2.5;
    double beta_lo = -1.0, beta_hi = 1.5;
    size_t grid = 21;
    size_t levels = 6;
};

struct DegenerateData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Grid search then successive local refinements (each keeps the best point
/// so far, so level residuals never increase).
CollapseFit collapse_fit(const std::vector<CollapsePoint> &data, CollapseForm form, const CollapseOptions &opt = {});

/// Residual of the collapse at fixed parameters.
double collapse_residual(
    const std::vector<CollapsePoint> &data, CollapseForm form, double x_c, double nu, double beta, int degree);

}  // namespace cohlab

#endif
