// Copyright 2026 The miptqe Authors
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

#ifndef MIPTQE_COLLAPSE_HPP_
#define MIPTQE_COLLAPSE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace miptqe {

struct ScanPoint {
  double p = 0.0;
  double size = 0.0;    // linear system size L
  double value = 0.0;   // observable mean
  double stderr_ = 0.0; // standard error of the mean
  std::uint64_t n_samples = 1;
};

struct CollapseOptions {
  int poly_order = 12;
  bool weighted = false;        // inverse-variance weighting of the fit
  double threshold = 1.01;      // residue threshold factor for intervals
  int max_iterations = 10000;
  double simplex_tolerance = 1e-10;
  double nu_min = 0.05;
};

struct CollapseResult {
  double p_c = 0.0;
  double nu = 0.0;
  double eps_min = 0.0;
  double p_c_lo = 0.0, p_c_hi = 0.0;
  double nu_lo = 0.0, nu_hi = 0.0;
};

// Rescales every point to x = (p - p_c) * L^{1/nu}, fits a polynomial of
// the requested order by least squares (in x normalized by max|x| for
// conditioning) and returns the sum of squared residuals.
double collapse_residue(std::span<const ScanPoint> points, double p_c, double nu,
                        int poly_order = 12, bool weighted = false);

// Nelder-Mead minimization of the residue over (p_c, nu) from a 5x5
// multi-start grid, followed by the threshold-based uncertainty scan.
CollapseResult fit_collapse(std::span<const ScanPoint> points,
                            const CollapseOptions& options = {});

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// Bounding box of the region residue <= threshold * eps_min around the
// minimum, located by a 101x101 grid scan that is refined once. Throws if
// the region still touches the scan boundary after widening once.
std::pair<Interval, Interval> uncertainty_region(std::span<const ScanPoint> points,
                                                 const CollapseResult& result,
                                                 const CollapseOptions& options = {});

}  // namespace miptqe

#endif  // MIPTQE_COLLAPSE_HPP_
