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

#include "miptqe/collapse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace miptqe {

namespace {

// Canonical point ordering so the objective is bit-identical under
// permutations of the input.
std::vector<ScanPoint> check_points(std::span<const ScanPoint> points, int poly_order) {
  if (static_cast<int>(points.size()) < poly_order + 2) {
    throw std::invalid_argument("need at least poly_order + 2 points");
  }
  for (const auto& pt : points) {
    if (!(pt.size > 0) || !std::isfinite(pt.p) || !std::isfinite(pt.value)) {
      throw std::invalid_argument("bad scan point");
    }
  }
  std::vector<ScanPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const ScanPoint& a, const ScanPoint& b) {
    if (a.size != b.size) return a.size < b.size;
    if (a.p != b.p) return a.p < b.p;
    return a.value < b.value;
  });
  return sorted;
}

}  // namespace

double collapse_residue(std::span<const ScanPoint> raw_points, double p_c, double nu,
                        int poly_order, bool weighted) {
  const auto points = check_points(raw_points, poly_order);
  if (!(nu > 0)) throw std::invalid_argument("nu must be positive");

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::VectorXd x(n), y(n), w(n);
  double xmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    x[i] = (pt.p - p_c) * std::pow(pt.size, 1.0 / nu);
    y[i] = pt.value;
    w[i] = (weighted && pt.stderr_ > 0) ? 1.0 / pt.stderr_ : 1.0;
    xmax = std::max(xmax, std::abs(x[i]));
  }
  if (xmax > 0) x /= xmax;  // scale into [-1, 1]

  // Chebyshev basis: spans the same degree-poly_order polynomials as
  // monomials but keeps the design matrix well conditioned at order 12.
  const Eigen::Index cols = poly_order + 1;
  Eigen::MatrixXd design(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    double t0 = 1.0, t1 = x[i];
    for (Eigen::Index j = 0; j < cols; ++j) {
      double t;
      if (j == 0) {
        t = t0;
      } else if (j == 1) {
        t = t1;
      } else {
        t = 2.0 * x[i] * t1 - t0;
        t0 = t1;
        t1 = t;
      }
      design(i, j) = t * w[i];
    }
  }
  // No spread in the rescaled abscissa at all (e.g. a single p value)
  // leaves a rank-deficient design no polynomial order can fix.
  if ((x.array() - x[0]).abs().maxCoeff() <= 1e-12) {
    throw std::invalid_argument("degenerate collapse fit: rank-deficient design matrix");
  }

  // Least squares; occasional coincidences of rescaled points (p_c equal
  // to a data p collapses one column of abscissas) stay well-defined.
  const Eigen::VectorXd rhs = y.cwiseProduct(w);
  const Eigen::VectorXd coeff = design.colPivHouseholderQr().solve(rhs);
  return (design * coeff - rhs).squaredNorm();
}

namespace {

struct Objective {
  std::span<const ScanPoint> points;
  const CollapseOptions* opt;

  double operator()(double p_c, double nu) const {
    if (nu < opt->nu_min) return std::numeric_limits<double>::infinity();
    return collapse_residue(points, p_c, nu, opt->poly_order, opt->weighted);
  }
};

struct Vertex {
  double p_c, nu, f;
};

// Standard Nelder-Mead on (p_c, nu): reflection 1, expansion 2,
// contraction 0.5, shrink 0.5.
Vertex nelder_mead(const Objective& obj, double p0, double nu0, double dp, double dnu,
                   const CollapseOptions& opt, bool* converged) {
  std::array<Vertex, 3> simplex{
      Vertex{p0, nu0, obj(p0, nu0)},
      Vertex{p0 + dp, nu0, obj(p0 + dp, nu0)},
      Vertex{p0, nu0 + dnu, obj(p0, nu0 + dnu)},
  };
  const auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  order();
  *converged = false;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if (std::isfinite(simplex[2].f) &&
        simplex[2].f - simplex[0].f < opt.simplex_tolerance) {
      *converged = true;
      break;
    }
    const double cx = (simplex[0].p_c + simplex[1].p_c) / 2;
    const double cn = (simplex[0].nu + simplex[1].nu) / 2;
    const auto try_point = [&](double t) {
      const double p = cx + t * (cx - simplex[2].p_c);
      const double n = cn + t * (cn - simplex[2].nu);
      return Vertex{p, n, obj(p, n)};
    };
    const Vertex refl = try_point(1.0);
    if (refl.f < simplex[0].f) {
      const Vertex exp = try_point(2.0);
      simplex[2] = exp.f < refl.f ? exp : refl;
    } else if (refl.f < simplex[1].f) {
      simplex[2] = refl;
    } else {
      const Vertex contr = refl.f < simplex[2].f ? try_point(0.5) : try_point(-0.5);
      if (contr.f < std::min(refl.f, simplex[2].f)) {
        simplex[2] = contr;
      } else {
        for (int k = 1; k < 3; ++k) {
          simplex[k].p_c = (simplex[k].p_c + simplex[0].p_c) / 2;
          simplex[k].nu = (simplex[k].nu + simplex[0].nu) / 2;
          simplex[k].f = obj(simplex[k].p_c, simplex[k].nu);
        }
      }
    }
    order();
  }
  return simplex[0];
}

}  // namespace

CollapseResult fit_collapse(std::span<const ScanPoint> points, const CollapseOptions& options) {
  (void)check_points(points, options.poly_order);
  std::vector<double> sizes;
  double p_lo = points[0].p, p_hi = points[0].p;
  for (const auto& pt : points) {
    sizes.push_back(pt.size);
    p_lo = std::min(p_lo, pt.p);
    p_hi = std::max(p_hi, pt.p);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 3) {
    throw std::invalid_argument("collapse needs at least 3 distinct sizes");
  }

  const Objective obj{points, &options};
  const double span = std::max(p_hi - p_lo, 1e-3);
  Vertex best{0, 0, std::numeric_limits<double>::infinity()};
  bool any_converged = false;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double p0 = p_lo + span * (0.1 + 0.2 * i);
      const double nu0 = 0.5 + 0.25 * j;
      bool conv = false;
      const Vertex v = nelder_mead(obj, p0, nu0, span * 0.05, 0.1, options, &conv);
      any_converged |= conv;
      if (v.f < best.f) best = v;
    }
  }
  CollapseResult result;
  result.p_c = best.p_c;
  result.nu = best.nu;
  result.eps_min = best.f;
  if (!any_converged || !std::isfinite(best.f)) {
    throw std::runtime_error("collapse fit did not converge; best residue " +
                             std::to_string(best.f) + " at p_c=" + std::to_string(best.p_c) +
                             " nu=" + std::to_string(best.nu));
  }
  const auto [pi, ni] = uncertainty_region(points, result, options);
  result.p_c_lo = pi.lo;
  result.p_c_hi = pi.hi;
  result.nu_lo = ni.lo;
  result.nu_hi = ni.hi;
  return result;
}

std::pair<Interval, Interval> uncertainty_region(std::span<const ScanPoint> points,
                                                 const CollapseResult& result,
                                                 const CollapseOptions& options) {
  if (options.threshold == 1.0) {
    // The sublevel set at exactly eps_min is the minimizer itself.
    return {Interval{result.p_c, result.p_c}, Interval{result.nu, result.nu}};
  }
  const Objective obj{points, &options};
  const double cutoff = options.threshold * std::max(result.eps_min, 1e-300);

  // Initial half-widths from where the residue crosses the threshold
  // along each axis, then a grid scan over a box a few times wider.
  const auto axis_halfwidth = [&](bool along_p) {
    double h = along_p ? 1e-4 : 1e-3;
    for (int i = 0; i < 60; ++i) {
      const double f = along_p ? obj(result.p_c + h, result.nu) : obj(result.p_c, result.nu + h);
      if (f > cutoff) break;
      h *= 2;
    }
    return h;
  };
  double hp = axis_halfwidth(true) * 2.5;
  double hn = axis_halfwidth(false) * 2.5;

  constexpr int kGrid = 101;
  const auto scan = [&](double cp, double cn, double wp, double wn, Interval* ip, Interval* in) {
    bool touches = false;
    bool found = false;
    double plo = cp, phi = cp, nlo = cn, nhi = cn;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double p = cp + wp * (2.0 * i / (kGrid - 1) - 1.0);
        const double n = cn + wn * (2.0 * j / (kGrid - 1) - 1.0);
        if (n < options.nu_min) continue;
        if (obj(p, n) <= cutoff) {
          found = true;
          plo = std::min(plo, p);
          phi = std::max(phi, p);
          nlo = std::min(nlo, n);
          nhi = std::max(nhi, n);
          if (i == 0 || i == kGrid - 1 || j == 0 || j == kGrid - 1) touches = true;
        }
      }
    }
    if (!found) {
      // The minimizer itself satisfies the threshold by construction.
      plo = phi = result.p_c;
      nlo = nhi = result.nu;
    }
    *ip = {plo, phi};
    *in = {nlo, nhi};
    return touches;
  };

  Interval ip, in;
  if (scan(result.p_c, result.nu, hp, hn, &ip, &in)) {
    hp *= 4;
    hn *= 4;
    if (scan(result.p_c, result.nu, hp, hn, &ip, &in)) {
      throw std::runtime_error("uncertainty region exceeds widened scan window");
    }
  }
  // Refine once on a box snug around the found region.
  const double rp = std::max((ip.hi - ip.lo) * 0.75, hp / (kGrid - 1));
  const double rn = std::max((in.hi - in.lo) * 0.75, hn / (kGrid - 1));
  Interval ip2, in2;
  if (!scan((ip.lo + ip.hi) / 2, (in.lo + in.hi) / 2, rp, rn, &ip2, &in2)) {
    ip = {std::min(ip.lo, ip2.lo), std::max(ip.hi, ip2.hi)};
    in = {std::min(in.lo, in2.lo), std::max(in.hi, in2.hi)};
  }
  ip.lo = std::min(ip.lo, result.p_c);
  ip.hi = std::max(ip.hi, result.p_c);
  in.lo = std::min(in.lo, result.nu);
  in.hi = std::max(in.hi, result.nu);
  return {ip, in};
}

}  // namespace miptqe
