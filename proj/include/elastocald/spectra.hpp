#pragma once

// Dense complex spectra and the theoretical spectrum sets of the flat-arc
// composition: the discrete set (two isolated values plus a sequence
// accumulating at the cluster point) and the open bounded set parameterized
// by the Sobolev index.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

#include "elastocald/common.hpp"
#include "elastocald/material.hpp"

namespace elastocald {

inline std::vector<Complex> eigenvalues(const MatXc& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (!a.allFinite()) throw std::invalid_argument("eigenvalues: non-finite entries");
  Eigen::ComplexEigenSolver<MatXc> es(a, /*computeEigenvectors=*/false);
  std::vector<Complex> out(a.rows());
  for (int i = 0; i < a.rows(); ++i) out[i] = es.eigenvalues()[i];
  return out;
}

/// The discrete part of the flat-arc composition spectrum:
/// { flat_eig_a, flat_eig_b } and flat_cluster (1 + 1/n), n = 1..n_max.
inline std::vector<Complex> lambda_inf(const OperatorConstants& c, int n_max) {
  std::vector<Complex> out;
  out.reserve(n_max + 2);
  out.emplace_back(c.flat_eig_a, 0.0);
  out.emplace_back(c.flat_eig_b, 0.0);
  for (int n = 1; n <= n_max; ++n) out.emplace_back(c.flat_cluster * (1.0 + 1.0 / n), 0.0);
  return out;
}

/// Membership in the open set Lambda_s:
///   z = -flat_cluster (lx + i ly) with lx + 1 < 0 and
///   s + 1/2 < -(lx + 1) / ((lx + 1)^2 + ly^2).
inline bool in_lambda_s(const OperatorConstants& c, double s, Complex z) {
  if (c.flat_cluster == 0.0) throw std::invalid_argument("in_lambda_s: degenerate material");
  if (!(s > 0.0)) throw std::invalid_argument("in_lambda_s: s must be positive");
  Complex w = -z / c.flat_cluster;
  double lx = w.real(), ly = w.imag();
  if (!(lx + 1.0 < 0.0)) return false;
  double denom = (lx + 1.0) * (lx + 1.0) + ly * ly;
  return s + 0.5 < -(lx + 1.0) / denom;
}

/// Largest possible modulus over the flat-arc spectrum (all s > 0).
inline double spectrum_max_modulus(const OperatorConstants& c) {
  return std::max({std::abs(c.flat_eig_a), std::abs(c.flat_eig_b), 3.0 * std::abs(c.flat_cluster)});
}

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  Complex cluster_point;
  std::vector<double> radii;
  std::vector<double> fraction_within;  // aligned with radii
  std::vector<double> sorted_distances;
};

inline SpectrumReport cluster_report(const std::vector<Complex>& eigs, Complex cluster,
                                     const std::vector<double>& radii) {
  SpectrumReport rep;
  rep.eigenvalues = eigs;
  rep.cluster_point = cluster;
  rep.radii = radii;
  rep.sorted_distances.reserve(eigs.size());
  for (const auto& e : eigs) rep.sorted_distances.push_back(std::abs(e - cluster));
  std::sort(rep.sorted_distances.begin(), rep.sorted_distances.end());
  for (double r : radii) {
    auto it = std::upper_bound(rep.sorted_distances.begin(), rep.sorted_distances.end(), r);
    rep.fraction_within.push_back(eigs.empty() ? 0.0
                                               : double(it - rep.sorted_distances.begin()) /
                                                     double(eigs.size()));
  }
  return rep;
}

inline double median_distance(const SpectrumReport& rep) {
  if (rep.sorted_distances.empty()) return 0.0;
  size_t n = rep.sorted_distances.size();
  return n % 2 ? rep.sorted_distances[n / 2]
               : 0.5 * (rep.sorted_distances[n / 2 - 1] + rep.sorted_distances[n / 2]);
}

}  // namespace elastocald
