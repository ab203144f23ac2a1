#pragma once

// Isotropic elastic material with a generalized traction parameter, and the
// closed-form scalar constants the operator theory is built on.

#include <cmath>
#include <stdexcept>
#include <string>

#include "elastocald/common.hpp"

namespace elastocald {

struct Material {
  double lambda = 2.0;    // first Lame parameter
  double mu = 1.0;        // shear modulus, > 0
  double mu_tilde = 1.0;  // generalized traction parameter
  double rho = 1.0;       // mass density, > 0
  double omega = 2.0;     // angular frequency, >= 0

  // The companion parameter is tied down by lambda~ + mu~ = lambda + mu.
  double lambda_tilde() const { return lambda + mu - mu_tilde; }

  // Compressional (smaller) and shear (larger) wavenumbers.
  double kp() const { return omega * std::sqrt(rho / (lambda + 2.0 * mu)); }
  double ks() const { return omega * std::sqrt(rho / mu); }

  void validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("material: mu must be positive");
    if (!(lambda + mu > 0.0)) throw std::invalid_argument("material: lambda + mu must be positive");
    if (!(rho > 0.0)) throw std::invalid_argument("material: rho must be positive");
    if (omega < 0.0) throw std::invalid_argument("material: omega must be nonnegative");
  }
};

/// Scalar constants derived from (lambda, mu, mu_tilde). kelvin_log/_dyad are
/// the coefficients of -ln r * I and of the unit dyad in the static
/// fundamental tensor; vkern_log/_dyad are the analogues for the auxiliary
/// kernel that regularizes the hyper-singular operator. dl_jump_gen is the
/// constant whose square shifts the Calderon eigenvalue cluster away from
/// -1/4; flat_* are the flat-arc composition eigenvalues.
struct OperatorConstants {
  double kelvin_log;    // (lambda+3mu) / (4 pi mu (lambda+2mu))
  double kelvin_dyad;   // (lambda+mu)  / (4 pi mu (lambda+2mu))
  double vkern_log;     // -(mu~+mu)[(lambda+mu)(mu~-3mu)+2mu(mu~-mu)] / (4 pi mu (lambda+2mu))
  double vkern_dyad;    // (lambda+mu)(mu~+mu)^2 / (4 pi mu (lambda+2mu))
  double dl_jump;       // mu / (2(lambda+2mu))
  double dl_jump_gen;   // (2 mu mu~ + (lambda+mu)(mu~-mu)) / (4 mu (lambda+2mu))
  double cluster;       // -1/4 + dl_jump_gen^2
  double flat_eig_a;    // -pi^2 vkern_log (kelvin_log ln2 + kelvin_dyad)
  double flat_eig_b;    // -pi^2 vkern_log kelvin_log ln2
  double flat_cluster;  // -pi^2 vkern_log kelvin_log  (= cluster)
};

inline OperatorConstants constants(const Material& m) {
  m.validate();
  const double lam = m.lambda, mu = m.mu, mut = m.mu_tilde;
  const double b = 1.0 / (4.0 * pi * mu * (lam + 2.0 * mu));
  OperatorConstants c{};
  c.kelvin_log  = (lam + 3.0 * mu) * b;
  c.kelvin_dyad = (lam + mu) * b;
  c.vkern_log   = -(mut + mu) * ((lam + mu) * (mut - 3.0 * mu) + 2.0 * mu * (mut - mu)) * b;
  c.vkern_dyad  = (lam + mu) * (mut + mu) * (mut + mu) * b;
  c.dl_jump     = mu / (2.0 * (lam + 2.0 * mu));
  c.dl_jump_gen = (2.0 * mu * mut + (lam + mu) * (mut - mu)) / (4.0 * mu * (lam + 2.0 * mu));
  c.cluster     = -0.25 + c.dl_jump_gen * c.dl_jump_gen;
  const double ln2 = std::log(2.0);
  c.flat_eig_a   = -pi * pi * c.vkern_log * (c.kelvin_log * ln2 + c.kelvin_dyad);
  c.flat_eig_b   = -pi * pi * c.vkern_log * c.kelvin_log * ln2;
  c.flat_cluster = -pi * pi * c.vkern_log * c.kelvin_log;
  return c;
}

/// Admissibility of mu_tilde. The two degenerate values make the composed
/// operators compact (and the weighted operators lose bicontinuity); the
/// third condition keeps the n = 0 diagonal entry of the auxiliary operator
/// away from zero.
struct Admissibility {
  bool admissible = true;
  std::string reason;  // empty when admissible
};

inline Admissibility check_admissible(const Material& m) {
  m.validate();
  const double tol = 1e-12;
  auto near = [&](double a, double b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  if (near(m.mu_tilde, -m.mu)) return {false, "mu_tilde = -mu"};
  const double second = m.mu * (3.0 * m.lambda + 5.0 * m.mu) / (m.lambda + 3.0 * m.mu);
  if (near(m.mu_tilde, second)) return {false, "mu_tilde = mu(3 lambda + 5 mu)/(lambda + 3 mu)"};
  OperatorConstants c = constants(m);
  double combo        = c.vkern_log * std::log(2.0) + c.vkern_dyad;
  if (std::abs(combo) <= tol * std::max(1.0, std::abs(c.vkern_dyad)))
    return {false, "vkern_log*ln2 + vkern_dyad = 0"};
  return {};
}

inline void require_admissible(const Material& m) {
  Admissibility a = check_admissible(m);
  if (!a.admissible) throw std::invalid_argument("inadmissible material: " + a.reason);
}

}  // namespace elastocald
