#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "freefit/entanglement.hpp"
#include "freefit/errors.hpp"
#include "freefit/hamiltonians.hpp"
#include "freefit/hilbert.hpp"

namespace freefit {

/// Result of a potential inversion: the free model with the same kinetic
/// term whose closed-shell ground state reproduces the target densities.
struct KsSolution {
  std::vector<double> v_ks;
  Eigen::VectorXd state;
  double residual = 0.0;  // max over sites of |n_KS - n_target|
  SectorBasis basis;
};

struct InversionOptions {
  double tol = 1e-8;
  int max_iter = 500;
  double initial_step = 1.0;
};

namespace detail {

inline GroundState closed_shell_ground(double J, const std::vector<double>& v,
                                       const SectorBasis& b) {
  const GroundState g = ground_state(build_free_spinful(J, v, b));
  const double scale = std::max(1.0, std::abs(g.energy));
  if (g.gap < 1e-10 * scale)
    throw degeneracy_error("free ground state is degenerate; no closed shell");
  return g;
}

}  // namespace detail

/// Dimer inversion by bisection on dv = v1 - v2 (gauge v1 + v2 = 0), using
/// strict monotonicity of n1(dv).
inline KsSolution invert_dimer(const std::array<double, 2>& n_target, double J) {
  const double n1 = n_target[0];
  if (std::abs(n1 + n_target[1] - 2.0) > 1e-9)
    throw domain_error("dimer inversion requires half filling (n1 + n2 = 2)");
  if (!(n1 > 0.0) || !(n1 < 2.0))
    throw domain_error("target density 0 or 2 is unattainable (infinite potential)");
  if (J == 0.0 || !std::isfinite(J)) throw domain_error("J must be nonzero");

  SectorBasis basis = build_sector_basis(2, 1, 1);
  auto density1 = [&](double dv) {
    const GroundState g = detail::closed_shell_ground(J, {dv / 2.0, -dv / 2.0}, basis);
    return local_densities(g.vector, basis)[0];
  };

  // n1(dv) decreases from 2 to 0 (for J > 0; the bracket search below
  // handles either sign of J), so expand a bracket then bisect.
  double lo = -1.0, hi = 1.0;
  for (int k = 0; k < 64 && (density1(lo) - n1) * (density1(hi) - n1) > 0.0; ++k) {
    lo *= 2.0;
    hi *= 2.0;
  }
  double f_lo = density1(lo) - n1;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = density1(mid) - n1;
    if (std::abs(f_mid) < 1e-13 || hi - lo < 1e-15 * std::max(1.0, std::abs(mid))) {
      lo = hi = mid;
      break;
    }
    if ((f_lo > 0.0) == (f_mid > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  const double dv = 0.5 * (lo + hi);
  KsSolution sol{{dv / 2.0, -dv / 2.0}, {}, 0.0, std::move(basis)};
  const GroundState g = detail::closed_shell_ground(J, sol.v_ks, sol.basis);
  sol.state = g.vector;
  const auto n = local_densities(sol.state, sol.basis);
  sol.residual = std::max(std::abs(n[0] - n_target[0]), std::abs(n[1] - n_target[1]));
  return sol;
}

/// General damped fixed-point inversion v <- v + alpha (n[v] - n_target),
/// gauge-fixed to sum v = 0. The step halves whenever the residual fails to
/// decrease.
inline KsSolution invert_iterative(const std::vector<double>& n_target, double J,
                                   const SectorBasis& b, InversionOptions opts = {}) {
  if (static_cast<int>(n_target.size()) != b.sites())
    throw domain_error("target density length does not match site count");
  const double total = std::accumulate(n_target.begin(), n_target.end(), 0.0);
  if (std::abs(total - (b.n_up() + b.n_down())) > 1e-9)
    throw domain_error("target densities do not sum to the particle number");

  const std::size_t L = n_target.size();
  auto gauge = [&](std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(L);
    for (double& x : v) x -= mean;
  };
  auto densities_of = [&](const std::vector<double>& v) {
    const GroundState g = detail::closed_shell_ground(J, v, b);
    return std::pair{local_densities(g.vector, b), g.vector};
  };
  auto max_err = [&](const std::vector<double>& n) {
    double r = 0.0;
    for (std::size_t j = 0; j < L; ++j) r = std::max(r, std::abs(n[j] - n_target[j]));
    return r;
  };

  std::vector<double> v(L, 0.0);
  auto [n, state] = densities_of(v);
  double residual = max_err(n);
  double alpha = opts.initial_step;
  std::vector<double> trace{residual};

  for (int it = 0; it < opts.max_iter && residual >= opts.tol; ++it) {
    std::vector<double> v_next = v;
    for (std::size_t j = 0; j < L; ++j) v_next[j] += alpha * (n[j] - n_target[j]);
    gauge(v_next);
    auto [n_next, state_next] = densities_of(v_next);
    const double r_next = max_err(n_next);
    if (r_next < residual) {
      v = std::move(v_next);
      n = std::move(n_next);
      state = std::move(state_next);
      residual = r_next;
      trace.push_back(residual);
    } else {
      alpha *= 0.5;
      if (alpha < 1e-12)
        throw convergence_error("inversion stalled (step underflow)", std::move(trace));
    }
  }
  if (residual >= opts.tol)
    throw convergence_error("inversion hit the iteration limit", std::move(trace));

  KsSolution sol{std::move(v), std::move(state), residual, b};
  return sol;
}

inline DensityMatrixBlock ks_reduced_density_matrix(const KsSolution& sol,
                                                    const std::vector<int>& sites_A) {
  return reduced_density_matrix(sol.state, sol.basis, sites_A);
}

}  // namespace freefit
