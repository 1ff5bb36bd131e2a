#pragma once

#include <array>
#include <cmath>

#include "freefit/entanglement.hpp"
#include "freefit/errors.hpp"
#include "freefit/hamiltonians.hpp"
#include "freefit/hilbert.hpp"

namespace freefit {

/// Closed-form ground state of the half-filled, S_z = 0 Hubbard dimer in the
/// frame with the mean potential subtracted (H -> H - (v1 + v2)). Amplitudes
/// are unnormalized and refer to the basis {|ud,0>, |u,d>, |d,u>, |0,ud>} in
/// the global spin-major mode ordering, where the middle pair comes out with
/// equal signs: (2J, a, a, 2J a/b).
struct DimerSolution {
  double energy = 0.0;     // E
  double amplitude = 0.0;  // A = sqrt(U^2 + 3 dv^2 + 12 J^2)
  double theta = 0.0;      // cubic-root angle, principal branch
  double a = 0.0;          // U + dv - E
  double b_coef = 0.0;     // U - dv - E
  double norm = 0.0;       // N = 4J^2 + 2a^2 + 4J^2 a^2/b^2 (squared norm)
  std::array<double, 4> amps{};
};

inline DimerSolution dimer_closed_form(double J, double U, double dv) {
  if (J == 0.0 || !std::isfinite(J)) throw domain_error("J must be nonzero");

  DimerSolution sol;
  sol.amplitude = std::sqrt(U * U + 3.0 * dv * dv + 12.0 * J * J);
  const double denom = 2.0 * std::pow(12.0 * J * J + 3.0 * dv * dv + U * U, 1.5);
  double cos3t = U * (36.0 * J * J - 18.0 * dv * dv + 2.0 * U * U) / denom;
  cos3t = std::clamp(cos3t, -1.0, 1.0);
  // The principal root maximizes cos(theta) among the three cubic roots and
  // therefore minimizes E; asserted against the dense eigensolver below.
  sol.theta = std::acos(cos3t) / 3.0;
  sol.energy = -(2.0 / 3.0) * sol.amplitude * std::cos(sol.theta) + 2.0 * U / 3.0;

  sol.a = U + dv - sol.energy;
  sol.b_coef = U - dv - sol.energy;
  const double scale = std::abs(U) + std::abs(dv) + std::abs(sol.energy) + std::abs(J);
  if (std::abs(sol.b_coef) < 1e-14 * scale)
    throw singularity_error("closed-form amplitude denominator vanished");

  sol.amps = {2.0 * J, sol.a, sol.a, 2.0 * J * sol.a / sol.b_coef};
  sol.norm = 0.0;
  for (double amp : sol.amps) sol.norm += amp * amp;

#ifndef NDEBUG
  {
    const SectorBasis basis = build_sector_basis(2, 1, 1);
    const OperatorMatrix H = build_hubbard({J, U, {dv / 2.0, -dv / 2.0}}, basis);
    const GroundState g = ground_state(H);
    if (std::abs(g.energy - sol.energy) > 1e-8 * std::max(1.0, scale))
      throw error("closed-form dimer energy disagrees with eigensolver");
  }
#endif
  return sol;
}

/// Site-1 entanglement spectrum {4J^2, a^2, a^2, 4J^2 a^2/b^2}/N, descending.
/// The dimer's rho_A is diagonal in the local occupation basis because the
/// four sector states carry distinct site-1 occupations.
inline EntanglementSpectrum dimer_entanglement_spectrum(const DimerSolution& sol) {
  std::vector<double> p(4);
  for (int k = 0; k < 4; ++k)
    p[static_cast<std::size_t>(k)] = sol.amps[static_cast<std::size_t>(k)] *
                                     sol.amps[static_cast<std::size_t>(k)] / sol.norm;
  return spectrum_from_probabilities(std::move(p));
}

/// Closed-form interaction distance of the dimer. The formula is exact in
/// the strongly correlated regime; outside it the flag is cleared and the
/// four-level solver is authoritative.
struct DimerDf {
  double value = 0.0;
  bool strongly_correlated = false;
};

inline DimerDf df_dimer_closed(double J, double U, double dv) {
  const DimerSolution sol = dimer_closed_form(J, U, dv);
  const double a2 = sol.a * sol.a;
  const double b2 = sol.b_coef * sol.b_coef;
  DimerDf out;
  out.value = (2.0 * J * J / sol.norm) * std::abs(b2 - a2) / b2;
  out.strongly_correlated = U >= 10.0 * std::max(std::abs(J), std::abs(dv));
  return out;
}

/// Leading large-U tail of the interaction distance, 4 J^2 |dv| / U^3.
inline double df_dimer_asymptotic(double J, double U, double dv) {
  if (U <= 0.0) throw domain_error("asymptotic form requires U > 0");
  return 4.0 * J * J * std::abs(dv) / (U * U * U);
}

}  // namespace freefit
