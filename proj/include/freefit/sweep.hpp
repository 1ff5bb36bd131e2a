#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "freefit/dimer.hpp"
#include "freefit/entanglement.hpp"
#include "freefit/errors.hpp"
#include "freefit/hamiltonians.hpp"
#include "freefit/hilbert.hpp"
#include "freefit/idistance.hpp"
#include "freefit/kohnsham.hpp"
#include "freefit/optmodel.hpp"

namespace freefit {

struct SweepConfig {
  double J = 1.0;
  double dv = 0.5;
  std::vector<double> U_grid;
  int L = 2;
  int n_up = 1;
  int n_down = 1;
  std::vector<std::string> columns;  // empty selects every column
  std::uint64_t seed = 0;
  MuScaling mu_scaling = MuScaling::j_scaled;
  int jobs = 1;
};

inline const std::vector<std::string>& sweep_column_names() {
  static const std::vector<std::string> names = {
      "U",         "E",          "DF",       "Dtr_int_ks", "Dtr_int_opt",
      "Dtr_ks_opt", "Dn_int_ks", "Dn_int_opt", "Dn_int_aux", "S_int",
      "S_ks",      "S_opt",      "S_aux",    "mu",         "dv_ks"};
  return names;
}

struct SweepRow {
  std::array<double, 15> values{};  // ordered as sweep_column_names()
};

inline void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.U_grid.empty()) throw domain_error("U grid is empty");
  for (std::size_t i = 1; i < cfg.U_grid.size(); ++i)
    if (!(cfg.U_grid[i] > cfg.U_grid[i - 1]))
      throw domain_error("U grid must be strictly increasing");
  if (cfg.L != 2 || cfg.n_up != 1 || cfg.n_down != 1)
    throw domain_error("sweep covers the half-filled dimer (L=2, n_up=n_down=1)");
  if (cfg.J == 0.0) throw domain_error("J must be nonzero");
  if (cfg.jobs < 1) throw domain_error("jobs must be >= 1");
  for (const auto& c : cfg.columns) {
    const auto& names = sweep_column_names();
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw domain_error("unknown column: " + c);
  }
}

/// One point of the dimer pipeline: interacting ED, interaction distance,
/// KS inversion, optimal state and auxiliary model, all on the site-1 cut.
inline SweepRow evaluate_sweep_point(double U, const SweepConfig& cfg) {
  const SectorBasis basis = build_sector_basis(2, 1, 1);
  const std::vector<double> v = {cfg.dv / 2.0, -cfg.dv / 2.0};
  const std::vector<int> cut = {0};

  const GroundState g = ground_state(build_hubbard({cfg.J, U, v}, basis));
  const auto rho_int = reduced_density_matrix(g.vector, basis, cut);
  const auto s_int = spectrum_of(rho_int);
  const auto n_int = local_densities(g.vector, basis);

  const DfResult df = df_four_level(s_int);
  const OptimalState opt = optimal_state(rho_int, df);

  const KsSolution ks = invert_dimer({n_int[0], n_int[1]}, cfg.J);
  const auto rho_ks = ks_reduced_density_matrix(ks, cut);
  const auto n_ks = local_densities(ks.state, ks.basis);

  // Distinct levels of the optimal spectrum as pair means; above the
  // crossover the spectrum is doubly degenerate and these are exact.
  const double r1 = 0.5 * (df.free_spectrum[0] + df.free_spectrum[1]);
  const double r2 = 0.5 * (df.free_spectrum[2] + df.free_spectrum[3]);
  const double mu = mu_from_levels(r1, r2, cfg.J, cfg.mu_scaling);
  const AuxGround aux = aux_ground({cfg.J, mu});

  const Eigen::VectorXd n1_diag = site_occupation_diag(rho_int, 0);
  const double n1_opt = (n1_diag.asDiagonal() * opt.matrix.matrix).trace();
  const std::vector<double> n_opt = {n1_opt, 2.0 - n1_opt};
  const std::vector<double> n_aux = {aux.mapped_densities[0], aux.mapped_densities[1]};

  SweepRow row;
  row.values = {U,
                g.energy,
                df.df,
                trace_distance_matrices(rho_int, rho_ks),
                trace_distance_matrices(rho_int, opt.matrix),
                trace_distance_matrices(rho_ks, opt.matrix),
                natural_metric(n_int, n_ks),
                natural_metric(n_int, n_opt),
                natural_metric(n_int, n_aux),
                entropy(s_int),
                entropy(spectrum_of(rho_ks)),
                entropy(opt.spectrum),
                entropy(aux.spectrum),
                mu,
                ks.v_ks[0] - ks.v_ks[1]};
  return row;
}

/// Evaluate every grid point, concurrently up to cfg.jobs; rows come back in
/// U order regardless of completion order.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  validate_sweep_config(cfg);
  std::vector<SweepRow> rows(cfg.U_grid.size());

  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(cfg.U_grid.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cfg.U_grid.size(); ++i)
      rows[i] = evaluate_sweep_point(cfg.U_grid[i], cfg);
    return rows;
  }

  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < cfg.U_grid.size();
             i += static_cast<std::size_t>(jobs))
          rows[i] = evaluate_sweep_point(cfg.U_grid[i], cfg);
      } catch (...) {
        const std::scoped_lock lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

inline std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// CSV emission: '#' provenance lines, a header row, then one row per U with
/// 17 significant digits so reruns are bit-identical.
inline void write_sweep_csv(std::ostream& out, const SweepConfig& cfg,
                            const std::vector<SweepRow>& rows,
                            const std::vector<std::string>& provenance = {}) {
  const auto& names = sweep_column_names();
  std::vector<std::size_t> selected;
  if (cfg.columns.empty()) {
    for (std::size_t i = 0; i < names.size(); ++i) selected.push_back(i);
  } else {
    for (const auto& c : cfg.columns)
      selected.push_back(static_cast<std::size_t>(
          std::find(names.begin(), names.end(), c) - names.begin()));
  }

  for (const auto& line : provenance) out << "# " << line << "\n";
  for (std::size_t k = 0; k < selected.size(); ++k)
    out << names[selected[k]] << (k + 1 < selected.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < selected.size(); ++k)
      out << format_g17(row.values[selected[k]]) << (k + 1 < selected.size() ? "," : "\n");
  }
}

}  // namespace freefit
