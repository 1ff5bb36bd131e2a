// freefit command-line front end.
//
// Subcommands: dimer, sweep, df, ks, aux, verify.
// Exit codes: 0 success, 1 bound violation, 2 domain/parse error, 3 I/O error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "freefit/freefit.hpp"

namespace {

using json = nlohmann::json;
using namespace freefit;

#ifndef FREEFIT_VERSION
#define FREEFIT_VERSION "0.0.0"
#endif

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FREEFIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw domain_error("FREEFIT_SEED must be an unsigned integer");
    }
  }
  return 0;
}

std::string g17(double x) { return format_g17(x); }

void print_spectrum(const EntanglementSpectrum& s, const std::string& name) {
  std::cout << name << ":";
  for (double p : s.probs) std::cout << " " << g17(p);
  std::cout << "\n";
}

const char* branch_name(DfBranch b) {
  switch (b) {
    case DfBranch::matched_low_levels: return "matched-low-levels";
    case DfBranch::diagonal: return "diagonal-b1-eq-b2";
    case DfBranch::numeric: return "numeric";
  }
  return "?";
}

// ---------------------------------------------------------------- dimer ---

int cmd_dimer(double J, double U, double dv, bool mu_unscaled) {
  const MuScaling scaling = mu_unscaled ? MuScaling::unscaled : MuScaling::j_scaled;
  const DimerSolution sol = dimer_closed_form(J, U, dv);
  const auto spectrum = dimer_entanglement_spectrum(sol);
  const DfResult df = df_four_level(spectrum);
  const DimerDf closed = df_dimer_closed(J, U, dv);

  std::cout << "E: " << g17(sol.energy) << "\n";
  print_spectrum(spectrum, "spectrum");
  std::cout << "S: " << g17(entropy(spectrum)) << "\n";
  std::cout << "DF_closed: " << g17(closed.value)
            << (closed.strongly_correlated ? "" : "  # outside the strongly correlated regime")
            << "\n";
  std::cout << "DF_four_level: " << g17(df.df) << "  branch: " << branch_name(df.branch) << "\n";
  if (U > 0.0) std::cout << "DF_asymptotic: " << g17(df_dimer_asymptotic(J, U, dv)) << "\n";

  const double r1 = 0.5 * (df.free_spectrum[0] + df.free_spectrum[1]);
  const double r2 = 0.5 * (df.free_spectrum[2] + df.free_spectrum[3]);
  std::cout << "mu: " << g17(mu_from_levels(r1, r2, J, scaling)) << "\n";

  const SectorBasis basis = build_sector_basis(2, 1, 1);
  const GroundState g = ground_state(build_hubbard({J, U, {dv / 2.0, -dv / 2.0}}, basis));
  const auto n = local_densities(g.vector, basis);
  const KsSolution ks = invert_dimer({n[0], n[1]}, J);
  std::cout << "dv_ks: " << g17(ks.v_ks[0] - ks.v_ks[1]) << "\n";
  return 0;
}

// ---------------------------------------------------------------- sweep ---

struct SweepCli {
  SweepConfig cfg;
  std::string out = "sweep.csv";
  std::string plot_script;
  double U_min = 0.0, U_max = 50.0;
  int U_count = 200;
  std::string U_scale = "linear";
  std::vector<double> U_list;
  std::string columns_csv;
  bool mu_unscaled = false;
};

void apply_config_file(SweepCli& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("config: ") + e.what());
  }
  if (j.contains("J")) s.cfg.J = j["J"].get<double>();
  if (j.contains("dv")) s.cfg.dv = j["dv"].get<double>();
  if (j.contains("L")) s.cfg.L = j["L"].get<int>();
  if (j.contains("n_up")) s.cfg.n_up = j["n_up"].get<int>();
  if (j.contains("n_down")) s.cfg.n_down = j["n_down"].get<int>();
  if (j.contains("seed")) s.cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("jobs")) s.cfg.jobs = j["jobs"].get<int>();
  if (j.contains("U_min")) s.U_min = j["U_min"].get<double>();
  if (j.contains("U_max")) s.U_max = j["U_max"].get<double>();
  if (j.contains("U_count")) s.U_count = j["U_count"].get<int>();
  if (j.contains("U_scale")) s.U_scale = j["U_scale"].get<std::string>();
  if (j.contains("U_list")) s.U_list = j["U_list"].get<std::vector<double>>();
  if (j.contains("columns")) s.cfg.columns = j["columns"].get<std::vector<std::string>>();
  if (j.contains("out")) s.out = j["out"].get<std::string>();
  if (j.contains("mu_unscaled")) s.mu_unscaled = j["mu_unscaled"].get<bool>();
}

std::vector<double> build_grid(const SweepCli& s) {
  if (!s.U_list.empty()) return s.U_list;
  if (s.U_count < 1) throw domain_error("U_count must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(s.U_count));
  if (s.U_scale == "linear") {
    for (int i = 0; i < s.U_count; ++i)
      grid[static_cast<std::size_t>(i)] =
          s.U_count == 1 ? s.U_min
                         : s.U_min + (s.U_max - s.U_min) * i / (s.U_count - 1);
  } else if (s.U_scale == "log") {
    if (s.U_min <= 0.0) throw domain_error("log grid needs U_min > 0");
    const double l0 = std::log(s.U_min), l1 = std::log(s.U_max);
    for (int i = 0; i < s.U_count; ++i)
      grid[static_cast<std::size_t>(i)] =
          std::exp(s.U_count == 1 ? l0 : l0 + (l1 - l0) * i / (s.U_count - 1));
  } else {
    throw domain_error("U_scale must be 'linear' or 'log'");
  }
  return grid;
}

json config_echo(const SweepCli& s) {
  json j;
  j["J"] = s.cfg.J;
  j["dv"] = s.cfg.dv;
  j["L"] = s.cfg.L;
  j["n_up"] = s.cfg.n_up;
  j["n_down"] = s.cfg.n_down;
  j["seed"] = s.cfg.seed;
  j["jobs"] = s.cfg.jobs;
  j["U_first"] = s.cfg.U_grid.front();
  j["U_last"] = s.cfg.U_grid.back();
  j["U_count"] = s.cfg.U_grid.size();
  j["mu_scaling"] = s.cfg.mu_scaling == MuScaling::j_scaled ? "j_scaled" : "unscaled";
  return j;
}

void emit_plot_script(const std::string& path, const std::string& csv) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << "# gnuplot script regenerating the sweep panels from " << csv << "\n"
      << "set datafile separator ','\n"
      << "set key outside\n"
      << "set xlabel 'U'\n"
      << "set terminal pngcairo size 900,1200\n"
      << "set output 'sweep.png'\n"
      << "set multiplot layout 3,1\n"
      << "set logscale y\n"
      << "set ylabel 'trace distance'\n"
      << "plot '" << csv << "' using 1:3 with lines title 'DF', \\\n"
      << "     '" << csv << "' using 1:4 with lines title 'D(int,KS)', \\\n"
      << "     '" << csv << "' using 1:6 with lines title 'D(KS,opt)'\n"
      << "set ylabel 'natural metric'\n"
      << "plot '" << csv << "' using 1:7 with lines title 'Dn(int,KS)', \\\n"
      << "     '" << csv << "' using 1:8 with lines title 'Dn(int,opt)', \\\n"
      << "     '" << csv << "' using 1:9 with lines title 'Dn(int,aux)'\n"
      << "unset logscale y\n"
      << "set ylabel 'entropy'\n"
      << "plot '" << csv << "' using 1:10 with lines title 'S_int', \\\n"
      << "     '" << csv << "' using 1:11 with lines title 'S_KS', \\\n"
      << "     '" << csv << "' using 1:12 with lines title 'S_opt', \\\n"
      << "     '" << csv << "' using 1:13 with lines title 'S_aux'\n"
      << "unset multiplot\n";
  if (!out) throw io_error("write failed: " + path);
}

int cmd_sweep(SweepCli& s) {
  s.cfg.U_grid = build_grid(s);
  s.cfg.mu_scaling = s.mu_unscaled ? MuScaling::unscaled : MuScaling::j_scaled;
  if (!s.columns_csv.empty()) {
    s.cfg.columns.clear();
    std::istringstream ss(s.columns_csv);
    std::string col;
    while (std::getline(ss, col, ',')) s.cfg.columns.push_back(col);
  }
  validate_sweep_config(s.cfg);

  const auto rows = run_sweep(s.cfg);
  std::ofstream out(s.out);
  if (!out) throw io_error("cannot open for writing: " + s.out);
  write_sweep_csv(out, s.cfg, rows,
                  {std::string("freefit ") + FREEFIT_VERSION + " sweep",
                   std::string("config: ") + config_echo(s).dump()});
  if (!out) throw io_error("write failed: " + s.out);
  std::cout << "wrote " << rows.size() << " rows to " << s.out << "\n";
  if (!s.plot_script.empty()) {
    emit_plot_script(s.plot_script, s.out);
    std::cout << "wrote plot script to " << s.plot_script << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- df ---

int cmd_df(const std::string& file, std::optional<double> J, std::optional<double> U,
           std::optional<double> dv, int modes, int restarts, std::uint64_t seed) {
  EntanglementSpectrum s;
  if (!file.empty()) {
    s = read_spectrum_file(file);
  } else if (J && U && dv) {
    s = dimer_entanglement_spectrum(dimer_closed_form(*J, *U, *dv));
  } else {
    throw domain_error("provide a spectrum file or the model flags --J --U --dv");
  }
  print_spectrum(s, "spectrum");

  DfResult r;
  if (modes == 0 && s.size() <= 4) {
    r = df_four_level(s);
  } else {
    const int M = modes > 0
                      ? modes
                      : static_cast<int>(std::ceil(std::log2(static_cast<double>(s.size()))));
    MinimizerOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    std::cout << "minimizing over " << M << " modes, " << opts.restarts << " restarts, seed "
              << seed << "\n";
    double running_best = std::numeric_limits<double>::infinity();
    opts.on_restart = [&](int k, double value) {
      running_best = std::min(running_best, value);
      std::printf("restart %2d: df = %.12g (best %.12g)\n", k, value, running_best);
    };
    r = df_numeric(s, M, opts);
  }
  std::cout << "df: " << g17(r.df) << "\n";
  std::cout << "branch: " << branch_name(r.branch) << "\n";
  std::cout << "b:";
  for (double b : r.params.b) std::cout << " " << g17(b);
  std::cout << "\n";
  print_spectrum(r.free_spectrum, "optimal_spectrum");
  return 0;
}

// ------------------------------------------------------------------- ks ---

int cmd_ks(int L, std::optional<double> n1, double J, std::optional<double> U, double dv,
           const std::string& v_csv, int n_up, int n_down) {
  if (L == 2) {
    std::array<double, 2> target{};
    if (n1) {
      target = {*n1, 2.0 - *n1};
    } else if (U) {
      const SectorBasis b = build_sector_basis(2, 1, 1);
      const GroundState g = ground_state(build_hubbard({J, *U, {dv / 2.0, -dv / 2.0}}, b));
      const auto n = local_densities(g.vector, b);
      target = {n[0], n[1]};
    } else {
      throw domain_error("provide --n1 or --U");
    }
    const KsSolution sol = invert_dimer(target, J);
    std::cout << "target: " << g17(target[0]) << " " << g17(target[1]) << "\n";
    std::cout << "v_ks: " << g17(sol.v_ks[0]) << " " << g17(sol.v_ks[1]) << "\n";
    std::cout << "dv_ks: " << g17(sol.v_ks[0] - sol.v_ks[1]) << "\n";
    std::cout << "residual: " << g17(sol.residual) << "\n";
    const auto rho = ks_reduced_density_matrix(sol, {0});
    std::cout << "S_ks: " << g17(entropy(spectrum_of(rho))) << "\n";
    return 0;
  }

  if (!U) throw domain_error("general-L mode needs --U for the interacting target");
  std::vector<double> v(static_cast<std::size_t>(L), 0.0);
  if (!v_csv.empty()) {
    v.clear();
    std::istringstream ss(v_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (static_cast<int>(v.size()) != L) throw domain_error("--v needs exactly L entries");
  }
  const SectorBasis b = build_sector_basis(L, n_up, n_down);
  const GroundState g = ground_state(build_hubbard({J, *U, v}, b));
  const auto n_int = local_densities(g.vector, b);
  const KsSolution sol = invert_iterative(n_int, J, b);
  std::cout << "target:";
  for (double n : n_int) std::cout << " " << g17(n);
  std::cout << "\nv_ks:";
  for (double x : sol.v_ks) std::cout << " " << g17(x);
  std::cout << "\nresidual: " << g17(sol.residual) << "\n";
  return 0;
}

// ------------------------------------------------------------------ aux ---

int cmd_aux(std::optional<double> mu, double J, std::optional<double> U, double dv,
            bool mu_unscaled) {
  const MuScaling scaling = mu_unscaled ? MuScaling::unscaled : MuScaling::j_scaled;
  double mu_value = 0.0;
  EntanglementSpectrum target;
  if (mu) {
    mu_value = *mu;
  } else if (U) {
    const auto s = dimer_entanglement_spectrum(dimer_closed_form(J, *U, dv));
    const auto df = df_four_level(s);
    target = df.free_spectrum;
    const double r1 = 0.5 * (target[0] + target[1]);
    const double r2 = 0.5 * (target[2] + target[3]);
    mu_value = mu_from_levels(r1, r2, J, scaling);
  } else {
    throw domain_error("provide --mu or --U");
  }

  const AuxGround aux = aux_ground({J, mu_value});
  std::cout << "mu: " << g17(mu_value) << "\n";
  print_spectrum(aux.spectrum, "aux_spectrum");
  std::cout << "S_aux: " << g17(entropy(aux.spectrum)) << "\n";
  std::cout << "mapped_densities: " << g17(aux.mapped_densities[0]) << " "
            << g17(aux.mapped_densities[1]) << "\n";
  if (!target.probs.empty()) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
      worst = std::max(worst, std::abs(aux.spectrum[k] - target[k]));
    std::cout << "round_trip_error: " << g17(worst) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- verify ---

int cmd_verify(double J, double dv, double U_min, double U_max, int points, int samples,
               std::uint64_t seed) {
  const SectorBasis basis = build_sector_basis(2, 1, 1);
  const int per_point = std::max(1, samples / std::max(1, points));
  int hard_violations = 0;
  int quarter_bound_hits = 0;
  int total_samples = 0;
  double worst_ratio = 0.0;
  bool ratio_diverging = false;
  double first_violation_U = std::numeric_limits<double>::quiet_NaN();

  for (int k = 0; k < points; ++k) {
    const double U = points == 1 ? U_min : U_min + (U_max - U_min) * k / (points - 1);
    const GroundState g = ground_state(build_hubbard({J, U, {dv / 2.0, -dv / 2.0}}, basis));
    const auto rho_int = reduced_density_matrix(g.vector, basis, {0});
    const auto df = df_four_level(spectrum_of(rho_int));
    const OptimalState opt = optimal_state(rho_int, df);
    const auto n_int = local_densities(g.vector, basis);
    const KsSolution ks = invert_dimer({n_int[0], n_int[1]}, J);
    const auto rho_ks = ks_reduced_density_matrix(ks, {0});

    const auto obs =
        verify_observable_bound(rho_int, opt, per_point, seed + static_cast<std::uint64_t>(k));
    int point_viol = 0;
    for (const auto& r : obs) {
      ++total_samples;
      if (!r.satisfied) {
        ++point_viol;
        ++hard_violations;
      }
      // Diagnostic: how often the tighter printed constant would have held.
      if (r.lhs <= 0.25 * r.rhs + 1e-15) ++quarter_bound_hits;
    }

    const BoundReport dens = verify_density_bound(rho_int, opt, df.df);
    if (!dens.satisfied) ++hard_violations;

    const TriangleReport tri = verify_triangle(rho_int, rho_ks, df);
    if (!tri.lower.satisfied) ++hard_violations;
    if (!tri.ratio_finite || tri.ratio > 1e3) ratio_diverging = true;
    if (std::isfinite(tri.ratio)) worst_ratio = std::max(worst_ratio, tri.ratio);

    const int before = hard_violations - point_viol - (dens.satisfied ? 0 : 1) -
                       (tri.lower.satisfied ? 0 : 1);
    if (before == 0 && hard_violations > 0 && std::isnan(first_violation_U))
      first_violation_U = U;

    std::printf("U = %8.4f  DF = %.3e  obs_viol = %d  dens %s  triangle %s  ratio %s\n", U,
                df.df, point_viol, dens.satisfied ? "ok" : "VIOLATED",
                tri.lower.satisfied ? "ok" : "VIOLATED",
                tri.ratio_finite && std::isfinite(tri.ratio) ? g17(tri.ratio).c_str()
                                                             : "diverging");
  }
  if (!std::isnan(first_violation_U))
    std::printf("first violation at U = %.6f\n", first_violation_U);

  std::printf("observable bound: %d/%d samples within the identity-level bound\n",
              total_samples - hard_violations, total_samples);
  std::printf("quarter-strength constant (|O_max|/2 * DF) satisfied on %d/%d samples "
              "(diagnostic only)\n",
              quarter_bound_hits, total_samples);
  std::printf("max finite triangle ratio: %s%s\n", g17(worst_ratio).c_str(),
              ratio_diverging ? " (diverging points present)" : "");
  return hard_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free-fermion auxiliary model toolkit"};
  app.set_version_flag("--version", std::string("freefit ") + FREEFIT_VERSION);
  app.require_subcommand(1);

  try {
    const std::uint64_t env_seed = default_seed();

    // dimer
    auto* dimer = app.add_subcommand("dimer", "closed-form dimer analysis at one point");
    double dJ = 1.0, dU = 0.0, ddv = 0.0;
    bool d_mu_unscaled = false;
    dimer->add_option("--J", dJ, "hopping");
    dimer->add_option("--U", dU, "interaction");
    dimer->add_option("--dv", ddv, "potential asymmetry v1 - v2");
    dimer->add_flag("--mu-unscaled", d_mu_unscaled, "use the unscaled mu formula");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "U sweep writing the figure CSV");
    SweepCli scli;
    scli.cfg.seed = env_seed;
    std::string config_path;
    sweep->add_option("--config", config_path, "JSON config file (flags override)");
    sweep->add_option("--J", scli.cfg.J, "hopping");
    sweep->add_option("--dv", scli.cfg.dv, "potential asymmetry");
    sweep->add_option("--U-min", scli.U_min, "grid start");
    sweep->add_option("--U-max", scli.U_max, "grid end");
    sweep->add_option("--U-count", scli.U_count, "grid size");
    sweep->add_option("--U-scale", scli.U_scale, "linear|log");
    sweep->add_option("--U-list", scli.U_list, "explicit U values");
    sweep->add_option("--columns", scli.columns_csv, "comma-separated column selection");
    sweep->add_option("--out", scli.out, "output CSV path");
    sweep->add_option("--seed", scli.cfg.seed, "seed echoed into provenance");
    sweep->add_option("--jobs", scli.cfg.jobs, "concurrent sweep points");
    sweep->add_option("--plot-script", scli.plot_script, "emit a gnuplot script");
    sweep->add_flag("--mu-unscaled", scli.mu_unscaled, "use the unscaled mu formula");

    // df
    auto* df = app.add_subcommand("df", "interaction distance of a spectrum");
    std::string df_file;
    std::optional<double> fJ, fU, fdv;
    int df_modes = 0, df_restarts = 32;
    std::uint64_t df_seed = env_seed;
    df->add_option("--file", df_file, "spectrum file (one probability per line)");
    df->add_option("--J", fJ, "model hopping");
    df->add_option("--U", fU, "model interaction");
    df->add_option("--dv", fdv, "model asymmetry");
    df->add_option("--modes", df_modes, "force the numeric minimizer with this mode count");
    df->add_option("--restarts", df_restarts, "minimizer restarts");
    df->add_option("--seed", df_seed, "minimizer seed");

    // ks
    auto* ks = app.add_subcommand("ks", "invert the free potential for target densities");
    int kL = 2, k_nup = 0, k_ndown = 0;
    std::optional<double> k_n1, kU;
    double kJ = 1.0, kdv = 0.5;
    std::string kv;
    ks->add_option("--L", kL, "chain length");
    ks->add_option("--n1", k_n1, "target site-1 density (dimer)");
    ks->add_option("--J", kJ, "hopping");
    ks->add_option("--U", kU, "interacting model to take targets from");
    ks->add_option("--dv", kdv, "dimer asymmetry for the interacting target");
    ks->add_option("--v", kv, "comma-separated interacting potentials (general L)");
    ks->add_option("--n-up", k_nup, "up count (general L)");
    ks->add_option("--n-down", k_ndown, "down count (general L)");

    // aux
    auto* aux = app.add_subcommand("aux", "auxiliary two-chain model");
    std::optional<double> a_mu, aU;
    double aJ = 1.0, adv = 0.5;
    bool a_mu_unscaled = false;
    aux->add_option("--mu", a_mu, "chemical potential");
    aux->add_option("--J", aJ, "hopping");
    aux->add_option("--U", aU, "derive mu from the interacting dimer at this U");
    aux->add_option("--dv", adv, "dimer asymmetry");
    aux->add_flag("--mu-unscaled", a_mu_unscaled, "use the unscaled mu formula");

    // verify
    auto* verify = app.add_subcommand("verify", "run the bound verifiers over a U grid");
    double vJ = 1.0, vdv = 0.5, vUmin = 0.5, vUmax = 50.0;
    int v_points = 20, v_samples = 10000;
    std::uint64_t v_seed = env_seed;
    verify->add_option("--J", vJ, "hopping");
    verify->add_option("--dv", vdv, "potential asymmetry");
    verify->add_option("--U-min", vUmin, "grid start");
    verify->add_option("--U-max", vUmax, "grid end");
    verify->add_option("--points", v_points, "grid size");
    verify->add_option("--samples", v_samples, "total random observables");
    verify->add_option("--seed", v_seed, "observable seed");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (dimer->parsed()) return cmd_dimer(dJ, dU, ddv, d_mu_unscaled);
    if (sweep->parsed()) {
      if (!config_path.empty()) {
        // File values form the base; flags the user actually passed win.
        const SweepCli flags = scli;
        scli = SweepCli{};
        scli.cfg.seed = env_seed;
        apply_config_file(scli, config_path);
        for (const CLI::Option* opt : sweep->get_options()) {
          if (opt->count() == 0) continue;
          const std::string name = opt->get_name();
          if (name == "--J") scli.cfg.J = flags.cfg.J;
          else if (name == "--dv") scli.cfg.dv = flags.cfg.dv;
          else if (name == "--U-min") scli.U_min = flags.U_min;
          else if (name == "--U-max") scli.U_max = flags.U_max;
          else if (name == "--U-count") scli.U_count = flags.U_count;
          else if (name == "--U-scale") scli.U_scale = flags.U_scale;
          else if (name == "--U-list") scli.U_list = flags.U_list;
          else if (name == "--columns") scli.columns_csv = flags.columns_csv;
          else if (name == "--out") scli.out = flags.out;
          else if (name == "--seed") scli.cfg.seed = flags.cfg.seed;
          else if (name == "--jobs") scli.cfg.jobs = flags.cfg.jobs;
          else if (name == "--plot-script") scli.plot_script = flags.plot_script;
          else if (name == "--mu-unscaled") scli.mu_unscaled = flags.mu_unscaled;
        }
      }
      return cmd_sweep(scli);
    }
    if (df->parsed()) return cmd_df(df_file, fJ, fU, fdv, df_modes, df_restarts, df_seed);
    if (ks->parsed()) return cmd_ks(kL, k_n1, kJ, kU, kdv, kv, k_nup, k_ndown);
    if (aux->parsed()) return cmd_aux(a_mu, aJ, aU, adv, a_mu_unscaled);
    if (verify->parsed()) return cmd_verify(vJ, vdv, vUmin, vUmax, v_points, v_samples, v_seed);
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const freefit::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
