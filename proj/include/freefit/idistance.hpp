#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "freefit/entanglement.hpp"
#include "freefit/errors.hpp"

namespace freefit {

/// Mode parameters of a free product spectrum, each in [0, 1/2],
/// kept in ascending canonical order.
struct FreeSpectrumParams {
  std::vector<double> b;
};

enum class DfBranch {
  matched_low_levels,  // the two largest levels are matched exactly
  diagonal,            // optimum on the b1 = b2 curve
  numeric,             // found by the derivative-free minimizer
};

struct DfResult {
  double df = 0.0;
  FreeSpectrumParams params;
  DfBranch branch = DfBranch::numeric;
  EntanglementSpectrum free_spectrum;
};

/// Product spectrum of independent modes: all 2^M products of (1/2 +- b_i),
/// descending. Sums to one algebraically.
inline EntanglementSpectrum free_spectrum_from_params(const FreeSpectrumParams& p) {
  for (double b : p.b)
    if (!(b >= 0.0) || b > 0.5 + 1e-15) throw domain_error("mode parameters must lie in [0, 1/2]");
  const std::size_t M = p.b.size();
  std::vector<double> probs{1.0};
  probs.reserve(std::size_t{1} << M);
  for (std::size_t i = 0; i < M; ++i) {
    const double hi = 0.5 + p.b[i];
    const double lo = 0.5 - p.b[i];
    const std::size_t n = probs.size();
    probs.resize(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      const double base = probs[k];
      probs[k] = base * hi;
      probs[n + k] = base * lo;
    }
  }
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return EntanglementSpectrum{std::move(probs)};
}

namespace detail {

inline std::vector<double> padded_four(const EntanglementSpectrum& s) {
  if (s.size() > 4) throw domain_error("four-level solver takes at most four levels");
  std::vector<double> r(4, 0.0);
  std::copy(s.probs.begin(), s.probs.end(), r.begin());
  validate_probs(r, 1e-10);
  for (std::size_t k = 1; k < 4; ++k)
    if (r[k] > r[k - 1] + 1e-12) throw domain_error("spectrum must be sorted descending");
  return r;
}

struct FourLevelCandidate {
  double df;
  double b1, b2;
  DfBranch branch;
};

inline FourLevelCandidate four_level_matched(const std::vector<double>& r) {
  const double s = r[0] + r[1];
  return {std::abs(r[0] * r[3] - r[1] * r[2]) / s, (r[0] - r[1]) / (2.0 * s), s - 0.5,
          DfBranch::matched_low_levels};
}

inline FourLevelCandidate four_level_diagonal(const std::vector<double>& r) {
  const double sq = std::sqrt(r[0]);
  return {2.0 * sq - 2.0 * r[0] - r[1] - r[2], sq - 0.5, sq - 0.5, DfBranch::diagonal};
}

}  // namespace detail

/// Exact interaction distance of a four-level spectrum. The minimum lies
/// either at the intersection matching the two largest levels or on the
/// b1 = b2 curve, decided by rho1 >= (rho1 + rho2)^2; within a 1e-14 window
/// of the seam both candidates are evaluated and the smaller wins.
inline DfResult df_four_level(const EntanglementSpectrum& s) {
  const std::vector<double> r = detail::padded_four(s);

  const double seam = r[0] - (r[0] + r[1]) * (r[0] + r[1]);
  detail::FourLevelCandidate pick{};
  if (seam > 1e-14) {
    pick = detail::four_level_diagonal(r);
  } else if (seam < -1e-14) {
    pick = detail::four_level_matched(r);
  } else {
    const auto diag = detail::four_level_diagonal(r);
    const auto match = detail::four_level_matched(r);
    if (diag.df < match.df) {
      pick = diag;
    } else if (match.df < diag.df) {
      pick = match;
    } else {
      // Equal distances on the seam: the candidates usually coincide, in
      // which case the diagonal label applies; otherwise keep the one that
      // matches the two largest levels.
      const bool coincide = std::abs(diag.b1 - match.b1) < 1e-14 &&
                            std::abs(diag.b2 - match.b2) < 1e-14;
      pick = coincide ? diag : match;
    }
  }

  DfResult out;
  out.branch = pick.branch;
  out.params.b = {std::clamp(std::min(pick.b1, pick.b2), 0.0, 0.5),
                  std::clamp(std::max(pick.b1, pick.b2), 0.0, 0.5)};
  out.free_spectrum = free_spectrum_from_params(out.params);
  out.df = std::max(pick.df, 0.0);
  return out;
}

struct MinimizerOptions {
  int restarts = 32;
  int max_iterations = 400;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  // Observer invoked after each restart with its polished objective value.
  std::function<void(int restart, double value)> on_restart;
};

namespace detail {

// Nelder-Mead with box clamping onto [0, 1/2]^M. The objective is piecewise
// linear (kinks where sorted products cross and where |p-q| changes sign),
// so a pattern-search polish over axis and diagonal directions follows.
class SpectrumFit {
 public:
  SpectrumFit(std::vector<double> target, int modes) : target_(std::move(target)), M_(modes) {}

  double operator()(const std::vector<double>& b) const {
    std::vector<double> probs{1.0};
    probs.reserve(std::size_t{1} << M_);
    for (int i = 0; i < M_; ++i) {
      const double bi = std::clamp(b[static_cast<std::size_t>(i)], 0.0, 0.5);
      const std::size_t n = probs.size();
      probs.resize(2 * n);
      for (std::size_t k = 0; k < n; ++k) {
        const double base = probs[k];
        probs[k] = base * (0.5 + bi);
        probs[n + k] = base * (0.5 - bi);
      }
    }
    std::sort(probs.begin(), probs.end(), std::greater<>());
    double d = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) d += std::abs(target_[k] - probs[k]);
    return 0.5 * d;
  }

 private:
  std::vector<double> target_;
  int M_;
};

inline void clamp_box(std::vector<double>& x) {
  for (double& v : x) v = std::clamp(v, 0.0, 0.5);
}

inline double nelder_mead(const SpectrumFit& f, std::vector<double>& x, int max_iter, double tol) {
  const std::size_t M = x.size();
  std::vector<std::vector<double>> simplex(M + 1, x);
  std::vector<double> fv(M + 1);
  for (std::size_t i = 0; i < M; ++i) {
    simplex[i + 1][i] += (simplex[i + 1][i] > 0.25 ? -0.07 : 0.07);
    clamp_box(simplex[i + 1]);
  }
  for (std::size_t i = 0; i <= M; ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(M + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[M];
    if (fv[worst] - fv[best] < tol) break;

    std::vector<double> centroid(M, 0.0);
    for (std::size_t i = 0; i <= M; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < M; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(M);

    auto blend = [&](double t) {
      std::vector<double> p(M);
      for (std::size_t k = 0; k < M; ++k) p[k] = centroid[k] + t * (centroid[k] - simplex[worst][k]);
      clamp_box(p);
      return p;
    };

    auto reflected = blend(1.0);
    const double fr = f(reflected);
    if (fr < fv[best]) {
      auto expanded = blend(2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        fv[worst] = fr;
      }
    } else if (fr < fv[order[M - 1]]) {
      simplex[worst] = std::move(reflected);
      fv[worst] = fr;
    } else {
      auto contracted = blend(fr < fv[worst] ? 0.5 : -0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = std::move(contracted);
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= M; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < M; ++k)
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= M; ++i)
    if (fv[i] < fv[best]) best = i;
  x = simplex[best];
  return fv[best];
}

inline double pattern_polish(const SpectrumFit& f, std::vector<double>& x, double fx) {
  const std::size_t M = x.size();
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < M; ++i) {
    std::vector<double> e(M, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
  }
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = i + 1; j < M; ++j) {
      std::vector<double> d(M, 0.0);
      d[i] = 1.0;
      d[j] = 1.0;
      dirs.push_back(d);
      d[j] = -1.0;
      dirs.push_back(d);
    }

  for (double step = 0.05; step > 1e-10; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& d : dirs) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> y = x;
          for (std::size_t k = 0; k < M; ++k) y[k] += sgn * step * d[k];
          clamp_box(y);
          const double fy = f(y);
          if (fy < fx - 1e-16) {
            x = std::move(y);
            fx = fy;
            improved = true;
          }
        }
      }
    }
  }
  return fx;
}

}  // namespace detail

/// Numerical interaction distance: best trace distance between `s` and the
/// M-mode product family, via deterministic multi-start local search over
/// the box [0, 1/2]^M (the objective is symmetric under mode permutation).
inline DfResult df_numeric(const EntanglementSpectrum& s, int modes, MinimizerOptions opts = {}) {
  if (modes < 1 || modes > 20) throw domain_error("mode count must lie in [1, 20]");
  const std::size_t dim = std::size_t{1} << modes;
  std::vector<double> target(s.probs);
  if (target.size() > dim) {
    for (std::size_t k = dim; k < target.size(); ++k)
      if (target[k] > 1e-15)
        throw domain_error("spectrum has more nonzero levels than 2^modes");
    target.resize(dim);
  } else {
    target.resize(dim, 0.0);
  }
  detail::validate_probs(target, 1e-8);

  const detail::SpectrumFit objective(target, modes);
  const std::size_t M = static_cast<std::size_t>(modes);

  // Deterministic corner starts plus seeded stratified starts.
  std::vector<std::vector<double>> starts;
  starts.push_back(std::vector<double>(M, 0.0));
  starts.push_back(std::vector<double>(M, 0.5));
  starts.push_back(std::vector<double>(M, 0.25));
  {
    std::vector<double> ramp(M);
    for (std::size_t i = 0; i < M; ++i)
      ramp[i] = 0.5 * static_cast<double>(i + 1) / static_cast<double>(M + 1);
    starts.push_back(ramp);
  }
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(0.0, 0.5);
  while (static_cast<int>(starts.size()) < std::max(opts.restarts, 4)) {
    std::vector<double> x(M);
    for (double& v : x) v = unif(rng);
    std::sort(x.begin(), x.end());
    starts.push_back(std::move(x));
  }

  std::vector<double> best;
  double best_f = std::numeric_limits<double>::infinity();
  int restart_index = 0;
  for (auto start : starts) {
    double fx = detail::nelder_mead(objective, start, opts.max_iterations, opts.tolerance);
    fx = detail::pattern_polish(objective, start, fx);
    if (opts.on_restart) opts.on_restart(restart_index, fx);
    ++restart_index;
    if (fx < best_f) {
      best_f = fx;
      best = start;
    }
  }

  std::sort(best.begin(), best.end());
  DfResult out;
  out.branch = DfBranch::numeric;
  out.params.b = std::move(best);
  out.free_spectrum = free_spectrum_from_params(out.params);
  out.df = best_f;
  return out;
}

}  // namespace freefit
