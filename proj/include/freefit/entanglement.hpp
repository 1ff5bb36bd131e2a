#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "freefit/errors.hpp"
#include "freefit/hilbert.hpp"

namespace freefit {

/// Probability spectrum of a reduced density matrix, descending.
struct EntanglementSpectrum {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t k) const { return probs[k]; }
};

/// Reduced density matrix on a contiguous block, with the occupation labels
/// of the block's local basis (spinless blocks leave `down` unused).
struct DensityMatrixBlock {
  Eigen::MatrixXd matrix;
  std::vector<SpinConfig> labels;
  int sites = 0;
  bool spinful = true;
};

namespace detail {

constexpr double kSpectrumClamp = 1e-14;

// Eigensolver output may dip slightly negative; anything below -1e-10 is a
// genuinely invalid weight, anything in the noise band gets clamped to zero.
inline void validate_probs(const std::vector<double>& p, double norm_tol) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -1e-10) || x > 1.0 + 1e-9)
      throw domain_error("spectrum entries must lie in [0, 1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > norm_tol) throw domain_error("spectrum is not normalized");
}

}  // namespace detail

/// Validate and sort a raw probability vector into a spectrum.
inline EntanglementSpectrum spectrum_from_probabilities(std::vector<double> probs,
                                                        double norm_tol = 1e-10) {
  detail::validate_probs(probs, norm_tol);
  for (double& x : probs) {
    if (x < detail::kSpectrumClamp) x = 0.0;
  }
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return EntanglementSpectrum{std::move(probs)};
}

inline EntanglementSpectrum spectrum_of(const DensityMatrixBlock& block) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block.matrix, Eigen::EigenvaluesOnly);
  std::vector<double> p(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return spectrum_from_probabilities(std::move(p));
}

/// Von Neumann entropy -sum p ln p; zero entries contribute nothing.
inline double entropy(const EntanglementSpectrum& s) {
  double S = 0.0;
  for (double p : s.probs)
    if (p > 0.0) S -= p * std::log(p);
  return S < 0.0 ? 0.0 : S;
}

inline double trace_distance_matrices(const DensityMatrixBlock& r, const DensityMatrixBlock& s) {
  if (r.matrix.rows() != s.matrix.rows()) throw domain_error("density matrix dimensions differ");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.matrix - s.matrix, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Half the l1 distance of two descending spectra, zero-padded to equal length.
inline double trace_distance_spectra(const EntanglementSpectrum& p, const EntanglementSpectrum& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = k < p.size() ? p[k] : 0.0;
    const double b = k < q.size() ? q[k] : 0.0;
    d += std::abs(a - b);
  }
  return 0.5 * d;
}

namespace detail {

inline void require_leading_block(const std::vector<int>& sites_A, int L) {
  if (sites_A.empty() || static_cast<int>(sites_A.size()) >= L + 1)
    throw unsupported_partition_error("cut must be a nonempty strict subset of sites");
  std::vector<int> sorted = sites_A;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < static_cast<int>(sorted.size()); ++k)
    if (sorted[static_cast<std::size_t>(k)] != k)
      throw unsupported_partition_error("only contiguous leading-site cuts are supported");
  if (static_cast<int>(sorted.size()) >= L)
    throw unsupported_partition_error("cut must leave a nonempty complement");
}

// Tensor-factor partial trace. With the global mode order (up 0..L-1, then
// down 0..L-1), a contiguous site cut splits each word into low/high bits.
// For states with fixed particle number per spin the reordering signs that
// factor a configuration into |A> (x) |B> are constant on each nonzero
// (n_up^A, n_down^A) block and cancel in rho, so no sign bookkeeping is
// needed here. `keep_low` selects whether A (low bits) or B (high bits)
// labels the rows of the result.
inline DensityMatrixBlock spinful_partial_trace(const Eigen::VectorXd& state, const SectorBasis& b,
                                                int cut, bool keep_low) {
  const int L = b.sites();
  const int kept_sites = keep_low ? cut : L - cut;
  const Word mask = (Word{1} << cut) - 1;

  const std::size_t dim_kept = std::size_t{1} << (2 * kept_sites);
  auto kept_index = [&](SpinConfig c) -> std::size_t {
    const Word u = keep_low ? (c.up & mask) : (c.up >> cut);
    const Word d = keep_low ? (c.down & mask) : (c.down >> cut);
    return u | (d << kept_sites);
  };
  auto traced_key = [&](SpinConfig c) -> std::uint64_t {
    const Word u = keep_low ? (c.up >> cut) : (c.up & mask);
    const Word d = keep_low ? (c.down >> cut) : (c.down & mask);
    return (static_cast<std::uint64_t>(u) << 32) | d;
  };

  std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < b.dimension(); ++i)
    groups[traced_key(b.state(i))].emplace_back(kept_index(b.state(i)), i);

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim_kept, dim_kept);
  for (const auto& [key, members] : groups)
    for (const auto& [ka, ia] : members)
      for (const auto& [kb, ib] : members)
        rho(ka, kb) += state(static_cast<Eigen::Index>(ia)) * state(static_cast<Eigen::Index>(ib));

  DensityMatrixBlock block;
  block.matrix = std::move(rho);
  block.sites = kept_sites;
  block.spinful = true;
  block.labels.resize(dim_kept);
  for (std::size_t a = 0; a < dim_kept; ++a) {
    const Word kept_mask = (Word{1} << kept_sites) - 1;
    block.labels[a] = {static_cast<Word>(a) & kept_mask, static_cast<Word>(a >> kept_sites)};
  }
  return block;
}

inline DensityMatrixBlock spinless_partial_trace(const Eigen::VectorXd& state,
                                                 const SpinlessBasis& b, int cut, bool keep_low) {
  const int M = b.modes();
  const int kept = keep_low ? cut : M - cut;
  const Word mask = (Word{1} << cut) - 1;
  const std::size_t dim_kept = std::size_t{1} << kept;

  std::unordered_map<Word, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const Word w = b.state(i);
    const Word kept_bits = keep_low ? (w & mask) : (w >> cut);
    const Word traced_bits = keep_low ? (w >> cut) : (w & mask);
    groups[traced_bits].emplace_back(kept_bits, i);
  }

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim_kept, dim_kept);
  for (const auto& [key, members] : groups)
    for (const auto& [ka, ia] : members)
      for (const auto& [kb, ib] : members)
        rho(ka, kb) += state(static_cast<Eigen::Index>(ia)) * state(static_cast<Eigen::Index>(ib));

  DensityMatrixBlock block;
  block.matrix = std::move(rho);
  block.sites = kept;
  block.spinful = false;
  block.labels.resize(dim_kept);
  for (std::size_t a = 0; a < dim_kept; ++a) block.labels[a] = {static_cast<Word>(a), 0};
  return block;
}

inline void check_normalized(const Eigen::VectorXd& state) {
  if (std::abs(state.squaredNorm() - 1.0) > 1e-9) throw domain_error("state is not normalized");
}

}  // namespace detail

inline DensityMatrixBlock reduced_density_matrix(const Eigen::VectorXd& state, const SectorBasis& b,
                                                 const std::vector<int>& sites_A) {
  detail::check_normalized(state);
  if (state.size() != static_cast<Eigen::Index>(b.dimension()))
    throw domain_error("state length does not match basis dimension");
  detail::require_leading_block(sites_A, b.sites());
  return detail::spinful_partial_trace(state, b, static_cast<int>(sites_A.size()), true);
}

inline DensityMatrixBlock reduced_density_matrix(const Eigen::VectorXd& state,
                                                 const SpinlessBasis& b,
                                                 const std::vector<int>& modes_A) {
  detail::check_normalized(state);
  if (state.size() != static_cast<Eigen::Index>(b.dimension()))
    throw domain_error("state length does not match basis dimension");
  detail::require_leading_block(modes_A, b.modes());
  return detail::spinless_partial_trace(state, b, static_cast<int>(modes_A.size()), true);
}

/// rho_B for the same leading-block cut (trace over A instead of B).
inline DensityMatrixBlock complement_reduced_density_matrix(const Eigen::VectorXd& state,
                                                            const SectorBasis& b,
                                                            const std::vector<int>& sites_A) {
  detail::check_normalized(state);
  detail::require_leading_block(sites_A, b.sites());
  return detail::spinful_partial_trace(state, b, static_cast<int>(sites_A.size()), false);
}

inline DensityMatrixBlock complement_reduced_density_matrix(const Eigen::VectorXd& state,
                                                            const SpinlessBasis& b,
                                                            const std::vector<int>& modes_A) {
  detail::check_normalized(state);
  detail::require_leading_block(modes_A, b.modes());
  return detail::spinless_partial_trace(state, b, static_cast<int>(modes_A.size()), false);
}

/// Per-site total densities <n_j> (summed over spin).
inline std::vector<double> local_densities(const Eigen::VectorXd& state, const SectorBasis& b) {
  detail::check_normalized(state);
  std::vector<double> n(static_cast<std::size_t>(b.sites()), 0.0);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const double w = state(static_cast<Eigen::Index>(i)) * state(static_cast<Eigen::Index>(i));
    const SpinConfig c = b.state(i);
    for (int j = 0; j < b.sites(); ++j)
      n[static_cast<std::size_t>(j)] += w * (((c.up >> j) & 1) + ((c.down >> j) & 1));
  }
  return n;
}

inline std::vector<double> local_densities(const Eigen::VectorXd& state, const SpinlessBasis& b) {
  detail::check_normalized(state);
  std::vector<double> n(static_cast<std::size_t>(b.modes()), 0.0);
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const double w = state(static_cast<Eigen::Index>(i)) * state(static_cast<Eigen::Index>(i));
    const Word word = b.state(i);
    for (int j = 0; j < b.modes(); ++j) n[static_cast<std::size_t>(j)] += w * ((word >> j) & 1);
  }
  return n;
}

/// Natural density metric: sum over sites of |n_j - m_j|.
inline double natural_metric(const std::vector<double>& n, const std::vector<double>& m) {
  if (n.size() != m.size()) throw domain_error("density vectors have different lengths");
  double d = 0.0;
  for (std::size_t j = 0; j < n.size(); ++j) d += std::abs(n[j] - m[j]);
  return d;
}

/// Diagonal of the total number operator of block-site `site` in the block's
/// local occupation basis.
inline Eigen::VectorXd site_occupation_diag(const DensityMatrixBlock& block, int site) {
  if (site < 0 || site >= block.sites) throw domain_error("site outside block");
  Eigen::VectorXd diag(block.matrix.rows());
  for (std::size_t a = 0; a < block.labels.size(); ++a) {
    const SpinConfig& c = block.labels[a];
    const int occ = ((c.up >> site) & 1) + (block.spinful ? ((c.down >> site) & 1) : 0);
    diag(static_cast<Eigen::Index>(a)) = occ;
  }
  return diag;
}

}  // namespace freefit
