#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <variant>
#include <vector>

#include "freefit/errors.hpp"
#include "freefit/hilbert.hpp"

namespace freefit {

enum class Boundary { open, periodic };

struct HubbardParams {
  double J = 1.0;               // hopping amplitude
  double U = 0.0;               // on-site interaction
  std::vector<double> v;        // site potentials, length L
  Boundary boundary = Boundary::open;
};

struct AuxParams {
  double J = 1.0;   // hopping on each two-site chain
  double mu = 0.0;  // chemical potential on site 1
};

/// Dense Hermitian operator together with a handle to the basis it lives in.
struct OperatorMatrix {
  Eigen::MatrixXd data;
  std::variant<const SectorBasis*, const SpinlessBasis*> basis;

  std::size_t dimension() const { return static_cast<std::size_t>(data.rows()); }
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double gap = 0.0;  // E1 - E0; zero-dimensional/1x1 problems report +inf
};

namespace detail {

inline void check_hermitian(const Eigen::MatrixXd& H) {
  const double dev = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-12) throw error("assembled operator is not Hermitian");
}

// Bond list for a 1D chain under the requested boundary.
inline std::vector<std::pair<int, int>> chain_bonds(int L, Boundary boundary) {
  std::vector<std::pair<int, int>> bonds;
  for (int j = 0; j + 1 < L; ++j) bonds.emplace_back(j, j + 1);
  if (boundary == Boundary::periodic) {
    if (L == 2) throw domain_error("periodic boundary on L=2 double-counts the bond");
    if (L > 2) bonds.emplace_back(L - 1, 0);
  }
  return bonds;
}

}  // namespace detail

/// Assemble the spinful chain H = -J sum(c^dag c + h.c.) + sum v_j n_j,sigma
/// + U sum n_up n_down in the given sector basis.
inline OperatorMatrix build_hubbard(const HubbardParams& p, const SectorBasis& b) {
  if (static_cast<int>(p.v.size()) != b.sites())
    throw domain_error("potential vector length does not match site count");
  if (!std::isfinite(p.J)) throw domain_error("hopping must be finite");

  const auto bonds = detail::chain_bonds(b.sites(), p.boundary);
  const std::size_t dim = b.dimension();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);

  for (std::size_t c = 0; c < dim; ++c) {
    const SpinConfig cfg = b.state(c);

    double diag = 0.0;
    for (int j = 0; j < b.sites(); ++j) {
      const int occ_up = (cfg.up >> j) & 1;
      const int occ_down = (cfg.down >> j) & 1;
      diag += p.v[static_cast<std::size_t>(j)] * (occ_up + occ_down);
      diag += p.U * occ_up * occ_down;
    }
    H(c, c) += diag;

    // Number-conserving hops stay inside the sector; index_of throwing here
    // would mean a basis-escape bug, not bad user input.
    auto hop = [&](Word word, int from, int to) -> int {
      if (!((word >> from) & 1) || ((word >> to) & 1)) return 0;
      return detail::hop_sign(word, from, to);
    };
    for (auto [i, j] : bonds) {
      for (int dir = 0; dir < 2; ++dir) {
        const int from = dir ? i : j;
        const int to = dir ? j : i;
        if (int s = hop(cfg.up, from, to); s != 0) {
          SpinConfig t = cfg;
          t.up = (t.up & ~(Word{1} << from)) | (Word{1} << to);
          H(b.index_of(t), c) += -p.J * s;
        }
        if (int s = hop(cfg.down, from, to); s != 0) {
          SpinConfig t = cfg;
          t.down = (t.down & ~(Word{1} << from)) | (Word{1} << to);
          H(b.index_of(t), c) += -p.J * s;
        }
      }
    }
  }

  detail::check_hermitian(H);
  return OperatorMatrix{std::move(H), &b};
}

/// Non-interacting spinful chain: build_hubbard with U = 0.
inline OperatorMatrix build_free_spinful(double J, const std::vector<double>& v,
                                         const SectorBasis& b,
                                         Boundary boundary = Boundary::open) {
  return build_hubbard(HubbardParams{J, 0.0, v, boundary}, b);
}

/// Two decoupled spinless two-site chains (1-3 and 2-4) with a chemical
/// potential -mu/2 on site 1. Requires a 4-mode basis.
inline OperatorMatrix build_aux_dimer(const AuxParams& p, const SpinlessBasis& b) {
  if (b.modes() != 4) throw domain_error("auxiliary dimer needs a 4-mode basis");
  if (!std::isfinite(p.J) || p.J == 0.0) throw domain_error("hopping must be finite and nonzero");

  const std::pair<int, int> bonds[] = {{0, 2}, {1, 3}};
  const std::size_t dim = b.dimension();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);

  for (std::size_t c = 0; c < dim; ++c) {
    const Word w = b.state(c);
    H(c, c) += -(p.mu / 2.0) * ((w >> 0) & 1);
    for (auto [i, j] : bonds) {
      for (int dir = 0; dir < 2; ++dir) {
        const int from = dir ? i : j;
        const int to = dir ? j : i;
        if (!((w >> from) & 1) || ((w >> to) & 1)) continue;
        const int s = detail::hop_sign(w, from, to);
        const Word t = (w & ~(Word{1} << from)) | (Word{1} << to);
        H(b.index_of(t), c) += -p.J * s;
      }
    }
  }

  detail::check_hermitian(H);
  return OperatorMatrix{std::move(H), &b};
}

inline GroundState ground_state(const OperatorMatrix& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.data);
  if (es.info() != Eigen::Success) throw error("dense eigensolver failed");
  GroundState g;
  g.energy = es.eigenvalues()(0);
  g.vector = es.eigenvectors().col(0);
  g.gap = op.data.rows() > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                             : std::numeric_limits<double>::infinity();
  return g;
}

}  // namespace freefit
