#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "freefit/entanglement.hpp"
#include "freefit/hamiltonians.hpp"

using namespace freefit;
using Catch::Approx;

namespace {

Eigen::VectorXd random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gauss(rng);
  return v.normalized();
}

DensityMatrixBlock random_density(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd A(dim, dim);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) A(i, j) = gauss(rng);
  Eigen::MatrixXd rho = A * A.transpose();
  rho /= rho.trace();
  DensityMatrixBlock block;
  block.matrix = std::move(rho);
  block.labels.assign(dim, {});
  block.sites = 1;
  return block;
}

}  // namespace

TEST_CASE("symmetric free dimer reduces to the maximally mixed site") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const GroundState g = ground_state(build_free_spinful(1.0, {0.0, 0.0}, b));
  const auto rho = reduced_density_matrix(g.vector, b, {0});
  REQUIRE(rho.matrix.rows() == 4);
  CHECK((rho.matrix - 0.25 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(entropy(spectrum_of(rho)) == Approx(std::log(4.0)).margin(1e-12));
}

TEST_CASE("product configuration has a pure reduced state") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(4);
  psi(b.index_of({0b01, 0b10})) = 1.0;  // |u,d>
  const auto rho = reduced_density_matrix(psi, b, {0});
  CHECK(entropy(spectrum_of(rho)) == Approx(0.0).margin(1e-12));
  CHECK(rho.matrix.trace() == Approx(1.0).margin(1e-12));
}

TEST_CASE("entropy of simple spectra") {
  CHECK(entropy(spectrum_from_probabilities({1.0, 0.0, 0.0, 0.0})) == Approx(0.0).margin(1e-15));
  CHECK(entropy(spectrum_from_probabilities({0.25, 0.25, 0.25, 0.25})) ==
        Approx(std::log(4.0)).margin(1e-12));
  CHECK(entropy(spectrum_from_probabilities({0.5, 0.5, 0.0, 0.0})) ==
        Approx(std::log(2.0)).margin(1e-12));
}

TEST_CASE("trace distance of matrices") {
  std::mt19937_64 rng(11);
  const auto rho = random_density(4, rng);
  CHECK(trace_distance_matrices(rho, rho) == Approx(0.0).margin(1e-14));

  DensityMatrixBlock p, q;
  p.matrix = Eigen::Vector2d(1.0, 0.0).asDiagonal();
  q.matrix = Eigen::Vector2d(0.0, 1.0).asDiagonal();
  CHECK(trace_distance_matrices(p, q) == Approx(1.0).margin(1e-14));

  // Independent oracle: for Hermitian differences the trace norm equals the
  // sum of singular values.
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_density(5, rng);
    const auto b = random_density(5, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.matrix - b.matrix);
    const double oracle = 0.5 * svd.singularValues().sum();
    CHECK(trace_distance_matrices(a, b) == Approx(oracle).margin(1e-10));
  }
}

TEST_CASE("trace distance of matrices is a metric on random triples") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_density(4, rng);
    const auto b = random_density(4, rng);
    const auto c = random_density(4, rng);
    const double ab = trace_distance_matrices(a, b);
    const double ba = trace_distance_matrices(b, a);
    const double ac = trace_distance_matrices(a, c);
    const double cb = trace_distance_matrices(c, b);
    CHECK(ab == Approx(ba).margin(1e-12));
    CHECK(ab <= ac + cb + 1e-12);
    CHECK(ab >= 0.0);
  }
}

TEST_CASE("trace distance of spectra") {
  const auto uniform = spectrum_from_probabilities({0.25, 0.25, 0.25, 0.25});
  const auto pure = spectrum_from_probabilities({1.0, 0.0, 0.0, 0.0});
  CHECK(trace_distance_spectra(uniform, uniform) == Approx(0.0).margin(1e-15));
  CHECK(trace_distance_spectra(pure, uniform) == Approx(0.75).margin(1e-12));

  const auto p = spectrum_from_probabilities({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
  const auto q = spectrum_from_probabilities({1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6});
  CHECK(trace_distance_spectra(p, q) == Approx(1.0 / 6).margin(1e-12));

  // Zero-padding: shorter spectrum against itself padded.
  const auto two = spectrum_from_probabilities({0.5, 0.5});
  const auto four = spectrum_from_probabilities({0.5, 0.5, 0.0, 0.0});
  CHECK(trace_distance_spectra(two, four) == Approx(0.0).margin(1e-15));
}

TEST_CASE("spectral distance equals matrix distance for aligned diagonal pairs") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> p(4), q(4);
    double sp = 0.0, sq = 0.0;
    for (int k = 0; k < 4; ++k) {
      p[static_cast<std::size_t>(k)] = unif(rng);
      q[static_cast<std::size_t>(k)] = unif(rng);
      sp += p[static_cast<std::size_t>(k)];
      sq += q[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < 4; ++k) {
      p[static_cast<std::size_t>(k)] /= sp;
      q[static_cast<std::size_t>(k)] /= sq;
    }
    std::sort(p.begin(), p.end(), std::greater<>());
    std::sort(q.begin(), q.end(), std::greater<>());
    DensityMatrixBlock P, Q;
    P.matrix = Eigen::Map<Eigen::Vector4d>(p.data()).asDiagonal();
    Q.matrix = Eigen::Map<Eigen::Vector4d>(q.data()).asDiagonal();
    const double dm = trace_distance_matrices(P, Q);
    const double ds = trace_distance_spectra(spectrum_from_probabilities(p),
                                             spectrum_from_probabilities(q));
    CHECK(ds == Approx(dm).margin(1e-12));
  }
}

TEST_CASE("local densities of the dimer") {
  const SectorBasis b = build_sector_basis(2, 1, 1);

  SECTION("symmetric dimer is half filled per site at any U") {
    for (double U : {0.0, 3.0, 40.0}) {
      const GroundState g = ground_state(build_hubbard({1.0, U, {0.0, 0.0}}, b));
      const auto n = local_densities(g.vector, b);
      CHECK(n[0] == Approx(1.0).margin(1e-10));
      CHECK(n[1] == Approx(1.0).margin(1e-10));
    }
  }

  SECTION("free tilted dimer matches the orbital formula") {
    const double J = 1.0, dv = 0.5;
    const GroundState g = ground_state(build_free_spinful(J, {dv / 2.0, -dv / 2.0}, b));
    const auto n = local_densities(g.vector, b);
    const double expected = 1.0 - dv / std::sqrt(dv * dv + 4.0 * J * J);
    CHECK(n[0] == Approx(expected).margin(1e-12));
    CHECK(n[0] + n[1] == Approx(2.0).margin(1e-12));
  }

  SECTION("strong repulsion freezes densities toward one per site") {
    const GroundState g = ground_state(build_hubbard({1.0, 1e6, {0.25, -0.25}}, b));
    const auto n = local_densities(g.vector, b);
    CHECK(n[0] == Approx(1.0).margin(1e-5));
    CHECK(n[1] == Approx(1.0).margin(1e-5));
  }
}

TEST_CASE("natural metric") {
  CHECK(natural_metric({1.0, 1.0}, {1.0, 1.0}) == Approx(0.0));
  CHECK(natural_metric({1.0, 1.0}, {0.9, 1.1}) == Approx(0.2).margin(1e-15));
  CHECK_THROWS_AS(natural_metric({1.0}, {1.0, 0.0}), domain_error);
}

TEST_CASE("bipartition entropies agree for pure states") {
  std::mt19937_64 rng(101);
  const SectorBasis b = build_sector_basis(4, 2, 2);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::VectorXd psi = random_state(b.dimension(), rng);
    for (int cut = 1; cut <= 2; ++cut) {
      std::vector<int> sites_A(static_cast<std::size_t>(cut));
      std::iota(sites_A.begin(), sites_A.end(), 0);
      const double sA = entropy(spectrum_of(reduced_density_matrix(psi, b, sites_A)));
      const double sB = entropy(spectrum_of(complement_reduced_density_matrix(psi, b, sites_A)));
      CHECK(sA == Approx(sB).margin(1e-10));
    }
  }

  const SpinlessBasis sb = build_spinless_basis(4, 2);
  const Eigen::VectorXd psi = random_state(sb.dimension(), rng);
  const double sA = entropy(spectrum_of(reduced_density_matrix(psi, sb, {0, 1})));
  const double sB = entropy(spectrum_of(complement_reduced_density_matrix(psi, sb, {0, 1})));
  CHECK(sA == Approx(sB).margin(1e-10));
}

TEST_CASE("reduced spectrum is invariant under potential shifts and global phase") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const GroundState g0 = ground_state(build_hubbard({1.0, 4.0, {0.3, -0.3}}, b));
  const GroundState g1 = ground_state(build_hubbard({1.0, 4.0, {1.8, 1.2}}, b));
  const auto s0 = spectrum_of(reduced_density_matrix(g0.vector, b, {0}));
  const auto s1 = spectrum_of(reduced_density_matrix(g1.vector, b, {0}));
  const auto s2 = spectrum_of(reduced_density_matrix(-g0.vector, b, {0}));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(s0[k] == Approx(s1[k]).margin(1e-12));
    CHECK(s0[k] == Approx(s2[k]).margin(1e-15));
  }
}

TEST_CASE("partition and input validation") {
  const SectorBasis b = build_sector_basis(3, 1, 1);
  const Eigen::VectorXd psi = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(b.dimension()), 0);
  CHECK_THROWS_AS(reduced_density_matrix(psi, b, {0, 2}), unsupported_partition_error);
  CHECK_THROWS_AS(reduced_density_matrix(psi, b, {1}), unsupported_partition_error);
  CHECK_THROWS_AS(reduced_density_matrix(psi, b, {0, 1, 2}), unsupported_partition_error);
  CHECK_THROWS_AS(reduced_density_matrix(2.0 * psi, b, {0}), domain_error);

  CHECK_THROWS_AS(spectrum_from_probabilities({0.7, 0.7}), domain_error);
  CHECK_THROWS_AS(spectrum_from_probabilities({1.2, -0.2}), domain_error);

  DensityMatrixBlock p, q;
  p.matrix = Eigen::MatrixXd::Identity(2, 2) * 0.5;
  q.matrix = Eigen::MatrixXd::Identity(4, 4) * 0.25;
  CHECK_THROWS_AS(trace_distance_matrices(p, q), domain_error);
}

TEST_CASE("site occupation diagonal on block labels") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const GroundState g = ground_state(build_hubbard({1.0, 2.0, {0.1, -0.1}}, b));
  const auto rho = reduced_density_matrix(g.vector, b, {0});
  const Eigen::VectorXd diag = site_occupation_diag(rho, 0);
  // Labels run over (up, down) occupation of the single kept site.
  CHECK(diag(0) == Approx(0.0));
  CHECK(diag(1) == Approx(1.0));
  CHECK(diag(2) == Approx(1.0));
  CHECK(diag(3) == Approx(2.0));
  // Density from the block matches the full-state density.
  const double n1_block = (diag.asDiagonal() * rho.matrix).trace();
  CHECK(n1_block == Approx(local_densities(g.vector, b)[0]).margin(1e-12));
}
