#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "freefit/hamiltonians.hpp"

using namespace freefit;
using Catch::Approx;

namespace {

std::vector<double> sorted_eigenvalues(const OperatorMatrix& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.data, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace

TEST_CASE("free dimer sector spectrum is two independent fermions") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const auto H = build_hubbard({1.0, 0.0, {0.0, 0.0}}, b);
  const auto ev = sorted_eigenvalues(H);
  CHECK(ev[0] == Approx(-2.0).margin(1e-12));
  CHECK(ev[1] == Approx(0.0).margin(1e-12));
  CHECK(ev[2] == Approx(0.0).margin(1e-12));
  CHECK(ev[3] == Approx(2.0).margin(1e-12));
}

TEST_CASE("atomic limit is diagonal with U on double occupancies") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const auto H = build_hubbard({0.0, 5.0, {0.0, 0.0}}, b);
  CHECK(H.data.isDiagonal(1e-15));
  // Basis order |ud,0>, |u,d>, |d,u>, |0,ud>.
  CHECK(H.data(0, 0) == Approx(5.0));
  CHECK(H.data(1, 1) == Approx(0.0));
  CHECK(H.data(2, 2) == Approx(0.0));
  CHECK(H.data(3, 3) == Approx(5.0));
}

TEST_CASE("free spinful ground energy matches the 2x2 orbital oracle") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const double J = 1.3, dv = 0.7;
  const auto H = build_free_spinful(J, {dv / 2.0, -dv / 2.0}, b);
  // Single-particle levels of [[dv/2, -J], [-J, -dv/2]] are +-sqrt((dv/2)^2+J^2);
  // both spins fill the lower one.
  const double expected = -2.0 * std::sqrt(dv * dv / 4.0 + J * J);
  CHECK(ground_state(H).energy == Approx(expected).margin(1e-12));
}

TEST_CASE("constant potential shift moves all eigenvalues by c * N") {
  const SectorBasis b = build_sector_basis(3, 2, 1);
  const std::vector<double> v = {0.2, -0.4, 0.9};
  std::vector<double> shifted = v;
  const double c = 1.7;
  for (double& x : shifted) x += c;
  const auto ev0 = sorted_eigenvalues(build_hubbard({1.0, 2.5, v}, b));
  const auto ev1 = sorted_eigenvalues(build_hubbard({1.0, 2.5, shifted}, b));
  for (std::size_t k = 0; k < ev0.size(); ++k)
    CHECK(ev1[k] == Approx(ev0[k] + c * 3.0).margin(1e-10));
}

TEST_CASE("builders produce Hermitian matrices on random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SectorBasis b = build_sector_basis(4, 2, 2);
    std::vector<double> v(4);
    for (double& x : v) x = unif(rng);
    const auto H = build_hubbard({unif(rng), unif(rng), v,
                                  trial % 2 ? Boundary::periodic : Boundary::open},
                                 b);
    CHECK((H.data - H.data.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("U=0 sector energies are sums of single-particle energies") {
  // Free spinful chain: every sector eigenvalue must be a sum of one up and
  // one down single-particle energy of the same one-body matrix.
  const double J = 0.8;
  const std::vector<double> v = {0.3, -0.1};
  Eigen::Matrix2d h;
  h << v[0], -J, -J, v[1];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  const SectorBasis b = build_sector_basis(2, 1, 1);
  const auto ev = sorted_eigenvalues(build_free_spinful(J, v, b));
  std::vector<double> sums;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sums.push_back(es.eigenvalues()(i) + es.eigenvalues()(j));
  std::sort(sums.begin(), sums.end());
  for (std::size_t k = 0; k < 4; ++k) CHECK(ev[k] == Approx(sums[k]).margin(1e-12));
}

TEST_CASE("aux dimer single-particle structure") {
  const SpinlessBasis b = build_spinless_basis(4, 1);

  SECTION("untuned chains give +-J levels") {
    const auto ev = sorted_eigenvalues(build_aux_dimer({1.0, 0.0}, b));
    CHECK(ev[0] == Approx(-1.0).margin(1e-12));
    CHECK(ev[1] == Approx(-1.0).margin(1e-12));
    CHECK(ev[2] == Approx(1.0).margin(1e-12));
    CHECK(ev[3] == Approx(1.0).margin(1e-12));
  }

  SECTION("tuned chain matches the 2x2 eigenvalue oracle") {
    const double mu = 3.0, J = 1.0;
    const auto ev = sorted_eigenvalues(build_aux_dimer({J, mu}, b));
    const double expected = -mu / 4.0 - std::sqrt(mu * mu / 16.0 + J * J);
    CHECK(ev[0] == Approx(expected).margin(1e-12));  // = -2 for mu=3, J=1
    CHECK(ev[0] == Approx(-2.0).margin(1e-12));
  }
}

TEST_CASE("aux dimer two-fermion ground energy with one fermion per chain") {
  const SpinlessBasis b = build_spinless_basis(4, 2);
  const auto g = ground_state(build_aux_dimer({1.0, 0.0}, b));
  CHECK(g.energy == Approx(-2.0).margin(1e-12));
}

TEST_CASE("parameter validation") {
  const SectorBasis b = build_sector_basis(2, 1, 1);
  CHECK_THROWS_AS(build_hubbard({1.0, 0.0, {0.0}}, b), domain_error);
  CHECK_THROWS_AS(build_hubbard({1.0, 0.0, {0.0, 0.0}, Boundary::periodic}, b), domain_error);
  const SpinlessBasis sb = build_spinless_basis(3, 1);
  CHECK_THROWS_AS(build_aux_dimer({1.0, 0.0}, sb), domain_error);
}
