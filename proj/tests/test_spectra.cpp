#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fluxring/eig.hpp"
#include "fluxring/spectra.hpp"
#include "test_support.hpp"

using namespace fluxring;

namespace {

SystemSpec single_spec(double delta) {
  SystemSpec spec;
  spec.n_fluxons = 1;
  spec.delta = delta;
  return spec;
}

SystemSpec pair_spec(double delta) {
  SystemSpec spec;
  spec.n_fluxons = 2;
  spec.delta = delta;
  return spec;
}

}  // namespace

TEST_CASE("single-fluxon sweep reproduces the band-pair structure") {
  const BandTable table = band_sweep(single_spec(5.0), -7, 8);
  REQUIRE(table.m_values.size() == 16);
  REQUIRE(table.band_labels == std::vector<std::string>{"E_minus", "E_plus"});

  // numeric vs closed form everywhere (band continuity)
  for (std::size_t r = 0; r < table.m_values.size(); ++r)
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(std::abs(table.labeled[r][k] - table.closed[r][k]) <=
            1e-10 * std::max(1.0, std::abs(table.closed[r][k])));

  // the lower band bottoms out at m in {0, 1}
  std::size_t argmin = 0;
  for (std::size_t r = 1; r < table.m_values.size(); ++r)
    if (table.labeled[r][0] < table.labeled[argmin][0]) argmin = r;
  const int m_at_min = table.m_values[argmin];
  CHECK((m_at_min == 0 || m_at_min == 1));
}

TEST_CASE("two-fluxon sweep at delta=3 gives the printed m=0 bands") {
  const BandTable table = band_sweep(pair_spec(3.0), 0, 0);
  const double r = std::sqrt(145.0);
  CHECK(table.labeled[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.labeled[0][1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(table.labeled[0][2] == doctest::Approx(0.5 * (1.0 + r)).epsilon(1e-12));
  CHECK(table.labeled[0][3] == doctest::Approx(0.5 * (1.0 - r)).epsilon(1e-12));
  CHECK(table.labeled[0][2] == doctest::Approx(6.520797289396148).epsilon(1e-12));
  CHECK(table.labeled[0][3] == doctest::Approx(-5.520797289396148).epsilon(1e-12));
}

TEST_CASE("sweep at delta=0 gives the bare kinetic bands") {
  const BandTable table = band_sweep(single_spec(0.0), -5, 5);
  for (std::size_t r = 0; r < table.m_values.size(); ++r) {
    const double m = table.m_values[r];
    const double a = m * m, b = (m - 1.0) * (m - 1.0);
    CHECK(table.labeled[r][0] == doctest::Approx(std::min(a, b)).epsilon(1e-12));
    CHECK(table.labeled[r][1] == doctest::Approx(std::max(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("oriented variant sweeps numerically without closed-form columns") {
  SystemSpec spec = pair_spec(1.0);
  spec.orientations = {1, 1};
  const BandTable table = band_sweep(spec, -2, 2);
  CHECK(table.closed.empty());
  REQUIRE(table.bands.size() == 5);
  for (const auto& row : table.bands) CHECK(std::is_sorted(row.begin(), row.end()));
}

TEST_CASE("band sweep argument check") {
  CHECK_THROWS_AS(band_sweep(single_spec(1.0), 3, -3), std::invalid_argument);
}

TEST_CASE("bloch vector basics") {
  {
    const std::array<cplx, 2> pole{1.0, 0.0};
    const BlochVector v = fluxon_bloch_vector(pole);
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);
    CHECK(v.z == 1.0);
  }
  {
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<cplx, 2> xplus{r, r};
    const BlochVector v = fluxon_bloch_vector(xplus);
    CHECK(v.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.z == doctest::Approx(0.0).epsilon(1e-15));
  }
  const std::array<cplx, 2> zero{0.0, 0.0};
  CHECK_THROWS_AS(fluxon_bloch_vector(zero), std::invalid_argument);
  const std::array<cplx, 3> wrong{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(fluxon_bloch_vector(wrong), std::invalid_argument);
}

TEST_CASE("weak coupling pins eigenstates at the poles") {
  const EigenDecomposition eig = eig_hermitian(build_single_fluxon(0, 0.01));
  const BlochVector ground = fluxon_bloch_vector(eig.vector(0));
  CHECK(std::abs(ground.z) > 0.999);
  CHECK(ground.z > 0.0);  // ground state at m=0 leans to |n=0>
}

TEST_CASE("bloch regimes across m") {
  for (int m = -10; m <= 10; ++m) {
    const EigenDecomposition weak = eig_hermitian(build_single_fluxon(m, 0.01));
    for (std::size_t band = 0; band < 2; ++band) {
      const BlochVector v = fluxon_bloch_vector(weak.vector(band));
      CHECK(std::abs(v.z) > 0.999);
      CHECK(std::abs(v.y) < 1e-12);
      CHECK(v.x * v.x + v.y * v.y + v.z * v.z == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  for (int m = -5; m <= 5; ++m) {
    const EigenDecomposition strong = eig_hermitian(build_single_fluxon(m, 100.0));
    for (std::size_t band = 0; band < 2; ++band) {
      const BlochVector v = fluxon_bloch_vector(strong.vector(band));
      CHECK(std::abs(v.x) > 0.99);
      CHECK(std::abs(v.y) < 1e-12);
    }
  }
}

TEST_CASE("bloch sweep lists both bands per m") {
  const auto points = bloch_sweep(single_spec(5.0), -7, 8);
  REQUIRE(points.size() == 32);
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
    CHECK(points[i].band == "E_minus");
    CHECK(points[i + 1].band == "E_plus");
    CHECK(points[i].m == points[i + 1].m);
    CHECK(points[i].energy <= points[i + 1].energy);
  }
}

TEST_CASE("bell fidelity on the bell states themselves") {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<cplx, 4> psi_minus{0.0, r, -r, 0.0};
  CHECK(bell_fidelity(psi_minus, BellState::psi_minus) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bell_fidelity(psi_minus, BellState::psi_plus) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bell_fidelity(psi_minus, BellState::phi_minus) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("bell fidelity is phase invariant") {
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const StateVector psi = testsupport::random_state(rng, {2, 2});
    const cplx phase = std::polar(1.0, 6.28 * rng.uniform());
    std::vector<cplx> rotated = psi.amps;
    for (cplx& a : rotated) a *= phase;
    for (BellState b : {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus,
                        BellState::psi_minus})
      CHECK(bell_fidelity(psi.amps, b) == doctest::Approx(bell_fidelity(rotated, b)).epsilon(1e-12));
  }
}

TEST_CASE("the E1 and E2 bands carry fixed Bell states at every m") {
  for (double delta : {1.0, 3.0})
    for (int m = -10; m <= 10; ++m) {
      const ComplexMatrix h = build_two_fluxon(m, delta);
      const EigenDecomposition eig = eig_hermitian(h);
      const auto closed = closed_form_two_fluxon_energies(m, delta);

      // locate the numeric eigenvector of each closed-form band
      const auto band_vector = [&](double energy) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < 4; ++k)
          if (std::abs(eig.values[k] - energy) < std::abs(eig.values[best] - energy)) best = k;
        return eig.vector(best);
      };

      CHECK(bell_fidelity(band_vector(closed[0]), BellState::psi_minus) >= 1.0 - 1e-10);
      CHECK(bell_fidelity(band_vector(closed[1]), BellState::phi_minus) >= 1.0 - 1e-10);
    }
}
