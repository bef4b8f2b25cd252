#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "fluxring/dynamics.hpp"
#include "fluxring/eig.hpp"
#include "test_support.hpp"

using namespace fluxring;

namespace {

// Closed-form symmetric-sector evolution of the two-fluxon system at m=0,
// delta=1: amplitude of |10> starting from |01> is (c(t) - e^{-it})/2 with
// c(t) = sum over lam = (1 +- sqrt17)/2 of lam^2/(4+lam^2) e^{-i lam t}.
cplx p10_amplitude_oracle(double t) {
  const cplx i{0.0, 1.0};
  const double s17 = std::sqrt(17.0);
  const double lp = (1.0 + s17) / 2.0, lm = (1.0 - s17) / 2.0;
  const cplx c = lp * lp / (4.0 + lp * lp) * std::exp(-i * lp * t) +
                 lm * lm / (4.0 + lm * lm) * std::exp(-i * lm * t);
  return (c - std::exp(-i * t)) / 2.0;
}

// Classic fourth-order Runge-Kutta on i psi' = H psi; independent of the
// spectral propagation used by the library.
std::vector<cplx> rk4_evolve(const ComplexMatrix& h, std::vector<cplx> psi, double t_final,
                             double dt) {
  const std::size_t n = psi.size();
  const cplx mi{0.0, -1.0};
  const auto deriv = [&](const std::vector<cplx>& p) {
    std::vector<cplx> d(n);
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc = 0.0;
      for (std::size_t c2 = 0; c2 < n; ++c2) acc += h(r, c2) * p[c2];
      d[r] = mi * acc;
    }
    return d;
  };
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  std::vector<cplx> k1, k2, k3, k4, tmp(n);
  for (std::size_t s = 0; s < steps; ++s) {
    k1 = deriv(psi);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = psi[j] + 0.5 * dt * k1[j];
    k2 = deriv(tmp);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = psi[j] + 0.5 * dt * k2[j];
    k3 = deriv(tmp);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = psi[j] + dt * k3[j];
    k4 = deriv(tmp);
    for (std::size_t j = 0; j < n; ++j)
      psi[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return psi;
}

double unitarity_error(const ComplexMatrix& u) {
  return (u.dagger() * u).max_abs_diff(ComplexMatrix::identity(u.rows()));
}

}  // namespace

TEST_CASE("propagator at t=0 is the identity") {
  const ComplexMatrix h = build_two_fluxon(0, 1.0);
  CHECK(propagator(h, 0.0).max_abs_diff(ComplexMatrix::identity(4)) < 1e-14);
}

TEST_CASE("propagator of a diagonal Hamiltonian applies pure phases") {
  ComplexMatrix h(2, 2);
  h(1, 1) = 1.0;
  const ComplexMatrix u = propagator(h, M_PI);
  CHECK(std::abs(u(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(u(1, 1) + 1.0) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-15);
}

TEST_CASE("propagator is unitary") {
  testsupport::Rng rng(61);
  for (std::size_t n : {2, 4, 8, 16}) {
    const ComplexMatrix h = testsupport::random_hermitian(rng, n);
    CHECK(unitarity_error(propagator(h, 1.37)) < 1e-10);
  }
}

TEST_CASE("propagator matches the closed-form transfer amplitude") {
  const ComplexMatrix h = build_two_fluxon(0, 1.0);
  for (double t : {0.3, 1.0, 3.0, 6.1, 11.7}) {
    const ComplexMatrix u = propagator(h, t);
    // initial |01> = column 1; amplitude on |10> = row 2
    CHECK(std::abs(u(2, 1) - p10_amplitude_oracle(t)) < 1e-12);
  }
}

TEST_CASE("evolving an eigenstate only changes its phase") {
  const ComplexMatrix h = build_two_fluxon(1, 0.7);
  const EigenDecomposition eig = eig_hermitian(h);
  StateVector psi({2, 2});
  psi.amps = eig.vector(2);
  const std::array<double, 3> times{0.0, 1.1, 4.5};
  const auto states = evolve(h, psi, times);
  for (const StateVector& s : states)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(std::abs(s.amps[i]) - std::abs(psi.amps[i])) < 1e-12);
}

TEST_CASE("delta=0 leaves fluxon occupation states stationary") {
  const ComplexMatrix h = build_two_fluxon(0, 0.0);
  const StateVector psi = StateVector::basis_state({2, 2}, std::array<std::size_t, 2>{0, 1});
  const std::array<double, 2> times{0.0, 7.3};
  const auto states = evolve(h, psi, times);
  CHECK(std::abs(states[1].amps[1]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("evolution preserves norm and energy") {
  testsupport::Rng rng(62);
  const ComplexMatrix h = testsupport::random_hermitian(rng, 8);
  StateVector psi0 = testsupport::random_state(rng, {2, 2, 2});
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.25 * k);
  const auto states = evolve(h, psi0, times);

  std::vector<cplx> hpsi(8);
  h.matvec(states[0].amps, hpsi);
  cplx e0 = 0.0;
  for (std::size_t i = 0; i < 8; ++i) e0 += std::conj(states[0].amps[i]) * hpsi[i];

  for (const StateVector& s : states) {
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    h.matvec(s.amps, hpsi);
    cplx e = 0.0;
    for (std::size_t i = 0; i < 8; ++i) e += std::conj(s.amps[i]) * hpsi[i];
    CHECK(std::abs(e - e0) < 1e-9);
  }
}

TEST_CASE("evolution composes over time splits") {
  testsupport::Rng rng(63);
  const ComplexMatrix h = testsupport::random_hermitian(rng, 6);
  StateVector psi0 = testsupport::random_state(rng, {6});
  const double t1 = 0.9, t2 = 2.3;

  const auto direct = evolve(h, psi0, std::array<double, 1>{t1 + t2});
  const auto first = evolve(h, psi0, std::array<double, 1>{t1});
  const auto second = evolve(h, first[0], std::array<double, 1>{t2});
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(std::abs(direct[0].amps[i] - second[0].amps[i]) < 1e-10);
}

TEST_CASE("evolve rejects mismatched dimensions and unsorted times") {
  const ComplexMatrix h = build_two_fluxon(0, 1.0);
  StateVector psi({2});
  psi.amps = {1.0, 0.0};
  CHECK_THROWS_AS(evolve(h, psi, std::array<double, 1>{1.0}), std::invalid_argument);

  const StateVector ok = StateVector::basis_state({2, 2}, std::array<std::size_t, 2>{0, 1});
  CHECK_THROWS_AS(evolve(h, ok, std::array<double, 2>{1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("schedule with a single idle segment matches plain evolution") {
  SystemSpec base;
  base.n_fluxons = 1;
  base.delta = 1.0;
  base.drive = DriveSchedule{{{2.0, 0.0, 0.0}}};

  const ComplexMatrix h = build_driven(1.0, 0.0);
  StateVector psi0({2, 2});
  psi0.amps = {0.5, 0.5, 0.5, 0.5};

  const ScheduleTrace trace = evolve_schedule(base, *base.drive, psi0, 0.5);
  REQUIRE(trace.times.size() == 5);
  CHECK(trace.times.back() == 2.0);
  const auto direct = evolve(h, psi0, trace.times);
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(std::abs(trace.states[k].amps[i] - direct[k].amps[i]) < 1e-12);
}

TEST_CASE("drive segments switch the Hamiltonian at exact boundaries") {
  SystemSpec base;
  base.n_fluxons = 1;
  base.delta = 1.0;
  const DriveSchedule schedule{{{1.0, 0.0, 0.0}, {1.5, 0.5, 0.0}}};
  base.drive = schedule;

  // start in a ground eigenstate of the undriven system
  const EigenDecomposition eig0 = eig_hermitian(build_driven(1.0, 0.0));
  StateVector psi0({2, 2});
  psi0.amps = eig0.vector(0);

  const ScheduleTrace trace = evolve_schedule(base, schedule, psi0, 0.25);
  // boundary at t=1 present exactly once
  std::size_t hits = 0;
  for (double t : trace.times) hits += t == 1.0 ? 1 : 0;
  CHECK(hits == 1);
  CHECK(trace.times.back() == doctest::Approx(2.5).epsilon(1e-12));

  // populations are frozen during segment 1, moving in segment 2
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const double p0 = std::norm(trace.states[k].amps[0]);
    if (trace.times[k] <= 1.0)
      CHECK(p0 == doctest::Approx(std::norm(psi0.amps[0])).epsilon(1e-12));
  }
  const double p_end = std::norm(trace.states.back().amps[0]);
  CHECK(std::abs(p_end - std::norm(psi0.amps[0])) > 1e-3);

  CHECK_THROWS_AS(evolve_schedule(base, DriveSchedule{}, psi0, 0.1), std::invalid_argument);
}

TEST_CASE("teleport experiment reproduces the transfer peak") {
  const ExperimentResult result = teleport_experiment(1.0, 0, 12.0, 0.01);

  // frozen values from the closed-form scan on the same dt=0.01 grid
  CHECK(result.peak_value == doctest::Approx(0.997763098560671).epsilon(1e-9));
  CHECK(result.peak_time == doctest::Approx(6.10).epsilon(1e-9));
  CHECK(result.peak_value >= 0.99);
  CHECK(result.peak_time >= 5.6);
  CHECK(result.peak_time <= 6.6);

  // t = 0 sample: excitation entirely on fluxon 2, no entanglement
  const auto& series = result.series;
  CHECK(series.channels[series.channel_index("P_01")][0] == doctest::Approx(1.0));
  CHECK(series.channels[series.channel_index("S_f1")][0] <= 1e-12);

  // frozen channel values at t=3 (grid index 300)
  const std::size_t i3 = 300;
  CHECK(series.times[i3] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(series.channels[series.channel_index("P_10")][i3] ==
        doctest::Approx(0.474425119226020).epsilon(1e-9));
  CHECK(series.channels[series.channel_index("P_01")][i3] ==
        doctest::Approx(0.521021387898641).epsilon(1e-9));
  CHECK(series.channels[series.channel_index("P_00")][i3] ==
        doctest::Approx(0.002276746437670).epsilon(1e-7));
  CHECK(series.channels[series.channel_index("S_f1")][i3] ==
        doctest::Approx(0.998396597019202).epsilon(1e-9));

  // the whole P_10 channel tracks the closed form
  const auto& p10 = series.channels[series.channel_index("P_10")];
  for (std::size_t k = 0; k < series.times.size(); k += 37)
    CHECK(std::abs(p10[k] - std::norm(p10_amplitude_oracle(series.times[k]))) < 1e-12);

  // probabilities sum to one and stay inside [-1e-12, 1+1e-12] at every sample
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    double sum = 0.0;
    for (std::size_t ch = 0; ch < 4; ++ch) {
      const double p = series.channels[ch][k];
      REQUIRE(p >= -1e-12);
      REQUIRE(p <= 1.0 + 1e-12);
      sum += p;
    }
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("entropy vanishes whenever the transfer is a clean product instant") {
  const ExperimentResult result = teleport_experiment(1.0, 0, 12.0, 0.01);
  const auto& p10 = result.series.channels[result.series.channel_index("P_10")];
  const auto& s = result.series.channels[result.series.channel_index("S_f1")];
  std::size_t checked = 0;
  for (std::size_t k = 0; k < p10.size(); ++k) {
    if (p10[k] < 1e-6 || p10[k] > 1.0 - 1e-6) {
      // product instant up to 1e-6 leakage; entropy is O(eps log eps)
      CHECK(s[k] < 1e-4);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("teleport at delta=0 never moves the excitation") {
  const ExperimentResult result = teleport_experiment(0.0, 0, 3.0, 0.1);
  for (double p : result.series.channels[result.series.channel_index("P_01")])
    CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("teleport dynamics agrees with an independent RK4 integration") {
  const ExperimentResult result = teleport_experiment(1.0, 0, 2.0, 0.5);
  const ComplexMatrix h = build_two_fluxon(0, 1.0);
  std::vector<cplx> psi{0.0, 1.0, 0.0, 0.0};
  psi = rk4_evolve(h, psi, 2.0, 1e-4);
  const auto& series = result.series;
  const std::size_t last = series.times.size() - 1;
  CHECK(series.times[last] == 2.0);
  CHECK(series.channels[series.channel_index("P_10")][last] ==
        doctest::Approx(std::norm(psi[2])).epsilon(1e-8));
  CHECK(series.channels[series.channel_index("P_01")][last] ==
        doctest::Approx(std::norm(psi[1])).epsilon(1e-8));
}

TEST_CASE("quench growth in entropy and fluxon energy") {
  const ExperimentResult result = quench_experiment(1.0, 0.5, 20.0, 0.01);
  const auto& series = result.series;
  const auto& s = series.channels[series.channel_index("S_f")];
  const auto& e = series.channels[series.channel_index("E_f")];

  CHECK(s[0] <= 1e-12);
  CHECK(e[0] == doctest::Approx(-0.894427190999916).epsilon(1e-10));

  CHECK(result.peak_value > 1e-3);
  CHECK(result.peak_value == doctest::Approx(0.5524).epsilon(2e-3));
  const double e_max = *std::max_element(e.begin(), e.end());
  CHECK(e_max > e[0]);

  // frozen RK4 oracle values at t=5
  const std::size_t i5 = 500;
  CHECK(series.times[i5] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s[i5] == doctest::Approx(0.194914216161207).epsilon(1e-6));
  CHECK(e[i5] == doctest::Approx(-0.906085958396100).epsilon(1e-6));
}

TEST_CASE("quench with g=0 stays put") {
  const ExperimentResult result = quench_experiment(1.0, 0.0, 5.0, 0.05);
  const auto& s = result.series.channels[result.series.channel_index("S_f")];
  const auto& e = result.series.channels[result.series.channel_index("E_f")];
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(std::abs(s[k] - s[0]) <= 1e-10);
    CHECK(std::abs(e[k] - e[0]) <= 1e-10);
  }
}

TEST_CASE("chain transport at delta=0 is frozen") {
  const std::array<int, 3> links{0, 0, 0};
  const ExperimentResult result = chain_transport_experiment(4, links, 0.0, 1, 5.0, 0.5);
  for (std::size_t site = 0; site < 4; ++site) {
    const auto& ch = result.series.channels[site];
    for (double p : ch) CHECK(p == doctest::Approx(ch[0]).epsilon(1e-12));
  }
}

TEST_CASE("two-site chain transport reduces to the teleport channels") {
  const std::array<int, 1> links{0};
  const ExperimentResult chain = chain_transport_experiment(2, links, 1.0, 1, 6.0, 0.01);
  const ExperimentResult teleport = teleport_experiment(1.0, 0, 6.0, 0.01);
  const auto& ts = teleport.series;
  // P(site0 = 1) = P_10 + P_11, P(site1 = 1) = P_01 + P_11
  for (std::size_t k = 0; k < chain.series.times.size(); k += 23) {
    const double p10 = ts.channels[ts.channel_index("P_10")][k];
    const double p01 = ts.channels[ts.channel_index("P_01")][k];
    const double p11 = ts.channels[ts.channel_index("P_11")][k];
    CHECK(chain.series.channels[0][k] == doctest::Approx(p10 + p11).epsilon(1e-10));
    CHECK(chain.series.channels[1][k] == doctest::Approx(p01 + p11).epsilon(1e-10));
  }
}

TEST_CASE("four-site chain spreads the excitation") {
  const std::array<int, 3> links{0, 0, 0};
  const ExperimentResult result = chain_transport_experiment(4, links, 1.0, 0, 20.0, 0.01);

  double best_other = 0.0;
  for (std::size_t site = 1; site < 4; ++site)
    for (double p : result.series.channels[site]) best_other = std::max(best_other, p);
  CHECK(best_other > 0.1);
  CHECK(result.peak_value == best_other);

  // cross-check the site populations at t=5 against RK4
  const ComplexMatrix h = build_chain(4, links, 1.0);
  std::vector<cplx> psi(16, 0.0);
  psi[8] = 1.0;  // |1000>
  psi = rk4_evolve(h, psi, 5.0, 1e-3);
  const std::size_t i5 = 500;
  for (std::size_t site = 0; site < 4; ++site) {
    double p = 0.0;
    for (std::size_t idx = 0; idx < 16; ++idx)
      if (idx & (std::size_t{8} >> site)) p += std::norm(psi[idx]);
    CHECK(result.series.channels[site][i5] == doctest::Approx(p).epsilon(1e-7));
  }
}

TEST_CASE("chain transport argument guards") {
  const std::array<int, 3> links{0, 0, 0};
  CHECK_THROWS_AS(chain_transport_experiment(4, links, 1.0, 7, 5.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(chain_transport_experiment(13, std::vector<int>(12, 0), 1.0, 0, 5.0, 0.1),
                  std::invalid_argument);
}
