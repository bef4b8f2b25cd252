#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fluxring/entanglement.hpp"
#include "fluxring/hamiltonians.hpp"

namespace fluxring {

/// Sampled time axis (units hbar/a) with named observable channels.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> channel_names;
  std::vector<std::vector<double>> channels;  // aligned to times

  std::size_t channel_index(const std::string& name) const;  // throws if absent
};

struct ExperimentResult {
  TimeSeries series;
  std::string primary_channel;
  double peak_value = 0.0;
  double peak_time = 0.0;
  std::vector<std::pair<std::string, std::string>> metadata;  // parameter echo
};

/// U(t) = V exp(-i lambda t) V^dagger for Hermitian H.
ComplexMatrix propagator(const ComplexMatrix& h, double t);

/// Exact evolution of psi0 under a constant Hamiltonian, sampled at the given
/// ascending times. One spectral decomposition, O(dim^2) per sample.
std::vector<StateVector> evolve(const ComplexMatrix& h, const StateVector& psi0,
                                std::span<const double> times);

/// States sampled along a piecewise-constant drive schedule.
struct ScheduleTrace {
  std::vector<double> times;
  std::vector<StateVector> states;
};

/// Per-segment exact propagation of the driven system. The segment
/// Hamiltonian is build_system(base) plus g1 X + g2 Y on the ring factor;
/// samples fall every dt inside a segment and every segment boundary is
/// sampled exactly.
ScheduleTrace evolve_schedule(const SystemSpec& base, const DriveSchedule& schedule,
                              const StateVector& psi0, double dt);

/// Excitation transfer between two fluxons through the ring (fixed m).
/// Initial state |m> (x) |n1=0> (x) |n2=1>; channels are the four fluxon
/// basis probabilities at that m plus the fluxon-1 entanglement entropy.
/// The peak is taken over P(|m,1,0>).
ExperimentResult teleport_experiment(double delta, int m, double t_max, double dt);

/// Entanglement generation by a sudden x-drive quench on the ring factor.
/// Starts from the ground eigenstate of the undriven Hamiltonian (a product
/// state); channels are the fluxon entropy S_f and the fluxon energy
/// <delta X_f>. The peak is taken over S_f.
ExperimentResult quench_experiment(double delta, double g, double t_max, double dt);

/// Excitation hopping along a fluxon chain: start in the z-basis product
/// state with site `excited_site` flipped, record per-site excitation
/// probabilities. The peak is taken over all sites other than the initial one.
ExperimentResult chain_transport_experiment(std::size_t n, std::span<const int> link_ms,
                                            double delta, std::size_t excited_site,
                                            double t_max, double dt);

}  // namespace fluxring
