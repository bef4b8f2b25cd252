#include "fluxring/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "fluxring/eig.hpp"
#include "fluxring/io.hpp"
#include "fluxring/kernels.hpp"
#include "fluxring/tensor.hpp"

namespace fluxring {
namespace {

// Sample grid 0, dt, 2dt, ..., with the endpoint included exactly (appended
// when span is not a whole number of steps).
std::vector<double> sample_times(double span, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(span >= 0.0)) throw std::invalid_argument("time span must be non-negative");
  const auto steps = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
  std::vector<double> times(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) * dt;
  // Pin the endpoint exactly, whether the grid lands on it (within rounding)
  // or a shorter tail step is needed.
  if (times.back() > span || span - times.back() <= 1e-9 * std::max(1.0, span))
    times.back() = span;
  else
    times.push_back(span);
  return times;
}

struct Spectral {
  EigenDecomposition eig;
  std::vector<cplx> coef;  // V^dagger psi0

  Spectral(const ComplexMatrix& h, const StateVector& psi0) : eig(eig_hermitian(h)) {
    const std::size_t n = psi0.dim();
    coef.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        coef[k] += std::conj(eig.vectors(i, k)) * psi0.amps[i];
  }

  void state_at(double t, StateVector& out) const {
    const std::size_t n = coef.size();
    std::vector<cplx> phased(n);
    for (std::size_t k = 0; k < n; ++k)
      phased[k] = std::polar(1.0, -eig.values[k] * t) * coef[k];
    eig.vectors.matvec(phased, out.amps);
  }
};

double probability(const StateVector& psi, std::size_t idx) { return std::norm(psi.amps[idx]); }

void find_peak(const TimeSeries& series, const std::string& channel, ExperimentResult& result) {
  const std::size_t ch = series.channel_index(channel);
  const auto& values = series.channels[ch];
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  result.primary_channel = channel;
  result.peak_value = values[best];
  result.peak_time = series.times[best];
}

}  // namespace

std::size_t TimeSeries::channel_index(const std::string& name) const {
  for (std::size_t i = 0; i < channel_names.size(); ++i)
    if (channel_names[i] == name) return i;
  throw std::invalid_argument("time series has no channel named " + name);
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
  const EigenDecomposition eig = eig_hermitian(h);
  const std::size_t n = h.rows();
  // V diag(e^{-i lambda t}) V^dagger
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx phase = std::polar(1.0, -eig.values[k] * t);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= phase;
  }
  ComplexMatrix u = scaled * eig.vectors.dagger();
  if (!h.dims().empty()) u.set_dims(h.dims());
  return u;
}

std::vector<StateVector> evolve(const ComplexMatrix& h, const StateVector& psi0,
                                std::span<const double> times) {
  psi0.validate();
  if (h.rows() != psi0.dim())
    throw std::invalid_argument("evolve: Hamiltonian and state dimensions differ");
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("evolve: sample times must be ascending");

  const Spectral spectral(h, psi0);
  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) {
    StateVector psi(psi0.dims);
    spectral.state_at(t, psi);
    out.push_back(std::move(psi));
  }
  return out;
}

ScheduleTrace evolve_schedule(const SystemSpec& base, const DriveSchedule& schedule,
                              const StateVector& psi0, double dt) {
  base.validate();
  schedule.validate();
  psi0.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_schedule: dt must be positive");

  const ComplexMatrix h0 = build_system(base);
  if (h0.rows() != psi0.dim())
    throw std::invalid_argument("evolve_schedule: state does not match system dimension");
  const std::size_t n_factors = psi0.dims.size();

  ScheduleTrace trace;
  trace.times.push_back(0.0);
  trace.states.push_back(psi0);

  double t_base = 0.0;
  StateVector segment_start = psi0;
  for (const DriveSchedule::Segment& seg : schedule.segments) {
    ComplexMatrix h = h0;
    if (seg.g1 != 0.0) h += seg.g1 * pauli(PauliOp::x, 0, n_factors);
    if (seg.g2 != 0.0) h += seg.g2 * pauli(PauliOp::y, 0, n_factors);

    const std::vector<double> local = sample_times(seg.duration, dt);
    const std::vector<StateVector> states = evolve(h, segment_start, local);
    // local[0] == 0 duplicates the segment-start sample already recorded
    for (std::size_t k = 1; k < local.size(); ++k) {
      trace.times.push_back(t_base + local[k]);
      trace.states.push_back(states[k]);
    }
    t_base += seg.duration;
    segment_start = trace.states.back();
  }
  return trace;
}

ExperimentResult teleport_experiment(double delta, int m, double t_max, double dt) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  // Ring factor truncated to {|m>, |m+1>}; the dynamics stays in the |m>
  // block, the second block completes the ring (x) fluxon (x) fluxon space.
  ComplexMatrix h(8, 8);
  const ComplexMatrix block0 = build_two_fluxon(m, delta);
  const ComplexMatrix block1 = build_two_fluxon(m + 1, delta);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      h(i, j) = block0(i, j);
      h(4 + i, 4 + j) = block1(i, j);
    }
  h.set_dims({2, 2, 2});

  const std::size_t idx00 = 0, idx01 = 1, idx10 = 2, idx11 = 3;  // within the |m> block
  StateVector psi0 = StateVector::basis_state({2, 2, 2}, std::array<std::size_t, 3>{0, 0, 1});

  const std::vector<double> times = sample_times(t_max, dt);
  const std::vector<StateVector> states = evolve(h, psi0, times);

  ExperimentResult result;
  result.series.times = times;
  result.series.channel_names = {"P_10", "P_01", "P_00", "P_11", "S_f1"};
  result.series.channels.assign(5, {});
  const std::array<std::size_t, 1> keep_f1{1};
  for (const StateVector& psi : states) {
    result.series.channels[0].push_back(probability(psi, idx10));
    result.series.channels[1].push_back(probability(psi, idx01));
    result.series.channels[2].push_back(probability(psi, idx00));
    result.series.channels[3].push_back(probability(psi, idx11));
    result.series.channels[4].push_back(
        von_neumann_entropy(partial_trace(psi, keep_f1), EntropyBase::bits).value);
  }
  find_peak(result.series, "P_10", result);
  result.metadata = {{"delta", io::format_double(delta)},
                     {"m", std::to_string(m)},
                     {"t_max", io::format_double(t_max)},
                     {"dt", io::format_double(dt)}};
  return result;
}

ExperimentResult quench_experiment(double delta, double g, double t_max, double dt) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  // Ground eigenstate of the undriven system: a product of ring and fluxon
  // states, so the fluxon entropy starts at zero.
  const ComplexMatrix h0 = build_driven(delta, 0.0);
  const EigenDecomposition eig0 = eig_hermitian(h0);
  StateVector psi0({2, 2});
  psi0.amps = eig0.vector(0);

  SystemSpec base;
  base.n_fluxons = 1;
  base.delta = delta;
  base.drive = DriveSchedule{{{t_max, g, 0.0}}};

  const ScheduleTrace trace = evolve_schedule(base, *base.drive, psi0, dt);

  const ComplexMatrix fluxon_x = pauli(PauliOp::x, 1, 2);
  ExperimentResult result;
  result.series.times = trace.times;
  result.series.channel_names = {"S_f", "E_f"};
  result.series.channels.assign(2, {});
  const std::array<std::size_t, 1> keep_f{1};
  std::vector<cplx> scratch(4);
  for (const StateVector& psi : trace.states) {
    result.series.channels[0].push_back(
        von_neumann_entropy(partial_trace(psi, keep_f), EntropyBase::bits).value);
    fluxon_x.matvec(psi.amps, scratch);
    result.series.channels[1].push_back(delta *
                                        kernels::dotc(4, psi.amps.data(), scratch.data()).real());
  }
  find_peak(result.series, "S_f", result);
  result.metadata = {{"delta", io::format_double(delta)},
                     {"g", io::format_double(g)},
                     {"t_max", io::format_double(t_max)},
                     {"dt", io::format_double(dt)}};
  return result;
}

ExperimentResult chain_transport_experiment(std::size_t n, std::span<const int> link_ms,
                                            double delta, std::size_t excited_site,
                                            double t_max, double dt) {
  if (excited_site >= n) throw std::invalid_argument("excited_site out of range");
  const ComplexMatrix h = build_chain(n, link_ms, delta);
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  std::vector<std::size_t> idx(n, 0);
  idx[excited_site] = 1;
  StateVector psi0 = StateVector::basis_state(std::vector<std::size_t>(n, 2), idx);

  const std::vector<double> times = sample_times(t_max, dt);
  const std::vector<StateVector> states = evolve(h, psi0, times);

  ExperimentResult result;
  result.series.times = times;
  result.series.channels.assign(n, {});
  for (std::size_t site = 0; site < n; ++site)
    result.series.channel_names.push_back("P_site_" + std::to_string(site));

  const std::size_t dim = std::size_t{1} << n;
  for (const StateVector& psi : states) {
    for (std::size_t site = 0; site < n; ++site) {
      const std::size_t bit = std::size_t{1} << (n - 1 - site);
      double p = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) p += std::norm(psi.amps[i]);
      result.series.channels[site].push_back(p);
    }
  }

  // Peak excitation anywhere except the initially excited site.
  double best = -1.0;
  std::size_t best_site = 0, best_idx = 0;
  for (std::size_t site = 0; site < n; ++site) {
    if (site == excited_site) continue;
    const auto& ch = result.series.channels[site];
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (ch[i] > best) {
        best = ch[i];
        best_site = site;
        best_idx = i;
      }
  }
  result.primary_channel = "P_site_" + std::to_string(best_site);
  result.peak_value = best;
  result.peak_time = times[best_idx];
  result.metadata = {{"n", std::to_string(n)},
                     {"delta", io::format_double(delta)},
                     {"excited_site", std::to_string(excited_site)},
                     {"t_max", io::format_double(t_max)},
                     {"dt", io::format_double(dt)}};
  return result;
}

}  // namespace fluxring
