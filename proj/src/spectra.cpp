#include "fluxring/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluxring/eig.hpp"

namespace fluxring {
namespace {

// Matches closed-form band values to numeric eigenvalues, consuming each
// numeric value once (nearest wins, lowest index on ties) so labels stay
// attached to their analytic branch across band crossings.
std::vector<double> match_to_labels(std::span<const double> closed,
                                    std::span<const double> numeric) {
  std::vector<bool> used(numeric.size(), false);
  std::vector<double> out(closed.size());
  for (std::size_t k = 0; k < closed.size(); ++k) {
    std::size_t best = numeric.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < numeric.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(numeric[j] - closed[k]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[best] = true;
    out[k] = numeric[best];
  }
  return out;
}

}  // namespace

BandTable band_sweep(const SystemSpec& system, int m_min, int m_max) {
  system.validate();
  if (m_min > m_max) throw std::invalid_argument("band_sweep: m_min must be <= m_max");
  if (system.n_fluxons != 1 && system.n_fluxons != 2)
    throw std::invalid_argument("band_sweep: supported for 1- and 2-fluxon systems");

  const bool physical = system.n_fluxons == 2 && !system.orientations.empty();
  BandTable table;
  if (system.n_fluxons == 1)
    table.band_labels = {"E_minus", "E_plus"};
  else
    table.band_labels = {"E1", "E2", "E3", "E4"};

  for (int m = m_min; m <= m_max; ++m) {
    SystemSpec at_m = system;
    at_m.m = m;
    at_m.drive.reset();
    const EigenDecomposition eig = eig_hermitian(build_system(at_m));
    table.m_values.push_back(m);
    table.bands.push_back(eig.values);

    std::vector<double> closed;
    if (system.n_fluxons == 1) {
      const auto [lo, hi] = closed_form_single_energies(m, system.delta, system.dispersion);
      closed = {lo, hi};
    } else if (!physical) {
      const auto e = closed_form_two_fluxon_energies(m, system.delta, system.dispersion);
      closed.assign(e.begin(), e.end());
    }

    if (closed.empty()) {
      table.labeled.push_back(eig.values);  // no analytic branch labels; ascending order
    } else {
      table.labeled.push_back(match_to_labels(closed, eig.values));
      table.closed.push_back(std::move(closed));
    }
  }
  return table;
}

BlochVector fluxon_bloch_vector(std::span<const cplx> eigvec) {
  if (eigvec.size() != 2)
    throw std::invalid_argument("fluxon_bloch_vector: need a 2-component state");
  const double n2 = std::norm(eigvec[0]) + std::norm(eigvec[1]);
  if (n2 <= 0.0) throw std::invalid_argument("fluxon_bloch_vector: zero vector");
  const cplx cross = std::conj(eigvec[0]) * eigvec[1];
  return BlochVector{2.0 * cross.real(), 2.0 * cross.imag(),
                     std::norm(eigvec[0]) - std::norm(eigvec[1])};
}

const char* bell_name(BellState b) {
  switch (b) {
    case BellState::phi_plus:
      return "Phi+";
    case BellState::phi_minus:
      return "Phi-";
    case BellState::psi_plus:
      return "Psi+";
    case BellState::psi_minus:
      return "Psi-";
  }
  return "?";
}

double bell_fidelity(std::span<const cplx> vec, BellState bell) {
  if (vec.size() != 4) throw std::invalid_argument("bell_fidelity: need a 4-component state");
  const double r = 1.0 / std::sqrt(2.0);
  cplx overlap;
  switch (bell) {
    case BellState::phi_plus:
      overlap = r * (vec[0] + vec[3]);
      break;
    case BellState::phi_minus:
      overlap = r * (vec[0] - vec[3]);
      break;
    case BellState::psi_plus:
      overlap = r * (vec[1] + vec[2]);
      break;
    case BellState::psi_minus:
      overlap = r * (vec[1] - vec[2]);
      break;
  }
  return std::norm(overlap);
}

std::vector<BlochPoint> bloch_sweep(const SystemSpec& system, int m_min, int m_max) {
  system.validate();
  if (m_min > m_max) throw std::invalid_argument("bloch_sweep: m_min must be <= m_max");
  if (system.n_fluxons != 1)
    throw std::invalid_argument("bloch_sweep: defined for the single-fluxon system");

  std::vector<BlochPoint> points;
  for (int m = m_min; m <= m_max; ++m) {
    const EigenDecomposition eig =
        eig_hermitian(build_single_fluxon(m, system.delta, system.dispersion));
    for (std::size_t band = 0; band < 2; ++band) {
      const auto v = eig.vector(band);
      points.push_back(BlochPoint{m, band == 0 ? "E_minus" : "E_plus",
                                  fluxon_bloch_vector(v), eig.values[band]});
    }
  }
  return points;
}

}  // namespace fluxring
