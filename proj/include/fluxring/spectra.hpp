#pragma once

#include <span>
#include <string>
#include <vector>

#include "fluxring/hamiltonians.hpp"

namespace fluxring {

/// Energy bands over a range of integer m.
///
/// `bands` holds the ascending eigenvalues per m. `labeled` holds the same
/// numbers matched to the closed-form band labels, so a label refers to the
/// same analytic branch at every m even where bands cross. `closed` holds the
/// closed-form values per label (empty when no closed form applies, e.g. the
/// oriented two-fluxon variant).
struct BandTable {
  std::vector<int> m_values;
  std::vector<std::string> band_labels;
  std::vector<std::vector<double>> bands;
  std::vector<std::vector<double>> labeled;
  std::vector<std::vector<double>> closed;
};

BandTable band_sweep(const SystemSpec& system, int m_min, int m_max);

/// Expectation values (<X>, <Y>, <Z>) of a normalized two-component state
/// alpha|0> + beta|1>: (2 Re(conj(a) b), 2 Im(conj(a) b), |a|^2 - |b|^2).
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

BlochVector fluxon_bloch_vector(std::span<const cplx> eigvec);

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

const char* bell_name(BellState b);

/// |<Bell|v>|^2 for a normalized 4-component state; phase invariant.
double bell_fidelity(std::span<const cplx> vec, BellState bell);

/// One Bloch-sphere point of a band sweep.
struct BlochPoint {
  int m;
  std::string band;
  BlochVector bloch;
  double energy;
};

/// Bloch vectors of both single-fluxon eigenstates for each integer m.
std::vector<BlochPoint> bloch_sweep(const SystemSpec& system, int m_min, int m_max);

}  // namespace fluxring
