#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fluxring/types.hpp"

namespace fluxring {

/// Ring kinetic dispersion. Every builder diagonal of the form (m - shift)^2
/// is dispersion(m - shift): quadratic for a massive carrier, |k| for a
/// Dirac-like ring.
enum class Dispersion { quadratic, linear };

double dispersion_energy(Dispersion kind, double k);

/// Piecewise-constant drive: per segment a duration (in hbar/a) and the
/// couplings g1 (sigma_x on the driven factor) and g2 (sigma_y).
struct DriveSchedule {
  struct Segment {
    double duration;
    double g1;
    double g2;
  };
  std::vector<Segment> segments;

  double total_duration() const;
  void validate() const;  // durations must be positive, schedule nonempty
};

/// Declarative description of a composed system. n_fluxons selects the model
/// family (1 = single fluxon on the ring, 2 = fluxon pair). An empty
/// orientations list selects the reference pair Hamiltonian; explicit
/// orientation signs select the literal kinetic-term variant.
struct SystemSpec {
  int m = 0;
  double delta = 0.0;
  std::size_t n_fluxons = 1;
  std::vector<int> orientations;
  Dispersion dispersion = Dispersion::quadratic;
  std::optional<DriveSchedule> drive;

  void validate() const;
};

/// Coefficients of a spin Hamiltonian of the form
///   h0*I + sum_i (hx_i X_i + hy_i Y_i + hz_i Z_i) + sum_{i<j} J_ij Z_i Z_j
/// (all in units of a).
struct PauliDecomposition {
  double h0 = 0.0;
  std::vector<std::array<double, 3>> fields;  // per site (x, y, z)
  std::map<std::pair<std::size_t, std::size_t>, double> zz_couplings;

  std::size_t n_sites() const { return fields.size(); }
  ComplexMatrix reconstruct() const;
};

/// Effective single-fluxon Hamiltonian in the |n=0>,|n=1> basis:
///   [[E(m), delta], [delta, E(m-1)]]
ComplexMatrix build_single_fluxon(int m, double delta,
                                  Dispersion disp = Dispersion::quadratic);

/// Closed-form single-fluxon energies (E_minus <= E_plus). At quadratic
/// dispersion this is (1 - 2m + 2m^2 -+ sqrt((1-2m)^2 + 4 delta^2)) / 2.
std::pair<double, double> closed_form_single_energies(
    int m, double delta, Dispersion disp = Dispersion::quadratic);

/// Ring-and-fluxon Hamiltonian with an x-drive g on the ring factor, over the
/// basis |m,n> in {|00>,|01>,|10>,|11>}:
///   [[0, d, g, 0], [d, 1, 0, g], [g, 0, 1, d], [0, g, d, 0]]
ComplexMatrix build_driven(double delta, double g,
                           Dispersion disp = Dispersion::quadratic);

/// Generalized drive on the ring factor: g1 sigma_x^(ring) + g2 sigma_y^(ring).
ComplexMatrix build_driven_xy(double delta, double g1, double g2,
                              Dispersion disp = Dispersion::quadratic);

/// Reference two-fluxon Hamiltonian over |n1 n2>:
///   [[E(m), d, d, 0], [d, E(m-1), 0, d], [d, 0, E(m-1), d], [0, d, d, E(m)]]
ComplexMatrix build_two_fluxon(int m, double delta,
                               Dispersion disp = Dispersion::quadratic);

/// Literal kinetic-term two-fluxon variant: diagonal E(m - s1*n1 - s2*n2),
/// delta on every single-flip off-diagonal. s1, s2 are orientation signs (+-1).
ComplexMatrix build_two_fluxon_physical(int m, double delta, int s1, int s2,
                                        Dispersion disp = Dispersion::quadratic);

/// Closed-form two-fluxon bands (E1, E2, E3, E4):
///   E1 = E(m-1), E2 = E(m),
///   E3,4 = (E(m)+E(m-1))/2 +- sqrt((E(m)-E(m-1))^2/4 + 4 delta^2).
std::array<double, 4> closed_form_two_fluxon_energies(
    int m, double delta, Dispersion disp = Dispersion::quadratic);

/// Two-qubit Ising mapping over |electron> (x) |fluxon>:
///   (-Z_e Z_f + I) + delta X_f + g1 X_e + g2 Y_e
ComplexMatrix build_ising_two_qubit(double delta, double g1, double g2);

/// Transverse-field chain of n_fluxons assembled from per-link pair terms.
/// Each link (i, i+1) contributes the Pauli decomposition of the two-fluxon
/// Hamiltonian at its link m-number; the per-site transverse field delta*X is
/// counted once per fluxon, not once per link. link_ms.size() must be
/// n_fluxons - 1 and n_fluxons <= 12.
ComplexMatrix build_chain(std::size_t n_fluxons, std::span<const int> link_ms,
                          double delta, Dispersion disp = Dispersion::quadratic);

/// Trace-projection decomposition onto {I, single-site Paulis, ZZ pairs}.
/// Throws std::invalid_argument if the reconstruction misses H by more than
/// 1e-10 (the operator has terms outside that ansatz).
PauliDecomposition pauli_decompose(const ComplexMatrix& h, std::size_t n_sites);

/// Hamiltonian described by a SystemSpec (without any drive term).
ComplexMatrix build_system(const SystemSpec& spec);

inline constexpr std::size_t kMaxChainSites = 12;

}  // namespace fluxring
