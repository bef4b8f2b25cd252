#include "fluxring/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

#include "fluxring/tensor.hpp"

namespace fluxring {

double dispersion_energy(Dispersion kind, double k) {
  switch (kind) {
    case Dispersion::quadratic:
      return k * k;
    case Dispersion::linear:
      return std::abs(k);
  }
  return 0.0;
}

double DriveSchedule::total_duration() const {
  double t = 0.0;
  for (const Segment& s : segments) t += s.duration;
  return t;
}

void DriveSchedule::validate() const {
  if (segments.empty()) throw std::invalid_argument("drive schedule: no segments");
  for (const Segment& s : segments)
    if (!(s.duration > 0.0))
      throw std::invalid_argument("drive schedule: segment durations must be positive");
}

void SystemSpec::validate() const {
  if (delta < 0.0) throw std::invalid_argument("system: delta must be non-negative");
  if (!orientations.empty() && orientations.size() != n_fluxons)
    throw std::invalid_argument("system: orientations length must equal n_fluxons");
  for (int s : orientations)
    if (s != 1 && s != -1) throw std::invalid_argument("system: orientations must be +-1");
  if (drive) drive->validate();
}

ComplexMatrix build_single_fluxon(int m, double delta, Dispersion disp) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  ComplexMatrix h(2, 2);
  h(0, 0) = dispersion_energy(disp, m);
  h(1, 1) = dispersion_energy(disp, m - 1);
  h(0, 1) = delta;
  h(1, 0) = delta;
  h.set_dims({2});
  return h;
}

std::pair<double, double> closed_form_single_energies(int m, double delta, Dispersion disp) {
  const double a = dispersion_energy(disp, m);
  const double b = dispersion_energy(disp, m - 1);
  const double mid = 0.5 * (a + b);
  const double rad = std::sqrt(0.25 * (a - b) * (a - b) + delta * delta);
  return {mid - rad, mid + rad};
}

ComplexMatrix build_driven(double delta, double g, Dispersion disp) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  // basis |m,n>: diagonal is the ring kinetic term at m - n
  ComplexMatrix h(4, 4);
  h(0, 0) = dispersion_energy(disp, 0);
  h(1, 1) = dispersion_energy(disp, -1);
  h(2, 2) = dispersion_energy(disp, 1);
  h(3, 3) = dispersion_energy(disp, 0);
  h(0, 1) = h(1, 0) = delta;
  h(2, 3) = h(3, 2) = delta;
  h(0, 2) = h(2, 0) = g;
  h(1, 3) = h(3, 1) = g;
  h.set_dims({2, 2});
  return h;
}

ComplexMatrix build_driven_xy(double delta, double g1, double g2, Dispersion disp) {
  ComplexMatrix h = build_driven(delta, 0.0, disp);
  if (g1 != 0.0) h += g1 * pauli(PauliOp::x, 0, 2);
  if (g2 != 0.0) h += g2 * pauli(PauliOp::y, 0, 2);
  return h;
}

ComplexMatrix build_two_fluxon(int m, double delta, Dispersion disp) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  const double a = dispersion_energy(disp, m);
  const double b = dispersion_energy(disp, m - 1);
  ComplexMatrix h(4, 4);
  h(0, 0) = a;
  h(1, 1) = b;
  h(2, 2) = b;
  h(3, 3) = a;
  h(0, 1) = h(1, 0) = delta;
  h(0, 2) = h(2, 0) = delta;
  h(1, 3) = h(3, 1) = delta;
  h(2, 3) = h(3, 2) = delta;
  h.set_dims({2, 2});
  return h;
}

ComplexMatrix build_two_fluxon_physical(int m, double delta, int s1, int s2, Dispersion disp) {
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if ((s1 != 1 && s1 != -1) || (s2 != 1 && s2 != -1))
    throw std::invalid_argument("orientation signs must be +-1");
  ComplexMatrix h(4, 4);
  for (std::size_t idx = 0; idx < 4; ++idx) {
    const int n1 = static_cast<int>(idx >> 1);
    const int n2 = static_cast<int>(idx & 1);
    h(idx, idx) = dispersion_energy(disp, m - s1 * n1 - s2 * n2);
  }
  h(0, 1) = h(1, 0) = delta;
  h(0, 2) = h(2, 0) = delta;
  h(1, 3) = h(3, 1) = delta;
  h(2, 3) = h(3, 2) = delta;
  h.set_dims({2, 2});
  return h;
}

std::array<double, 4> closed_form_two_fluxon_energies(int m, double delta, Dispersion disp) {
  const double a = dispersion_energy(disp, m);
  const double b = dispersion_energy(disp, m - 1);
  const double mid = 0.5 * (a + b);
  const double rad = std::sqrt(0.25 * (a - b) * (a - b) + 4.0 * delta * delta);
  return {b, a, mid + rad, mid - rad};
}

ComplexMatrix build_ising_two_qubit(double delta, double g1, double g2) {
  ComplexMatrix zz = pauli(PauliOp::z, 0, 2) * pauli(PauliOp::z, 1, 2);
  ComplexMatrix h = ComplexMatrix::identity(4) - zz;
  h += delta * pauli(PauliOp::x, 1, 2);
  if (g1 != 0.0) h += g1 * pauli(PauliOp::x, 0, 2);
  if (g2 != 0.0) h += g2 * pauli(PauliOp::y, 0, 2);
  h.set_dims({2, 2});
  return h;
}

ComplexMatrix build_chain(std::size_t n_fluxons, std::span<const int> link_ms, double delta,
                          Dispersion disp) {
  if (n_fluxons < 2) throw std::invalid_argument("chain: need at least 2 fluxons");
  if (n_fluxons > kMaxChainSites)
    throw std::invalid_argument("chain: size guard, n_fluxons must be <= 12");
  if (link_ms.size() != n_fluxons - 1)
    throw std::invalid_argument("chain: link_ms length must be n_fluxons - 1");
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");

  // Per-link coefficients from the pair Hamiltonian with diagonal (a, b, b, a):
  // h0 = (a+b)/2 and J = (a-b)/2; the delta X terms are added once per site.
  const std::size_t dim = std::size_t{1} << n_fluxons;
  ComplexMatrix h(dim, dim);

  std::vector<double> link_j(link_ms.size()), link_h0(link_ms.size());
  for (std::size_t l = 0; l < link_ms.size(); ++l) {
    const double a = dispersion_energy(disp, link_ms[l]);
    const double b = dispersion_energy(disp, link_ms[l] - 1);
    link_h0[l] = 0.5 * (a + b);
    link_j[l] = 0.5 * (a - b);
  }

  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto zsign = [&](std::size_t site) {
      return (idx >> (n_fluxons - 1 - site)) & 1 ? -1.0 : 1.0;
    };
    double diag = 0.0;
    for (std::size_t l = 0; l < link_ms.size(); ++l)
      diag += link_h0[l] + link_j[l] * zsign(l) * zsign(l + 1);
    h(idx, idx) = diag;
    for (std::size_t site = 0; site < n_fluxons; ++site)
      h(idx, idx ^ (std::size_t{1} << (n_fluxons - 1 - site))) += delta;
  }
  h.set_dims(std::vector<std::size_t>(n_fluxons, 2));
  return h;
}

ComplexMatrix PauliDecomposition::reconstruct() const {
  const std::size_t n = n_sites();
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix h(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto zsign = [&](std::size_t site) {
      return (idx >> (n - 1 - site)) & 1 ? -1.0 : 1.0;
    };
    double diag = h0;
    for (std::size_t site = 0; site < n; ++site) diag += fields[site][2] * zsign(site);
    for (const auto& [pair, j] : zz_couplings)
      diag += j * zsign(pair.first) * zsign(pair.second);
    h(idx, idx) = diag;
  }
  // Single-site off-diagonal terms: X contributes fx on the flip, Y
  // contributes +i fy into |1> and -i fy into |0>.
  for (std::size_t site = 0; site < n; ++site) {
    const std::size_t bit = std::size_t{1} << (n - 1 - site);
    const double fx = fields[site][0];
    const double fy = fields[site][1];
    if (fx == 0.0 && fy == 0.0) continue;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const bool one = (idx & bit) != 0;
      h(idx, idx ^ bit) += cplx{fx, one ? fy : -fy};
    }
  }
  h.set_dims(std::vector<std::size_t>(n, 2));
  return h;
}

PauliDecomposition pauli_decompose(const ComplexMatrix& h, std::size_t n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  if (!h.square() || h.rows() != dim)
    throw std::invalid_argument("pauli_decompose: matrix dimension must be 2^n_sites");
  if (h.hermiticity_error() > 1e-12)
    throw std::invalid_argument("pauli_decompose: matrix is not Hermitian");

  PauliDecomposition out;
  out.fields.assign(n_sites, {0.0, 0.0, 0.0});
  const double inv_dim = 1.0 / static_cast<double>(dim);

  double tr = 0.0;
  for (std::size_t idx = 0; idx < dim; ++idx) tr += h(idx, idx).real();
  out.h0 = tr * inv_dim;

  for (std::size_t site = 0; site < n_sites; ++site) {
    const std::size_t bit = std::size_t{1} << (n_sites - 1 - site);
    double cx = 0.0, cy = 0.0, cz = 0.0;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const bool one = (idx & bit) != 0;
      const cplx flip = h(idx ^ bit, idx);  // <idx^bit| H |idx>
      // Tr(X_i H) = sum <idx|X|idx^bit><idx^bit|H|idx> etc.
      cx += flip.real();
      // <idx|Y|idx^bit> is +i when idx has the bit set, -i otherwise.
      cy += one ? -flip.imag() : flip.imag();
      cz += (one ? -1.0 : 1.0) * h(idx, idx).real();
    }
    out.fields[site] = {cx * inv_dim, cy * inv_dim, cz * inv_dim};
  }

  for (std::size_t i = 0; i < n_sites; ++i)
    for (std::size_t j = i + 1; j < n_sites; ++j) {
      const std::size_t bi = std::size_t{1} << (n_sites - 1 - i);
      const std::size_t bj = std::size_t{1} << (n_sites - 1 - j);
      double c = 0.0;
      for (std::size_t idx = 0; idx < dim; ++idx) {
        const double si = (idx & bi) ? -1.0 : 1.0;
        const double sj = (idx & bj) ? -1.0 : 1.0;
        c += si * sj * h(idx, idx).real();
      }
      out.zz_couplings[{i, j}] = c * inv_dim;
    }

  // Keep the map sparse: exact zeros from the projection are dropped.
  std::erase_if(out.zz_couplings, [](const auto& kv) { return kv.second == 0.0; });

  const double residual = out.reconstruct().max_abs_diff(h);
  if (residual > 1e-10)
    throw std::invalid_argument(
        "pauli_decompose: non-representable operator (terms outside identity/single-site/ZZ), "
        "residual " +
        std::to_string(residual));
  return out;
}

ComplexMatrix build_system(const SystemSpec& spec) {
  spec.validate();
  if (spec.n_fluxons == 1) {
    if (spec.drive) return build_driven(spec.delta, 0.0, spec.dispersion);
    return build_single_fluxon(spec.m, spec.delta, spec.dispersion);
  }
  if (spec.n_fluxons == 2) {
    if (spec.orientations.empty()) return build_two_fluxon(spec.m, spec.delta, spec.dispersion);
    return build_two_fluxon_physical(spec.m, spec.delta, spec.orientations[0],
                                     spec.orientations[1], spec.dispersion);
  }
  throw std::invalid_argument("build_system: chains are built via build_chain");
}

}  // namespace fluxring
