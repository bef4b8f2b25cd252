#include "fluxring/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxring/dynamics.hpp"
#include "fluxring/eig.hpp"
#include "fluxring/io.hpp"
#include "fluxring/spectra.hpp"
#include "fluxring/version.hpp"

namespace fluxring::cli {
namespace {

using nlohmann::ordered_json;

constexpr const char* kUnits = "energy=a, time=hbar/a, entropy=bits";
constexpr const char* kSigmaZ = "sigma_z|0>=+|0>, sigma_z|1>=-|1>; leftmost factor most significant";
constexpr const char* kBell =
    "Phi+=(|00>+|11>)/sqrt2, Phi-=(|00>-|11>)/sqrt2, Psi+=(|01>+|10>)/sqrt2, Psi-=(|01>-|10>)/sqrt2";
constexpr const char* kBellBands = "E1->Psi-, E2->Phi-";

struct OutputOpts {
  std::string out;
  std::string format;  // "csv" or "json"
};

std::string fmt(double v) { return io::format_double(v); }

io::MetaList base_meta(const std::string& command, const std::string& params) {
  return {{"tool", "fluxring"},
          {"version", kVersion},
          {"command", command},
          {"units", kUnits},
          {"convention_sigma_z", kSigmaZ},
          {"convention_bell", kBell},
          {"params", params}};
}

void write_table(const io::Table& table, const OutputOpts& out) {
  io::write_text_atomic(out.out, out.format == "json" ? io::to_json(table) : io::to_csv(table));
}

void print_summary(ordered_json summary) { std::cout << summary.dump() << "\n"; }

// ---- config file ---------------------------------------------------------

// Flags beat config values: a config entry applies only when the option was
// not given on the command line. Keys match long option names, with '-' or
// '_' interchangeable.
class Config {
 public:
  explicit Config(const std::string& path) {
    if (path.empty()) return;
    doc_ = nlohmann::json::parse(io::read_text(path), nullptr, /*allow_exceptions=*/false);
    if (doc_.is_discarded() || !doc_.is_object())
      throw std::invalid_argument("config file is not a JSON object: " + path);
  }

  template <typename T>
  void apply(const CLI::App* sub, const std::string& flag, T& var) const {
    if (!doc_.is_object() || sub->count("--" + flag) > 0) return;
    const nlohmann::json* entry = find(flag);
    if (entry == nullptr) return;
    try {
      var = entry->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("config key '" + flag + "' has the wrong type");
    }
  }

 private:
  const nlohmann::json* find(std::string key) const {
    if (auto it = doc_.find(key); it != doc_.end()) return &*it;
    for (char& c : key) c = c == '-' ? '_' : c;
    if (auto it = doc_.find(key); it != doc_.end()) return &*it;
    return nullptr;
  }

  nlohmann::json doc_ = nlohmann::json::value_t::discarded;
};

// ---- spectrum -------------------------------------------------------------

struct SpectrumArgs {
  std::string system = "single";
  double delta = std::numeric_limits<double>::quiet_NaN();
  int m_min = -7;
  int m_max = 8;
  std::string dispersion = "quadratic";
  std::vector<int> orientations;
  OutputOpts out{"", "csv"};
};

SystemSpec make_spec(const std::string& system, double delta, const std::string& dispersion,
                     const std::vector<int>& orientations) {
  SystemSpec spec;
  spec.delta = delta;
  spec.dispersion = dispersion == "linear" ? Dispersion::linear : Dispersion::quadratic;
  if (system == "single") {
    spec.n_fluxons = 1;
  } else if (system == "two-fluxon") {
    spec.n_fluxons = 2;
  } else if (system == "two-fluxon-physical") {
    spec.n_fluxons = 2;
    spec.orientations = orientations.empty() ? std::vector<int>{1, -1} : orientations;
  } else {
    throw std::invalid_argument("unknown system: " + system);
  }
  return spec;
}

int run_spectrum(SpectrumArgs a) {
  if (std::isnan(a.delta)) a.delta = a.system == "single" ? 5.0 : 3.0;
  if (a.out.out.empty()) a.out.out = "fluxring_spectrum." + a.out.format;
  const SystemSpec spec = make_spec(a.system, a.delta, a.dispersion, a.orientations);
  const BandTable table = band_sweep(spec, a.m_min, a.m_max);

  std::string params = "system=" + a.system + " delta=" + fmt(a.delta) +
                       " m_min=" + std::to_string(a.m_min) + " m_max=" + std::to_string(a.m_max) +
                       " dispersion=" + a.dispersion;
  io::Table out;
  out.meta = base_meta("spectrum", params);
  if (spec.n_fluxons == 2 && spec.orientations.empty())
    out.meta.emplace_back("bell_bands", kBellBands);

  out.column_names = {"m"};
  for (const auto& label : table.band_labels) out.column_names.push_back(label);
  const bool has_closed = !table.closed.empty();
  if (has_closed)
    for (const auto& label : table.band_labels) out.column_names.push_back(label + "_closed");

  for (std::size_t r = 0; r < table.m_values.size(); ++r) {
    std::vector<std::string> row{std::to_string(table.m_values[r])};
    for (double v : table.labeled[r]) row.push_back(fmt(v));
    if (has_closed)
      for (double v : table.closed[r]) row.push_back(fmt(v));
    out.rows.push_back(std::move(row));
  }
  write_table(out, a.out);

  print_summary(ordered_json{{"command", "spectrum"},
                             {"system", a.system},
                             {"delta", a.delta},
                             {"m_min", a.m_min},
                             {"m_max", a.m_max},
                             {"rows", table.m_values.size()},
                             {"out", a.out.out}});
  return 0;
}

// ---- bloch ----------------------------------------------------------------

struct BlochArgs {
  double delta = 5.0;
  int m_min = -7;
  int m_max = 8;
  std::string dispersion = "quadratic";
  OutputOpts out{"", "json"};
};

int run_bloch(BlochArgs a) {
  if (a.out.out.empty()) a.out.out = "fluxring_bloch." + a.out.format;
  SystemSpec spec;
  spec.n_fluxons = 1;
  spec.delta = a.delta;
  spec.dispersion = a.dispersion == "linear" ? Dispersion::linear : Dispersion::quadratic;
  const auto points = bloch_sweep(spec, a.m_min, a.m_max);

  io::Table out;
  out.meta = base_meta("bloch", "delta=" + fmt(a.delta) + " m_min=" + std::to_string(a.m_min) +
                                    " m_max=" + std::to_string(a.m_max) +
                                    " dispersion=" + a.dispersion);
  out.column_names = {"m", "band", "x", "y", "z", "energy"};
  for (const auto& p : points)
    out.rows.push_back({std::to_string(p.m), p.band, fmt(p.bloch.x), fmt(p.bloch.y),
                        fmt(p.bloch.z), fmt(p.energy)});
  write_table(out, a.out);

  print_summary(ordered_json{{"command", "bloch"},
                             {"delta", a.delta},
                             {"m_min", a.m_min},
                             {"m_max", a.m_max},
                             {"rows", points.size()},
                             {"out", a.out.out}});
  return 0;
}

// ---- time-domain experiments ----------------------------------------------

io::Table series_table(const ExperimentResult& result, const std::string& command) {
  std::string params;
  for (const auto& [k, v] : result.metadata) params += (params.empty() ? "" : " ") + k + "=" + v;
  io::Table out;
  out.meta = base_meta(command, params);
  out.column_names = {"t"};
  for (const auto& name : result.series.channel_names) out.column_names.push_back(name);
  for (std::size_t i = 0; i < result.series.times.size(); ++i) {
    std::vector<std::string> row{fmt(result.series.times[i])};
    for (const auto& ch : result.series.channels) row.push_back(fmt(ch[i]));
    out.rows.push_back(std::move(row));
  }
  return out;
}

ordered_json series_summary(const ExperimentResult& result, const std::string& command,
                            const std::string& out_path) {
  ordered_json summary{{"command", command}};
  for (const auto& [k, v] : result.metadata) summary[k] = v;
  summary["peak_channel"] = result.primary_channel;
  summary["peak_value"] = result.peak_value;
  summary["peak_time"] = result.peak_time;
  summary["out"] = out_path;
  return summary;
}

struct TeleportArgs {
  double delta = 1.0;
  int m = 0;
  double t_max = 12.0;
  double dt = 0.01;
  OutputOpts out{"", "csv"};
};

int run_teleport(TeleportArgs a) {
  if (a.out.out.empty()) a.out.out = "fluxring_teleport." + a.out.format;
  const ExperimentResult result = teleport_experiment(a.delta, a.m, a.t_max, a.dt);
  write_table(series_table(result, "teleport"), a.out);
  print_summary(series_summary(result, "teleport", a.out.out));
  return 0;
}

struct QuenchArgs {
  double delta = 1.0;
  double g = 0.5;
  double t_max = 20.0;
  double dt = 0.01;
  OutputOpts out{"", "csv"};
};

int run_quench(QuenchArgs a) {
  if (a.out.out.empty()) a.out.out = "fluxring_quench." + a.out.format;
  const ExperimentResult result = quench_experiment(a.delta, a.g, a.t_max, a.dt);
  write_table(series_table(result, "quench"), a.out);
  print_summary(series_summary(result, "quench", a.out.out));
  return 0;
}

struct ChainArgs {
  std::size_t n = 4;
  std::vector<int> link_ms;
  double delta = 1.0;
  std::size_t excited_site = 0;
  double t_max = 20.0;
  double dt = 0.01;
  OutputOpts out{"", "csv"};
};

int run_chain(ChainArgs a) {
  if (a.out.out.empty()) a.out.out = "fluxring_chain." + a.out.format;
  if (a.link_ms.empty() && a.n >= 1) a.link_ms.assign(a.n - 1, 0);
  const ExperimentResult result =
      chain_transport_experiment(a.n, a.link_ms, a.delta, a.excited_site, a.t_max, a.dt);
  write_table(series_table(result, "chain"), a.out);
  ordered_json summary = series_summary(result, "chain", a.out.out);
  std::string ms;
  for (std::size_t i = 0; i < a.link_ms.size(); ++i)
    ms += (i ? "," : "") + std::to_string(a.link_ms[i]);
  summary["link_ms"] = ms;
  print_summary(summary);
  return 0;
}

// ---- decompose --------------------------------------------------------------

struct DecomposeArgs {
  std::string system = "two-fluxon";
  int m = 0;
  double delta = 1.0;
  double g = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  std::size_t n = 4;
  std::vector<int> link_ms;
  std::vector<int> orientations;
  std::string dispersion = "quadratic";
  OutputOpts out{"", "json"};
};

int run_decompose(DecomposeArgs a) {
  if (a.out.out.empty()) a.out.out = "fluxring_decompose." + a.out.format;
  const Dispersion disp =
      a.dispersion == "linear" ? Dispersion::linear : Dispersion::quadratic;

  ComplexMatrix h;
  std::size_t n_sites = 0;
  std::string params = "system=" + a.system + " delta=" + fmt(a.delta);
  if (a.system == "single") {
    h = build_single_fluxon(a.m, a.delta, disp);
    n_sites = 1;
    params += " m=" + std::to_string(a.m);
  } else if (a.system == "two-fluxon") {
    h = build_two_fluxon(a.m, a.delta, disp);
    n_sites = 2;
    params += " m=" + std::to_string(a.m);
  } else if (a.system == "two-fluxon-physical") {
    const std::vector<int> ori = a.orientations.empty() ? std::vector<int>{1, -1} : a.orientations;
    if (ori.size() != 2) throw std::invalid_argument("two-fluxon-physical needs 2 orientations");
    h = build_two_fluxon_physical(a.m, a.delta, ori[0], ori[1], disp);
    n_sites = 2;
    params += " m=" + std::to_string(a.m) + " orientations=" + std::to_string(ori[0]) + "," +
              std::to_string(ori[1]);
  } else if (a.system == "driven") {
    h = build_driven(a.delta, a.g, disp);
    n_sites = 2;
    params += " g=" + fmt(a.g);
  } else if (a.system == "ising") {
    h = build_ising_two_qubit(a.delta, a.g1, a.g2);
    n_sites = 2;
    params += " g1=" + fmt(a.g1) + " g2=" + fmt(a.g2);
  } else if (a.system == "chain") {
    if (a.link_ms.empty() && a.n >= 1) a.link_ms.assign(a.n - 1, 0);
    h = build_chain(a.n, a.link_ms, a.delta, disp);
    n_sites = a.n;
    params += " n=" + std::to_string(a.n);
  } else {
    throw std::invalid_argument("unknown system: " + a.system);
  }
  params += " dispersion=" + a.dispersion;

  const PauliDecomposition dec = pauli_decompose(h, n_sites);

  io::Table out;
  out.meta = base_meta("decompose", params);
  out.column_names = {"term", "site_i", "site_j", "coefficient"};
  out.rows.push_back({"h0", "", "", fmt(dec.h0)});
  for (std::size_t site = 0; site < dec.n_sites(); ++site) {
    const auto& f = dec.fields[site];
    out.rows.push_back({"x", std::to_string(site), "", fmt(f[0])});
    out.rows.push_back({"y", std::to_string(site), "", fmt(f[1])});
    out.rows.push_back({"z", std::to_string(site), "", fmt(f[2])});
  }
  for (const auto& [pair, j] : dec.zz_couplings)
    out.rows.push_back(
        {"zz", std::to_string(pair.first), std::to_string(pair.second), fmt(j)});
  write_table(out, a.out);

  print_summary(ordered_json{{"command", "decompose"},
                             {"system", a.system},
                             {"n_sites", n_sites},
                             {"h0", dec.h0},
                             {"out", a.out.out}});
  return 0;
}

void add_output_opts(CLI::App* sub, OutputOpts& out) {
  sub->add_option("--out", out.out, "output path (default: fluxring_<command>.<format>)");
  sub->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run_main(int argc, const char* const* argv) {
  CLI::App app{"fluxring: flux-qubit / quantum-ring model simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)")
      ->expected(1);

  SpectrumArgs spectrum;
  CLI::App* sub_spectrum = app.add_subcommand("spectrum", "energy bands over a range of m");
  sub_spectrum->add_option("--system", spectrum.system)
      ->check(CLI::IsMember({"single", "two-fluxon", "two-fluxon-physical"}));
  sub_spectrum->add_option("--delta", spectrum.delta, "transition energy (units a)");
  sub_spectrum->add_option("--m-min", spectrum.m_min);
  sub_spectrum->add_option("--m-max", spectrum.m_max);
  sub_spectrum->add_option("--dispersion", spectrum.dispersion)
      ->check(CLI::IsMember({"quadratic", "linear"}));
  sub_spectrum->add_option("--orientations", spectrum.orientations)->delimiter(',');
  add_output_opts(sub_spectrum, spectrum.out);

  BlochArgs bloch;
  CLI::App* sub_bloch = app.add_subcommand("bloch", "Bloch vectors of the fluxon eigenstates");
  sub_bloch->add_option("--delta", bloch.delta);
  sub_bloch->add_option("--m-min", bloch.m_min);
  sub_bloch->add_option("--m-max", bloch.m_max);
  sub_bloch->add_option("--dispersion", bloch.dispersion)
      ->check(CLI::IsMember({"quadratic", "linear"}));
  add_output_opts(sub_bloch, bloch.out);

  TeleportArgs teleport;
  CLI::App* sub_teleport =
      app.add_subcommand("teleport", "excitation transfer between two fluxons");
  sub_teleport->add_option("--delta", teleport.delta);
  sub_teleport->add_option("--m", teleport.m);
  sub_teleport->add_option("--t-max", teleport.t_max);
  sub_teleport->add_option("--dt", teleport.dt);
  add_output_opts(sub_teleport, teleport.out);

  QuenchArgs quench;
  CLI::App* sub_quench = app.add_subcommand("quench", "entanglement growth after a drive quench");
  sub_quench->add_option("--delta", quench.delta);
  sub_quench->add_option("--g", quench.g);
  sub_quench->add_option("--t-max", quench.t_max);
  sub_quench->add_option("--dt", quench.dt);
  add_output_opts(sub_quench, quench.out);

  ChainArgs chain;
  CLI::App* sub_chain = app.add_subcommand("chain", "excitation transport along a fluxon chain");
  sub_chain->add_option("--n", chain.n);
  sub_chain->add_option("--link-ms", chain.link_ms)->delimiter(',');
  sub_chain->add_option("--delta", chain.delta);
  sub_chain->add_option("--excited-site", chain.excited_site);
  sub_chain->add_option("--t-max", chain.t_max);
  sub_chain->add_option("--dt", chain.dt);
  add_output_opts(sub_chain, chain.out);

  DecomposeArgs decompose;
  CLI::App* sub_decompose =
      app.add_subcommand("decompose", "Pauli coefficients of a model Hamiltonian");
  sub_decompose->add_option("--system", decompose.system)
      ->check(CLI::IsMember(
          {"single", "two-fluxon", "two-fluxon-physical", "driven", "ising", "chain"}));
  sub_decompose->add_option("--m", decompose.m);
  sub_decompose->add_option("--delta", decompose.delta);
  sub_decompose->add_option("--g", decompose.g);
  sub_decompose->add_option("--g1", decompose.g1);
  sub_decompose->add_option("--g2", decompose.g2);
  sub_decompose->add_option("--n", decompose.n);
  sub_decompose->add_option("--link-ms", decompose.link_ms)->delimiter(',');
  sub_decompose->add_option("--orientations", decompose.orientations)->delimiter(',');
  sub_decompose->add_option("--dispersion", decompose.dispersion)
      ->check(CLI::IsMember({"quadratic", "linear"}));
  add_output_opts(sub_decompose, decompose.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Config config(config_path);
    if (sub_spectrum->parsed()) {
      config.apply(sub_spectrum, "system", spectrum.system);
      config.apply(sub_spectrum, "delta", spectrum.delta);
      config.apply(sub_spectrum, "m-min", spectrum.m_min);
      config.apply(sub_spectrum, "m-max", spectrum.m_max);
      config.apply(sub_spectrum, "dispersion", spectrum.dispersion);
      config.apply(sub_spectrum, "orientations", spectrum.orientations);
      config.apply(sub_spectrum, "out", spectrum.out.out);
      config.apply(sub_spectrum, "format", spectrum.out.format);
      return run_spectrum(std::move(spectrum));
    }
    if (sub_bloch->parsed()) {
      config.apply(sub_bloch, "delta", bloch.delta);
      config.apply(sub_bloch, "m-min", bloch.m_min);
      config.apply(sub_bloch, "m-max", bloch.m_max);
      config.apply(sub_bloch, "dispersion", bloch.dispersion);
      config.apply(sub_bloch, "out", bloch.out.out);
      config.apply(sub_bloch, "format", bloch.out.format);
      return run_bloch(std::move(bloch));
    }
    if (sub_teleport->parsed()) {
      config.apply(sub_teleport, "delta", teleport.delta);
      config.apply(sub_teleport, "m", teleport.m);
      config.apply(sub_teleport, "t-max", teleport.t_max);
      config.apply(sub_teleport, "dt", teleport.dt);
      config.apply(sub_teleport, "out", teleport.out.out);
      config.apply(sub_teleport, "format", teleport.out.format);
      return run_teleport(std::move(teleport));
    }
    if (sub_quench->parsed()) {
      config.apply(sub_quench, "delta", quench.delta);
      config.apply(sub_quench, "g", quench.g);
      config.apply(sub_quench, "t-max", quench.t_max);
      config.apply(sub_quench, "dt", quench.dt);
      config.apply(sub_quench, "out", quench.out.out);
      config.apply(sub_quench, "format", quench.out.format);
      return run_quench(std::move(quench));
    }
    if (sub_chain->parsed()) {
      config.apply(sub_chain, "n", chain.n);
      config.apply(sub_chain, "link-ms", chain.link_ms);
      config.apply(sub_chain, "delta", chain.delta);
      config.apply(sub_chain, "excited-site", chain.excited_site);
      config.apply(sub_chain, "t-max", chain.t_max);
      config.apply(sub_chain, "dt", chain.dt);
      config.apply(sub_chain, "out", chain.out.out);
      config.apply(sub_chain, "format", chain.out.format);
      return run_chain(std::move(chain));
    }
    if (sub_decompose->parsed()) {
      config.apply(sub_decompose, "system", decompose.system);
      config.apply(sub_decompose, "m", decompose.m);
      config.apply(sub_decompose, "delta", decompose.delta);
      config.apply(sub_decompose, "g", decompose.g);
      config.apply(sub_decompose, "g1", decompose.g1);
      config.apply(sub_decompose, "g2", decompose.g2);
      config.apply(sub_decompose, "n", decompose.n);
      config.apply(sub_decompose, "link-ms", decompose.link_ms);
      config.apply(sub_decompose, "orientations", decompose.orientations);
      config.apply(sub_decompose, "dispersion", decompose.dispersion);
      config.apply(sub_decompose, "out", decompose.out.out);
      config.apply(sub_decompose, "format", decompose.out.format);
      return run_decompose(std::move(decompose));
    }
    std::cerr << "fluxring: no command given\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "fluxring: I/O error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << "fluxring: numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fluxring: invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fluxring: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fluxring::cli
