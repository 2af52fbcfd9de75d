#include "commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "emit.hpp"
#include "nudirac/errors.hpp"
#include "nudirac/spectra.hpp"
#include "nudirac/verify.hpp"
#include "nudirac/wavefun.hpp"
#include "scan.hpp"

namespace nudirac::cli {

namespace {

constexpr double kNuAgreement = 1e-10;

void header(JsonWriter& w, std::string_view command, const RunConfig& c) {
  w.begin_object();
  w.field("schema_version", kSchemaVersion);
  w.field("command", command);
  w.field("config", to_json(c));
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

EnergyLevel prepared_level(const MassModel& model, int n, double perturb) {
  EnergyLevel level = energy_via_nu(model, n).level;
  return perturb == 0.0 ? level : level.perturbed(perturb);
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum_impl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const MassModel model = c.mass_model();
  const auto rows = spectrum_table(model, c.n_max);
  int code = kExitOk;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      err << "level " << r.n << ": " << r.error << '\n';
      code = kExitLevel;
    }
  }

  if (c.format == Format::Csv) {
    CsvWriter csv(out);
    csv.row({"n", "e_squared", "re_e", "im_e", "nu_e_squared", "nu_rel_diff", "nu_agreement",
             "nu_branch", "nu_admissible", "reality_predicate", "error"});
    for (const auto& r : rows) {
      std::vector<std::string> f{std::to_string(r.n)};
      if (r.closed) {
        f.push_back(csv_number(r.closed->e_squared));
        f.push_back(csv_number(r.closed->e_plus.real()));
        f.push_back(csv_number(r.closed->e_plus.imag()));
      } else {
        f.insert(f.end(), {"", "", ""});
      }
      if (r.nu) {
        f.push_back(csv_number(r.nu->level.e_squared));
        f.push_back(csv_number(r.nu->discrepancy.rel_diff));
        f.push_back(bool_text(r.nu->discrepancy.within(kNuAgreement)));
        f.push_back(nu::to_string(r.nu->quantization.branch.id));
        f.push_back(bool_text(r.nu->quantization.branch.admissible));
      } else {
        f.insert(f.end(), {"", "", "", "", ""});
      }
      f.push_back(r.reality ? bool_text(*r.reality) : "");
      f.push_back(r.error);
      csv.row(f);
    }
    return code;
  }

  JsonWriter w(out);
  header(w, "spectrum", c);
  w.key("rows").begin_array();
  for (const auto& r : rows) {
    w.begin_object();
    w.field("n", r.n);
    if (r.closed) {
      w.field("e_squared", r.closed->e_squared);
      w.field("re_e", r.closed->e_plus.real());
      w.field("im_e", r.closed->e_plus.imag());
      w.field("e_plus", r.closed->e_plus);
      w.field("e_minus", r.closed->e_minus);
    } else {
      w.key("e_squared").null();
    }
    w.key("nu");
    if (r.nu) {
      const auto& q = r.nu->quantization;
      w.begin_object();
      w.field("e_squared", r.nu->level.e_squared);
      w.field("spectral_parameter", q.s);
      w.field("abs_diff", r.nu->discrepancy.abs_diff);
      w.field("rel_diff", r.nu->discrepancy.rel_diff);
      w.field("agreement", r.nu->discrepancy.within(kNuAgreement));
      w.field("branch", nu::to_string(q.branch.id));
      w.field("admissible", q.branch.admissible);
      w.field("tau_slope", q.branch.tau_slope());
      w.field("iterations", q.iterations);
      w.end_object();
    } else {
      w.null();
    }
    w.key("reality_predicate");
    if (r.reality) {
      w.value(*r.reality);
    } else {
      w.null();
    }
    w.key("error");
    if (r.error.empty()) {
      w.null();
    } else {
      w.value(r.error);
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return code;
}

// ------------------------------------------------------------ wavefunction

int cmd_wavefunction_impl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const MassModel model = c.mass_model();
  const auto xs = uniform_grid(c.grid_min(), c.grid_max(),
                               static_cast<std::size_t>(c.grid.points.value_or(1001)));
  EnergyLevel level;
  std::vector<WavefunctionSample> samples;
  try {
    level = prepared_level(model, c.n, c.perturb_energy);
    samples = sample_x_grid(model, level, xs, c.energy_sign);
  } catch (const std::exception& e) {
    err << "level " << c.n << ": " << e.what() << '\n';
    return kExitLevel;
  }

  if (c.format == Format::Csv) {
    CsvWriter csv(out);
    csv.row({"x", "z", "phi_re", "phi_im", "f_re", "f_im", "g_re", "g_im", "psi_plus_re",
             "psi_plus_im", "psi_minus_re", "psi_minus_im"});
    for (const auto& s : samples) {
      std::vector<std::string> f{csv_number(s.x), csv_number(s.z)};
      for (const cplx& v : {s.phi, s.f, s.g, s.psi_plus, s.psi_minus}) {
        f.push_back(csv_number(v.real()));
        f.push_back(csv_number(v.imag()));
      }
      csv.row(f);
    }
    return kExitOk;
  }

  JsonWriter w(out);
  header(w, "wavefunction", c);
  w.key("level").begin_object();
  w.field("n", level.n);
  w.field("e_squared", level.e_squared);
  w.field("energy", energy_of(level, c.energy_sign));
  w.field("branch", nu::to_string(level.branch->id));
  w.end_object();
  w.key("samples").begin_array();
  for (const auto& s : samples) {
    w.begin_object(true);
    w.field("x", s.x);
    w.field("z", s.z);
    w.field("phi", s.phi);
    w.field("f", s.f);
    w.field("g", s.g);
    w.field("psi_plus", s.psi_plus);
    w.field("psi_minus", s.psi_minus);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct LevelChecks {
  int n = 0;
  std::optional<NuLevel> nu_level;
  EnergyLevel level;
  std::vector<std::pair<ResidualReport, bool>> reports;  // (report, authoritative)
  std::string error;
};

std::vector<double> dirac_grid(const RunConfig& c, const MassModel& model) {
  if (!c.grid.points && !c.grid.min && !c.grid.max) return resolved_x_grid(model);
  return uniform_grid(c.grid_min(), c.grid_max(),
                      static_cast<std::size_t>(c.grid.points.value_or(1001)));
}

LevelChecks run_level(const RunConfig& c, const MassModel& model, int n) {
  LevelChecks lc;
  lc.n = n;
  try {
    lc.nu_level = energy_via_nu(model, n);
    lc.level = c.perturb_energy == 0.0 ? lc.nu_level->level
                                       : lc.nu_level->level.perturbed(c.perturb_energy);
    const auto zg = default_z_grid(model, 200);
    const auto xg = uniform_grid(c.grid_min(), c.grid_max(), 200);
    const auto xd = dirac_grid(c, model);
    const auto eig = Eigenfunction::from_level(model, lc.level);
    const cplx e = energy_of(lc.level, c.energy_sign);

    lc.reports.emplace_back(residual_ode_z(model, lc.level, zg, c.tol.ode), true);
    lc.reports.emplace_back(residual_ode_x(model, lc.level, xg, c.tol.ode), true);
    const auto samples = sample_x_grid(model, lc.level, xd, c.energy_sign);
    lc.reports.emplace_back(residual_dirac_system(model, samples, e, c.tol.dirac), true);
    lc.reports.emplace_back(
        residual_weight_identity(*lc.level.branch, hypergeometric_form(model).sigma, zg,
                                 c.tol.weight),
        true);
    lc.reports.emplace_back(printed_g_comparison(model, lc.level, zg, c.energy_sign, c.tol.dirac),
                            false);
  } catch (const std::exception& ex) {
    lc.error = ex.what();
  }
  return lc;
}

int cmd_verify_impl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const MassModel model = c.mass_model();
  std::vector<LevelChecks> levels;
  for (int n = 0; n <= c.n_max; ++n) levels.push_back(run_level(c, model, n));

  bool failed = false;
  bool level_error = false;
  for (const auto& lc : levels) {
    if (!lc.error.empty()) {
      level_error = true;
      err << "level " << lc.n << ": " << lc.error << '\n';
    }
    for (const auto& [r, authoritative] : lc.reports) {
      if (authoritative && !r.pass) {
        failed = true;
        err << "level " << lc.n << ": " << r.equation_id << " failed (max relative "
            << format_number(r.max_relative) << " > " << format_number(r.tolerance) << ")\n";
      }
    }
  }
  const int code = failed ? kExitVerification : level_error ? kExitLevel : kExitOk;

  if (c.format == Format::Csv) {
    CsvWriter csv(out);
    csv.row({"n", "equation_id", "authoritative", "points", "skipped", "max_relative", "tolerance",
             "pass", "error"});
    for (const auto& lc : levels) {
      if (!lc.error.empty()) {
        csv.row({std::to_string(lc.n), "", "", "", "", "", "", "", lc.error});
      }
      for (const auto& [r, authoritative] : lc.reports) {
        csv.row({std::to_string(lc.n), r.equation_id, bool_text(authoritative),
                 std::to_string(r.grid.size()), std::to_string(r.skipped),
                 csv_number(r.max_relative), csv_number(r.tolerance), bool_text(r.pass), ""});
      }
    }
    return code;
  }

  JsonWriter w(out);
  header(w, "verify", c);
  w.key("summary").begin_object();
  w.field("levels", levels.size());
  w.field("all_authoritative_pass", !failed);
  w.field("level_errors", level_error);
  w.field("exit_code", code);
  w.end_object();
  w.key("levels").begin_array();
  for (const auto& lc : levels) {
    w.begin_object();
    w.field("n", lc.n);
    w.key("error");
    if (lc.error.empty()) {
      w.null();
    } else {
      w.value(lc.error);
    }
    if (lc.nu_level) {
      const auto& nl = *lc.nu_level;
      w.field("e_squared", lc.level.e_squared);
      w.field("energy", energy_of(lc.level, c.energy_sign));
      w.field("branch", nu::to_string(nl.quantization.branch.id));
      w.field("admissible", nl.quantization.branch.admissible);
      w.key("closed_form_discrepancy").begin_object(true);
      w.field("nu_e_squared", nl.discrepancy.nu_e_squared);
      w.field("closed_e_squared", nl.discrepancy.closed_e_squared);
      w.field("abs_diff", nl.discrepancy.abs_diff);
      w.field("rel_diff", nl.discrepancy.rel_diff);
      w.end_object();
    }
    w.key("reports").begin_array();
    for (const auto& [r, authoritative] : lc.reports) {
      w.begin_object();
      w.field("equation_id", r.equation_id);
      w.field("authoritative", authoritative);
      w.field("tolerance", r.tolerance);
      w.field("max_relative", r.max_relative);
      w.field("pass", r.pass);
      w.field("points", r.grid.size());
      w.field("skipped", r.skipped);
      if (!r.component_max.empty()) {
        w.key("component_max").begin_object(true);
        for (const auto& [name, v] : r.component_max) w.field(name, v);
        w.end_object();
      }
      w.key("grid").values(r.grid);
      w.key("residuals").values(r.residuals);
      w.key("relative").values(r.relative);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return code;
}

// -------------------------------------------------------------------- scan

int cmd_scan_impl(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto draws = generate_draws(c.scan, c.seed);
  const auto results = evaluate_draws(draws, c.threads);
  const auto summary = summarize(results);

  struct Probe {
    MassKind kind;
    std::vector<DeltaProbeRow> rows;
    std::string error;
  };
  std::vector<Probe> probes;
  for (MassKind kind : {MassKind::ExponentialRising, MassKind::SigmoidSaturating}) {
    Probe p{kind, {}, {}};
    try {
      p.rows = delta_probe_rows(kind, c.m0, c.n, c.scan.deltas);
    } catch (const std::exception& e) {
      p.error = e.what();
      err << "delta probe (" << nudirac::to_string(kind) << "): " << e.what() << '\n';
    }
    probes.push_back(std::move(p));
  }

  int code = kExitOk;
  for (const auto& p : probes) {
    if (!p.error.empty()) code = kExitLevel;
  }
  if (summary.mismatches > 0) {
    err << summary.mismatches << " predicate mismatches\n";
    code = kExitVerification;
  }

  if (c.format == Format::Csv) {
    CsvWriter csv(out);
    csv.row({"record", "model", "m0", "delta", "n", "e_squared", "predicate", "consistent", "abs_e",
             "abs_e_squared_over_delta", "error"});
    for (const auto& r : results) {
      csv.row({"draw", "sigmoid", csv_number(r.draw.m0), csv_number(r.draw.delta),
               std::to_string(r.draw.n), csv_number(r.e_squared),
               r.error.empty() ? bool_text(r.predicate) : "",
               r.error.empty() ? bool_text(r.consistent) : "", "", "", r.error});
    }
    for (const auto& p : probes) {
      if (!p.error.empty()) {
        csv.row({"delta-probe", std::string(nudirac::to_string(p.kind)), csv_number(c.m0), "",
                 std::to_string(c.n), "", "", "", "", "", p.error});
      }
      for (const auto& row : p.rows) {
        csv.row({"delta-probe", std::string(nudirac::to_string(p.kind)), csv_number(c.m0),
                 csv_number(row.delta), std::to_string(c.n), "", "", "", csv_number(row.abs_e),
                 csv_number(row.abs_e_squared_over_delta), ""});
      }
    }
    return code;
  }

  JsonWriter w(out);
  header(w, "scan", c);
  w.key("summary").begin_object();
  w.field("draws", summary.draws);
  w.field("evaluated", summary.evaluated);
  w.field("skipped", summary.skipped);
  w.field("mismatches", summary.mismatches);
  w.field("predicate_true", summary.predicate_true);
  w.field("positive_e_squared", summary.positive_e_squared);
  w.end_object();
  w.key("delta_probe").begin_array();
  for (const auto& p : probes) {
    w.begin_object();
    w.field("model", nudirac::to_string(p.kind));
    w.field("m0", c.m0);
    w.field("n", c.n);
    w.key("error");
    if (p.error.empty()) {
      w.null();
    } else {
      w.value(p.error);
    }
    w.key("rows").begin_array();
    for (const auto& row : p.rows) {
      w.begin_object(true);
      w.field("delta", row.delta);
      w.field("abs_e", row.abs_e);
      w.field("abs_e_squared_over_delta", row.abs_e_squared_over_delta);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("draws").begin_array();
  for (const auto& r : results) {
    w.begin_object(true);
    w.field("m0", r.draw.m0);
    w.field("delta", r.draw.delta);
    w.field("n", r.draw.n);
    w.field("e_squared", r.e_squared);
    w.field("predicate", r.predicate);
    w.field("consistent", r.consistent);
    if (!r.error.empty()) w.field("error", r.error);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.finish();
  return code;
}

using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);

int guarded(Command cmd, const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (c.out.empty()) return cmd(c, out, err);
  std::ostringstream buffer;
  const int code = cmd(c, buffer, err);
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "config error: cannot open '" << c.out << "' for writing\n";
    return kExitConfig;
  }
  file << buffer.str();
  return code;
}

}  // namespace

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(cmd_spectrum_impl, c, out, err);
}

int cmd_wavefunction(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(cmd_wavefunction_impl, c, out, err);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(cmd_verify_impl, c, out, err);
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(cmd_scan_impl, c, out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirac spectra and wave functions for position-dependent mass profiles", "nudirac"};
  app.require_subcommand(1);

  nlohmann::json patch = nlohmann::json::object();
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override its values)");
    sub->add_option_function<std::string>(
           "--model", [&](const std::string& v) { patch["model"] = v; }, "Mass profile")
        ->check(CLI::IsMember({"exp-rising", "sigmoid"}));
    auto number = [&](const char* flag, const char* key, const char* help) {
      sub->add_option_function<double>(
          flag, [&patch, key = std::string(key)](const double& v) { patch[key] = v; }, help);
    };
    auto integer = [&](const char* flag, const char* key, const char* help) {
      sub->add_option_function<long long>(
          flag, [&patch, key = std::string(key)](const long long& v) { patch[key] = v; }, help);
    };
    number("--m0", "m0", "Mass scale m0 > 0");
    number("--delta", "delta", "Profile steepness delta > 0");
    integer("--n-max", "n-max", "Highest level");
    number("--grid-min", "grid-min", "Lower end of the x-grid (default -10/delta)");
    number("--grid-max", "grid-max", "Upper end of the x-grid (default 10/delta)");
    integer("--grid-points", "grid-points", "Number of x-grid points (>= 5)");
    sub->add_option_function<std::string>(
           "--energy-sign", [&](const std::string& v) { patch["energy-sign"] = v; },
           "Member of the +/-E pair used for g")
        ->check(CLI::IsMember({"plus", "minus"}));
    sub->add_option_function<std::string>(
           "--format", [&](const std::string& v) { patch["format"] = v; }, "Artifact format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option_function<std::string>(
        "--out", [&](const std::string& v) { patch["out"] = v; }, "Output file (default stdout)");
    number("--perturb-energy", "perturb-energy", "Relative perturbation applied to E^2");
    integer("--seed", "seed", "Scan RNG seed");
    integer("--threads", "threads", "Worker threads for scans (0: hardware)");
    number("--tol-ode", "tol-ode", "ODE residual tolerance");
    number("--tol-dirac", "tol-dirac", "Dirac system residual tolerance");
    number("--tol-weight", "tol-weight", "Weight identity tolerance");
    integer("--n", "n", "Level for wavefunction sampling and the delta probe");
    integer("--draws", "draws", "Random scan draws");
    integer("--scan-n-max", "scan-n-max", "Largest n in random scan draws");
    number("--m0-min", "m0-min", "Scan range for m0");
    number("--m0-max", "m0-max", "Scan range for m0");
    number("--delta-min", "delta-min", "Scan range for delta");
    number("--delta-max", "delta-max", "Scan range for delta");
    sub->add_option_function<std::vector<double>>(
           "--deltas", [&](const std::vector<double>& v) { patch["deltas"] = v; },
           "Strictly decreasing delta sequence for the zero-energy probe")
        ->delimiter(',');
  };

  std::map<CLI::App*, Command> commands;
  auto add = [&](const char* name, const char* help, Command cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands[sub] = cmd;
  };
  add("spectrum", "Energy levels from the closed forms and the NU quantization", cmd_spectrum);
  add("wavefunction", "Sample phi, f, g and the spinor on the x-grid", cmd_wavefunction);
  add("verify", "Run every residual oracle", cmd_verify);
  add("scan", "Reality-predicate scan and delta -> 0 probes", cmd_scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      nlohmann::json file;
      try {
        file = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("invalid JSON in '" + config_path + "': " + e.what());
      }
      apply_json(config, file);
    }
    apply_json(config, patch);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (const auto& [sub, cmd] : commands) {
    if (app.got_subcommand(sub)) return cmd(config, out, err);
  }
  return kExitConfig;
}

}  // namespace nudirac::cli
