#include "cli.hpp"

#include "sae/calibration.hpp"
#include "sae/correlation_oracle.hpp"
#include "sae/errors.hpp"
#include "sae/kernels.hpp"
#include "sae/radial_solver.hpp"
#include "sae/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace sae::cli {

namespace {

std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string trim(const std::string &s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos)
    return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// --- basis flags ------------------------------------------------------------

struct BasisFlags {
  bool fast = false;
  std::optional<double> rmax;
  std::optional<int> splines;
  std::optional<int> order;
  std::optional<std::string> knots;
  std::optional<double> clustering;
  std::optional<int> quad_points;

  BasisConfig resolve() const {
    BasisConfig c = fast ? BasisConfig::fast() : BasisConfig::standard();
    if (rmax)
      c.rmax = *rmax;
    if (splines)
      c.n_splines = *splines;
    if (order)
      c.order = *order;
    if (knots)
      c.scheme = knot_scheme_from_string(*knots);
    if (clustering)
      c.clustering = *clustering;
    if (quad_points)
      c.quad_points = *quad_points;
    c.validate();
    return c;
  }
};

void add_basis_flags(CLI::App *app, BasisFlags &b) {
  app->add_flag("--fast", b.fast, "Reduced basis (300 splines, same box)");
  app->add_option("--rmax", b.rmax, "Box radius in bohr (default 500)");
  app->add_option("--splines", b.splines, "Number of B-splines (default 600)");
  app->add_option("--order", b.order, "B-spline order k (default 10)");
  app->add_option("--knots", b.knots,
                  "Knot scheme: linear, exponential, sinh-hybrid");
  app->add_option("--clustering", b.clustering,
                  "Knot clustering parameter (default 5)");
  app->add_option("--quad-points", b.quad_points,
                  "Gauss points per interval (0: order + 4)");
}

void echo_basis(std::ostream &os, const BasisConfig &c) {
  os << "rmax = " << num(c.rmax) << '\n'
     << "splines = " << c.n_splines << '\n'
     << "order = " << c.order << '\n'
     << "knots = " << to_string(c.scheme) << '\n'
     << "clustering = " << num(c.clustering) << '\n'
     << "quad-points = " << c.quad_points << '\n';
}

// --- config file ------------------------------------------------------------

// Values from `path` fill every option of `app` not given on the command line.
void apply_config_file(CLI::App *app, const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config" || key == "echo-config" || key == "help")
      throw ConfigError(path + ":" + std::to_string(lineno) + ": key '" + key +
                        "' is not allowed in a config file");
    if (!seen.insert(key).second)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    CLI::Option *opt = app->get_option_no_throw("--" + key);
    if (!opt)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "' for command '" +
                        app->get_name() + "'");
    if (opt->count() > 0)
      continue; // the command line wins
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error &e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

// --- shared helpers ---------------------------------------------------------

struct Common {
  std::string config;
  bool echo = false;
  std::string backend = "auto";
};

void add_common(CLI::App *app, Common &c) {
  app->add_option("--config", c.config, "Read 'key = value' settings from a file");
  app->add_flag("--echo-config", c.echo,
                "Print the effective configuration and exit");
  app->add_option("--backend", c.backend,
                  "Kernel backend: auto, scalar, avx2");
}

void select_backend(const std::string &name) {
  if (name == "auto")
    return;
  if (name == "scalar")
    kernels::set_backend(kernels::Backend::scalar);
  else if (name == "avx2")
    kernels::set_backend(kernels::Backend::avx2);
  else
    throw ConfigError("unknown backend '" + name + "'");
}

void echo_header(std::ostream &os, const std::string &command,
                 const Common &c) {
  os << "# sae " << command << '\n';
  if (c.backend != "auto")
    os << "backend = " << c.backend << '\n';
}

PotentialModel make_model(const std::string &name, double Z, double alpha) {
  PotentialModel m;
  m.kind = potential_kind_from_string(name);
  m.Z = Z;
  if (m.kind == PotentialKind::sae_h2)
    m.alpha = alpha;
  m.validate();
  return m;
}

void warn_box(std::span<const Eigensolution> chans, std::ostream &err) {
  for (const auto &c : chans)
    for (std::size_t s = 0; s < c.energies.size(); ++s)
      if (c.box_distorted[s])
        err << "warning: " << to_string(c.channel.model.kind)
            << " l=" << c.channel.l << " n=" << c.principal(s)
            << " reaches beyond rmax/2; its energy is raised by the box\n";
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumOpts {
  Common common;
  BasisFlags basis;
  std::string model = "h2";
  double Z = 2.0;
  double alpha = default_alpha;
  int lmax = 7;
  int nper = 5;
  std::string policy = "ionic_core";
  std::string format = "csv";
  std::string output = "-";
};

CorePolicy policy_from_string(const std::string &s) {
  if (s == "ionic_core")
    return CorePolicy::ionic_core;
  if (s == "sae_orbital")
    return CorePolicy::sae_orbital;
  throw ConfigError("unknown core policy '" + s +
                    "' (expected ionic_core or sae_orbital)");
}

int cmd_spectrum(const SpectrumOpts &o, std::ostream &out, std::ostream &err) {
  const PotentialModel model = make_model(o.model, o.Z, o.alpha);
  const BasisConfig bc = o.basis.resolve();
  const CorePolicy policy = policy_from_string(o.policy);
  const OutputFormat format = output_format_from_string(o.format);
  if (o.lmax < 0)
    throw ConfigError("--lmax must be >= 0");
  if (o.nper < 1)
    throw ConfigError("--nper must be >= 1");
  if (o.common.echo) {
    echo_header(out, "spectrum", o.common);
    out << "model = " << to_string(model.kind) << '\n'
        << "Z = " << num(o.Z) << '\n'
        << "alpha = " << num(o.alpha) << '\n'
        << "lmax = " << o.lmax << '\n'
        << "nper = " << o.nper << '\n'
        << "policy = " << o.policy << '\n'
        << "format = " << o.format << '\n'
        << "output = " << o.output << '\n';
    echo_basis(out, bc);
    return exit_ok;
  }
  select_backend(o.common.backend);

  const BSplineBasis basis(bc);
  const auto chans = solve_channels(basis, model, o.lmax, o.nper);
  warn_box(chans, err);
  auto levels = combine(chans, policy);
  attach_reference(levels, ReferenceTable::embedded());
  emit(levels, format, o.output, out);
  return exit_ok;
}

// --- validate ---------------------------------------------------------------

struct ValidateOpts {
  Common common;
  BasisFlags basis;
  double alpha = default_alpha;
  std::string rows = "all";
  bool allow_borderline = false;
};

// "all" or a comma list such as "L0,L3"
std::vector<int> parse_rows(const std::string &spec) {
  std::vector<int> ls;
  if (spec == "all") {
    for (int l = 0; l <= 7; ++l)
      ls.push_back(l);
    return ls;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    int l = -1;
    if (item.size() >= 2 && (item[0] == 'L' || item[0] == 'l')) {
      const auto r = std::from_chars(item.data() + 1,
                                     item.data() + item.size(), l);
      if (r.ec != std::errc() || r.ptr != item.data() + item.size())
        l = -1;
    }
    if (l < 0 || l > 7)
      throw ConfigError("--rows: expected 'all' or a list like L0,L3 with "
                        "0 <= L <= 7, got '" + item + "'");
    if (std::find(ls.begin(), ls.end(), l) == ls.end())
      ls.push_back(l);
  }
  if (ls.empty())
    throw ConfigError("--rows: empty selection");
  std::sort(ls.begin(), ls.end());
  return ls;
}

int cmd_validate(const ValidateOpts &o, std::ostream &out, std::ostream &err) {
  const BasisConfig bc = o.basis.resolve();
  const auto ls = parse_rows(o.rows);
  const PotentialModel h2 = make_model("h2", 2.0, o.alpha);
  if (o.common.echo) {
    echo_header(out, "validate", o.common);
    out << "alpha = " << num(o.alpha) << '\n'
        << "rows = " << o.rows << '\n'
        << "allow-borderline = " << (o.allow_borderline ? "true" : "false")
        << '\n';
    echo_basis(out, bc);
    return exit_ok;
  }
  select_backend(o.common.backend);

  const BSplineBasis basis(bc);
  const ReferenceTable table = ReferenceTable::embedded().filtered(ls);
  const int lmax = ls.back();

  struct Column {
    PotentialModel model;
    TableColumn column;
  };
  const Column columns[] = {{PotentialModel::h1(2.0), TableColumn::h1},
                            {h2, TableColumn::h2}};
  std::vector<DiffReport> reports;
  for (const auto &c : columns) {
    const auto chans = solve_channels(basis, c.model, lmax, 5);
    warn_box(chans, err);
    auto levels = combine(chans);
    std::erase_if(levels, [&](const TwoElectronLevel &v) {
      return std::find(ls.begin(), ls.end(), v.l) == ls.end();
    });
    reports.push_back(compare_reference(levels, table, c.column));
  }

  char line[256];
  for (const auto &rep : reports) {
    for (const auto &r : rep.rows) {
      std::snprintf(line, sizeof line,
                    "%-3s l=%d n=%-2d %-6s computed %.9f  trunc %-9s table "
                    "%-9s delta %+.2e  %s\n",
                    std::string(to_string(rep.column)).c_str(), r.l, r.n,
                    r.label.c_str(), r.computed, r.truncated.c_str(),
                    r.table.c_str(), r.delta,
                    std::string(to_string(r.status)).c_str());
      out << line;
    }
  }
  bool ok = true;
  for (const auto &rep : reports) {
    std::snprintf(line, sizeof line,
                  "%s: %d matched, %d borderline, %d mismatched, max |delta| "
                  "%.2e\n",
                  std::string(to_string(rep.column)).c_str(), rep.matched,
                  rep.borderline, rep.mismatched, rep.max_abs_delta);
    out << line;
    ok = ok && (o.allow_borderline ? rep.all_within_truncation_noise()
                                   : rep.all_match());
  }
  auto passing = [&](const DiffReport &r) {
    return r.matched + (o.allow_borderline ? r.borderline : 0);
  };
  out << passing(reports[0]) << '/' << reports[0].total() << " H1 rows, "
      << passing(reports[1]) << '/' << reports[1].total()
      << " H2 rows match\n";
  return ok ? exit_ok : exit_failure;
}

// --- oracle -----------------------------------------------------------------

struct OracleOpts {
  Common common;
  double Z = 2.0;
  double rmin = 0.1;
  double rmax = 10.0;
  int points = 50;
  std::string variant = "both";
  int kmax = 1;
  double tol = 1e-10;
  std::string output = "-";
};

int cmd_oracle(const OracleOpts &o, std::ostream &out, std::ostream &err) {
  if (o.points < 1)
    throw ConfigError("--points must be >= 1");
  if (!(o.rmin > 0.0))
    throw ConfigError("--rmin must be positive");
  if (o.points > 1 && !(o.rmax > o.rmin))
    throw ConfigError("--rmax must exceed --rmin");
  if (o.variant != "both" && o.variant != "fi" && o.variant != "fj")
    throw ConfigError("--variant must be fi, fj or both");

  OracleConfig cfg;
  cfg.Z = o.Z;
  cfg.series_kmax = o.kmax;
  cfg.tolerance = o.tol;
  for (int i = 0; i < o.points; ++i)
    cfg.r_grid.push_back(o.points == 1 ? o.rmin
                                       : o.rmin + (o.rmax - o.rmin) * i /
                                                      (o.points - 1));
  cfg.validate();
  if (o.common.echo) {
    echo_header(out, "oracle", o.common);
    out << "Z = " << num(o.Z) << '\n'
        << "rmin = " << num(o.rmin) << '\n'
        << "rmax = " << num(o.rmax) << '\n'
        << "points = " << o.points << '\n'
        << "variant = " << o.variant << '\n'
        << "kmax = " << o.kmax << '\n'
        << "tol = " << num(o.tol) << '\n'
        << "output = " << o.output << '\n';
    return exit_ok;
  }
  select_backend(o.common.backend);

  OracleReport rep = compare_closed_form(cfg);
  int failed = 0;
  for (auto &rec : rep.records) {
    if (o.variant == "fj") {
      rec.numeric_fi.reset();
      rec.err_fi_vs_h1.reset();
    } else if (o.variant == "fi") {
      rec.numeric_fj.reset();
    }
    if (!rec.failure.empty())
      ++failed;
  }
  write_text(to_csv(rep), o.output, out);
  for (const auto &rec : rep.records)
    if (!rec.failure.empty())
      err << "warning: r=" << num(rec.r) << ": " << rec.failure << '\n';
  return failed == int(rep.records.size()) ? exit_failure : exit_ok;
}

// --- fit-alpha --------------------------------------------------------------

struct FitOpts {
  Common common;
  double Z = 2.0;
  double target = helium_ground_reference;
  std::string bracket = "0.1,0.9";
  double tol = 1e-6;
  bool confirm = true;
  std::string format = "text";
  std::string output = "-";
};

std::pair<double, double> parse_bracket(const std::string &s) {
  const auto comma = s.find(',');
  auto parse = [&](const std::string &t) {
    const std::string x = trim(t);
    double v = 0.0;
    const auto r = std::from_chars(x.data(), x.data() + x.size(), v);
    if (x.empty() || r.ec != std::errc() || r.ptr != x.data() + x.size())
      throw ConfigError("--bracket: expected 'lo,hi', got '" + s + "'");
    return v;
  };
  if (comma == std::string::npos)
    throw ConfigError("--bracket: expected 'lo,hi', got '" + s + "'");
  const double lo = parse(s.substr(0, comma));
  const double hi = parse(s.substr(comma + 1));
  if (!(0.0 < lo && lo < hi && hi < 1.0))
    throw ConfigError("--bracket: need 0 < lo < hi < 1, got '" + s + "'");
  return {lo, hi};
}

int cmd_fit_alpha(const FitOpts &o, std::ostream &out, std::ostream &err) {
  CalibrationProblem p;
  p.Z = o.Z;
  p.target_energy = o.target;
  std::tie(p.alpha_lo, p.alpha_hi) = parse_bracket(o.bracket);
  p.tol_alpha = o.tol;
  if (!o.confirm)
    p.confirm_basis.reset();
  p.validate();
  if (o.format != "text" && o.format != "json")
    throw ConfigError("--format must be text or json");
  if (o.common.echo) {
    echo_header(out, "fit-alpha", o.common);
    out << "Z = " << num(o.Z) << '\n'
        << "target = " << num(o.target) << '\n'
        << "bracket = " << num(p.alpha_lo) << ',' << num(p.alpha_hi) << '\n'
        << "tol = " << num(o.tol) << '\n'
        << "confirm = " << (o.confirm ? "true" : "false") << '\n'
        << "format = " << o.format << '\n'
        << "output = " << o.output << '\n';
    return exit_ok;
  }
  select_backend(o.common.backend);

  CalibrationResult r;
  try {
    r = fit_alpha(p);
  } catch (const CalibrationError &e) {
    err << "error: " << e.what() << "\nsampled objective (alpha, residual):\n";
    for (const auto &[a, y] : e.profile())
      err << "  " << num(a) << ' ' << num(y) << '\n';
    return exit_failure;
  }

  std::string text;
  if (o.format == "json") {
    nlohmann::json j;
    j["Z"] = o.Z;
    j["target"] = o.target;
    j["alpha"] = r.alpha;
    j["residual"] = r.residual;
    j["energy"] = r.energy;
    j["evaluations"] = r.evaluations;
    j["method"] = r.method;
    j["monotone"] = r.monotone;
    j["confirm_energy"] =
        r.confirm_energy ? nlohmann::json(*r.confirm_energy) : nullptr;
    j["confirm_residual"] =
        r.confirm_residual ? nlohmann::json(*r.confirm_residual) : nullptr;
    j["profile"] = nlohmann::json::array();
    for (const auto &[a, y] : r.profile)
      j["profile"].push_back({a, y});
    text = j.dump(2) + "\n";
  } else {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "alpha = %.9f\nresidual = %.3e\nenergy = %.9f\n"
                  "evaluations = %d\nmethod = %s\nmonotone = %s\n",
                  r.alpha, r.residual, r.energy, r.evaluations,
                  r.method.c_str(), r.monotone ? "true" : "false");
    text = buf;
    if (r.confirm_energy) {
      std::snprintf(buf, sizeof buf,
                    "confirm_energy = %.9f\nconfirm_residual = %.3e\n",
                    *r.confirm_energy, *r.confirm_residual);
      text += buf;
    }
  }
  if (!r.monotone)
    err << "warning: objective not monotone over the prescan; minimized "
           "|residual| instead\n";
  write_text(text, o.output, out);
  return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Single-active-electron helium spectra on a B-spline basis",
               "sae"};
  app.require_subcommand(1);

  SpectrumOpts so;
  auto *sp = app.add_subcommand("spectrum", "Two-electron 1snl levels");
  add_common(sp, so.common);
  add_basis_flags(sp, so.basis);
  sp->add_option("--model", so.model, "coulomb, meanfield, h1 or h2");
  sp->add_option("--Z", so.Z, "Nuclear charge");
  sp->add_option("--alpha", so.alpha, "Screening parameter of h2, in (0,1)");
  sp->add_option("--lmax", so.lmax, "Highest orbital angular momentum");
  sp->add_option("--nper", so.nper, "States per l");
  sp->add_option("--policy", so.policy, "ionic_core or sae_orbital");
  sp->add_option("--format", so.format, "csv or json");
  sp->add_option("--output", so.output, "Output file ('-' for stdout)");

  ValidateOpts vo;
  auto *va = app.add_subcommand("validate",
                                "Compare H1/H2 levels with the helium table");
  add_common(va, vo.common);
  add_basis_flags(va, vo.basis);
  va->add_option("--alpha", vo.alpha, "Screening parameter of h2");
  va->add_option("--rows", vo.rows, "'all' or a list like L0,L3");
  va->add_flag("--allow-borderline", vo.allow_borderline,
               "Count truncation-edge misses (within 1e-9) as passing");

  OracleOpts oo;
  auto *orc = app.add_subcommand(
      "oracle", "Numerical check of the H1 screening factor");
  add_common(orc, oo.common);
  orc->add_option("--Z", oo.Z, "Nuclear charge");
  orc->add_option("--rmin", oo.rmin, "First grid radius");
  orc->add_option("--rmax", oo.rmax, "Last grid radius");
  orc->add_option("--points", oo.points, "Number of grid radii");
  orc->add_option("--variant", oo.variant, "fi, fj or both");
  orc->add_option("--kmax", oo.kmax, "Highest series order");
  orc->add_option("--tol", oo.tol, "Absolute quadrature tolerance");
  orc->add_option("--output", oo.output, "Output file ('-' for stdout)");

  FitOpts fo;
  auto *fit = app.add_subcommand("fit-alpha",
                                 "Fit alpha of h2 to a ground-state energy");
  add_common(fit, fo.common);
  fit->add_option("--Z", fo.Z, "Nuclear charge");
  fit->add_option("--target", fo.target, "Target ground-state energy");
  fit->add_option("--bracket", fo.bracket, "Search interval lo,hi");
  fit->add_option("--tol", fo.tol, "Absolute tolerance on alpha");
  fit->add_flag("--confirm,!--no-confirm", fo.confirm,
                "Re-solve on the full basis at the fitted alpha");
  fit->add_option("--format", fo.format, "text or json");
  fit->add_option("--output", fo.output, "Output file ('-' for stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (sp->parsed()) {
      if (!so.common.config.empty())
        apply_config_file(sp, so.common.config);
      return cmd_spectrum(so, out, err);
    }
    if (va->parsed()) {
      if (!vo.common.config.empty())
        apply_config_file(va, vo.common.config);
      return cmd_validate(vo, out, err);
    }
    if (orc->parsed()) {
      if (!oo.common.config.empty())
        apply_config_file(orc, oo.common.config);
      return cmd_oracle(oo, out, err);
    }
    if (fit->parsed()) {
      if (!fo.common.config.empty())
        apply_config_file(fit, fo.common.config);
      return cmd_fit_alpha(fo, out, err);
    }
  } catch (const std::invalid_argument &e) {
    // ConfigError and bad enum names
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

} // namespace sae::cli
