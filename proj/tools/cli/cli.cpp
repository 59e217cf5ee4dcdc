// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "nhlattice/analytic.hpp"
#include "nhlattice/eig.hpp"
#include "nhlattice/errors.hpp"
#include "nhlattice/parallel.hpp"
#include "nhlattice/skin.hpp"
#include "output.hpp"

namespace nhlattice::cli {
namespace {

double parse_real(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ValidationError("cannot parse complex number '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view frame_name(Frame f) { return f == Frame::bare ? "H" : "Ht"; }

std::string_view command_name(Command c) {
  switch (c) {
    case Command::spectrum:
      return "spectrum";
    case Command::sweep:
      return "sweep";
    case Command::ep:
      return "ep";
    case Command::skin:
      return "skin";
    case Command::verify:
      return "verify";
  }
  return "spectrum";
}

// Raw flag values shared by every subcommand; only one subcommand parses.
struct RawArgs {
  int n = 0;
  std::string t = "1";
  std::string q;
  double rho = 1.0;
  double phi = 0.0;
  std::string tl = "1";
  std::string tr = "1";
  std::string al = "0";
  std::string ar = "0";
  std::string frame = "H";
  std::string format = "csv";
  std::string out;
  std::string axis = "rho";
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::vector<double> scan_r;
  bool include_avoided = false;
  bool quick = false;
};

struct ModelOptions {
  std::vector<CLI::Option*> family;
  std::vector<CLI::Option*> direct;
};

ModelOptions add_model_options(CLI::App* sub, RawArgs& raw) {
  ModelOptions o;
  sub->add_option("--n", raw.n, "Number of sites")->required();
  o.family.push_back(sub->add_option("--t", raw.t, "Family hopping t (complex, default 1)"));
  o.family.push_back(sub->add_option("--q", raw.q, "Family non-Hermiticity q (complex)"));
  o.family.push_back(sub->add_option("--rho", raw.rho, "Family boundary exponent rho (default 1)"));
  o.family.push_back(sub->add_option("--phi", raw.phi, "Family boundary phase in [0, 2pi)"));
  o.direct.push_back(sub->add_option("--tl", raw.tl, "Direct left hopping t_L (complex)"));
  o.direct.push_back(sub->add_option("--tr", raw.tr, "Direct right hopping t_R (complex)"));
  o.direct.push_back(sub->add_option("--al", raw.al, "Direct boundary alpha_L (complex)"));
  o.direct.push_back(sub->add_option("--ar", raw.ar, "Direct boundary alpha_R (complex)"));
  sub->add_option("--frame", raw.frame, "H (bare) or Ht (gauge-transformed)")
      ->check(CLI::IsMember({"H", "Ht"}));
  return o;
}

void add_output_options(CLI::App* sub, RawArgs& raw) {
  sub->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", raw.out, "Output file (default stdout)");
}

bool any_given(const std::vector<CLI::Option*>& opts) {
  for (const CLI::Option* o : opts)
    if (o->count() > 0) return true;
  return false;
}

void fill_model(RunConfig& c, const RawArgs& raw, const ModelOptions& opts) {
  c.n_sites = raw.n;
  const bool family = any_given(opts.family);
  const bool direct = any_given(opts.direct);
  if (family && direct) {
    throw ValidationError("give either family flags (--t --q --rho --phi) or direct flags "
                          "(--tl --tr --al --ar), not both");
  }
  if (!family && !direct) {
    throw ValidationError("model parameters missing: give --q (family) or --tl/--tr (direct)");
  }
  if (family) {
    if (raw.q.empty()) throw ValidationError("family form requires --q");
    c.family = FamilyArgs{parse_complex(raw.t), parse_complex(raw.q), raw.rho, raw.phi};
  } else {
    c.direct = DirectArgs{parse_complex(raw.tl), parse_complex(raw.tr), parse_complex(raw.al),
                          parse_complex(raw.ar)};
  }
  c.frame = raw.frame == "Ht" ? Frame::transformed : Frame::bare;
}

void fill_output(RunConfig& c, const RawArgs& raw) {
  c.format = raw.format == "json" ? Format::json : Format::csv;
  c.out_path = raw.out;
}

// Shared metadata: parameters, derived q and t, range-guard status.
void model_metadata(const RunConfig& c, const ModelParams& p, Table& t) {
  t.metadata.emplace_back("version", std::string(NHLATTICE_VERSION));
  t.metadata.emplace_back("command", std::string(command_name(c.command)));
  t.metadata.emplace_back("n_sites", static_cast<long long>(c.n_sites));
  t.metadata.emplace_back("frame", std::string(frame_name(c.frame)));
  if (c.family) {
    t.metadata.emplace_back("family_t", c.family->t);
    t.metadata.emplace_back("family_q", c.family->q);
    t.metadata.emplace_back("rho", c.family->rho);
    t.metadata.emplace_back("phi", c.family->phi);
  }
  t.metadata.emplace_back("t_left", p.t_left);
  t.metadata.emplace_back("t_right", p.t_right);
  t.metadata.emplace_back("alpha_left", p.alpha_left);
  t.metadata.emplace_back("alpha_right", p.alpha_right);
  t.metadata.emplace_back("q", p.q());
  t.metadata.emplace_back("t", p.t());
  t.metadata.emplace_back("range_guard_value", std::abs(p.q().real()) * c.n_sites);
  t.metadata.emplace_back("range_guard_limit", kRangeGuard);
  t.metadata.emplace_back("range_guard_ok", within_range_guard(c.n_sites, p.q()));
}

std::vector<double> linear_grid(double from, double to, int steps) {
  if (steps < 1) throw ValidationError("--steps must be >= 1");
  if (!std::isfinite(from) || !std::isfinite(to) || from == to) {
    throw ValidationError("--from and --to must be finite and distinct");
  }
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) grid[i] = from + (to - from) * i / steps;
  grid.back() = to;
  return grid;
}

Table spectrum_table(const RunConfig& c) {
  const ModelParams p = c.params();
  const EigenSystem es = eigensystem(build_matrix(p, c.frame), {.label = "spectrum"});
  Table t;
  model_metadata(c, p, t);
  t.metadata.emplace_back("scale", es.scale);
  t.metadata.emplace_back("max_residual", es.max_residual);
  t.metadata.emplace_back("cond_v", es.cond_v);
  t.columns = {"index", "re", "im", "residual"};
  for (std::size_t k = 0; k < es.size(); ++k) {
    t.rows.push_back({static_cast<long long>(k), es.eigenvalues[k].real(),
                      es.eigenvalues[k].imag(), es.residuals[k]});
  }
  return t;
}

Table sweep_table(const RunConfig& c) {
  const SweepBase base = c.sweep_base();
  const ModelParams p = params_at(base, c.axis, c.from);
  const SweepTrace trace =
      sweep(base, c.axis, linear_grid(c.from, c.to, c.steps), {.frame = c.frame});
  Table t;
  model_metadata(c, p, t);
  t.metadata.emplace_back("axis", std::string(to_string(c.axis)));
  t.metadata.emplace_back("from", c.from);
  t.metadata.emplace_back("to", c.to);
  t.metadata.emplace_back("steps", static_cast<long long>(c.steps));
  std::string unresolved;
  double max_cost = 0.0;
  for (std::size_t s = 0; s < trace.degeneracy_flags.size(); ++s) {
    if (trace.degeneracy_flags[s]) unresolved += (unresolved.empty() ? "" : ";") + std::to_string(s);
    max_cost = std::max(max_cost, trace.match_cost[s]);
  }
  t.metadata.emplace_back("unresolved_steps", unresolved);
  t.metadata.emplace_back("max_match_cost", max_cost);
  t.columns = {"param", "branch", "re", "im", "degenerate_flag"};
  for (std::size_t i = 0; i < trace.grid.size(); ++i) {
    for (std::size_t b = 0; b < trace.branch_count(); ++b) {
      const Complex z = trace.trajectories[b][i];
      t.rows.push_back({trace.grid[i], static_cast<long long>(b), z.real(), z.imag(),
                        static_cast<long long>(trace.degenerate[b][i] ? 1 : 0)});
    }
  }
  return t;
}

Table ep_table(const RunConfig& c) {
  const SweepBase base = c.sweep_base();
  const ModelParams p = params_at(base, c.axis, c.from);
  EPOptions opts;
  opts.coarse_steps = c.steps;
  opts.frame = c.frame;
  opts.include_avoided = c.include_avoided;
  const std::vector<EPReport> reports = find_exceptional_points(base, c.axis, c.from, c.to, opts);
  Table t;
  model_metadata(c, p, t);
  t.metadata.emplace_back("axis", std::string(to_string(c.axis)));
  t.metadata.emplace_back("from", c.from);
  t.metadata.emplace_back("to", c.to);
  t.metadata.emplace_back("steps", static_cast<long long>(c.steps));
  t.metadata.emplace_back("include_avoided", c.include_avoided);
  t.columns = {"parameter",   "min_gap",      "cond_v",       "delta_re",
               "delta_im",    "classification", "cluster_size", "geometric_multiplicity",
               "cluster_diameter", "center_re", "center_im",   "scale"};
  for (const EPReport& r : reports) {
    const Cell dre = r.delta_value ? Cell{r.delta_value->real()} : Cell{};
    const Cell dim = r.delta_value ? Cell{r.delta_value->imag()} : Cell{};
    t.rows.push_back({r.parameter_value, r.min_gap, r.cond_v_at_point, dre, dim,
                      std::string(to_string(r.classification)),
                      static_cast<long long>(r.cluster_size),
                      static_cast<long long>(r.geometric_multiplicity), r.cluster_diameter,
                      r.cluster_center.real(), r.cluster_center.imag(), r.scale});
  }
  return t;
}

Table skin_table(const RunConfig& c) {
  const ModelParams p = c.params();
  const EigenSystem es = skin_eigensystem(p, c.frame);
  const SkinProfile right = density_profile(es, ModeSide::right);
  const SkinProfile left = density_profile(es, ModeSide::left);
  Table t;
  model_metadata(c, p, t);
  for (const auto& [name, prof] : {std::pair{"right", &right}, std::pair{"left", &left}}) {
    const std::string n(name);
    t.metadata.emplace_back("rate_" + n, prof->decay_rate);
    t.metadata.emplace_back("r2_" + n, prof->fit_r2);
    t.metadata.emplace_back("ipr_mean_" + n, prof->ipr_mean);
    t.metadata.emplace_back("side_" + n, std::string(to_string(prof->side)));
    t.metadata.emplace_back("excluded_sites_" + n,
                            static_cast<long long>(prof->excluded_sites.size()));
  }
  t.metadata.emplace_back("trusted", right.trusted);
  t.metadata.emplace_back("cond_v", es.cond_v);
  t.columns = {"site", "density_right", "density_left"};
  for (std::size_t i = 0; i < right.densities.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i + 1), right.densities[i], left.densities[i]});
  }
  return t;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const std::vector<CheckResult> checks = verify_suite(c.quick);
  bool ok = true;
  for (const CheckResult& r : checks) ok = ok && r.passed;
  if (c.format == Format::json) {
    Table t;
    t.metadata.emplace_back("version", std::string(NHLATTICE_VERSION));
    t.metadata.emplace_back("command", std::string("verify"));
    t.metadata.emplace_back("quick", c.quick);
    t.metadata.emplace_back("passed", ok);
    t.columns = {"check", "passed", "detail"};
    for (const CheckResult& r : checks) {
      t.rows.push_back({r.name, std::string(r.passed ? "true" : "false"), r.detail});
    }
    write_json(t, out);
  } else {
    for (const CheckResult& r : checks) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
    out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw ValidationError("empty complex number");
  if (text.back() != 'i') return {parse_real(text, text), 0.0};
  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+" || body == "-") {
      return {0.0, body == "-" ? -1.0 : 1.0};
    }
    return {0.0, parse_real(body, text)};
  }
  const std::string_view im = body.substr(split);
  const double imag = im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im, text);
  return {parse_real(body.substr(0, split), text), imag};
}

std::string format_double(double x) {
  char buf[64];
  // Fold -0 into 0 so sign-of-zero noise does not reach the output.
  std::snprintf(buf, sizeof buf, "%.16e", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "i";
}

ModelParams RunConfig::params() const {
  if (family) {
    const BoundaryFamily f{family->rho, family->phi, family->q, family->t};
    return f.expand(n_sites);
  }
  if (direct) {
    ModelParams p;
    p.n_sites = n_sites;
    p.t_left = direct->t_left;
    p.t_right = direct->t_right;
    p.alpha_left = direct->alpha_left;
    p.alpha_right = direct->alpha_right;
    p.validate();
    return p;
  }
  throw ValidationError("no model parameters");
}

SweepBase RunConfig::sweep_base() const {
  SweepBase base;
  base.n_sites = n_sites;
  if (family) {
    base.model = BoundaryFamily{family->rho, family->phi, family->q, family->t};
  } else {
    base.model = params();
  }
  return base;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Spectra, exceptional points and skin profiles of the Hatano-Nelson lattice "
               "with generalized boundary conditions"};
  app.name(args.empty() ? "nhlattice" : args.front());
  app.require_subcommand(1);
  RawArgs raw;

  CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalues with residuals");
  const ModelOptions spectrum_model = add_model_options(spectrum, raw);
  add_output_options(spectrum, raw);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Eigenvalue trajectories along an axis");
  const ModelOptions sweep_model = add_model_options(sweep_cmd, raw);
  add_output_options(sweep_cmd, raw);
  sweep_cmd->add_option("--axis", raw.axis, "rho, r or phi")->required();
  sweep_cmd->add_option("--from", raw.from, "First grid value")->required();
  sweep_cmd->add_option("--to", raw.to, "Last grid value")->required();
  sweep_cmd->add_option("--steps", raw.steps, "Number of grid intervals")->required();

  CLI::App* ep = app.add_subcommand("ep", "Locate and classify eigenvalue coalescences");
  const ModelOptions ep_model = add_model_options(ep, raw);
  add_output_options(ep, raw);
  CLI::Option* scan_r = ep->add_option("--scan-r", raw.scan_r, "Scan r over [A, B]")
                            ->expected(2)
                            ->type_name("A B");
  CLI::Option* ep_axis = ep->add_option("--axis", raw.axis, "rho, r or phi");
  ep->add_option("--from", raw.from, "Scan start");
  ep->add_option("--to", raw.to, "Scan end");
  raw.steps = 400;
  ep->add_option("--steps", raw.steps, "Coarse grid intervals (default 400)");
  ep->add_flag("--include-avoided", raw.include_avoided, "Also report non-coalescing minima");
  scan_r->excludes(ep_axis);

  CLI::App* skin = app.add_subcommand("skin", "Average right/left mode densities and decay fits");
  const ModelOptions skin_model = add_model_options(skin, raw);
  add_output_options(skin, raw);

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_flag("--quick", raw.quick, "Smaller grids and fewer random draws");
  add_output_options(verify, raw);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  RunConfig c;
  if (spectrum->parsed()) {
    c.command = Command::spectrum;
    fill_model(c, raw, spectrum_model);
  } else if (sweep_cmd->parsed()) {
    c.command = Command::sweep;
    fill_model(c, raw, sweep_model);
    c.axis = parse_axis(raw.axis);
    c.from = raw.from;
    c.to = raw.to;
    c.steps = raw.steps;
  } else if (ep->parsed()) {
    c.command = Command::ep;
    fill_model(c, raw, ep_model);
    if (scan_r->count() > 0) {
      c.axis = Axis::r;
      c.from = raw.scan_r.at(0);
      c.to = raw.scan_r.at(1);
    } else if (ep_axis->count() > 0) {
      c.axis = parse_axis(raw.axis);
      c.from = raw.from;
      c.to = raw.to;
    } else {
      throw ValidationError("ep requires --scan-r A B or --axis with --from/--to");
    }
    c.steps = raw.steps;
    c.include_avoided = raw.include_avoided;
  } else if (skin->parsed()) {
    c.command = Command::skin;
    fill_model(c, raw, skin_model);
  } else {
    c.command = Command::verify;
    c.quick = raw.quick;
  }
  fill_output(c, raw);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  // Render fully before touching the sink so a failure never leaves a partial file.
  std::ostringstream buffer;
  int code = kExitOk;
  thread_count();  // rejects a malformed NH_LATTICE_THREADS even for serial commands
  if (config.command == Command::verify) {
    code = run_verify(config, buffer);
  } else {
    Table table;
    switch (config.command) {
      case Command::spectrum:
        table = spectrum_table(config);
        break;
      case Command::sweep:
        table = sweep_table(config);
        break;
      case Command::ep:
        table = ep_table(config);
        break;
      case Command::skin:
        table = skin_table(config);
        break;
      case Command::verify:
        break;
    }
    if (config.format == Format::json) {
      write_json(table, buffer);
    } else {
      write_csv(table, buffer);
    }
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out_path.empty()) {
    file.open(config.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot open output file '" + config.out_path + "'");
    sink = &file;
  }
  *sink << buffer.str();
  sink->flush();
  if (!*sink) {
    err << "error: failed writing output\n";
    return kExitValidation;
  }
  return code;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<RunConfig> config = parse_args(args, out);
    if (!config) return kExitOk;
    return run(*config, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace nhlattice::cli
