// Command-line front end: presets, spectra, thermodynamic points,
// isentropes, single cycles and 2-D sweeps. All physics lives in the
// library; this file only parses flags and formats output.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trimer/cycles.hpp"
#include "trimer/errors.hpp"
#include "trimer/params_io.hpp"
#include "trimer/sweep.hpp"
#include "trimer/thermodynamics.hpp"

namespace {

using namespace trimer;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " from \"" + s + "\"");
  }
}

Vec3 parse_vec3(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw ValidationError(what + " must be three comma-separated numbers");
  return {parse_double(parts[0], what), parse_double(parts[1], what),
          parse_double(parts[2], what)};
}

// Either a full 3-vector "bx,by,bz" or a bare magnitude along `direction`.
MagneticField parse_field(const std::string& s, const Vec3& direction) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return field_along(direction, parse_double(parts[0], "field"));
  if (parts.size() == 3)
    return {parse_double(parts[0], "field"), parse_double(parts[1], "field"),
            parse_double(parts[2], "field")};
  throw ValidationError("field must be a magnitude or three comma-separated numbers");
}

GridAxis parse_axis(const std::string& s, AxisVariable var, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ValidationError(what + " must be an axis spec min:max:count");
  GridAxis ax;
  ax.variable = var;
  ax.min = parse_double(parts[0], what);
  ax.max = parse_double(parts[1], what);
  const double cnt = parse_double(parts[2], what);
  ax.count = static_cast<int>(cnt);
  if (ax.count != cnt || ax.count < 2) throw ValidationError(what + " count must be an integer >= 2");
  return ax;
}

Bracket parse_bracket(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw ValidationError(what + " must be \"lo,hi\"");
  return {parse_double(parts[0], what), parse_double(parts[1], what)};
}

std::string fmt(double v, const char* spec) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string f17(double v) { return fmt(v, "%.17g"); }
std::string f12(double v) { return fmt(v, "%.12g"); }
std::string f6(double v) { return fmt(v, "%.6g"); }

double snap(double x, double tol) { return std::abs(x) < tol ? 0.0 : x; }

void write_output(const std::string& path, const std::string& data, bool binary) {
  if (path.empty() || path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ValidationError("cannot open output file \"" + path + "\"");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

struct CommonOpts {
  std::string compound = "cu3-as";
  std::string params_file;
  std::string direction = "0,0,1";
  std::string format = "human";
  std::string output;

  CompoundParams resolve() const {
    if (!params_file.empty()) return load_params_file(params_file);
    return preset(compound);
  }
  Vec3 dir() const { return normalized(parse_vec3(direction, "direction")); }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
  auto* c = cmd->add_option("--compound", o.compound, "preset name (cu3-as, cu3-sb)");
  auto* p = cmd->add_option("--params", o.params_file, "JSON parameter file");
  c->excludes(p);
  p->excludes(c);
  cmd->add_option("--direction", o.direction, "field direction as x,y,z (default 0,0,1)");
  if (with_format)
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"human", "csv"}));
  cmd->add_option("-o,--output", o.output, "output path (default stdout)");
}

int run_spectrum(const CommonOpts& common, const std::string& field_str) {
  const CompoundParams params = common.resolve();
  const MagneticField field = parse_field(field_str, common.dir());
  const Spectrum spec = diagonalize(build_hamiltonian(params, field));
  std::string out;
  if (common.format == "csv") {
    out = "i,energy_k\n";
    for (int i = 0; i < 8; ++i)
      out += std::to_string(i + 1) + "," + f17(spec.eigenvalues[i]) + "\n";
  } else {
    for (int i = 0; i < 8; ++i)
      out += "e" + std::to_string(i + 1) + " = " + f12(spec.eigenvalues[i]) + " K\n";
  }
  write_output(common.output, out, false);
  return 0;
}

int run_thermo(const CommonOpts& common, const std::string& field_str, double temp) {
  const CompoundParams params = common.resolve();
  const MagneticField field = parse_field(field_str, common.dir());
  const ThermoPoint pt = thermo_point(params, temp, field);
  std::string out;
  if (common.format == "csv") {
    out = "t,bx,by,bz,u,s,p1,p2,p3,p4,p5,p6,p7,p8\n";
    out += f17(pt.temperature) + "," + f17(field.bx) + "," + f17(field.by) + "," + f17(field.bz);
    out += "," + f17(pt.internal_energy) + "," + f17(pt.entropy);
    for (double p : pt.probs) out += "," + f17(p);
    out += "\n";
  } else {
    out += "T = " + f6(pt.temperature) + " K\n";
    out += "B = (" + f6(field.bx) + ", " + f6(field.by) + ", " + f6(field.bz) + ") T\n";
    out += "U = " + f6(pt.internal_energy) + " K\n";
    out += "S = " + f6(pt.entropy) + " k_B\n";
    out += "p =";
    for (double p : pt.probs) out += " " + f6(p);
    out += "\n";
  }
  write_output(common.output, out, false);
  return 0;
}

CycleKind parse_kind(const std::string& s) {
  if (s == "carnot") return CycleKind::carnot;
  if (s == "otto") return CycleKind::otto;
  if (s == "stirling") return CycleKind::stirling;
  throw ValidationError("unknown cycle kind \"" + s + "\" (carnot, otto, stirling)");
}

std::string cycle_csv(const CycleResult& r, double x, double y, double tol) {
  std::string out = "x,y,mode,w_net,q_in,q_out,eff,kappa\n";
  const double nan = std::nan("");
  out += f17(x) + "," + f17(y) + "," + std::string(to_string(r.mode));
  out += "," + f17(snap(r.w_net, tol)) + "," + f17(snap(r.q_in, tol)) + "," +
         f17(snap(r.q_out, tol));
  out += "," + f17(r.efficiency ? *r.efficiency : (r.cop ? *r.cop : nan));
  out += "," + f17(r.kappa ? *r.kappa : nan);
  out += "\n";
  return out;
}

std::string cycle_human(const CycleResult& r, const CompoundParams& params, double t_l,
                        double t_h, double b0, double b1, double tol) {
  std::string out;
  out += "cycle: " + std::string(to_string(r.kind)) + "  compound: " + params.name + "\n";
  out += "t_l = " + f6(t_l) + " K   t_h = " + f6(t_h) + " K   b0 = " + f6(b0) +
         " T   b1 = " + f6(b1) + " T\n";
  if (r.strokes) {
    out += "stroke  kind        heat(K)       work(K)       dU(K)\n";
    for (const auto& s : *r.strokes) {
      char line[160];
      std::snprintf(line, sizeof line, "%-7s %-11s %-13.6g %-13.6g %-13.6g\n",
                    std::string(s.label).c_str(), std::string(to_string(s.kind)).c_str(),
                    s.heat, s.work, s.delta_u);
      out += line;
    }
  } else {
    out += "stroke detail unavailable: no isentropic field in the bracket\n";
  }
  out += "w_net = " + f6(snap(r.w_net, tol)) + " K\n";
  out += "q_in  = " + f6(snap(r.q_in, tol)) + " K (hot bath)\n";
  out += "q_out = " + f6(snap(r.q_out, tol)) + " K (cold bath)\n";
  out += "closure |w_net - (q_in+q_out)| = " + f6(std::abs(r.w_net - (r.q_in + r.q_out))) + "\n";
  out += "mode: " + std::string(to_string(r.mode)) + "\n";
  if (r.efficiency) out += "efficiency eta = " + f6(*r.efficiency) + "\n";
  if (r.cop) out += "COP = " + f6(*r.cop) + "\n";
  if (r.kappa) out += "kappa = " + f6(*r.kappa) + "\n";
  return out;
}

int run_cycle(const CommonOpts& common, const std::string& kind_str, double t_l, double t_h,
              double b0, double b1, const std::string& bracket_str, double tol) {
  const CompoundParams params = common.resolve();
  const Vec3 dir = common.dir();
  const CycleKind kind = parse_kind(kind_str);
  const Bracket bracket = parse_bracket(bracket_str, "field bracket");
  CycleResult r;
  switch (kind) {
    case CycleKind::carnot:
      r = carnot_cycle(params, t_l, t_h, b0, b1, dir, bracket, true, tol);
      break;
    case CycleKind::otto:
      r = otto_cycle(params, t_l, t_h, b0, b1, dir, tol);
      break;
    case CycleKind::stirling:
      r = stirling_cycle(params, t_l, t_h, b0, b1, dir, tol);
      break;
  }
  const std::string out = common.format == "csv" ? cycle_csv(r, b0, b1, tol)
                                                 : cycle_human(r, params, t_l, t_h, b0, b1, tol);
  write_output(common.output, out, false);
  return 0;
}

int run_sweep(const CommonOpts& common, const std::string& kind_str, const std::string& plane,
              double t_l, const std::string& th_str, const std::string& b0_str,
              const std::string& b1_str, const std::string& csv_path,
              const std::string& pgm_mode_path, const std::string& pgm_eff_path, bool serial,
              double tol) {
  const CompoundParams params = common.resolve();
  const Vec3 dir = common.dir();
  const CycleKind kind = parse_kind(kind_str);
  SweepOptions opts;
  opts.parallel = !serial;
  opts.classify_tol = tol;

  SweepResult res;
  if (plane == "b0b1") {
    if (th_str.empty() || b0_str.empty() || b1_str.empty())
      throw ValidationError("plane b0b1 needs --th (scalar), --b0 and --b1 (axis specs)");
    const double t_h = parse_double(th_str, "--th");
    const GridAxis ax0 = parse_axis(b0_str, AxisVariable::b0, "--b0");
    const GridAxis ax1 = parse_axis(b1_str, AxisVariable::b1, "--b1");
    res = sweep_b0_b1(params, t_l, t_h, ax0, ax1, kind, dir, opts);
  } else if (plane == "b1th") {
    if (th_str.empty() || b0_str.empty() || b1_str.empty())
      throw ValidationError("plane b1th needs --b0 (scalar), --b1 and --th (axis specs)");
    const double b0 = parse_double(b0_str, "--b0");
    const GridAxis ax1 = parse_axis(b1_str, AxisVariable::b1, "--b1");
    const GridAxis axt = parse_axis(th_str, AxisVariable::th, "--th");
    res = sweep_b1_th(params, t_l, b0, ax1, axt, kind, dir, opts);
  } else {
    throw ValidationError("unknown sweep plane \"" + plane + "\" (b0b1, b1th)");
  }

  const ModeCounts& m = res.diagnostics;
  std::cerr << "modes: engine=" << m.engine << " refrigerator=" << m.refrigerator
            << " heater=" << m.heater << " accelerator=" << m.accelerator << " none=" << m.none
            << " error=" << m.error << "\n";

  const bool any_output = !csv_path.empty() || !pgm_mode_path.empty() || !pgm_eff_path.empty();
  if (!csv_path.empty() || !any_output) write_output(csv_path, export_csv(res), false);
  if (!pgm_mode_path.empty()) write_output(pgm_mode_path, export_pgm(res, PgmLayer::mode), true);
  if (!pgm_eff_path.empty())
    write_output(pgm_eff_path, export_pgm(res, PgmLayer::efficiency), true);

  const long total = static_cast<long>(res.cells.size());
  return m.error == total ? 3 : 0;
}

int run_isentrope(const CommonOpts& common, double t0, double b0, double b_max, int steps,
                  const std::string& t_bracket_str) {
  if (steps < 2) throw ValidationError("--steps must be >= 2");
  const CompoundParams params = common.resolve();
  const Vec3 dir = common.dir();
  const Bracket t_bracket = parse_bracket(t_bracket_str, "temperature bracket");
  std::vector<double> grid(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i)
    grid[static_cast<size_t>(i)] = b0 + (b_max - b0) * (static_cast<double>(i) / (steps - 1));
  const auto pts =
      trace_isentrope(params, t0, field_along(dir, b0), grid, dir, t_bracket);
  std::string out = "b,t\n";
  for (const auto& pt : pts) {
    out += f17(pt.field_magnitude) + ",";
    out += pt.temperature ? f17(*pt.temperature) : "nan";
    out += "\n";
  }
  write_output(common.output, out, false);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-trimer quantum thermal machine simulator"};
  app.require_subcommand(1);

  // spectrum
  CommonOpts spectrum_opts;
  std::string spectrum_field = "0,0,0";
  auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues of the Hamiltonian");
  add_common(cmd_spectrum, spectrum_opts);
  cmd_spectrum->add_option("--field", spectrum_field, "field: magnitude or bx,by,bz (Tesla)");

  // thermo
  CommonOpts thermo_opts;
  std::string thermo_field = "0,0,0";
  double thermo_temp = 0.0;
  auto* cmd_thermo = app.add_subcommand("thermo", "equilibrium U, S and populations");
  add_common(cmd_thermo, thermo_opts);
  cmd_thermo->add_option("--field", thermo_field, "field: magnitude or bx,by,bz (Tesla)");
  cmd_thermo->add_option("-T,--temp", thermo_temp, "temperature (K)")->required();

  // cycle
  CommonOpts cycle_opts;
  std::string cycle_kind;
  double cy_tl = 0.0, cy_th = 0.0, cy_b0 = 0.0, cy_b1 = 0.0, cy_tol = 1e-12;
  std::string cy_bracket = "0,10";
  auto* cmd_cycle = app.add_subcommand("cycle", "evaluate one cycle");
  cmd_cycle->add_option("kind", cycle_kind, "carnot | otto | stirling")->required();
  add_common(cmd_cycle, cycle_opts);
  cmd_cycle->add_option("--tl", cy_tl, "cold bath temperature (K)")->required();
  cmd_cycle->add_option("--th", cy_th, "hot bath temperature (K)")->required();
  cmd_cycle->add_option("--b0", cy_b0, "field magnitude at a (T)")->required();
  cmd_cycle->add_option("--b1", cy_b1, "field magnitude at c (T)")->required();
  cmd_cycle->add_option("--field-bracket", cy_bracket, "bracket lo,hi for adiabat solves (T)");
  cmd_cycle->add_option("--tol", cy_tol, "zero-snap tolerance for mode classification (K)");

  // sweep
  CommonOpts sweep_opts;
  std::string sweep_kind, sweep_plane, sw_th, sw_b0, sw_b1;
  std::string sw_csv, sw_pgm_mode, sw_pgm_eff;
  double sw_tl = 0.0, sw_tol = 1e-12;
  bool sw_serial = false;
  auto* cmd_sweep = app.add_subcommand("sweep", "cycle over a 2-D grid");
  cmd_sweep->add_option("kind", sweep_kind, "carnot | otto | stirling")->required();
  cmd_sweep->add_option("plane", sweep_plane, "b0b1 | b1th")->required();
  add_common(cmd_sweep, sweep_opts, /*with_format=*/false);
  cmd_sweep->add_option("--tl", sw_tl, "cold bath temperature (K)")->required();
  cmd_sweep->add_option("--th", sw_th, "hot bath: scalar (b0b1) or axis min:max:count (b1th)");
  cmd_sweep->add_option("--b0", sw_b0, "b0: axis min:max:count (b0b1) or scalar (b1th)");
  cmd_sweep->add_option("--b1", sw_b1, "b1 axis min:max:count");
  cmd_sweep->add_option("--csv", sw_csv, "CSV output path (- for stdout)");
  cmd_sweep->add_option("--pgm-mode", sw_pgm_mode, "mode-layer PGM output path");
  cmd_sweep->add_option("--pgm-eff", sw_pgm_eff, "efficiency-layer PGM output path");
  cmd_sweep->add_flag("--serial", sw_serial, "use the serial reference loop");
  cmd_sweep->add_option("--tol", sw_tol, "zero-snap tolerance for mode classification (K)");

  // isentrope
  CommonOpts isen_opts;
  double is_t0 = 0.0, is_b0 = 0.0, is_bmax = 0.0;
  int is_steps = 61;
  std::string is_tbracket = "1e-3,50";
  auto* cmd_isen = app.add_subcommand("isentrope", "T(B) at constant entropy");
  add_common(cmd_isen, isen_opts, /*with_format=*/false);
  cmd_isen->add_option("--t0", is_t0, "starting temperature (K)")->required();
  cmd_isen->add_option("--b0", is_b0, "starting field magnitude (T)");
  cmd_isen->add_option("--bmax", is_bmax, "final field magnitude (T)")->required();
  cmd_isen->add_option("--steps", is_steps, "number of grid points (default 61)");
  cmd_isen->add_option("--t-bracket", is_tbracket, "temperature bracket lo,hi (K)");

  // preset
  auto* cmd_preset = app.add_subcommand("preset", "list or show built-in compounds");
  cmd_preset->require_subcommand(1);
  auto* cmd_preset_list = cmd_preset->add_subcommand("list", "list preset names");
  std::string preset_name;
  auto* cmd_preset_show = cmd_preset->add_subcommand("show", "print one preset as JSON");
  cmd_preset_show->add_option("name", preset_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_spectrum)) return run_spectrum(spectrum_opts, spectrum_field);
    if (app.got_subcommand(cmd_thermo)) return run_thermo(thermo_opts, thermo_field, thermo_temp);
    if (app.got_subcommand(cmd_cycle))
      return run_cycle(cycle_opts, cycle_kind, cy_tl, cy_th, cy_b0, cy_b1, cy_bracket, cy_tol);
    if (app.got_subcommand(cmd_sweep))
      return run_sweep(sweep_opts, sweep_kind, sweep_plane, sw_tl, sw_th, sw_b0, sw_b1, sw_csv,
                       sw_pgm_mode, sw_pgm_eff, sw_serial, sw_tol);
    if (app.got_subcommand(cmd_isen))
      return run_isentrope(isen_opts, is_t0, is_b0, is_bmax, is_steps, is_tbracket);
    if (app.got_subcommand(cmd_preset)) {
      if (cmd_preset->got_subcommand(cmd_preset_list)) {
        for (const auto& n : preset_names()) std::cout << n << "\n";
        return 0;
      }
      if (cmd_preset->got_subcommand(cmd_preset_show)) {
        std::cout << params_to_json_text(preset(preset_name));
        return 0;
      }
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
