// Acceptance suite. Every criterion runs at its stated tolerance and prints
// exactly one PASS/FAIL line; the process exits nonzero if any fail.
// TRIMERSIM_BIN (injected by the build) points at the CLI for the
// end-to-end determinism checks.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trimer/cycles.hpp"
#include "trimer/errors.hpp"
#include "trimer/sweep.hpp"
#include "trimer/thermodynamics.hpp"

using namespace trimer;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;
const Vec3 zhat{0, 0, 1};

void report(int id, const char* name, bool pass, const std::string& detail = "") {
  std::printf("criterion %2d %s  %s%s%s\n", id, pass ? "PASS" : "FAIL", name,
              detail.empty() ? "" : "  [", detail.empty() ? "" : (detail + "]").c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

const CompoundParams& cu3as() {
  static const CompoundParams p = preset("cu3-as");
  return p;
}

CompoundParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uj(-6.0, 6.0);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  std::uniform_real_distribution<double> ug(0.5, 3.0);
  CompoundParams p;
  p.name = "random";
  for (int i = 0; i < 3; ++i) {
    p.bonds[i] = {uj(rng), uj(rng), uj(rng)};
    p.dm[i] = {ud(rng), ud(rng), ud(rng)};
    p.g[i] = {ug(rng), ug(rng), ug(rng)};
  }
  return p;
}

HermitianMatrix8 random_hermitian(std::mt19937_64& rng, double scale = 5.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  HermitianMatrix8 m;
  for (int r = 0; r < 8; ++r) {
    m(r, r) = u(rng);
    for (int c = r + 1; c < 8; ++c) {
      const cplx v(u(rng), u(rng));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

Spectrum spectrum_from_levels(const std::array<double, 8>& levels) {
  Spectrum s;
  s.eigenvalues = levels;
  for (int i = 0; i < 8; ++i) s.eigenvectors[i * 8 + i] = 1.0;
  return s;
}

// ---------------------------------------------------------------------------
// 1. Carnot analytic efficiencies on the four reference temperature pairs.

void criterion_1() {
  const std::array<std::pair<double, double>, 4> panels = {
      {{0.5, 1.0}, {0.7, 1.0}, {0.7, 1.5}, {1.0, 1.5}}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& [tl, th] : panels) {
    const GridAxis ax{AxisVariable::b0, 0.0, 6.0, 200};
    const GridAxis ay{AxisVariable::b1, 0.0, 6.0, 200};
    const auto t0 = clock_type::now();
    const auto res = sweep_b0_b1(cu3as(), tl, th, ax, ay, CycleKind::carnot, zhat);
    const double secs = seconds_since(t0);
    const double eta_expected = 1.0 - tl / th;
    const double cop_expected = th / (th - tl);
    long engines = 0, fridges = 0, eta_bad = 0, cop_bad = 0;
    for (const auto& cell : res.cells) {
      if (!cell.ok) continue;
      if (cell.mode == OperationMode::engine) {
        ++engines;
        if (std::abs(*cell.efficiency - eta_expected) > 1e-10) ++eta_bad;
      } else if (cell.mode == OperationMode::refrigerator) {
        ++fridges;
        if (std::abs(*cell.cop - cop_expected) > 1e-9) ++cop_bad;
      }
    }
    const bool panel_ok =
        engines > 0 && fridges > 0 && eta_bad == 0 && cop_bad == 0 && secs < 30.0;
    ok = ok && panel_ok;
    detail << "(" << tl << "," << th << "): " << secs << " s"
           << (panel_ok ? "" : " MISMATCH") << "; ";
  }
  report(1, "Carnot analytic efficiencies on four 200x200 sweeps", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 2. Carnot mode geometry along the b0 = 0 column at (0.5, 1) K.

void criterion_2() {
  auto mode_at = [&](double b1) {
    return carnot_cycle(cu3as(), 0.5, 1.0, 0.0, b1, zhat, Bracket{0, 10}, false).mode;
  };
  bool engine_band = true;
  for (double b1 = 2.0; b1 <= 6.0 + 1e-9; b1 += 0.25)
    engine_band = engine_band && (mode_at(b1) == OperationMode::engine);

  const bool probe_low = mode_at(0.9) != OperationMode::engine;
  const bool probe_high = mode_at(1.5) == OperationMode::engine;

  double boundary = -1.0;
  for (double b1 = 0.5; b1 <= 2.0; b1 += 0.01) {
    if (mode_at(b1) == OperationMode::engine) {
      boundary = b1;
      break;
    }
  }
  const bool boundary_ok = boundary >= 1.0 && boundary <= 1.4;
  std::ostringstream detail;
  detail << "boundary at B1 = " << boundary << " T";
  report(2, "Carnot engine band B1 = 2..6 T with boundary at 1.2 +/- 0.2 T",
         engine_band && probe_low && probe_high && boundary_ok, detail.str());
}

// ---------------------------------------------------------------------------
// 3. Otto refrigerator band at t_l = 0.5 K, t_h = 1 K, b0 = 0.1 T.

void criterion_3() {
  auto mode_at = [&](double b1) { return otto_cycle(cu3as(), 0.5, 1.0, 0.1, b1, zhat).mode; };
  const bool probe_ref = mode_at(3.0) == OperationMode::refrigerator;
  const bool probe_acc = mode_at(4.0) == OperationMode::accelerator;

  double onset = -1.0, offset = -1.0;
  for (double b1 = 1.0; b1 <= 4.5; b1 += 0.01) {
    if (mode_at(b1) == OperationMode::refrigerator) {
      if (onset < 0.0) onset = b1;
      offset = b1;
    }
  }
  const bool onset_ok = onset >= 2.2 - 0.3 && onset <= 2.2 + 0.3;
  const bool offset_ok = offset >= 3.8 - 0.3 && offset <= 3.8 + 0.3;
  std::ostringstream detail;
  detail << "band " << onset << " .. " << offset << " T"
         << (onset_ok && offset_ok ? " ok" : " OUT OF RANGE") << "; 3.0 T -> "
         << to_string(mode_at(3.0)) << "; 4.0 T -> " << to_string(mode_at(4.0));
  report(3, "Otto refrigerator band (2.2 .. 3.8 T within 0.3 T) and accelerator at 4 T",
         probe_ref && probe_acc && onset_ok && offset_ok, detail.str());
}

// ---------------------------------------------------------------------------
// 4. Otto efficiency ceiling over the four reference sweeps.

void criterion_4() {
  const std::array<std::pair<double, double>, 4> panels = {
      {{0.5, 1.0}, {0.7, 1.0}, {0.7, 1.5}, {1.0, 1.5}}};
  bool ok = true;
  std::ostringstream detail;
  for (size_t i = 0; i < panels.size(); ++i) {
    const auto [tl, th] = panels[i];
    const GridAxis ax{AxisVariable::b0, 0.0, 6.0, 200};
    const GridAxis ay{AxisVariable::b1, 0.0, 6.0, 200};
    const auto res = sweep_b0_b1(cu3as(), tl, th, ax, ay, CycleKind::otto, zhat);
    double eta_max = 0.0;
    for (const auto& cell : res.cells)
      if (cell.ok && cell.mode == OperationMode::engine)
        eta_max = std::max(eta_max, *cell.efficiency);
    bool panel_ok = eta_max <= 1.0 - tl / th + 1e-9;
    if (i == 0 || i == 2) panel_ok = panel_ok && eta_max <= 0.55;
    ok = ok && panel_ok;
    detail << "(" << tl << "," << th << "): eta_max = " << eta_max << "; ";
  }
  report(4, "Otto engine efficiency stays below the Carnot bound (and 0.55 ceiling)", ok,
         detail.str());
}

// ---------------------------------------------------------------------------
// 5. Stirling mode inversion near the strong-MCE region.

void criterion_5() {
  const auto engine = stirling_cycle(cu3as(), 0.5, 1.0, 4.5, 3.0, zhat);
  const auto accel = stirling_cycle(cu3as(), 0.5, 1.0, 3.0, 4.5, zhat);
  std::ostringstream detail;
  detail << "(4.5,3) -> " << to_string(engine.mode) << ", (3,4.5) -> " << to_string(accel.mode);
  report(5, "Stirling inversion: (4.5,3) T engine, (3,4.5) T accelerator",
         engine.mode == OperationMode::engine && accel.mode == OperationMode::accelerator,
         detail.str());
}

// ---------------------------------------------------------------------------
// 6. First-law closure and per-stroke first law over 1e4 random draws.

struct Draw {
  CompoundParams params;
  double t_l, t_h, b0, b1;
};

bool strokes_ok(const CycleResult& r) {
  if (!r.strokes) return true;
  for (const auto& s : *r.strokes) {
    if (std::abs(s.heat - s.work - s.delta_u) > 1e-10) return false;
    if (s.kind == StrokeKind::adiabatic && s.heat != 0.0) return false;
    if (s.kind == StrokeKind::isochoric && s.work != 0.0) return false;
  }
  return true;
}

void criterion_6() {
  constexpr int kDraws = 10000;
  std::mt19937_64 rng(600613);
  std::uniform_real_distribution<double> ub(0.0, 6.0);
  std::uniform_real_distribution<double> utl(0.05, 2.0);
  std::uniform_real_distribution<double> udt(0.01, 2.0);
  std::vector<Draw> draws;
  draws.reserve(kDraws);
  for (int i = 0; i < kDraws; ++i) {
    Draw d{random_params(rng), 0, 0, ub(rng), ub(rng)};
    d.t_l = utl(rng);
    d.t_h = d.t_l + udt(rng);
    draws.push_back(std::move(d));
  }

  std::vector<char> pass(kDraws, 0);
  std::vector<char> carnot_detailed(kDraws, 0);
  const auto t0 = clock_type::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (int i = 0; i < kDraws; ++i) {
    const Draw& d = draws[static_cast<size_t>(i)];
    bool ok = true;
    try {
      const auto carnot =
          carnot_cycle(d.params, d.t_l, d.t_h, d.b0, d.b1, zhat, Bracket{0, 10}, true);
      ok = ok && std::abs(carnot.w_net - (carnot.q_in + carnot.q_out)) <= 1e-10;
      ok = ok && strokes_ok(carnot);
      if (carnot.strokes) carnot_detailed[static_cast<size_t>(i)] = 1;

      const auto otto = otto_cycle(d.params, d.t_l, d.t_h, d.b0, d.b1, zhat);
      ok = ok && std::abs(otto.w_net - (otto.q_in + otto.q_out)) <= 1e-10;
      ok = ok && otto.strokes.has_value() && strokes_ok(otto);

      const auto stirling = stirling_cycle(d.params, d.t_l, d.t_h, d.b0, d.b1, zhat);
      ok = ok && std::abs(stirling.w_net - (stirling.q_in + stirling.q_out)) <= 1e-10;
      ok = ok && stirling.strokes.has_value() && strokes_ok(stirling);
    } catch (const Error&) {
      ok = false;
    }
    pass[static_cast<size_t>(i)] = ok ? 1 : 0;
  }
  const double secs = seconds_since(t0);
  const long failures = std::count(pass.begin(), pass.end(), 0);
  const long detailed = std::count(carnot_detailed.begin(), carnot_detailed.end(), 1);
  std::ostringstream detail;
  detail << kDraws << " draws x 3 cycles, " << failures << " failures, " << detailed
         << " carnot stroke solves, " << secs << " s";
  report(6, "First-law closure <= 1e-10 and stroke first law over 1e4 random draws",
         failures == 0, detail.str());
}

// ---------------------------------------------------------------------------
// 7. Spectrum oracles and eigensolver identities over 1e3 random inputs.

void criterion_7() {
  bool ok = true;

  CompoundParams iso;
  iso.name = "iso";
  for (int i = 0; i < 3; ++i) iso.bonds[i] = {4.0, 4.0, 4.0};
  const auto casimir = diagonalize(build_hamiltonian(iso, MagneticField{}));
  for (int i = 0; i < 4; ++i) ok = ok && std::abs(casimir.eigenvalues[i] + 3.0) <= 1e-12;
  for (int i = 4; i < 8; ++i) ok = ok && std::abs(casimir.eigenvalues[i] - 3.0) <= 1e-12;

  CompoundParams zeeman;
  zeeman.name = "zeeman";
  for (int i = 0; i < 3; ++i) zeeman.g[i] = {2.0, 2.0, 2.0};
  const auto ladder = diagonalize(build_hamiltonian(zeeman, MagneticField{0, 0, 2.0}));
  const double step = 2.0 * kMuBHat * 2.0;
  const std::array<double, 8> ms = {-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5};
  for (int i = 0; i < 8; ++i)
    ok = ok && std::abs(ladder.eigenvalues[i] - ms[i] * step) <= 1e-12;

  std::mt19937_64 rng(700700);
  long defects = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto h = random_hermitian(rng);
    const auto spec = diagonalize(h);
    const double norm = h.frobenius_norm();

    double residual = 0.0, ortho = 0.0, recon = 0.0, eig_sum = 0.0, eig_sq = 0.0;
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        cplx hv = 0.0, dot = 0.0, vlv = 0.0;
        for (int k = 0; k < 8; ++k) {
          hv += h(r, k) * spec.vec(k, c);
          dot += std::conj(spec.vec(k, r)) * spec.vec(k, c);
          vlv += spec.vec(r, k) * spec.eigenvalues[k] * std::conj(spec.vec(c, k));
        }
        residual += std::norm(hv - spec.vec(r, c) * spec.eigenvalues[c]);
        ortho += std::norm(dot - (r == c ? cplx(1.0) : cplx(0.0)));
        recon += std::norm(vlv - h(r, c));
      }
    for (double e : spec.eigenvalues) {
      eig_sum += e;
      eig_sq += e * e;
    }
    const bool good = std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()) &&
                      std::sqrt(residual) <= 1e-12 * (1.0 + norm) &&
                      std::sqrt(ortho) <= 1e-12 &&
                      std::sqrt(recon) <= 1e-11 * (1.0 + norm) &&
                      std::abs(eig_sum - h.trace().real()) <= 1e-12 * (1.0 + norm) &&
                      std::abs(eig_sq - norm * norm) <= 1e-11 * norm * norm;
    if (!good) ++defects;
  }
  ok = ok && defects == 0;
  std::ostringstream detail;
  detail << defects << " defects over 1000 random Hermitian inputs";
  report(7, "Spectrum oracles (Casimir, Zeeman) and eigensolver identities", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 8. Thermodynamic identities over 1e3 random (spectrum, T) draws.

void criterion_8() {
  std::mt19937_64 rng(808808);
  std::uniform_real_distribution<double> ue(-6.0, 6.0);
  std::uniform_real_distribution<double> ut(std::log(0.05), std::log(1000.0));
  long gibbs_bad = 0, fd_bad = 0, overflow_bad = 0;

  for (int trial = 0; trial < 1000; ++trial) {
    std::array<double, 8> lv;
    const bool cold_case = trial % 5 == 0; // 200 overflow-safety draws at T = 1e-8
    do {
      for (auto& e : lv) e = ue(rng);
      std::sort(lv.begin(), lv.end());
    } while (cold_case && (lv[1] - lv[0]) < 1e-3);
    const auto spec = spectrum_from_levels(lv);
    const double t = cold_case ? 1e-8 : std::exp(ut(rng));

    const double s = entropy(spec, t);
    const double lnz = log_partition(spec, t);
    const double u = internal_energy(spec, t);
    if (std::abs(s - (lnz + u / t)) > 1e-12) ++gibbs_bad;

    const double beta = 1.0 / t;
    const double h = 1e-5 * beta;
    const double fd =
        -(log_partition(spec, 1.0 / (beta + h)) - log_partition(spec, 1.0 / (beta - h))) /
        (2.0 * h);
    if (std::abs(u - fd) > 1e-6 * (1.0 + std::abs(u))) ++fd_bad;

    if (cold_case) {
      const auto p = boltzmann(spec, t);
      double sum = 0.0;
      bool finite = true;
      for (double pi : p) {
        finite = finite && std::isfinite(pi);
        sum += pi;
      }
      if (!finite || std::abs(sum - 1.0) > 1e-12 || p[0] < 1.0 - 1e-12) ++overflow_bad;
    }
  }
  std::ostringstream detail;
  detail << "gibbs " << gibbs_bad << ", finite-difference " << fd_bad << ", overflow "
         << overflow_bad << " failures";
  report(8, "Gibbs identity to 1e-12 and U = -dlnZ/dbeta to 1e-6 over 1e3 draws",
         gibbs_bad == 0 && fd_bad == 0 && overflow_bad == 0, detail.str());
}

// ---------------------------------------------------------------------------
// 9. Isentrope re-substitution and Carnot stroke-detail closure.

void criterion_9() {
  bool ok = true;
  std::ostringstream detail;

  for (double t0 : {0.5, 1.0}) {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(6.0 * i / 60.0);
    const double s0 = thermo_point(cu3as(), t0, MagneticField{}).entropy;
    const auto pts = trace_isentrope(cu3as(), t0, MagneticField{}, grid, zhat);
    long solved = 0, bad = 0;
    for (const auto& pt : pts) {
      if (!pt.temperature) continue;
      ++solved;
      const double s = thermo_point(cu3as(), *pt.temperature,
                                    field_along(zhat, pt.field_magnitude))
                           .entropy;
      if (std::abs(s - s0) > 1e-10) ++bad;
    }
    ok = ok && solved > 0 && bad == 0;
    detail << "t0=" << t0 << ": " << solved << "/" << pts.size() << " solved, " << bad
           << " bad; ";
  }

  long closures = 0, closure_bad = 0;
  for (const auto& [b0, b1] : std::array<std::pair<double, double>, 3>{
           {{0.0, 2.0}, {0.0, 4.7}, {1.0, 3.0}}}) {
    const auto r = carnot_cycle(cu3as(), 0.5, 1.0, b0, b1, zhat, Bracket{0, 10}, true);
    if (!r.strokes) continue;
    ++closures;
    double wsum = 0.0;
    for (const auto& s : *r.strokes) wsum += s.work;
    if (std::abs(wsum - (r.q_in + r.q_out)) > 1e-8) ++closure_bad;
  }
  ok = ok && closures > 0 && closure_bad == 0;
  detail << closures << " stroke closures, " << closure_bad << " bad";
  report(9, "Isentrope re-substitution <= 1e-10; Carnot stroke closure <= 1e-8", ok,
         detail.str());
}

// ---------------------------------------------------------------------------
// 10. Determinism: serial vs parallel sweeps, repeated CLI invocations.

std::string run_cli_capture(const std::string& args, const fs::path& dir, int idx, int* code) {
  const fs::path out = dir / ("out" + std::to_string(idx));
  const std::string cmd =
      std::string("\"") + TRIMERSIM_BIN + "\" " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_10() {
  bool ok = true;
  std::ostringstream detail;

  {
    const GridAxis ax{AxisVariable::b0, 0.0, 6.0, 60};
    const GridAxis ay{AxisVariable::b1, 0.0, 6.0, 60};
    SweepOptions serial;
    serial.parallel = false;
    const auto a = sweep_b0_b1(cu3as(), 0.5, 1.0, ax, ay, CycleKind::otto, zhat, serial);
    const auto b = sweep_b0_b1(cu3as(), 0.5, 1.0, ax, ay, CycleKind::otto, zhat);
    const bool same = export_csv(a) == export_csv(b) &&
                      export_pgm(a, PgmLayer::mode) == export_pgm(b, PgmLayer::mode) &&
                      export_pgm(a, PgmLayer::efficiency) == export_pgm(b, PgmLayer::efficiency);
    ok = ok && same;
    detail << "otto b0b1 serial==parallel: " << (same ? "yes" : "NO") << "; ";
  }
  {
    const GridAxis ax{AxisVariable::b1, 0.0, 6.0, 50};
    const GridAxis ay{AxisVariable::th, 0.2, 3.0, 50};
    SweepOptions serial;
    serial.parallel = false;
    const auto a = sweep_b1_th(cu3as(), 0.1, 0.0, ax, ay, CycleKind::carnot, zhat, serial);
    const auto b = sweep_b1_th(cu3as(), 0.1, 0.0, ax, ay, CycleKind::carnot, zhat);
    const bool same = export_csv(a) == export_csv(b) &&
                      export_pgm(a, PgmLayer::mode) == export_pgm(b, PgmLayer::mode);
    ok = ok && same;
    detail << "carnot b1th serial==parallel: " << (same ? "yes" : "NO") << "; ";
  }
  {
    const fs::path dir = "acceptance_tmp";
    fs::create_directories(dir);
    int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    const std::string sweep_cmd = "sweep stirling b0b1 --tl 0.5 --th 1 --b0 0:6:16 --b1 0:6:16";
    const std::string a = run_cli_capture(sweep_cmd, dir, 0, &c1);
    const std::string b = run_cli_capture(sweep_cmd, dir, 1, &c2);
    const std::string s1 = run_cli_capture("spectrum --compound cu3-as --field 0,0,5 --format csv",
                                           dir, 2, &c3);
    const std::string s2 = run_cli_capture("spectrum --compound cu3-as --field 0,0,5 --format csv",
                                           dir, 3, &c4);
    const bool same = a == b && !a.empty() && s1 == s2 && !s1.empty() && c1 == 0 && c2 == 0 &&
                      c3 == 0 && c4 == 0;
    ok = ok && same;
    detail << "repeated CLI byte-identical: " << (same ? "yes" : "NO");
  }
  report(10, "Determinism: serial vs parallel sweeps and repeated CLI runs", ok, detail.str());
}

} // namespace

int main() {
  const auto t0 = clock_type::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("acceptance: %d of 10 criteria failed (%.1f s total)\n", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
