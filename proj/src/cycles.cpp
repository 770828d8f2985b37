#include "trimer/cycles.hpp"

#include <cmath>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

double snap(double x, double tol) { return std::abs(x) < tol ? 0.0 : x; }

void check_ordering(double t_l, double t_h) {
  if (!(t_l > 0.0) || !(t_l < t_h) || !std::isfinite(t_h))
    throw DomainError("cycle requires 0 < t_l < t_h");
}

void check_field_magnitude(double b, const char* what) {
  if (!std::isfinite(b)) throw DomainError(std::string(what) + " must be finite");
}

CycleResult finish(CycleKind kind, std::optional<std::array<StrokeRecord, 4>> strokes,
                   double w_net, double q_in, double q_out, double tol) {
  CycleResult r;
  r.kind = kind;
  r.strokes = std::move(strokes);
  r.w_net = w_net;
  r.q_in = q_in;
  r.q_out = q_out;
  r.mode = classify_mode(w_net, q_in, q_out, tol);
  if (r.mode != OperationMode::none) {
    const Performance perf = efficiency_and_kappa(r.mode, w_net, q_in, q_out);
    r.efficiency = perf.efficiency;
    r.cop = perf.cop;
    r.kappa = perf.kappa;
  }
  return r;
}

} // namespace

std::string_view to_string(OperationMode m) {
  switch (m) {
    case OperationMode::engine: return "engine";
    case OperationMode::refrigerator: return "refrigerator";
    case OperationMode::heater: return "heater";
    case OperationMode::accelerator: return "accelerator";
    case OperationMode::none: return "none";
  }
  return "none";
}

std::string_view to_string(CycleKind k) {
  switch (k) {
    case CycleKind::carnot: return "carnot";
    case CycleKind::otto: return "otto";
    case CycleKind::stirling: return "stirling";
  }
  return "carnot";
}

std::string_view to_string(StrokeKind k) {
  switch (k) {
    case StrokeKind::isothermal: return "isothermal";
    case StrokeKind::isochoric: return "isochoric";
    case StrokeKind::adiabatic: return "adiabatic";
  }
  return "isothermal";
}

OperationMode classify_mode(double w_net, double q_in, double q_out, double tol) {
  if (!(tol > 0.0)) throw ValidationError("classify_mode: tolerance must be positive");
  const double w = snap(w_net, tol);
  const double qi = snap(q_in, tol);
  const double qo = snap(q_out, tol);
  if (w > 0.0 && qi > 0.0 && qo < 0.0) return OperationMode::engine;
  if (w < 0.0 && qi < 0.0 && qo > 0.0) return OperationMode::refrigerator;
  if (w < 0.0 && qi < 0.0 && qo < 0.0) return OperationMode::heater;
  if (w < 0.0 && qi > 0.0 && qo < 0.0) return OperationMode::accelerator;
  return OperationMode::none;
}

Performance efficiency_and_kappa(OperationMode mode, double w_net, double q_in, double q_out) {
  Performance perf;
  switch (mode) {
    case OperationMode::engine:
      perf.efficiency = w_net / q_in;
      break;
    case OperationMode::refrigerator:
      perf.cop = q_in / w_net;
      break;
    case OperationMode::heater:
    case OperationMode::accelerator:
      perf.cop = q_out / w_net;
      break;
    case OperationMode::none:
      throw DomainError("mode 'none' has no thermal efficiency");
  }
  if (perf.cop) perf.kappa = *perf.cop / (1.0 + *perf.cop);
  return perf;
}

CycleResult carnot_cycle(const CompoundParams& params, double t_l, double t_h, double b0,
                         double b1, const Vec3& direction, Bracket field_bracket,
                         bool with_stroke_detail, double classify_tol) {
  check_ordering(t_l, t_h);
  check_field_magnitude(b0, "b0");
  check_field_magnitude(b1, "b1");
  if (b0 < 0.0 || b1 < 0.0) throw DomainError("carnot_cycle requires b0, b1 >= 0");
  const Vec3 dir = normalized(direction);

  const ThermoPoint state_a = thermo_point(params, t_l, field_along(dir, b0));
  const ThermoPoint state_c = thermo_point(params, t_h, field_along(dir, b1));
  const double delta_s = state_a.entropy - state_c.entropy;
  const double q_out = -t_l * delta_s; // isothermal a-b at the cold bath
  const double q_in = t_h * delta_s;   // isothermal c-d at the hot bath
  const double w_net = q_in + q_out;

  std::optional<std::array<StrokeRecord, 4>> strokes;
  if (with_stroke_detail) {
    try {
      const double b_b = isentropic_field(params, t_l, state_c.entropy, dir, field_bracket);
      const double b_d = isentropic_field(params, t_h, state_a.entropy, dir, field_bracket);
      const ThermoPoint state_b = thermo_point(params, t_l, field_along(dir, b_b));
      const ThermoPoint state_d = thermo_point(params, t_h, field_along(dir, b_d));

      const double q_ab = t_l * (state_b.entropy - state_a.entropy);
      const double du_ab = state_b.internal_energy - state_a.internal_energy;
      const double du_bc = state_c.internal_energy - state_b.internal_energy;
      const double q_cd = t_h * (state_d.entropy - state_c.entropy);
      const double du_cd = state_d.internal_energy - state_c.internal_energy;
      const double du_da = state_a.internal_energy - state_d.internal_energy;

      strokes = {{
          {"a-b", StrokeKind::isothermal, q_ab, q_ab - du_ab, du_ab},
          {"b-c", StrokeKind::adiabatic, 0.0, -du_bc, du_bc},
          {"c-d", StrokeKind::isothermal, q_cd, q_cd - du_cd, du_cd},
          {"d-a", StrokeKind::adiabatic, 0.0, -du_da, du_da},
      }};
    } catch (const NoRootError&) {
      // Net quantities only need the endpoint entropies; stroke detail is
      // reported unavailable for this bracket.
      strokes.reset();
    }
  }
  return finish(CycleKind::carnot, std::move(strokes), w_net, q_in, q_out, classify_tol);
}

CycleResult otto_cycle(const CompoundParams& params, double t_l, double t_h, double b0,
                       double b1, const Vec3& direction, double classify_tol) {
  check_ordering(t_l, t_h);
  check_field_magnitude(b0, "b0");
  check_field_magnitude(b1, "b1");
  const Vec3 dir = normalized(direction);

  const Spectrum spec0 = diagonalize(build_hamiltonian(params, field_along(dir, b0)));
  const Spectrum spec1 = diagonalize(build_hamiltonian(params, field_along(dir, b1)));
  const auto p_l = boltzmann(spec0, t_l); // state a, also frozen through a-b
  const auto p_h = boltzmann(spec1, t_h); // state c, also frozen through c-d

  double q_in = 0.0, q_out = 0.0, w_net = 0.0, du_ab = 0.0, du_cd = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double e0 = spec0.eigenvalues[i];
    const double e1 = spec1.eigenvalues[i];
    const double dp = p_h[i] - p_l[i];
    q_in += e1 * dp;
    q_out -= e0 * dp;
    w_net += (e1 - e0) * dp;
    du_ab += (e1 - e0) * p_l[i];
    du_cd += (e0 - e1) * p_h[i];
  }

  std::optional<std::array<StrokeRecord, 4>> strokes{{{
      {"a-b", StrokeKind::adiabatic, 0.0, -du_ab, du_ab},
      {"b-c", StrokeKind::isochoric, q_in, 0.0, q_in},
      {"c-d", StrokeKind::adiabatic, 0.0, -du_cd, du_cd},
      {"d-a", StrokeKind::isochoric, q_out, 0.0, q_out},
  }}};
  return finish(CycleKind::otto, std::move(strokes), w_net, q_in, q_out, classify_tol);
}

CycleResult stirling_cycle(const CompoundParams& params, double t_l, double t_h, double b0,
                           double b1, const Vec3& direction, double classify_tol) {
  check_ordering(t_l, t_h);
  check_field_magnitude(b0, "b0");
  check_field_magnitude(b1, "b1");
  const Vec3 dir = normalized(direction);

  const Spectrum spec0 = diagonalize(build_hamiltonian(params, field_along(dir, b0)));
  const Spectrum spec1 = diagonalize(build_hamiltonian(params, field_along(dir, b1)));

  const double u_l0 = internal_energy(spec0, t_l);
  const double u_l1 = internal_energy(spec1, t_l);
  const double u_h0 = internal_energy(spec0, t_h);
  const double u_h1 = internal_energy(spec1, t_h);
  const double s_l0 = entropy(spec0, t_l);
  const double s_l1 = entropy(spec1, t_l);
  const double s_h0 = entropy(spec0, t_h);
  const double s_h1 = entropy(spec1, t_h);

  const double q_ab = t_l * (s_l1 - s_l0);
  const double du_ab = u_l1 - u_l0;
  const double q_bc = u_h1 - u_l1; // hot isochore at b1
  const double q_cd = t_h * (s_h0 - s_h1);
  const double du_cd = u_h0 - u_h1;
  const double q_da = u_l0 - u_h0; // cold isochore at b0

  const double w_net = (q_ab - du_ab) + (q_cd - du_cd);
  const double q_in = q_bc + q_cd;
  const double q_out = q_da + q_ab;

  std::optional<std::array<StrokeRecord, 4>> strokes{{{
      {"a-b", StrokeKind::isothermal, q_ab, q_ab - du_ab, du_ab},
      {"b-c", StrokeKind::isochoric, q_bc, 0.0, q_bc},
      {"c-d", StrokeKind::isothermal, q_cd, q_cd - du_cd, du_cd},
      {"d-a", StrokeKind::isochoric, q_da, 0.0, q_da},
  }}};
  return finish(CycleKind::stirling, std::move(strokes), w_net, q_in, q_out, classify_tol);
}

} // namespace trimer
