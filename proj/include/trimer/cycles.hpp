#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "trimer/thermodynamics.hpp"

namespace trimer {

enum class OperationMode { engine, refrigerator, heater, accelerator, none };
enum class CycleKind { carnot, otto, stirling };
enum class StrokeKind { isothermal, isochoric, adiabatic };

std::string_view to_string(OperationMode m);
std::string_view to_string(CycleKind k);
std::string_view to_string(StrokeKind k);

// One stroke of a cycle. Work is done BY the system when positive; heat is
// positive when absorbed. heat - work = delta_u holds by construction.
struct StrokeRecord {
  std::string_view label; // "a-b", "b-c", "c-d", "d-a"
  StrokeKind kind = StrokeKind::isothermal;
  double heat = 0.0;    // Kelvin
  double work = 0.0;    // Kelvin
  double delta_u = 0.0; // Kelvin
};

// Sign-pattern classification. Values with magnitude below tol are snapped
// to zero first; a zero matches no row, giving OperationMode::none.
//   engine:       w > 0, q_in > 0, q_out < 0
//   refrigerator: w < 0, q_in < 0, q_out > 0
//   heater:       w < 0, q_in < 0, q_out < 0
//   accelerator:  w < 0, q_in > 0, q_out < 0
OperationMode classify_mode(double w_net, double q_in, double q_out, double tol = 1e-12);

struct Performance {
  std::optional<double> efficiency; // eta, engine only
  std::optional<double> cop;        // refrigerator/heater/accelerator
  std::optional<double> kappa;      // cop / (1 + cop)
};

// Engine: eta = w_net/q_in. Refrigerator: COP = q_in/w_net. Heater and
// accelerator: COP = q_out/w_net. Throws DomainError for mode none.
Performance efficiency_and_kappa(OperationMode mode, double w_net, double q_in, double q_out);

// q_in is the heat exchanged with the HOT bath, q_out with the cold bath,
// both positive when flowing into the working substance.
struct CycleResult {
  CycleKind kind = CycleKind::carnot;
  std::optional<std::array<StrokeRecord, 4>> strokes; // carnot: empty when the
                                                      // adiabat endpoints have
                                                      // no root in the bracket
  double w_net = 0.0;
  double q_in = 0.0;
  double q_out = 0.0;
  OperationMode mode = OperationMode::none;
  std::optional<double> efficiency;
  std::optional<double> cop;
  std::optional<double> kappa;
};

// Reversible Carnot cycle between (t_l, b0) and (t_h, b1). The net
// quantities need only the endpoint entropies:
//   dS = S(t_l,b0) - S(t_h,b1), q_out = -t_l dS, q_in = t_h dS.
// Stroke detail additionally solves the intermediate fields B_b and B_d by
// entropy matching inside `field_bracket`; when either solve has no root the
// stroke records are left empty and the net quantities stand alone.
CycleResult carnot_cycle(const CompoundParams& params, double t_l, double t_h,
                         double b0, double b1, const Vec3& direction,
                         Bracket field_bracket = {0.0, 10.0},
                         bool with_stroke_detail = true, double classify_tol = 1e-12);

// Quantum Otto cycle: two population-frozen adiabats between b0 and b1 and
// two isochores thermalizing at t_h (field b1) and t_l (field b0).
CycleResult otto_cycle(const CompoundParams& params, double t_l, double t_h,
                       double b0, double b1, const Vec3& direction,
                       double classify_tol = 1e-12);

// Quantum Stirling cycle: isothermal strokes at t_l (b0 -> b1) and t_h
// (b1 -> b0) joined by isochores at b1 and b0.
CycleResult stirling_cycle(const CompoundParams& params, double t_l, double t_h,
                           double b0, double b1, const Vec3& direction,
                           double classify_tol = 1e-12);

} // namespace trimer
