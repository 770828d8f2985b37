#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trimer/cycles.hpp"

namespace trimer {

enum class AxisVariable { b0, b1, th };

// Uniform closed grid over [min, max] with `count` >= 2 points.
struct GridAxis {
  AxisVariable variable = AxisVariable::b0;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

std::vector<double> axis_values(const GridAxis& axis);

struct SweepCell {
  bool ok = false; // false = the cycle evaluation failed; other fields unset
  OperationMode mode = OperationMode::none;
  double w_net = 0.0;
  double q_in = 0.0;
  double q_out = 0.0;
  std::optional<double> efficiency;
  std::optional<double> cop;
  std::optional<double> kappa;
};

// eta for engine cells, kappa for the COP modes; empty for none/error.
std::optional<double> plot_efficiency(const SweepCell& cell);

struct ModeCounts {
  long engine = 0;
  long refrigerator = 0;
  long heater = 0;
  long accelerator = 0;
  long none = 0;
  long error = 0;
};

// Scalars held fixed during the sweep (th and b0 depending on the plane).
struct SweepFixed {
  std::string compound;
  double t_l = 0.0;
  std::optional<double> t_h;
  std::optional<double> b0;
  Vec3 direction{0.0, 0.0, 1.0};
};

struct SweepResult {
  CycleKind kind = CycleKind::carnot;
  GridAxis axis_x, axis_y;
  SweepFixed fixed;
  double classify_tol = 1e-12;
  std::vector<SweepCell> cells; // row-major: y outer, x inner
  ModeCounts diagnostics;

  const SweepCell& cell(int ix, int iy) const { return cells[iy * axis_x.count + ix]; }
};

struct SweepOptions {
  bool parallel = true;         // OpenMP over cells; false = serial reference
  double classify_tol = 1e-12;
  Bracket field_bracket{0.0, 10.0};
};

// Cycle evaluated at every (b0, b1) grid point, fields along `direction`.
// Cells are independent; a failing cell is marked instead of aborting the
// sweep, and serial/parallel execution produce identical results.
SweepResult sweep_b0_b1(const CompoundParams& params, double t_l, double t_h,
                        const GridAxis& axis_b0, const GridAxis& axis_b1,
                        CycleKind kind, const Vec3& direction,
                        const SweepOptions& opts = {});

// Same over the (b1, t_h) plane at fixed t_l and b0. Every t_h axis value
// must exceed t_l.
SweepResult sweep_b1_th(const CompoundParams& params, double t_l, double b0,
                        const GridAxis& axis_b1, const GridAxis& axis_th,
                        CycleKind kind, const Vec3& direction,
                        const SweepOptions& opts = {});

// Header "x,y,mode,w_net,q_in,q_out,eff,kappa", one row per cell in
// row-major order, floats with 17 significant digits, values below the
// classification tolerance written as 0. Error cells carry mode "error".
std::string export_csv(const SweepResult& result);

enum class PgmLayer { mode, efficiency };

// Binary P5 image, width = count_x, height = count_y, maxval 255, row 0 at
// maximum y. Mode layer grays: engine 60, refrigerator 120, heater 180,
// accelerator 240, none 0, error 255. Efficiency layer maps [0,1] to
// [0,255]; none/error cells to 0.
std::string export_pgm(const SweepResult& result, PgmLayer layer);

} // namespace trimer
