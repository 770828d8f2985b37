#include "trimer/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double snap(double x, double tol) { return std::abs(x) < tol ? 0.0 : x; }

SweepCell cell_from_cycle(const CycleResult& r) {
  SweepCell c;
  c.ok = true;
  c.mode = r.mode;
  c.w_net = r.w_net;
  c.q_in = r.q_in;
  c.q_out = r.q_out;
  c.efficiency = r.efficiency;
  c.cop = r.cop;
  c.kappa = r.kappa;
  return c;
}

// One grid cell, isolated: any library error marks the cell instead of
// killing the sweep.
SweepCell eval_cell(const CompoundParams& params, CycleKind kind, double t_l, double t_h,
                    double b0, double b1, const Vec3& dir, const SweepOptions& opts) {
  try {
    switch (kind) {
      case CycleKind::carnot:
        return cell_from_cycle(carnot_cycle(params, t_l, t_h, b0, b1, dir, opts.field_bracket,
                                            /*with_stroke_detail=*/false, opts.classify_tol));
      case CycleKind::otto:
        return cell_from_cycle(otto_cycle(params, t_l, t_h, b0, b1, dir, opts.classify_tol));
      case CycleKind::stirling:
        return cell_from_cycle(stirling_cycle(params, t_l, t_h, b0, b1, dir, opts.classify_tol));
    }
  } catch (const Error&) {
  }
  return SweepCell{}; // ok = false
}

ModeCounts count_modes(const std::vector<SweepCell>& cells) {
  ModeCounts m;
  for (const auto& c : cells) {
    if (!c.ok) {
      ++m.error;
      continue;
    }
    switch (c.mode) {
      case OperationMode::engine: ++m.engine; break;
      case OperationMode::refrigerator: ++m.refrigerator; break;
      case OperationMode::heater: ++m.heater; break;
      case OperationMode::accelerator: ++m.accelerator; break;
      case OperationMode::none: ++m.none; break;
    }
  }
  return m;
}

// Cells are written by index, so the result is byte-identical whether the
// loop runs serially or OpenMP-partitioned.
template <typename EvalFn>
std::vector<SweepCell> run_grid(int nx, int ny, bool parallel, const EvalFn& eval) {
  const int n = nx * ny;
  std::vector<SweepCell> cells(static_cast<size_t>(n));
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < n; ++idx) cells[static_cast<size_t>(idx)] = eval(idx % nx, idx / nx);
    return cells;
  }
#else
  (void)parallel;
#endif
  for (int idx = 0; idx < n; ++idx) cells[static_cast<size_t>(idx)] = eval(idx % nx, idx / nx);
  return cells;
}

void format17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

} // namespace

std::vector<double> axis_values(const GridAxis& axis) {
  if (axis.count < 2) throw ValidationError("grid axis needs count >= 2");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !(axis.min < axis.max))
    throw ValidationError("grid axis needs finite min < max");
  std::vector<double> v(static_cast<size_t>(axis.count));
  for (int i = 0; i < axis.count; ++i)
    v[static_cast<size_t>(i)] =
        axis.min + (axis.max - axis.min) * (static_cast<double>(i) / (axis.count - 1));
  return v;
}

std::optional<double> plot_efficiency(const SweepCell& cell) {
  if (!cell.ok) return std::nullopt;
  if (cell.mode == OperationMode::engine) return cell.efficiency;
  if (cell.mode == OperationMode::none) return std::nullopt;
  return cell.kappa;
}

SweepResult sweep_b0_b1(const CompoundParams& params, double t_l, double t_h,
                        const GridAxis& axis_b0, const GridAxis& axis_b1, CycleKind kind,
                        const Vec3& direction, const SweepOptions& opts) {
  if (!(t_l > 0.0) || !(t_l < t_h)) throw DomainError("sweep requires 0 < t_l < t_h");
  const Vec3 dir = normalized(direction);
  const auto xs = axis_values(axis_b0);
  const auto ys = axis_values(axis_b1);

  SweepResult res;
  res.kind = kind;
  res.axis_x = axis_b0;
  res.axis_x.variable = AxisVariable::b0;
  res.axis_y = axis_b1;
  res.axis_y.variable = AxisVariable::b1;
  res.fixed = SweepFixed{params.name, t_l, t_h, std::nullopt, dir};
  res.classify_tol = opts.classify_tol;
  res.cells = run_grid(axis_b0.count, axis_b1.count, opts.parallel, [&](int ix, int iy) {
    return eval_cell(params, kind, t_l, t_h, xs[static_cast<size_t>(ix)],
                     ys[static_cast<size_t>(iy)], dir, opts);
  });
  res.diagnostics = count_modes(res.cells);
  return res;
}

SweepResult sweep_b1_th(const CompoundParams& params, double t_l, double b0,
                        const GridAxis& axis_b1, const GridAxis& axis_th, CycleKind kind,
                        const Vec3& direction, const SweepOptions& opts) {
  if (!(t_l > 0.0)) throw DomainError("sweep requires t_l > 0");
  const Vec3 dir = normalized(direction);
  const auto xs = axis_values(axis_b1);
  const auto ys = axis_values(axis_th);
  for (double th : ys)
    if (!(th > t_l)) throw ValidationError("every t_h axis value must exceed t_l");

  SweepResult res;
  res.kind = kind;
  res.axis_x = axis_b1;
  res.axis_x.variable = AxisVariable::b1;
  res.axis_y = axis_th;
  res.axis_y.variable = AxisVariable::th;
  res.fixed = SweepFixed{params.name, t_l, std::nullopt, b0, dir};
  res.classify_tol = opts.classify_tol;
  res.cells = run_grid(axis_b1.count, axis_th.count, opts.parallel, [&](int ix, int iy) {
    return eval_cell(params, kind, t_l, ys[static_cast<size_t>(iy)], b0,
                     xs[static_cast<size_t>(ix)], dir, opts);
  });
  res.diagnostics = count_modes(res.cells);
  return res;
}

std::string export_csv(const SweepResult& result) {
  const auto xs = axis_values(result.axis_x);
  const auto ys = axis_values(result.axis_y);
  std::string out = "x,y,mode,w_net,q_in,q_out,eff,kappa\n";
  out.reserve(out.size() + result.cells.size() * 96);
  for (int iy = 0; iy < result.axis_y.count; ++iy) {
    for (int ix = 0; ix < result.axis_x.count; ++ix) {
      const SweepCell& c = result.cell(ix, iy);
      format17(out, xs[static_cast<size_t>(ix)]);
      out += ',';
      format17(out, ys[static_cast<size_t>(iy)]);
      out += ',';
      if (!c.ok) {
        out += "error,nan,nan,nan,nan,nan\n";
        continue;
      }
      out += to_string(c.mode);
      out += ',';
      format17(out, snap(c.w_net, result.classify_tol));
      out += ',';
      format17(out, snap(c.q_in, result.classify_tol));
      out += ',';
      format17(out, snap(c.q_out, result.classify_tol));
      out += ',';
      // eff column: eta for engine cells, COP for the COP modes
      format17(out, c.efficiency ? *c.efficiency : (c.cop ? *c.cop : kNan));
      out += ',';
      format17(out, c.kappa ? *c.kappa : kNan);
      out += '\n';
    }
  }
  return out;
}

std::string export_pgm(const SweepResult& result, PgmLayer layer) {
  const int w = result.axis_x.count;
  const int h = result.axis_y.count;
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + static_cast<size_t>(w) * static_cast<size_t>(h));
  for (int iy = h - 1; iy >= 0; --iy) { // row 0 of the image is maximum y
    for (int ix = 0; ix < w; ++ix) {
      const SweepCell& c = result.cell(ix, iy);
      unsigned char byte = 0;
      if (layer == PgmLayer::mode) {
        if (!c.ok) {
          byte = 255;
        } else {
          switch (c.mode) {
            case OperationMode::engine: byte = 60; break;
            case OperationMode::refrigerator: byte = 120; break;
            case OperationMode::heater: byte = 180; break;
            case OperationMode::accelerator: byte = 240; break;
            case OperationMode::none: byte = 0; break;
          }
        }
      } else {
        const auto eff = plot_efficiency(c);
        if (eff) {
          const double clamped = std::min(1.0, std::max(0.0, *eff));
          byte = static_cast<unsigned char>(std::lround(clamped * 255.0));
        }
      }
      out += static_cast<char>(byte);
    }
  }
  return out;
}

} // namespace trimer
