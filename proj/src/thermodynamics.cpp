#include "trimer/thermodynamics.hpp"

#include <algorithm>
#include <cmath>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

void check_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw DomainError("temperature must be positive and finite");
}

void check_bracket(const Bracket& br, const char* what) {
  if (!std::isfinite(br.lo) || !std::isfinite(br.hi) || !(br.lo < br.hi))
    throw ValidationError(std::string(what) + ": bracket must be finite with lo < hi");
}

double entropy_of_probs(const std::array<double, 8>& p) {
  double s = 0.0;
  for (double pi : p)
    if (pi > 0.0) s -= pi * std::log(pi);
  return s;
}

double entropy_at(const CompoundParams& params, double t, const MagneticField& field) {
  return entropy(diagonalize(build_hamiltonian(params, field)), t);
}

// Bisection on a sign-change bracket, stopping once the residual is well
// inside `residual_tol` or the interval has collapsed to machine width.
// The returned point always satisfies |g| <= residual_tol.
template <typename F>
double bisect_root(F&& g, Bracket br, double residual_tol, const char* no_root_msg) {
  double lo = br.lo, hi = br.hi;
  double flo = g(lo);
  if (flo == 0.0) return lo;
  double fhi = g(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NoRootError(no_root_msg);

  const double stop = 0.5 * residual_tol;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = g(mid);
    if (std::abs(fm) <= stop) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  const double best = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  if (std::abs(std::abs(flo) <= std::abs(fhi) ? flo : fhi) > residual_tol)
    throw ConvergenceError("bisection exhausted the interval without meeting the residual");
  return best;
}

} // namespace

std::array<double, 8> boltzmann(const Spectrum& spec, double t) {
  check_temperature(t);
  const double e_min = *std::min_element(spec.eigenvalues.begin(), spec.eigenvalues.end());
  std::array<double, 8> p;
  double z = 0.0;
  for (int i = 0; i < 8; ++i) {
    p[i] = std::exp(-(spec.eigenvalues[i] - e_min) / t);
    z += p[i];
  }
  for (double& pi : p) pi /= z;
  return p;
}

double log_partition(const Spectrum& spec, double t) {
  check_temperature(t);
  const double e_min = *std::min_element(spec.eigenvalues.begin(), spec.eigenvalues.end());
  double z = 0.0;
  for (double e : spec.eigenvalues) z += std::exp(-(e - e_min) / t);
  return -e_min / t + std::log(z);
}

double internal_energy(const Spectrum& spec, double t) {
  const auto p = boltzmann(spec, t);
  double u = 0.0;
  for (int i = 0; i < 8; ++i) u += spec.eigenvalues[i] * p[i];
  return u;
}

double entropy(const Spectrum& spec, double t) {
  return entropy_of_probs(boltzmann(spec, t));
}

ThermoPoint thermo_point(const CompoundParams& params, double t, const MagneticField& field) {
  check_temperature(t);
  const Spectrum spec = diagonalize(build_hamiltonian(params, field));
  ThermoPoint pt;
  pt.temperature = t;
  pt.field = field;
  pt.probs = boltzmann(spec, t);
  pt.log_z = log_partition(spec, t);
  double u = 0.0;
  for (int i = 0; i < 8; ++i) u += spec.eigenvalues[i] * pt.probs[i];
  pt.internal_energy = u;
  pt.entropy = entropy_of_probs(pt.probs);
  return pt;
}

double isentropic_field(const CompoundParams& params, double t, double s_target,
                        const Vec3& direction, Bracket bracket) {
  check_temperature(t);
  check_bracket(bracket, "isentropic_field");
  const Vec3 dir = normalized(direction);
  auto g = [&](double b) { return entropy_at(params, t, MagneticField{dir.x * b, dir.y * b, dir.z * b}) - s_target; };
  return bisect_root(g, bracket, 1e-10, "no isentropic field in range");
}

double isentropic_temperature(const CompoundParams& params, const MagneticField& field,
                              double s_target, Bracket bracket) {
  check_bracket(bracket, "isentropic_temperature");
  if (!(bracket.lo > 0.0))
    throw DomainError("isentropic_temperature: bracket must be positive");
  auto g = [&](double t) { return entropy_at(params, t, field) - s_target; };
  return bisect_root(g, bracket, 1e-10, "no isentropic temperature in range");
}

std::vector<IsentropePoint> trace_isentrope(const CompoundParams& params, double t0,
                                            const MagneticField& field0,
                                            std::span<const double> field_grid,
                                            const Vec3& direction, Bracket t_bracket) {
  check_temperature(t0);
  const Vec3 dir = normalized(direction);
  const double s_target = entropy_at(params, t0, field0);

  std::vector<IsentropePoint> out;
  out.reserve(field_grid.size());
  for (double b : field_grid) {
    IsentropePoint pt;
    pt.field_magnitude = b;
    const MagneticField f{dir.x * b, dir.y * b, dir.z * b};
    // A flat stretch of the isentrope (entropy already matching at t0, as
    // happens for degenerate spectra) continues at t0 rather than feeding
    // the root finder an interval with no sign change.
    if (std::abs(entropy_at(params, t0, f) - s_target) <= 1e-10) {
      pt.temperature = t0;
    } else {
      try {
        pt.temperature = isentropic_temperature(params, f, s_target, t_bracket);
      } catch (const NoRootError&) {
        // emitted as a gap
      }
    }
    out.push_back(pt);
  }
  return out;
}

} // namespace trimer
