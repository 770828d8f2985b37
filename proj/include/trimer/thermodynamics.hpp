#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "trimer/eigensolver.hpp"
#include "trimer/spin_model.hpp"

namespace trimer {

// Closed interval for bracketed root finding.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Equilibrium state of one compound at (T, B). Entropy is dimensionless
// (units of k_B); internal energy is Kelvin per molecule.
struct ThermoPoint {
  double temperature = 0.0;
  MagneticField field{};
  std::array<double, 8> probs{};
  double log_z = 0.0;
  double internal_energy = 0.0;
  double entropy = 0.0;
};

// Boltzmann populations p_i = exp(-(e_i - e_min)/t) / sum_j exp(-(e_j - e_min)/t).
// Max-shifted so sub-Kelvin temperatures with Kelvin-scale gaps cannot
// overflow. Throws DomainError for t <= 0.
std::array<double, 8> boltzmann(const Spectrum& spec, double t);

// ln Z = -e_min/t + ln sum_j exp(-(e_j - e_min)/t)
double log_partition(const Spectrum& spec, double t);

// U = sum_i e_i p_i, Kelvin.
double internal_energy(const Spectrum& spec, double t);

// S = -sum_i p_i ln p_i with 0 ln 0 := 0, in units of k_B.
double entropy(const Spectrum& spec, double t);

// build_hamiltonian -> diagonalize -> populations/U/S in one call.
ThermoPoint thermo_point(const CompoundParams& params, double t, const MagneticField& field);

// Field magnitude B* in `bracket` with |S(t, B* . direction) - s_target| <= 1e-10,
// located by bisection on the entropy residual. No sign change over the
// bracket raises NoRootError ("no isentropic field in range").
double isentropic_field(const CompoundParams& params, double t, double s_target,
                        const Vec3& direction, Bracket bracket);

// Temperature T* in `bracket` with |S(T*, field) - s_target| <= 1e-10. S is
// nondecreasing in T at fixed field, so the root is unique when it exists.
double isentropic_temperature(const CompoundParams& params, const MagneticField& field,
                              double s_target, Bracket bracket);

struct IsentropePoint {
  double field_magnitude = 0.0;           // Tesla
  std::optional<double> temperature;      // empty = no root in bracket (gap)
};

// T(B) along the isentrope S = S(t0, field0). Points where the temperature
// bracket holds no root are emitted as gaps, never interpolated.
std::vector<IsentropePoint> trace_isentrope(const CompoundParams& params, double t0,
                                            const MagneticField& field0,
                                            std::span<const double> field_grid,
                                            const Vec3& direction,
                                            Bracket t_bracket = {1e-3, 50.0});

} // namespace trimer
