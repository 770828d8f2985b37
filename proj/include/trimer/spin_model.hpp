#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "trimer/matrix8.hpp"

namespace trimer {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Throws ValidationError on a zero or non-finite vector.
Vec3 normalized(const Vec3& v);

// Exchange couplings of one bond, Kelvin. Table-style compounds are XXZ
// (jx == jy) but arbitrary anisotropy is accepted.
struct BondExchange {
  double jx = 0.0, jy = 0.0, jz = 0.0;
};

// Dzyaloshinskii-Moriya vector of one bond, Kelvin.
struct DMVector {
  double dx = 0.0, dy = 0.0, dz = 0.0;
};

// Diagonal g-tensor of one site.
struct GTensor {
  double gx = 0.0, gy = 0.0, gz = 0.0;
};

struct MagneticField {
  double bx = 0.0, by = 0.0, bz = 0.0; // Tesla
};

// Bohr magneton over Boltzmann constant, Kelvin per Tesla. Field in Tesla
// times this gives Zeeman energies directly in Kelvin.
inline constexpr double kMuBHat = 0.6717156644;

// Full Hamiltonian parameter set of one triangular trimer. bonds and dm are
// ordered by the pair they couple: (1,2), (2,3), (3,1); g by site 1..3.
struct CompoundParams {
  std::string name;
  std::array<BondExchange, 3> bonds{};
  std::array<DMVector, 3> dm{};
  std::array<GTensor, 3> g{};
  double mu_b_hat = kMuBHat;
};

enum class Axis { x = 0, y = 1, z = 2 };

// Single-site spin operator embedded into the 8-dimensional product space:
// I (x) ... (x) sigma^axis/2 (x) ... (x) I with the sigma/2 factor at
// position `site`. Site 1 is the leftmost (most significant) factor and
// spin-up is basis state 0 of its site.
HermitianMatrix8 spin_operator(int site, Axis axis);

// H = sum_j sum_alpha J^alpha_{j,j+1} S_j^alpha S_{j+1}^alpha
//   + sum_j [ D_{j,j+1} . (S_j x S_{j+1}) + mu_b_hat S_j . g_j . B ]
// with bond index wrapping 3+1 -> 1. Energies in Kelvin. Throws
// ValidationError if any parameter or field component is non-finite.
HermitianMatrix8 build_hamiltonian(const CompoundParams& params, const MagneticField& field);

// Known compounds: "cu3-as", "cu3-sb". Unknown name throws ValidationError
// listing the available presets.
CompoundParams preset(std::string_view name);
const std::vector<std::string>& preset_names();

// Field of the given magnitude along `direction` (normalized first).
MagneticField field_along(const Vec3& direction, double magnitude);

} // namespace trimer
