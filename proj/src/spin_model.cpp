#include "trimer/spin_model.hpp"

#include <cmath>
#include <sstream>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

bool finite(double v) { return std::isfinite(v); }

// sigma^alpha / 2 in the single-site basis {up, down}; up is state 0.
std::array<cplx, 4> half_pauli(Axis axis) {
  switch (axis) {
    case Axis::x: return {cplx(0, 0), cplx(0.5, 0), cplx(0.5, 0), cplx(0, 0)};
    case Axis::y: return {cplx(0, 0), cplx(0, -0.5), cplx(0, 0.5), cplx(0, 0)};
    case Axis::z: return {cplx(0.5, 0), cplx(0, 0), cplx(0, 0), cplx(-0.5, 0)};
  }
  throw ValidationError("spin_operator: invalid axis");
}

HermitianMatrix8 make_spin_operator(int site, Axis axis) {
  const auto op = half_pauli(axis);
  // Basis |s1 s2 s3>, site 1 the most significant bit, spin-up = 0.
  const int shift = 3 - site; // bit position of `site` in the basis index
  HermitianMatrix8 m;
  for (int row = 0; row < 8; ++row) {
    const int srow = (row >> shift) & 1;
    for (int scol = 0; scol < 2; ++scol) {
      const cplx v = op[srow * 2 + scol];
      if (v == cplx{}) continue;
      const int col = (row & ~(1 << shift)) | (scol << shift);
      m(row, col) = v;
    }
  }
  return m;
}

struct OperatorTables {
  // single[site-1][axis]
  std::array<std::array<HermitianMatrix8, 3>, 3> single;
  // pair[bond][beta][gamma] = S_j^beta * S_{j+1}^gamma for bond pairs
  // (1,2), (2,3), (3,1)
  std::array<std::array<std::array<HermitianMatrix8, 3>, 3>, 3> pair;
};

const OperatorTables& tables() {
  static const OperatorTables t = [] {
    OperatorTables tab;
    for (int s = 0; s < 3; ++s)
      for (int a = 0; a < 3; ++a)
        tab.single[s][a] = make_spin_operator(s + 1, static_cast<Axis>(a));
    for (int bond = 0; bond < 3; ++bond) {
      const int j = bond;           // first site of the pair, 0-based
      const int k = (bond + 1) % 3; // wrapped partner
      for (int beta = 0; beta < 3; ++beta)
        for (int gamma = 0; gamma < 3; ++gamma)
          tab.pair[bond][beta][gamma] = tab.single[j][beta] * tab.single[k][gamma];
    }
    return tab;
  }();
  return t;
}

constexpr double levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0.0;
  // even permutations of (0,1,2)
  if ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) return 1.0;
  return -1.0;
}

void require_finite(double v, const char* what) {
  if (!finite(v)) {
    std::ostringstream os;
    os << "build_hamiltonian: non-finite " << what;
    throw ValidationError(os.str());
  }
}

} // namespace

Vec3 normalized(const Vec3& v) {
  if (!finite(v.x) || !finite(v.y) || !finite(v.z))
    throw ValidationError("direction has non-finite components");
  const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  if (n == 0.0) throw ValidationError("direction must be a nonzero vector");
  return {v.x / n, v.y / n, v.z / n};
}

MagneticField field_along(const Vec3& direction, double magnitude) {
  const Vec3 d = normalized(direction);
  return {d.x * magnitude, d.y * magnitude, d.z * magnitude};
}

HermitianMatrix8 spin_operator(int site, Axis axis) {
  if (site < 1 || site > 3) throw ValidationError("spin_operator: site must be 1..3");
  return tables().single[site - 1][static_cast<int>(axis)];
}

HermitianMatrix8 build_hamiltonian(const CompoundParams& params, const MagneticField& field) {
  for (const auto& b : params.bonds) {
    require_finite(b.jx, "bond exchange");
    require_finite(b.jy, "bond exchange");
    require_finite(b.jz, "bond exchange");
  }
  for (const auto& d : params.dm) {
    require_finite(d.dx, "DM component");
    require_finite(d.dy, "DM component");
    require_finite(d.dz, "DM component");
  }
  for (const auto& g : params.g) {
    require_finite(g.gx, "g-factor");
    require_finite(g.gy, "g-factor");
    require_finite(g.gz, "g-factor");
  }
  require_finite(params.mu_b_hat, "mu_b_hat");
  require_finite(field.bx, "field component");
  require_finite(field.by, "field component");
  require_finite(field.bz, "field component");

  const OperatorTables& tab = tables();
  HermitianMatrix8 h;

  for (int bond = 0; bond < 3; ++bond) {
    const auto& b = params.bonds[bond];
    const double j[3] = {b.jx, b.jy, b.jz};
    for (int a = 0; a < 3; ++a)
      if (j[a] != 0.0) h.add_scaled(tab.pair[bond][a][a], j[a]);

    // D . (S_j x S_{j+1}) expanded with the Levi-Civita symbol
    const auto& dm = params.dm[bond];
    const double d[3] = {dm.dx, dm.dy, dm.dz};
    for (int a = 0; a < 3; ++a) {
      if (d[a] == 0.0) continue;
      for (int be = 0; be < 3; ++be)
        for (int ga = 0; ga < 3; ++ga) {
          const double eps = levi_civita(a, be, ga);
          if (eps != 0.0) h.add_scaled(tab.pair[bond][be][ga], eps * d[a]);
        }
    }
  }

  const double bvec[3] = {field.bx, field.by, field.bz};
  for (int site = 0; site < 3; ++site) {
    const auto& g = params.g[site];
    const double gv[3] = {g.gx, g.gy, g.gz};
    for (int a = 0; a < 3; ++a) {
      const double w = params.mu_b_hat * gv[a] * bvec[a];
      if (w != 0.0) h.add_scaled(tab.single[site][a], w);
    }
  }
  return h;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"cu3-as", "cu3-sb"};
  return names;
}

CompoundParams preset(std::string_view name) {
  if (name == "cu3-as") {
    CompoundParams p;
    p.name = "cu3-as";
    p.bonds = {BondExchange{4.50, 4.50, 4.56},  // (1,2)
               BondExchange{4.03, 4.03, 4.06},  // (2,3)
               BondExchange{4.03, 4.03, 4.06}}; // (3,1)
    p.dm = {DMVector{0.529, 0.529, 0.529}, DMVector{0.0, 0.0, 0.529},
            DMVector{0.0, 0.0, 0.529}};
    p.g = {GTensor{2.25, 2.25, 2.06}, GTensor{2.10, 2.10, 2.06}, GTensor{2.40, 2.40, 2.06}};
    return p;
  }
  if (name == "cu3-sb") {
    CompoundParams p;
    p.name = "cu3-sb";
    p.bonds = {BondExchange{4.49, 4.49, 4.54}, BondExchange{3.91, 3.91, 3.96},
               BondExchange{3.91, 3.91, 3.96}};
    p.dm = {DMVector{0.517, 0.517, 0.517}, DMVector{0.0, 0.0, 0.517},
            DMVector{0.0, 0.0, 0.517}};
    p.g = {GTensor{2.24, 2.24, 2.07}, GTensor{2.11, 2.11, 2.07}, GTensor{2.40, 2.40, 2.07}};
    return p;
  }
  std::ostringstream os;
  os << "unknown preset \"" << name << "\"; available:";
  for (const auto& n : preset_names()) os << " " << n;
  throw ValidationError(os.str());
}

} // namespace trimer
