#include "trimer/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

constexpr int kDim = 8;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::array<cplx, 64>& a) {
  double s = 0.0;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      if (r != c) s += std::norm(a[r * kDim + c]);
  return std::sqrt(s);
}

} // namespace

Spectrum diagonalize(const HermitianMatrix8& h) {
  const double norm = h.frobenius_norm();
  if (h.hermiticity_defect() > 1e-13 * (1.0 + norm))
    throw ValidationError("diagonalize: input is not Hermitian within tolerance");

  // Work on the symmetrized copy (H + H^dagger)/2.
  std::array<cplx, 64> a;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      a[r * kDim + c] = 0.5 * (h(r, c) + std::conj(h(c, r)));

  std::array<cplx, 64> v{};
  for (int i = 0; i < kDim; ++i) v[i * kDim + i] = 1.0;

  const double target = 1e-14 * norm;
  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < kDim; ++p) {
      for (int q = p + 1; q < kDim; ++q) {
        const cplx apq = a[p * kDim + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;

        // Phase makes the 2x2 pivot block real symmetric; the rotation
        // angle is the classic smaller-root choice.
        const cplx phase = apq / r;
        const double app = a[p * kDim + p].real();
        const double aqq = a[q * kDim + q].real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx cphase = std::conj(phase);

        // A <- A U, columns p and q
        for (int k = 0; k < kDim; ++k) {
          const cplx akp = a[k * kDim + p];
          const cplx akq = a[k * kDim + q];
          a[k * kDim + p] = c * akp - s * cphase * akq;
          a[k * kDim + q] = s * akp + c * cphase * akq;
        }
        // A <- U^dagger A, rows p and q
        for (int k = 0; k < kDim; ++k) {
          const cplx apk = a[p * kDim + k];
          const cplx aqk = a[q * kDim + k];
          a[p * kDim + k] = c * apk - s * phase * aqk;
          a[q * kDim + k] = s * apk + c * phase * aqk;
        }
        // V <- V U
        for (int k = 0; k < kDim; ++k) {
          const cplx vkp = v[k * kDim + p];
          const cplx vkq = v[k * kDim + q];
          v[k * kDim + p] = c * vkp - s * cphase * vkq;
          v[k * kDim + q] = s * vkp + c * cphase * vkq;
        }
        // The rotation zeroes the pivot exactly; the diagonal stays real.
        a[p * kDim + q] = 0.0;
        a[q * kDim + p] = 0.0;
        a[p * kDim + p] = cplx(a[p * kDim + p].real(), 0.0);
        a[q * kDim + q] = cplx(a[q * kDim + q].real(), 0.0);
      }
    }
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) {
    std::ostringstream os;
    os << "diagonalize: off-diagonal norm " << off_diagonal_norm(a)
       << " above target " << target << " after " << kMaxSweeps << " sweeps";
    throw ConvergenceError(os.str());
  }

  std::array<double, kDim> lam;
  for (int i = 0; i < kDim; ++i) lam[i] = a[i * kDim + i].real();

  std::array<int, kDim> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return lam[i] < lam[j]; });

  Spectrum out;
  for (int col = 0; col < kDim; ++col) {
    const int src = order[col];
    out.eigenvalues[col] = lam[src];
    // Fix the global phase: largest-magnitude component real nonnegative.
    int kmax = 0;
    double best = -1.0;
    for (int k = 0; k < kDim; ++k) {
      const double m = std::norm(v[k * kDim + src]);
      if (m > best) {
        best = m;
        kmax = k;
      }
    }
    const cplx piv = v[kmax * kDim + src];
    const double mag = std::abs(piv);
    const cplx ph = mag > 0.0 ? cplx(piv / mag) : cplx(1.0, 0.0);
    const cplx cph = std::conj(ph);
    for (int k = 0; k < kDim; ++k) out.eigenvectors[k * kDim + col] = v[k * kDim + src] * cph;
  }
  return out;
}

} // namespace trimer
