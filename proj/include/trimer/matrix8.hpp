#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace trimer {

using cplx = std::complex<double>;

// Dense 8x8 complex matrix, row-major. The producers in this library only
// ever hand out Hermitian instances; hermiticity is checked where a contract
// depends on it, not enforced by the storage.
class HermitianMatrix8 {
public:
  static constexpr int dim = 8;

  HermitianMatrix8() : a_{} {}

  cplx& operator()(int r, int c) { return a_[r * dim + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * dim + c]; }

  static HermitianMatrix8 identity() {
    HermitianMatrix8 m;
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  HermitianMatrix8& operator+=(const HermitianMatrix8& o) {
    for (int i = 0; i < dim * dim; ++i) a_[i] += o.a_[i];
    return *this;
  }

  HermitianMatrix8& operator*=(double s) {
    for (int i = 0; i < dim * dim; ++i) a_[i] *= s;
    return *this;
  }

  // this += s * o
  void add_scaled(const HermitianMatrix8& o, double s) {
    for (int i = 0; i < dim * dim; ++i) a_[i] += s * o.a_[i];
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim * dim; ++i) s += std::norm(a_[i]);
    return std::sqrt(s);
  }

  // ||A - A^dagger||_F
  double hermiticity_defect() const {
    double s = 0.0;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        s += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
    return std::sqrt(s);
  }

private:
  std::array<cplx, dim * dim> a_;
};

inline HermitianMatrix8 operator*(const HermitianMatrix8& a, const HermitianMatrix8& b) {
  HermitianMatrix8 m;
  for (int r = 0; r < HermitianMatrix8::dim; ++r)
    for (int k = 0; k < HermitianMatrix8::dim; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (int c = 0; c < HermitianMatrix8::dim; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

inline HermitianMatrix8 operator-(const HermitianMatrix8& a, const HermitianMatrix8& b) {
  HermitianMatrix8 m = a;
  for (int r = 0; r < HermitianMatrix8::dim; ++r)
    for (int c = 0; c < HermitianMatrix8::dim; ++c) m(r, c) -= b(r, c);
  return m;
}

} // namespace trimer
