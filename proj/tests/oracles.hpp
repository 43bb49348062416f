#pragma once

// Reference routines shared by the tests. Deliberately naive.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using Field = std::function<CVec(const CVec&)>;

/// Classical fourth-order Runge-Kutta with n equal steps.
inline CVec rk4(const Field& f, CVec y, double T, std::size_t n) {
  const double h = T / static_cast<double>(n);
  auto axpy = [](const CVec& a, double s, const CVec& b) {
    CVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  for (std::size_t s = 0; s < n; ++s) {
    CVec k1 = f(y);
    CVec k2 = f(axpy(y, h / 2, k1));
    CVec k3 = f(axpy(y, h / 2, k2));
    CVec k4 = f(axpy(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

/// d/d conj(z_i) of a real function by central differences: (d/dx + i d/dy) / 2.
inline CVec wirtinger_conj_gradient(const std::function<double(const CVec&)>& h, const CVec& z,
                                    double step = 1e-6) {
  CVec g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    CVec a = z, b = z;
    a[i] += step;
    b[i] -= step;
    double dx = (h(a) - h(b)) / (2 * step);
    a = z;
    b = z;
    a[i] += cplx(0, step);
    b[i] -= cplx(0, step);
    double dy = (h(a) - h(b)) / (2 * step);
    g[i] = 0.5 * cplx(dx, dy);
  }
  return g;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
