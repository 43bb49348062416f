#include "nlslab/ode.hpp"

#include "nlslab/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace nlslab {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double scaled_norm(const CVec& v, const CVec& y0, const CVec& y1, const IntegratorConfig& c) {
  if (v.empty()) return 0;
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double sc = c.atol + c.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    double r = std::abs(v[i]) / sc;
    s += r * r;
  }
  return std::sqrt(s / static_cast<double>(v.size()));
}

double initial_step(const VectorField& f, double t0, const CVec& y0, const CVec& f0, double dir,
                    const IntegratorConfig& c, std::size_t& evals) {
  double d0 = scaled_norm(y0, y0, y0, c), d1 = scaled_norm(f0, y0, y0, c);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, c.max_step);
  CVec y1(y0.size()), f1(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + dir * h0 * f0[i];
  f(t0 + dir * h0, y1, f1);
  ++evals;
  CVec df(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) df[i] = f1[i] - f0[i];
  double d2 = scaled_norm(df, y0, y0, c) / h0;
  double h1 = (std::max(d1, d2) <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                          : std::pow(0.01 / std::max(d1, d2), 1.0 / 5);
  return std::min({100 * h0, h1, c.max_step});
}

}  // namespace

void DenseStep::interpolate(double t, CVec& out) const {
  const double h = t1 - t0;
  out.resize(y0.size());
  if (h == 0) {
    out = y1;
    return;
  }
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2,
               h11 = s3 - s2;
  for (std::size_t i = 0; i < y0.size(); ++i)
    out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
}

IntegrationStats integrate(const VectorField& f, double t0, CVec& y, double t1,
                           const IntegratorConfig& c, const StepObserver& observer) {
  if (!(c.rtol > 0) || !(c.atol > 0)) fail(ErrorKind::config, "tolerances must be positive");
  IntegrationStats st;
  st.t_final = t0;
  if (t1 == t0) return st;
  const std::size_t n = y.size();
  const double dir = t1 > t0 ? 1.0 : -1.0;
  CVec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);
  f(t0, y, k1);
  ++st.evaluations;
  double h = c.initial_step > 0 ? c.initial_step : initial_step(f, t0, y, k1, dir, c, st.evaluations);
  double t = t0;
  while (dir * (t1 - t) > 0) {
    if (st.accepted + st.rejected >= c.max_steps)
      fail(ErrorKind::numeric, "tolerance-unmet: step budget exhausted at t = " + std::to_string(t));
    h = std::min(h, c.max_step);
    bool last = false;
    if (h >= dir * (t1 - t)) {
      h = dir * (t1 - t);
      last = true;
    }
    const double hs = dir * h;
    if (std::abs(hs) <= 1e-14 * std::max(1.0, std::abs(t)))
      fail(ErrorKind::numeric, "step-underflow at t = " + std::to_string(t));
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a21 * k1[i]);
    f(t + c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + hs, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + hs, ynew, k7);
    st.evaluations += 6;
    for (std::size_t i = 0; i < n; ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    double en = scaled_norm(err, y, ynew, c);
    if (!std::isfinite(en)) {
      ++st.rejected;
      h *= 0.2;
      continue;
    }
    if (en <= 1.0) {
      ++st.accepted;
      double tnew = last ? t1 : t + hs;
      bool keep = true;
      if (observer) keep = observer(DenseStep{t, tnew, y, ynew, k1, k7});
      t = tnew;
      std::swap(y, ynew);
      std::swap(k1, k7);
      if (!keep) {
        st.stopped = true;
        break;
      }
      double fac = en == 0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++st.rejected;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
    }
  }
  st.t_final = t;
  return st;
}

Samples integrate_sampled(const VectorField& f, double t0, const CVec& y0,
                          const std::vector<double>& times, const IntegratorConfig& config,
                          IntegrationStats* stats) {
  Samples out;
  if (times.empty()) return out;
  const double t_end = times.back();
  const double dir = t_end >= t0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (dir * (times[i] - t0) < 0 || (i > 0 && dir * (times[i] - times[i - 1]) < 0))
      fail(ErrorKind::config, "sample times must be monotone from t0");
  }
  std::size_t next = 0;
  while (next < times.size() && times[next] == t0) {
    out.t.push_back(t0);
    out.y.push_back(y0);
    ++next;
  }
  CVec y = y0, buf;
  auto obs = [&](const DenseStep& s) {
    while (next < times.size() && dir * (times[next] - s.t1) <= 0) {
      s.interpolate(times[next], buf);
      out.t.push_back(times[next]);
      out.y.push_back(times[next] == s.t1 ? s.y1 : buf);
      ++next;
    }
    return true;
  };
  auto st = integrate(f, t0, y, t_end, config, obs);
  if (stats) *stats = st;
  return out;
}

void DenseTrajectory::append(const DenseStep& s) {
  if (t_.empty()) {
    t_.push_back(s.t0);
    y_.push_back(s.y0);
    f_.push_back(s.f0);
  }
  t_.push_back(s.t1);
  y_.push_back(s.y1);
  f_.push_back(s.f1);
}

void DenseTrajectory::eval(double t, CVec& out) const {
  if (t_.empty()) fail(ErrorKind::domain, "empty trajectory");
  const bool forward = t_.back() >= t_.front();
  const double lo = forward ? t_.front() : t_.back(), hi = forward ? t_.back() : t_.front();
  const double span = std::max(1.0, hi - lo);
  if (t < lo - 1e-12 * span || t > hi + 1e-12 * span)
    fail(ErrorKind::domain, "time " + std::to_string(t) + " outside the trajectory");
  if (t_.size() == 1) {
    out = y_.front();
    return;
  }
  std::size_t k;
  if (forward) {
    k = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin());
  } else {
    k = static_cast<std::size_t>(
        std::upper_bound(t_.begin(), t_.end(), t, std::greater<double>()) - t_.begin());
  }
  k = std::clamp<std::size_t>(k, 1, t_.size() - 1);
  DenseStep{t_[k - 1], t_[k], y_[k - 1], y_[k], f_[k - 1], f_[k]}.interpolate(t, out);
}

CVec DenseTrajectory::eval(double t) const {
  CVec out;
  eval(t, out);
  return out;
}

DenseTrajectory integrate_dense(const VectorField& f, double t0, const CVec& y0, double t1,
                                const IntegratorConfig& config, IntegrationStats* stats) {
  DenseTrajectory tr;
  CVec y = y0;
  auto st = integrate(f, t0, y, t1, config, [&](const DenseStep& s) {
    tr.append(s);
    return true;
  });
  if (tr.empty()) {
    CVec dy(y0.size());
    f(t0, y0, dy);
    tr.append(DenseStep{t0, t0, y0, y0, dy, dy});
  }
  if (stats) *stats = st;
  return tr;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  return v;
}

double ell1(const CVec& y) {
  double s = 0;
  for (const auto& x : y) s += std::abs(x);
  return s;
}

double ell1_distance(const CVec& a, const CVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace nlslab
