#pragma once

// Adaptive Dormand-Prince 5(4) integration of complex ODE systems with cubic
// Hermite dense output on accepted steps.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// dy = f(t, y); dy is presized to y.size().
using VectorField = std::function<void(double t, const CVec& y, CVec& dy)>;

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0;  // 0 = automatic
  std::size_t max_steps = 50'000'000;
};

/// One accepted step, enough for Hermite interpolation inside [t0, t1].
struct DenseStep {
  double t0, t1;
  const CVec& y0;
  const CVec& y1;
  const CVec& f0;
  const CVec& f1;
  void interpolate(double t, CVec& out) const;
};

/// Called after every accepted step; return false to stop early.
using StepObserver = std::function<bool(const DenseStep&)>;

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
  bool stopped = false;  // observer requested a stop
  double t_final = 0;
};

/// Advances y from t0 to t1 (t1 < t0 integrates backwards).
IntegrationStats integrate(const VectorField& f, double t0, CVec& y, double t1,
                           const IntegratorConfig& config = {}, const StepObserver& observer = {});

struct Samples {
  std::vector<double> t;
  std::vector<CVec> y;
};

/// Values at the requested times, which must be monotone in the direction of
/// integration and start at or after t0.
Samples integrate_sampled(const VectorField& f, double t0, const CVec& y0,
                          const std::vector<double>& times, const IntegratorConfig& config = {},
                          IntegrationStats* stats = nullptr);

/// Every accepted step of one integration, for evaluation at arbitrary times.
class DenseTrajectory {
 public:
  void append(const DenseStep& step);
  bool empty() const { return t_.empty(); }
  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  /// Accepted step boundaries, in integration order.
  const std::vector<double>& knots() const { return t_; }
  const CVec& state_at_knot(std::size_t i) const { return y_[i]; }
  void eval(double t, CVec& out) const;
  CVec eval(double t) const;

 private:
  std::vector<double> t_;
  std::vector<CVec> y_, f_;
};

DenseTrajectory integrate_dense(const VectorField& f, double t0, const CVec& y0, double t1,
                                const IntegratorConfig& config = {},
                                IntegrationStats* stats = nullptr);

/// n uniform points on [a, b], both ends included.
std::vector<double> linspace(double a, double b, std::size_t n);

double ell1(const CVec& y);
double ell1_distance(const CVec& a, const CVec& b);

}  // namespace nlslab
