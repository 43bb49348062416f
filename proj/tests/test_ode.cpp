#include <doctest.h>

#include "nlslab/error.hpp"
#include "nlslab/ode.hpp"
#include "nlslab/toy_model.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace nlslab;

namespace {

VectorField rotation(double w) {
  return [w](double, const CVec& y, CVec& dy) {
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] = cplx(0, w) * y[i];
  };
}

}  // namespace

TEST_CASE("linear rotation matches the exponential") {
  CVec y{1.0, cplx(0.3, -0.4)};
  const CVec y0 = y;
  auto st = integrate(rotation(1.5), 0, y, 20, {1e-11, 1e-11});
  CHECK(st.accepted > 0);
  CHECK(st.t_final == 20);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(std::abs(y[i] - y0[i] * std::exp(cplx(0, 30))) < 1e-8);
}

TEST_CASE("nonlinear system agrees with fixed-step RK4") {
  CVec b0{cplx(0.9, 0.1), cplx(0.2, -0.3), cplx(-0.1, 0.25), cplx(0.05, 0.0)};
  CVec y = b0;
  integrate([](double, const CVec& b, CVec& db) { toy_field(b, db); }, 0, y, 6, {1e-12, 1e-12});
  CVec ref = oracle::rk4([](const CVec& b) { return toy_field(b); }, b0, 6, 20000);
  CHECK(oracle::max_abs_diff(y, ref) < 1e-9);
}

TEST_CASE("backward integration retraces the forward one") {
  CVec b0{cplx(0.7, 0.0), cplx(0.3, 0.5), cplx(-0.2, 0.1)};
  CVec y = b0;
  VectorField f = [](double, const CVec& b, CVec& db) { toy_field(b, db); };
  integrate(f, 0, y, 15, {1e-12, 1e-12});
  auto st = integrate(f, 15, y, 0, {1e-12, 1e-12});
  CHECK(st.t_final == 0);
  CHECK(oracle::max_abs_diff(y, b0) < 1e-8);
}

TEST_CASE("sampled output lands on the requested times") {
  auto times = linspace(0, 3, 7);
  auto s = integrate_sampled(rotation(-2), 0, {cplx(1, 0)}, times, {1e-11, 1e-11});
  REQUIRE(s.t.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(s.t[i] == times[i]);
    CHECK(std::abs(s.y[i][0] - std::exp(cplx(0, -2 * times[i]))) < 1e-7);
  }
  CHECK_THROWS_AS(integrate_sampled(rotation(1), 0, {cplx(1, 0)}, {1.0, 0.5}), Error);
}

TEST_CASE("dense trajectory interpolates between steps") {
  auto tr = integrate_dense(rotation(1), 0, {cplx(1, 0)}, 10, {1e-12, 1e-12, 0.05});
  CHECK(tr.knots().size() > 100);
  for (double t : {0.0, 0.013, 3.3333, 7.77, 10.0})
    CHECK(std::abs(tr.eval(t)[0] - std::exp(cplx(0, t))) < 1e-7);
  CHECK_THROWS_AS(tr.eval(10.5), Error);

  auto back = integrate_dense(rotation(1), 0, {cplx(1, 0)}, -4, {1e-12, 1e-12, 0.05});
  CHECK(std::abs(back.eval(-2.5)[0] - std::exp(cplx(0, -2.5))) < 1e-7);
  CHECK_THROWS_AS(back.eval(0.5), Error);

  auto zero = integrate_dense(rotation(1), 2, {cplx(1, 0)}, 2);
  CHECK(zero.eval(2.0)[0] == cplx(1, 0));
}

TEST_CASE("observer can stop the integration") {
  CVec y{cplx(1, 0)};
  int calls = 0;
  auto st = integrate(rotation(1), 0, y, 100, {}, [&](const DenseStep&) { return ++calls < 3; });
  CHECK(st.stopped);
  CHECK(st.accepted == 3);
  CHECK(st.t_final < 100);
}

TEST_CASE("integrator errors") {
  CVec y{cplx(1, 0)};
  IntegratorConfig bad;
  bad.rtol = 0;
  try {
    integrate(rotation(1), 0, y, 1, bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
  IntegratorConfig tiny;
  tiny.max_steps = 5;
  try {
    integrate(rotation(50), 0, y, 100, tiny);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::numeric);
  }
  // finite-time blow-up of y' = y^2 forces the step to collapse
  VectorField blow = [](double, const CVec& v, CVec& dv) { dv[0] = v[0] * v[0]; };
  CVec z{cplx(1, 0)};
  CHECK_THROWS_AS(integrate(blow, 0, z, 2, {1e-10, 1e-10}), Error);
}

TEST_CASE("small utilities") {
  auto v = linspace(1, 2, 5);
  CHECK(v.size() == 5);
  CHECK(v[2] == doctest::Approx(1.5));
  CHECK(v.back() == 2);
  CHECK(linspace(3, 4, 1) == std::vector<double>{3});
  CHECK(ell1({cplx(3, 4), cplx(-1, 0)}) == doctest::Approx(6));
  CHECK(ell1_distance({cplx(1, 1)}, {cplx(1, 0)}) == doctest::Approx(1));
}
