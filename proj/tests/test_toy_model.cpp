#include <doctest.h>

#include "nlslab/error.hpp"
#include "nlslab/toy_model.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace nlslab;

namespace {

double toy_h(const CVec& b) {
  double h = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    h += 0.5 * std::pow(std::abs(b[i]), 4);
    if (i + 1 < b.size()) h -= 2 * (std::pow(std::conj(b[i]), 2) * std::pow(b[i + 1], 2)).real();
  }
  return h;
}

CVec random_state(std::mt19937_64& rng, std::size_t n, double scale = 1) {
  std::normal_distribution<double> g;
  CVec b(n);
  for (auto& x : b) x = scale * cplx(g(rng), g(rng));
  return b;
}

// Resonant field on Lambda from first principles: every ordered triple with
// n1 - n2 + n3 = n, n2 outside {n1, n3}, and exact frequency resonance.
CVec resonant_field_oracle(const LambdaSet& set, const CVec& r) {
  auto modes = set.modes();
  const std::int64_t p = set.p(), q = set.q();
  CVec out(modes.size());
  for (std::size_t a = 0; a < modes.size(); ++a) {
    cplx acc = -std::norm(r[a]) * r[a];
    for (std::size_t i = 0; i < modes.size(); ++i)
      for (std::size_t j = 0; j < modes.size(); ++j)
        for (std::size_t k = 0; k < modes.size(); ++k) {
          if (j == i || j == k) continue;
          const Mode &n1 = modes[i], &n2 = modes[j], &n3 = modes[k], &n = modes[a];
          if (n1.j - n2.j + n3.j != n.j || n1.k - n2.k + n3.k != n.k) continue;
          std::int64_t jj = n1.j * n1.j - n2.j * n2.j + n3.j * n3.j - n.j * n.j;
          std::int64_t kk = n1.k * n1.k - n2.k * n2.k + n3.k * n3.k - n.k * n.k;
          // frequency j^2 + (p/q)^2 k^2 resonance, times q^2
          if (q * q * jj + p * p * kk != 0) continue;
          acc += r[i] * std::conj(r[j]) * r[k];
        }
    out[a] = cplx(0, 1) * acc;
  }
  return out;
}

}  // namespace

TEST_CASE("toy field is -i times the conjugate gradient of h") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {2, 3, 5, 8}) {
    CVec b = random_state(rng, n, 0.5);
    CVec g = oracle::wirtinger_conj_gradient(toy_h, b);
    CVec f = toy_field(b);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(f[i] - cplx(0, -1) * g[i]) < 1e-7);
    auto inv = toy_invariants(b);
    CHECK(inv.energy == doctest::Approx(toy_h(b)).epsilon(1e-12));
  }
}

TEST_CASE("a single occupied mode rotates at rate |a|^2") {
  const cplx a(0.6, 0.8);
  auto tr = integrate_toy({0, 0, a, 0}, 10, {1e-12, 1e-12}, 11);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    CHECK(std::abs(tr.b[i][2] - a * std::exp(cplx(0, -tr.t[i]))) < 1e-9);
    CHECK(tr.b[i][0] == cplx(0, 0));
    CHECK(tr.b[i][3] == cplx(0, 0));
  }
}

TEST_CASE("mass and energy are conserved") {
  std::mt19937_64 rng(11);
  CVec b0 = random_state(rng, 6, 0.3);
  auto tr = integrate_toy(b0, 100, {1e-11, 1e-11});
  auto i0 = toy_invariants(b0);
  for (const auto& b : tr.b) {
    auto inv = toy_invariants(b);
    CHECK(std::abs(inv.mass - i0.mass) < 1e-8);
    CHECK(std::abs(inv.energy - i0.energy) < 1e-8);
  }
}

TEST_CASE("time reversal: conj(b(-t)) is a solution") {
  std::mt19937_64 rng(3);
  CVec b0 = random_state(rng, 4, 0.5);
  auto fwd = integrate_toy_dense(b0, 5, {1e-12, 1e-12});
  CVec c0(b0.size());
  for (std::size_t i = 0; i < b0.size(); ++i) c0[i] = std::conj(b0[i]);
  CVec y = c0;
  integrate([](double, const CVec& b, CVec& db) { toy_field(b, db); }, 0, y, -5, {1e-12, 1e-12});
  CVec expect = fwd.eval(5);
  for (auto& x : expect) x = std::conj(x);
  CHECK(oracle::max_abs_diff(y, expect) < 1e-8);
}

TEST_CASE("lambda scaling matches direct integration of the scaled data") {
  std::mt19937_64 rng(5);
  CVec b0 = random_state(rng, 4, 0.4);
  const double T = 3;
  auto base = integrate_toy_dense(b0, T, {1e-12, 1e-12});
  auto sampled = integrate_toy(b0, T, {1e-12, 1e-12}, 4);
  for (double lambda : {0.5, 2.0, 10.0}) {
    CVec c0 = b0;
    for (auto& x : c0) x /= lambda;
    auto direct = integrate_toy_dense(c0, T * lambda * lambda, {1e-12, 1e-12 / lambda});
    auto scaled = scale_solution(sampled, lambda);
    for (std::size_t i = 0; i < scaled.t.size(); ++i) {
      CHECK(scaled.t[i] == doctest::Approx(sampled.t[i] * lambda * lambda));
      CHECK(oracle::max_abs_diff(direct.eval(scaled.t[i]), scaled.b[i]) < 1e-8 / lambda);
    }
    const double t = 0.37 * T * lambda * lambda;
    CHECK(oracle::max_abs_diff(direct.eval(t), scaled_state(base, lambda, t)) < 1e-8 / lambda);
  }
  CHECK_THROWS_AS(scale_solution(sampled, 0), Error);
}

TEST_CASE("csv export") {
  ToyTrajectory tr{{0.0, 1.0}, {{cplx(1, 0), cplx(0, 0)}, {cplx(0, 1), cplx(0, 0)}}};
  std::ostringstream os;
  write_toy_csv(os, tr);
  std::string s = os.str();
  CHECK(s.rfind("t,re_b1,im_b1,re_b2,im_b2,mass,energy\n", 0) == 0);
  CHECK(s.find("\n0,1,0,0,0,1,0.5\n") != std::string::npos);
  CHECK(s.find("\n1,0,1,0,0,1,0.5\n") != std::string::npos);
}

TEST_CASE("spouse system: field matches first principles and reduces to the toy model") {
  for (int N : {2, 3, 4}) {
    CAPTURE(N);
    LambdaSet set = N == 2 ? scale_set(unit_square(), 1, 1) : scale_set(build_base_set(N), 3, 2);
    auto tab = spouse_tables(set);
    REQUIRE(tab.members.size() == static_cast<std::size_t>(N));
    std::mt19937_64 rng(N);
    CVec r = random_state(rng, set.size(), 0.4);
    CVec dr;
    spouse_field(tab, r, dr);
    CHECK(oracle::max_abs_diff(dr, resonant_field_oracle(set, r)) < 1e-12);

    CVec b0 = random_state(rng, N, 0.4);
    auto toy = integrate_toy_dense(b0, 50, {1e-12, 1e-12});
    auto sp = integrate_spouse(tab, lift_to_lambda(tab, b0), 50, {1e-12, 1e-12});
    CHECK(project_to_generations(tab, sp.eval(50)).spread <= 1e-9);
    // the orbit is chaotic at this mass, so compare values before errors amplify
    CHECK(oracle::max_abs_diff(project_to_generations(tab, sp.eval(5)).mean, toy.eval(5)) < 1e-9);
  }
}

TEST_CASE("spouse tables need the family relations") {
  BaseSet bare({{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}}, {});
  try {
    spouse_tables(scale_set(bare, 1, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
}

TEST_CASE("transfer orbits concentrate on the target generation") {
  for (int N : {5, 6}) {
    CAPTURE(N);
    auto res = find_transfer_orbit(N, 0.01);
    CHECK(res.concentration >= 0.7);
    CHECK(res.T0 > 0);
    CHECK(res.handoff_times.size() == static_cast<std::size_t>(N - 3));
    for (std::size_t i = 1; i < res.handoff_times.size(); ++i)
      CHECK(res.handoff_times[i] >= res.handoff_times[i - 1]);
    double mass = 0;
    for (const auto& x : res.b0) mass += std::norm(x);
    CHECK(mass == doctest::Approx(1).epsilon(1e-12));
    CHECK(res.b0[0] == cplx(0, 0));
    CHECK(res.b0[N - 1] == cplx(0, 0));
    CHECK(std::abs(res.b0[1]) == doctest::Approx(std::sqrt(0.99)));
    // replay the orbit independently
    auto tr = integrate_toy_dense(res.b0, res.T0, {1e-11, 1e-11});
    CHECK(std::norm(tr.eval(res.T0)[N - 2]) == doctest::Approx(res.concentration).epsilon(1e-6));
    CHECK(res.peak[N - 2] >= res.concentration);
  }
}

TEST_CASE("transfer search edge cases") {
  TransferSearchConfig cfg;
  cfg.start = 2;
  cfg.target = 2;
  auto r = find_transfer_orbit(4, 0.1, cfg);
  CHECK(r.T0 == 0);
  CHECK(r.concentration == 1);
  CHECK_THROWS_AS(find_transfer_orbit(1, 0.1), Error);
  CHECK_THROWS_AS(find_transfer_orbit(5, 0.0), Error);
  CHECK_THROWS_AS(find_transfer_orbit(5, 1.0), Error);
  TransferSearchConfig far;
  far.threshold = 1.01;
  far.phase_grid = 8;
  far.refine_iterations = 4;
  try {
    find_transfer_orbit(4, 0.05, far);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::search_exhausted);
  }
}
