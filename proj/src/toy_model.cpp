#include "nlslab/toy_model.hpp"

#include "nlslab/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace nlslab {

void toy_field(const CVec& b, CVec& db) {
  const std::size_t n = b.size();
  db.resize(n);
  const cplx I(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    cplx nb = (i > 0 ? b[i - 1] * b[i - 1] : cplx(0)) + (i + 1 < n ? b[i + 1] * b[i + 1] : cplx(0));
    db[i] = -I * b[i] * b[i] * std::conj(b[i]) + 2.0 * I * std::conj(b[i]) * nb;
  }
}

CVec toy_field(const CVec& b) {
  CVec db;
  toy_field(b, db);
  return db;
}

ToyInvariants toy_invariants(const CVec& b) {
  ToyInvariants inv;
  for (std::size_t i = 0; i < b.size(); ++i) {
    double m = std::norm(b[i]);
    inv.mass += m;
    inv.energy += 0.5 * m * m;
    if (i + 1 < b.size()) {
      cplx x = std::conj(b[i] * b[i]) * b[i + 1] * b[i + 1];
      inv.energy -= 2 * x.real();
    }
  }
  return inv;
}

namespace {

VectorField toy_vf() {
  return [](double, const CVec& y, CVec& dy) { toy_field(y, dy); };
}

}  // namespace

ToyTrajectory integrate_toy(const CVec& b0, double t_end, const IntegratorConfig& config,
                            std::size_t n) {
  if (t_end < 0) fail(ErrorKind::config, "t_end must be nonnegative");
  ToyTrajectory out;
  if (n == 0) {
    out.t.push_back(0);
    out.b.push_back(b0);
    CVec y = b0;
    integrate(toy_vf(), 0, y, t_end, config, [&](const DenseStep& s) {
      out.t.push_back(s.t1);
      out.b.push_back(s.y1);
      return true;
    });
    return out;
  }
  if (n < 2) fail(ErrorKind::config, "need at least two samples");
  auto s = integrate_sampled(toy_vf(), 0, b0, linspace(0, t_end, n), config);
  out.t = std::move(s.t);
  out.b = std::move(s.y);
  return out;
}

DenseTrajectory integrate_toy_dense(const CVec& b0, double t_end, const IntegratorConfig& config) {
  return integrate_dense(toy_vf(), 0, b0, t_end, config);
}

ToyTrajectory scale_solution(const ToyTrajectory& traj, double lambda) {
  if (!(lambda > 0)) fail(ErrorKind::config, "lambda must be positive");
  ToyTrajectory out;
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out.t.push_back(traj.t[i] * lambda * lambda);
    CVec b = traj.b[i];
    for (auto& x : b) x /= lambda;
    out.b.push_back(std::move(b));
  }
  return out;
}

CVec scaled_state(const DenseTrajectory& traj, double lambda, double t) {
  CVec b = traj.eval(t / (lambda * lambda));
  for (auto& x : b) x /= lambda;
  return b;
}

void write_toy_csv(std::ostream& out, const ToyTrajectory& traj, std::size_t stride) {
  if (stride == 0) stride = 1;
  const std::size_t N = traj.b.empty() ? 0 : traj.b.front().size();
  out << "t";
  for (std::size_t i = 1; i <= N; ++i) out << ",re_b" << i << ",im_b" << i;
  out << ",mass,energy\n";
  out.precision(17);
  for (std::size_t k = 0; k < traj.t.size(); k += stride) {
    out << traj.t[k];
    for (const auto& x : traj.b[k]) out << "," << x.real() << "," << x.imag();
    auto inv = toy_invariants(traj.b[k]);
    out << "," << inv.mass << "," << inv.energy << "\n";
  }
}

Peak peak_concentration(const CVec& b0, int gen, double t_end, const IntegratorConfig& config,
                        double t_begin) {
  Peak pk{t_begin > 0 ? t_end : 0, t_begin > 0 ? 0 : std::norm(b0.at(gen))};
  CVec y = b0, buf;
  integrate(toy_vf(), 0, y, t_end, config, [&](const DenseStep& s) {
    // sample each step finely enough to resolve the maximum
    for (int k = 1; k <= 8; ++k) {
      double t = s.t0 + (s.t1 - s.t0) * k / 8.0;
      if (t < t_begin) continue;
      s.interpolate(t, buf);
      double v = std::norm(buf[gen]);
      if (v > pk.value) pk = {t, v};
    }
    return true;
  });
  return pk;
}

TransferResult find_transfer_orbit(int N, double delta, const TransferSearchConfig& cfg) {
  if (N < 2) fail(ErrorKind::config, "transfer search needs N >= 2");
  if (!(delta > 0 && delta < 1)) fail(ErrorKind::config, "delta must lie in (0, 1)");
  const int start = cfg.start;
  const int target = cfg.target < 0 ? N - 2 : cfg.target;
  if (start < 0 || target >= N || target < start)
    fail(ErrorKind::config, "need 0 <= start <= target < N");
  TransferResult res;
  res.b0.assign(N, 0);
  res.peak.assign(N, 0);
  if (start == target) {
    res.b0[start] = 1;
    res.concentration = 1;
    res.peak[start] = 1;
    return res;
  }
  res.b0[start] = std::sqrt(1 - delta);
  const double eps = std::sqrt(delta / (target - start));
  const double two_pi = 2 * std::numbers::pi;
  double horizon = 0;
  for (int g = start + 1; g <= target; ++g) {
    const double t_end = horizon + cfg.window;
    auto trial = [&](double theta) {
      CVec b = res.b0;
      b[g] = std::polar(eps, theta);
      return peak_concentration(b, g, t_end, cfg.integrator, horizon);
    };
    const std::size_t M = std::max<std::size_t>(cfg.phase_grid, 4);
    std::vector<Peak> grid(M);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < M; ++k) grid[k] = trial(two_pi * static_cast<double>(k) / M);
    res.integrations += M;
    std::size_t best = 0;
    for (std::size_t k = 1; k < M; ++k)
      if (grid[k].value > grid[best].value) best = k;
    // golden-section refinement on the bracketing cell
    double lo = two_pi * (static_cast<double>(best) - 1) / M, hi = two_pi * (static_cast<double>(best) + 1) / M;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    Peak f1 = trial(x1), f2 = trial(x2);
    res.integrations += 2;
    for (std::size_t it = 0; it < cfg.refine_iterations; ++it) {
      if (f1.value >= f2.value) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = trial(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = trial(x2);
      }
      ++res.integrations;
    }
    double theta = two_pi * static_cast<double>(best) / M;
    Peak pk = grid[best];
    if (f1.value > pk.value) {
      theta = x1;
      pk = f1;
    }
    if (f2.value > pk.value) {
      theta = x2;
      pk = f2;
    }
    res.b0[g] = std::polar(eps, theta);
    res.handoff_times.push_back(pk.time);
    horizon = pk.time;
    if (g == target) {
      res.T0 = pk.time;
      res.concentration = pk.value;
    }
  }
  // peaks of every generation along the final orbit
  CVec y = res.b0, buf;
  for (int i = 0; i < N; ++i) res.peak[i] = std::norm(y[i]);
  integrate(toy_vf(), 0, y, res.T0, cfg.integrator, [&](const DenseStep& s) {
    for (int k = 1; k <= 8; ++k) {
      s.interpolate(s.t0 + (s.t1 - s.t0) * k / 8.0, buf);
      for (int i = 0; i < N; ++i) res.peak[i] = std::max(res.peak[i], std::norm(buf[i]));
    }
    return true;
  });
  if (res.concentration < cfg.threshold)
    fail(ErrorKind::search_exhausted,
         "search-failed: best concentration " + std::to_string(res.concentration) +
             " below threshold " + std::to_string(cfg.threshold));
  return res;
}

// --- spouse/child system ----------------------------------------------------------

SpouseTables spouse_tables(const LambdaSet& set) {
  SpouseTables tab;
  std::map<ModeRef, int> index;
  int k = 0;
  for (std::size_t g = 0; g < set.num_generations(); ++g) {
    tab.members.emplace_back();
    for (std::size_t i = 0; i < set.generations()[g].size(); ++i) {
      index[{static_cast<int>(g), static_cast<int>(i)}] = k;
      tab.generation.push_back(static_cast<int>(g));
      tab.members.back().push_back(k);
      ++k;
    }
  }
  const int N = static_cast<int>(set.num_generations());
  for (const auto& r : set.base().refs()) {
    const Relations& rel = set.relations(r);
    bool need_down = r.gen + 1 < N, need_up = r.gen > 0;
    if ((need_down && (!rel.spouse || !rel.children)) || (need_up && (!rel.parents || !rel.sibling)))
      fail(ErrorKind::config, "relations-missing for mode " + set.at(r).to_string());
    tab.spouse.push_back(rel.spouse ? index.at(*rel.spouse) : -1);
    tab.sibling.push_back(rel.sibling ? index.at(*rel.sibling) : -1);
    tab.children.push_back(rel.children ? std::array<int, 2>{index.at((*rel.children)[0]),
                                                             index.at((*rel.children)[1])}
                                        : std::array<int, 2>{-1, -1});
    tab.parents.push_back(rel.parents ? std::array<int, 2>{index.at((*rel.parents)[0]),
                                                           index.at((*rel.parents)[1])}
                                      : std::array<int, 2>{-1, -1});
  }
  return tab;
}

void spouse_field(const SpouseTables& tab, const CVec& r, CVec& dr) {
  const std::size_t n = r.size();
  dr.resize(n);
  const cplx I(0, 1);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc = -r[i] * std::norm(r[i]);
    if (tab.spouse[i] >= 0 && tab.children[i][0] >= 0)
      acc += 2.0 * r[tab.children[i][0]] * r[tab.children[i][1]] * std::conj(r[tab.spouse[i]]);
    if (tab.sibling[i] >= 0 && tab.parents[i][0] >= 0)
      acc += 2.0 * r[tab.parents[i][0]] * r[tab.parents[i][1]] * std::conj(r[tab.sibling[i]]);
    dr[i] = I * acc;
  }
}

DenseTrajectory integrate_spouse(const SpouseTables& tab, const CVec& r0, double t_end,
                                 const IntegratorConfig& config) {
  if (t_end < 0) fail(ErrorKind::config, "t_end must be nonnegative");
  VectorField f = [&tab](double, const CVec& y, CVec& dy) { spouse_field(tab, y, dy); };
  return integrate_dense(f, 0, r0, t_end, config);
}

CVec lift_to_lambda(const SpouseTables& tab, const CVec& b) {
  if (b.size() != tab.members.size()) fail(ErrorKind::config, "toy state length differs from N");
  CVec r(tab.generation.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[tab.generation[i]];
  return r;
}

GenerationProjection project_to_generations(const SpouseTables& tab, const CVec& r) {
  GenerationProjection p;
  p.mean.assign(tab.members.size(), 0);
  for (std::size_t g = 0; g < tab.members.size(); ++g) {
    for (int i : tab.members[g]) p.mean[g] += r[i];
    if (!tab.members[g].empty()) p.mean[g] /= static_cast<double>(tab.members[g].size());
    for (int i : tab.members[g]) p.spread = std::max(p.spread, std::abs(r[i] - p.mean[g]));
  }
  return p;
}

}  // namespace nlslab
