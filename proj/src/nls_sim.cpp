#include "nlslab/nls_sim.hpp"

#include "nlslab/error.hpp"
#include "nlslab/resonance.hpp"

#include <nlohmann/json.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

namespace nlslab {

double eigenvalue(const Mode& n, double omega2) {
  const double j = static_cast<double>(n.j), k = static_cast<double>(n.k);
  return j * j + omega2 * k * k;
}

Scalar eigenvalue_exact(const Mode& n, const OmegaSpec& omega) {
  return Scalar(QuadNum(Rational(n.j * n.j))) + omega.squared() * Scalar(QuadNum(Rational(n.k * n.k)));
}

SparseFourierState gauge_transform(const SparseFourierState& s, Frame target) {
  if (target == s.frame) return s;
  if (s.frame == Frame::rotating || target == Frame::rotating)
    fail(ErrorKind::config, "gauge transform acts between physical and gauged frames");
  const double G = 2 * mass(s);
  const double sign = target == Frame::gauged ? -1.0 : 1.0;
  const cplx ph = std::polar(1.0, sign * G * s.t);
  CVec amp = s.amp;
  for (auto& a : amp) a *= ph;
  return SparseFourierState(s.modes, std::move(amp), target, s.t);
}

SparseFourierState rotate_frame(const SparseFourierState& s, Frame target, double omega2) {
  if (target == s.frame) return s;
  if (s.frame == Frame::physical || target == Frame::physical)
    fail(ErrorKind::config, "frame rotation acts between gauged and rotating frames");
  const double sign = target == Frame::rotating ? -1.0 : 1.0;
  CVec amp = s.amp;
  for (std::size_t i = 0; i < amp.size(); ++i)
    amp[i] *= std::polar(1.0, sign * eigenvalue(s.modes[i], omega2) * s.t);
  return SparseFourierState(s.modes, std::move(amp), target, s.t);
}

// --- truncation --------------------------------------------------------------

void TruncationRegion::index() {
  slot_.clear();
  for (std::size_t i = 0; i < modes_.size(); ++i) slot_[modes_[i]] = i;
}

TruncationRegion TruncationRegion::box(std::int64_t M) {
  if (M < 0) fail(ErrorKind::config, "box half-width must be nonnegative");
  TruncationRegion r;
  for (std::int64_t j = -M; j <= M; ++j)
    for (std::int64_t k = -M; k <= M; ++k) r.modes_.push_back({j, k});
  r.in_lambda_.assign(r.modes_.size(), 1);
  r.max_outsiders_ = -1;
  r.descriptor_ = "box(" + std::to_string(M) + ")";
  r.index();
  return r;
}

TruncationRegion TruncationRegion::lambda_closure(const LambdaSet& set, int max_outsiders) {
  if (max_outsiders < 0 || max_outsiders > 4) fail(ErrorKind::config, "max_outsiders must lie in [0, 4]");
  TruncationRegion r;
  r.modes_ = set.modes();
  r.in_lambda_.assign(r.modes_.size(), 1);
  if (max_outsiders >= 1) {
    std::set<Mode> out;
    for (const auto& q : enumerate_A1(set))
      for (const auto& m : q.n)
        if (!set.contains(m)) out.insert(m);
    for (const auto& m : out) {
      r.modes_.push_back(m);
      r.in_lambda_.push_back(0);
    }
  }
  r.max_outsiders_ = max_outsiders;
  r.descriptor_ = "lambda_closure(" + std::to_string(max_outsiders) + ")";
  r.index();
  return r;
}

std::optional<std::size_t> TruncationRegion::find(const Mode& n) const {
  auto it = slot_.find(n);
  if (it == slot_.end()) return std::nullopt;
  return it->second;
}

InteractionTable InteractionTable::filtered(unsigned mask) const {
  InteractionTable t;
  t.offset.push_back(0);
  for (std::size_t a = 0; a + 1 < offset.size(); ++a) {
    for (std::uint32_t e = offset[a]; e < offset[a + 1]; ++e)
      if (cls[e] & mask) {
        t.entries.push_back(entries[e]);
        t.cls.push_back(cls[e]);
      }
    t.offset.push_back(static_cast<std::uint32_t>(t.entries.size()));
  }
  return t;
}

InteractionTable build_interactions(const TruncationRegion& region) {
  const std::size_t n = region.size();
  // Lambda modes first in a closure; a box counts everything as inside.
  std::size_t nL = 0;
  while (nL < n && region.in_lambda(nL)) ++nL;
  for (std::size_t i = nL; i < n; ++i)
    if (region.in_lambda(i)) fail(ErrorKind::config, "region must list Lambda modes first");
  const int d = region.max_outsiders();
  const auto& modes = region.modes();
  auto out_of = [&](std::size_t i) { return region.in_lambda(i) ? 0 : 1; };

  std::vector<std::vector<InteractionTable::Entry>> per(n);
  std::vector<std::vector<std::uint8_t>> per_cls(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t a = 0; a < n; ++a) {
    const int oa = out_of(a);
    const int budget = d < 0 ? 4 : d - oa;
    if (budget < 0) continue;
    const std::size_t lim1 = budget >= 1 ? n : nL;
    for (std::size_t i1 = 0; i1 < lim1; ++i1) {
      const int b1 = budget - out_of(i1);
      const std::size_t lim3 = b1 >= 1 ? n : nL;
      for (std::size_t i3 = i1; i3 < lim3; ++i3) {
        const Mode m2 = modes[i1] + modes[i3] - modes[a];
        auto i2 = region.find(m2);
        if (!i2 || *i2 == i1 || *i2 == i3) continue;
        const int outs = oa + out_of(i1) + out_of(i3) + out_of(*i2);
        if (d >= 0 && outs > d) continue;
        per[a].push_back({static_cast<std::uint32_t>(i1), static_cast<std::uint32_t>(*i2),
                          static_cast<std::uint32_t>(i3), i1 == i3 ? 1.0 : 2.0});
        per_cls[a].push_back(static_cast<std::uint8_t>(
            d < 0 ? class_lambda : outs == 0 ? class_lambda : outs == 1 ? class_one : class_many));
      }
    }
  }
  InteractionTable t;
  t.offset.push_back(0);
  for (std::size_t a = 0; a < n; ++a) {
    t.entries.insert(t.entries.end(), per[a].begin(), per[a].end());
    t.cls.insert(t.cls.end(), per_cls[a].begin(), per_cls[a].end());
    t.offset.push_back(static_cast<std::uint32_t>(t.entries.size()));
  }
  return t;
}

// --- kernels -----------------------------------------------------------------

namespace {

// spelled out in real arithmetic: std::complex products go through the
// Annex G NaN handling otherwise
inline cplx row_sum(const InteractionTable& table, const CVec& rho, std::size_t a) {
  double sr = 0, si = 0;
  for (std::uint32_t e = table.offset[a]; e < table.offset[a + 1]; ++e) {
    const auto& x = table.entries[e];
    const double ar = rho[x.i1].real(), ai = rho[x.i1].imag();
    const double br = rho[x.i2].real(), bi = -rho[x.i2].imag();
    const double cr = rho[x.i3].real(), ci = rho[x.i3].imag();
    const double pr = ar * br - ai * bi, pi = ar * bi + ai * br;
    sr += x.weight * (pr * cr - pi * ci);
    si += x.weight * (pr * ci + pi * cr);
  }
  return {sr, si};
}

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

void convolve_serial(const InteractionTable& table, const CVec& rho, CVec& g) {
  const std::size_t n = table.size();
  g.resize(n);
  for (std::size_t a = 0; a < n; ++a) g[a] = row_sum(table, rho, a);
}

void convolve_parallel(const InteractionTable& table, const CVec& rho, CVec& g) {
  const std::size_t n = table.size();
  g.resize(n);
  // each row keeps its serial summation order, so results are bitwise identical
#pragma omp parallel for schedule(static)
  for (std::size_t a = 0; a < n; ++a) g[a] = row_sum(table, rho, a);
}

NlsModel::NlsModel(TruncationRegion region, const OmegaSpec& omega, NlsOptions options)
    : region_(std::move(region)), omega2_(omega.squared().to_double()), options_(options) {
  table_ = build_interactions(region_);
  lambda_.resize(region_.size());
  for (std::size_t i = 0; i < region_.size(); ++i) lambda_[i] = eigenvalue(region_.modes()[i], omega2_);
  // e^{i lambda t} = e^{i j^2 t} e^{i omega^2 k^2 t}: one sincos per distinct |j| and |k|
  std::vector<std::int64_t> js, ks;
  for (const auto& m : region_.modes()) {
    js.push_back(std::abs(m.j));
    ks.push_back(std::abs(m.k));
  }
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (auto j : js) jsq_.push_back(static_cast<double>(j * j));
  for (auto k : ks) ksq_.push_back(omega2_ * static_cast<double>(k * k));
  for (const auto& m : region_.modes()) {
    jslot_.push_back(static_cast<std::uint32_t>(std::lower_bound(js.begin(), js.end(), std::abs(m.j)) - js.begin()));
    kslot_.push_back(static_cast<std::uint32_t>(std::lower_bound(ks.begin(), ks.end(), std::abs(m.k)) - ks.begin()));
  }
}

void NlsModel::phases(double t, CVec& ph) const {
  thread_local CVec ej, ek;
  ej.resize(jsq_.size());
  ek.resize(ksq_.size());
  for (std::size_t a = 0; a < jsq_.size(); ++a) ej[a] = std::polar(1.0, jsq_[a] * t);
  for (std::size_t a = 0; a < ksq_.size(); ++a) ek[a] = std::polar(1.0, ksq_[a] * t);
  ph.resize(size());
  for (std::size_t i = 0; i < ph.size(); ++i) ph[i] = mul(ej[jslot_[i]], ek[kslot_[i]]);
}

void NlsModel::field_gauged(const CVec& rho, CVec& drho) const {
  const std::size_t n = size();
  drho.resize(n);
  thread_local CVec g;
  if (options_.nonlinear) {
    if (options_.parallel)
      convolve_parallel(table_, rho, g);
    else
      convolve_serial(table_, rho, g);
  } else {
    g.assign(n, 0);
  }
  const double nl = options_.nonlinear ? 1.0 : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    drho[i] = cplx(0, 1) * (lambda_[i] * rho[i] - nl * std::norm(rho[i]) * rho[i] + g[i]);
}

void NlsModel::field_rotating(double t, const CVec& r, CVec& dr) const {
  field_rotating(t, r, dr, options_.parallel);
}

void NlsModel::field_rotating(double t, const CVec& r, CVec& dr, bool parallel) const {
  const std::size_t n = size();
  dr.resize(n);
  if (!options_.nonlinear) {
    std::fill(dr.begin(), dr.end(), cplx(0));
    return;
  }
  thread_local CVec rho, ph, g;
  phases(t, ph);
  rho.resize(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = mul(r[i], ph[i]);
  if (parallel)
    convolve_parallel(table_, rho, g);
  else
    convolve_serial(table_, rho, g);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx v = -std::norm(r[i]) * r[i] + mul(std::conj(ph[i]), g[i]);
    dr[i] = {-v.imag(), v.real()};
  }
}

double NlsModel::hamiltonian(const CVec& rho) const {
  CVec g;
  convolve_serial(table_, rho, g);
  double h = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double m = std::norm(rho[i]);
    h += 0.5 * lambda_[i] * m;
    if (options_.nonlinear) h += -0.25 * m * m + 0.25 * (std::conj(rho[i]) * g[i]).real();
  }
  return h;
}

CVec NlsModel::gather(const SparseFourierState& s) const {
  CVec out(size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto k = region_.find(s.modes[i]);
    if (!k) {
      if (s.amp[i] != cplx(0))
        fail(ErrorKind::domain, "support-escape: mode " + s.modes[i].to_string() + " outside " +
                                    region_.describe());
      continue;
    }
    out[*k] = s.amp[i];
  }
  return out;
}

SparseFourierState NlsModel::scatter(const CVec& amp, Frame frame, double t) const {
  return SparseFourierState(region_.modes(), amp, frame, t);
}

Samples integrate_nls(const NlsModel& model, const SparseFourierState& state0,
                      const std::vector<double>& times, const IntegratorConfig& config,
                      IntegrationStats* stats) {
  if (state0.frame == Frame::physical)
    fail(ErrorKind::config, "integrate_nls expects a gauged or rotating state");
  SparseFourierState rot = rotate_frame(state0, Frame::rotating, model.omega2());
  CVec r0 = model.gather(rot);
  VectorField f = [&model](double t, const CVec& r, CVec& dr) { model.field_rotating(t, r, dr); };
  return integrate_sampled(f, state0.t, r0, times, config, stats);
}

// --- shadowing ---------------------------------------------------------------

namespace {

void plain_field(const InteractionTable& tab, const CVec& x, CVec& out) {
  CVec g;
  convolve_serial(tab, x, g);
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = cplx(0, 1) * (-std::norm(x[i]) * x[i] + g[i]);
}

void phased_field(const NlsModel& model, const InteractionTable& tab, double t, const CVec& x,
                  CVec& out) {
  const std::size_t n = x.size();
  CVec rho(n), ph, g;
  model.phases(t, ph);
  for (std::size_t i = 0; i < n; ++i) rho[i] = x[i] * ph[i];
  convolve_serial(tab, rho, g);
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = cplx(0, 1) * (-std::norm(x[i]) * x[i] + std::conj(ph[i]) * g[i]);
}

CVec axpy(const CVec& a, double s, const CVec& b) {
  CVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

ShadowReport shadowing_experiment(const LambdaSet& set, const OmegaSpec& omega, const ShadowConfig& cfg) {
  if (cfg.ladder.empty()) fail(ErrorKind::config, "empty lambda ladder");
  for (std::size_t i = 0; i < cfg.ladder.size(); ++i)
    if (!(cfg.ladder[i] > 0) || (i > 0 && !(cfg.ladder[i] > cfg.ladder[i - 1])))
      fail(ErrorKind::config, "lambda ladder must be positive and strictly increasing");
  if (!(cfg.T0 > 0)) fail(ErrorKind::config, "T0 must be positive");
  if (cfg.samples < 2) fail(ErrorKind::config, "need at least two samples");

  const std::size_t N = set.num_generations();
  CVec b0 = cfg.b0;
  if (b0.empty()) {
    for (std::size_t i = 0; i < N; ++i)
      b0.push_back(std::polar(1.0 / std::sqrt(static_cast<double>(N)), static_cast<double>(i)));
  }
  if (b0.size() != N) fail(ErrorKind::config, "toy datum length differs from the number of generations");

  ShadowReport rep;
  const Scalar w2 = omega.squared();
  rep.U0 = compute_U0(set, w2).value.to_double();
  auto A1 = enumerate_A1(set);
  if (!A1.empty()) rep.L1 = compute_L1(set, w2).value.to_double();

  NlsModel model(TruncationRegion::lambda_closure(set, cfg.max_outsiders), omega,
                 NlsOptions{cfg.nonlinear, true});
  rep.region_size = model.size();
  rep.interactions = model.table().entries.size();
  const InteractionTable tabN = model.table().filtered(class_lambda | class_many);
  const std::size_t nL = set.size();

  GeneratingFunction F;
  if (cfg.nonlinear && cfg.conjugate) F = build_F(set, omega);
  rep.F_terms = F.terms().size();
  const bool conj = cfg.conjugate && !F.empty();

  auto tab = spouse_tables(set);
  VectorField toy_f = [nl = cfg.nonlinear](double, const CVec& b, CVec& db) {
    if (nl)
      toy_field(b, db);
    else
      std::fill(db.begin(), db.end(), cplx(0));
  };
  const DenseTrajectory toy = integrate_dense(toy_f, 0, b0, cfg.T0, cfg.toy);

  for (double lam : cfg.ladder) {
    auto clock = std::chrono::steady_clock::now();
    ShadowRun run;
    run.lambda = lam;
    const double T = lam * lam * cfg.T0;
    auto r_lambda = [&](double t) {
      CVec b = toy.eval(std::min(t / (lam * lam), cfg.T0));
      for (auto& x : b) x /= lam;
      CVec r(model.size(), 0);
      CVec l = lift_to_lambda(tab, b);
      std::copy(l.begin(), l.end(), r.begin());
      return r;
    };
    const auto& modes = model.region().modes();
    const CVec beta0 = r_lambda(0);
    CVec rho0 = beta0;
    BirkhoffMap fwd{&F, Direction::forward, cfg.flow, 0};
    BirkhoffMap inv{&F, Direction::inverse, cfg.flow, 0};
    if (conj) rho0 = gamma_apply(fwd, SparseFourierState(modes, beta0)).amp;

    auto times = linspace(0, T, cfg.samples + 1);
    auto samples = integrate_nls(model, SparseFourierState(modes, rho0, Frame::gauged, 0), times,
                                 cfg.nls, &run.stats);

    // pulled-back rotating amplitudes
    auto pull_back = [&](double t, const CVec& r) {
      if (!conj) return r;
      SparseFourierState rho(modes, r, Frame::rotating, t);
      auto g = rotate_frame(rho, Frame::gauged, model.omega2());
      auto b = gamma_apply(inv, g);
      return rotate_frame(b, Frame::rotating, model.omega2()).amp;
    };

    const std::size_t zstride =
        cfg.z_samples == 0 ? 0 : std::max<std::size_t>(1, cfg.samples / cfg.z_samples);
    for (std::size_t k = 0; k < samples.t.size(); ++k) {
      const double t = samples.t[k];
      const CVec rt = pull_back(t, samples.y[k]);
      const CVec rl = r_lambda(t);
      const double e = ell1_distance(rt, rl);
      run.t.push_back(t);
      run.error.push_back(e);
      run.sup_error = std::max(run.sup_error, e);
      if (k == 0) run.initial_error = e;

      if (zstride == 0 || k % zstride != 0 || !cfg.nonlinear) continue;
      ZSample zs;
      zs.t = t;
      CVec xi(rt.size());
      for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = rt[i] - rl[i];
      CVec Xp, Xm, Xxi, Xr, Xl;
      plain_field(tabN, axpy(rl, 1, xi), Xp);
      plain_field(tabN, axpy(rl, -1, xi), Xm);
      plain_field(tabN, xi, Xxi);
      plain_field(tabN, rl, Xl);
      CVec Z1(xi.size()), Z2(xi.size());
      for (std::size_t i = 0; i < xi.size(); ++i) {
        Z1[i] = 0.5 * (Xp[i] - Xm[i]) - Xxi[i];
        Z2[i] = Xp[i] - Xl[i] - Z1[i];
      }
      CVec Pr, Pl;
      phased_field(model, tabN, t, rt, Pr);
      phased_field(model, tabN, t, rl, Pl);
      CVec Z3(xi.size()), Z4(xi.size());
      for (std::size_t i = 0; i < xi.size(); ++i) {
        Z3[i] = Pl[i] - Xl[i];
        Z4[i] = (Pr[i] - Xp[i]) - Z3[i];
      }
      // Z0: time derivative of the pulled-back solution minus the normal-form field
      SparseFourierState rho =
          rotate_frame(SparseFourierState(modes, samples.y[k], Frame::rotating, t), Frame::gauged,
                       model.omega2());
      CVec drho;
      model.field_gauged(rho.amp, drho);
      CVec beta = rho.amp, dbeta = drho;
      if (conj) {
        auto tg = gamma_apply_tangent(inv, rho, drho);
        beta = tg.value.amp;
        dbeta = tg.derivative;
      }
      CVec Z0(xi.size());
      for (std::size_t i = 0; i < xi.size(); ++i) {
        const double li = model.eigenvalues()[i];
        const cplx dr = std::polar(1.0, -li * t) * (dbeta[i] - cplx(0, li) * beta[i]);
        Z0[i] = dr - Pr[i];
      }
      zs.z = {ell1(Z0), ell1(Z1), ell1(Z2), ell1(Z3), ell1(Z4)};
      run.z.push_back(zs);
    }
    for (std::size_t i = nL; i < model.size(); ++i) run.leak += std::abs(samples.y.back()[i]);
    run.scaled_error = lam * run.sup_error;
    run.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - clock).count();
    rep.runs.push_back(std::move(run));
  }
  std::vector<double> x, y;
  rep.strictly_decreasing = true;
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    x.push_back(rep.runs[i].lambda);
    y.push_back(std::max(rep.runs[i].sup_error, 1e-300));
    if (i > 0 && !(rep.runs[i].sup_error < rep.runs[i - 1].sup_error)) rep.strictly_decreasing = false;
  }
  rep.slope = rep.runs.size() >= 2 ? fit_slope(x, y) : 0.0;
  return rep;
}

std::string to_json(const ShadowReport& r, bool timing) {
  nlohmann::json j;
  j["schema"] = "nlslab.shadow.v1";
  j["slope"] = r.slope;
  j["strictly_decreasing"] = r.strictly_decreasing;
  j["U0"] = r.U0;
  j["L1"] = r.L1;
  j["region_size"] = r.region_size;
  j["interactions"] = r.interactions;
  j["F_terms"] = r.F_terms;
  for (const auto& run : r.runs) {
    nlohmann::json x;
    x["lambda"] = run.lambda;
    x["sup_error"] = run.sup_error;
    x["scaled_error"] = run.scaled_error;
    x["initial_error"] = run.initial_error;
    x["leak"] = run.leak;
    if (timing) x["seconds"] = run.seconds;
    x["steps"] = run.stats.accepted;
    x["rejected"] = run.stats.rejected;
    for (const auto& z : run.z) x["z"].push_back({{"t", z.t}, {"l1", z.z}});
    j["runs"].push_back(x);
  }
  return j.dump(2);
}

// --- growth ------------------------------------------------------------------

GrowthReport growth_diagnostic(const LambdaSet& set, const ToyTrajectory& traj, double s, int start,
                               int target) {
  const int N = static_cast<int>(set.num_generations());
  if (start < 0 || target < 0 || start >= N || target >= N)
    fail(ErrorKind::config, "start and target must be generations of the set");
  if (traj.b.empty()) fail(ErrorKind::config, "empty trajectory");
  GrowthReport g;
  g.s = s;
  g.start = start;
  g.target = target;
  auto tab = spouse_tables(set);
  const auto modes = set.modes();
  std::vector<double> W(N, 0);
  for (std::size_t i = 0; i < modes.size(); ++i)
    W[tab.generation[i]] += std::pow(std::max(1.0, modes[i].length()), 2 * s);
  g.weight_ratio = W[target] / W[start];
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    if (traj.b[k].size() != static_cast<std::size_t>(N))
      fail(ErrorKind::config, "trajectory length differs from the number of generations");
    SparseFourierState u(modes, lift_to_lambda(tab, traj.b[k]));
    const double n = sobolev_norm(u, s);
    g.t.push_back(traj.t[k]);
    g.norm2.push_back(n * n);
    std::vector<double> gm(N, 0);
    for (std::size_t i = 0; i < modes.size(); ++i) gm[tab.generation[i]] += std::norm(u.amp[i]);
    g.generation_mass.push_back(std::move(gm));
  }
  g.ratio = g.norm2.back() / g.norm2.front();
  return g;
}

}  // namespace nlslab
