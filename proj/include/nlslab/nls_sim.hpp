#pragma once

// Galerkin-truncated cubic NLS in sparse Fourier space: frames, the truncated
// field and its OpenMP kernel, and the shadowing and growth experiments.

#include "nlslab/diophantine.hpp"
#include "nlslab/lambda_set.hpp"
#include "nlslab/normal_form.hpp"
#include "nlslab/ode.hpp"
#include "nlslab/state.hpp"
#include "nlslab/toy_model.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nlslab {

/// lambda(n) = j^2 + omega^2 k^2.
double eigenvalue(const Mode& n, double omega2);
Scalar eigenvalue_exact(const Mode& n, const OmegaSpec& omega);

/// physical <-> gauged: a_n = rho_n e^{iGt}, G = 2 sum |a_n|^2.
SparseFourierState gauge_transform(const SparseFourierState& s, Frame target);
/// gauged <-> rotating: rho_n = r_n e^{i lambda(n) t}.
SparseFourierState rotate_frame(const SparseFourierState& s, Frame target, double omega2);

/// Finite mode set T. Box(M) keeps every interaction inside the box; the
/// Lambda closure is Lambda plus the outsiders of A(1) and keeps quartets with
/// at most max_outsiders modes outside Lambda.
class TruncationRegion {
 public:
  static TruncationRegion box(std::int64_t M);
  static TruncationRegion lambda_closure(const LambdaSet& set, int max_outsiders = 1);

  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  std::optional<std::size_t> find(const Mode& n) const;
  bool in_lambda(std::size_t i) const { return in_lambda_[i]; }
  /// -1: no limit.
  int max_outsiders() const { return max_outsiders_; }
  std::string describe() const { return descriptor_; }

 private:
  void index();
  std::vector<Mode> modes_;
  std::vector<char> in_lambda_;
  std::unordered_map<Mode, std::size_t, ModeHash> slot_;
  int max_outsiders_ = -1;
  std::string descriptor_;
};

/// Interaction classes by the number of modes outside Lambda.
enum InteractionClass : unsigned { class_lambda = 1, class_one = 2, class_many = 4, class_all = 7 };

/// Ordered triples (n1, n2, n3) with n1 - n2 + n3 = n and n2 not in {n1, n3},
/// grouped by output n. Pairs n1 <-> n3 are folded into one entry of weight 2.
struct InteractionTable {
  struct Entry {
    std::uint32_t i1, i2, i3;
    double weight;
  };
  std::vector<std::uint32_t> offset;  // size() + 1
  std::vector<Entry> entries;
  std::vector<std::uint8_t> cls;      // InteractionClass per entry
  std::size_t size() const { return offset.empty() ? 0 : offset.size() - 1; }
  /// Subtable restricted to a class mask.
  InteractionTable filtered(unsigned mask) const;
};

InteractionTable build_interactions(const TruncationRegion& region);

struct NlsOptions {
  bool nonlinear = true;
  bool parallel = true;
};

/// -i drho_n/dt = lambda(n) rho_n - |rho_n|^2 rho_n + sum' rho_1 conj(rho_2) rho_3
/// on the truncation region.
class NlsModel {
 public:
  NlsModel(TruncationRegion region, const OmegaSpec& omega, NlsOptions options = {});

  const TruncationRegion& region() const { return region_; }
  const InteractionTable& table() const { return table_; }
  std::size_t size() const { return region_.size(); }
  double omega2() const { return omega2_; }
  const std::vector<double>& eigenvalues() const { return lambda_; }
  const NlsOptions& options() const { return options_; }
  /// e^{i lambda(n) t} for every mode of the region.
  void phases(double t, CVec& ph) const;

  /// Field in the gauged frame.
  void field_gauged(const CVec& rho, CVec& drho) const;
  /// Field in the rotating frame at time t.
  void field_rotating(double t, const CVec& r, CVec& dr) const;
  /// Same with an explicit kernel choice.
  void field_rotating(double t, const CVec& r, CVec& dr, bool parallel) const;
  /// 1/2 sum lambda |rho|^2 - 1/4 sum |rho|^4 + 1/4 sum' over the table.
  double hamiltonian(const CVec& rho) const;

  /// Amplitudes of a state on the region; support-escape if a mode is outside.
  CVec gather(const SparseFourierState& s) const;
  SparseFourierState scatter(const CVec& amp, Frame frame, double t) const;

 private:
  TruncationRegion region_;
  InteractionTable table_;
  std::vector<double> lambda_;
  std::vector<double> jsq_, ksq_;
  std::vector<std::uint32_t> jslot_, kslot_;
  double omega2_ = 1;
  NlsOptions options_;
};

/// Cubic convolution g_n = sum over the table of w rho_1 conj(rho_2) rho_3.
void convolve_serial(const InteractionTable& table, const CVec& rho, CVec& g);
void convolve_parallel(const InteractionTable& table, const CVec& rho, CVec& g);

/// Integrates in the rotating frame; input and output in the state's frame
/// convention (gauged or rotating).
Samples integrate_nls(const NlsModel& model, const SparseFourierState& state0,
                      const std::vector<double>& times, const IntegratorConfig& config = {},
                      IntegrationStats* stats = nullptr);

// --- shadowing ---------------------------------------------------------------

struct ShadowConfig {
  std::vector<double> ladder{4, 8, 16};
  CVec b0;                 // toy initial datum; empty: default three-generation datum
  double T0 = 1;           // toy time horizon
  int max_outsiders = 1;
  bool nonlinear = true;
  bool conjugate = true;   // rho(0) = Gamma(r^lambda(0)) and compare through Gamma^-1
  std::size_t samples = 1024;
  std::size_t z_samples = 32;
  IntegratorConfig nls{1e-7, 1e-10};
  IntegratorConfig toy{1e-12, 1e-12};
  IntegratorConfig flow{1e-12, 1e-16};
};

/// l1 norms of the five terms of the error equation at one time.
struct ZSample {
  double t = 0;
  std::array<double, 5> z{};
};

struct ShadowRun {
  double lambda = 0;
  double sup_error = 0;     // sup_t |r(t) - r^lambda(t)|_l1
  double scaled_error = 0;  // lambda * sup_error
  double initial_error = 0;
  double leak = 0;          // l1 mass outside Lambda at the final time, NLS coordinates
  std::vector<double> t, error;
  std::vector<ZSample> z;
  IntegrationStats stats;
  double seconds = 0;
};

struct ShadowReport {
  std::vector<ShadowRun> runs;
  double slope = 0;                // log-log slope of sup_error against lambda
  bool strictly_decreasing = false;
  double U0 = 0, L1 = 0;
  std::size_t region_size = 0, interactions = 0, F_terms = 0;
};

ShadowReport shadowing_experiment(const LambdaSet& set, const OmegaSpec& omega,
                                  const ShadowConfig& config = {});

/// Wall-clock times are left out unless asked for, so reports are reproducible.
std::string to_json(const ShadowReport& report, bool timing = false);

// --- Sobolev growth ----------------------------------------------------------

struct GrowthReport {
  double s = 0;
  std::vector<double> t;
  std::vector<double> norm2;                    // |u(t)|_s^2
  std::vector<std::vector<double>> generation_mass;
  double ratio = 0;                             // |u(T)|_s^2 / |u(0)|_s^2
  double weight_ratio = 0;                      // S_target / S_start
  int start = 0, target = 0;
};

/// H^s growth along the toy trajectory lifted to Lambda (the spouse solution
/// restricted to intragenerational data).
GrowthReport growth_diagnostic(const LambdaSet& set, const ToyTrajectory& traj, double s,
                               int start, int target);

}  // namespace nlslab
