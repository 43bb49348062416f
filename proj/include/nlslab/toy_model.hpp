#pragma once

// The N-mode toy model, its lift to the spouse/child system on Lambda, the
// lambda-scaling and the search for transfer orbits.

#include "nlslab/lambda_set.hpp"
#include "nlslab/ode.hpp"

#include <ostream>
#include <vector>

namespace nlslab {

/// db_i/dt = -i b_i^2 conj(b_i) + 2i conj(b_i) (b_{i-1}^2 + b_{i+1}^2), b_0 = b_{N+1} = 0.
void toy_field(const CVec& b, CVec& db);
CVec toy_field(const CVec& b);

struct ToyInvariants {
  double mass = 0;
  double energy = 0;
};

/// M = sum |b_i|^2; h = 1/2 sum |b_i|^4 - sum (conj(b_i)^2 b_{i+1}^2 + c.c.).
ToyInvariants toy_invariants(const CVec& b);

struct ToyTrajectory {
  std::vector<double> t;
  std::vector<CVec> b;
};

/// Samples at n uniform times on [0, t_end] (n >= 2), or at every accepted
/// step when n == 0.
ToyTrajectory integrate_toy(const CVec& b0, double t_end, const IntegratorConfig& config = {},
                            std::size_t n = 0);

DenseTrajectory integrate_toy_dense(const CVec& b0, double t_end,
                                    const IntegratorConfig& config = {});

/// b^lambda(t) = b(t / lambda^2) / lambda on the stretched time grid.
ToyTrajectory scale_solution(const ToyTrajectory& traj, double lambda);

/// b^lambda evaluated from a dense unscaled trajectory at time t.
CVec scaled_state(const DenseTrajectory& traj, double lambda, double t);

void write_toy_csv(std::ostream& out, const ToyTrajectory& traj, std::size_t stride = 1);

struct TransferSearchConfig {
  int start = 1;         // 0-based generation carrying the mass initially
  int target = -1;       // -1: N - 2
  double threshold = 0.7;
  std::size_t phase_grid = 36;
  std::size_t refine_iterations = 40;
  double window = 40;    // search horizon past the previous handoff
  IntegratorConfig integrator{1e-10, 1e-10};
};

struct TransferResult {
  CVec b0;
  double T0 = 0;
  double concentration = 0;             // |b_target(T0)|^2
  std::vector<double> peak;             // max_t |b_i(t)|^2 on [0, T0]
  std::vector<double> handoff_times;    // peak time at each intermediate generation
  std::size_t integrations = 0;
};

/// Mass 1, |b_start|^2 = 1 - delta, the remaining mass split evenly over the
/// generations between start and target with phases fixed one generation at a
/// time by maximizing the next handoff.
TransferResult find_transfer_orbit(int N, double delta, const TransferSearchConfig& config = {});

/// Concentration |b_i|^2 over time and its maximizer inside [t_begin, t_end].
struct Peak {
  double time = 0;
  double value = 0;
};
Peak peak_concentration(const CVec& b0, int gen, double t_end, const IntegratorConfig& config,
                        double t_begin = 0);

// --- spouse/child system on Lambda -------------------------------------------

/// Relation indices into set.modes() order, -1 where absent.
struct SpouseTables {
  std::vector<int> spouse, sibling;
  std::vector<std::array<int, 2>> children, parents;
  std::vector<int> generation;
  std::vector<std::vector<int>> members;  // indices per generation
};

SpouseTables spouse_tables(const LambdaSet& set);

/// -i dr_n/dt = -r_n|r_n|^2 + 2 r_c1 r_c2 conj(r_spouse) + 2 r_p1 r_p2 conj(r_sibling).
void spouse_field(const SpouseTables& tab, const CVec& r, CVec& dr);

DenseTrajectory integrate_spouse(const SpouseTables& tab, const CVec& r0, double t_end,
                                 const IntegratorConfig& config = {});

/// r_n = b_i for n in generation i.
CVec lift_to_lambda(const SpouseTables& tab, const CVec& b);

/// Mean value per generation and the largest deviation from it.
struct GenerationProjection {
  CVec mean;
  double spread = 0;
};

GenerationProjection project_to_generations(const SpouseTables& tab, const CVec& r);

}  // namespace nlslab
