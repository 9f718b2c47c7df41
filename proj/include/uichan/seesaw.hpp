#pragma once

// See-saw maximization of Bell functionals over finite-dimensional tensor
// strategies, with the optimum lifted to a unitary induced channel family.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uichan/bell.hpp"
#include "uichan/models.hpp"

namespace uichan {

struct Strategy {
  PVMFamily alice;
  PVMFamily bob;
  State state;  // on dA * dB
};

struct SeesawConfig {
  std::size_t dA = 2;
  std::size_t dB = 2;
  int max_iters = 500;
  double rel_tol = 1e-9;
  int restarts = 20;
  std::uint64_t seed = 0;
  // Required for more than two outcomes; the per-outcome updates are then
  // pairwise two-outcome moves and no longer exact.
  bool allow_heuristic = false;
};

struct SeesawResult {
  BellFunctional functional;
  double value = 0.0;
  Strategy strategy;
  std::vector<double> trace;  // objective after each sweep of the best restart
  TensorModel lifted;
  bool heuristic = false;
  std::size_t best_restart = 0;
  std::vector<double> restart_values;
};

double strategy_value(const Strategy& s, const BellFunctional& f);

// Top eigenvector of sum f(a,b,x,y) P_a|x (x) Q_b|y.
State optimal_state(const BellFunctional& f, const PVMFamily& alice, const PVMFamily& bob);

// Per-setting best response with the other party and the state fixed. Exact
// for two outcomes: P_1|x projects onto the strictly positive eigenspace of
// R_1|x - R_2|x, zero eigenvalues going to the second outcome.
PVMFamily best_response_alice(const BellFunctional& f, const PVMFamily& alice,
                              const PVMFamily& bob, const State& state);
PVMFamily best_response_bob(const BellFunctional& f, const PVMFamily& alice,
                            const PVMFamily& bob, const State& state);

SeesawResult optimize_bell(const BellFunctional& f, const SeesawConfig& cfg);

struct LiftReport {
  double seesaw_value = 0.0;
  double extracted_value = 0.0;
  double deviation = 0.0;
  bool ok = false;  // deviation <= 1e-8
  Behaviour extracted;
  Behaviour direct;
};

// Channel of result.lifted -> extracted behaviour -> functional value. Throws
// InconsistentError when the two values differ by more than 1e-6.
LiftReport lift_and_verify(const SeesawResult& result);

}  // namespace uichan
