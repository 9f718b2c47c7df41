#pragma once

// Aggregated checks over models and strategies, shared by the C API and the
// acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "uichan/bell.hpp"
#include "uichan/channels.hpp"
#include "uichan/models.hpp"
#include "uichan/seesaw.hpp"

namespace uichan {

struct CheckResult {
  std::string name;
  double defect = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool skipped = false;  // a prerequisite failed; counts as a failure
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
};

// Runs state, unitarity, commutation (commuting models), CPTP, dual-formula,
// moment-contraction and (tensor models) embedding-invariance checks. A
// non-positive tolerance selects 1e-10 * dim for the validation checks; the
// channel checks use fixed thresholds.
VerifyReport verify_model(const Model& model, double tolerance = 0.0,
                          const ChannelOptions& opts = {});

struct PipelineReport {
  Behaviour extracted;
  Behaviour direct;
  double extracted_value = 0.0;
  double direct_value = 0.0;
  double deviation = 0.0;  // max entrywise |extracted - direct|
  double threshold = 0.0;
  bool pass = false;
};

// strategy -> diagonal Fourier lift -> channel -> extracted behaviour, compared
// against the Born-rule behaviour of the same strategy.
PipelineReport run_pipeline(const Strategy& strategy, const BellFunctional& functional,
                            const ChannelOptions& opts = {}, double threshold = 1e-8);

// n = dA = dB, U = V = SWAP, state rho_env on H_A (x) H_B.
TensorModel swap_model(const ComplexMatrix& rho_env, std::size_t n);

struct SwapDemoReport {
  std::size_t n = 0;
  int trials = 0;
  double max_defect = 0.0;  // max entry |Lambda(rho) - rho_env| over trials
  double threshold = 1e-12;
  bool pass = false;
};

// n must lie in {2, 3, 4}.
SwapDemoReport swap_demo(std::size_t n, std::uint64_t seed, int trials = 10);

// Maximally entangled qubit pair with A0 = Z, A1 = X, B0,1 = (Z +- X)/sqrt 2;
// outcome 1 is the +1 eigenspace.
Strategy chsh_optimal_strategy();

Strategy random_strategy(std::size_t n, std::size_t m, std::size_t dA, std::size_t dB,
                         std::uint64_t seed);

}  // namespace uichan
