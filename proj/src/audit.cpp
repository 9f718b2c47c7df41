#include "uichan/audit.hpp"

#include <algorithm>
#include <cmath>

#include "uichan/errors.hpp"
#include "uichan/rng.hpp"

namespace uichan {

namespace {

constexpr double kChoiFloor = 1e-9;
constexpr double kTraceTol = 1e-10;
constexpr double kDualTol = 1e-10;
constexpr double kMomentTol = 1e-10;
constexpr double kEmbedTol = 1e-12;

CheckResult check(std::string name, double defect, double threshold) {
  return {std::move(name), defect, threshold, defect <= threshold, false};
}

CheckResult skipped(std::string name, double threshold) {
  return {std::move(name), 0.0, threshold, false, true};
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifyReport verify_model(const Model& model, double tolerance, const ChannelOptions& opts) {
  VerifyReport out;
  const ModelReport r = validate(model, tolerance);
  const bool commuting = std::holds_alternative<CommutingModel>(model);

  out.checks.push_back({"state", r.state_defect, r.tolerance, r.state_ok, false});
  out.checks.push_back({"unitarity", r.max_unitarity_defect, r.tolerance, r.unitarity_ok, false});
  if (commuting)
    out.checks.push_back({"commutation", r.max_commutator_defect, r.tolerance, r.commutation_ok, false});

  const char* channel_checks[] = {"choi_positivity", "trace_preservation", "dual_formula",
                                  "conjugate_symmetry", "moment_contractions"};
  const double channel_thresholds[] = {kChoiFloor, kTraceTol, kDualTol, kMomentTol, kMomentTol};
  if (!r.accepted()) {
    for (std::size_t k = 0; k < 5; ++k) out.checks.push_back(skipped(channel_checks[k], channel_thresholds[k]));
    if (!commuting) out.checks.push_back(skipped("embedding_invariance", kEmbedTol));
    return out;
  }

  ChannelOptions run = opts;
  run.validate = false;
  const ChannelFamily direct = channel_direct(model, run);
  const CptpReport cptp = cptp_report(direct);
  out.checks.push_back(check("choi_positivity", std::max(0.0, -cptp.min_choi_eigenvalue), kChoiFloor));
  out.checks.back().pass = cptp.completely_positive;
  out.checks.push_back(check("trace_preservation", cptp.trace_preservation_defect, kTraceTol));

  const MomentTable table = moment_table(model, run);
  out.checks.push_back(check("dual_formula", max_abs_diff(direct, channel_from_moments(table)), kDualTol));
  out.checks.push_back(check("conjugate_symmetry", conjugate_symmetry_defect(table), kMomentTol));
  const ContractionDefects cd = contraction_defects(table);
  out.checks.push_back(
      check("moment_contractions", std::max({cd.u_legs, cd.v_legs, cd.both_legs}), kMomentTol));

  if (const auto* t = std::get_if<TensorModel>(&model)) {
    const ChannelFamily embedded = channel_direct(embed_tensor_as_commuting(*t), run);
    out.checks.push_back(check("embedding_invariance", max_abs_diff(direct, embedded), kEmbedTol));
  }
  return out;
}

PipelineReport run_pipeline(const Strategy& strategy, const BellFunctional& functional,
                            const ChannelOptions& opts, double threshold) {
  PipelineReport out;
  const TensorModel lifted = diagonal_fourier_lift(strategy.alice, strategy.bob, strategy.state);
  out.extracted = behaviour_from_channel(channel_direct(lifted, opts));
  out.direct = behaviour_direct(strategy.alice, strategy.bob, strategy.state);
  out.extracted_value = bell_value(out.extracted, functional);
  out.direct_value = bell_value(out.direct, functional);
  out.deviation = max_abs_diff(out.extracted, out.direct);
  out.threshold = threshold;
  out.pass = out.deviation <= threshold;
  return out;
}

TensorModel swap_model(const ComplexMatrix& rho_env, std::size_t n) {
  if (n == 0) throw InvalidArgumentError("swap_model: n must be positive");
  if (rho_env.dim() != n * n) throw DimensionError("swap_model: environment state must have dim n^2");
  // Block (i,j) of SWAP on C^n (x) C^n is the matrix unit E_ji.
  ComplexMatrix swap(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) swap(i * n + j, j * n + i) = 1.0;
  TensorModel model;
  model.n = n;
  model.m = 1;
  model.dA = n;
  model.dB = n;
  model.state = State::from_density(rho_env);
  model.U = {swap};
  model.V = {swap};
  return model;
}

SwapDemoReport swap_demo(std::size_t n, std::uint64_t seed, int trials) {
  if (n < 2 || n > 4) throw InvalidArgumentError("swap_demo: n must be 2, 3 or 4");
  if (trials < 1) throw InvalidArgumentError("swap_demo: trials must be at least 1");
  SwapDemoReport out;
  out.n = n;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const ComplexMatrix rho = random_state(n * n, StateKind::Density, rng).density();
    const ComplexMatrix rho_env = random_state(n * n, StateKind::Density, rng).density();
    const ChannelFamily channel = channel_direct(swap_model(rho_env, n));
    out.max_defect = std::max(out.max_defect, max_abs_diff(apply(channel.at(0, 0), rho), rho_env));
  }
  out.pass = out.max_defect <= out.threshold;
  return out;
}

Strategy chsh_optimal_strategy() {
  const double h = 1.0 / std::sqrt(2.0);
  auto projector = [](double z, double x, double sign) {
    // (I + sign * (z Z + x X)) / 2
    ComplexMatrix p(2);
    p(0, 0) = 0.5 * (1.0 + sign * z);
    p(1, 1) = 0.5 * (1.0 - sign * z);
    p(0, 1) = 0.5 * sign * x;
    p(1, 0) = 0.5 * sign * x;
    return p;
  };
  auto setting = [&](double z, double x) {
    return std::vector<ComplexMatrix>{projector(z, x, 1.0), projector(z, x, -1.0)};
  };
  PVMFamily alice = PVMFamily::create({setting(1.0, 0.0), setting(0.0, 1.0)});
  PVMFamily bob = PVMFamily::create({setting(h, h), setting(h, -h)});
  ComplexVector phi(4);
  phi[0] = h;
  phi[3] = h;
  return {std::move(alice), std::move(bob), State::from_vector(std::move(phi))};
}

Strategy random_strategy(std::size_t n, std::size_t m, std::size_t dA, std::size_t dB,
                         std::uint64_t seed) {
  CounterRng rng(seed);
  PVMFamily alice = random_pvm_family(dA, m, n, rng);
  PVMFamily bob = random_pvm_family(dB, m, n, rng);
  State state = random_state(dA * dB, StateKind::Vector, rng);
  return {std::move(alice), std::move(bob), std::move(state)};
}

}  // namespace uichan
