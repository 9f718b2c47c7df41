// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "uichan/audit.hpp"
#include "uichan/bell.hpp"
#include "uichan/channels.hpp"
#include "uichan/models.hpp"
#include "uichan/rng.hpp"
#include "uichan/seesaw.hpp"

using namespace uichan;

namespace {

constexpr double kSwapTol = 1e-12;
constexpr double kSwapSeconds = 5.0;
constexpr double kDualTol = 1e-10;
constexpr double kDualSeconds = 60.0;
constexpr double kEmbeddingTol = 1e-12;
constexpr double kChoiFloor = -1e-9;
constexpr double kTraceTol = 1e-10;
constexpr double kReconstructionTol = 1e-12;
constexpr double kEffectTol = 1e-10;
constexpr double kRoundTripTol = 1e-10;
constexpr double kNormalizationTol = 1e-12;
constexpr double kSeesawTol = 1e-4;
constexpr double kSeesawSeconds = 60.0;
constexpr double kLastcondTol = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// Channels collected from valid models, audited by criteria 4 and 8.
std::vector<ChannelFamily> audited;

void swap_identity() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::size_t n : {2u, 3u}) {
    for (int t = 0; t < 10; ++t) {
      CounterRng rng(derive_seed(1000 + n, static_cast<std::uint64_t>(t)));
      const ComplexMatrix rho = random_state(n * n, StateKind::Density, rng).density_matrix();
      const ComplexMatrix env = random_state(n * n, StateKind::Density, rng).density_matrix();
      const ChannelFamily c = channel_direct(swap_model(env, n));
      worst = std::max(worst, oracle::max_diff(apply(c.at(0, 0), rho), env));
      worst = std::max(worst, oracle::max_diff(apply_direct(swap_model(env, n), 0, 0, rho), env));
      audited.push_back(c);
    }
  }
  const double elapsed = seconds_since(start);
  report(1, "swap constant channel", worst <= kSwapTol && elapsed < kSwapSeconds,
         fmt("max deviation %.3e (tol %.0e), %.2f s", worst, kSwapTol, elapsed));
}

void dual_formula() {
  const auto start = Clock::now();
  double worst = 0.0;
  int count = 0;
  for (auto kind : {ModelKind::Tensor, ModelKind::Commuting}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomModelSpec spec;
      spec.kind = kind;
      spec.n = 2 + seed % 2;
      spec.m = 1 + (seed / 2) % 2;
      spec.dA = 2 + (seed / 4) % 2;
      spec.dB = 2 + (seed / 8) % 2;
      spec.state = (seed / 16) % 2 ? StateKind::Density : StateKind::Vector;
      spec.seed = seed;
      const Model model = random_model(spec);
      const ChannelFamily direct = channel_direct(model);
      worst = std::max(worst, max_abs_diff(direct, channel_from_moments(moment_table(model))));
      audited.push_back(direct);
      ++count;
    }
  }
  const double elapsed = seconds_since(start);
  report(2, "dual formula", worst <= kDualTol && elapsed < kDualSeconds,
         fmt("%.0f models, max deviation %.3e, %.2f s", count, worst, elapsed));
}

void embedding_invariance() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomModelSpec spec;
    spec.n = 2 + seed % 2;
    spec.m = 1 + (seed / 2) % 2;
    spec.dA = 2 + (seed / 4) % 2;
    spec.dB = 2 + (seed / 8) % 2;
    spec.seed = 5000 + seed;
    const TensorModel t = random_tensor_model(spec);
    worst = std::max(worst, max_abs_diff(channel_direct(t), channel_direct(embed_tensor_as_commuting(t))));
  }
  report(3, "embedding invariance", worst <= kEmbeddingTol, fmt("max deviation %.3e over 100 seeds", worst));
}

const std::vector<Strategy>& round_trip_strategies() {
  static const std::vector<Strategy> strategies = [] {
    std::vector<Strategy> out;
    for (std::uint64_t seed = 0; seed < 50; ++seed) out.push_back(random_strategy(2, 2, 2, 2, 9000 + seed));
    out.push_back(chsh_optimal_strategy());
    for (const auto& s : out) audited.push_back(channel_direct(diagonal_fourier_lift(s.alice, s.bob, s.state)));
    return out;
  }();
  return strategies;
}

void cptp_audit() {
  round_trip_strategies();
  double min_eig = 1e300, worst_trace = 0.0;
  for (const auto& c : audited) {
    const CptpReport r = cptp_report(c);
    min_eig = std::min(min_eig, r.min_choi_eigenvalue);
    worst_trace = std::max(worst_trace, r.trace_preservation_defect);
  }
  report(4, "cptp audit", min_eig >= kChoiFloor && worst_trace <= kTraceTol,
         fmt("%.0f channels, min Choi eigenvalue %.3e, trace defect %.3e", static_cast<double>(audited.size()),
             min_eig, worst_trace));
}

void fourier_bridge() {
  double worst_rec = 0.0, worst_last = 0.0, worst_effect = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 2;
    const std::size_t d = 2 + (seed / 2) % 2;
    CounterRng rng(derive_seed(7000, seed));
    const PVMFamily family = random_pvm_family(d, 2, n, rng);
    const auto unitaries = unitaries_from_pvm(family);
    const TensorModel lift = diagonal_fourier_lift(family, family, State::from_vector([&] {
      ComplexVector psi(d * d);
      psi[0] = 1.0;
      return psi;
    }()));
    for (std::size_t x = 0; x < family.settings; ++x) {
      // Independent reconstruction with the inverse transform written out here.
      for (std::size_t a = 0; a < n; ++a) {
        ComplexMatrix p(d);
        for (std::size_t ap = 0; ap < n; ++ap) {
          const double angle = -2.0 * M_PI * static_cast<double>((a + 1) * (ap + 1)) / static_cast<double>(n);
          p += (Complex(std::cos(angle), std::sin(angle)) / static_cast<double>(n)) * unitaries[x][ap];
        }
        worst_rec = std::max(worst_rec, oracle::max_diff(p, family(x, a)));
      }
      worst_last = std::max(worst_last, oracle::max_diff(unitaries[x][n - 1], ComplexMatrix::identity(d)));
      ComplexMatrix total(d);
      for (const auto& m : sub_povm(lift.U[x], n, d)) total += m;
      worst_effect = std::max(worst_effect, max_eigenvalue(total) - 1.0);
    }
  }
  report(5, "fourier bridge",
         worst_rec <= kReconstructionTol && worst_last <= kReconstructionTol && worst_effect <= kEffectTol,
         fmt("reconstruction %.3e, last unitary %.3e, effect excess %.3e", worst_rec, worst_last, worst_effect));
}

void round_trip() {
  double worst = 0.0, worst_norm = 0.0;
  for (const auto& s : round_trip_strategies()) {
    const TensorModel lift = diagonal_fourier_lift(s.alice, s.bob, s.state);
    const ChannelFamily c = channel_direct(lift);
    const Behaviour extracted = behaviour_from_channel(c);
    worst = std::max(worst, max_abs_diff(extracted, behaviour_direct(s.alice, s.bob, s.state)));
    worst_norm = std::max(worst_norm, behaviour_defects(extracted).max_normalization_defect);
  }
  report(6, "channel to behaviour round trip", worst <= kRoundTripTol && worst_norm <= kNormalizationTol,
         fmt("51 strategies, max deviation %.3e, normalization %.3e", worst, worst_norm));
}

void seesaw_chsh() {
  const double target = oracle::chsh_optimum_from_angles();
  const double explicit_value = strategy_value(chsh_optimal_strategy(), chsh_functional());
  const double classical = oracle::chsh_classical_bound();
  const auto start = Clock::now();
  SeesawConfig cfg;
  cfg.restarts = 20;
  cfg.dA = 2;
  cfg.dB = 2;
  const SeesawResult r = optimize_bell(chsh_functional(), cfg);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(r.value - target) <= kSeesawTol && std::abs(explicit_value - target) <= 1e-12 &&
                    std::abs(classical - 0.75) <= 1e-15 && r.value > classical && elapsed < kSeesawSeconds;
  report(7, "see-saw CHSH optimum", pass,
         fmt("value %.9f vs %.9f, %.2f s", r.value, target, elapsed) + fmt(", classical bound %.2f", classical));
}

void lastcond() {
  double worst = 0.0;
  for (const auto& c : audited) {
    const BehaviourExtraction e = extract_behaviour(c);
    for (std::size_t a = 0; a < c.n; ++a)
      for (std::size_t b = 0; b < c.n; ++b)
        for (std::size_t x = 0; x < c.m; ++x)
          for (std::size_t y = 0; y < c.m; ++y)
            worst = std::max(worst, std::abs(lastcond_contraction(c, a, b, x, y) -
                                             e.raw[((a * c.n + b) * c.m + x) * c.m + y]));
  }
  report(8, "last-outcome contraction", worst <= kLastcondTol,
         fmt("%.0f channels, max deviation %.3e", static_cast<double>(audited.size()), worst));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{swap_identity, dual_formula, embedding_invariance, cptp_audit,
                                                    fourier_bridge, round_trip,   seesaw_chsh,          lastcond};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::printf("%s: %d failure(s)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
