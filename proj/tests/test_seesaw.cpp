#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "uichan/audit.hpp"
#include "uichan/errors.hpp"
#include "uichan/rng.hpp"
#include "uichan/seesaw.hpp"

using namespace uichan;

namespace {

BellFunctional random_functional(std::size_t n, std::size_t m, CounterRng& rng) {
  BellFunctional f(n, m);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) f(a, b, x, y) = rng.uniform() - 0.5;
  return f;
}

// Random qubit PVM per setting: rank-one pairs from a Haar basis, with the
// trivial splits {I, 0} and {0, I} mixed in.
PVMFamily random_qubit_measurement(std::size_t settings, CounterRng& rng) {
  std::vector<std::vector<ComplexMatrix>> p;
  for (std::size_t x = 0; x < settings; ++x) {
    const std::uint64_t pick = rng.below(10);
    if (pick == 0) {
      p.push_back({ComplexMatrix::identity(2), ComplexMatrix(2)});
    } else if (pick == 1) {
      p.push_back({ComplexMatrix(2), ComplexMatrix::identity(2)});
    } else {
      const ComplexMatrix u = haar_unitary(2, rng);
      const ComplexVector v0{u(0, 0), u(1, 0)}, v1{u(0, 1), u(1, 1)};
      p.push_back({ComplexMatrix::outer(v0, v0), ComplexMatrix::outer(v1, v1)});
    }
  }
  return PVMFamily::create(p);
}

}  // namespace

TEST_CASE("a functional rewarding one outcome reaches one within two sweeps") {
  BellFunctional f(2, 2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) f(0, 1, x, y) = 0.25;
  SeesawConfig cfg;
  cfg.restarts = 3;
  const SeesawResult r = optimize_bell(f, cfg);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  CHECK(r.trace.size() - 1 <= 2);
  const LiftReport lift = lift_and_verify(r);
  CHECK(lift.ok);
  CHECK(lift.deviation <= 1e-12);
}

TEST_CASE("CHSH see-saw reaches the quantum optimum") {
  SeesawConfig cfg;
  cfg.seed = 7;
  const SeesawResult r = optimize_bell(chsh_functional(), cfg);
  CHECK(std::abs(r.value - oracle::chsh_optimum_from_angles()) <= 1e-4);
  CHECK(r.value > oracle::chsh_classical_bound());
  CHECK_FALSE(r.heuristic);
  CHECK(r.restart_values.size() == 20);
  const LiftReport lift = lift_and_verify(r);
  CHECK(lift.ok);
  CHECK(lift.deviation <= 1e-8);
  CHECK(max_abs_diff(lift.extracted, lift.direct) <= 1e-10);
}

TEST_CASE("CHSH see-saw with one-dimensional parties stays classical") {
  SeesawConfig cfg;
  cfg.dA = 1;
  cfg.dB = 1;
  const SeesawResult r = optimize_bell(chsh_functional(), cfg);
  CHECK(r.value <= oracle::chsh_classical_bound() + 1e-9);
  CHECK(std::abs(r.value - 0.75) <= 1e-12);
}

TEST_CASE("see-saw sweeps are monotone and the best restart is the argmax") {
  CounterRng rng(1);
  for (int k = 0; k < 5; ++k) {
    SeesawConfig cfg;
    cfg.restarts = 4;
    cfg.seed = static_cast<std::uint64_t>(k);
    const SeesawResult r = optimize_bell(random_functional(2, 2, rng), cfg);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-12);
    for (double v : r.restart_values) CHECK(v <= r.value);
    CHECK(r.restart_values[r.best_restart] == r.value);
    for (std::size_t i = 0; i < r.best_restart; ++i) CHECK(r.restart_values[i] < r.value);
  }
}

TEST_CASE("lifted optima reproduce their values for random functionals") {
  CounterRng rng(2);
  for (int k = 0; k < 20; ++k) {
    SeesawConfig cfg;
    cfg.restarts = 2;
    cfg.seed = static_cast<std::uint64_t>(k);
    const LiftReport lift = lift_and_verify(optimize_bell(random_functional(2, 2, rng), cfg));
    CHECK(lift.deviation <= 1e-8);
    CHECK(lift.ok);
  }
}

TEST_CASE("see-saw is deterministic per seed") {
  SeesawConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 99;
  const SeesawResult a = optimize_bell(chsh_functional(), cfg);
  const SeesawResult b = optimize_bell(chsh_functional(), cfg);
  CHECK(a.value == b.value);
  CHECK(a.trace == b.trace);
  CHECK(a.strategy.alice.projectors == b.strategy.alice.projectors);
  CHECK(a.strategy.state.vector() == b.strategy.state.vector());
}

TEST_CASE("Alice's two-outcome update beats random qubit measurements") {
  CounterRng rng(3);
  for (int instance = 0; instance < 3; ++instance) {
    const BellFunctional f = random_functional(2, 2, rng);
    const PVMFamily alice0 = random_qubit_measurement(2, rng);
    const PVMFamily bob = random_qubit_measurement(2, rng);
    const State state = random_state(4, StateKind::Density, rng);
    const PVMFamily best = best_response_alice(f, alice0, bob, state);
    CHECK(pvm_defect(best) <= 1e-12);
    const double best_value = strategy_value({best, bob, state}, f);
    double sampled = -1e300;
    for (int k = 0; k < 10000; ++k)
      sampled = std::max(sampled, strategy_value({random_qubit_measurement(2, rng), bob, state}, f));
    CHECK(sampled <= best_value + 1e-12);
  }
}

TEST_CASE("Bob's update and the state step do not decrease the objective") {
  CounterRng rng(4);
  const BellFunctional f = random_functional(2, 2, rng);
  Strategy s{random_qubit_measurement(2, rng), random_qubit_measurement(2, rng),
             random_state(4, StateKind::Vector, rng)};
  const double before = strategy_value(s, f);
  s.bob = best_response_bob(f, s.alice, s.bob, s.state);
  const double after_bob = strategy_value(s, f);
  CHECK(after_bob >= before - 1e-12);
  s.state = optimal_state(f, s.alice, s.bob);
  CHECK(strategy_value(s, f) >= after_bob - 1e-12);
}

TEST_CASE("zero eigenvalues go to the second outcome") {
  const BellFunctional f(2, 1);  // all-zero functional: R_1 - R_2 = 0
  const PVMFamily start = PVMFamily::create({{ComplexMatrix::identity(2), ComplexMatrix(2)}});
  ComplexVector psi(4);
  psi[0] = 1.0;
  const PVMFamily out = best_response_alice(f, start, start, State::from_vector(psi));
  CHECK(out(0, 0).frobenius_norm() <= 1e-15);
  CHECK(oracle::max_diff(out(0, 1), ComplexMatrix::identity(2)) <= 1e-15);
}

TEST_CASE("more than two outcomes needs the heuristic flag") {
  CounterRng rng(5);
  const BellFunctional f = random_functional(3, 2, rng);
  SeesawConfig cfg;
  cfg.restarts = 2;
  cfg.dA = 3;
  cfg.dB = 3;
  CHECK_THROWS_AS(optimize_bell(f, cfg), InvalidArgumentError);
  cfg.allow_heuristic = true;
  const SeesawResult r = optimize_bell(f, cfg);
  CHECK(r.heuristic);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-12);
  CHECK(lift_and_verify(r).ok);
}

TEST_CASE("see-saw configuration errors") {
  const BellFunctional f = chsh_functional();
  SeesawConfig cfg;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(optimize_bell(f, cfg), InvalidArgumentError);
  cfg = {};
  cfg.restarts = 0;
  CHECK_THROWS_AS(optimize_bell(f, cfg), InvalidArgumentError);
  cfg = {};
  cfg.dA = 0;
  CHECK_THROWS_AS(optimize_bell(f, cfg), InvalidArgumentError);
  CHECK_THROWS_AS(optimize_bell(BellFunctional(), SeesawConfig{}), InvalidArgumentError);
}

TEST_CASE("strategy shape mismatches are rejected") {
  CounterRng rng(6);
  const PVMFamily a = random_pvm_family(2, 2, 2, rng);
  const PVMFamily b = random_pvm_family(2, 1, 2, rng);
  CHECK_THROWS_AS(optimal_state(chsh_functional(), a, b), DimensionError);
}
