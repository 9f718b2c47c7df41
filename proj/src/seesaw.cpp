#include "uichan/seesaw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uichan/channels.hpp"
#include "uichan/errors.hpp"
#include "uichan/rng.hpp"

namespace uichan {

namespace {

void check_shapes(const BellFunctional& f, const PVMFamily& alice, const PVMFamily& bob) {
  if (alice.outcomes != f.n() || bob.outcomes != f.n() || alice.settings != f.m() ||
      bob.settings != f.m()) {
    throw DimensionError("see-saw: strategy and functional shapes differ");
  }
}

ComplexVector column(const ComplexMatrix& m, std::size_t c) {
  ComplexVector v(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) v[i] = m(i, c);
  return v;
}

// Splits `basis` (columns spanning the space being split, expressed in the
// ambient space) into the strictly positive eigenspace of `gain` compressed to
// that span, and the rest.
std::pair<ComplexMatrix, ComplexMatrix> split_by_sign(const ComplexMatrix& gain,
                                                      const std::vector<ComplexVector>& basis) {
  const std::size_t dim = gain.dim();
  const std::size_t k = basis.size();
  ComplexMatrix positive(dim), rest(dim);
  if (k == 0) return {positive, rest};

  ComplexMatrix compressed(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) compressed(i, j) = inner(basis[i], gain * basis[j]);
  compressed = 0.5 * (compressed + compressed.adjoint());

  const Eigensystem eig = herm_eig(compressed);
  for (std::size_t e = 0; e < k; ++e) {
    ComplexVector v(dim);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t a = 0; a < dim; ++a) v[a] += eig.vectors(i, e) * basis[i][a];
    const ComplexMatrix proj = ComplexMatrix::outer(v, v);
    if (eig.values[e] > 0.0) {
      positive += proj;
    } else {
      rest += proj;
    }
  }
  return {positive, rest};
}

std::vector<ComplexVector> range_basis(const ComplexMatrix& projector) {
  const Eigensystem eig = herm_eig(0.5 * (projector + projector.adjoint()));
  std::vector<ComplexVector> out;
  for (std::size_t e = 0; e < eig.values.size(); ++e)
    if (eig.values[e] > 0.5) out.push_back(column(eig.vectors, e));
  return out;
}

std::vector<ComplexVector> full_basis(std::size_t dim) {
  std::vector<ComplexVector> out;
  for (std::size_t i = 0; i < dim; ++i) {
    ComplexVector v(dim);
    v[i] = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

// Updates one party's PVMs given the conditional operators R[x][a]. Two
// outcomes are solved exactly; more outcomes use pairwise two-outcome moves
// inside the span of the current pair.
PVMFamily respond(const std::vector<std::vector<ComplexMatrix>>& conditional,
                  const PVMFamily& current) {
  const std::size_t n = current.outcomes;
  const std::size_t dim = current.dim;
  std::vector<std::vector<ComplexMatrix>> projectors = current.projectors;
  for (std::size_t x = 0; x < current.settings; ++x) {
    const auto& R = conditional[x];
    if (n == 1) {
      projectors[x][0] = ComplexMatrix::identity(dim);
      continue;
    }
    if (n == 2) {
      auto [first, second] = split_by_sign(R[0] - R[1], full_basis(dim));
      projectors[x][0] = std::move(first);
      projectors[x][1] = std::move(second);
      continue;
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto basis = range_basis(projectors[x][a] + projectors[x][b]);
        auto [first, second] = split_by_sign(R[a] - R[b], basis);
        projectors[x][a] = std::move(first);
        projectors[x][b] = std::move(second);
      }
  }
  return PVMFamily::create(std::move(projectors));
}

}  // namespace

double strategy_value(const Strategy& s, const BellFunctional& f) {
  return bell_value(behaviour_direct(s.alice, s.bob, s.state), f);
}

State optimal_state(const BellFunctional& f, const PVMFamily& alice, const PVMFamily& bob) {
  check_shapes(f, alice, bob);
  ComplexMatrix op(alice.dim * bob.dim);
  for (std::size_t x = 0; x < f.m(); ++x)
    for (std::size_t y = 0; y < f.m(); ++y)
      for (std::size_t a = 0; a < f.n(); ++a)
        for (std::size_t b = 0; b < f.n(); ++b) {
          const double w = f(a, b, x, y);
          if (w == 0.0) continue;
          op += Complex(w) * kron(alice(x, a), bob(y, b));
        }
  const Eigensystem eig = herm_eig(0.5 * (op + op.adjoint()));
  return State::from_vector(column(eig.vectors, op.dim() - 1));
}

PVMFamily best_response_alice(const BellFunctional& f, const PVMFamily& alice,
                              const PVMFamily& bob, const State& state) {
  check_shapes(f, alice, bob);
  const ComplexMatrix rho = state.density();
  const RegisterDims dims{alice.dim, bob.dim};
  const std::size_t keep[] = {0};
  const ComplexMatrix id = ComplexMatrix::identity(alice.dim);
  std::vector<std::vector<ComplexMatrix>> conditional(f.m());
  for (std::size_t x = 0; x < f.m(); ++x)
    for (std::size_t a = 0; a < f.n(); ++a) {
      ComplexMatrix k(bob.dim);
      for (std::size_t b = 0; b < f.n(); ++b)
        for (std::size_t y = 0; y < f.m(); ++y) k += Complex(f(a, b, x, y)) * bob(y, b);
      const ComplexMatrix r = partial_trace(rho * kron(id, k), dims, keep);
      conditional[x].push_back(0.5 * (r + r.adjoint()));
    }
  return respond(conditional, alice);
}

PVMFamily best_response_bob(const BellFunctional& f, const PVMFamily& alice,
                            const PVMFamily& bob, const State& state) {
  check_shapes(f, alice, bob);
  const ComplexMatrix rho = state.density();
  const RegisterDims dims{alice.dim, bob.dim};
  const std::size_t keep[] = {1};
  const ComplexMatrix id = ComplexMatrix::identity(bob.dim);
  std::vector<std::vector<ComplexMatrix>> conditional(f.m());
  for (std::size_t y = 0; y < f.m(); ++y)
    for (std::size_t b = 0; b < f.n(); ++b) {
      ComplexMatrix l(alice.dim);
      for (std::size_t a = 0; a < f.n(); ++a)
        for (std::size_t x = 0; x < f.m(); ++x) l += Complex(f(a, b, x, y)) * alice(x, a);
      const ComplexMatrix r = partial_trace(rho * kron(l, id), dims, keep);
      conditional[y].push_back(0.5 * (r + r.adjoint()));
    }
  return respond(conditional, bob);
}

SeesawResult optimize_bell(const BellFunctional& f, const SeesawConfig& cfg) {
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  if (n == 0 || m == 0) throw InvalidArgumentError("see-saw: empty functional");
  if (cfg.dA == 0 || cfg.dB == 0) throw InvalidArgumentError("see-saw: local dimensions must be positive");
  if (cfg.rel_tol <= 0.0) throw InvalidArgumentError("see-saw: rel_tol must be positive");
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw InvalidArgumentError("see-saw: restarts and max_iters must be at least 1");
  if (n > 2 && !cfg.allow_heuristic)
    throw InvalidArgumentError("see-saw: more than two outcomes requires the heuristic flag");

  SeesawResult best;
  best.functional = f;
  best.heuristic = n > 2;
  bool have_best = false;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    CounterRng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    Strategy s{random_pvm_family(cfg.dA, m, n, rng), random_pvm_family(cfg.dB, m, n, rng),
               random_state(cfg.dA * cfg.dB, StateKind::Vector, rng)};
    std::vector<double> trace{strategy_value(s, f)};
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      s.state = optimal_state(f, s.alice, s.bob);
      s.alice = best_response_alice(f, s.alice, s.bob, s.state);
      s.bob = best_response_bob(f, s.alice, s.bob, s.state);
      const double before = trace.back();
      const double after = strategy_value(s, f);
      trace.push_back(after);
      if (after - before < cfg.rel_tol * std::max(std::abs(before), 1e-300)) break;
    }
    const double value = trace.back();
    best.restart_values.push_back(value);
    if (!have_best || value > best.value) {
      have_best = true;
      best.value = value;
      best.strategy = std::move(s);
      best.trace = std::move(trace);
      best.best_restart = static_cast<std::size_t>(restart);
    }
  }
  best.lifted = diagonal_fourier_lift(best.strategy.alice, best.strategy.bob, best.strategy.state);
  return best;
}

LiftReport lift_and_verify(const SeesawResult& result) {
  LiftReport report;
  report.seesaw_value = result.value;
  ChannelOptions opts;
  opts.max_n = std::max<std::size_t>(opts.max_n, result.lifted.n);
  const ChannelFamily channel = channel_direct(result.lifted, opts);
  report.extracted = behaviour_from_channel(channel);
  report.direct = behaviour_direct(result.strategy.alice, result.strategy.bob, result.strategy.state);
  report.extracted_value = bell_value(report.extracted, result.functional);
  report.deviation = std::abs(report.extracted_value - result.value);
  report.ok = report.deviation <= 1e-8;
  if (report.deviation > 1e-6) {
    throw InconsistentError("lifted channel reproduces value " +
                            std::to_string(report.extracted_value) + " instead of " +
                            std::to_string(result.value));
  }
  return report;
}

}  // namespace uichan
