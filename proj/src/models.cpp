#include "uichan/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "uichan/errors.hpp"
#include "uichan/rng.hpp"

namespace uichan {

State State::from_vector(ComplexVector psi) {
  if (psi.empty()) throw DimensionError("state vector must be non-empty");
  State s;
  s.data_ = std::move(psi);
  return s;
}

State State::from_density(ComplexMatrix rho) {
  if (rho.dim() == 0) throw DimensionError("density matrix must be non-empty");
  State s;
  s.data_ = std::move(rho);
  return s;
}

std::size_t State::dim() const {
  if (kind() == StateKind::Vector) return vector().size();
  return density_matrix().dim();
}

ComplexMatrix State::density() const {
  if (kind() == StateKind::Vector) return ComplexMatrix::outer(vector(), vector());
  return density_matrix();
}

Complex State::expectation(const ComplexMatrix& op) const {
  if (op.dim() != dim()) throw DimensionError("expectation: operator/state dimension mismatch");
  if (kind() == StateKind::Vector) {
    const auto& psi = vector();
    return inner(psi, op * psi);
  }
  const auto& rho = density_matrix();
  Complex s = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) s += rho(i, j) * op(j, i);
  return s;
}

double State::defect() const {
  if (kind() == StateKind::Vector) return std::abs(1.0 - norm(vector()));
  const auto& rho = density_matrix();
  const double herm = hermiticity_defect(rho);
  const double tr = std::abs(rho.trace() - 1.0);
  // Eigenvalues are only meaningful once the matrix is close to hermitian.
  if (herm > 1e-6) return herm + tr;
  return herm + tr + std::max(0.0, -min_eigenvalue(rho));
}

PVMFamily PVMFamily::create(std::vector<std::vector<ComplexMatrix>> projectors) {
  PVMFamily f;
  f.settings = projectors.size();
  if (f.settings == 0) throw DimensionError("PVM family needs at least one setting");
  f.outcomes = projectors.front().size();
  if (f.outcomes == 0) throw DimensionError("PVM family needs at least one outcome");
  f.dim = projectors.front().front().dim();
  for (const auto& setting : projectors) {
    if (setting.size() != f.outcomes)
      throw DimensionError("PVM family: settings have different outcome counts");
    for (const auto& p : setting)
      if (p.dim() != f.dim) throw DimensionError("PVM family: projector dimension mismatch");
  }
  f.projectors = std::move(projectors);
  return f;
}

double pvm_defect(const PVMFamily& family) {
  double worst = 0.0;
  for (const auto& setting : family.projectors) {
    ComplexMatrix sum(family.dim);
    for (const auto& p : setting) {
      worst = std::max(worst, projector_defect(p));
      sum += p;
    }
    worst = std::max(worst, (sum - ComplexMatrix::identity(family.dim)).frobenius_norm());
  }
  return worst;
}

void TensorModel::check_shapes() const {
  if (n == 0 || m == 0 || dA == 0 || dB == 0)
    throw DimensionError("tensor model: n, m, dA, dB must be positive");
  if (U.size() != m || V.size() != m)
    throw DimensionError("tensor model: expected " + std::to_string(m) + " unitaries per party");
  for (const auto& u : U)
    if (u.dim() != n * dA) throw DimensionError("tensor model: U must have dim n*dA");
  for (const auto& v : V)
    if (v.dim() != n * dB) throw DimensionError("tensor model: V must have dim n*dB");
  if (state.dim() != dA * dB) throw DimensionError("tensor model: state must live on dA*dB");
}

void CommutingModel::check_shapes() const {
  if (n == 0 || m == 0 || d == 0)
    throw DimensionError("commuting model: n, m, d must be positive");
  if (U.size() != m || V.size() != m)
    throw DimensionError("commuting model: expected " + std::to_string(m) + " unitaries per party");
  for (const auto& u : U)
    if (u.dim() != n * d) throw DimensionError("commuting model: U must have dim n*d");
  for (const auto& v : V)
    if (v.dim() != n * d) throw DimensionError("commuting model: V must have dim n*d");
  if (state.dim() != d) throw DimensionError("commuting model: state must live on d");
}

namespace {

double pick(double override_tol, std::size_t dim) {
  return override_tol > 0.0 ? override_tol : default_tolerance(dim);
}

}  // namespace

ModelReport validate_tensor(const TensorModel& model, double tolerance) {
  model.check_shapes();
  ModelReport r;
  r.tolerance = pick(tolerance, std::max(model.n * model.dA, model.n * model.dB));
  r.unitarity_ok = true;
  for (const auto& u : model.U) {
    const double def = unitarity_defect(u);
    r.max_unitarity_defect = std::max(r.max_unitarity_defect, def);
    if (def > pick(tolerance, u.dim())) r.unitarity_ok = false;
  }
  for (const auto& v : model.V) {
    const double def = unitarity_defect(v);
    r.max_unitarity_defect = std::max(r.max_unitarity_defect, def);
    if (def > pick(tolerance, v.dim())) r.unitarity_ok = false;
  }
  r.commutation_ok = true;
  r.state_defect = model.state.defect();
  r.state_ok = r.state_defect <= pick(tolerance, model.state.dim());
  return r;
}

ModelReport validate_commuting(const CommutingModel& model, double tolerance) {
  model.check_shapes();
  ModelReport r;
  const std::size_t n = model.n;
  const std::size_t d = model.d;
  r.tolerance = pick(tolerance, n * d);
  r.unitarity_ok = true;
  for (const auto* family : {&model.U, &model.V}) {
    for (const auto& w : *family) {
      const double def = unitarity_defect(w);
      r.max_unitarity_defect = std::max(r.max_unitarity_defect, def);
      if (def > pick(tolerance, w.dim())) r.unitarity_ok = false;
    }
  }

  const double block_tol = pick(tolerance, d);
  for (const auto& U : model.U) {
    std::vector<ComplexMatrix> us, us_dag;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        us.push_back(U.block(i, j, d));
        us_dag.push_back(us.back().adjoint());
      }
    for (const auto& V : model.V) {
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const ComplexMatrix v = V.block(k, l, d);
          for (std::size_t b = 0; b < us.size(); ++b) {
            r.max_commutator_defect = std::max(
                r.max_commutator_defect, (us[b] * v - v * us[b]).frobenius_norm());
            r.max_commutator_defect = std::max(
                r.max_commutator_defect, (us_dag[b] * v - v * us_dag[b]).frobenius_norm());
          }
        }
    }
  }
  r.commutation_ok = r.max_commutator_defect <= block_tol;
  r.state_defect = model.state.defect();
  r.state_ok = r.state_defect <= pick(tolerance, d);
  return r;
}

ModelReport validate(const Model& model, double tolerance) {
  return std::visit(
      [&](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TensorModel>) {
          return validate_tensor(m, tolerance);
        } else {
          return validate_commuting(m, tolerance);
        }
      },
      model);
}

CommutingModel embed_tensor_as_commuting(const TensorModel& model) {
  model.check_shapes();
  const std::size_t n = model.n;
  const std::size_t d = model.dA * model.dB;
  const ComplexMatrix idA = ComplexMatrix::identity(model.dA);
  const ComplexMatrix idB = ComplexMatrix::identity(model.dB);

  CommutingModel out;
  out.n = n;
  out.m = model.m;
  out.d = d;
  out.state = model.state;
  for (const auto& U : model.U) {
    ComplexMatrix lifted(n * d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) lifted.set_block(i, j, kron(U.block(i, j, model.dA), idB));
    out.U.push_back(std::move(lifted));
  }
  for (const auto& V : model.V) {
    ComplexMatrix lifted(n * d);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) lifted.set_block(k, l, kron(idA, V.block(k, l, model.dB)));
    out.V.push_back(std::move(lifted));
  }
  return out;
}

namespace {

ComplexMatrix fourier_block_unitary(const std::vector<ComplexMatrix>& projectors) {
  const std::size_t n = projectors.size();
  const std::size_t d = projectors.front().dim();
  ComplexMatrix out(n * d);
  for (std::size_t ap = 1; ap <= n; ++ap) {
    ComplexMatrix block(d);
    for (std::size_t a = 1; a <= n; ++a) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(a * ap) / static_cast<double>(n);
      block += std::polar(1.0, angle) * projectors[a - 1];
    }
    out.set_block(ap - 1, ap - 1, block);
  }
  return out;
}

}  // namespace

TensorModel diagonal_fourier_lift(const PVMFamily& alice, const PVMFamily& bob,
                                  const State& state) {
  if (alice.outcomes != bob.outcomes)
    throw DimensionError("diagonal_fourier_lift: outcome counts differ");
  if (alice.settings != bob.settings)
    throw DimensionError("diagonal_fourier_lift: setting counts differ");
  if (state.dim() != alice.dim * bob.dim)
    throw DimensionError("diagonal_fourier_lift: state dimension must be dA*dB");

  TensorModel model;
  model.n = alice.outcomes;
  model.m = alice.settings;
  model.dA = alice.dim;
  model.dB = bob.dim;
  model.state = state;
  for (const auto& setting : alice.projectors) model.U.push_back(fourier_block_unitary(setting));
  for (const auto& setting : bob.projectors) model.V.push_back(fourier_block_unitary(setting));
  return model;
}

State random_state(std::size_t dim, StateKind kind, CounterRng& rng) {
  if (kind == StateKind::Vector) {
    ComplexVector psi(dim);
    for (auto& z : psi) z = rng.complex_normal();
    const double len = norm(psi);
    for (auto& z : psi) z /= len;
    return State::from_vector(std::move(psi));
  }
  ComplexMatrix g(dim);
  for (auto& z : g.entries()) z = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  // Exact hermiticity after rounding.
  rho = 0.5 * (rho + rho.adjoint());
  return State::from_density(std::move(rho));
}

PVMFamily random_pvm_family(std::size_t dim, std::size_t settings,
                            std::size_t outcomes, CounterRng& rng) {
  if (dim == 0 || settings == 0 || outcomes == 0)
    throw InvalidArgumentError("random_pvm_family: sizes must be positive");
  std::vector<std::vector<ComplexMatrix>> projectors;
  for (std::size_t x = 0; x < settings; ++x) {
    const ComplexMatrix basis = haar_unitary(dim, rng);
    std::vector<std::size_t> label(dim);
    for (std::size_t c = 0; c < dim; ++c) label[c] = c % outcomes;
    for (std::size_t c = dim; c-- > 1;) std::swap(label[c], label[rng.below(c + 1)]);

    std::vector<ComplexMatrix> setting(outcomes, ComplexMatrix(dim));
    for (std::size_t c = 0; c < dim; ++c) {
      ComplexVector col(dim);
      for (std::size_t i = 0; i < dim; ++i) col[i] = basis(i, c);
      setting[label[c]] += ComplexMatrix::outer(col, col);
    }
    projectors.push_back(std::move(setting));
  }
  return PVMFamily::create(std::move(projectors));
}

TensorModel random_tensor_model(const RandomModelSpec& spec) {
  if (spec.n == 0 || spec.m == 0 || spec.dA == 0 || spec.dB == 0)
    throw InvalidArgumentError("random model: dimensions must be positive");
  CounterRng rng(spec.seed);
  TensorModel model;
  model.n = spec.n;
  model.m = spec.m;
  model.dA = spec.dA;
  model.dB = spec.dB;
  for (std::size_t x = 0; x < spec.m; ++x) model.U.push_back(haar_unitary(spec.n * spec.dA, rng));
  for (std::size_t y = 0; y < spec.m; ++y) model.V.push_back(haar_unitary(spec.n * spec.dB, rng));
  model.state = random_state(spec.dA * spec.dB, spec.state, rng);
  return model;
}

CommutingModel random_commuting_model(const RandomModelSpec& spec) {
  return embed_tensor_as_commuting(random_tensor_model(spec));
}

Model random_model(const RandomModelSpec& spec) {
  if (spec.kind == ModelKind::Tensor) return random_tensor_model(spec);
  return random_commuting_model(spec);
}

}  // namespace uichan
