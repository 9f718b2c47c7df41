#pragma once

// Finite-dimensional tensor and commuting models of unitary induced channels.
//
// Block convention: every coupling unitary is stored as an n x n array of
// operator blocks, block (i, j) being the entry u_ij (or v_kl). For U this is
// the natural (A', H_A) ordering; V is stored ancilla-outer as well, i.e. as
// sum_kl E_kl (x) v_kl, and the channel code moves it to (H_B, B') itself.
//
// Register order is (A', H_A, H_B, B') for tensor models and (A', H, B') for
// commuting models.

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "uichan/matrix.hpp"

namespace uichan {

enum class StateKind { Vector, Density };

// A normalized state, either a unit vector or a density matrix.
class State {
 public:
  State() = default;
  static State from_vector(ComplexVector psi);
  static State from_density(ComplexMatrix rho);

  StateKind kind() const noexcept {
    return std::holds_alternative<ComplexVector>(data_) ? StateKind::Vector
                                                        : StateKind::Density;
  }
  std::size_t dim() const;
  const ComplexVector& vector() const { return std::get<ComplexVector>(data_); }
  const ComplexMatrix& density_matrix() const { return std::get<ComplexMatrix>(data_); }
  ComplexMatrix density() const;
  Complex expectation(const ComplexMatrix& op) const;

  // |1 - norm| for vectors; trace defect plus negative-eigenvalue and
  // hermiticity defects for density matrices.
  double defect() const;

 private:
  std::variant<ComplexVector, ComplexMatrix> data_{ComplexVector{}};
};

// Projection-valued measures indexed [setting][outcome], 0-based internally.
struct PVMFamily {
  std::size_t dim = 0;
  std::size_t settings = 0;
  std::size_t outcomes = 0;
  std::vector<std::vector<ComplexMatrix>> projectors;

  // Shape check only; numerical defects are reported by pvm_defect().
  static PVMFamily create(std::vector<std::vector<ComplexMatrix>> projectors);
  const ComplexMatrix& operator()(std::size_t x, std::size_t a) const {
    return projectors[x][a];
  }
};

// Worst projector defect plus worst completeness defect ||sum_a P - I||_F.
double pvm_defect(const PVMFamily& family);

struct TensorModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t dA = 0;
  std::size_t dB = 0;
  State state;                  // on H_A (x) H_B
  std::vector<ComplexMatrix> U;  // dim n*dA
  std::vector<ComplexMatrix> V;  // dim n*dB

  // Throws DimensionError on any shape inconsistency.
  void check_shapes() const;
};

struct CommutingModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  State state;                  // on H
  std::vector<ComplexMatrix> U;  // dim n*d
  std::vector<ComplexMatrix> V;  // dim n*d

  void check_shapes() const;
};

using Model = std::variant<TensorModel, CommutingModel>;

struct ModelReport {
  double tolerance = 0.0;
  double max_unitarity_defect = 0.0;
  double max_commutator_defect = 0.0;  // always 0 for tensor models
  double state_defect = 0.0;
  bool unitarity_ok = false;
  bool commutation_ok = false;
  bool state_ok = false;
  bool accepted() const { return unitarity_ok && commutation_ok && state_ok; }
};

// Soft validation tier: numerical defects are reported, never thrown.
// `tolerance` <= 0 selects 1e-10 * dim per checked matrix.
ModelReport validate_tensor(const TensorModel& model, double tolerance = 0.0);
ModelReport validate_commuting(const CommutingModel& model, double tolerance = 0.0);
ModelReport validate(const Model& model, double tolerance = 0.0);

// H = H_A (x) H_B, u'_ij = u_ij (x) 1, v'_kl = 1 (x) v_kl.
CommutingModel embed_tensor_as_commuting(const TensorModel& model);

// Block-diagonal U[x] with blocks u^x_a' = sum_a exp(2 pi i a a'/n) P_a|x,
// using 1-based a, a'. V[y] is built the same way from `bob`.
TensorModel diagonal_fourier_lift(const PVMFamily& alice, const PVMFamily& bob,
                                  const State& state);

enum class ModelKind { Tensor, Commuting };

struct RandomModelSpec {
  ModelKind kind = ModelKind::Tensor;
  std::size_t n = 2;
  std::size_t m = 2;
  std::size_t dA = 2;
  std::size_t dB = 2;
  StateKind state = StateKind::Vector;
  std::uint64_t seed = 0;
};

TensorModel random_tensor_model(const RandomModelSpec& spec);
// Random tensor model followed by embed_tensor_as_commuting.
CommutingModel random_commuting_model(const RandomModelSpec& spec);
Model random_model(const RandomModelSpec& spec);

class CounterRng;

State random_state(std::size_t dim, StateKind kind, CounterRng& rng);
// Eigenbasis of a Haar unitary, basis vectors dealt to outcomes as evenly as
// possible in a random order.
PVMFamily random_pvm_family(std::size_t dim, std::size_t settings,
                            std::size_t outcomes, CounterRng& rng);

}  // namespace uichan
