#pragma once

// Unitary induced channel families.
//
// Conventions (all 0-based):
//  * The ancilla pair A'B' is the composite space C^n (x) C^n, composite index
//    (k, s) -> k*n + s.
//  * A density matrix rho on A'B' is vectorized row-major, vec[r*N + c] =
//    rho(r, c) with N = n^2, and a superoperator S satisfies
//    vec(Lambda(rho)) = S vec(rho).
//  * Lambda(rho) = Tr_env[ W^dagger (rho (x) sigma) W ], W = (U (x) 1)(1 (x) V).
//  * Moment tables hold T[i,j,l,k,p,r,t,s] = phi(u_ij u_lk^* (x) v_pr v_ts^*)
//    and determine the channel through
//    Lambda(E_li (x) E_tp) = sum_{j,k,r,s} T[i,j,l,k,p,r,t,s] E_kj (x) E_sr.

#include <cstddef>
#include <vector>

#include "uichan/matrix.hpp"
#include "uichan/models.hpp"

namespace uichan {

struct ChannelOptions {
  // Dense superoperators scale as n^8; larger n needs an explicit override.
  std::size_t max_n = 4;
  // Reject models whose validation report fails.
  bool validate = true;
};

struct ChannelFamily {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<ComplexMatrix> super;  // index x*m + y, each of dim n^4

  const ComplexMatrix& at(std::size_t x, std::size_t y) const { return super[x * m + y]; }
  ComplexMatrix& at(std::size_t x, std::size_t y) { return super[x * m + y]; }
};

class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(std::size_t n, std::size_t m);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }

  // Index order i, j, l, k, p, r, t, s as in phi(u_ij u_lk^* (x) v_pr v_ts^*).
  Complex& operator()(std::size_t x, std::size_t y, std::size_t i, std::size_t j,
                      std::size_t l, std::size_t k, std::size_t p, std::size_t r,
                      std::size_t t, std::size_t s) {
    return cells_[x * m_ + y][offset(i, j, l, k, p, r, t, s)];
  }
  const Complex& operator()(std::size_t x, std::size_t y, std::size_t i, std::size_t j,
                            std::size_t l, std::size_t k, std::size_t p, std::size_t r,
                            std::size_t t, std::size_t s) const {
    return cells_[x * m_ + y][offset(i, j, l, k, p, r, t, s)];
  }

  std::vector<Complex>& cell(std::size_t x, std::size_t y) { return cells_[x * m_ + y]; }
  const std::vector<Complex>& cell(std::size_t x, std::size_t y) const {
    return cells_[x * m_ + y];
  }

 private:
  std::size_t offset(std::size_t i, std::size_t j, std::size_t l, std::size_t k,
                     std::size_t p, std::size_t r, std::size_t t, std::size_t s) const {
    return (((((((i * n_ + j) * n_ + l) * n_ + k) * n_ + p) * n_ + r) * n_ + t) * n_ + s);
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<Complex>> cells_;
};

// Coupling unitary on (A', H_A, H_B, B') or (A', H, B').
ComplexMatrix dilation_unitary(const TensorModel& model, std::size_t x, std::size_t y);
ComplexMatrix dilation_unitary(const CommutingModel& model, std::size_t x, std::size_t y);

// Lambda_xy(rho) through the literal recipe: embed rho (x) sigma, permute into
// the model's register order, conjugate, trace out the environment.
ComplexMatrix apply_direct(const TensorModel& model, std::size_t x, std::size_t y,
                           const ComplexMatrix& rho);
ComplexMatrix apply_direct(const CommutingModel& model, std::size_t x, std::size_t y,
                           const ComplexMatrix& rho);

// Superoperators assembled column by column from matrix-unit inputs.
ChannelFamily channel_direct(const TensorModel& model, const ChannelOptions& opts = {});
ChannelFamily channel_direct(const CommutingModel& model, const ChannelOptions& opts = {});
ChannelFamily channel_direct(const Model& model, const ChannelOptions& opts = {});

MomentTable moment_table(const TensorModel& model, const ChannelOptions& opts = {});
MomentTable moment_table(const CommutingModel& model, const ChannelOptions& opts = {});
MomentTable moment_table(const Model& model, const ChannelOptions& opts = {});

// Throws InconsistentError when the conjugate-symmetry defect exceeds 1e-6.
ChannelFamily channel_from_moments(const MomentTable& table);
MomentTable moments_from_channel(const ChannelFamily& channel);

// max |T[i,j,l,k,p,r,t,s] - conj(T[l,k,i,j,t,s,p,r])|
double conjugate_symmetry_defect(const MomentTable& table);

struct ContractionDefects {
  double u_legs = 0.0;     // sum_j T[i,j,l,j,...] vs delta_il * phi(1 (x) v v^*)
  double v_legs = 0.0;     // sum_r T[...,p,r,t,r] vs delta_pt * phi(u u^* (x) 1)
  double both_legs = 0.0;  // vs delta_il delta_pt
};
ContractionDefects contraction_defects(const MomentTable& table);

// phi(1 (x) v_pr v_ts^*) recovered from u-leg contractions, averaged over the
// free row index. Indexed (p, r, t, s) row-major.
std::vector<Complex> bob_marginal_moments(const MomentTable& table, std::size_t x,
                                          std::size_t y);
// phi(u_ij u_lk^* (x) 1), indexed (i, j, l, k).
std::vector<Complex> alice_marginal_moments(const MomentTable& table, std::size_t x,
                                            std::size_t y);

// Choi matrix J = sum_ab E_ab (x) Lambda(E_ab) over the n^2-dim composite index.
ComplexMatrix choi(const ComplexMatrix& superop, std::size_t n);
std::vector<ComplexMatrix> choi(const ChannelFamily& channel);

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  double trace_preservation_defect = 0.0;
  double hermiticity_preservation_defect = 0.0;
  bool completely_positive = false;  // min eigenvalue >= -1e-9
  bool trace_preserving = false;     // defect <= 1e-10
  bool ok() const { return completely_positive && trace_preserving; }
};
CptpReport cptp_report(const ChannelFamily& channel);

ComplexMatrix apply(const ComplexMatrix& superop, const ComplexMatrix& rho);
// rho_xy = Lambda_xy(rho), index x*m + y. Throws DomainError unless rho is a
// state within 1e-10 * dim.
std::vector<ComplexMatrix> apply(const ChannelFamily& channel, const ComplexMatrix& rho);

double max_abs_diff(const ChannelFamily& a, const ChannelFamily& b);
double max_abs_diff(const MomentTable& a, const MomentTable& b);

}  // namespace uichan
