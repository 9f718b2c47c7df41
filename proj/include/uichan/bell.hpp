#pragma once

// Bridge between channel families and Bell behaviours.
//
// Outcomes and settings are 0-based here; outcome n-1 is the one that absorbs
// the completion 1 - sum_a M_a|x when sub-POVMs are turned into POVMs.

#include <cstddef>
#include <vector>

#include "uichan/channels.hpp"
#include "uichan/matrix.hpp"
#include "uichan/models.hpp"

namespace uichan {

// c[a][a'] = exp(-2 pi i (a+1)(a'+1) / n) / n.
class FourierCoeffs {
 public:
  explicit FourierCoeffs(std::size_t n);
  std::size_t n() const noexcept { return n_; }
  Complex operator()(std::size_t a, std::size_t ap) const { return c_[a * n_ + ap]; }

 private:
  std::size_t n_;
  std::vector<Complex> c_;
};

FourierCoeffs fourier_coeffs(std::size_t n);

// Table indexed [a][b][x][y] with n outcomes and m settings.
class OutcomeTable {
 public:
  OutcomeTable() = default;
  OutcomeTable(std::size_t n, std::size_t m) : n_(n), m_(m), values_(n * n * m * m) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  double& operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return values_[((a * n_ + b) * m_ + x) * m_ + y];
  }
  double operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    return values_[((a * n_ + b) * m_ + x) * m_ + y];
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> values_;
};

// p(ab|xy).
class Behaviour : public OutcomeTable {
 public:
  using OutcomeTable::OutcomeTable;
};

// Coefficients f(a,b,x,y) of a linear functional sum f * p.
class BellFunctional : public OutcomeTable {
 public:
  using OutcomeTable::OutcomeTable;
};

struct BehaviourDefects {
  double min_entry = 0.0;
  double max_normalization_defect = 0.0;
};
BehaviourDefects behaviour_defects(const Behaviour& p);

// u^x_a' = sum_a exp(2 pi i (a+1)(a'+1)/n) P_a|x, indexed [x][a'].
std::vector<std::vector<ComplexMatrix>> unitaries_from_pvm(const PVMFamily& family);

// P_a = sum_a' c[a][a'] u_a'.
std::vector<ComplexMatrix> projectors_from_unitaries(const std::vector<ComplexMatrix>& unitaries);

// M_a = (sum_j c[a][j] u_jj)(sum_k c[a][k] u_kk)^dagger for a block unitary
// whose diagonal blocks u_jj have dimension d.
std::vector<ComplexMatrix> sub_povm(const ComplexMatrix& block_unitary, std::size_t n,
                                    std::size_t d);

struct BehaviourExtraction {
  Behaviour behaviour;     // completed p-hat
  std::vector<Complex> raw;  // q(ab|xy), same indexing as Behaviour
  double max_imaginary_residue = 0.0;
  double max_completion_shift = 0.0;  // max |p-hat - Re q|
};

// Raw values from diagonal moments, marginals from unitarity contractions, and
// the completion on outcome n-1 for both parties. Throws InconsistentError when
// an imaginary residue exceeds 1e-9.
BehaviourExtraction extract_behaviour(const ChannelFamily& channel);
Behaviour behaviour_from_channel(const ChannelFamily& channel);

Behaviour behaviour_direct(const PVMFamily& alice, const PVMFamily& bob, const State& state);

double bell_value(const Behaviour& p, const BellFunctional& f);

// sum_{k,j,s,r} c[a][j] conj(c[a][k]) c[b][r] conj(c[b][s])
//   * Lambda_xy(E_kj (x) E_sr) at row (k,s), column (j,r).
Complex lastcond_contraction(const ChannelFamily& channel, std::size_t a, std::size_t b,
                             std::size_t x, std::size_t y);

// Win probability of the CHSH game with uniform inputs: outcome bits a, b win
// on input bits x, y iff a XOR b == x AND y.
BellFunctional chsh_functional();

double max_abs_diff(const OutcomeTable& a, const OutcomeTable& b);

}  // namespace uichan
