#pragma once

// Dense complex linear algebra used by every other part of the toolkit.
//
// Matrices are square, row-major and 0-indexed. Composite indices over a
// register list (d_1, ..., d_r) are row-major as well: the first register is
// the slowest-varying digit, so kron(A, B)[(i*dimB + k), (j*dimB + l)] equals
// A[i,j] * B[k,l].

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uichan {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  // Matrix unit E_ij (0-based).
  static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix outer(std::span<const Complex> ket,
                             std::span<const Complex> bra);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;

  // Operator-valued entry (bi, bj) when the matrix is read as a
  // (dim/block) x (dim/block) array of block x block blocks.
  ComplexMatrix block(std::size_t bi, std::size_t bj, std::size_t block) const;
  void set_block(std::size_t bi, std::size_t bj, const ComplexMatrix& value);

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Default numerical tolerance for structural predicates: 1e-10 * dim.
double default_tolerance(std::size_t dim);

double hermiticity_defect(const ComplexMatrix& m);
// ||M M^dagger - I||_F
double unitarity_defect(const ComplexMatrix& m);
// ||P^2 - P||_F + ||P - P^dagger||_F
double projector_defect(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);
bool is_psd(const ComplexMatrix& m, double tol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Ordered subsystem dimensions of a composite space.
class RegisterDims {
 public:
  RegisterDims() = default;
  RegisterDims(std::initializer_list<std::size_t> dims);
  explicit RegisterDims(std::vector<std::size_t> dims);

  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t k) const { return dims_[k]; }
  std::size_t product() const noexcept;
  const std::vector<std::size_t>& values() const noexcept { return dims_; }

 private:
  std::vector<std::size_t> dims_;
};

// Reduced matrix on the registers listed in `keep` (kept in ascending order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterDims& dims,
                            std::span<const std::size_t> keep);

// Conjugation by the register permutation isometry. Output register k is
// input register perm[k], so perm = {1, 0} maps rho (x) sigma to sigma (x) rho.
ComplexMatrix permute_registers(const ComplexMatrix& m, const RegisterDims& dims,
                                std::span<const std::size_t> perm);

struct Eigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

// Cyclic complex Jacobi. The input is symmetrized as (H + H^dagger)/2 after
// the hermiticity check.
Eigensystem herm_eig(const ComplexMatrix& h);

double min_eigenvalue(const ComplexMatrix& h);
double max_eigenvalue(const ComplexMatrix& h);

class CounterRng;

// Ginibre sample followed by Gram-Schmidt QR with a positive real R diagonal.
ComplexMatrix haar_unitary(std::size_t dim, CounterRng& rng);
ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

}  // namespace uichan
