#include "uichan/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uichan/errors.hpp"
#include "uichan/rng.hpp"

namespace uichan {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionError("matrix of dim " + std::to_string(dim_) + " needs " +
                         std::to_string(dim_ * dim_) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket,
                                   std::span<const Complex> bra) {
  if (ket.size() != bra.size()) throw DimensionError("outer: length mismatch");
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::block(std::size_t bi, std::size_t bj,
                                   std::size_t block) const {
  if (block == 0 || dim_ % block != 0 || (bi + 1) * block > dim_ ||
      (bj + 1) * block > dim_) {
    throw DimensionError("block: out of range");
  }
  ComplexMatrix out(block);
  for (std::size_t i = 0; i < block; ++i)
    for (std::size_t j = 0; j < block; ++j)
      out(i, j) = (*this)(bi * block + i, bj * block + j);
  return out;
}

void ComplexMatrix::set_block(std::size_t bi, std::size_t bj,
                              const ComplexMatrix& value) {
  const std::size_t b = value.dim();
  if (b == 0 || (bi + 1) * b > dim_ || (bj + 1) * b > dim_) {
    throw DimensionError("set_block: out of range");
  }
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) (*this)(bi * b + i, bj * b + j) = value(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix sum: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix difference: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  const std::size_t n = lhs.dim();
  if (rhs.dim() != n) throw DimensionError("matrix product: dimension mismatch");
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) throw DimensionError("matrix-vector product: dimension mismatch");
  ComplexVector out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  if (bra.size() != ket.size()) throw DimensionError("inner: length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

double default_tolerance(std::size_t dim) { return 1e-10 * static_cast<double>(dim); }

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).frobenius_norm();
}

double unitarity_defect(const ComplexMatrix& m) {
  return (m * m.adjoint() - ComplexMatrix::identity(m.dim())).frobenius_norm();
}

double projector_defect(const ComplexMatrix& m) {
  return (m * m - m).frobenius_norm() + hermiticity_defect(m);
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_defect(m) <= tol; }

bool is_unitary(const ComplexMatrix& m, double tol) { return unitarity_defect(m) <= tol; }

bool is_psd(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

RegisterDims::RegisterDims(std::initializer_list<std::size_t> dims) : dims_(dims) {
  for (auto d : dims_)
    if (d == 0) throw DimensionError("register dimensions must be positive");
}

RegisterDims::RegisterDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_)
    if (d == 0) throw DimensionError("register dimensions must be positive");
}

std::size_t RegisterDims::product() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

void check_dims(const ComplexMatrix& m, const RegisterDims& dims, const char* what) {
  if (dims.size() == 0 || dims.product() != m.dim()) {
    throw DimensionError(std::string(what) + ": register dimensions (product " +
                         std::to_string(dims.product()) + ") do not match matrix dim " +
                         std::to_string(m.dim()));
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterDims& dims,
                            std::span<const std::size_t> keep) {
  check_dims(m, dims, "partial_trace");
  const auto& d = dims.values();
  const std::size_t r = d.size();
  std::vector<bool> kept(r, false);
  for (auto k : keep) {
    if (k >= r || kept[k]) throw InvalidArgumentError("partial_trace: bad keep index");
    kept[k] = true;
  }

  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < r; ++k)
    if (kept[k]) kept_dims.push_back(d[k]);
  std::size_t out_dim = 1;
  for (auto v : kept_dims) out_dim *= v;

  // Split every composite index into (kept part, traced part).
  const std::size_t total = m.dim();
  std::vector<std::size_t> kept_index(total), traced_index(total);
  const auto strides = strides_of(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t digit = (idx / strides[k]) % d[k];
      if (kept[k]) {
        ki = ki * d[k] + digit;
      } else {
        ti = ti * d[k] + digit;
      }
    }
    kept_index[idx] = ki;
    traced_index[idx] = ti;
  }

  ComplexMatrix out(out_dim);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
  return out;
}

ComplexMatrix permute_registers(const ComplexMatrix& m, const RegisterDims& dims,
                                std::span<const std::size_t> perm) {
  check_dims(m, dims, "permute_registers");
  const auto& d = dims.values();
  const std::size_t r = d.size();
  if (perm.size() != r) throw InvalidArgumentError("permute_registers: permutation has wrong length");
  std::vector<bool> seen(r, false);
  for (auto p : perm) {
    if (p >= r || seen[p]) throw InvalidArgumentError("permute_registers: not a bijection");
    seen[p] = true;
  }

  std::vector<std::size_t> out_dims(r);
  for (std::size_t k = 0; k < r; ++k) out_dims[k] = d[perm[k]];
  const auto in_strides = strides_of(d);
  const auto out_strides = strides_of(out_dims);

  const std::size_t total = m.dim();
  std::vector<std::size_t> target(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t t = 0;
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t digit = (idx / in_strides[perm[k]]) % d[perm[k]];
      t += digit * out_strides[k];
    }
    target[idx] = t;
  }

  ComplexMatrix out(total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) out(target[i], target[j]) = m(i, j);
  return out;
}

Eigensystem herm_eig(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  const double scale = h.frobenius_norm();
  if (hermiticity_defect(h) > default_tolerance(n) * std::max(1.0, scale)) {
    throw DomainError("herm_eig: matrix is not hermitian");
  }

  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  const double target = 1e-15 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const Complex phase = a(p, q) / mag;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cphase = std::conj(phase);  // e^{-i theta}

        // Columns: A <- A G, with G_pp = c, G_pq = s, G_qp = -s e^{-i theta},
        // G_qq = c e^{-i theta}.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * cphase * akq;
          a(k, q) = s * akp + c * cphase * akq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * cphase * vkq;
          v(k, q) = s * vkp + c * cphase * vkq;
        }
        // Rows: A <- G^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  Eigensystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.dim() == 0) return 0.0;
  return herm_eig(h).values.front();
}

double max_eigenvalue(const ComplexMatrix& h) {
  if (h.dim() == 0) return 0.0;
  return herm_eig(h).values.back();
}

ComplexMatrix haar_unitary(std::size_t dim, CounterRng& rng) {
  if (dim == 0) throw InvalidArgumentError("haar_unitary: dimension must be positive");
  ComplexMatrix g(dim);
  for (auto& z : g.entries()) z = rng.complex_normal();

  // Modified Gram-Schmidt on columns, two passes. R_jj = ||column|| > 0 fixes
  // the phase ambiguity of the QR factorization.
  ComplexMatrix q(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    ComplexVector col(dim);
    for (std::size_t i = 0; i < dim; ++i) col[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * col[i];
        for (std::size_t i = 0; i < dim; ++i) col[i] -= proj * q(i, k);
      }
    }
    const double len = norm(col);
    for (std::size_t i = 0; i < dim; ++i) q(i, j) = col[i] / len;
  }
  return q;
}

ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed);
  return haar_unitary(dim, rng);
}

}  // namespace uichan
