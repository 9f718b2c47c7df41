#pragma once

// Test-only oracles. Nothing here calls the library routine it is used to
// check; each helper recomputes from the defining formula.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "uichan/matrix.hpp"
#include "uichan/rng.hpp"

namespace oracle {

using uichan::Complex;
using uichan::ComplexMatrix;
using uichan::ComplexVector;

inline ComplexMatrix random_matrix(std::size_t dim, uichan::CounterRng& rng) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, uichan::CounterRng& rng) {
  ComplexMatrix m = random_matrix(dim, rng);
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t d = a.dim();
  ComplexMatrix c(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix c(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) c(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return c;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

inline Complex trace(const ComplexMatrix& a) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

// Decomposes a flat index into digits over `dims`, first register slowest.
inline std::vector<std::size_t> digits(std::size_t flat, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = flat % dims[k];
    flat /= dims[k];
  }
  return out;
}

inline std::size_t compose(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
  return flat;
}

// Output register k holds input register perm[k].
inline ComplexMatrix relabel(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> out_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) out_dims[k] = dims[perm[k]];
  ComplexMatrix out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const auto ri = digits(r, dims), ci = digits(c, dims);
      std::vector<std::size_t> ro(dims.size()), co(dims.size());
      for (std::size_t k = 0; k < dims.size(); ++k) {
        ro[k] = ri[perm[k]];
        co[k] = ci[perm[k]];
      }
      out(compose(ro, out_dims), compose(co, out_dims)) = m(r, c);
    }
  return out;
}

// 2x2 projector onto the Bloch direction (z, x) for sign +1, its complement for -1.
inline ComplexMatrix qubit_projector(double z, double x, double sign) {
  ComplexMatrix p(2);
  p(0, 0) = 0.5 * (1.0 + sign * z);
  p(1, 1) = 0.5 * (1.0 - sign * z);
  p(0, 1) = 0.5 * sign * x;
  p(1, 0) = 0.5 * sign * x;
  return p;
}

// Analytic CHSH win probability of the optimal qubit strategy, computed from
// the correlators <A_x (x) B_y> = cos(angle_x - angle_y) of the maximally
// entangled state for measurement angles in the Z-X plane.
inline double chsh_optimum_from_angles() {
  const double pi = std::acos(-1.0);
  const double alice[2] = {0.0, pi / 2.0};
  const double bob[2] = {pi / 4.0, -pi / 4.0};
  double win = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const double corr = std::cos(alice[x] - bob[y]);
      win += 0.25 * (x * y == 1 ? (1.0 - corr) / 2.0 : (1.0 + corr) / 2.0);
    }
  return win;
}

// Best CHSH win probability over the 16 deterministic local strategies.
inline double chsh_classical_bound() {
  double best = 0.0;
  for (int s = 0; s < 16; ++s) {
    const int a[2] = {s & 1, (s >> 1) & 1};
    const int b[2] = {(s >> 2) & 1, (s >> 3) & 1};
    double win = 0.0;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        if ((a[x] ^ b[y]) == (x & y)) win += 0.25;
    best = std::max(best, win);
  }
  return best;
}

}  // namespace oracle
