#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "uichan/errors.hpp"
#include "uichan/matrix.hpp"
#include "uichan/rng.hpp"

using namespace uichan;

TEST_CASE("matrix constructor rejects wrong entry count") {
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<Complex>(3)), DimensionError);
  CHECK_NOTHROW(ComplexMatrix(2, std::vector<Complex>(4)));
}

TEST_CASE("kron of identities is identity") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
}

TEST_CASE("kron places matrix units") {
  const ComplexMatrix k = kron(ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(k(i, j) == Complex(i == 1 && j == 1 ? 1.0 : 0.0));
}

TEST_CASE("kron matches the entrywise definition") {
  CounterRng rng(11);
  const ComplexMatrix a = oracle::random_matrix(3, rng);
  const ComplexMatrix b = oracle::random_matrix(2, rng);
  CHECK(kron(a, b) == oracle::tensor(a, b));
}

TEST_CASE("kron is associative and satisfies the mixed product rule") {
  CounterRng rng(12);
  for (std::size_t da = 2; da <= 3; ++da)
    for (std::size_t db = 2; db <= 3; ++db) {
      const ComplexMatrix a = oracle::random_matrix(da, rng), b = oracle::random_matrix(db, rng);
      const ComplexMatrix c = oracle::random_matrix(da, rng), d = oracle::random_matrix(db, rng);
      const ComplexMatrix e = oracle::random_matrix(2, rng);
      CHECK(oracle::max_diff(kron(kron(a, b), e), kron(a, kron(b, e))) <= 1e-15);
      CHECK(oracle::max_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
    }
}

TEST_CASE("matrix product and adjoint agree with loops") {
  CounterRng rng(13);
  const ComplexMatrix a = oracle::random_matrix(4, rng), b = oracle::random_matrix(4, rng);
  CHECK(oracle::max_diff(a * b, oracle::matmul(a, b)) <= 1e-13);
  CHECK(a.adjoint() == oracle::dagger(a));
}

TEST_CASE("partial trace of a product state") {
  CounterRng rng(21);
  const ComplexMatrix rho = oracle::random_hermitian(2, rng);
  ComplexMatrix sigma = oracle::random_hermitian(3, rng);
  sigma *= 1.0 / oracle::trace(sigma);
  const std::size_t keep[] = {0};
  CHECK(oracle::max_diff(partial_trace(kron(rho, sigma), RegisterDims{2, 3}, keep), rho) <= 1e-12);
}

TEST_CASE("partial trace keeping every register is the identity map") {
  CounterRng rng(22);
  const ComplexMatrix m = oracle::random_matrix(6, rng);
  const std::size_t keep[] = {0, 1};
  CHECK(partial_trace(m, RegisterDims{2, 3}, keep) == m);
}

TEST_CASE("partial trace of a maximally entangled pair is maximally mixed") {
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexVector phi{h, 0.0, 0.0, h};
  const std::size_t keep[] = {0};
  const ComplexMatrix reduced = partial_trace(ComplexMatrix::outer(phi, phi), RegisterDims{2, 2}, keep);
  CHECK(oracle::max_diff(reduced, 0.5 * ComplexMatrix::identity(2)) <= 1e-15);
}

TEST_CASE("partial trace preserves the trace") {
  CounterRng rng(23);
  const ComplexMatrix m = oracle::random_matrix(12, rng);
  const RegisterDims dims{2, 3, 2};
  for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {}}) {
    CHECK(std::abs(partial_trace(m, dims, keep).trace() - oracle::trace(m)) <= 1e-12);
  }
}

TEST_CASE("partial trace errors") {
  const ComplexMatrix m(6);
  const std::size_t keep0[] = {0};
  const std::size_t bad[] = {2};
  CHECK_THROWS_AS(partial_trace(m, RegisterDims{2, 2}, keep0), DimensionError);
  CHECK_THROWS_AS(partial_trace(m, RegisterDims{2, 3}, bad), InvalidArgumentError);
}

TEST_CASE("permute registers: identity and swap") {
  CounterRng rng(31);
  const ComplexMatrix rho = oracle::random_matrix(2, rng), sigma = oracle::random_matrix(3, rng);
  const std::size_t id[] = {0, 1};
  const std::size_t swap[] = {1, 0};
  CHECK(permute_registers(kron(rho, sigma), RegisterDims{2, 3}, id) == kron(rho, sigma));
  CHECK(permute_registers(kron(rho, sigma), RegisterDims{2, 3}, swap) == kron(sigma, rho));
}

TEST_CASE("permute registers matches the relabel oracle on three registers") {
  CounterRng rng(32);
  const std::vector<std::size_t> dims{2, 3, 2};
  const ComplexMatrix m = oracle::random_matrix(12, rng);
  std::vector<std::size_t> perm{0, 1, 2};
  do {
    CHECK(permute_registers(m, RegisterDims(dims), perm) == oracle::relabel(m, dims, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("permute registers: involution, composition, spectrum") {
  CounterRng rng(33);
  const RegisterDims dims{2, 3, 2};
  const ComplexMatrix h = oracle::random_hermitian(12, rng);
  const std::size_t swap02[] = {2, 1, 0};
  CHECK(permute_registers(permute_registers(h, dims, swap02), RegisterDims{2, 3, 2}, swap02) == h);

  // Applying p then q equals applying the composite r[k] = p[q[k]].
  const std::size_t p[] = {1, 2, 0};
  const RegisterDims after_p{3, 2, 2};
  const std::size_t q[] = {2, 0, 1};
  const std::size_t r[] = {p[q[0]], p[q[1]], p[q[2]]};
  CHECK(permute_registers(permute_registers(h, dims, p), after_p, q) == permute_registers(h, dims, r));

  auto a = herm_eig(h).values, b = herm_eig(permute_registers(h, dims, p)).values;
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-9);
}

TEST_CASE("permute registers rejects non-bijections") {
  const ComplexMatrix m(4);
  const std::size_t repeated[] = {0, 0};
  const std::size_t out_of_range[] = {0, 2};
  const std::size_t short_perm[] = {0};
  CHECK_THROWS_AS(permute_registers(m, RegisterDims{2, 2}, repeated), InvalidArgumentError);
  CHECK_THROWS_AS(permute_registers(m, RegisterDims{2, 2}, out_of_range), InvalidArgumentError);
  CHECK_THROWS_AS(permute_registers(m, RegisterDims{2, 2}, short_perm), InvalidArgumentError);
  const std::size_t swap[] = {1, 0};
  CHECK_THROWS_AS(permute_registers(m, RegisterDims{2, 3}, swap), DimensionError);
}

TEST_CASE("herm_eig on a diagonal matrix") {
  const Complex diag[] = {3.0, 1.0, 2.0};
  const Eigensystem e = herm_eig(ComplexMatrix::diagonal(diag));
  REQUIRE(e.values.size() == 3);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.values[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.values[2] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("herm_eig on Pauli X") {
  ComplexMatrix x(2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const Eigensystem e = herm_eig(x);
  CHECK(std::abs(e.values[0] + 1.0) <= 1e-14);
  CHECK(std::abs(e.values[1] - 1.0) <= 1e-14);
  // Closed-form eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2 up to phase.
  CHECK(std::abs(std::abs(e.vectors(0, 1) * std::conj(e.vectors(1, 1))) - 0.5) <= 1e-14);
  CHECK(std::abs(e.vectors(0, 0) + e.vectors(1, 0)) <= 1e-14);
}

TEST_CASE("herm_eig reconstructs random hermitian matrices") {
  CounterRng rng(41);
  for (std::size_t dim : {1u, 2u, 6u, 17u}) {
    const ComplexMatrix h = oracle::random_hermitian(dim, rng);
    const Eigensystem e = herm_eig(h);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
    ComplexMatrix lambda(dim);
    for (std::size_t k = 0; k < dim; ++k) lambda(k, k) = e.values[k];
    const ComplexMatrix residual = oracle::matmul(h, e.vectors) - oracle::matmul(e.vectors, lambda);
    CHECK(residual.frobenius_norm() <= 1e-9 * static_cast<double>(dim) * h.frobenius_norm());
    CHECK(unitarity_defect(e.vectors) <= 1e-9);
  }
}

TEST_CASE("herm_eig handles degenerate spectra") {
  CounterRng rng(42);
  const ComplexMatrix u = haar_unitary(4, rng);
  const Complex diag[] = {1.0, 1.0, -2.0, -2.0};
  const ComplexMatrix h = u * ComplexMatrix::diagonal(diag) * u.adjoint();
  const Eigensystem e = herm_eig(0.5 * (h + h.adjoint()));
  CHECK(std::abs(e.values[0] + 2.0) <= 1e-12);
  CHECK(std::abs(e.values[3] - 1.0) <= 1e-12);
  CHECK(unitarity_defect(e.vectors) <= 1e-9);
}

TEST_CASE("herm_eig rejects non-hermitian input") {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(m), DomainError);
}

TEST_CASE("haar unitary in dimension one is a phase") {
  const ComplexMatrix u = haar_unitary(1, 5);
  CHECK(std::abs(std::abs(u(0, 0)) - 1.0) <= 1e-15);
}

TEST_CASE("haar unitary is deterministic per seed and unitary") {
  CHECK(haar_unitary(4, 99) == haar_unitary(4, 99));
  CHECK_FALSE(haar_unitary(4, 99) == haar_unitary(4, 100));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix u = haar_unitary(7, seed);
    CHECK(is_unitary(u, default_tolerance(7)));
  }
}

TEST_CASE("haar unitary second moment") {
  // E|u_00|^2 = 1/d for Haar measure.
  CounterRng rng(2024);
  double sum = 0.0;
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) sum += std::norm(haar_unitary(2, rng)(0, 0));
  CHECK(std::abs(sum / samples - 0.5) <= 0.02);
}

TEST_CASE("counter rng is deterministic and seed sensitive") {
  CounterRng a(7), b(7), c(8);
  for (int k = 0; k < 100; ++k) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }
  CounterRng u(3);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(u.below(5) < 5u);
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
}

TEST_CASE("structural predicates") {
  CHECK(is_hermitian(ComplexMatrix::identity(3), 1e-12));
  CHECK(is_psd(ComplexMatrix::identity(3), 1e-12));
  CHECK_FALSE(is_psd(-1.0 * ComplexMatrix::identity(3), 1e-12));
  CHECK(projector_defect(ComplexMatrix::unit(3, 1, 1)) == 0.0);
  ComplexMatrix not_unitary = ComplexMatrix::identity(2);
  not_unitary(0, 0) += 0.1;
  CHECK_FALSE(is_unitary(not_unitary, default_tolerance(2)));
  CHECK(default_tolerance(4) == doctest::Approx(4e-10));
}

TEST_CASE("block access round trips") {
  CounterRng rng(51);
  const ComplexMatrix m = oracle::random_matrix(6, rng);
  ComplexMatrix rebuilt(6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const ComplexMatrix b = m.block(i, j, 2);
      CHECK(b(1, 0) == m(2 * i + 1, 2 * j));
      rebuilt.set_block(i, j, b);
    }
  CHECK(rebuilt == m);
}
