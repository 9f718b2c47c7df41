#include "uichan/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uichan/errors.hpp"

namespace uichan {

FourierCoeffs::FourierCoeffs(std::size_t n) : n_(n), c_(n * n) {
  if (n == 0) throw InvalidArgumentError("fourier_coeffs: n must be positive");
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t ap = 1; ap <= n; ++ap) {
      // Reduce the exponent mod n first so the phase is computed exactly for
      // the common small cases.
      const double k = static_cast<double>((a * ap) % n);
      c_[(a - 1) * n + (ap - 1)] =
          std::polar(1.0 / static_cast<double>(n), -2.0 * std::numbers::pi * k / static_cast<double>(n));
    }
}

FourierCoeffs fourier_coeffs(std::size_t n) { return FourierCoeffs(n); }

BehaviourDefects behaviour_defects(const Behaviour& p) {
  BehaviourDefects d;
  d.min_entry = p.values().empty() ? 0.0 : *std::min_element(p.values().begin(), p.values().end());
  for (std::size_t x = 0; x < p.m(); ++x)
    for (std::size_t y = 0; y < p.m(); ++y) {
      double s = 0.0;
      for (std::size_t a = 0; a < p.n(); ++a)
        for (std::size_t b = 0; b < p.n(); ++b) s += p(a, b, x, y);
      d.max_normalization_defect = std::max(d.max_normalization_defect, std::abs(s - 1.0));
    }
  return d;
}

std::vector<std::vector<ComplexMatrix>> unitaries_from_pvm(const PVMFamily& family) {
  if (family.projectors.empty()) throw InvalidArgumentError("unitaries_from_pvm: empty family");
  if (pvm_defect(family) > default_tolerance(family.dim)) {
    throw DomainError("unitaries_from_pvm: input is not a projection-valued measure");
  }
  const std::size_t n = family.outcomes;
  std::vector<std::vector<ComplexMatrix>> out;
  for (const auto& setting : family.projectors) {
    std::vector<ComplexMatrix> us;
    for (std::size_t ap = 1; ap <= n; ++ap) {
      ComplexMatrix u(family.dim);
      for (std::size_t a = 1; a <= n; ++a) {
        const double k = static_cast<double>((a * ap) % n);
        u += std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(n)) * setting[a - 1];
      }
      us.push_back(std::move(u));
    }
    out.push_back(std::move(us));
  }
  return out;
}

std::vector<ComplexMatrix> projectors_from_unitaries(const std::vector<ComplexMatrix>& unitaries) {
  const std::size_t n = unitaries.size();
  if (n == 0) throw InvalidArgumentError("projectors_from_unitaries: empty input");
  const FourierCoeffs c(n);
  std::vector<ComplexMatrix> out;
  for (std::size_t a = 0; a < n; ++a) {
    ComplexMatrix p(unitaries.front().dim());
    for (std::size_t ap = 0; ap < n; ++ap) p += c(a, ap) * unitaries[ap];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ComplexMatrix> sub_povm(const ComplexMatrix& block_unitary, std::size_t n,
                                    std::size_t d) {
  if (block_unitary.dim() != n * d) throw DimensionError("sub_povm: expected dim n*d");
  const FourierCoeffs c(n);
  std::vector<ComplexMatrix> diag;
  for (std::size_t j = 0; j < n; ++j) diag.push_back(block_unitary.block(j, j, d));
  std::vector<ComplexMatrix> out;
  for (std::size_t a = 0; a < n; ++a) {
    ComplexMatrix g(d);
    for (std::size_t j = 0; j < n; ++j) g += c(a, j) * diag[j];
    out.push_back(g * g.adjoint());
  }
  return out;
}

BehaviourExtraction extract_behaviour(const ChannelFamily& channel) {
  const MomentTable table = moments_from_channel(channel);
  const std::size_t n = table.n();
  const std::size_t m = table.m();
  const std::size_t last = n - 1;
  const FourierCoeffs c(n);

  BehaviourExtraction out{Behaviour(n, m), std::vector<Complex>(n * n * m * m), 0.0, 0.0};
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const auto alice_m = alice_marginal_moments(table, x, y);
      const auto bob_m = bob_marginal_moments(table, x, y);

      // weight[a][(j,k)] = c[a][j] conj(c[a][k])
      std::vector<Complex> weight(n * n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) weight[(a * n + j) * n + k] = c(a, j) * std::conj(c(a, k));

      std::vector<Complex> q(n * n), alice(n), bob(n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) {
            const Complex w = weight[(a * n + j) * n + k];
            alice[a] += w * alice_m[((j * n + j) * n + k) * n + k];
            bob[a] += w * bob_m[((j * n + j) * n + k) * n + k];
          }
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          Complex s = 0.0;
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
              const Complex wa = weight[(a * n + j) * n + k];
              for (std::size_t r = 0; r < n; ++r)
                for (std::size_t t = 0; t < n; ++t)
                  s += wa * weight[(b * n + r) * n + t] * table(x, y, j, j, k, k, r, r, t, t);
            }
          q[a * n + b] = s;
        }

      // Completed effects: M-hat_a = M_a for a < last, M-hat_last = 1 - sum_{a<last} M_a.
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          Complex p;
          if (a < last && b < last) {
            p = q[a * n + b];
          } else if (a == last && b < last) {
            p = bob[b];
            for (std::size_t a2 = 0; a2 < last; ++a2) p -= q[a2 * n + b];
          } else if (a < last && b == last) {
            p = alice[a];
            for (std::size_t b2 = 0; b2 < last; ++b2) p -= q[a * n + b2];
          } else {
            p = 1.0;
            for (std::size_t a2 = 0; a2 < last; ++a2) p -= alice[a2];
            for (std::size_t b2 = 0; b2 < last; ++b2) p -= bob[b2];
            for (std::size_t a2 = 0; a2 < last; ++a2)
              for (std::size_t b2 = 0; b2 < last; ++b2) p += q[a2 * n + b2];
          }
          const std::size_t flat = ((a * n + b) * m + x) * m + y;
          out.raw[flat] = q[a * n + b];
          out.behaviour(a, b, x, y) = p.real();
          out.max_imaginary_residue =
              std::max({out.max_imaginary_residue, std::abs(p.imag()), std::abs(q[a * n + b].imag())});
          out.max_completion_shift =
              std::max(out.max_completion_shift, std::abs(p.real() - q[a * n + b].real()));
        }
    }

  if (out.max_imaginary_residue > 1e-9) {
    throw InconsistentError("channel does not yield a real behaviour (imaginary residue " +
                            std::to_string(out.max_imaginary_residue) + ")");
  }
  return out;
}

Behaviour behaviour_from_channel(const ChannelFamily& channel) {
  return extract_behaviour(channel).behaviour;
}

Behaviour behaviour_direct(const PVMFamily& alice, const PVMFamily& bob, const State& state) {
  if (alice.outcomes != bob.outcomes || alice.settings != bob.settings)
    throw DimensionError("behaviour_direct: parties disagree on outcomes or settings");
  if (state.dim() != alice.dim * bob.dim)
    throw DimensionError("behaviour_direct: state dimension must be dA*dB");
  const std::size_t n = alice.outcomes;
  const std::size_t m = alice.settings;
  Behaviour p(n, m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          p(a, b, x, y) = state.expectation(kron(alice(x, a), bob(y, b))).real();
  return p;
}

double bell_value(const Behaviour& p, const BellFunctional& f) {
  if (p.n() != f.n() || p.m() != f.m())
    throw DimensionError("bell_value: behaviour and functional shapes differ");
  double s = 0.0;
  for (std::size_t k = 0; k < p.values().size(); ++k) s += p.values()[k] * f.values()[k];
  return s;
}

Complex lastcond_contraction(const ChannelFamily& channel, std::size_t a, std::size_t b,
                             std::size_t x, std::size_t y) {
  const std::size_t n = channel.n;
  if (a >= n || b >= n || x >= channel.m || y >= channel.m)
    throw InvalidArgumentError("lastcond_contraction: index out of range");
  const std::size_t N = n * n;
  const FourierCoeffs c(n);
  const auto& superop = channel.at(x, y);
  if (superop.dim() != N * N) throw DimensionError("lastcond_contraction: superoperator must have dim n^4");
  Complex s = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t ss = 0; ss < n; ++ss)
        for (std::size_t r = 0; r < n; ++r) {
          // Input E_kj (x) E_sr is the matrix unit at ((k,s), (j,r)); the
          // requested output entry sits at the same position.
          const std::size_t flat = (k * n + ss) * N + (j * n + r);
          s += c(a, j) * std::conj(c(a, k)) * c(b, r) * std::conj(c(b, ss)) * superop(flat, flat);
        }
  return s;
}

BellFunctional chsh_functional() {
  BellFunctional f(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) f(a, b, x, y) = ((a ^ b) == (x & y)) ? 0.25 : 0.0;
  return f;
}

double max_abs_diff(const OutcomeTable& a, const OutcomeTable& b) {
  if (a.n() != b.n() || a.m() != b.m()) throw DimensionError("outcome tables have different shapes");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k)
    worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
  return worst;
}

}  // namespace uichan
