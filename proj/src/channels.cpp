#include "uichan/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "uichan/errors.hpp"

namespace uichan {

MomentTable::MomentTable(std::size_t n, std::size_t m) : n_(n), m_(m) {
  std::size_t cell = 1;
  for (int k = 0; k < 8; ++k) cell *= n;
  cells_.assign(m * m, std::vector<Complex>(cell));
}

namespace {

void check_limit(std::size_t n, const ChannelOptions& opts) {
  if (n > opts.max_n) {
    throw LimitError("ancilla dimension n=" + std::to_string(n) + " exceeds the limit " +
                     std::to_string(opts.max_n) + " (raise it explicitly to continue)");
  }
}

template <class M>
void require_valid(const M& model, const ChannelOptions& opts) {
  model.check_shapes();
  check_limit(model.n, opts);
  if (!opts.validate) return;
  ModelReport report;
  if constexpr (std::is_same_v<M, TensorModel>) {
    report = validate_tensor(model);
  } else {
    report = validate_commuting(model);
  }
  if (!report.accepted()) {
    throw InvalidModelError(
        "model failed validation (unitarity defect " + std::to_string(report.max_unitarity_defect) +
        ", commutator defect " + std::to_string(report.max_commutator_defect) +
        ", state defect " + std::to_string(report.state_defect) + ")");
  }
}

// V is stored as sum_kl E_kl (x) v_kl; the dilation needs sum_kl v_kl (x) E_kl.
ComplexMatrix ancilla_last(const ComplexMatrix& v, std::size_t n, std::size_t d) {
  const std::size_t swap[] = {1, 0};
  return permute_registers(v, RegisterDims{n, d}, swap);
}

// Superoperator of rho -> Tr_env[W^dagger (rho (x) sigma) W] for W on
// (A', env, B') with ancilla dimension n and environment dimension e.
ComplexMatrix superoperator_from_dilation(const ComplexMatrix& w, const ComplexMatrix& sigma,
                                          std::size_t n, std::size_t e) {
  const std::size_t N = n * n;
  const std::size_t D = w.dim();
  auto idx = [&](std::size_t a, std::size_t h, std::size_t b) { return (a * e + h) * n + b; };

  ComplexMatrix superop(N * N);
  std::vector<Complex> z(e * D);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < n; ++p) {
      // z[h, c] = sum_h' sigma[h, h'] W[(i, h', p), c]
      std::fill(z.begin(), z.end(), Complex{});
      for (std::size_t h = 0; h < e; ++h)
        for (std::size_t hp = 0; hp < e; ++hp) {
          const Complex sv = sigma(h, hp);
          if (sv == Complex{}) continue;
          const std::size_t row = idx(i, hp, p);
          for (std::size_t c = 0; c < D; ++c) z[h * D + c] += sv * w(row, c);
        }
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t t = 0; t < n; ++t) {
          const std::size_t column = (l * n + t) * N + (i * n + p);
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r)
              for (std::size_t jp = 0; jp < n; ++jp)
                for (std::size_t rp = 0; rp < n; ++rp) {
                  Complex acc = 0.0;
                  for (std::size_t env = 0; env < e; ++env) {
                    const std::size_t out_col = idx(j, env, r);
                    const std::size_t in_col = idx(jp, env, rp);
                    for (std::size_t h = 0; h < e; ++h)
                      acc += std::conj(w(idx(l, h, t), out_col)) * z[h * D + in_col];
                  }
                  superop((j * n + r) * N + (jp * n + rp), column) = acc;
                }
        }
      }
    }
  }
  return superop;
}

}  // namespace

ComplexMatrix dilation_unitary(const TensorModel& model, std::size_t x, std::size_t y) {
  const std::size_t n = model.n;
  const ComplexMatrix u = kron(model.U.at(x), ComplexMatrix::identity(model.dB * n));
  const ComplexMatrix v = kron(ComplexMatrix::identity(n * model.dA),
                               ancilla_last(model.V.at(y), n, model.dB));
  return u * v;
}

ComplexMatrix dilation_unitary(const CommutingModel& model, std::size_t x, std::size_t y) {
  const std::size_t n = model.n;
  const ComplexMatrix u = kron(model.U.at(x), ComplexMatrix::identity(n));
  const ComplexMatrix v = kron(ComplexMatrix::identity(n), ancilla_last(model.V.at(y), n, model.d));
  return u * v;
}

ComplexMatrix apply_direct(const TensorModel& model, std::size_t x, std::size_t y,
                           const ComplexMatrix& rho) {
  model.check_shapes();
  const std::size_t n = model.n;
  if (rho.dim() != n * n) throw DimensionError("apply_direct: input must have dim n^2");
  // (A', B', H_A, H_B) -> (A', H_A, H_B, B')
  const std::size_t align[] = {0, 2, 3, 1};
  const ComplexMatrix joint = permute_registers(kron(rho, model.state.density()),
                                                RegisterDims{n, n, model.dA, model.dB}, align);
  const ComplexMatrix w = dilation_unitary(model, x, y);
  const std::size_t keep[] = {0, 3};
  return partial_trace(w.adjoint() * joint * w, RegisterDims{n, model.dA, model.dB, n}, keep);
}

ComplexMatrix apply_direct(const CommutingModel& model, std::size_t x, std::size_t y,
                           const ComplexMatrix& rho) {
  model.check_shapes();
  const std::size_t n = model.n;
  if (rho.dim() != n * n) throw DimensionError("apply_direct: input must have dim n^2");
  // (A', B', H) -> (A', H, B')
  const std::size_t align[] = {0, 2, 1};
  const ComplexMatrix joint =
      permute_registers(kron(rho, model.state.density()), RegisterDims{n, n, model.d}, align);
  const ComplexMatrix w = dilation_unitary(model, x, y);
  const std::size_t keep[] = {0, 2};
  return partial_trace(w.adjoint() * joint * w, RegisterDims{n, model.d, n}, keep);
}

ChannelFamily channel_direct(const TensorModel& model, const ChannelOptions& opts) {
  require_valid(model, opts);
  ChannelFamily out{model.n, model.m, {}};
  const ComplexMatrix sigma = model.state.density();
  for (std::size_t x = 0; x < model.m; ++x)
    for (std::size_t y = 0; y < model.m; ++y)
      out.super.push_back(superoperator_from_dilation(dilation_unitary(model, x, y), sigma,
                                                      model.n, model.dA * model.dB));
  return out;
}

ChannelFamily channel_direct(const CommutingModel& model, const ChannelOptions& opts) {
  require_valid(model, opts);
  ChannelFamily out{model.n, model.m, {}};
  const ComplexMatrix sigma = model.state.density();
  for (std::size_t x = 0; x < model.m; ++x)
    for (std::size_t y = 0; y < model.m; ++y)
      out.super.push_back(
          superoperator_from_dilation(dilation_unitary(model, x, y), sigma, model.n, model.d));
  return out;
}

ChannelFamily channel_direct(const Model& model, const ChannelOptions& opts) {
  return std::visit([&](const auto& m) { return channel_direct(m, opts); }, model);
}

namespace {

// Products a_ij a_lk^dagger for every (i, j, l, k), row-major in that order.
std::vector<ComplexMatrix> block_products(const ComplexMatrix& w, std::size_t n, std::size_t d) {
  std::vector<ComplexMatrix> blocks, adj;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      blocks.push_back(w.block(i, j, d));
      adj.push_back(blocks.back().adjoint());
    }
  std::vector<ComplexMatrix> out;
  out.reserve(n * n * n * n);
  for (std::size_t ij = 0; ij < n * n; ++ij)
    for (std::size_t lk = 0; lk < n * n; ++lk) out.push_back(blocks[ij] * adj[lk]);
  return out;
}

}  // namespace

MomentTable moment_table(const TensorModel& model, const ChannelOptions& opts) {
  require_valid(model, opts);
  const std::size_t n = model.n;
  const std::size_t dA = model.dA;
  const std::size_t dB = model.dB;
  const std::size_t n4 = n * n * n * n;
  const ComplexMatrix sigma = model.state.density();
  MomentTable table(n, model.m);

  for (std::size_t x = 0; x < model.m; ++x) {
    // reduced[a][b', b] = sum_{alpha, alpha'} sigma[(alpha' b'), (alpha b)] A_a[alpha, alpha']
    const auto alice = block_products(model.U[x], n, dA);
    std::vector<ComplexMatrix> reduced(n4, ComplexMatrix(dB));
    for (std::size_t a = 0; a < n4; ++a)
      for (std::size_t al = 0; al < dA; ++al)
        for (std::size_t alp = 0; alp < dA; ++alp) {
          const Complex av = alice[a](al, alp);
          if (av == Complex{}) continue;
          for (std::size_t bp = 0; bp < dB; ++bp)
            for (std::size_t b = 0; b < dB; ++b)
              reduced[a](bp, b) += sigma(alp * dB + bp, al * dB + b) * av;
        }

    for (std::size_t y = 0; y < model.m; ++y) {
      const auto bob = block_products(model.V[y], n, dB);
      auto& cell = table.cell(x, y);
      for (std::size_t a = 0; a < n4; ++a)
        for (std::size_t b = 0; b < n4; ++b) {
          Complex s = 0.0;
          for (std::size_t bp = 0; bp < dB; ++bp)
            for (std::size_t bb = 0; bb < dB; ++bb) s += reduced[a](bp, bb) * bob[b](bb, bp);
          cell[a * n4 + b] = s;
        }
    }
  }
  return table;
}

MomentTable moment_table(const CommutingModel& model, const ChannelOptions& opts) {
  require_valid(model, opts);
  const std::size_t n = model.n;
  const std::size_t d = model.d;
  const std::size_t n4 = n * n * n * n;
  const ComplexMatrix sigma = model.state.density();
  MomentTable table(n, model.m);

  for (std::size_t x = 0; x < model.m; ++x) {
    auto alice = block_products(model.U[x], n, d);
    for (auto& a : alice) a = sigma * a;
    for (std::size_t y = 0; y < model.m; ++y) {
      const auto bob = block_products(model.V[y], n, d);
      auto& cell = table.cell(x, y);
      for (std::size_t a = 0; a < n4; ++a)
        for (std::size_t b = 0; b < n4; ++b) {
          // Tr(sigma A B)
          Complex s = 0.0;
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) s += alice[a](i, j) * bob[b](j, i);
          cell[a * n4 + b] = s;
        }
    }
  }
  return table;
}

MomentTable moment_table(const Model& model, const ChannelOptions& opts) {
  return std::visit([&](const auto& m) { return moment_table(m, opts); }, model);
}

double conjugate_symmetry_defect(const MomentTable& table) {
  const std::size_t n = table.n();
  double worst = 0.0;
  for (std::size_t x = 0; x < table.m(); ++x)
    for (std::size_t y = 0; y < table.m(); ++y)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
              for (std::size_t p = 0; p < n; ++p)
                for (std::size_t r = 0; r < n; ++r)
                  for (std::size_t t = 0; t < n; ++t)
                    for (std::size_t s = 0; s < n; ++s)
                      worst = std::max(worst, std::abs(table(x, y, i, j, l, k, p, r, t, s) -
                                                       std::conj(table(x, y, l, k, i, j, t, s, p, r))));
  return worst;
}

ChannelFamily channel_from_moments(const MomentTable& table) {
  const double asym = conjugate_symmetry_defect(table);
  if (asym > 1e-6) {
    throw InconsistentError("moment table is not conjugate symmetric (defect " +
                            std::to_string(asym) + ")");
  }
  const std::size_t n = table.n();
  const std::size_t N = n * n;
  ChannelFamily out{n, table.m(), {}};
  for (std::size_t x = 0; x < table.m(); ++x)
    for (std::size_t y = 0; y < table.m(); ++y) {
      ComplexMatrix superop(N * N);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
              for (std::size_t p = 0; p < n; ++p)
                for (std::size_t r = 0; r < n; ++r)
                  for (std::size_t t = 0; t < n; ++t)
                    for (std::size_t s = 0; s < n; ++s)
                      superop((k * n + s) * N + (j * n + r), (l * n + t) * N + (i * n + p)) =
                          table(x, y, i, j, l, k, p, r, t, s);
      out.super.push_back(std::move(superop));
    }
  return out;
}

MomentTable moments_from_channel(const ChannelFamily& channel) {
  const std::size_t n = channel.n;
  const std::size_t N = n * n;
  if (channel.super.size() != channel.m * channel.m)
    throw DimensionError("channel family: expected m^2 superoperators");
  for (const auto& s : channel.super)
    if (s.dim() != N * N) throw DimensionError("channel family: superoperators must have dim n^4");
  MomentTable table(n, channel.m);
  for (std::size_t x = 0; x < channel.m; ++x)
    for (std::size_t y = 0; y < channel.m; ++y) {
      const auto& superop = channel.at(x, y);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
              for (std::size_t p = 0; p < n; ++p)
                for (std::size_t r = 0; r < n; ++r)
                  for (std::size_t t = 0; t < n; ++t)
                    for (std::size_t s = 0; s < n; ++s)
                      table(x, y, i, j, l, k, p, r, t, s) =
                          superop((k * n + s) * N + (j * n + r), (l * n + t) * N + (i * n + p));
    }
  return table;
}

std::vector<Complex> bob_marginal_moments(const MomentTable& table, std::size_t x,
                                          std::size_t y) {
  const std::size_t n = table.n();
  std::vector<Complex> out(n * n * n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < n; ++s) {
          Complex acc = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc += table(x, y, i, j, i, j, p, r, t, s);
          out[((p * n + r) * n + t) * n + s] = acc / static_cast<double>(n);
        }
  return out;
}

std::vector<Complex> alice_marginal_moments(const MomentTable& table, std::size_t x,
                                            std::size_t y) {
  const std::size_t n = table.n();
  std::vector<Complex> out(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
          Complex acc = 0.0;
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t r = 0; r < n; ++r) acc += table(x, y, i, j, l, k, p, r, p, r);
          out[((i * n + j) * n + l) * n + k] = acc / static_cast<double>(n);
        }
  return out;
}

ContractionDefects contraction_defects(const MomentTable& table) {
  const std::size_t n = table.n();
  ContractionDefects out;
  for (std::size_t x = 0; x < table.m(); ++x)
    for (std::size_t y = 0; y < table.m(); ++y) {
      const auto bob = bob_marginal_moments(table, x, y);
      const auto alice = alice_marginal_moments(table, x, y);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            for (std::size_t e = 0; e < n; ++e) {
              const std::size_t q = ((a * n + b) * n + c) * n + e;
              for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l) {
                  // u legs contracted, v legs (a, b, c, e) free
                  Complex su = 0.0;
                  for (std::size_t j = 0; j < n; ++j) su += table(x, y, i, j, l, j, a, b, c, e);
                  const Complex eu = (i == l) ? bob[q] : Complex{};
                  out.u_legs = std::max(out.u_legs, std::abs(su - eu));
                  // v legs contracted, u legs (a, b, c, e) free
                  Complex sv = 0.0;
                  for (std::size_t r = 0; r < n; ++r) sv += table(x, y, a, b, c, e, i, r, l, r);
                  const Complex ev = (i == l) ? alice[q] : Complex{};
                  out.v_legs = std::max(out.v_legs, std::abs(sv - ev));
                }
            }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t t = 0; t < n; ++t) {
              Complex s = 0.0;
              for (std::size_t j = 0; j < n; ++j)
                for (std::size_t r = 0; r < n; ++r) s += table(x, y, i, j, l, j, p, r, t, r);
              const double expected = (i == l && p == t) ? 1.0 : 0.0;
              out.both_legs = std::max(out.both_legs, std::abs(s - expected));
            }
    }
  return out;
}

ComplexMatrix choi(const ComplexMatrix& superop, std::size_t n) {
  const std::size_t N = n * n;
  if (superop.dim() != N * N) throw DimensionError("choi: superoperator must have dim n^4");
  ComplexMatrix j(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t d = 0; d < N; ++d) j(a * N + c, b * N + d) = superop(c * N + d, a * N + b);
  return j;
}

std::vector<ComplexMatrix> choi(const ChannelFamily& channel) {
  std::vector<ComplexMatrix> out;
  for (const auto& s : channel.super) out.push_back(choi(s, channel.n));
  return out;
}

CptpReport cptp_report(const ChannelFamily& channel) {
  const std::size_t N = channel.n * channel.n;
  CptpReport r;
  r.min_choi_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& superop : channel.super) {
    const ComplexMatrix j = choi(superop, channel.n);
    r.hermiticity_preservation_defect =
        std::max(r.hermiticity_preservation_defect, hermiticity_defect(j));
    r.min_choi_eigenvalue =
        std::min(r.min_choi_eigenvalue, min_eigenvalue(0.5 * (j + j.adjoint())));
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        Complex tr = 0.0;
        for (std::size_t c = 0; c < N; ++c) tr += superop(c * N + c, a * N + b);
        r.trace_preservation_defect =
            std::max(r.trace_preservation_defect, std::abs(tr - (a == b ? 1.0 : 0.0)));
      }
  }
  if (channel.super.empty()) r.min_choi_eigenvalue = 0.0;
  r.completely_positive = r.min_choi_eigenvalue >= -1e-9 && r.hermiticity_preservation_defect <= 1e-9;
  r.trace_preserving = r.trace_preservation_defect <= 1e-10;
  return r;
}

ComplexMatrix apply(const ComplexMatrix& superop, const ComplexMatrix& rho) {
  const std::size_t N = rho.dim();
  if (superop.dim() != N * N) throw DimensionError("apply: superoperator/state dimension mismatch");
  const auto out = superop * rho.entries();
  return ComplexMatrix(N, out);
}

std::vector<ComplexMatrix> apply(const ChannelFamily& channel, const ComplexMatrix& rho) {
  const std::size_t N = channel.n * channel.n;
  if (rho.dim() != N) throw DimensionError("apply: input must have dim n^2");
  const double tol = default_tolerance(N);
  if (hermiticity_defect(rho) > tol || std::abs(rho.trace() - 1.0) > tol ||
      min_eigenvalue(0.5 * (rho + rho.adjoint())) < -tol) {
    throw DomainError("apply: input is not a density matrix");
  }
  std::vector<ComplexMatrix> out;
  for (const auto& s : channel.super) out.push_back(apply(s, rho));
  return out;
}

double max_abs_diff(const ChannelFamily& a, const ChannelFamily& b) {
  if (a.n != b.n || a.m != b.m || a.super.size() != b.super.size())
    throw DimensionError("channel families have different shapes");
  double worst = 0.0;
  for (std::size_t c = 0; c < a.super.size(); ++c)
    worst = std::max(worst, max_abs_diff(a.super[c], b.super[c]));
  return worst;
}

double max_abs_diff(const MomentTable& a, const MomentTable& b) {
  if (a.n() != b.n() || a.m() != b.m()) throw DimensionError("moment tables have different shapes");
  double worst = 0.0;
  for (std::size_t x = 0; x < a.m(); ++x)
    for (std::size_t y = 0; y < a.m(); ++y) {
      const auto& ca = a.cell(x, y);
      const auto& cb = b.cell(x, y);
      for (std::size_t k = 0; k < ca.size(); ++k) worst = std::max(worst, std::abs(ca[k] - cb[k]));
    }
  return worst;
}

}  // namespace uichan
