#include "uichan/uichan.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "uichan/audit.hpp"
#include "uichan/errors.hpp"
#include "uichan/io.hpp"

struct uichan_model {
  uichan::Model value;
};
struct uichan_channel {
  uichan::ChannelFamily value;
};
struct uichan_table {
  uichan::OutcomeTable value;
};
struct uichan_strategy {
  uichan::Strategy value;
};
struct uichan_seesaw_result {
  uichan::SeesawResult value;
};

namespace {

thread_local std::string last_error;

uichan_status code_of(uichan::ErrorCode code) {
  switch (code) {
    case uichan::ErrorCode::InvalidArgument: return UICHAN_INVALID_ARGUMENT;
    case uichan::ErrorCode::DimensionMismatch: return UICHAN_DIMENSION_MISMATCH;
    case uichan::ErrorCode::Parse: return UICHAN_PARSE;
    case uichan::ErrorCode::Domain: return UICHAN_DOMAIN;
    case uichan::ErrorCode::InvalidModel: return UICHAN_INVALID_MODEL;
    case uichan::ErrorCode::Inconsistent: return UICHAN_INCONSISTENT;
    case uichan::ErrorCode::Limit: return UICHAN_LIMIT;
  }
  return UICHAN_INTERNAL;
}

template <class F>
uichan_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return UICHAN_OK;
  } catch (const uichan::Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return UICHAN_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return UICHAN_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return UICHAN_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw uichan::InvalidArgumentError(std::string("null argument: ") + what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* dump(const uichan::Json& j, int indent) { return dup_string(j.dump(indent < 0 ? -1 : indent)); }

template <class Table>
Table as(const uichan::OutcomeTable& t) {
  Table out(t.n(), t.m());
  for (std::size_t a = 0; a < t.n(); ++a)
    for (std::size_t b = 0; b < t.n(); ++b)
      for (std::size_t x = 0; x < t.m(); ++x)
        for (std::size_t y = 0; y < t.m(); ++y) out(a, b, x, y) = t(a, b, x, y);
  return out;
}

uichan::ChannelOptions options(std::size_t max_n) {
  uichan::ChannelOptions opts;
  if (max_n > 0) opts.max_n = max_n;
  return opts;
}

const char* check_status(const uichan::CheckResult& c) {
  if (c.skipped) return "SKIPPED";
  return c.pass ? "PASS" : "FAIL";
}

}  // namespace

extern "C" {

const char* uichan_version(void) { return "0.1.0"; }

const char* uichan_status_string(uichan_status status) {
  switch (status) {
    case UICHAN_OK: return "ok";
    case UICHAN_INVALID_ARGUMENT: return "invalid argument";
    case UICHAN_DIMENSION_MISMATCH: return "dimension mismatch";
    case UICHAN_PARSE: return "parse error";
    case UICHAN_DOMAIN: return "domain error";
    case UICHAN_INVALID_MODEL: return "invalid model";
    case UICHAN_INCONSISTENT: return "inconsistent";
    case UICHAN_LIMIT: return "size limit exceeded";
    case UICHAN_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* uichan_last_error(void) { return last_error.c_str(); }

void uichan_string_free(char* s) { std::free(s); }

uichan_status uichan_model_generate(uichan_model_kind kind, size_t n, size_t m, size_t dA,
                                    size_t dB, uichan_state_kind state, uint64_t seed,
                                    uichan_model** out) {
  return guard([&] {
    require(out, "out");
    if (kind != UICHAN_TENSOR && kind != UICHAN_COMMUTING)
      throw uichan::InvalidArgumentError("unknown model kind");
    if (state != UICHAN_STATE_VECTOR && state != UICHAN_STATE_DENSITY)
      throw uichan::InvalidArgumentError("unknown state kind");
    uichan::RandomModelSpec spec;
    spec.kind = kind == UICHAN_TENSOR ? uichan::ModelKind::Tensor : uichan::ModelKind::Commuting;
    spec.n = n;
    spec.m = m;
    spec.dA = dA;
    spec.dB = dB;
    spec.state = state == UICHAN_STATE_VECTOR ? uichan::StateKind::Vector : uichan::StateKind::Density;
    spec.seed = seed;
    *out = new uichan_model{uichan::random_model(spec)};
  });
}

uichan_status uichan_model_parse(const char* json, uichan_model** out) {
  return guard([&] {
    require(json && out, "json/out");
    *out = new uichan_model{uichan::model_from_json(uichan::parse_json(json))};
  });
}

uichan_status uichan_model_to_json(const uichan_model* model, int indent, char** out) {
  return guard([&] {
    require(model && out, "model/out");
    *out = dump(uichan::to_json(model->value), indent);
  });
}

uichan_status uichan_model_shape(const uichan_model* model, size_t* n, size_t* m) {
  return guard([&] {
    require(model && n && m, "model/n/m");
    std::visit([&](const auto& v) { *n = v.n; *m = v.m; }, model->value);
  });
}

uichan_status uichan_model_verify(const uichan_model* model, double tolerance, size_t max_n,
                                  int indent, char** report, int* all_pass) {
  return guard([&] {
    require(model && report && all_pass, "model/report/all_pass");
    const uichan::VerifyReport r = uichan::verify_model(model->value, tolerance, options(max_n));
    uichan::Json checks = uichan::Json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name},
                        {"defect", c.defect},
                        {"threshold", c.threshold},
                        {"status", check_status(c)}});
    *report = dump({{"pass", r.pass()}, {"checks", checks}}, indent);
    *all_pass = r.pass() ? 1 : 0;
  });
}

void uichan_model_free(uichan_model* model) { delete model; }

uichan_status uichan_channel_compute(const uichan_model* model, uichan_method method,
                                     double tolerance, size_t max_n, uichan_channel** out) {
  return guard([&] {
    require(model && out, "model/out");
    if (method != UICHAN_METHOD_DIRECT && method != UICHAN_METHOD_MOMENTS)
      throw uichan::InvalidArgumentError("unknown channel method");
    const uichan::ModelReport report = uichan::validate(model->value, tolerance);
    if (!report.accepted())
      throw uichan::InvalidModelError("model fails validation (unitarity defect " +
                                      std::to_string(report.max_unitarity_defect) +
                                      ", commutator defect " +
                                      std::to_string(report.max_commutator_defect) +
                                      ", state defect " + std::to_string(report.state_defect) + ")");
    uichan::ChannelOptions opts = options(max_n);
    opts.validate = false;
    if (method == UICHAN_METHOD_DIRECT) {
      *out = new uichan_channel{uichan::channel_direct(model->value, opts)};
    } else {
      *out = new uichan_channel{uichan::channel_from_moments(uichan::moment_table(model->value, opts))};
    }
  });
}

uichan_status uichan_channel_parse(const char* json, uichan_channel** out) {
  return guard([&] {
    require(json && out, "json/out");
    *out = new uichan_channel{uichan::channel_from_json(uichan::parse_json(json))};
  });
}

uichan_status uichan_channel_to_json(const uichan_channel* channel, int indent, char** out) {
  return guard([&] {
    require(channel && out, "channel/out");
    *out = dump(uichan::to_json(channel->value), indent);
  });
}

uichan_status uichan_channel_shape(const uichan_channel* channel, size_t* n, size_t* m) {
  return guard([&] {
    require(channel && n && m, "channel/n/m");
    *n = channel->value.n;
    *m = channel->value.m;
  });
}

uichan_status uichan_channel_audit(const uichan_channel* channel, int indent, char** report,
                                   int* pass) {
  return guard([&] {
    require(channel && report && pass, "channel/report/pass");
    const uichan::CptpReport r = uichan::cptp_report(channel->value);
    *report = dump(uichan::to_json(r), indent);
    *pass = r.ok() ? 1 : 0;
  });
}

uichan_status uichan_channel_apply(const uichan_channel* channel, size_t x, size_t y, size_t dim,
                                   const double* rho_re, const double* rho_im, double* out_re,
                                   double* out_im) {
  return guard([&] {
    require(channel && rho_re && rho_im && out_re && out_im, "channel/rho/out");
    const auto& c = channel->value;
    if (x >= c.m || y >= c.m) throw uichan::InvalidArgumentError("setting index out of range");
    if (dim != c.n * c.n) throw uichan::DimensionError("input state must have dim n^2");
    uichan::ComplexMatrix rho(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) rho(i, j) = {rho_re[i * dim + j], rho_im[i * dim + j]};
    if (!uichan::is_psd(rho, uichan::default_tolerance(dim)) ||
        std::abs(rho.trace() - 1.0) > uichan::default_tolerance(dim))
      throw uichan::DomainError("input is not a density matrix");
    const uichan::ComplexMatrix res = uichan::apply(c.at(x, y), rho);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        out_re[i * dim + j] = res(i, j).real();
        out_im[i * dim + j] = res(i, j).imag();
      }
  });
}

uichan_status uichan_lastcond(const uichan_channel* channel, size_t a, size_t b, size_t x,
                              size_t y, double* re, double* im) {
  return guard([&] {
    require(channel && re && im, "channel/re/im");
    const uichan::Complex v = uichan::lastcond_contraction(channel->value, a, b, x, y);
    *re = v.real();
    *im = v.imag();
  });
}

void uichan_channel_free(uichan_channel* channel) { delete channel; }

uichan_status uichan_table_parse(const char* json, uichan_table** out) {
  return guard([&] {
    require(json && out, "json/out");
    *out = new uichan_table{uichan::behaviour_from_json(uichan::parse_json(json))};
  });
}

uichan_status uichan_functional_preset(const char* name, uichan_table** out) {
  return guard([&] {
    require(name && out, "name/out");
    if (std::string(name) != "chsh") throw uichan::InvalidArgumentError("unknown preset: " + std::string(name));
    *out = new uichan_table{uichan::chsh_functional()};
  });
}

uichan_status uichan_table_to_json(const uichan_table* table, int indent, char** out) {
  return guard([&] {
    require(table && out, "table/out");
    *out = dump(uichan::to_json(table->value), indent);
  });
}

uichan_status uichan_table_to_csv(const uichan_table* table, char** out) {
  return guard([&] {
    require(table && out, "table/out");
    *out = dup_string(uichan::to_csv(table->value));
  });
}

uichan_status uichan_table_shape(const uichan_table* table, size_t* n, size_t* m) {
  return guard([&] {
    require(table && n && m, "table/n/m");
    *n = table->value.n();
    *m = table->value.m();
  });
}

uichan_status uichan_table_get(const uichan_table* table, size_t a, size_t b, size_t x, size_t y,
                               double* value) {
  return guard([&] {
    require(table && value, "table/value");
    const auto& t = table->value;
    if (a >= t.n() || b >= t.n() || x >= t.m() || y >= t.m())
      throw uichan::InvalidArgumentError("table index out of range");
    *value = t(a, b, x, y);
  });
}

uichan_status uichan_behaviour_from_channel(const uichan_channel* channel, uichan_table** out) {
  return guard([&] {
    require(channel && out, "channel/out");
    *out = new uichan_table{uichan::behaviour_from_channel(channel->value)};
  });
}

uichan_status uichan_extraction_report(const uichan_channel* channel, int indent, char** report) {
  return guard([&] {
    require(channel && report, "channel/report");
    const uichan::BehaviourExtraction e = uichan::extract_behaviour(channel->value);
    const uichan::BehaviourDefects d = uichan::behaviour_defects(e.behaviour);
    *report = dump({{"min_entry", d.min_entry},
                    {"max_normalization_defect", d.max_normalization_defect},
                    {"max_completion_shift", e.max_completion_shift},
                    {"max_imaginary_residue", e.max_imaginary_residue}},
                   indent);
  });
}

uichan_status uichan_behaviour_direct(const uichan_strategy* strategy, uichan_table** out) {
  return guard([&] {
    require(strategy && out, "strategy/out");
    const auto& s = strategy->value;
    *out = new uichan_table{uichan::behaviour_direct(s.alice, s.bob, s.state)};
  });
}

uichan_status uichan_bell_value(const uichan_table* behaviour, const uichan_table* functional,
                                double* value) {
  return guard([&] {
    require(behaviour && functional && value, "behaviour/functional/value");
    *value = uichan::bell_value(as<uichan::Behaviour>(behaviour->value),
                                as<uichan::BellFunctional>(functional->value));
  });
}

void uichan_table_free(uichan_table* table) { delete table; }

uichan_status uichan_strategy_random(size_t n, size_t m, size_t dA, size_t dB, uint64_t seed,
                                     uichan_strategy** out) {
  return guard([&] {
    require(out, "out");
    if (n == 0 || m == 0 || dA == 0 || dB == 0)
      throw uichan::InvalidArgumentError("strategy sizes must be positive");
    *out = new uichan_strategy{uichan::random_strategy(n, m, dA, dB, seed)};
  });
}

uichan_status uichan_strategy_chsh_optimal(uichan_strategy** out) {
  return guard([&] {
    require(out, "out");
    *out = new uichan_strategy{uichan::chsh_optimal_strategy()};
  });
}

uichan_status uichan_strategy_parse(const char* json, uichan_strategy** out) {
  return guard([&] {
    require(json && out, "json/out");
    *out = new uichan_strategy{uichan::strategy_from_json(uichan::parse_json(json))};
  });
}

uichan_status uichan_strategy_to_json(const uichan_strategy* strategy, int indent, char** out) {
  return guard([&] {
    require(strategy && out, "strategy/out");
    *out = dump(uichan::to_json(strategy->value), indent);
  });
}

void uichan_strategy_free(uichan_strategy* strategy) { delete strategy; }

void uichan_seesaw_config_default(uichan_seesaw_config* cfg) {
  if (!cfg) return;
  const uichan::SeesawConfig d;
  cfg->dA = d.dA;
  cfg->dB = d.dB;
  cfg->max_iters = d.max_iters;
  cfg->rel_tol = d.rel_tol;
  cfg->restarts = d.restarts;
  cfg->seed = d.seed;
  cfg->allow_heuristic = d.allow_heuristic ? 1 : 0;
}

uichan_status uichan_seesaw_run(const uichan_table* functional, const uichan_seesaw_config* cfg,
                                uichan_seesaw_result** out) {
  return guard([&] {
    require(functional && cfg && out, "functional/cfg/out");
    uichan::SeesawConfig c;
    c.dA = cfg->dA;
    c.dB = cfg->dB;
    c.max_iters = cfg->max_iters;
    c.rel_tol = cfg->rel_tol;
    c.restarts = cfg->restarts;
    c.seed = cfg->seed;
    c.allow_heuristic = cfg->allow_heuristic != 0;
    *out = new uichan_seesaw_result{
        uichan::optimize_bell(as<uichan::BellFunctional>(functional->value), c)};
  });
}

uichan_status uichan_seesaw_value(const uichan_seesaw_result* result, double* value) {
  return guard([&] {
    require(result && value, "result/value");
    *value = result->value.value;
  });
}

uichan_status uichan_seesaw_to_json(const uichan_seesaw_result* result, int indent, char** out) {
  return guard([&] {
    require(result && out, "result/out");
    *out = dump(uichan::to_json(result->value), indent);
  });
}

uichan_status uichan_seesaw_lift_and_verify(const uichan_seesaw_result* result, int indent,
                                            char** report, int* pass) {
  return guard([&] {
    require(result && report && pass, "result/report/pass");
    const uichan::LiftReport r = uichan::lift_and_verify(result->value);
    *report = dump(uichan::to_json(r), indent);
    *pass = r.ok ? 1 : 0;
  });
}

void uichan_seesaw_free(uichan_seesaw_result* result) { delete result; }

uichan_status uichan_pipeline(const uichan_strategy* strategy, const uichan_table* functional,
                              double threshold, size_t max_n, int indent, char** report,
                              int* pass) {
  return guard([&] {
    require(strategy && functional && report && pass, "strategy/functional/report/pass");
    const uichan::PipelineReport r =
        uichan::run_pipeline(strategy->value, as<uichan::BellFunctional>(functional->value),
                             options(max_n), threshold > 0.0 ? threshold : 1e-8);
    *report = dump({{"pass", r.pass},
                    {"deviation", r.deviation},
                    {"threshold", r.threshold},
                    {"extracted_value", r.extracted_value},
                    {"direct_value", r.direct_value},
                    {"extracted", uichan::to_json(r.extracted)},
                    {"direct", uichan::to_json(r.direct)}},
                   indent);
    *pass = r.pass ? 1 : 0;
  });
}

uichan_status uichan_swap_demo(size_t n, uint64_t seed, int trials, int indent, char** report,
                               int* pass) {
  return guard([&] {
    require(report && pass, "report/pass");
    const uichan::SwapDemoReport r = uichan::swap_demo(n, seed, trials);
    *report = dump({{"n", r.n},
                    {"trials", r.trials},
                    {"seed", seed},
                    {"max_defect", r.max_defect},
                    {"threshold", r.threshold},
                    {"pass", r.pass}},
                   indent);
    *pass = r.pass ? 1 : 0;
  });
}

}  // extern "C"
