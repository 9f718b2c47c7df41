#include "uichan/io.hpp"

#include <sstream>
#include <string>

#include "uichan/errors.hpp"

namespace uichan {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw ParseError(std::string("field \"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

std::vector<double> real_array(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

const Json& array_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return v;
}

Json vector_to_json(const ComplexVector& v) {
  Json re = Json::array(), im = Json::array();
  for (const auto& z : v) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"dim", v.size()}, {"re", re}, {"im", im}};
}

std::vector<ComplexMatrix> matrix_list(const Json& arr) {
  std::vector<ComplexMatrix> out;
  for (const auto& e : arr) out.push_back(matrix_from_json(e));
  return out;
}

Json matrix_list_to_json(const std::vector<ComplexMatrix>& ms) {
  Json arr = Json::array();
  for (const auto& m : ms) arr.push_back(to_json(m));
  return arr;
}

template <class Table>
Table table_from_json(const Json& j) {
  const std::size_t n = size_field(j, "n");
  const std::size_t m = size_field(j, "m");
  const Json& p = array_member(j, "p");
  Table t(n, m);
  auto bad = [] { return ParseError("table field \"p\" must be nested [a][b][x][y] with sizes n,n,m,m"); };
  if (p.size() != n) throw bad();
  for (std::size_t a = 0; a < n; ++a) {
    if (!p[a].is_array() || p[a].size() != n) throw bad();
    for (std::size_t b = 0; b < n; ++b) {
      if (!p[a][b].is_array() || p[a][b].size() != m) throw bad();
      for (std::size_t x = 0; x < m; ++x) {
        if (!p[a][b][x].is_array() || p[a][b][x].size() != m) throw bad();
        for (std::size_t y = 0; y < m; ++y) {
          if (!p[a][b][x][y].is_number()) throw bad();
          t(a, b, x, y) = p[a][b][x][y].get<double>();
        }
      }
    }
  }
  return t;
}

// Any nlohmann exception escaping a parser becomes a ParseError.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"dim", m.dim()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  return guarded([&] {
    const std::size_t dim = size_field(j, "dim");
    const auto re = real_array(j, "re");
    const auto im = real_array(j, "im");
    if (re.size() != dim * dim || im.size() != dim * dim)
      throw ParseError("matrix of dim " + std::to_string(dim) + " needs " +
                       std::to_string(dim * dim) + " real and imaginary parts");
    std::vector<Complex> entries(dim * dim);
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
    return ComplexMatrix(dim, std::move(entries));
  });
}

Json to_json(const State& s) {
  if (s.kind() == StateKind::Vector) return Json{{"type", "vector"}, {"matrix", vector_to_json(s.vector())}};
  return Json{{"type", "density"}, {"matrix", to_json(s.density_matrix())}};
}

State state_from_json(const Json& j) {
  return guarded([&] {
    const std::string type = member(j, "type").get<std::string>();
    const Json& mat = member(j, "matrix");
    if (type == "density") return State::from_density(matrix_from_json(mat));
    if (type != "vector") throw ParseError("state type must be \"vector\" or \"density\"");
    const std::size_t dim = size_field(mat, "dim");
    const auto re = real_array(mat, "re");
    const auto im = real_array(mat, "im");
    if (re.size() != dim || im.size() != dim)
      throw ParseError("vector state of dim " + std::to_string(dim) + " needs " +
                       std::to_string(dim) + " real and imaginary parts");
    ComplexVector psi(dim);
    for (std::size_t k = 0; k < dim; ++k) psi[k] = {re[k], im[k]};
    return State::from_vector(std::move(psi));
  });
}

Json to_json(const TensorModel& model) {
  return Json{{"kind", "tensor"},
              {"n", model.n},
              {"m", model.m},
              {"dA", model.dA},
              {"dB", model.dB},
              {"state", to_json(model.state)},
              {"U", matrix_list_to_json(model.U)},
              {"V", matrix_list_to_json(model.V)}};
}

Json to_json(const CommutingModel& model) {
  return Json{{"kind", "commuting"},
              {"n", model.n},
              {"m", model.m},
              {"d", model.d},
              {"state", to_json(model.state)},
              {"U", matrix_list_to_json(model.U)},
              {"V", matrix_list_to_json(model.V)}};
}

Json to_json(const Model& model) {
  return std::visit([](const auto& m) { return to_json(m); }, model);
}

Model model_from_json(const Json& j) {
  return guarded([&]() -> Model {
    const std::string kind = member(j, "kind").get<std::string>();
    if (kind == "tensor") {
      TensorModel t;
      t.n = size_field(j, "n");
      t.m = size_field(j, "m");
      t.dA = size_field(j, "dA");
      t.dB = size_field(j, "dB");
      t.state = state_from_json(member(j, "state"));
      t.U = matrix_list(array_member(j, "U"));
      t.V = matrix_list(array_member(j, "V"));
      t.check_shapes();
      return t;
    }
    if (kind == "commuting") {
      CommutingModel c;
      c.n = size_field(j, "n");
      c.m = size_field(j, "m");
      c.d = size_field(j, "d");
      c.state = state_from_json(member(j, "state"));
      c.U = matrix_list(array_member(j, "U"));
      c.V = matrix_list(array_member(j, "V"));
      c.check_shapes();
      return c;
    }
    throw ParseError("model kind must be \"tensor\" or \"commuting\"");
  });
}

Json to_json(const ChannelFamily& channel) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < channel.m; ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < channel.m; ++y) row.push_back(to_json(channel.at(x, y)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", channel.n}, {"m", channel.m}, {"super", rows}};
}

ChannelFamily channel_from_json(const Json& j) {
  return guarded([&] {
    ChannelFamily c;
    c.n = size_field(j, "n");
    c.m = size_field(j, "m");
    const Json& rows = array_member(j, "super");
    if (rows.size() != c.m) throw ParseError("channel field \"super\" must have m rows");
    const std::size_t dim = c.n * c.n * c.n * c.n;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != c.m) throw ParseError("channel rows must have m entries");
      for (const auto& e : row) {
        c.super.push_back(matrix_from_json(e));
        if (c.super.back().dim() != dim) throw ParseError("superoperators must have dim n^4");
      }
    }
    return c;
  });
}

Json to_json(const OutcomeTable& table) {
  Json p = Json::array();
  for (std::size_t a = 0; a < table.n(); ++a) {
    Json pa = Json::array();
    for (std::size_t b = 0; b < table.n(); ++b) {
      Json pb = Json::array();
      for (std::size_t x = 0; x < table.m(); ++x) {
        Json px = Json::array();
        for (std::size_t y = 0; y < table.m(); ++y) px.push_back(table(a, b, x, y));
        pb.push_back(std::move(px));
      }
      pa.push_back(std::move(pb));
    }
    p.push_back(std::move(pa));
  }
  return Json{{"n", table.n()}, {"m", table.m()}, {"p", p}};
}

Behaviour behaviour_from_json(const Json& j) {
  return guarded([&] { return table_from_json<Behaviour>(j); });
}

BellFunctional functional_from_json(const Json& j) {
  return guarded([&] { return table_from_json<BellFunctional>(j); });
}

std::string to_csv(const OutcomeTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "a,b,x,y,value\n";
  for (std::size_t x = 0; x < table.m(); ++x)
    for (std::size_t y = 0; y < table.m(); ++y)
      for (std::size_t a = 0; a < table.n(); ++a)
        for (std::size_t b = 0; b < table.n(); ++b)
          out << a + 1 << ',' << b + 1 << ',' << x + 1 << ',' << y + 1 << ',' << table(a, b, x, y)
              << '\n';
  return out.str();
}

Json to_json(const PVMFamily& family) {
  Json settings = Json::array();
  for (const auto& s : family.projectors) settings.push_back(matrix_list_to_json(s));
  return settings;
}

PVMFamily pvm_family_from_json(const Json& j) {
  return guarded([&] {
    if (!j.is_array()) throw ParseError("PVM family must be an array of settings");
    std::vector<std::vector<ComplexMatrix>> projectors;
    for (const auto& s : j) {
      if (!s.is_array()) throw ParseError("each PVM setting must be an array of projectors");
      projectors.push_back(matrix_list(s));
    }
    try {
      return PVMFamily::create(std::move(projectors));
    } catch (const DimensionError& e) {
      throw ParseError(e.what());
    }
  });
}

Json to_json(const Strategy& strategy) {
  return Json{{"n", strategy.alice.outcomes},
              {"m", strategy.alice.settings},
              {"dA", strategy.alice.dim},
              {"dB", strategy.bob.dim},
              {"A", to_json(strategy.alice)},
              {"B", to_json(strategy.bob)},
              {"state", to_json(strategy.state)}};
}

Strategy strategy_from_json(const Json& j) {
  return guarded([&] {
    Strategy s{pvm_family_from_json(member(j, "A")), pvm_family_from_json(member(j, "B")),
               state_from_json(member(j, "state"))};
    const std::size_t n = size_field(j, "n");
    const std::size_t m = size_field(j, "m");
    const std::size_t dA = size_field(j, "dA");
    const std::size_t dB = size_field(j, "dB");
    if (s.alice.outcomes != n || s.bob.outcomes != n || s.alice.settings != m ||
        s.bob.settings != m || s.alice.dim != dA || s.bob.dim != dB || s.state.dim() != dA * dB) {
      throw ParseError("strategy header does not match its measurements or state");
    }
    return s;
  });
}

Json to_json(const SeesawResult& result) {
  return Json{{"value", result.value},
              {"heuristic", result.heuristic},
              {"best_restart", result.best_restart},
              {"restart_values", result.restart_values},
              {"trace", result.trace},
              {"functional", to_json(result.functional)},
              {"strategy", to_json(result.strategy)},
              {"lifted", to_json(result.lifted)}};
}

Json to_json(const LiftReport& report) {
  return Json{{"seesaw_value", report.seesaw_value},
              {"extracted_value", report.extracted_value},
              {"deviation", report.deviation},
              {"pass", report.ok},
              {"extracted", to_json(report.extracted)}};
}

Json to_json(const ModelReport& report) {
  return Json{{"tolerance", report.tolerance},
              {"max_unitarity_defect", report.max_unitarity_defect},
              {"max_commutator_defect", report.max_commutator_defect},
              {"state_defect", report.state_defect},
              {"unitarity_ok", report.unitarity_ok},
              {"commutation_ok", report.commutation_ok},
              {"state_ok", report.state_ok},
              {"accepted", report.accepted()}};
}

Json to_json(const CptpReport& report) {
  return Json{{"min_choi_eigenvalue", report.min_choi_eigenvalue},
              {"trace_preservation_defect", report.trace_preservation_defect},
              {"hermiticity_preservation_defect", report.hermiticity_preservation_defect},
              {"completely_positive", report.completely_positive},
              {"trace_preserving", report.trace_preserving},
              {"pass", report.ok()}};
}

}  // namespace uichan
