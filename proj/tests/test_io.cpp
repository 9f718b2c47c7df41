#include <sstream>

#include "doctest.h"
#include "uichan/audit.hpp"
#include "uichan/errors.hpp"
#include "uichan/io.hpp"
#include "uichan/rng.hpp"

using namespace uichan;

namespace {

Json reparse(const Json& j) { return parse_json(j.dump()); }

RandomModelSpec spec(ModelKind kind, StateKind state) {
  RandomModelSpec s;
  s.kind = kind;
  s.state = state;
  s.n = 2;
  s.m = 2;
  s.dA = 2;
  s.dB = 3;
  s.seed = 21;
  return s;
}

}  // namespace

TEST_CASE("matrices round trip bit for bit") {
  const ComplexMatrix u = haar_unitary(5, 3);
  CHECK(matrix_from_json(reparse(to_json(u))) == u);
}

TEST_CASE("states round trip in both forms") {
  CounterRng rng(1);
  const State v = random_state(4, StateKind::Vector, rng);
  const State d = random_state(4, StateKind::Density, rng);
  const State v2 = state_from_json(reparse(to_json(v)));
  const State d2 = state_from_json(reparse(to_json(d)));
  CHECK(v2.kind() == StateKind::Vector);
  CHECK(v2.vector() == v.vector());
  CHECK(d2.kind() == StateKind::Density);
  CHECK(d2.density_matrix() == d.density_matrix());
}

TEST_CASE("models round trip and keep their kind") {
  for (auto kind : {ModelKind::Tensor, ModelKind::Commuting})
    for (auto state : {StateKind::Vector, StateKind::Density}) {
      const Model m = random_model(spec(kind, state));
      const Json j = to_json(m);
      CHECK(j["kind"] == (kind == ModelKind::Tensor ? "tensor" : "commuting"));
      const Model back = model_from_json(reparse(j));
      CHECK(to_json(back).dump() == j.dump());
    }
  const Json commuting = to_json(random_model(spec(ModelKind::Commuting, StateKind::Vector)));
  CHECK(commuting.contains("d"));
  CHECK_FALSE(commuting.contains("dA"));
}

TEST_CASE("channels, tables and strategies round trip") {
  const ChannelFamily c = channel_direct(random_tensor_model(spec(ModelKind::Tensor, StateKind::Vector)));
  CHECK(max_abs_diff(channel_from_json(reparse(to_json(c))), c) == 0.0);

  const Behaviour p = behaviour_from_channel(c);
  CHECK(behaviour_from_json(reparse(to_json(p))).values() == p.values());
  const BellFunctional f = chsh_functional();
  CHECK(functional_from_json(reparse(to_json(f))).values() == f.values());

  const Strategy s = random_strategy(3, 2, 2, 2, 4);
  const Strategy s2 = strategy_from_json(reparse(to_json(s)));
  CHECK(s2.alice.projectors == s.alice.projectors);
  CHECK(s2.bob.projectors == s.bob.projectors);
  CHECK(s2.state.vector() == s.state.vector());
}

TEST_CASE("table nesting is a/b/x/y") {
  BellFunctional f(2, 3);
  f(1, 0, 2, 1) = 0.5;
  const Json j = to_json(f);
  CHECK(j["p"][1][0][2][1] == 0.5);
  CHECK(j["p"].size() == 2);
  CHECK(j["p"][0][0].size() == 3);
}

TEST_CASE("CSV export is 1-based with a header") {
  Behaviour p(2, 1);
  p(1, 0, 0, 0) = 0.25;
  std::istringstream in(to_csv(p));
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,b,x,y,value");
  int rows = 0;
  bool found = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line == "2,1,1,1,0.25") found = true;
  }
  CHECK(rows == 4);
  CHECK(found);
}

TEST_CASE("malformed inputs raise ParseError") {
  CHECK_THROWS_AS(parse_json("{not json"), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 2, "re": [1, 0, 0], "im": [0, 0, 0, 0]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 0, "re": [], "im": []})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"dim": 1, "re": ["x"], "im": [0]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json(R"({"re": [1], "im": [0]})")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[1, 2]")), ParseError);
  CHECK_THROWS_AS(state_from_json(parse_json(R"({"type": "mixed", "matrix": {"dim": 1, "re": [1], "im": [0]}})")),
                  ParseError);
  CHECK_THROWS_AS(state_from_json(parse_json(R"({"type": 3, "matrix": {}})")), ParseError);

  Json model = to_json(random_model(spec(ModelKind::Tensor, StateKind::Vector)));
  Json bad_kind = model;
  bad_kind["kind"] = "quantum";
  CHECK_THROWS_AS(model_from_json(bad_kind), ParseError);
  Json missing = model;
  missing.erase("V");
  CHECK_THROWS_AS(model_from_json(missing), ParseError);
  Json short_u = model;
  short_u["U"].erase(0);
  CHECK_THROWS_AS(model_from_json(short_u), DimensionError);

  CHECK_THROWS_AS(behaviour_from_json(parse_json(R"({"n": 2, "m": 1, "p": [[[[1]]]]})")), ParseError);

  Json strategy = to_json(random_strategy(2, 2, 2, 2, 5));
  strategy["dA"] = 3;
  CHECK_THROWS_AS(strategy_from_json(strategy), ParseError);

  Json channel = to_json(ChannelFamily{1, 1, {ComplexMatrix::identity(2)}});
  CHECK_THROWS_AS(channel_from_json(channel), ParseError);
}
