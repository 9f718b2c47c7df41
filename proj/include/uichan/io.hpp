#pragma once

// JSON forms of every value that crosses a file boundary.
//
//   matrix      {"dim": d, "re": [...], "im": [...]}   row-major, d*d entries
//   state       {"type": "vector"|"density", "matrix": <matrix>}; a vector
//               state uses the matrix object with d entries
//   model       {"kind": "tensor"|"commuting", "n", "m", "dA", "dB", "state",
//                "U": [<matrix>...], "V": [<matrix>...]}; commuting models
//               carry a single "d" in place of "dA" and "dB"
//   channel     {"n", "m", "super": [[<matrix> per y] per x]}
//   table       {"n", "m", "p": [a][b][x][y] nested reals}
//   strategy    {"n", "m", "dA", "dB", "A": [[<matrix> per a] per x],
//                "B": [...], "state": <state>}
//
// Doubles are written in shortest round-trip form, so parse(serialize(v))
// reproduces v bit for bit.

#include <string>

#include "json.hpp"

#include "uichan/bell.hpp"
#include "uichan/channels.hpp"
#include "uichan/models.hpp"
#include "uichan/seesaw.hpp"

namespace uichan {

using Json = nlohmann::json;

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const State& s);
State state_from_json(const Json& j);

Json to_json(const Model& model);
Json to_json(const TensorModel& model);
Json to_json(const CommutingModel& model);
Model model_from_json(const Json& j);

Json to_json(const ChannelFamily& channel);
ChannelFamily channel_from_json(const Json& j);

Json to_json(const OutcomeTable& table);
Behaviour behaviour_from_json(const Json& j);
BellFunctional functional_from_json(const Json& j);
// One row per entry, header "a,b,x,y,value", labels 1-based.
std::string to_csv(const OutcomeTable& table);

Json to_json(const PVMFamily& family);
PVMFamily pvm_family_from_json(const Json& j);

Json to_json(const Strategy& strategy);
Strategy strategy_from_json(const Json& j);

Json to_json(const SeesawResult& result);
Json to_json(const LiftReport& report);

Json to_json(const ModelReport& report);
Json to_json(const CptpReport& report);

// Parses text, turning any JSON error into ParseError.
Json parse_json(const std::string& text);

}  // namespace uichan
