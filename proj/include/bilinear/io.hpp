#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bilinear/converters.hpp"
#include "bilinear/game.hpp"
#include "json.hpp"

namespace bilinear {

// Insertion-ordered so that output key order is fixed.
using Json = nlohmann::ordered_json;

// Integers bare (when they fit in 64 bits), everything else "p/q".
Json to_json(const Rational& r);
Json to_json(const RatVector& v);
Json to_json(const RatMatrix& m);

// Accept integers and "p" / "p/q" strings; floats are rejected. Throw Parse
// naming the offending key.
Rational rational_from_json(const Json& j, std::string_view where);
RatVector vector_from_json(const Json& j, std::string_view where);
RatMatrix matrix_from_json(const Json& j, std::string_view where);

// Keys "A", "B", "E", "F", "e", "f" and, optionally, "decomposition": a list
// of {"alpha", "beta"} pairs with A + B = sum alpha beta^T in file units.
struct GameFile {
  GameData data;
  std::optional<std::vector<RankOneTerm>> decomposition;

  friend bool operator==(const GameFile&, const GameFile&);
};

Json to_json(const GameFile& file);
GameFile game_from_json(const Json& j);

// Text helpers; dump() is two-space indented with a trailing newline.
Json parse_json(std::string_view text);
std::string dump(const Json& j);
GameFile parse_game(std::string_view text);
std::string serialize_game(const GameFile& file);

Json to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const Json& j);
Json to_json(const EquilibriumCertificate& c);

// Converter inputs.
//   bimatrix:     {"A", "B"}
//   ranking-duel: {"m", "A", "B"} with m^2 x m^2 payoffs
//   bayesian:     {"row_types", "col_types", "row_actions", "col_actions",
//                  "prior", "A": [[matrix per column type] per row type], "B"}
//   polymatrix:   {"strategies": [sizes], "payoffs": [[matrix or null]]}
//   extensive:    {"root", "nodes": [{"kind": "decision", "player", "infoset",
//                  "children"} | {"kind": "chance", "children", "probabilities"}
//                  | {"kind": "leaf", "payoff": [row, col]}]}
BayesianSpec bayesian_from_json(const Json& j);
Json to_json(const BayesianSpec& spec);
PolymatrixSpec polymatrix_from_json(const Json& j);
Json to_json(const PolymatrixSpec& spec);
ExtensiveFormTree tree_from_json(const Json& j);
Json to_json(const ExtensiveFormTree& tree);

// Dispatch on the converter name; returns the unscaled game data.
GameData convert(std::string_view kind, const Json& input);

}  // namespace bilinear
