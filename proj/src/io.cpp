#include "bilinear/io.hpp"

#include <limits>

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

[[noreturn]] void fail(std::string_view where, const std::string& what) {
  throw Error(ErrorCode::kParse, std::string(where) + ": " + what);
}

const Json& field(const Json& j, const char* key, std::string_view where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t count_from_json(const Json& j, std::string_view where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string sub(std::string_view where, const char* key) {
  return std::string(where) + "." + key;
}

std::string sub(std::string_view where, std::size_t i) {
  return std::string(where) + "[" + std::to_string(i) + "]";
}

const Json& array(const Json& j, std::string_view where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

Json matrices_to_json(const std::vector<std::vector<RatMatrix>>& ms) {
  Json out = Json::array();
  for (const auto& row : ms) {
    Json r = Json::array();
    for (const auto& m : row) r.push_back(to_json(m));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<RatMatrix>> matrices_from_json(const Json& j, std::string_view where) {
  std::vector<std::vector<RatMatrix>> out;
  for (std::size_t t = 0; t < array(j, where).size(); ++t) {
    out.emplace_back();
    const std::string wt = sub(where, t);
    for (std::size_t s = 0; s < array(j[t], wt).size(); ++s)
      out.back().push_back(matrix_from_json(j[t][s], sub(wt, s)));
  }
  return out;
}

}  // namespace

Json to_json(const Rational& r) {
  if (is_integer(r) && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Rational rational_from_json(const Json& j, std::string_view where) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer or a \"p/q\" string");
}

RatVector vector_from_json(const Json& j, std::string_view where) {
  RatVector out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i)
    out.push_back(rational_from_json(j[i], sub(where, i)));
  return out;
}

RatMatrix matrix_from_json(const Json& j, std::string_view where) {
  const std::size_t rows = array(j, where).size();
  if (rows == 0) return RatMatrix(0, 0);
  const std::size_t cols = array(j[0], sub(where, std::size_t{0})).size();
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const RatVector row = vector_from_json(j[r], sub(where, r));
    if (row.size() != cols) fail(sub(where, r), "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

bool operator==(const GameFile& a, const GameFile& b) {
  const auto& x = a.data;
  const auto& y = b.data;
  if (!(x.A == y.A && x.B == y.B && x.E == y.E && x.F == y.F && x.e == y.e && x.f == y.f))
    return false;
  if (a.decomposition.has_value() != b.decomposition.has_value()) return false;
  if (!a.decomposition) return true;
  if (a.decomposition->size() != b.decomposition->size()) return false;
  for (std::size_t i = 0; i < a.decomposition->size(); ++i)
    if ((*a.decomposition)[i].alpha != (*b.decomposition)[i].alpha ||
        (*a.decomposition)[i].beta != (*b.decomposition)[i].beta)
      return false;
  return true;
}

Json to_json(const GameFile& file) {
  Json j;
  j["A"] = to_json(file.data.A);
  j["B"] = to_json(file.data.B);
  j["E"] = to_json(file.data.E);
  j["F"] = to_json(file.data.F);
  j["e"] = to_json(file.data.e);
  j["f"] = to_json(file.data.f);
  if (file.decomposition) {
    Json d = Json::array();
    for (const auto& t : *file.decomposition) {
      Json term;
      term["alpha"] = to_json(t.alpha);
      term["beta"] = to_json(t.beta);
      d.push_back(std::move(term));
    }
    j["decomposition"] = std::move(d);
  }
  return j;
}

GameFile game_from_json(const Json& j) {
  GameFile f;
  f.data.A = matrix_from_json(field(j, "A", "game"), "A");
  f.data.B = matrix_from_json(field(j, "B", "game"), "B");
  f.data.E = matrix_from_json(field(j, "E", "game"), "E");
  f.data.F = matrix_from_json(field(j, "F", "game"), "F");
  f.data.e = vector_from_json(field(j, "e", "game"), "e");
  f.data.f = vector_from_json(field(j, "f", "game"), "f");
  if (const auto it = j.find("decomposition"); it != j.end()) {
    std::vector<RankOneTerm> terms;
    for (std::size_t i = 0; i < array(*it, "decomposition").size(); ++i) {
      const std::string w = sub("decomposition", i);
      terms.push_back({vector_from_json(field((*it)[i], "alpha", w), sub(w, "alpha")),
                       vector_from_json(field((*it)[i], "beta", w), sub(w, "beta"))});
    }
    f.decomposition = std::move(terms);
  }
  return f;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

GameFile parse_game(std::string_view text) { return game_from_json(parse_json(text)); }

std::string serialize_game(const GameFile& file) { return dump(to_json(file)); }

Json to_json(const StrategyProfile& profile) {
  Json j;
  j["x"] = to_json(profile.x);
  j["y"] = to_json(profile.y);
  return j;
}

StrategyProfile profile_from_json(const Json& j) {
  return {vector_from_json(field(j, "x", "profile"), "x"),
          vector_from_json(field(j, "y", "profile"), "y")};
}

Json to_json(const EquilibriumCertificate& c) {
  Json j;
  j["x"] = to_json(c.profile.x);
  j["y"] = to_json(c.profile.y);
  j["p"] = to_json(c.p);
  j["q"] = to_json(c.q);
  j["abs_eps"] = to_json(c.abs_eps);
  j["rel_eps"] = c.rel_eps ? to_json(*c.rel_eps) : Json(nullptr);
  j["qp_residual"] = to_json(c.qp_residual);
  j["row_value"] = to_json(c.row_value);
  j["col_value"] = to_json(c.col_value);
  j["payoff_total"] = to_json(c.payoff_total);
  j["degenerate_scale"] = c.degenerate_scale;
  return j;
}

BayesianSpec bayesian_from_json(const Json& j) {
  BayesianSpec s;
  s.row_types = count_from_json(field(j, "row_types", "bayesian"), "row_types");
  s.col_types = count_from_json(field(j, "col_types", "bayesian"), "col_types");
  s.row_actions = count_from_json(field(j, "row_actions", "bayesian"), "row_actions");
  s.col_actions = count_from_json(field(j, "col_actions", "bayesian"), "col_actions");
  s.prior = matrix_from_json(field(j, "prior", "bayesian"), "prior");
  s.A = matrices_from_json(field(j, "A", "bayesian"), "A");
  s.B = matrices_from_json(field(j, "B", "bayesian"), "B");
  return s;
}

Json to_json(const BayesianSpec& s) {
  Json j;
  j["row_types"] = s.row_types;
  j["col_types"] = s.col_types;
  j["row_actions"] = s.row_actions;
  j["col_actions"] = s.col_actions;
  j["prior"] = to_json(s.prior);
  j["A"] = matrices_to_json(s.A);
  j["B"] = matrices_to_json(s.B);
  return j;
}

PolymatrixSpec polymatrix_from_json(const Json& j) {
  PolymatrixSpec s;
  const Json& sizes = array(field(j, "strategies", "polymatrix"), "strategies");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    s.strategies.push_back(count_from_json(sizes[i], sub("strategies", i)));
  const Json& pay = array(field(j, "payoffs", "polymatrix"), "payoffs");
  for (std::size_t i = 0; i < pay.size(); ++i) {
    s.payoffs.emplace_back();
    const std::string wi = sub("payoffs", i);
    for (std::size_t k = 0; k < array(pay[i], wi).size(); ++k)
      s.payoffs.back().push_back(pay[i][k].is_null() ? RatMatrix()
                                                     : matrix_from_json(pay[i][k], sub(wi, k)));
  }
  return s;
}

Json to_json(const PolymatrixSpec& s) {
  Json j;
  j["strategies"] = s.strategies;
  Json pay = Json::array();
  for (std::size_t i = 0; i < s.payoffs.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < s.payoffs[i].size(); ++k)
      row.push_back(i == k ? Json(nullptr) : to_json(s.payoffs[i][k]));
    pay.push_back(std::move(row));
  }
  j["payoffs"] = std::move(pay);
  return j;
}

ExtensiveFormTree tree_from_json(const Json& j) {
  ExtensiveFormTree t;
  t.root = count_from_json(field(j, "root", "extensive"), "root");
  const Json& nodes = array(field(j, "nodes", "extensive"), "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string w = sub("nodes", i);
    const Json& kind = field(nodes[i], "kind", w);
    TreeNode n;
    auto children = [&] {
      const std::string wc = sub(w, "children");
      const Json& c = array(field(nodes[i], "children", w), wc);
      for (std::size_t k = 0; k < c.size(); ++k) n.children.push_back(count_from_json(c[k], sub(wc, k)));
    };
    if (kind == "decision") {
      n.kind = NodeKind::kDecision;
      const std::size_t player = count_from_json(field(nodes[i], "player", w), sub(w, "player"));
      if (player > 1) fail(sub(w, "player"), "expected 0 or 1");
      n.player = static_cast<int>(player);
      const Json& name = field(nodes[i], "infoset", w);
      if (!name.is_string()) fail(sub(w, "infoset"), "expected a string");
      n.infoset = name.get<std::string>();
      children();
    } else if (kind == "chance") {
      n.kind = NodeKind::kChance;
      children();
      n.probabilities = vector_from_json(field(nodes[i], "probabilities", w), sub(w, "probabilities"));
    } else if (kind == "leaf") {
      n.kind = NodeKind::kLeaf;
      const RatVector pay = vector_from_json(field(nodes[i], "payoff", w), sub(w, "payoff"));
      if (pay.size() != 2) fail(sub(w, "payoff"), "expected [row, col]");
      n.row_payoff = pay[0];
      n.col_payoff = pay[1];
    } else {
      fail(sub(w, "kind"), "expected \"decision\", \"chance\" or \"leaf\"");
    }
    t.nodes.push_back(std::move(n));
  }
  return t;
}

Json to_json(const ExtensiveFormTree& t) {
  Json j;
  j["root"] = t.root;
  Json nodes = Json::array();
  for (const auto& n : t.nodes) {
    Json o;
    switch (n.kind) {
      case NodeKind::kDecision:
        o["kind"] = "decision";
        o["player"] = n.player;
        o["infoset"] = n.infoset;
        o["children"] = n.children;
        break;
      case NodeKind::kChance:
        o["kind"] = "chance";
        o["children"] = n.children;
        o["probabilities"] = to_json(n.probabilities);
        break;
      case NodeKind::kLeaf:
        o["kind"] = "leaf";
        o["payoff"] = to_json(RatVector{n.row_payoff, n.col_payoff});
        break;
    }
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

GameData convert(std::string_view kind, const Json& in) {
  if (kind == "bimatrix")
    return bimatrix_data(matrix_from_json(field(in, "A", kind), "A"),
                         matrix_from_json(field(in, "B", kind), "B"));
  if (kind == "ranking-duel")
    return ranking_duel_data(matrix_from_json(field(in, "A", kind), "A"),
                             matrix_from_json(field(in, "B", kind), "B"),
                             count_from_json(field(in, "m", kind), "m"));
  if (kind == "bayesian") return bayesian_data(bayesian_from_json(in));
  if (kind == "polymatrix") return polymatrix_data(polymatrix_from_json(in));
  if (kind == "extensive") return sequence_form(tree_from_json(in)).data;
  throw Error(ErrorCode::kInvalidArgument, "unknown converter \"" + std::string(kind) + "\"");
}

}  // namespace bilinear
