#include "bilinear/converters.hpp"

#include <map>
#include <utility>

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

void require_shape(const RatMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw Error(ErrorCode::kDimensionMismatch,
                what + " must be " + std::to_string(rows) + " x " + std::to_string(cols));
}

// One row per block, with ones over that block's columns.
RatMatrix block_sums(const std::vector<std::size_t>& sizes) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  RatMatrix e(sizes.size(), total);
  std::size_t off = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    for (std::size_t c = 0; c < sizes[b]; ++c) e(b, off + c) = 1;
    off += sizes[b];
  }
  return e;
}

void paste(RatMatrix& dst, const RatMatrix& src, std::size_t r0, std::size_t c0,
           const Rational& weight) {
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) dst(r0 + r, c0 + c) += weight * src(r, c);
}

}  // namespace

GameData bimatrix_data(const RatMatrix& A, const RatMatrix& B) {
  if (A.rows() == 0 || A.cols() == 0)
    throw Error(ErrorCode::kDimensionMismatch, "payoff matrices must be nonempty");
  require_shape(B, A.rows(), A.cols(), "B");
  return {A, B, RatMatrix::filled(1, A.rows(), 1), RatMatrix::filled(1, A.cols(), 1),
          RatVector{1}, RatVector{1}};
}

BilinearGame from_bimatrix(const RatMatrix& A, const RatMatrix& B) {
  return validate(bimatrix_data(A, B));
}

GameData bayesian_data(const BayesianSpec& s) {
  const std::size_t t1 = s.row_types, t2 = s.col_types, m1 = s.row_actions, m2 = s.col_actions;
  if (t1 == 0 || t2 == 0 || m1 == 0 || m2 == 0)
    throw Error(ErrorCode::kDimensionMismatch, "type and action counts must be positive");
  if (s.prior.rows() != t1 || s.prior.cols() != t2)
    throw Error(ErrorCode::kInvalidPrior, "prior must be row_types x col_types");
  Rational total;
  for (const auto& p : s.prior.entries()) {
    if (p < 0) throw Error(ErrorCode::kInvalidPrior, "negative prior probability");
    total += p;
  }
  if (total != 1) throw Error(ErrorCode::kInvalidPrior, "prior sums to " + to_string(total));
  if (s.A.size() != t1 || s.B.size() != t1)
    throw Error(ErrorCode::kDimensionMismatch, "need one payoff row per row type");

  GameData d;
  d.A = RatMatrix(t1 * m1, t2 * m2);
  d.B = RatMatrix(t1 * m1, t2 * m2);
  for (std::size_t t = 0; t < t1; ++t) {
    if (s.A[t].size() != t2 || s.B[t].size() != t2)
      throw Error(ErrorCode::kDimensionMismatch, "need one payoff matrix per type pair");
    for (std::size_t u = 0; u < t2; ++u) {
      require_shape(s.A[t][u], m1, m2, "A^{ts}");
      require_shape(s.B[t][u], m1, m2, "B^{ts}");
      paste(d.A, s.A[t][u], t * m1, u * m2, s.prior(t, u));
      paste(d.B, s.B[t][u], t * m1, u * m2, s.prior(t, u));
    }
  }
  d.E = block_sums(std::vector<std::size_t>(t1, m1));
  d.F = block_sums(std::vector<std::size_t>(t2, m2));
  d.e.assign(t1, Rational(1));
  d.f.assign(t2, Rational(1));
  return d;
}

BilinearGame from_bayesian(const BayesianSpec& spec) { return validate(bayesian_data(spec)); }

namespace {

std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
  return off;
}

void check_polymatrix(const PolymatrixSpec& s) {
  const std::size_t n = s.strategies.size();
  if (n == 0) throw Error(ErrorCode::kDimensionMismatch, "polymatrix game needs a player");
  for (auto k : s.strategies)
    if (k == 0) throw Error(ErrorCode::kDimensionMismatch, "player without strategies");
  if (s.payoffs.size() != n)
    throw Error(ErrorCode::kDimensionMismatch, "need one payoff row per player");
  for (std::size_t i = 0; i < n; ++i) {
    if (s.payoffs[i].size() != n)
      throw Error(ErrorCode::kDimensionMismatch, "need one payoff block per player pair");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        require_shape(s.payoffs[i][j], s.strategies[i], s.strategies[j],
                      "A^{" + std::to_string(i + 1) + std::to_string(j + 1) + "}");
  }
}

}  // namespace

GameData polymatrix_data(const PolymatrixSpec& s) {
  check_polymatrix(s);
  const std::size_t n = s.strategies.size();
  const auto off = offsets(s.strategies);
  RatMatrix a(off[n], off[n]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) paste(a, s.payoffs[i][j], off[i], off[j], 1);
  const RatMatrix e = block_sums(s.strategies);
  const RatVector ones(n, Rational(1));
  return {a, a.transpose(), e, e, ones, ones};
}

BilinearGame from_polymatrix(const PolymatrixSpec& spec) { return validate(polymatrix_data(spec)); }

std::vector<RatVector> extract_polymatrix_ne(const PolymatrixSpec& spec,
                                             const StrategyProfile& profile) {
  check_polymatrix(spec);
  const auto off = offsets(spec.strategies);
  if (profile.x.size() != off.back() || profile.y.size() != off.back())
    throw Error(ErrorCode::kDimensionMismatch, "profile length differs from the strategy count");
  if (profile.x != profile.y)
    throw Error(ErrorCode::kNotSymmetric, "only symmetric equilibria map to polymatrix ones");
  std::vector<RatVector> out;
  for (std::size_t i = 0; i + 1 < off.size(); ++i)
    out.emplace_back(profile.x.begin() + off[i], profile.x.begin() + off[i + 1]);
  return out;
}

namespace {

RatVector polymatrix_gains(const PolymatrixSpec& s, const std::vector<RatVector>& xs,
                           std::size_t i) {
  RatVector g(s.strategies[i], Rational(0));
  for (std::size_t j = 0; j < s.strategies.size(); ++j)
    if (j != i) g = add(g, s.payoffs[i][j] * xs[j]);
  return g;
}

}  // namespace

Rational polymatrix_payoff(const PolymatrixSpec& spec, const std::vector<RatVector>& xs,
                           std::size_t player) {
  return dot(xs.at(player), polymatrix_gains(spec, xs, player));
}

bool is_polymatrix_equilibrium(const PolymatrixSpec& spec, const std::vector<RatVector>& xs) {
  for (std::size_t i = 0; i < spec.strategies.size(); ++i) {
    const RatVector g = polymatrix_gains(spec, xs, i);
    Rational best = g[0];
    for (const auto& v : g) best = std::max(best, v);
    if (dot(xs[i], g) != best) return false;
  }
  return true;
}

LinearConstraints ranking_duel_polytope(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "ranking duel needs m >= 1");
  LinearConstraints c{RatMatrix(2 * m - 1, m * m), RatVector(2 * m - 1, Rational(1))};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      c.E(i, i * m + j) = 1;
      if (j + 1 < m) c.E(m + j, i * m + j) = 1;
    }
  return c;
}

GameData ranking_duel_data(const RatMatrix& A, const RatMatrix& B, std::size_t m) {
  require_shape(A, m * m, m * m, "A");
  require_shape(B, m * m, m * m, "B");
  auto c = ranking_duel_polytope(m);
  return {A, B, c.E, c.E, c.e, c.e};
}

BilinearGame from_ranking_duel(const RatMatrix& A, const RatMatrix& B, std::size_t m) {
  return validate(ranking_duel_data(A, B, m));
}

// ---------------------------------------------------------------------------

namespace {

using History = std::vector<std::pair<std::size_t, std::size_t>>;  // (infoset, action)

struct Builder {
  const ExtensiveFormTree& tree;
  PlayerSequences players[2];
  std::map<std::string, std::size_t> index[2];
  std::vector<History> recall[2];
  std::vector<char> visited;
  struct Payoff {
    std::size_t row, col;
    Rational a, b;
  };
  std::vector<Payoff> leaves;

  explicit Builder(const ExtensiveFormTree& t) : tree(t), visited(t.nodes.size(), 0) {}

  [[noreturn]] static void malformed(std::size_t node, const std::string& what) {
    throw Error(ErrorCode::kMalformedTree, "node " + std::to_string(node) + ": " + what);
  }

  void walk(std::size_t id, History hist[2], std::size_t seq[2], const Rational& chance) {
    if (id >= tree.nodes.size()) malformed(id, "child index out of range");
    if (visited[id]) malformed(id, "reached twice");
    visited[id] = 1;
    const TreeNode& node = tree.nodes[id];
    switch (node.kind) {
      case NodeKind::kLeaf:
        if (!node.children.empty()) malformed(id, "leaf with children");
        leaves.push_back({seq[0], seq[1], chance * node.row_payoff, chance * node.col_payoff});
        return;
      case NodeKind::kChance: {
        if (node.children.empty()) malformed(id, "chance node without outcomes");
        if (node.probabilities.size() != node.children.size())
          malformed(id, "one probability per outcome required");
        Rational total;
        for (const auto& p : node.probabilities) {
          if (p < 0) malformed(id, "negative chance probability");
          total += p;
        }
        if (total != 1) malformed(id, "chance probabilities sum to " + to_string(total));
        for (std::size_t c = 0; c < node.children.size(); ++c)
          walk(node.children[c], hist, seq, chance * node.probabilities[c]);
        return;
      }
      case NodeKind::kDecision: {
        if (node.player != 0 && node.player != 1) malformed(id, "player must be 0 or 1");
        if (node.children.empty()) malformed(id, "decision node without actions");
        const int pl = node.player;
        const std::string name = node.infoset.empty() ? "#" + std::to_string(id) : node.infoset;
        PlayerSequences& ps = players[pl];
        std::size_t h;
        if (auto it = index[pl].find(name); it == index[pl].end()) {
          h = ps.infosets.size();
          index[pl].emplace(name, h);
          ps.infosets.push_back({name, seq[pl], ps.count, node.children.size()});
          ps.count += node.children.size();
          recall[pl].push_back(hist[pl]);
        } else {
          h = it->second;
          if (ps.infosets[h].actions != node.children.size())
            malformed(id, "information set '" + name + "' has inconsistent action counts");
          if (recall[pl][h] != hist[pl])
            throw Error(ErrorCode::kNotPerfectRecall,
                        "information set '" + name + "' mixes different own histories");
        }
        const std::size_t saved = seq[pl];
        for (std::size_t a = 0; a < node.children.size(); ++a) {
          hist[pl].emplace_back(h, a);
          seq[pl] = ps.infosets[h].first_sequence + a;
          walk(node.children[a], hist, seq, chance);
          hist[pl].pop_back();
        }
        seq[pl] = saved;
        return;
      }
    }
  }
};

void flow_constraints(const PlayerSequences& ps, RatMatrix& E, RatVector& e) {
  E = RatMatrix(ps.infosets.size() + 1, ps.count);
  e.assign(ps.infosets.size() + 1, Rational(0));
  E(0, 0) = 1;
  e[0] = 1;
  for (std::size_t h = 0; h < ps.infosets.size(); ++h) {
    const auto& I = ps.infosets[h];
    for (std::size_t a = 0; a < I.actions; ++a) E(h + 1, I.first_sequence + a) = 1;
    E(h + 1, I.parent_sequence) -= 1;
  }
}

}  // namespace

SequenceForm sequence_form(const ExtensiveFormTree& tree) {
  if (tree.nodes.empty()) throw Error(ErrorCode::kMalformedTree, "empty tree");
  Builder b(tree);
  History hist[2];
  std::size_t seq[2] = {0, 0};
  b.walk(tree.root, hist, seq, Rational(1));

  SequenceForm sf;
  sf.players[0] = b.players[0];
  sf.players[1] = b.players[1];
  sf.data.A = RatMatrix(sf.players[0].count, sf.players[1].count);
  sf.data.B = RatMatrix(sf.players[0].count, sf.players[1].count);
  for (const auto& l : b.leaves) {
    sf.data.A(l.row, l.col) += l.a;
    sf.data.B(l.row, l.col) += l.b;
  }
  flow_constraints(sf.players[0], sf.data.E, sf.data.e);
  flow_constraints(sf.players[1], sf.data.F, sf.data.f);
  return sf;
}

BilinearGame from_extensive_form(const ExtensiveFormTree& tree) {
  return validate(sequence_form(tree).data);
}

RatVector realization_plan(const PlayerSequences& ps, const BehaviorStrategy& behavior) {
  if (behavior.size() != ps.infosets.size())
    throw Error(ErrorCode::kDimensionMismatch, "one distribution per information set required");
  RatVector plan(ps.count, Rational(0));
  plan[0] = 1;
  for (std::size_t h = 0; h < ps.infosets.size(); ++h) {
    const auto& I = ps.infosets[h];
    if (behavior[h].size() != I.actions)
      throw Error(ErrorCode::kDimensionMismatch, "distribution size differs from action count");
    for (std::size_t a = 0; a < I.actions; ++a)
      plan[I.first_sequence + a] = plan[I.parent_sequence] * behavior[h][a];
  }
  return plan;
}

BehaviorStrategy behavior_strategy(const PlayerSequences& ps, std::span<const Rational> plan) {
  if (plan.size() != ps.count)
    throw Error(ErrorCode::kDimensionMismatch, "realization plan length differs");
  BehaviorStrategy out;
  for (const auto& I : ps.infosets) {
    RatVector dist(I.actions);
    const Rational& reach = plan[I.parent_sequence];
    for (std::size_t a = 0; a < I.actions; ++a)
      dist[a] = reach == 0 ? make_rational(1, static_cast<long>(I.actions)) : plan[I.first_sequence + a] / reach;
    out.push_back(std::move(dist));
  }
  return out;
}

}  // namespace bilinear
