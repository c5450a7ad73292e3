#include "cli.hpp"

#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "bilinear/errors.hpp"
#include "bilinear/fptas.hpp"
#include "bilinear/io.hpp"
#include "bilinear/lowrank.hpp"
#include "bilinear/oracle.hpp"
#include "bilinear/rank1.hpp"
#include "bilinear/zerosum.hpp"

namespace bilinear::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  f << text;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return kParseError;
    case ErrorCode::kNoApplicableAlgorithm: return kNoAlgorithm;
    default: return kValidationError;
  }
}

struct Solved {
  EquilibriumCertificate certificate;
  std::string algorithm;
  std::size_t iterations = 0;
};

struct SolveOptions {
  std::string algo = "auto";
  std::string eps;
  unsigned jobs = 1;
  std::size_t threshold = 6;
  std::size_t oracle_limit = kDefaultOracleLimit;
};

std::optional<RankDecomposition> file_decomposition(const BilinearGame& g, const GameFile& file) {
  if (!file.decomposition) return std::nullopt;
  std::vector<RankOneTerm> terms = *file.decomposition;
  for (auto& t : terms) t.alpha = scale(g.payoff_scale(), t.alpha);
  return rank_decomposition(g, std::move(terms));
}

Solved run_algorithm(const std::string& algo, const BilinearGame& g, const GameFile& file,
                     const std::optional<Rational>& eps, const SolveOptions& opt) {
  Solved s;
  s.algorithm = algo;
  if (algo == "zero-sum") {
    s.certificate = solve_zero_sum(g);
  } else if (algo == "rank1") {
    const auto rep = solve_rank1_detailed(g);
    s.certificate = rep.certificate;
    s.iterations = rep.iterations;
  } else if (algo == "low-rank") {
    const auto rep = solve_low_rank_detailed(g);
    s.certificate = rep.certificate;
    s.iterations = rep.checked;
  } else if (algo == "fptas-rel" || algo == "fptas-abs") {
    const auto dec = file_decomposition(g, file).value_or(rank_decomposition(g));
    const FptasOptions fo{opt.jobs};
    const auto rep = algo == "fptas-rel" ? fptas_relative(g, *eps, dec, fo)
                                         : fptas_absolute(g, *eps, dec, fo);
    s.certificate = rep.certificate;
    s.iterations = rep.programs;
  } else {
    s.certificate = brute_force_equilibria(g, opt.oracle_limit).front();
  }
  return s;
}

Solved solve_auto(const BilinearGame& g, const GameFile& file, const std::optional<Rational>& eps,
                  const SolveOptions& opt) {
  const std::size_t rank = game_rank(g);
  std::vector<std::string> route;
  if (rank == 0) route.push_back("zero-sum");
  if (rank == 1) route.push_back("rank1");
  const std::size_t low = std::min(matrix_rank(g.row_payoff()), matrix_rank(g.col_payoff()));
  if (low + g.row_duals() + g.col_duals() <= opt.threshold) route.push_back("low-rank");
  if (eps) {
    const auto dec = file_decomposition(g, file).value_or(rank_decomposition(g));
    if (dec.is_positive()) route.push_back("fptas-rel");
  }
  if (g.rows() + g.cols() + g.row_duals() + g.col_duals() <= opt.oracle_limit)
    route.push_back("oracle");
  for (const auto& algo : route) {
    try {
      return run_algorithm(algo, g, file, eps, opt);
    } catch (const Error& e) {
      // The rank-one method can give up on degenerate games; later routes cannot.
      if (e.code() != ErrorCode::kDegenerateGame) throw;
    }
  }
  throw Error(ErrorCode::kNoApplicableAlgorithm,
              "no algorithm applies to this game; pass --eps for the approximation schemes");
}

Json solved_json(const Solved& s) {
  Json j;
  j["algorithm"] = s.algorithm;
  j["iterations"] = s.iterations;
  const Json cert = to_json(s.certificate);
  for (const auto& [k, v] : cert.items()) j[k] = v;
  return j;
}

// Seeded game generator; modulo mapping keeps draws identical everywhere.
class Generator {
 public:
  explicit Generator(std::uint64_t seed, long den) : engine_(seed), den_(den) {}

  long uniform(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational entry(long lo, long hi) { return make_rational(uniform(lo, hi), uniform(1, den_)); }

  RatMatrix matrix(std::size_t r, std::size_t c, long lo = -9, long hi = 9) {
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(lo, hi);
    return m;
  }

  RatVector vector(std::size_t n, long lo, long hi) {
    RatVector v(n);
    for (auto& x : v) x = entry(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
  long den_;
};

struct GenOptions {
  std::string kind = "bimatrix";
  std::size_t rows = 3, cols = 3, rank = 2;
  std::uint64_t seed = 0;
  long den = 1;
};

GameFile generate(const GenOptions& o) {
  Generator gen(o.seed, o.den);
  const std::size_t M = o.rows, N = o.cols;
  GameFile file;
  RatMatrix A = gen.matrix(M, N), B;
  auto terms = [&](long lo, long hi) {
    std::vector<RankOneTerm> ts;
    for (std::size_t i = 0; i < o.rank; ++i) ts.push_back({gen.vector(M, lo, hi), gen.vector(N, lo, hi)});
    return ts;
  };
  if (o.kind == "bimatrix" || o.kind == "birkhoff") {
    B = gen.matrix(M, N);
  } else if (o.kind == "zero-sum") {
    B = -A;
  } else if (o.kind == "rank1") {
    B = outer(gen.vector(M, -4, 4), gen.vector(N, -4, 4)) - A;
  } else if (o.kind == "rank") {
    B = reconstruct(terms(-4, 4), M, N) - A;
  } else if (o.kind == "low-rank") {
    A = gen.matrix(M, o.rank, -3, 3) * gen.matrix(o.rank, N, -3, 3);
    B = gen.matrix(M, N);
  } else if (o.kind == "positive") {
    auto ts = terms(1, 5);
    B = reconstruct(ts, M, N) - A;
    file.decomposition = std::move(ts);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown generator kind \"" + o.kind + "\"");
  }
  if (o.kind == "birkhoff") {
    if (M != 4 || N != 4) throw Error(ErrorCode::kInvalidArgument, "birkhoff games are 4 x 4");
    const auto bk = ranking_duel_polytope(2);
    file.data = GameData{A, B, bk.E, bk.E, bk.e, bk.e};
  } else {
    file.data = bimatrix_data(A, B);
  }
  return file;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and approximate equilibria of bilinear games", "bilinear"};
  app.require_subcommand(1);

  SolveOptions so;
  std::string game_path, profile_path, kind, in_path, out_path;
  auto* solve = app.add_subcommand("solve", "Compute an equilibrium certificate");
  solve->add_option("game", game_path, "Game file")->required();
  solve->add_option("--algo", so.algo, "Algorithm")
      ->check(CLI::IsMember({"auto", "zero-sum", "rank1", "fptas-abs", "fptas-rel", "low-rank",
                             "oracle"}));
  solve->add_option("--eps", so.eps, "Approximation parameter, e.g. 1/4");
  solve->add_option("--jobs", so.jobs, "Worker threads for the grid schemes")->check(CLI::PositiveNumber);
  solve->add_option("--threshold", so.threshold, "Low-rank routing threshold");
  solve->add_option("--oracle-limit", so.oracle_limit, "Largest M+N+k1+k2 for the oracle");

  auto* conv = app.add_subcommand("convert", "Build a game file from a game-class description");
  conv->add_option("kind", kind, "Source class")
      ->required()
      ->check(CLI::IsMember({"bimatrix", "bayesian", "polymatrix", "ranking-duel", "extensive"}));
  conv->add_option("input", in_path, "Input file")->required();
  conv->add_option("output", out_path, "Output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Certify a strategy profile");
  ver->add_option("game", game_path, "Game file")->required();
  ver->add_option("profile", profile_path, "Profile file {\"x\", \"y\"}")->required();

  auto* rank = app.add_subcommand("rank", "Print rank(A + B)");
  rank->add_option("game", game_path, "Game file")->required();

  auto* en = app.add_subcommand("enumerate", "List all extreme equilibria");
  en->add_option("game", game_path, "Game file")->required();

  GenOptions go;
  auto* gen = app.add_subcommand("gen", "Write a random game file");
  gen->add_option("--kind", go.kind, "bimatrix|zero-sum|rank1|rank|low-rank|positive|birkhoff");
  gen->add_option("--rows", go.rows, "Rows (M)")->check(CLI::PositiveNumber);
  gen->add_option("--cols", go.cols, "Columns (N)")->check(CLI::PositiveNumber);
  gen->add_option("--rank", go.rank, "Rank for rank, low-rank and positive kinds");
  gen->add_option("--seed", go.seed, "Random seed");
  gen->add_option("--den", go.den, "Largest entry denominator")->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", out_path, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*solve) {
      std::optional<Rational> eps;
      if (!so.eps.empty()) eps = parse_rational(so.eps);
      if (!eps && (so.algo == "fptas-rel" || so.algo == "fptas-abs")) {
        err << "error: --eps is required for " << so.algo << "\n";
        return kParseError;
      }
      const GameFile file = parse_game(read_file(game_path));
      const BilinearGame g = validate(file.data);
      const Solved s = so.algo == "auto" ? solve_auto(g, file, eps, so)
                                         : run_algorithm(so.algo, g, file, eps, so);
      out << dump(solved_json(s));
    } else if (*conv) {
      const Json input = parse_json(read_file(in_path));
      GameFile file;
      file.data = convert(kind, input);
      validate(file.data);
      write_output(out_path, serialize_game(file), out);
    } else if (*ver) {
      const BilinearGame g = validate(parse_game(read_file(game_path)).data);
      const StrategyProfile prof = profile_from_json(parse_json(read_file(profile_path)));
      out << dump(to_json(verify(g, prof)));
    } else if (*rank) {
      const BilinearGame g = validate(parse_game(read_file(game_path)).data);
      out << game_rank(g) << "\n";
    } else if (*en) {
      const BilinearGame g = validate(parse_game(read_file(game_path)).data);
      Json list = Json::array();
      for (const auto& c : enumerate_extreme_equilibria(g)) list.push_back(to_json(c));
      out << dump(list);
    } else if (*gen) {
      write_output(out_path, serialize_game(generate(go)), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return kOk;
}

}  // namespace bilinear::cli
