#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "bilinear/errors.hpp"
#include "bilinear/io.hpp"
#include "bilinear/oracle.hpp"
#include "cli.hpp"
#include "support/games.hpp"

using namespace bilinear;
using namespace bilinear::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bilinear");
  std::ostringstream out, err;
  const int code = bilinear::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("bilinear_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string data_file(const std::string& name) { return std::string(BILINEAR_TEST_DATA) + "/" + name; }

std::string game_text(const BilinearGame& g) { return serialize_game({g.data(), std::nullopt}); }

}  // namespace

TEST_CASE("rationals in files") {
  CHECK(to_json(make_rational(3, 1)) == Json(3));
  CHECK(to_json(make_rational(-6, 4)) == Json("-3/2"));
  const Rational big = Rational(Integer("123456789012345678901234567890"));
  CHECK(to_json(big) == Json("123456789012345678901234567890"));
  CHECK(rational_from_json(to_json(big), "v") == big);
  CHECK(rational_from_json(Json("4/6"), "v") == make_rational(2, 3));
  CHECK_THROWS_AS(rational_from_json(Json(0.5), "v"), Error);
  CHECK_THROWS_AS(rational_from_json(Json("1/0"), "v"), Error);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[[1, 2], [3]]"), "A"), Error);
}

TEST_CASE("game files round-trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Run r = invoke({"gen", "--kind", seed % 2 ? "positive" : "bimatrix", "--rows", "3", "--cols",
                       "4", "--den", "5", "--seed", std::to_string(seed)});
    REQUIRE(r.code == 0);
    const GameFile f = parse_game(r.out);
    CHECK(serialize_game(f) == r.out);
    CHECK(parse_game(serialize_game(f)) == f);
    CHECK(f.decomposition.has_value() == (seed % 2 == 1));
  }
}

TEST_CASE("solve routes") {
  TempDir dir;
  const auto mp = dir.write("mp.json", game_text(matching_pennies()));
  Run r = invoke({"solve", mp});
  REQUIRE(r.code == 0);
  Json j = parse_json(r.out);
  CHECK(j["algorithm"] == "zero-sum");
  CHECK(j["abs_eps"] == Json(0));
  for (const char* key : {"x", "y", "p", "q", "abs_eps", "rel_eps", "qp_residual", "algorithm",
                          "iterations"})
    CHECK(j.contains(key));

  const Run g1 = invoke({"gen", "--kind", "rank1", "--rows", "4", "--cols", "4", "--seed", "5"});
  const auto r1 = dir.write("r1.json", g1.out);
  r = invoke({"solve", r1, "--algo", "rank1"});
  REQUIRE(r.code == 0);
  j = parse_json(r.out);
  CHECK(j["qp_residual"] == Json(0));
  Json prof;
  prof["x"] = j["x"];
  prof["y"] = j["y"];
  const Run v = invoke({"verify", r1, dir.write("prof.json", dump(prof))});
  REQUIRE(v.code == 0);
  CHECK(parse_json(v.out)["abs_eps"] == Json(0));
  CHECK(parse_json(invoke({"solve", r1}).out)["algorithm"] == "rank1");

  const Run big = invoke({"gen", "--kind", "rank", "--rank", "3", "--rows", "12", "--cols", "12"});
  const auto bf = dir.write("big.json", big.out);
  CHECK(invoke({"solve", bf}).code == bilinear::cli::kNoAlgorithm);

  const Run pos = invoke({"gen", "--kind", "positive", "--rows", "4", "--cols", "5", "--seed", "2"});
  const auto pf = dir.write("pos.json", pos.out);
  r = invoke({"solve", pf, "--algo", "fptas-rel", "--eps", "1/2", "--jobs", "2"});
  REQUIRE(r.code == 0);
  CHECK(parse_rational(parse_json(r.out)["rel_eps"].get<std::string>()) <= make_rational(5, 9));
  CHECK(invoke({"solve", pf, "--algo", "fptas-abs"}).code == bilinear::cli::kParseError);
  r = invoke({"solve", pf, "--algo", "fptas-abs", "--eps", "1/4"});
  REQUIRE(r.code == 0);
  CHECK(rational_from_json(parse_json(r.out)["abs_eps"], "abs_eps") <= make_rational(1, 4));
  r = invoke({"solve", pf, "--algo", "low-rank"});
  CHECK(parse_json(r.out)["qp_residual"] == Json(0));
  r = invoke({"solve", pf, "--algo", "oracle"});
  CHECK(parse_json(r.out)["qp_residual"] == Json(0));
  CHECK(invoke({"solve", pf, "--algo", "zero-sum"}).code == bilinear::cli::kValidationError);
}

TEST_CASE("errors map to exit codes") {
  TempDir dir;
  CHECK(invoke({"solve", dir.write("bad.json", "{\"A\": [[1]]")}).code == bilinear::cli::kParseError);
  CHECK(invoke({"solve", dir.write("float.json",
                                R"({"A":[[0.5]],"B":[[1]],"E":[[1]],"F":[[1]],"e":[1],"f":[1]})")})
            .code == bilinear::cli::kParseError);
  CHECK(invoke({"solve", dir.write("open.json",
                                R"({"A":[[1]],"B":[[1]],"E":[[0]],"F":[[1]],"e":[0],"f":[1]})")})
            .code == bilinear::cli::kValidationError);
  CHECK(invoke({"solve", "/nonexistent/game.json"}).code == bilinear::cli::kParseError);
  CHECK(invoke({"frobnicate"}).code == bilinear::cli::kParseError);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("thin wrappers") {
  TempDir dir;
  CHECK(invoke({"rank", dir.write("mp.json", game_text(matching_pennies()))}).out == "0\n");

  const auto one = dir.write("one.json", game_text(from_bimatrix(RatMatrix{{2}}, RatMatrix{{3}})));
  const Json list = parse_json(invoke({"enumerate", one}).out);
  CHECK(list.size() == 1);

  Rng rng(81);
  const auto g = random_bimatrix(rng, 3, 3);
  const auto path = dir.write("g.json", game_text(g));
  const Json all = parse_json(invoke({"enumerate", path}).out);
  CHECK(all.size() == brute_force_equilibria(g).size());
  for (const auto& c : brute_force_equilibria(g)) {
    const auto prof = dir.write("p.json", dump(to_json(c.profile)));
    CHECK(parse_json(invoke({"verify", path, prof}).out)["abs_eps"] == Json(0));
  }
}

TEST_CASE("convert is deterministic and idempotent") {
  TempDir dir;
  for (const char* kind : {"bimatrix", "bayesian", "polymatrix", "ranking-duel", "extensive"}) {
    std::string file = std::string(kind) + ".json";
    if (std::string(kind) == "ranking-duel") file = "ranking_duel.json";
    const Run a = invoke({"convert", kind, data_file(file)});
    REQUIRE(a.code == 0);
    CHECK(invoke({"convert", kind, data_file(file)}).out == a.out);
    CHECK(serialize_game(parse_game(a.out)) == a.out);
    const auto out = dir.write("out.json", "");
    REQUIRE(invoke({"convert", kind, data_file(file), out}).code == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == a.out);
  }
  CHECK(invoke({"convert", "bayesian", data_file("bimatrix.json")}).code == bilinear::cli::kParseError);
}

TEST_CASE("specs serialise back to the same game") {
  const Json b = parse_json(R"({"strategies":[2,1],"payoffs":[[null,[[1],[2]]],[[[0,3]],null]]})");
  const auto spec = polymatrix_from_json(b);
  CHECK(to_json(spec) == b);
  std::ifstream in(data_file("extensive.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  const Json t = parse_json(ss.str());
  CHECK(to_json(tree_from_json(t)) == t);
  std::ifstream bin(data_file("bayesian.json"));
  std::stringstream bs;
  bs << bin.rdbuf();
  const Json bj = parse_json(bs.str());
  CHECK(to_json(bayesian_from_json(bj)) == bj);
}

TEST_CASE("identical invocations give identical output") {
  TempDir dir;
  const auto pf = dir.write("pos.json", invoke({"gen", "--kind", "positive", "--seed", "9"}).out);
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"solve", pf}, {"solve", pf, "--algo", "fptas-rel", "--eps", "1/4"},
        {"solve", pf, "--algo", "fptas-rel", "--eps", "1/4", "--jobs", "3"}, {"enumerate", pf}}) {
    const Run a = invoke(args), b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}
