#include <random>

#include "doctest.h"
#include "qclust/errors.hpp"
#include "qclust/wire.hpp"
#include "support.hpp"

using namespace qclust;

TEST_SUITE("wire") {

TEST_CASE("VPoly round trip with large coefficients") {
  const VPoly p = VPoly::monomial(-3, BigInt(1) << 100) + VPoly::monomial(2, -7);
  const Json j = to_json(p);
  CHECK(j.dump() == R"([[-3,"1267650600228229401496703205376"],[2,"-7"]])");
  CHECK(vpoly_from_json(j) == p);
  CHECK(vpoly_from_json(Json::parse("[[1, 5]]")) == VPoly::monomial(1, 5));
  CHECK_THROWS_AS(vpoly_from_json(Json::parse(R"([[1, "x"]])")), ParseError);
  CHECK_THROWS_AS(vpoly_from_json(Json::parse(R"({"a":1})")), ParseError);
}

TEST_CASE("torus element round trip") {
  std::mt19937_64 rng(51);
  const auto T = make_torus(qtest::random_skew(rng, 3, 2));
  for (int trial = 0; trial < 50; ++trial) {
    const TorusElement x = qtest::random_element(rng, T);
    CHECK(torus_from_json(to_json(x), T) == x);
  }
}

TEST_CASE("seed documents") {
  const SeedDocument doc = parse_seed_text(R"({
    "indices": {"ex": [1], "fr": [2, 3]},
    "Lambda": [[0, -4, -2], [4, 0, 0], [2, 0, 0]],
    "B": [[0], [1], [-1]],
    "gram": [[2]],
    "weights": {"1": [-1], "2": [-2], "3": [-2]}
  })");
  CHECK(doc.pair().d == 2);
  CHECK(doc.pair().L == IntMatrix::from_rows({{0, 4, 2}, {-4, 0, 0}, {-2, 0, 0}}));
  const auto l = doc.ledger();
  REQUIRE(l);
  CHECK(l->weights.D == std::vector<Weight>{{-1}, {-2}, {-2}});
  CHECK(parse_seed_document(ledger_to_json(*l)).ledger() == l);

  const SeedDocument plain = parse_seed_text(R"({"indices": {"ex": [1, 2]}, "L": [[0, -2], [2, 0]], "B": [[0, 1], [-1, 0]]})");
  CHECK_FALSE(plain.ledger().has_value());
}

TEST_CASE("seed document errors") {
  auto err = [](const std::string& text) {
    try {
      parse_seed_text(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(err("{\n  \"indices\": {\"ex\": [1]},\n  \"L\": [[0]] x\n}").find("line 3") != std::string::npos);
  CHECK(err(R"({"L": [[0]], "B": [[0]]})").find("indices") != std::string::npos);
  CHECK(err(R"({"indices": {"ex": [1]}, "B": [[0]]})").find("\"L\"") != std::string::npos);
  CHECK_FALSE(err(R"({"indices": {"ex": [1, 2]}, "L": [[0, 1], [-1, 0]], "B": [[0], [1]]})").empty());
  CHECK_FALSE(err(R"({"indices": {"ex": [1, 1]}, "L": [[0, 1], [-1, 0]], "B": [[0, 1], [1, 0]]})").empty());
  CHECK_FALSE(err(R"({"indices": {"ex": [1, 2]}, "L": [[0, 1], [-1, 0]], "Lambda": [[0, 1], [-1, 0]],
                      "B": [[0, 1], [-1, 0]]})").empty());
  CHECK_FALSE(err(R"({"indices": {"ex": [1, 2]}, "Lambda": [[0, 1], [-1, 0]], "B": [[0, 1], [-1, 0]],
                      "weights": {"3": [0]}})").empty());
  CHECK_FALSE(err(R"({"indices": {"ex": [1, 2]}, "Lambda": [[0, 1], [-1, 0]], "B": [[0, 1], [-1, 0]],
                      "weights": {"1": [0, 0]}})").empty());
  CHECK_THROWS_AS(load_seed_file("/nonexistent/seed.json"), ParseError);
}

TEST_CASE("seed state") {
  const SeedDocument doc = parse_seed_text(R"({"indices": {"ex": [1, 2]}, "L": [[0, -2], [2, 0]], "B": [[0, 1], [-1, 0]]})");
  const QuantumSeed s = mutate_seed(initial_seed(doc.pair()), 0);
  const Json j = seed_state_json(s);
  CHECK(j["history"] == Json::array({1}));
  CHECK(j["d"] == 2);
  CHECK(j["vars"].size() == 2);
  CHECK(j["vars"][0].size() == 2);
  CHECK(j["L"] == Json::parse("[[0,2],[-2,0]]"));
  CHECK(torus_from_json(j["vars"][0], s.initial_torus()) == s.var(0));
}

}
