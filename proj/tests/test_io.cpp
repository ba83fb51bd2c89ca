#include "troptree/io/csv.hpp"
#include "troptree/io/json.hpp"
#include "troptree/trees/random_trees.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace troptree;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TROPTREE_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rationals serialise as strings and read back") {
  for (const char* s : {"0", "-3", "7/2", "-123456789012345678901234567890/7"}) {
    Rational r = Rational::parse(s);
    Json j = to_json(r);
    CHECK(j.is_string());
    CHECK(rational_from_json(Json::parse(j.dump())) == r);
  }
  CHECK(rational_from_json(Json(5)) == Rational(5));
  CHECK_THROWS(rational_from_json(Json(0.5)));
  CHECK_THROWS(rational_from_json(Json("1/0")));
  CHECK(to_json(ExtRational::neg_infinity()) == Json("-inf"));
}

TEST_CASE("Puiseux polynomials round trip in decreasing exponent order") {
  PuiseuxPoly p = PuiseuxPoly::t_power(Rational(7, 2)) * PuiseuxPoly(3) - PuiseuxPoly::t_power(Rational(-1));
  p += PuiseuxPoly(Rational(1, 5));
  Json j = to_json(p);
  REQUIRE(j.size() == 3u);
  CHECK(j[0]["exponent"] == "7/2");
  CHECK(j[2]["exponent"] == "-1");
  CHECK(puiseux_from_json(Json::parse(j.dump())) == p);
  Json bad = Json::parse(R"([{"exponent": "1", "coefficient": "2"}, {"exponent": "3", "coefficient": "1"}])");
  CHECK_THROWS(puiseux_from_json(bad));
  CHECK_THROWS(puiseux_from_json(Json::object()));
}

TEST_CASE("symbolic coefficients serialise as monomial lists") {
  auto vars = make_variables({"a(r,v)", "b(w,1)"});
  CoeffPoly c = CoeffPoly::variable(vars, "a(r,v)") * CoeffPoly::variable(vars, "a(r,v)") -
                CoeffPoly::variable(vars, "b(w,1)") * Rational(3);
  Json j = to_json(c);
  REQUIRE(j.size() == 2u);
  std::set<std::string> monos;
  for (const auto& rec : j) monos.insert(rec["monomial"].get<std::string>());
  CHECK(monos.contains("a(r,v)^2"));
  CHECK(monos.contains("b(w,1)"));
}

TEST_CASE("m-vectors and matrices round trip") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    WeightedTree t = random_tree(6, seed);
    for (int m : {2, 3, 4}) {
      MVector v = dissimilarity_of_tree(t, m);
      CHECK(mvector_from_json(Json::parse(to_json(v).dump()), 6) == v);
    }
    DissimilarityMatrix d = distance_matrix(t);
    CHECK(matrix_from_json(Json::parse(to_json(d).dump())) == d);
    CHECK(parse_matrix_csv(to_csv(d)) == d);
  }
  CHECK_THROWS(mvector_from_json(Json::array(), 4));
  CHECK_THROWS(mvector_from_json(Json::parse(R"([{"subset": [3, 1], "value": "2"}])"), 4));
  CHECK_THROWS(matrix_from_json(Json::parse(R"([["0", "1"], ["2", "0"]])")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"rows": 2})")));
}

TEST_CASE("tree JSON carries a Newick string that reads back to the same tree") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    WeightedTree t = random_tree(7, seed);
    Json j = to_json(t);
    WeightedTree u = parse_newick(j["newick"].get<std::string>());
    CHECK(tree_digest(u) == j["digest"].get<std::string>());
    CHECK(leaf_distances(u) == leaf_distances(t));
    CHECK(j["edges"].size() == t.edge_count());
    EquidistantTree e = random_equidistant(5, seed);
    Json k = to_json(e);
    CHECK(k["heights"].size() == 4u);
    CHECK(k.contains("root"));
  }
}

TEST_CASE("serialised reports contain no floating point numbers") {
  Json j = to_json(end_to_end_theorem5(parse_newick(example_m5_newick()), 3));
  std::function<void(const Json&)> walk = [&](const Json& x) {
    CHECK_FALSE(x.is_number_float());
    if (x.is_structured())
      for (const auto& y : x) walk(y);
  };
  walk(j);
  CHECK(j["valuation"]["summary"]["all_pass"] == true);
  CHECK(j.dump() == to_json(end_to_end_theorem5(parse_newick(example_m5_newick()), 3)).dump());
}

TEST_CASE("CSV fixtures parse") {
  DissimilarityMatrix d = parse_matrix_csv(read_data("fig4_distances.csv"));
  CHECK(d.size() == 5);
  CHECK(d(1, 3) == Rational(14));
  CHECK(d == distance_matrix(parse_newick(read_data("fig4.nwk"))));
  CHECK(parse_matrix_csv(read_data("perturbed.csv"))(1, 4) == Rational(29));
  CHECK(parse_matrix_csv("# comment\n\n0, 1/2\r\n1/2 ,0\n")(1, 2) == Rational(1, 2));
}

TEST_CASE("CSV errors report line and column") {
  try {
    parse_matrix_csv(read_data("malformed.csv"));
    FAIL("malformed.csv parsed");
  } catch (const CsvError& e) {
    CHECK(e.line() >= 1);
    CHECK(std::string(e.what()).find("not a rational") != std::string::npos);
  }
  try {
    parse_matrix_csv("0,1\n1,zz\n");
    FAIL("parsed");
  } catch (const CsvError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_matrix_csv("0,1\n1,\n"), CsvError);
  CHECK_THROWS_AS(parse_matrix_csv("# only a comment\n"), CsvError);
  CHECK_THROWS_AS(parse_matrix_csv(read_data("nonsymmetric.csv")), CsvError);
  CHECK_THROWS_AS(parse_matrix_csv("0,1,2\n1,0\n"), CsvError);
}
