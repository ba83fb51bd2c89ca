#include "troptree/io/json.hpp"
#include "troptree/verify/leading_coeff.hpp"
#include "troptree/verify/pipelines.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace troptree;

namespace {

EquidistantTree fig4() { return EquidistantTree(parse_newick(example_m5_newick())); }

PuiseuxPoly tp(long e) { return PuiseuxPoly::t_power(Rational(e)); }

NodeId named(const WeightedTree& t, const std::string& name) {
  for (NodeId id = 0; id < t.node_count(); ++id)
    if (t.node(id).name == name) return id;
  FAIL("no node named " << name);
  return 0;
}

// Vandermonde product prod_{p<q} (x_q - x_p) over the listed columns of row 1.
PuiseuxPoly vandermonde(const PolyMatrix& m, const std::vector<std::size_t>& cols) {
  PuiseuxPoly out(1);
  for (std::size_t p = 0; p < cols.size(); ++p)
    for (std::size_t q = p + 1; q < cols.size(); ++q) out *= m(1, cols[q]) - m(1, cols[p]);
  return out;
}

}  // namespace

TEST_CASE("leaf series of the example follow the root paths") {
  EquidistantTree t = fig4();
  auto ones = CoefficientAssignment::numeric(t, 1, [](NodeId, int) { return Rational(1); });
  CHECK(leaf_series(t, ones, 1, 1, Rational(1)) == tp(4) + tp(7) + tp(10));
  CHECK(leaf_series(t, ones, 3, 1, Rational(1)) == tp(7) + tp(10));
  CHECK(leaf_series(t, ones, 5, 1, Rational(2)) == tp(12) + tp(20));
  CHECK_THROWS(leaf_series(t, ones, 6, 1, Rational(1)));
  CHECK_THROWS(leaf_series(t, ones, 1, 2, Rational(1)));

  auto sym = CoefficientAssignment::symbolic(t, 2, {"a", "b"});
  PuiseuxPoly x4 = leaf_series(t, sym, 4, 2, Rational(1));
  CHECK(x4.coefficient(Rational(6)) == CoeffPoly::variable(sym.variables(), "b(u,4)"));
  CHECK(x4.coefficient(Rational(10)) == CoeffPoly::variable(sym.variables(), "b(r,u)"));
}

TEST_CASE("differences of leaf series have the lca height as degree") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    EquidistantTree t = random_equidistant(4 + static_cast<int>(seed % 5), seed);
    auto a = CoefficientAssignment::random(t, 1, seed, 1'000'000);
    for (int i = 1; i <= t.leaf_count(); ++i)
      for (int k = i + 1; k <= t.leaf_count(); ++k) {
        PuiseuxPoly diff = leaf_series(t, a, i, 1, Rational(1)) - leaf_series(t, a, k, 1, Rational(1));
        CHECK(diff.degree() == ExtRational(t.height(t.lca(i, k))));
      }
  }
}

TEST_CASE("the three-row determinant is the Vandermonde product") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EquidistantTree t = random_equidistant(5, seed);
    auto a = CoefficientAssignment::random(t, 1, seed, 50);
    WitnessMatrix w = build_ones_row_matrix(t, a, 3, Rational(1));
    for (const auto& s : k_subsets(5, 3)) {
      std::vector<std::size_t> cols;
      for (int l : s) cols.push_back(static_cast<std::size_t>(l - 1));
      CHECK(determinant(w.minor(s)) == vandermonde(w.matrix, cols));
    }
  }
}

TEST_CASE("the four-row determinant expands along its last row into Vandermonde factors") {
  EquidistantTree t = fig4();
  auto a = CoefficientAssignment::symbolic(t, 2, {"a", "b"});
  WitnessMatrix w = build_ones_row_matrix(t, a, 4, Rational(1));
  for (const auto& s : k_subsets(5, 4)) {
    PolyMatrix m = w.minor(s);
    PuiseuxPoly expect;
    for (std::size_t c = 0; c < 4; ++c) {
      std::vector<std::size_t> rest;
      for (std::size_t d = 0; d < 4; ++d)
        if (d != c) rest.push_back(d);
      PuiseuxPoly term = m(3, c) * vandermonde(m, rest);
      if ((3 + c) % 2 == 1) expect -= term;
      else expect += term;
    }
    CHECK(determinant(m) == expect);
  }
}

TEST_CASE("the 4-row witness columns: anchor entries and entry degrees") {
  EquidistantTree t = fig4();
  auto a = CoefficientAssignment::random(t, 2, 5, 1000);
  const Rational e(12);
  WitnessMatrix w = build_thm5_matrix(t, e, a);
  REQUIRE(w.rows() == 4);
  REQUIRE(w.matrix.cols() == 6u);
  CHECK(w.column_labels.back() == 6);
  CHECK(w.matrix(0, 5) == PuiseuxPoly(1));
  CHECK(w.matrix(1, 5) == tp(24));
  CHECK(w.matrix(2, 5) == tp(48));
  CHECK(w.matrix(3, 5) == tp(24));
  for (std::size_t c = 0; c < 5; ++c) {
    // top edge of every leaf path has height 10, doubled by the scale
    CHECK(w.matrix(1, c).degree() == ExtRational(Rational(20)));
    CHECK(w.matrix(2, c).degree() == ExtRational(Rational(40)));
    CHECK(w.matrix(3, c).degree() == ExtRational(Rational(20)));
  }
  CHECK(w.tree_digest == tree_digest(attach_anchor(t, Rational(14))));
  CHECK_THROWS(build_thm5_matrix(t, Rational(9), a));
  CHECK_NOTHROW(build_thm5_matrix(t, Rational(10), a));
}

TEST_CASE("the anchored witness certifies twice the shifted 4-dissimilarities") {
  EquidistantTree t = fig4();
  const Rational e(12);
  WeightedTree anchored = attach_anchor(t, Rational(2) * e - t.root_height());
  auto a = CoefficientAssignment::random(t, 2, 77, 1'000'000'000);
  auto rep = verify_minor_degrees(build_thm5_matrix(t, e, a), dissimilarity_of_tree(anchored, 4), Rational(2));
  CHECK(rep.minors.size() == 15u);
  CHECK(rep.all_pass());
}

TEST_CASE("a zero coefficient assignment is not generic") {
  EquidistantTree t = fig4();
  auto zero = CoefficientAssignment::numeric(t, 2, [](NodeId, int) { return Rational(0); });
  WeightedTree anchored = attach_anchor(t, Rational(14));
  auto rep = verify_minor_degrees(build_thm5_matrix(t, Rational(12), zero), dissimilarity_of_tree(anchored, 4),
                                  Rational(2));
  CHECK(rep.passed() == 0u);
  for (const auto& m : rep.minors) CHECK(m.computed == ExtRational::neg_infinity());
}

TEST_CASE("column rescaling shifts minor degrees additively") {
  EquidistantTree t = random_equidistant(6, 4);
  auto a = CoefficientAssignment::random(t, 2, 4, 1000);
  WitnessMatrix w = build_ones_row_matrix(t, a, 4, Rational(1));
  std::map<int, Rational> first{{1, Rational(3)}, {4, Rational(-1, 2)}}, second{{1, Rational(-1)}, {6, Rational(2)}};
  std::map<int, Rational> both = first;
  for (auto& [k, v] : second) both[k] += v;
  WitnessMatrix twice = rescale_columns(rescale_columns(w, first), second);
  WitnessMatrix once = rescale_columns(w, both);
  CHECK(twice.matrix(0, 0) == once.matrix(0, 0));
  for (const auto& s : k_subsets(6, 4)) {
    PuiseuxPoly base = determinant(w.minor(s));
    Rational shift;
    for (int l : s)
      if (both.contains(l)) shift += both.at(l);
    CHECK(determinant(once.minor(s)) == base.shifted(shift));
    CHECK(determinant(twice.minor(s)) == determinant(once.minor(s)));
  }
  CHECK(once.construction == "ones-row+rescaled");
  CHECK_THROWS(rescale_columns(w, {{9, Rational(1)}}));
}

TEST_CASE("exponent substitution composes and turns degrees into valuations") {
  EquidistantTree t = fig4();
  auto a = CoefficientAssignment::random(t, 2, 8, 1000);
  WitnessMatrix w = build_ones_row_matrix(t, a, 4, Rational(2));
  WitnessMatrix v = to_valuation_witness(w);
  CHECK(v.scale == Rational(-1));
  CHECK(v.construction == "ones-row+valuation");
  WitnessMatrix back = substitute_scale(substitute_scale(w, Rational(-1, 2)), Rational(-2));
  CHECK(back.scale == w.scale);
  for (const auto& s : k_subsets(5, 4)) {
    PuiseuxPoly d = determinant(w.minor(s));
    PuiseuxPoly dv = determinant(v.minor(s));
    CHECK(-dv.valuation() == ExtRational(d.degree().value() / Rational(2)));
    CHECK(determinant(back.minor(s)) == d);
  }
}

TEST_CASE("permuting columns only flips the sign of a minor") {
  EquidistantTree t = fig4();
  auto a = CoefficientAssignment::random(t, 2, 3, 1000);
  WitnessMatrix w = build_ones_row_matrix(t, a, 4, Rational(1));
  WitnessMatrix p = build_ones_row_matrix(t, a, 4, Rational(1), {3, 1, 2, 4, 5});
  for (const auto& s : k_subsets(5, 4)) {
    PuiseuxPoly x = determinant(w.minor(s));
    PuiseuxPoly y = determinant(p.matrix.columns([&] {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < p.column_labels.size(); ++c)
        if (std::find(s.begin(), s.end(), p.column_labels[c]) != s.end()) cols.push_back(c);
      return cols;
    }()));
    CHECK((x == y || x == -y));
    CHECK(determinant(p.minor(s)) == x);
  }
}

TEST_CASE("the full pipeline on the example and on random trees") {
  Theorem5Result r = end_to_end_theorem5(parse_newick(example_m5_newick()), 7);
  CHECK(r.passed());
  CHECK(r.retries == 0);
  CHECK(r.shift_constant == Rational(20));
  CHECK(r.valuation.minors.size() == 5u);
  CHECK(r.valuation.quantity == MinorQuantity::NegValuation);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    WeightedTree t = random_tree(5 + static_cast<int>(seed % 3), seed);
    Theorem5Result s = end_to_end_theorem5(t, seed);
    CHECK(s.passed());
    for (const auto& m : s.valuation.minors) CHECK(m.computed == ExtRational(steiner_weight(t, m.subset)));
  }
  CHECK_THROWS_AS(end_to_end_theorem5(parse_newick(example_m5_newick()), 7, -1), GenericityExhausted);
  CHECK_THROWS(end_to_end_theorem5(parse_newick("(1:1,2:1,3:1);"), 1));
}

TEST_CASE("the pipeline handles zero-length edges") {
  // a zero internal edge (degree-4 node), a zero pendant edge at the anchor
  // leaf, and two coincident leaves farthest from the anchor
  for (const char* nwk : {"((1:1,2:2):0,(3:1,4:3):0,5:2);", "((1:1,2:2):1,(3:1,4:3):2,5:0);",
                          "((1:0,2:0):2,3:1,4:1,5:3);"}) {
    INFO(nwk);
    WeightedTree t = parse_newick(nwk);
    Theorem5Result r = end_to_end_theorem5(t, 11);
    CHECK(r.passed());
  }
}

TEST_CASE("generic heights are valid and differ between the two variants") {
  for (int m = 3; m <= 7; ++m)
    for (const auto& s : enumerate_shapes(m)) {
      auto h0 = generic_heights(s, 0), h1 = generic_heights(s, 1);
      CHECK(h0 != h1);
      CHECK(shape_of(realize_shape(s, h0)) == s);
      CHECK(shape_of(realize_shape(s, h1)) == s);
    }
  CHECK_THROWS(generic_heights(TreeShape("((xx)x)"), 2));
}

TEST_CASE("the square determinant for m = 4 has degree equal to the total length") {
  auto certs = certify_all_shapes(4);
  REQUIRE(certs.size() == 2u);
  for (const auto& c : certs) {
    CHECK(c.certified());
    CHECK(c.primary.homogeneous_degree == 4u);
  }
}

TEST_CASE("m = 5 term counts match the shipped fixture") {
  std::ifstream in(std::string(TROPTREE_DATA_DIR) + "/shapes_m5.txt");
  REQUIRE(in);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string code;
    std::size_t terms = 0;
    ss >> code >> terms;
    ShapeCertificate c = certify_shape(TreeShape(code));
    INFO(code);
    CHECK(c.certified());
    CHECK(c.primary.terms == terms);
    CHECK(c.secondary.terms == terms);
    CHECK(c.primary.homogeneous_degree == 5u);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("numeric determinants never exceed the total length") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    EquidistantTree t = random_equidistant(4 + static_cast<int>(seed % 2), seed);
    // tiny coefficient range: cancellations are likely but the degree bound holds
    auto a = CoefficientAssignment::random(t, t.leaf_count() - 2, seed, 1);
    Conjecture3Result r = conjecture3_run(t, a);
    CHECK(r.degree <= ExtRational(r.total_length));
    CHECK(conjecture3_numeric(t, seed).certified());
  }
}

TEST_CASE("the 5-leaf example with prime coefficients") {
  Conjecture3Result r = example_m5();
  CHECK(r.total_length == Rational(37));
  CHECK(r.degree == ExtRational(Rational(37)));
  REQUIRE(r.leading.is_constant());
  CHECK(r.leading.constant_value() == Rational(3344));
  CHECK(first_primes(24).back() == Rational(89));
  EquidistantTree t = fig4();
  CHECK(t.edges_preorder().size() == example_m5_edge_order().size());
  CHECK_THROWS(assignment_by_edge_names(t, 3, {"(r,v)"}, first_primes(24)));
}

TEST_CASE("without a row of ones the determinant sees the root") {
  RemarkNResult r = remark_N_counterexample(fig4(), {1, 2, 3});
  CHECK(r.steiner == Rational(18));
  CHECK(r.root_inclusive == Rational(21));
  CHECK(r.degree_n == ExtRational(Rational(21)));
  CHECK(r.degree_m == ExtRational(Rational(18)));
  CHECK(r.demonstrates());
  CHECK_THROWS(remark_N_counterexample(fig4(), {1, 2, 4}));
  CHECK_THROWS(remark_N_counterexample(fig4(), {1, 2}));
}

TEST_CASE("top coefficients of the 4-leaf types") {
  for (auto type : {FourLeafType::I, FourLeafType::II, FourLeafType::III}) {
    INFO(type_name(type));
    FormulaCheckResult r = leading_coeff_formula_check(type);
    CHECK(r.passed());
    REQUIRE(r.match() != nullptr);
    CHECK(r.match()->name == "corrected");
    CHECK(r.degree == ExtRational(r.target));
  }
  FormulaCheckResult one = leading_coeff_formula_check(FourLeafType::I);
  for (const auto& rd : one.readings)
    if (rd.name == "literal") CHECK(rd.sign == 0);
  CHECK(parse_four_leaf_type("II") == FourLeafType::II);
  CHECK_THROWS(parse_four_leaf_type("IV"));
}

TEST_CASE("assignments validate their shape") {
  EquidistantTree t = fig4();
  CHECK_THROWS(CoefficientAssignment::from_sequence(t, 2, first_primes(3)));
  CHECK_THROWS(CoefficientAssignment::random(t, 2, 1, 0));
  CHECK_THROWS(CoefficientAssignment::symbolic(t, 2, {"a"}));
  auto a = CoefficientAssignment::random(t, 1, 1, 10);
  CHECK_THROWS(build_ones_row_matrix(t, a, 4, Rational(1)));
  CHECK_THROWS(build_ones_row_matrix(t, CoefficientAssignment::random(t, 2, 1, 10), 4, Rational(1), {1, 2, 3}));
  CHECK_THROWS(build_ones_row_matrix(t, CoefficientAssignment::random(t, 2, 1, 10), 4, Rational(1), {1, 1, 2, 3}));
  EquidistantTree other = random_equidistant(4, 1);
  CHECK_THROWS(build_ones_row_matrix(other, CoefficientAssignment::random(t, 2, 1, 10), 4, Rational(1)));
  auto sym = CoefficientAssignment::symbolic(t, 3);
  CHECK(sym.variables()->size() == 24u);
  CHECK(sym.coefficient(named(t.tree(), "w"), 1) == CoeffPoly::variable(sym.variables(), "a1(v,w)"));
}
