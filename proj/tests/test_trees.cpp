#include "troptree/trees/equidistant_tree.hpp"
#include "troptree/trees/newick.hpp"
#include "troptree/trees/random_trees.hpp"
#include "troptree/trees/shape.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace troptree;

namespace {

const char* kFig4 = "[&R](((1:4,2:4)w:3,3:7)v:3,(4:6,5:6)u:4)r;";

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TROPTREE_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NodeId named(const WeightedTree& t, const std::string& name) {
  for (NodeId id = 0; id < t.node_count(); ++id)
    if (t.node(id).name == name) return id;
  FAIL("no node named " << name);
  return 0;
}

// An edge belongs to the subtree spanned by the terminals iff it lies on the
// path between some pair of them.
Rational steiner_by_paths(const WeightedTree& t, const std::vector<int>& leaves) {
  std::vector<std::vector<Rational>> dist;
  for (NodeId id = 0; id < t.node_count(); ++id) dist.push_back(node_distances(t, id));
  Rational total;
  for (const auto& e : t.edges()) {
    bool used = false;
    for (int x : leaves)
      for (int y : leaves) {
        NodeId a = t.leaf_node(x), b = t.leaf_node(y);
        if (dist[a][e.a] + e.length + dist[e.b][b] == dist[a][b]) used = true;
      }
    if (used) total += e.length;
  }
  return total;
}

}  // namespace

TEST_CASE("the 5-leaf example tree parses with its distances and lengths") {
  WeightedTree t = parse_newick(kFig4);
  CHECK(t.leaf_count() == 5);
  CHECK(t.is_rooted());
  CHECK(leaf_distance(t, 1, 2) == Rational(8));
  CHECK(leaf_distance(t, 1, 3) == Rational(14));
  CHECK(leaf_distance(t, 1, 4) == Rational(20));
  CHECK(leaf_distance(t, 4, 5) == Rational(12));
  CHECK(t.total_length() == Rational(37));
  CHECK(steiner_weight(t, {1, 2, 3, 4}) == Rational(31));
  CHECK(steiner_weight(t, {1, 2, 3}) == Rational(18));
  CHECK_THROWS(steiner_weight(t, {2, 2}));
  CHECK(parse_newick(read_data("fig4.nwk")).total_length() == Rational(37));
}

TEST_CASE("Steiner weights agree with the path-union oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);
    WeightedTree t = random_tree(n, seed);
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> leaves;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) leaves.push_back(i + 1);
      if (leaves.size() >= 2) REQUIRE(steiner_weight(t, leaves) == steiner_by_paths(t, leaves));
    }
  }
}

TEST_CASE("equidistant heights of the example") {
  EquidistantTree e(parse_newick(kFig4));
  const auto& t = e.tree();
  CHECK(e.height(named(t, "w")) == Rational(4));
  CHECK(e.height(named(t, "v")) == Rational(7));
  CHECK(e.height(named(t, "u")) == Rational(6));
  CHECK(e.root_height() == Rational(10));
  CHECK(t.display_name(e.lca(1, 3)) == "v");
  CHECK(t.display_name(e.lca(std::vector<int>{1, 2})) == "w");
  CHECK(e.lca(std::vector<int>{3, 5}) == e.root());
  CHECK(is_equidistant(t));
  CHECK_FALSE(is_equidistant(parse_newick("[&R]((1:1,2:2)a:1,3:3)r;")));
}

TEST_CASE("pairwise distance is twice the lca height") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    EquidistantTree e = random_equidistant(3 + static_cast<int>(seed % 7), seed);
    for (int i = 1; i <= e.leaf_count(); ++i)
      for (int j = i + 1; j <= e.leaf_count(); ++j)
        CHECK(leaf_distance(e.tree(), i, j) == Rational(2) * e.height(e.lca(i, j)));
  }
}

TEST_CASE("the anchor leaf is equidistant from every old leaf") {
  EquidistantTree e(parse_newick(kFig4));
  WeightedTree a = attach_anchor(e, Rational(13));
  CHECK(a.leaf_count() == 6);
  for (int i = 1; i <= 5; ++i) CHECK(leaf_distance(a, i, 6) == Rational(23));
  CHECK_THROWS_AS(attach_anchor(e, Rational(9)), TreeError);
  EquidistantTree flat = anchor_as_equidistant(e, Rational(10));
  CHECK(flat.root_height() == Rational(10));
  CHECK(flat.children(flat.root()).size() == 3);
  EquidistantTree b = anchor_as_equidistant(e, Rational(13));
  CHECK(b.root_height() == Rational(23, 2));
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 6; ++j) CHECK(leaf_distance(b.tree(), i, j) == leaf_distance(a, i, j));
}

TEST_CASE("shape counts follow the Wedderburn-Etherington numbers") {
  const std::size_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 46, 98};
  for (int m = 1; m <= 10; ++m) CHECK(enumerate_shapes(m).size() == expected[m - 1]);
  CHECK(TreeShape("((xx)x)") == TreeShape("(x(xx))"));
  CHECK_THROWS(TreeShape("(xxx)"));
  CHECK_THROWS(TreeShape("(x"));
  CHECK_THROWS(TreeShape("(xx)x"));
}

TEST_CASE("realised shapes round trip through shape_of") {
  for (int m = 2; m <= 7; ++m)
    for (const auto& s : enumerate_shapes(m)) {
      // preorder puts parents first, so decreasing heights are valid
      std::vector<Rational> h;
      for (int k = 0; k < m - 1; ++k) h.emplace_back(100 - k);
      EquidistantTree probe = realize_shape(s, h);
      CHECK(shape_of(probe) == s);
      CHECK(probe.leaf_count() == m);
      CHECK(internal_heights_preorder(probe).front() == Rational(100));
    }
  CHECK_THROWS_AS(realize_shape(TreeShape("((xx)x)"), {Rational(1), Rational(2)}), TreeError);
  CHECK_THROWS_AS(realize_shape(TreeShape("((xx)x)"), {Rational(1)}), TreeError);
}

TEST_CASE("random trees are deterministic in the seed") {
  CHECK(to_newick(random_tree(8, 42)) == to_newick(random_tree(8, 42)));
  CHECK(to_newick(random_tree(8, 42)) != to_newick(random_tree(8, 43)));
  CHECK(to_newick(random_equidistant(6, 9).tree()) == to_newick(random_equidistant(6, 9).tree()));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    WeightedTree t = random_tree(7, seed);
    CHECK(t.leaf_count() == 7);
    CHECK(t.edge_count() == 11u);
    CHECK(diagnose(t).clean());
  }
  CHECK_THROWS(random_tree(2, 1));
}

TEST_CASE("Newick round trip preserves distances, names and rooting") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    WeightedTree t = random_tree(3 + static_cast<int>(seed % 8), seed);
    WeightedTree u = parse_newick(to_newick(t));
    CHECK(u.is_rooted() == t.is_rooted());
    CHECK(leaf_distances(u) == leaf_distances(t));
    CHECK(tree_digest(u) == tree_digest(t));
    EquidistantTree e = random_equidistant(3 + static_cast<int>(seed % 6), seed);
    WeightedTree v = parse_newick(to_newick(e.tree()));
    CHECK(v.is_rooted());
    CHECK(leaf_distances(v) == leaf_distances(e.tree()));
  }
  WeightedTree t = parse_newick(kFig4);
  CHECK(to_newick(parse_newick(to_newick(t))) == to_newick(t));
  CHECK(parse_newick("(1:1/2,2:0.25,3:3);").total_length() == Rational(15, 4));
}

TEST_CASE("unrooted markers suppress a degree-two top node") {
  WeightedTree t = parse_newick("[&U]((1:1,2:1):2,(3:1,4:1):3);");
  CHECK_FALSE(t.is_rooted());
  CHECK(t.node_count() == 6u);
  CHECK(leaf_distance(t, 1, 3) == Rational(7));
}

TEST_CASE("malformed Newick is rejected with a position") {
  for (const char* bad : {"((1:1,2:1);", "(1:1,2:1", "(1:-1,2:1,3:1);", "(1:1,1:1,2:1);", "(1:1,3:1,4:1);",
                          "(1:a,2:1,3:1);", "", "(1:1,2:1,3:1)x; junk"}) {
    INFO(bad);
    CHECK_THROWS(parse_newick(bad));
  }
  try {
    parse_newick(read_data("bad.nwk"));
    FAIL("bad.nwk parsed");
  } catch (const NewickError& e) {
    CHECK(e.line() >= 1);
    CHECK(e.column() >= 1);
  }
}

TEST_CASE("zero-length edges are diagnosed") {
  WeightedTree t = parse_newick("((1:0,2:1)a:0,3:1,4:1);");
  auto d = diagnose(t);
  CHECK(d.zero_pendant_edges.size() == 1);
  CHECK(d.zero_internal_edges.size() == 1);
  CHECK(d.messages(t).size() == 2);
}
