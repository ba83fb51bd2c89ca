#pragma once

// JSON forms of the library's values. Rationals are strings "p" or "p/q";
// no floating point is ever written. Key order is insertion order.

#include "troptree/exact/puiseux.hpp"
#include "troptree/metrics/conditions.hpp"
#include "troptree/metrics/dissimilarity.hpp"
#include "troptree/tropical/tropical.hpp"
#include "troptree/trees/equidistant_tree.hpp"
#include "troptree/trees/newick.hpp"
#include "troptree/verify/leading_coeff.hpp"
#include "troptree/verify/pipelines.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }
inline Json to_json(const ExtRational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational as a string or an integer");
}

// Sorted monomial list: [{"monomial": "a1(r,v)^2*b(w,1)", "coefficient": "-3"}, ...].
inline Json to_json(const CoeffPoly& p) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms())
    out.push_back({{"monomial", mono.str(p.variables().get())}, {"coefficient", c.str()}});
  return out;
}

// Records in strictly decreasing exponent order.
inline Json to_json(const PuiseuxPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json coeff = c.is_constant() ? Json(c.constant_value().str()) : to_json(c);
    out.push_back({{"exponent", e.str()}, {"coefficient", coeff}});
  }
  return out;
}

// Numeric coefficients only.
inline PuiseuxPoly puiseux_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("Puiseux polynomial must be a JSON array");
  PuiseuxPoly out;
  std::optional<Rational> previous;
  for (const auto& rec : j) {
    Rational e = rational_from_json(rec.at("exponent"));
    if (previous && !(e < *previous)) throw std::invalid_argument("Puiseux exponents must strictly decrease");
    previous = e;
    out += PuiseuxPoly::monomial(CoeffPoly(rational_from_json(rec.at("coefficient"))), e);
  }
  return out;
}

inline Json to_json(const Subset& s) { return Json(std::vector<int>(s.begin(), s.end())); }

// [{"subset": [1,2,3], "value": "37"}, ...] in lexicographic subset order.
inline Json to_json(const MVector& v) {
  Json out = Json::array();
  for (const auto& [s, x] : v.values()) out.push_back({{"subset", to_json(s)}, {"value", x.str()}});
  return out;
}

inline MVector mvector_from_json(const Json& j, int n) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("m-vector must be a nonempty JSON array");
  const int m = static_cast<int>(j.front().at("subset").size());
  MVector v(n, m);
  for (const auto& rec : j) v.set(rec.at("subset").get<std::vector<int>>(), rational_from_json(rec.at("value")));
  return v;
}

inline Json to_json(const DissimilarityMatrix& d) {
  Json rows = Json::array();
  for (const auto& row : d.rows()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.str());
    rows.push_back(std::move(r));
  }
  return rows;
}

inline DissimilarityMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be a JSON array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw std::invalid_argument("matrix rows must be JSON arrays");
    std::vector<Rational> row;
    for (const auto& x : r) row.push_back(rational_from_json(x));
    rows.push_back(std::move(row));
  }
  return DissimilarityMatrix(rows);
}

inline Json to_json(const WeightedTree& t) {
  Json nodes = Json::array();
  for (NodeId id = 0; id < t.node_count(); ++id) {
    Json n{{"id", id}, {"name", t.display_name(id)}};
    if (t.node(id).leaf) n["leaf"] = *t.node(id).leaf;
    nodes.push_back(std::move(n));
  }
  Json edges = Json::array();
  for (const auto& e : t.edges()) edges.push_back({{"from", e.a}, {"to", e.b}, {"length", e.length.str()}});
  Json out{{"newick", to_newick(t)}, {"digest", tree_digest(t)}, {"nodes", nodes}, {"edges", edges}};
  if (t.root()) out["root"] = *t.root();
  return out;
}

inline Json to_json(const EquidistantTree& t) {
  Json out = to_json(t.tree());
  Json heights = Json::object();
  for (NodeId id = 0; id < t.tree().node_count(); ++id)
    if (!t.tree().is_leaf(id)) heights[t.tree().display_name(id)] = t.height(id).str();
  out["heights"] = heights;
  return out;
}

inline Json to_json(const QuadrupleWitness& w) {
  return {{"indices", w.indices}, {"sums", {w.sums[0].str(), w.sums[1].str(), w.sums[2].str()}}};
}
inline Json to_json(const TripleWitness& w) {
  return {{"indices", w.indices}, {"values", {w.values[0].str(), w.values[1].str(), w.values[2].str()}}};
}
inline Json to_json(const PlueckerWitness& w) {
  return {{"common", to_json(w.common)},
          {"indices", w.indices},
          {"sums", {w.sums[0].str(), w.sums[1].str(), w.sums[2].str()}}};
}

inline Json to_json(const VerificationReport& r) {
  Json minors = Json::array();
  for (const auto& m : r.minors)
    minors.push_back({{"subset", to_json(m.subset)},
                      {"expected", m.expected.str()},
                      {"computed", m.computed.str()},
                      {"leading_coeff_terms", m.leading.term_count()},
                      {"leading_coeff", m.leading.is_constant() ? Json(m.leading.constant_value().str())
                                                                : to_json(m.leading)},
                      {"pass", m.pass}});
  Json out{{"construction", r.construction},
           {"tree_digest", r.tree_digest},
           {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
           {"quantity", r.quantity == MinorQuantity::Degree ? "degree" : "neg_valuation"},
           {"factor", r.factor.str()},
           {"minors", minors},
           {"summary", {{"passed", r.passed()}, {"total", r.minors.size()}, {"all_pass", r.all_pass()}}}};
  return out;
}

inline Json to_json(const Theorem5Result& r) {
  return {{"shift_constant", r.shift_constant.str()},
          {"seed", r.seed},
          {"retries", r.retries},
          {"shifted_tree", r.shifted_tree},
          {"shifted", to_json(r.shifted)},
          {"rescaled", to_json(r.rescaled)},
          {"valuation", to_json(r.valuation)},
          {"pass", r.passed()}};
}

inline Json to_json(const Conjecture3Result& r) {
  Json out{{"tree", r.tree},
           {"m", r.m},
           {"total_length", r.total_length.str()},
           {"degree", r.degree.str()},
           {"degree_matches", r.degree_matches()},
           {"leading_terms", r.terms}};
  if (r.leading.is_constant()) out["leading"] = r.leading.constant_value().str();
  else out["leading"] = to_json(r.leading);
  out["homogeneous_degree"] = r.homogeneous_degree ? Json(*r.homogeneous_degree) : Json(nullptr);
  out["certified"] = r.certified();
  return out;
}

inline Json to_json(const ShapeCertificate& c) {
  return {{"shape", c.shape.code()},
          {"terms", c.primary.terms},
          {"consistent", c.consistent()},
          {"certified", c.certified()},
          {"primary", to_json(c.primary)},
          {"secondary", to_json(c.secondary)}};
}

inline Json to_json(const RemarkNResult& r) {
  return {{"subset", to_json(r.subset)},
          {"steiner", r.steiner.str()},
          {"root_inclusive", r.root_inclusive.str()},
          {"degree_N", r.degree_n.str()},
          {"degree_M", r.degree_m.str()},
          {"demonstrates", r.demonstrates()}};
}

inline Json to_json(const FormulaCheckResult& r) {
  Json readings = Json::array();
  for (const auto& rd : r.readings) readings.push_back({{"reading", rd.name}, {"sign", rd.sign}});
  const auto* m = r.match();
  return {{"type", type_name(r.type)},
          {"tree", r.tree},
          {"target", r.target.str()},
          {"degree", r.degree.str()},
          {"coefficient_terms", r.coefficient.term_count()},
          {"readings", readings},
          {"matching_reading", m ? Json(m->name) : Json(nullptr)},
          {"pass", r.passed()}};
}

}  // namespace troptree
