#include "qclust/wire.hpp"

#include <fstream>
#include <sstream>

#include "qclust/errors.hpp"

namespace qclust {

Json to_json(const VPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e, c.str()}));
  return out;
}

VPoly vpoly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("coefficient must be an array of [exponent, \"integer\"] pairs");
  std::vector<VPoly::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
      throw ParseError("coefficient term must be [exponent, \"integer\"]");
    BigInt c;
    try {
      c = t[1].is_string() ? BigInt(t[1].get<std::string>()) : BigInt(t[1].get<std::int64_t>());
    } catch (const std::exception&) {
      throw ParseError("coefficient is not an integer: " + t[1].dump());
    }
    terms.emplace_back(t[0].get<std::int64_t>(), std::move(c));
  }
  return VPoly::from_terms(std::move(terms));
}

Json to_json(const TorusElement& x) {
  Json out = Json::array();
  for (const auto& [e, c] : x.terms()) out.push_back(Json{{"exp", e.values()}, {"coeff", to_json(c)}});
  return out;
}

TorusElement torus_from_json(const Json& j, TorusPtr torus) {
  if (!j.is_array()) throw ParseError("torus element must be an array of {exp, coeff} terms");
  TorusElement x(std::move(torus));
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coeff")) throw ParseError("torus term needs exp and coeff");
    x.add_term(ExponentVector(t.at("exp").get<std::vector<std::int64_t>>()), vpoly_from_json(t.at("coeff")));
  }
  return x;
}

Json to_json(const IntMatrix& m) { return m.to_rows(); }

IntMatrix matrix_from_json(const Json& j, const std::string& what) {
  try {
    return IntMatrix::from_rows(j.get<std::vector<std::vector<std::int64_t>>>());
  } catch (const Json::exception&) {
    throw ParseError(what + " must be an array of integer rows");
  } catch (const ShapeError&) {
    throw ParseError(what + " has rows of different lengths");
  }
}

Json to_json(const IndexSet& idx) { return Json{{"ex", idx.ex_labels()}, {"fr", idx.fr_labels()}}; }

IndexSet indices_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ex")) throw ParseError("\"indices\" must be an object with \"ex\" and optional \"fr\"");
  try {
    auto ex = j.at("ex").get<std::vector<Label>>();
    auto fr = j.contains("fr") ? j.at("fr").get<std::vector<Label>>() : std::vector<Label>{};
    return IndexSet::from_labels(std::move(ex), std::move(fr));
  } catch (const Json::exception&) {
    throw ParseError("index labels must be integers");
  } catch (const ShapeError& e) {
    throw ParseError(e.what());
  }
}

CompatiblePair SeedDocument::pair() const {
  IntMatrix l = L ? *L : -*Lambda;
  return CompatiblePair::make(indices, std::move(l), B);
}

std::optional<MonoidalLedger> SeedDocument::ledger() const {
  if (!Lambda && !gram) return std::nullopt;
  GramLattice lat{gram ? *gram : IntMatrix(1, 1, 2)};
  std::vector<Weight> D(indices.size(), Weight(lat.rank(), 0));
  for (const auto& [label, w] : weights) D[*indices.position(label)] = w;
  return MonoidalLedger{indices, Lambda ? *Lambda : -*L, B, WeightData{std::move(lat), std::move(D)}};
}

SeedDocument parse_seed_document(const Json& j) {
  if (!j.is_object()) throw ParseError("seed document must be a JSON object");
  if (!j.contains("indices")) throw ParseError("missing \"indices\"");
  if (!j.contains("B")) throw ParseError("missing \"B\"");
  if (!j.contains("L") && !j.contains("Lambda")) throw ParseError("missing \"L\" (or \"Lambda\" for a ledger)");

  SeedDocument doc;
  doc.indices = indices_from_json(j.at("indices"));
  doc.B = matrix_from_json(j.at("B"), "B");
  if (j.contains("L")) doc.L = matrix_from_json(j.at("L"), "L");
  if (j.contains("Lambda")) doc.Lambda = matrix_from_json(j.at("Lambda"), "Lambda");
  if (j.contains("gram")) doc.gram = matrix_from_json(j.at("gram"), "gram");

  const std::size_t n = doc.indices.size();
  if (doc.B.rows() != n || doc.B.cols() != doc.indices.num_exchangeable())
    throw ParseError("B must be |K| x |K_ex| = " + std::to_string(n) + " x " +
                     std::to_string(doc.indices.num_exchangeable()));
  for (const auto* m : {doc.L ? &*doc.L : nullptr, doc.Lambda ? &*doc.Lambda : nullptr})
    if (m && (m->rows() != n || m->cols() != n)) throw ParseError("L/Lambda must be |K| x |K|");
  if (doc.gram && !doc.gram->is_square()) throw ParseError("gram must be square");
  if (doc.L && doc.Lambda && *doc.L != -*doc.Lambda) throw ParseError("L and Lambda given but L != -Lambda");

  if (j.contains("weights")) {
    const Json& w = j.at("weights");
    if (!w.is_object()) throw ParseError("\"weights\" must map index labels to integer vectors");
    const std::size_t rank = doc.gram ? doc.gram->rows() : 1;
    for (const auto& [key, val] : w.items()) {
      Label label = 0;
      try {
        std::size_t used = 0;
        label = std::stoll(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("weight key \"" + key + "\" is not an integer label");
      }
      if (!doc.indices.position(label)) throw ParseError("weight given for unknown index " + key);
      Weight wt;
      try {
        wt = val.get<Weight>();
      } catch (const Json::exception&) {
        throw ParseError("weight of index " + key + " must be an integer vector");
      }
      if (wt.size() != rank) throw ParseError("weight of index " + key + " must have lattice rank " + std::to_string(rank));
      doc.weights[label] = std::move(wt);
    }
  }
  return doc;
}

SeedDocument parse_seed_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  return parse_seed_document(j);
}

SeedDocument load_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_seed_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json seed_state_json(const QuantumSeed& s) {
  const IndexSet& idx = s.indices();
  // One entry per index in ascending label order.
  Json vars = Json::array();
  for (const auto& x : s.vars()) vars.push_back(to_json(x));
  Json history = Json::array();
  for (auto k : s.history()) history.push_back(idx.label(k));
  return Json{{"indices", to_json(idx)}, {"L", to_json(s.L())}, {"B", to_json(s.B())},
              {"d", s.pair().d},         {"vars", std::move(vars)}, {"history", std::move(history)}};
}

Json ledger_to_json(const MonoidalLedger& l) {
  Json weights = Json::object();
  for (std::size_t i = 0; i < l.indices.size(); ++i) weights[std::to_string(l.indices.label(i))] = l.weights.D[i];
  return Json{{"indices", to_json(l.indices)},
              {"Lambda", to_json(l.Lambda)},
              {"B", to_json(l.B)},
              {"gram", to_json(l.weights.lattice.G)},
              {"weights", std::move(weights)}};
}

Json to_json(const MonoidalReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e{{"condition", to_string(x.condition)}, {"message", x.message}};
    if (x.i) e["i"] = *x.i;
    if (x.j) e["j"] = *x.j;
    v.push_back(std::move(e));
  }
  Json out{{"ok", r.ok()}, {"violations", std::move(v)}};
  if (r.d) out["d"] = *r.d;
  return out;
}

Json to_json(const LedgerMutationReport& r, const IndexSet& idx) {
  return Json{{"k", idx.label(r.k)},
              {"zeta", r.zeta},
              {"lambda_k_kprime", r.lambda_k_kprime},
              {"lambda_kprime_k", r.lambda_kprime_k},
              {"delta", r.delta},
              {"tilde_lambda", r.tilde_lambda},
              {"m_k", r.shifts.m},
              {"m_k_prime", r.shifts.m_prime},
              {"cross_check", r.cross_check}};
}

Json to_json(const DecatReport& r) {
  Json out{{"passed", r.passed},
           {"m_k", r.shifts.m},
           {"m_k_prime", r.shifts.m_prime},
           {"shift_gap", r.shift_gap},
           {"gap_matches_delta", r.gap_matches_delta}};
  if (!r.passed) {
    out["failed_identity"] = r.failed_identity;
    out["witness"] = r.witness;
  }
  return out;
}

Json to_json(const AuditReport& r) {
  return Json{{"ok", r.ok()},
              {"nodes", r.nodes},
              {"variables_checked", r.variables_checked},
              {"exchange_relations_checked", r.exchange_relations_checked},
              {"laurent_failures", r.laurent_failures},
              {"positivity_failures", r.positivity_failures},
              {"bar_failures", r.bar_failures},
              {"commutation_failures", r.commutation_failures},
              {"failures", r.failures}};
}

Json graph_to_json(const MutationGraph& g) {
  Json nodes = Json::array();
  for (std::size_t u = 0; u < g.size(); ++u) {
    Json n = seed_state_json(g.nodes[u]);
    n["id"] = u;
    n["depth"] = g.depth[u];
    nodes.push_back(std::move(n));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json j{{"from", e.from}, {"to", e.to}, {"k", g.nodes[e.from].indices().label(e.k)}};
    if (!e.perm.empty()) j["perm"] = e.perm;
    edges.push_back(std::move(j));
  }
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"relabel_fold", g.relabel_fold}};
}

}  // namespace qclust
