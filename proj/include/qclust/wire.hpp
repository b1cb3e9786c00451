#pragma once

// JSON wire formats shared by the CLI, the HTTP API and the Python module.
//
//   VPoly         [[v_exponent, "coefficient"], ...]            sorted by exponent
//   TorusElement  [{"exp": [..], "coeff": VPoly}, ...]          sorted lex by exp
//   matrices      row-major nested integer arrays
//   seed input    {"indices": {"ex": [..], "fr": [..]}, "L": .., "B": ..,
//                  "gram": .., "weights": {"label": [..]}}
//   ledger input  same, with "Lambda" in place of (or beside) "L"

#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "qclust/explore.hpp"
#include "qclust/ledger.hpp"
#include "qclust/seed.hpp"

namespace qclust {

using Json = nlohmann::json;

Json to_json(const VPoly& p);
VPoly vpoly_from_json(const Json& j);

Json to_json(const TorusElement& x);
TorusElement torus_from_json(const Json& j, TorusPtr torus);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, const std::string& what);

Json to_json(const IndexSet& idx);
IndexSet indices_from_json(const Json& j);

/// A parsed seed or ledger file.
struct SeedDocument {
  IndexSet indices;
  std::optional<IntMatrix> L;
  std::optional<IntMatrix> Lambda;
  IntMatrix B;
  std::optional<IntMatrix> gram;
  std::map<Label, Weight> weights;

  /// (L, B), taking L = -Lambda when only Lambda is given. Validates compatibility.
  CompatiblePair pair() const;
  /// Present when the document carries Lambda or a gram form. Missing weights
  /// default to zero; Lambda defaults to -L.
  std::optional<MonoidalLedger> ledger() const;
};

/// Throws ParseError (with line and column for syntax errors).
SeedDocument parse_seed_document(const Json& j);
SeedDocument parse_seed_text(const std::string& text);
SeedDocument load_seed_file(const std::string& path);

/// Seed input fields plus "vars" and "history" (as labels).
Json seed_state_json(const QuantumSeed& s);
Json ledger_to_json(const MonoidalLedger& l);
Json to_json(const MonoidalReport& r);
Json to_json(const LedgerMutationReport& r, const IndexSet& idx);
Json to_json(const DecatReport& r);
Json to_json(const AuditReport& r);
/// Nodes with seed states, edges with labels.
Json graph_to_json(const MutationGraph& g);

}  // namespace qclust
