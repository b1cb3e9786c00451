#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <string>
#include <vector>

#include "qclust/errors.hpp"
#include "qclust/explore.hpp"
#include "qclust/ledger.hpp"
#include "qclust/seed.hpp"
#include "qclust/wire.hpp"

namespace py = pybind11;
using namespace qclust;

namespace {

// Python objects cross the boundary as JSON text, so big integers stay exact
// (coefficients travel as decimal strings).
Json to_cpp(const py::object& obj) {
  const auto dumps = py::module_::import("json").attr("dumps");
  return Json::parse(dumps(obj).cast<std::string>());
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SeedDocument document(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return parse_seed_text(obj.cast<std::string>());
  return parse_seed_document(to_cpp(obj));
}

std::vector<std::size_t> positions(const IndexSet& idx, const std::vector<Label>& labels) {
  std::vector<std::size_t> out;
  for (Label k : labels) {
    auto pos = idx.position(k);
    if (!pos) throw NotExchangeable("direction " + std::to_string(k) + " is not an index of the seed");
    out.push_back(*pos);
  }
  return out;
}

class PySeed {
 public:
  explicit PySeed(const py::object& doc) : seed_(initial_seed(document(doc).pair())) {}
  explicit PySeed(QuantumSeed s) : seed_(std::move(s)) {}

  PySeed mutate(Label k) const { return PySeed(mutate_seed(seed_, positions(seed_.indices(), {k}).front())); }
  PySeed mutate_sequence(const std::vector<Label>& seq) const {
    return PySeed(qclust::mutate_sequence(seed_, positions(seed_.indices(), seq)));
  }
  py::object state() const { return to_py(seed_state_json(seed_)); }
  std::vector<std::string> pretty() const {
    std::vector<std::string> out;
    for (const auto& x : seed_.vars()) out.push_back(x.pretty());
    return out;
  }
  std::vector<std::size_t> term_counts() const {
    std::vector<std::size_t> out;
    for (const auto& x : seed_.vars()) out.push_back(x.term_count());
    return out;
  }
  py::dict audit() const {
    const SeedAudit a = audit_seed(seed_);
    py::dict d;
    d["ok"] = a.ok();
    d["bar_invariant"] = a.bar_invariant;
    d["positive"] = a.positive;
    d["quasi_commuting"] = a.quasi_commuting;
    d["failures"] = a.failures;
    return d;
  }
  std::int64_t d() const { return seed_.pair().d; }
  std::vector<Label> labels() const { return seed_.indices().labels(); }
  std::vector<Label> history() const {
    std::vector<Label> out;
    for (auto k : seed_.history()) out.push_back(seed_.indices().label(k));
    return out;
  }
  bool equals(const PySeed& o) const { return seed_.same_state(o.seed_); }
  const QuantumSeed& seed() const { return seed_; }

 private:
  QuantumSeed seed_;
};

py::dict check(const py::object& obj, bool allow_any_d) {
  const SeedDocument doc = document(obj);
  py::dict out;
  if (auto ledger = doc.ledger()) {
    LedgerOptions opts;
    opts.allow_any_d = allow_any_d;
    const Json r = to_json(check_monoidal(*ledger, opts));
    for (const auto& [k, v] : r.items()) out[py::str(k)] = to_py(v);
    return out;
  }
  try {
    out["ok"] = true;
    out["d"] = doc.pair().d;
    out["violations"] = py::list();
  } catch (const NotCompatible& e) {
    out["ok"] = false;
    py::dict v;
    v["condition"] = "compatibility";
    v["message"] = std::string(e.what());
    py::list vs;
    vs.append(v);
    out["violations"] = vs;
  }
  return out;
}

py::dict explore(const py::object& obj, std::size_t depth, bool fold, bool audit, unsigned threads,
                 std::size_t max_nodes, std::size_t max_terms, bool graph) {
  ExploreOptions opts;
  opts.depth = depth;
  opts.relabel_fold = fold;
  opts.threads = threads;
  opts.max_nodes = max_nodes;
  opts.max_terms = max_terms;
  const QuantumSeed root = initial_seed(document(obj).pair());
  MutationGraph g;
  {
    py::gil_scoped_release release;
    g = mutation_graph(root, opts);
  }
  py::dict out;
  out["nodes"] = g.size();
  out["edges"] = g.edges.size();
  std::vector<std::string> vars;
  for (const auto& x : collect_variables(g)) vars.push_back(x.pretty());
  out["variables"] = vars;
  if (audit) out["audit"] = to_py(to_json(audit_graph(g)));
  if (graph) {
    out["graph"] = to_py(graph_to_json(g));
    out["dot"] = to_dot(g);
  }
  return out;
}

py::object period(const py::object& obj, const std::vector<Label>& seq, std::size_t bound, bool fold) {
  const QuantumSeed s = initial_seed(document(obj).pair());
  const auto t = detect_period(s, positions(s.indices(), seq), bound, fold);
  return t ? py::object(py::int_(*t)) : py::none();
}

py::dict decat(const py::object& obj, Label k) {
  const SeedDocument doc = document(obj);
  const auto ledger = doc.ledger();
  if (!ledger) throw ParseError("document carries no ledger (needs \"Lambda\" or \"gram\")");
  const std::size_t pos = positions(ledger->indices, {k}).front();
  const LedgerMutation m = mutate_ledger(*ledger, pos);
  py::dict out;
  out["report"] = to_py(to_json(m.report, ledger->indices));
  out["decat"] = to_py(to_json(decat_verify(*ledger, pos)));
  out["mutated"] = to_py(ledger_to_json(m.ledger));
  return out;
}

py::object random_pair(std::uint64_t seed, std::size_t min_rank, std::size_t max_rank, std::int64_t target_d) {
  std::mt19937_64 rng(seed);
  RandomPairOptions opts;
  opts.min_rank = min_rank;
  opts.max_rank = max_rank;
  opts.target_d = target_d;
  const CompatiblePair p = random_compatible_pair(rng, opts);
  return to_py(Json{{"indices", to_json(p.indices)}, {"L", to_json(p.L)}, {"B", to_json(p.B)}});
}

}  // namespace

PYBIND11_MODULE(_qclust, m) {
  m.doc() = "Exact quantum cluster algebra computations";

  auto base = py::register_exception<Error>(m, "QclustError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NotCompatible>(m, "NotCompatible", base.ptr());
  py::register_exception<NotExchangeable>(m, "NotExchangeable", base.ptr());
  py::register_exception<NotDivisible>(m, "NotDivisible", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<LedgerInvalid>(m, "LedgerInvalid", base.ptr());

  py::class_<PySeed>(m, "Seed")
      .def(py::init<const py::object&>(), py::arg("doc"), "Initial seed of a seed document (dict or JSON text).")
      .def("mutate", &PySeed::mutate, py::arg("k"), "Mutation in direction k (an index label).")
      .def("mutate_sequence", &PySeed::mutate_sequence, py::arg("seq"))
      .def("state", &PySeed::state, "Wire form: indices, L, B, d, vars, history.")
      .def("pretty", &PySeed::pretty)
      .def("term_counts", &PySeed::term_counts)
      .def("audit", &PySeed::audit)
      .def_property_readonly("d", &PySeed::d)
      .def_property_readonly("labels", &PySeed::labels)
      .def_property_readonly("history", &PySeed::history)
      .def("__eq__", &PySeed::equals)
      .def("__repr__", [](const PySeed& s) {
        std::string r = "<Seed";
        for (const auto& p : s.pretty()) r += " | " + p;
        return r + ">";
      });

  m.def("check", &check, py::arg("doc"), py::arg("allow_any_d") = false,
        "Compatibility of (L, B), or the monoidal conditions when the document is a ledger.");
  m.def("explore", &explore, py::arg("doc"), py::arg("depth"), py::arg("fold") = false, py::arg("audit") = true,
        py::arg("threads") = 1, py::arg("max_nodes") = 100000, py::arg("max_terms") = 200000,
        py::arg("graph") = false);
  m.def("detect_period", &period, py::arg("doc"), py::arg("seq"), py::arg("bound") = 40, py::arg("fold") = false,
        "Period of the cyclic sequence (index labels), or None within the bound.");
  m.def("decat", &decat, py::arg("doc"), py::arg("k"));
  m.def("random_compatible_pair", &random_pair, py::arg("seed"), py::arg("min_rank") = 2, py::arg("max_rank") = 6,
        py::arg("target_d") = 2);
}
