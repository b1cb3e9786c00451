// qclust: command-line front end.
//
//   qclust check FILE
//   qclust mutate FILE --seq 1,2 [--json]
//   qclust explore FILE --depth N [--audit] [--fold] [--threads T] [--json OUT] [--dot OUT]
//                       [--period 1,2 --bound B]
//   qclust decat FILE --dir k
//   qclust serve [--host H] [--port P]
//
// Exit status: 0 success, 1 validation or parse failure, 2 usage error.
// QCLUST_MAX_NODES and QCLUST_MAX_TERMS override the exploration budgets.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qclust/errors.hpp"
#include "qclust/explore.hpp"
#include "qclust/ledger.hpp"
#include "qclust/seed.hpp"
#include "qclust/server.hpp"
#include "qclust/wire.hpp"

namespace {

using namespace qclust;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t env_budget(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw UsageError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(n);
}

std::string label_text(const IndexSet& idx, std::size_t pos) {
  return std::to_string(idx.label(pos)) + (idx.is_exchangeable(pos) ? "" : "*");
}

std::vector<std::size_t> positions_of(const IndexSet& idx, const std::vector<Label>& labels) {
  std::vector<std::size_t> out;
  for (Label k : labels) {
    auto pos = idx.position(k);
    if (!pos) throw UsageError("direction " + std::to_string(k) + " is not an index of the seed");
    if (!idx.is_exchangeable(*pos)) throw UsageError("direction " + std::to_string(k) + " is frozen");
    out.push_back(*pos);
  }
  return out;
}

void print_matrix(std::ostream& os, const std::string& name, const IntMatrix& m) {
  os << name << ":\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << " ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << ' ' << m(i, j);
    os << '\n';
  }
}

void print_seed(std::ostream& os, const QuantumSeed& s) {
  const IndexSet& idx = s.indices();
  os << "indices:";
  for (std::size_t i = 0; i < idx.size(); ++i) os << ' ' << label_text(idx, i);
  if (idx.num_exchangeable() < idx.size()) os << "   (* frozen)";
  os << "\nhistory:";
  if (s.history().empty()) os << " (initial)";
  for (auto k : s.history()) os << ' ' << idx.label(k);
  os << "\nd = " << s.pair().d << '\n';
  print_matrix(os, "L", s.L());
  print_matrix(os, "B", s.B());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const TorusElement& x = s.var(i);
    os << "x" << label_text(idx, i) << " [" << x.term_count() << (x.term_count() == 1 ? " term" : " terms")
       << "] = " << x.pretty() << '\n';
  }
}

void print_violations(std::ostream& os, const MonoidalReport& rep) {
  for (const auto& v : rep.violations) {
    os << "violation: " << v.message << '\n';
  }
}

int cmd_check(const std::string& file, bool allow_any_d) {
  const SeedDocument doc = load_seed_file(file);
  if (auto ledger = doc.ledger()) {
    LedgerOptions opts;
    opts.allow_any_d = allow_any_d;
    const MonoidalReport rep = check_monoidal(*ledger, opts);
    if (rep.d) std::cout << "compatible, d=" << *rep.d << '\n';
    print_violations(std::cout, rep);
    if (!rep.ok()) return kInvalid;
    std::cout << "monoidal ledger: all conditions hold\n";
    return kOk;
  }
  try {
    const CompatiblePair p = doc.pair();
    std::cout << "compatible, d=" << p.d << '\n';
  } catch (const NotCompatible& e) {
    std::cout << "incompatible: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

int cmd_mutate(const std::string& file, const std::vector<Label>& seq, bool json) {
  const SeedDocument doc = load_seed_file(file);
  const CompatiblePair pair = doc.pair();
  const QuantumSeed s = mutate_sequence(initial_seed(pair), positions_of(pair.indices, seq));
  if (json)
    std::cout << seed_state_json(s).dump(2) << '\n';
  else
    print_seed(std::cout, s);
  return kOk;
}

struct ExploreArgs {
  std::size_t depth = 0;
  bool audit = false;
  bool fold = false;
  unsigned threads = 1;
  std::string json_out;
  std::string dot_out;
  std::vector<Label> period;
  std::size_t bound = 40;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

int cmd_explore(const std::string& file, const ExploreArgs& a) {
  const SeedDocument doc = load_seed_file(file);
  const QuantumSeed root = initial_seed(doc.pair());
  const std::vector<std::size_t> period_seq = positions_of(root.indices(), a.period);

  ExploreOptions opts;
  opts.depth = a.depth;
  opts.relabel_fold = a.fold;
  opts.threads = a.threads;
  opts.max_nodes = env_budget("QCLUST_MAX_NODES", opts.max_nodes);
  opts.max_terms = env_budget("QCLUST_MAX_TERMS", opts.max_terms);

  const MutationGraph g = mutation_graph(root, opts);
  const auto vars = collect_variables(g);
  std::size_t max_terms = 0;
  for (const auto& x : vars) max_terms = std::max(max_terms, x.term_count());
  std::cout << "depth: " << a.depth << (a.fold ? " (relabel fold)" : "") << '\n'
            << "nodes: " << g.size() << '\n'
            << "edges: " << g.edges.size() << '\n'
            << "variables: " << vars.size() << '\n'
            << "largest variable: " << max_terms << " terms\n";

  int status = kOk;
  if (a.audit) {
    const AuditReport rep = audit_graph(g);
    std::cout << "audit: " << (rep.ok() ? "pass" : "FAIL") << " (" << rep.variables_checked << " variables, "
              << rep.exchange_relations_checked << " exchange relations)\n"
              << "  laurent failures: " << rep.laurent_failures << '\n'
              << "  positivity failures: " << rep.positivity_failures << '\n'
              << "  bar failures: " << rep.bar_failures << '\n'
              << "  commutation failures: " << rep.commutation_failures << '\n';
    for (const auto& f : rep.failures) std::cout << "  " << f << '\n';
    if (!rep.ok()) status = kInvalid;
  }
  if (!period_seq.empty()) {
    const auto t = detect_period(root, period_seq, a.bound, a.fold);
    std::cout << "period: ";
    if (t)
      std::cout << *t << '\n';
    else
      std::cout << "none within " << a.bound << '\n';
  }
  if (!a.json_out.empty()) write_file(a.json_out, graph_to_json(g).dump(2) + "\n");
  if (!a.dot_out.empty()) write_file(a.dot_out, to_dot(g));
  return status;
}

int cmd_decat(const std::string& file, Label dir) {
  const SeedDocument doc = load_seed_file(file);
  const auto ledger = doc.ledger();
  if (!ledger) {
    std::cout << "no ledger in " << file << " (needs \"Lambda\" or \"gram\")\n";
    return kInvalid;
  }
  const std::size_t k = positions_of(ledger->indices, {dir}).front();
  const MonoidalReport check = check_monoidal(*ledger);
  if (!check.ok()) {
    print_violations(std::cout, check);
    return kInvalid;
  }

  int status = kOk;
  try {
    const LedgerMutation m = mutate_ledger(*ledger, k);
    const auto& r = m.report;
    std::cout << "direction " << dir << '\n' << "  zeta = wt(M'_k) =";
    for (auto z : r.zeta) std::cout << ' ' << z;
    std::cout << "\n  Lambda(M_k, M'_k) = " << r.lambda_k_kprime << '\n'
              << "  Lambda(M'_k, M_k) = " << r.lambda_kprime_k << '\n'
              << "  delta(M_k, M'_k) = " << r.delta << '\n'
              << "  tilde Lambda(M_k, M'_k) = " << r.tilde_lambda << '\n'
              << "  m_k = " << r.shifts.m << ", m'_k = " << r.shifts.m_prime << '\n'
              << "  cross-check against E^T L E: " << (r.cross_check ? "pass" : "FAIL") << '\n';
    print_matrix(std::cout, "mutated Lambda", m.ledger.Lambda);
  } catch (const Error& e) {
    std::cout << "ledger mutation failed: " << e.what() << '\n';
    status = kInvalid;
  }

  const DecatReport d = decat_verify(*ledger, k);
  std::cout << "exchange identities: " << (d.passed ? "pass" : "FAIL") << '\n';
  if (!d.passed) std::cout << "  identity " << d.failed_identity << " differs at " << d.witness << '\n';
  std::cout << "  q-power gap " << d.shift_gap << (d.gap_matches_delta ? " matches" : " does not match")
            << " delta\n";
  if (!d.passed || !d.gap_matches_delta) status = kInvalid;
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quantum cluster algebra computations"};
  app.require_subcommand(1);

  std::string file;
  auto* check = app.add_subcommand("check", "Validate a seed or ledger file");
  check->add_option("file", file, "Seed or ledger JSON")->required();
  bool allow_any_d = false;
  check->add_flag("--allow-any-d", allow_any_d, "Accept ledgers whose pair has d other than 2");

  std::vector<Label> seq;
  bool json = false;
  auto* mutate = app.add_subcommand("mutate", "Apply a mutation sequence and print the seed");
  mutate->add_option("file", file, "Seed JSON")->required();
  mutate->add_option("--seq", seq, "Comma-separated directions (index labels)")->delimiter(',')->required();
  mutate->add_flag("--json", json, "Print the seed in the JSON wire form");

  ExploreArgs ex;
  auto* explore = app.add_subcommand("explore", "Breadth-first exploration of the exchange graph");
  explore->add_option("file", file, "Seed JSON")->required();
  explore->add_option("--depth", ex.depth, "Maximum number of mutations")->required();
  explore->add_flag("--audit", ex.audit, "Audit every variable and exchange relation");
  explore->add_flag("--fold", ex.fold, "Identify seeds up to relabeling of exchangeable indices");
  explore->add_option("--threads", ex.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  explore->add_option("--json", ex.json_out, "Write the graph as JSON");
  explore->add_option("--dot", ex.dot_out, "Write the graph in Graphviz format");
  explore->add_option("--period", ex.period, "Detect the period of this cyclic sequence")->delimiter(',');
  explore->add_option("--bound", ex.bound, "Search bound for --period");

  Label dir = 0;
  auto* decat = app.add_subcommand("decat", "Mutate a ledger and verify the exchange identities");
  decat->add_option("file", file, "Ledger JSON")->required();
  decat->add_option("--dir", dir, "Mutation direction (index label)")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--host", host, "Interface to bind");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(file, allow_any_d);
    if (*mutate) return cmd_mutate(file, seq, json);
    if (*explore) return cmd_explore(file, ex);
    if (*decat) return cmd_decat(file, dir);
    if (*serve) {
      std::cout << "listening on http://" << host << ':' << port << std::endl;
      if (!run_server(host, port)) {
        std::cerr << "error: cannot bind " << host << ':' << port << '\n';
        return kInvalid;
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const NotCompatible& e) {
    std::cerr << "incompatible: " << e.what() << '\n';
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
