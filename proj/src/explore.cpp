#include "qclust/explore.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "qclust/errors.hpp"

namespace qclust {

std::string canonical_string(const TorusElement& x) {
  std::ostringstream os;
  for (const auto& [e, c] : x.terms()) {
    os << '{';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ':';
    for (const auto& [ve, vc] : c.terms()) os << ve << '^' << vc << ';';
    os << '}';
  }
  return os.str();
}

namespace {

std::string key_from_parts(const QuantumSeed& s, const std::vector<std::string>& var_keys,
                           const std::vector<std::size_t>* perm) {
  const std::size_t n = s.size();
  auto p = [&](std::size_t i) { return perm ? (*perm)[i] : i; };
  const IndexSet& idx = s.indices();
  std::ostringstream os;
  os << "L";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) os << ' ' << s.L()(p(i), p(j));
  os << "|B";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < idx.num_exchangeable(); ++c)
      os << ' ' << s.B()(p(i), idx.column(p(idx.ex_position(c))));
  for (std::size_t i = 0; i < n; ++i) os << "|x" << var_keys[p(i)];
  return os.str();
}

}  // namespace

std::string canonical_key(const QuantumSeed& s, bool fold) {
  std::vector<std::string> var_keys;
  var_keys.reserve(s.size());
  for (const auto& x : s.vars()) var_keys.push_back(canonical_string(x));
  if (!fold) return key_from_parts(s, var_keys, nullptr);
  std::string best;
  bool first = true;
  for (const auto& perm : exchangeable_permutations(s.indices())) {
    std::string k = key_from_parts(s, var_keys, &perm);
    if (first || k < best) best = std::move(k);
    first = false;
  }
  return best;
}

std::optional<std::size_t> MutationGraph::find(const QuantumSeed& s) const {
  const std::string k = canonical_key(s, relabel_fold);
  auto it = std::find(keys.begin(), keys.end(), k);
  if (it == keys.end()) return std::nullopt;
  return static_cast<std::size_t>(it - keys.begin());
}

namespace {

struct Task {
  std::size_t from;
  std::size_t k;
};

struct TaskResult {
  std::optional<QuantumSeed> seed;
  std::string key;
  std::exception_ptr error;
};

template <class Fn>
void run_parallel(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

MutationGraph mutation_graph(const QuantumSeed& root, const ExploreOptions& opts) {
  MutationGraph g;
  g.relabel_fold = opts.relabel_fold;
  std::unordered_map<std::string, std::size_t> index;

  auto add_node = [&](QuantumSeed s, std::string key, std::size_t depth) {
    if (g.nodes.size() >= opts.max_nodes)
      throw BudgetExceeded("mutation_graph: more than " + std::to_string(opts.max_nodes) + " nodes");
    const std::size_t id = g.nodes.size();
    index.emplace(key, id);
    g.nodes.push_back(std::move(s));
    g.depth.push_back(depth);
    g.keys.push_back(std::move(key));
    return id;
  };
  add_node(root, canonical_key(root, opts.relabel_fold), 0);

  std::vector<std::size_t> level{0};
  for (std::size_t d = 0; d <= opts.depth && !level.empty(); ++d) {
    std::vector<Task> tasks;
    for (auto u : level)
      for (auto k : g.nodes[u].indices().ex_positions()) tasks.push_back({u, k});

    std::vector<TaskResult> results(tasks.size());
    run_parallel(tasks.size(), opts.threads, [&](std::size_t i) {
      try {
        QuantumSeed s = mutate_seed(g.nodes[tasks[i].from], tasks[i].k);
        if (s.var(tasks[i].k).term_count() > opts.max_terms)
          throw BudgetExceeded("mutation_graph: cluster variable exceeds " + std::to_string(opts.max_terms) +
                               " terms");
        results[i].key = canonical_key(s, opts.relabel_fold);
        results[i].seed = std::move(s);
      } catch (...) {
        results[i].error = std::current_exception();
      }
    });

    std::vector<std::size_t> next_level;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (results[i].error) std::rethrow_exception(results[i].error);
      auto it = index.find(results[i].key);
      std::size_t to;
      if (it != index.end()) {
        to = it->second;
      } else if (d < opts.depth) {
        to = add_node(*results[i].seed, results[i].key, d + 1);
        next_level.push_back(to);
      } else {
        continue;
      }
      GraphEdge e{tasks[i].from, tasks[i].k, to, {}};
      if (opts.relabel_fold && !results[i].seed->same_state(g.nodes[to])) {
        auto perm = find_relabeling(*results[i].seed, g.nodes[to]);
        if (!perm) throw InternalMismatch("mutation_graph: equal folded keys without a relabeling");
        e.perm = std::move(*perm);
      }
      g.edges.push_back(std::move(e));
    }
    level = std::move(next_level);
  }
  return g;
}

std::vector<TorusElement> collect_variables(const MutationGraph& g) {
  std::map<std::string, const TorusElement*> seen;
  for (const auto& s : g.nodes)
    for (const auto& x : s.vars()) seen.emplace(canonical_string(x), &x);
  std::vector<TorusElement> out;
  out.reserve(seen.size());
  for (const auto& [k, x] : seen) out.push_back(*x);
  return out;
}

namespace {

// Homomorphic image used by detect_period: v = 1, then X_i -> random points of
// F_p. Mutation becomes x'_k = (prod_{b>0} x_i^b + prod_{b<0} x_i^{-b}) / x_k.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const u128 r = static_cast<u128>(a) * b;
  return static_cast<std::uint64_t>(r % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

struct Fingerprint {
  // values[point][position]; inactive points hit a zero divisor and are dropped.
  std::vector<std::vector<std::uint64_t>> values;
  std::vector<bool> active;

  void mutate(const IndexSet& idx, const IntMatrix& B, std::size_t k) {
    const std::size_t kc = idx.column(k);
    for (std::size_t p = 0; p < values.size(); ++p) {
      if (!active[p]) continue;
      auto& x = values[p];
      if (x[k] == 0) {
        active[p] = false;
        continue;
      }
      std::uint64_t pos = 1, neg = 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const std::int64_t b = B(i, kc);
        if (b > 0) pos = mulmod(pos, powmod(x[i], static_cast<std::uint64_t>(b)));
        if (b < 0) neg = mulmod(neg, powmod(x[i], static_cast<std::uint64_t>(-b)));
      }
      x[k] = mulmod((pos + neg) % kPrime, powmod(x[k], kPrime - 2));
    }
  }

  bool matches(const Fingerprint& o, const std::vector<std::size_t>* perm) const {
    for (std::size_t p = 0; p < values.size(); ++p) {
      if (!active[p]) continue;
      for (std::size_t i = 0; i < values[p].size(); ++i)
        if (values[p][perm ? (*perm)[i] : i] != o.values[p][i]) return false;
    }
    return true;
  }
};

bool pair_matches(const CompatiblePair& cur, const CompatiblePair& ref, const std::vector<std::size_t>* perm) {
  const IndexSet& idx = ref.indices;
  auto p = [&](std::size_t i) { return perm ? (*perm)[i] : i; };
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (cur.L(p(i), p(j)) != ref.L(i, j)) return false;
    for (std::size_t c = 0; c < idx.num_exchangeable(); ++c)
      if (cur.B(p(i), idx.column(p(idx.ex_position(c)))) != ref.B(i, c)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::size_t> detect_period(const QuantumSeed& seed, const std::vector<std::size_t>& sequence,
                                         std::size_t bound, bool fold) {
  if (sequence.empty()) throw ShapeError("detect_period: empty mutation sequence");
  for (auto k : sequence) require_exchangeable(seed.indices(), k);

  std::mt19937_64 rng(0x51ed5eedULL);
  std::uniform_int_distribution<std::uint64_t> point(2, kPrime - 1);
  Fingerprint start;
  // The seed's own cluster is sent to random points, so the images are taken
  // relative to `seed` wherever it sits in the exchange graph. Equal seeds
  // always have equal images.
  for (int p = 0; p < 3; ++p) {
    std::vector<std::uint64_t> x(seed.size());
    for (auto& xi : x) xi = point(rng);
    start.values.push_back(std::move(x));
    start.active.push_back(true);
  }
  const std::vector<std::vector<std::size_t>> perms =
      fold ? exchangeable_permutations(seed.indices()) : std::vector<std::vector<std::size_t>>{};

  Fingerprint fp = start;
  CompatiblePair pair = seed.pair();
  QuantumSeed exact = seed;
  std::size_t exact_steps = 0;

  for (std::size_t t = 1; t <= bound; ++t) {
    const std::size_t k = sequence[(t - 1) % sequence.size()];
    fp.mutate(pair.indices, pair.B, k);
    pair = mutate_pair(pair, k);

    std::vector<const std::vector<std::size_t>*> candidates;
    if (fold) {
      for (const auto& p : perms)
        if (pair_matches(pair, seed.pair(), &p) && fp.matches(start, &p)) candidates.push_back(&p);
    } else if (pair_matches(pair, seed.pair(), nullptr) && fp.matches(start, nullptr)) {
      candidates.push_back(nullptr);
    }
    if (candidates.empty()) continue;

    while (exact_steps < t) {
      exact = mutate_seed(exact, sequence[exact_steps % sequence.size()]);
      ++exact_steps;
    }
    for (const auto* p : candidates)
      if ((p ? relabeled(exact, *p) : exact).same_state(seed)) return t;
  }
  return std::nullopt;
}

AuditReport audit_graph(const MutationGraph& g) {
  AuditReport rep;
  rep.nodes = g.size();
  for (std::size_t u = 0; u < g.size(); ++u) {
    const QuantumSeed& s = g.nodes[u];
    const IndexSet& idx = s.indices();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const TorusElement& x = s.var(i);
      ++rep.variables_checked;
      const std::string where = "node " + std::to_string(u) + ", variable " + std::to_string(idx.label(i));
      if (!x.is_nonneg()) {
        ++rep.positivity_failures;
        rep.failures.push_back(where + ": coefficient outside Z_{>=0}[q^{+-1/2}]");
      }
      if (x.bar() != x) {
        ++rep.bar_failures;
        rep.failures.push_back(where + ": not bar-invariant");
      }
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const auto c = qcommute(x, s.var(j));
        if (!c || *c != s.L()(i, j)) {
          ++rep.commutation_failures;
          rep.failures.push_back(where + ": does not q-commute with variable " + std::to_string(idx.label(j)) +
                                 " as L requires");
        }
      }
    }
  }
  for (const auto& e : g.edges) {
    const QuantumSeed& from = g.nodes[e.from];
    const QuantumSeed& to = g.nodes[e.to];
    std::size_t slot = e.k;
    if (!e.perm.empty()) slot = static_cast<std::size_t>(std::find(e.perm.begin(), e.perm.end(), e.k) - e.perm.begin());
    ++rep.exchange_relations_checked;
    if (from.var(e.k) * to.var(slot) != exchange_numerator(from, e.k)) {
      ++rep.laurent_failures;
      rep.failures.push_back("edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
                             ": exchange relation x_k x'_k = N fails");
    }
  }
  return rep;
}

CommutativeLaurent specialize_at_one(const TorusElement& x) {
  CommutativeLaurent out;
  for (const auto& [e, c] : x.terms()) {
    BigInt v = c.at_one();
    if (!v.is_zero()) out.emplace(e, std::move(v));
  }
  return out;
}

std::string to_dot(const MutationGraph& g) {
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t u = 0; u < g.size(); ++u) {
    os << "  n" << u << " [label=\"" << u << "\\nd=" << g.depth[u] << "\"];\n";
  }
  std::set<std::tuple<std::size_t, std::size_t, Label>> drawn;
  for (const auto& e : g.edges) {
    const Label lab = g.nodes[e.from].indices().label(e.k);
    const auto key = std::make_tuple(std::min(e.from, e.to), std::max(e.from, e.to), lab);
    if (!drawn.insert(key).second) continue;
    os << "  n" << e.from << " -- n" << e.to << " [label=\"" << lab << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace qclust
