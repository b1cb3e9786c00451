#include "qclust/server.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <variant>

#include "httplib.h"
#include "qclust/errors.hpp"

namespace qclust {

namespace {

ApiResponse error(int status, const std::string& message, Json violations = nullptr) {
  Json body{{"error", message}};
  if (!violations.is_null()) body["violations"] = std::move(violations);
  return {status, std::move(body)};
}

Json single_violation(const std::string& condition, const std::string& message) {
  return Json::array({Json{{"condition", condition}, {"message", message}}});
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::optional<Json> parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
}

// Position of the exchangeable label in body["k"], or an error response.
std::variant<std::size_t, ApiResponse> direction(const IndexSet& idx, const std::string& body) {
  auto j = parse_body(body);
  if (!j) return error(400, "request body is not valid JSON");
  if (!j->is_object() || !j->contains("k") || !j->at("k").is_number_integer())
    return error(400, "expected {\"k\": integer index label}");
  const Label k = j->at("k").get<Label>();
  auto pos = idx.position(k);
  if (!pos) return error(400, "index " + std::to_string(k) + " is not in K");
  if (!idx.is_exchangeable(*pos)) return error(400, "index " + std::to_string(k) + " is frozen");
  return *pos;
}

void touch(Session& s) { s.last_used = SessionStore::Clock::now().time_since_epoch().count(); }

}  // namespace

Json session_state_json(const QuantumSeed& s, bool has_ledger) {
  Json state = seed_state_json(s);
  Json badges = Json::array();
  Json pretty = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const TorusElement& x = s.var(i);
    badges.push_back(Json{{"label", s.indices().label(i)},
                          {"barInvariant", x.bar() == x},
                          {"positive", x.is_nonneg()},
                          {"termCount", x.term_count()}});
    pretty.push_back(x.pretty());
  }
  state["badges"] = std::move(badges);
  state["pretty"] = std::move(pretty);
  state["hasLedger"] = has_ledger;
  return state;
}

SessionStore::SessionStore(ServerOptions opts) : opts_(std::move(opts)), rng_(std::random_device{}()) {}

std::string SessionStore::fresh_id() {
  char buf[33];
  for (;;) {
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    if (!sessions_.count(buf)) return buf;
  }
}

void SessionStore::evict_expired(Clock::time_point now) {
  std::lock_guard lock(mutex_);
  const auto cutoff = (now - opts_.ttl).time_since_epoch().count();
  std::erase_if(sessions_, [&](const auto& kv) { return kv.second->last_used.load() < cutoff; });
}

std::string SessionStore::create(QuantumSeed seed, std::optional<MonoidalLedger> ledger) {
  evict_expired(Clock::now());
  auto s = std::make_shared<Session>();
  s->stack.push_back(std::move(seed));
  s->ledgers.push_back(std::move(ledger));
  touch(*s);
  std::lock_guard lock(mutex_);
  while (!sessions_.empty() && sessions_.size() >= opts_.max_sessions) {
    auto oldest = std::min_element(sessions_.begin(), sessions_.end(), [](const auto& a, const auto& b) {
      return a.second->last_used.load() < b.second->last_used.load();
    });
    sessions_.erase(oldest);
  }
  std::string id = fresh_id();
  sessions_.emplace(id, std::move(s));
  return id;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
  evict_expired(Clock::now());
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionStore::size() {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

ApiHandler::ApiHandler(ServerOptions opts) : opts_(opts), store_(std::move(opts)) {}

ApiResponse ApiHandler::handle(const std::string& method, const std::string& path, const std::string& body) {
  const auto parts = split_path(path);
  if (parts.size() < 2 || parts[0] != "api" || parts[1] != "session") return error(404, "no route for " + path);

  try {
    if (parts.size() == 2) {
      if (method != "POST") return error(405, "use POST to create a session");
      return create_session(body);
    }
    auto session = store_.find(parts[2]);
    if (!session) return error(404, "unknown session " + parts[2]);
    if (parts.size() != 4) return error(404, "no route for " + path);

    std::lock_guard lock(session->mutex);
    touch(*session);
    const std::string& verb = parts[3];
    if (verb == "state" && method == "GET")
      return {200, session_state_json(session->stack.back(), session->ledgers.back().has_value())};
    if (verb == "audit" && method == "GET") {
      const SeedAudit a = audit_seed(session->stack.back());
      return {200, Json{{"ok", a.ok()},
                        {"barInvariant", a.bar_invariant},
                        {"positive", a.positive},
                        {"quasiCommuting", a.quasi_commuting},
                        {"failures", a.failures}}};
    }
    if (verb == "mutate" && method == "POST") return mutate(*session, body);
    if (verb == "undo" && method == "POST") return undo(*session);
    if (verb == "decat" && method == "POST") return decat(*session, body);
    return error(404, "no route for " + method + " " + path);
  } catch (const BudgetExceeded& e) {
    return error(422, e.what());
  } catch (const Error& e) {
    return error(500, e.what());
  }
}

ApiResponse ApiHandler::create_session(const std::string& body) {
  auto j = parse_body(body);
  if (!j) return error(400, "request body is not valid JSON");
  const Json& seed_json = (j->is_object() && j->contains("seed")) ? j->at("seed") : *j;

  SeedDocument doc;
  try {
    doc = parse_seed_document(seed_json);
  } catch (const ParseError& e) {
    return error(422, e.what(), single_violation("Parse", e.what()));
  }

  std::optional<MonoidalLedger> ledger = doc.ledger();
  if (ledger) {
    const MonoidalReport rep = check_monoidal(*ledger);
    if (!rep.ok()) return error(422, "ledger fails the monoidal seed conditions", to_json(rep)["violations"]);
  }

  std::optional<CompatiblePair> pair;
  try {
    pair = doc.pair();
  } catch (const NotCompatible& e) {
    Json v{{"condition", "Compatibility"},
           {"i", doc.indices.label(e.row())},
           {"j", doc.indices.label(doc.indices.ex_position(e.col()))},
           {"message", e.what()}};
    return error(422, e.what(), Json::array({std::move(v)}));
  } catch (const ShapeError& e) {
    return error(422, e.what(), single_violation("Shape", e.what()));
  }

  QuantumSeed seed = initial_seed(*pair);
  Json state = session_state_json(seed, ledger.has_value());
  std::string id = store_.create(std::move(seed), std::move(ledger));
  return {200, Json{{"id", std::move(id)}, {"state", std::move(state)}}};
}

ApiResponse ApiHandler::mutate(Session& s, const std::string& body) {
  const QuantumSeed& cur = s.stack.back();
  auto k = direction(cur.indices(), body);
  if (auto* r = std::get_if<ApiResponse>(&k)) return std::move(*r);
  const std::size_t pos = std::get<std::size_t>(k);

  QuantumSeed next = mutate_seed(cur, pos);
  if (next.var(pos).term_count() > opts_.max_terms)
    throw BudgetExceeded("new cluster variable exceeds " + std::to_string(opts_.max_terms) + " terms");

  std::optional<MonoidalLedger> next_ledger;
  if (s.ledgers.back()) {
    try {
      next_ledger = mutate_ledger(*s.ledgers.back(), pos).ledger;
    } catch (const Error&) {
      next_ledger.reset();
    }
  }
  s.stack.push_back(std::move(next));
  s.ledgers.push_back(std::move(next_ledger));
  return {200, session_state_json(s.stack.back(), s.ledgers.back().has_value())};
}

ApiResponse ApiHandler::undo(Session& s) {
  if (s.stack.size() == 1) return error(400, "nothing to undo");
  s.stack.pop_back();
  s.ledgers.pop_back();
  return {200, session_state_json(s.stack.back(), s.ledgers.back().has_value())};
}

ApiResponse ApiHandler::decat(Session& s, const std::string& body) {
  if (!s.ledgers.back()) return error(400, "no ledger attached to the current seed");
  const MonoidalLedger& ledger = *s.ledgers.back();
  auto k = direction(ledger.indices, body);
  if (auto* r = std::get_if<ApiResponse>(&k)) return std::move(*r);
  const std::size_t pos = std::get<std::size_t>(k);

  Json out = to_json(decat_verify(ledger, pos));
  try {
    out["mutation"] = to_json(mutate_ledger(ledger, pos).report, ledger.indices);
  } catch (const Error& e) {
    out["mutation_error"] = e.what();
  }
  return {200, std::move(out)};
}

struct HttpServer::Impl {
  explicit Impl(ServerOptions o) : handler(std::move(o)) {}

  ApiHandler handler;
  httplib::Server http;
};

HttpServer::HttpServer(ServerOptions opts) : impl_(std::make_unique<Impl>(std::move(opts))) {
  const std::string origin = impl_->handler.options().cors_origin;
  impl_->http.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                   {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                   {"Access-Control-Allow-Headers", "Content-Type"}});
  auto serve = [this](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = impl_->handler.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  impl_->http.Get(R"(/.*)", serve);
  impl_->http.Post(R"(/.*)", serve);
  impl_->http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->http.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

bool HttpServer::is_running() const { return impl_->http.is_running(); }

ApiHandler& HttpServer::handler() { return impl_->handler; }

bool run_server(const std::string& host, int port, const ServerOptions& opts) {
  HttpServer server(opts);
  if (server.bind(host, port) < 0) return false;
  return server.listen();
}

}  // namespace qclust
