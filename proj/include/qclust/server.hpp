#pragma once

// Session-based JSON API over the seed engine.
//
//   POST /api/session                 {"seed": {...}} or the seed itself -> {id, state}
//   POST /api/session/{id}/mutate     {"k": label}                       -> state
//   POST /api/session/{id}/undo                                          -> state
//   GET  /api/session/{id}/state                                         -> state
//   GET  /api/session/{id}/audit                                         -> audit report
//   POST /api/session/{id}/decat      {"k": label}                       -> decat report
//
// 400 bad request or direction, 404 unknown session or route, 422 invalid seed.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qclust/ledger.hpp"
#include "qclust/seed.hpp"
#include "qclust/wire.hpp"

namespace qclust {

struct ServerOptions {
  std::chrono::seconds ttl{3600};
  std::size_t max_sessions = 1000;
  /// Term budget for a single new cluster variable.
  std::size_t max_terms = 200000;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
};

struct ApiResponse {
  int status = 200;
  Json body;
};

/// A seed plus its undo stack. The ledger stack runs alongside; an entry is
/// empty once the ledger can no longer follow the seed.
struct Session {
  std::mutex mutex;
  std::vector<QuantumSeed> stack;
  std::vector<std::optional<MonoidalLedger>> ledgers;
  /// steady_clock ticks of the last request; read by the store without the lock.
  std::atomic<std::chrono::steady_clock::rep> last_used{0};
};

class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(ServerOptions opts = {});

  /// Inserts a session and returns its id. Evicts expired sessions first and
  /// then the least recently used one when full.
  std::string create(QuantumSeed seed, std::optional<MonoidalLedger> ledger);
  std::shared_ptr<Session> find(const std::string& id);
  std::size_t size();

  /// Drops sessions idle for longer than the TTL, measured at `now`.
  void evict_expired(Clock::time_point now);

 private:
  std::string fresh_id();

  ServerOptions opts_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
};

/// Routing and request handling without any transport.
class ApiHandler {
 public:
  explicit ApiHandler(ServerOptions opts = {});

  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

  SessionStore& store() noexcept { return store_; }
  const ServerOptions& options() const noexcept { return opts_; }

 private:
  ApiResponse create_session(const std::string& body);
  ApiResponse mutate(Session& s, const std::string& body);
  ApiResponse undo(Session& s);
  ApiResponse decat(Session& s, const std::string& body);

  ServerOptions opts_;
  SessionStore store_;
};

/// The state payload: seed_state_json plus per-variable badges and renderings.
Json session_state_json(const QuantumSeed& s, bool has_ledger);

/// HTTP transport for ApiHandler.
class HttpServer {
 public:
  explicit HttpServer(ServerOptions opts = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  bool listen();
  void stop();
  bool is_running() const;

  ApiHandler& handler();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binds and serves until the process is stopped. Returns false if the socket
/// could not be bound.
bool run_server(const std::string& host, int port, const ServerOptions& opts = {});

}  // namespace qclust
