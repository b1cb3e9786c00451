#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "qclust/server.hpp"

using namespace qclust;

namespace {

const char* kA2 = R"({"seed": {"indices": {"ex": [1, 2], "fr": []}, "L": [[0, -2], [2, 0]], "B": [[0, 1], [-1, 0]]}})";
const char* kF3 = R"({"indices": {"ex": [1], "fr": [2, 3]}, "Lambda": [[0, -4, -2], [4, 0, 0], [2, 0, 0]],
                      "B": [[0], [1], [-1]], "gram": [[2]], "weights": {"1": [-1], "2": [-2], "3": [-2]}})";
const char* kBroken = R"({"indices": {"ex": [1], "fr": [2, 3]}, "Lambda": [[0, -3, -2], [3, 0, 0], [2, 0, 0]],
                          "B": [[0], [1], [-1]], "gram": [[2]], "weights": {"1": [-1], "2": [-2], "3": [-2]}})";

std::string create(ApiHandler& h, const char* seed) {
  const ApiResponse r = h.handle("POST", "/api/session", seed);
  REQUIRE(r.status == 200);
  return r.body["id"].get<std::string>();
}

}  // namespace

TEST_SUITE("server") {

TEST_CASE("A2 session flow") {
  ApiHandler h;
  const ApiResponse created = h.handle("POST", "/api/session", kA2);
  REQUIRE(created.status == 200);
  const std::string id = created.body["id"];
  CHECK(created.body["state"]["vars"].size() == 2);
  CHECK(created.body["state"]["hasLedger"] == false);
  const std::string base = "/api/session/" + id;

  const ApiResponse before = h.handle("GET", base + "/state", "");
  CHECK(before.body == created.body["state"]);

  const ApiResponse m = h.handle("POST", base + "/mutate", R"({"k": 1})");
  REQUIRE(m.status == 200);
  CHECK(m.body["badges"][0]["termCount"] == 2);
  CHECK(m.body["badges"][0]["positive"] == true);
  CHECK(m.body["badges"][0]["barInvariant"] == true);
  CHECK(m.body["history"] == Json::array({1}));

  const ApiResponse audit = h.handle("GET", base + "/audit", "");
  CHECK(audit.status == 200);
  CHECK(audit.body["ok"] == true);

  const ApiResponse u = h.handle("POST", base + "/undo", "");
  REQUIRE(u.status == 200);
  CHECK(u.body.dump() == before.body.dump());
  CHECK(h.handle("POST", base + "/undo", "").status == 400);
}

TEST_CASE("bad directions") {
  ApiHandler h;
  const std::string base = "/api/session/" + create(h, kA2);
  CHECK(h.handle("POST", base + "/mutate", R"({"k": 7})").status == 400);
  CHECK(h.handle("POST", base + "/mutate", R"({"k": "1"})").status == 400);
  CHECK(h.handle("POST", base + "/mutate", R"({)").status == 400);
  CHECK(h.handle("POST", base + "/mutate", "").status == 400);

  const std::string f3 = "/api/session/" + create(h, kF3);
  const ApiResponse frozen = h.handle("POST", f3 + "/mutate", R"({"k": 2})");
  CHECK(frozen.status == 400);
  CHECK(frozen.body["error"].get<std::string>().find("frozen") != std::string::npos);
}

TEST_CASE("routing errors") {
  ApiHandler h;
  CHECK(h.handle("GET", "/api/session/deadbeef/state", "").status == 404);
  CHECK(h.handle("GET", "/nope", "").status == 404);
  CHECK(h.handle("GET", "/api/session", "").status == 405);
  const std::string base = "/api/session/" + create(h, kA2);
  CHECK(h.handle("GET", base + "/mutate", "").status == 404);
  CHECK(h.handle("POST", "/api/session", "{oops").status == 400);
}

TEST_CASE("invalid seeds") {
  ApiHandler h;
  const ApiResponse broken = h.handle("POST", "/api/session", kBroken);
  CHECK(broken.status == 422);
  bool parity = false;
  for (const auto& v : broken.body["violations"]) parity = parity || v["condition"] == "parity";
  CHECK(parity);

  const ApiResponse incompatible =
      h.handle("POST", "/api/session", R"({"indices": {"ex": [1, 2]}, "L": [[0, 2], [-2, 0]], "B": [[0, 1], [-1, 0]]})");
  CHECK(incompatible.status == 422);
  CHECK(incompatible.body["violations"][0]["condition"] == "Compatibility");

  CHECK(h.handle("POST", "/api/session", R"({"indices": {"ex": [1]}})").status == 422);
  CHECK(h.store().size() == 0);
}

TEST_CASE("ledger sessions") {
  ApiHandler h;
  const std::string base = "/api/session/" + create(h, kF3);
  const ApiResponse d = h.handle("POST", base + "/decat", R"({"k": 1})");
  REQUIRE(d.status == 200);
  CHECK(d.body["passed"] == true);
  CHECK(d.body["m_k"] == 0);
  CHECK(d.body["m_k_prime"] == 3);
  CHECK(d.body["mutation"]["delta"] == 1);
  CHECK(d.body["mutation"]["lambda_k_kprime"] == -2);

  CHECK(h.handle("POST", base + "/mutate", R"({"k": 1})").status == 200);
  const ApiResponse d2 = h.handle("POST", base + "/decat", R"({"k": 1})");
  CHECK(d2.status == 200);
  CHECK(d2.body["passed"] == true);

  const std::string a2 = "/api/session/" + create(h, kA2);
  CHECK(h.handle("POST", a2 + "/decat", R"({"k": 1})").status == 400);
}

TEST_CASE("sessions are isolated") {
  ApiHandler h;
  const std::string a = "/api/session/" + create(h, kA2);
  const std::string b = "/api/session/" + create(h, kA2);
  CHECK(a != b);
  h.handle("POST", a + "/mutate", R"({"k": 2})");
  CHECK(h.handle("GET", b + "/state", "").body["history"].empty());
  CHECK(h.handle("GET", a + "/state", "").body["history"] == Json::array({2}));
}

TEST_CASE("eviction") {
  ServerOptions o;
  o.max_sessions = 2;
  ApiHandler h(o);
  const std::string first = create(h, kA2);
  create(h, kA2);
  create(h, kA2);
  CHECK(h.store().size() == 2);
  CHECK(h.handle("GET", "/api/session/" + first + "/state", "").status == 404);

  h.store().evict_expired(SessionStore::Clock::now() + std::chrono::hours(2));
  CHECK(h.store().size() == 0);
}

TEST_CASE("concurrent requests on one session") {
  ApiHandler h;
  const std::string base = "/api/session/" + create(h, kA2);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (int i = 0; i < 10; ++i) h.handle("POST", base + "/mutate", R"({"k": 1})");
    });
  for (auto& t : pool) t.join();
  CHECK(h.handle("GET", base + "/state", "").body["history"].size() == 40);
}

TEST_CASE("HTTP round trip") {
  HttpServer server;
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread t([&] { server.listen(); });
  for (int i = 0; i < 200 && !server.is_running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Post("/api/session", kA2, "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "application/json");
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  const Json body = Json::parse(res->body);
  auto m = cli.Post("/api/session/" + body["id"].get<std::string>() + "/mutate", R"({"k": 1})", "application/json");
  REQUIRE(m);
  CHECK(m->status == 200);
  CHECK(Json::parse(m->body)["badges"][0]["termCount"] == 2);
  auto pre = cli.Options("/api/session");
  REQUIRE(pre);
  CHECK(pre->status == 204);

  server.stop();
  t.join();
}

}
