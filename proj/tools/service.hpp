#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "fraisse/io.hpp"

namespace fraisse::service {

struct Response {
    int status = 200;
    Json body;
};

// Sessions in memory. Each session has its own mutex; the map has another.
class GameService {
public:
    explicit GameService(std::optional<Json> default_bundle = std::nullopt);

    // POST /games {bundle?, mode?, C?, policy?, g_cap?, rounds?}
    Response create(const Json& request);
    // GET /games/{id}
    Response get(const std::string& id);
    // POST /games/{id}/move {pairs, radius?, turn?}; mode "auto" ignores pairs and
    // lets the session's policy move.
    Response move(const std::string& id, const Json& request);
    // DELETE /games/{id}
    Response remove(const std::string& id);

    Response handle(const std::string& method, const std::string& path, const std::string& body);

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& id);

    std::optional<Json> default_bundle_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
};

// HTTP front end for a service. bind() with port 0 picks a free port.
class HttpServer {
public:
    explicit HttpServer(GameService& service);
    ~HttpServer();
    int bind(const std::string& host, int port);  // bound port, or -1
    void run();                                   // blocks until stop()
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Blocks serving HTTP/1.1 on host:port until the process ends; returns non-zero if
// the socket cannot be bound.
int serve(GameService& service, const std::string& host, int port);

}  // namespace fraisse::service
