#pragma once

#include "geom/error.hpp"
#include "geom/json_codec.hpp"
#include "geom/matcher.hpp"
#include "geom/ontology.hpp"
#include "geom/validation.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

namespace geom {

struct ServiceConfig {
    bool constructed_mode_enabled = true;
    bool writein_enabled = true;
    std::string external_url; // empty: no external matcher
    bool external_required = false;
    int external_timeout_ms = 10000;
    int port = 8080;
    std::string corpus;
    double auto_accept_threshold = 0.8;
    std::string snapshot_path; // sessions are written here on shutdown when set

    bool operator==(const ServiceConfig&) const = default;
};

// JSON config file; unknown keys, wrong types and a config with both input
// modes disabled raise InvalidConfig.
ServiceConfig parse_service_config(std::string_view text, std::string_view source);
ServiceConfig load_service_config(const std::filesystem::path& path);
void validate_service_config(const ServiceConfig& config);

// GEOM_PORT and GEOM_CORPUS override the file. Throws InvalidConfig on a
// malformed port.
void apply_env_overrides(ServiceConfig& config);

// Every engine error maps to exactly one HTTP status.
int http_status(ErrorCode code);

struct Request {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct Response {
    int status = 200;
    json body;
};

// Routes /api/v1 requests. Thread-safe: requests for different sessions run
// in parallel; a mutation that finds its session busy gets 409 SessionBusy.
class Service {
public:
    Service(std::shared_ptr<const Catalog> catalog, ServiceConfig config);

    Response handle(const Request& request);

    const ServiceConfig& config() const { return config_; }

    // All sessions with their scripts, for the shutdown snapshot.
    json snapshot() const;

private:
    struct Entry {
        std::shared_mutex mutex;
        Session session;
        template <typename... Args>
        explicit Entry(Args&&... args) : session(std::forward<Args>(args)...) {}
    };

    Response route(const Request& request);
    std::shared_ptr<Entry> find_session(const std::string& id) const;

    Response get_problems(const Request& request) const;
    Response get_templates(const std::string& problem_id) const;
    Response post_problem_set(const json& body) const;
    Response post_session(const json& body);
    Response post_line(Entry& entry, const json& body);

    std::shared_ptr<const Catalog> catalog_;
    ServiceConfig config_;
    std::shared_ptr<ExternalMatcher> external_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::atomic<unsigned> next_session_{1};
};

// Serves `service` over HTTP until stop() is called.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Returns the bound port, or nullopt when the port is unavailable.
    std::optional<int> bind(const std::string& host, int port);
    void listen(); // blocks
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace geom
