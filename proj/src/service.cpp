#include "geom/service.hpp"

#include "geom/corpus_io.hpp"
#include "geom/selector.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <regex>

namespace geom {

int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::UnknownProblem:
    case ErrorCode::UnknownSession:
    case ErrorCode::NoSuchLine:
    case ErrorCode::NotFound:
        return 404;
    case ErrorCode::BadIndex:
    case ErrorCode::SessionClosed:
    case ErrorCode::NoFrontier:
    case ErrorCode::SessionBusy:
        return 409;
    case ErrorCode::ParseError:
    case ErrorCode::ArityError:
    case ErrorCode::UnknownSkill:
    case ErrorCode::BadRefs:
    case ErrorCode::BadRange:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NoGraphs:
    case ErrorCode::TargetKnown:
    case ErrorCode::OutOfRange:
    case ErrorCode::DuplicateId:
    case ErrorCode::EmptyName:
    case ErrorCode::UnsupportedFormat:
        return 422;
    case ErrorCode::BadRequest:
        return 400;
    case ErrorCode::ExternalUnavailable:
        return 503;
    case ErrorCode::IoError:
    case ErrorCode::SchemaVersionMismatch:
    case ErrorCode::LintErrors:
    case ErrorCode::InvalidConfig:
        return 500;
    }
    return 500;
}

namespace {

[[noreturn]] void bad_config(const std::string& message, std::string_view source)
{
    throw Error(ErrorCode::InvalidConfig, message, std::string(source));
}

} // namespace

void validate_service_config(const ServiceConfig& config)
{
    if (!config.constructed_mode_enabled && !config.writein_enabled) {
        bad_config("both input modes are disabled; no way to enter a statement", "");
    }
    if (config.port < 0 || config.port > 65535) bad_config("port " + std::to_string(config.port) + " out of range", "");
    if (!(config.auto_accept_threshold >= 0.0 && config.auto_accept_threshold <= 1.0)) {
        bad_config("auto_accept_threshold must lie in [0, 1]", "");
    }
    if (config.external_timeout_ms <= 0) bad_config("external_matcher.timeout_ms must be positive", "");
    if (config.external_required && config.external_url.empty()) {
        bad_config("external_matcher.required is set but no url is configured", "");
    }
}

ServiceConfig parse_service_config(std::string_view text, std::string_view source)
{
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        bad_config(std::string("config is not valid JSON: ") + e.what(), source);
    }
    if (!j.is_object()) bad_config("config must be a JSON object", source);
    ServiceConfig c;
    auto want = [&](const json& v, bool ok, const std::string& key) {
        if (!ok) bad_config("config key '" + key + "' has the wrong type", source);
        return &v;
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "constructed_mode_enabled") {
            c.constructed_mode_enabled = want(v, v.is_boolean(), key)->get<bool>();
        } else if (key == "writein_enabled") {
            c.writein_enabled = want(v, v.is_boolean(), key)->get<bool>();
        } else if (key == "port") {
            c.port = want(v, v.is_number_integer(), key)->get<int>();
        } else if (key == "corpus") {
            c.corpus = want(v, v.is_string(), key)->get<std::string>();
        } else if (key == "auto_accept_threshold") {
            c.auto_accept_threshold = want(v, v.is_number(), key)->get<double>();
        } else if (key == "snapshot_path") {
            c.snapshot_path = want(v, v.is_string(), key)->get<std::string>();
        } else if (key == "external_matcher") {
            want(v, v.is_object() || v.is_null(), key);
            if (v.is_null()) continue;
            for (const auto& [k2, v2] : v.items()) {
                const auto full = key + "." + k2;
                if (k2 == "url") c.external_url = want(v2, v2.is_string(), full)->get<std::string>();
                else if (k2 == "required") c.external_required = want(v2, v2.is_boolean(), full)->get<bool>();
                else if (k2 == "timeout_ms") c.external_timeout_ms = want(v2, v2.is_number_integer(), full)->get<int>();
                else bad_config("unknown config key '" + full + "'", source);
            }
        } else {
            bad_config("unknown config key '" + key + "'", source);
        }
    }
    try {
        validate_service_config(c);
    } catch (const Error& e) {
        bad_config(e.what(), source);
    }
    return c;
}

ServiceConfig load_service_config(const std::filesystem::path& path)
{
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        bad_config(e.what(), path.string());
    }
    return parse_service_config(text, path.string());
}

void apply_env_overrides(ServiceConfig& config)
{
    if (const char* port = std::getenv("GEOM_PORT"); port && *port) {
        int value = 0;
        const std::string_view s(port);
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || end != s.data() + s.size() || value < 0 || value > 65535) {
            bad_config("GEOM_PORT '" + std::string(s) + "' is not a port number", "GEOM_PORT");
        }
        config.port = value;
    }
    if (const char* corpus = std::getenv("GEOM_CORPUS"); corpus && *corpus) config.corpus = corpus;
}

namespace {

[[noreturn]] void bad_request(const std::string& message)
{
    throw Error(ErrorCode::BadRequest, message);
}

json parse_body(const std::string& body)
{
    if (body.empty()) return json::object();
    try {
        auto j = json::parse(body);
        if (!j.is_object()) bad_request("request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        bad_request(std::string("request body is not valid JSON: ") + e.what());
    }
}

std::string body_string(const json& body, const std::string& key, bool required)
{
    if (!body.contains(key)) {
        if (required) bad_request("missing '" + key + "'");
        return {};
    }
    if (!body[key].is_string()) bad_request("'" + key + "' must be a string");
    return body[key].get<std::string>();
}

std::set<std::string> body_string_set(const json& body, const std::string& key)
{
    std::set<std::string> out;
    if (!body.contains(key)) return out;
    if (!body[key].is_array()) bad_request("'" + key + "' must be an array of strings");
    for (const auto& v : body[key]) {
        if (!v.is_string()) bad_request("'" + key + "' must be an array of strings");
        out.insert(v.get<std::string>());
    }
    return out;
}

int parse_int(const std::string& s, const std::string& what)
{
    int value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
        bad_request("'" + what + "' must be an integer, got '" + s + "'");
    }
    return value;
}

std::optional<std::pair<int, int>> parse_band(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    if (auto band = difficulty_band_from_string(s)) {
        const int lo = 1 + 10 * static_cast<int>(*band);
        return std::pair{lo, lo + 9};
    }
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "band must be a band name or lo:hi, got '" + s + "'");
    }
    return std::pair{parse_int(s.substr(0, colon), "band"), parse_int(s.substr(colon + 1), "band")};
}

std::string query_value(const Request& r, const std::string& key)
{
    auto it = r.query.find(key);
    return it == r.query.end() ? std::string() : it->second;
}

Response ok(json body, int status = 200) { return {status, std::move(body)}; }

json verdicts_json(const std::vector<LineVerdict>& verdicts)
{
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(to_json(v));
    return arr;
}

// One template per predicate; slots name the entity kind expected.
json templates_json()
{
    struct Template {
        Predicate p;
        std::vector<std::string> slots;
        std::string pattern;
    };
    const std::vector<Template> templates = {
        {Predicate::Midpoint, {"point", "point", "point"}, "Midpoint({1};{2},{3})"},
        {Predicate::Congruent, {"triangle", "triangle"}, "Congruent(tri {1},tri {2})"},
        {Predicate::Similar, {"triangle", "triangle"}, "Similar(tri {1},tri {2})"},
        {Predicate::Parallel, {"segment", "segment"}, "Parallel({1},{2})"},
        {Predicate::Perpendicular, {"segment", "segment"}, "Perpendicular({1},{2})"},
        {Predicate::EqualLength, {"segment", "segment"}, "EqualLength({1},{2})"},
        {Predicate::EqualAngle, {"angle", "angle"}, "EqualAngle(ang {1},ang {2})"},
        {Predicate::OnCircle, {"point", "circle"}, "OnCircle({1};{2})"},
        {Predicate::Collinear, {"point", "point", "point"}, "Collinear({1},{2},{3})"},
        {Predicate::Concyclic, {"point", "point", "point", "point"}, "Concyclic({1},{2},{3},{4})"},
        {Predicate::Bisects, {"segment", "angle"}, "Bisects({1};ang {2})"},
        {Predicate::RightAngle, {"angle"}, "RightAngle(ang {1})"},
        {Predicate::ProductEqual, {"segment", "segment", "segment", "segment"}, "ProductEqual({1},{2};{3},{4})"},
    };
    json out = json::array();
    for (const auto& t : templates) {
        out.push_back({{"predicate", to_string(t.p)}, {"slots", t.slots}, {"pattern", t.pattern}});
    }
    return out;
}

} // namespace

Service::Service(std::shared_ptr<const Catalog> catalog, ServiceConfig config)
    : catalog_(std::move(catalog)), config_(std::move(config))
{
    validate_service_config(config_);
    if (!config_.external_url.empty()) {
        external_ = std::make_shared<HttpExternalMatcher>(config_.external_url,
                                                          std::chrono::milliseconds(config_.external_timeout_ms));
    }
}

Response Service::handle(const Request& request)
{
    try {
        return route(request);
    } catch (const Error& e) {
        const int status = http_status(e.code());
        return {status, error_to_json(e, status)};
    } catch (const std::exception& e) {
        Error wrapped(ErrorCode::BadRequest, e.what());
        return {400, error_to_json(wrapped, 400)};
    }
}

std::shared_ptr<Service::Entry> Service::find_session(const std::string& id) const
{
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
    return it->second;
}

Response Service::route(const Request& request)
{
    static const std::string prefix = "/api/v1";
    const auto& path = request.path;
    if (path.rfind(prefix, 0) != 0) throw Error(ErrorCode::NotFound, "no route for " + path);
    const auto rest = path.substr(prefix.size());
    const auto& m = request.method;

    static const std::regex problem_re("^/problems/([^/]+)$");
    static const std::regex templates_re("^/problems/([^/]+)/templates$");
    static const std::regex session_re("^/sessions/([^/]+)$");
    static const std::regex lines_re("^/sessions/([^/]+)/lines$");
    static const std::regex line_re("^/sessions/([^/]+)/lines/([^/]+)$");
    static const std::regex action_re("^/sessions/([^/]+)/(hint|report|validate)$");
    std::smatch sm;

    if (m == "GET" && rest == "/skills") {
        json skills = json::array();
        for (const auto& s : catalog_->skills()) skills.push_back(to_json(s));
        return ok({{"skills", skills}});
    }
    if (m == "GET" && rest == "/problems") return get_problems(request);
    if (m == "GET" && rest == "/config") {
        return ok({
            {"constructed_mode_enabled", config_.constructed_mode_enabled},
            {"writein_enabled", config_.writein_enabled},
            {"external_matcher_enabled", external_ != nullptr},
        });
    }
    if (m == "GET" && std::regex_match(rest, sm, problem_re)) {
        const auto* p = catalog_->find_problem(sm[1].str());
        if (!p) throw Error(ErrorCode::UnknownProblem, "unknown problem '" + sm[1].str() + "'");
        auto j = problem_summary_json(*p);
        json givens = json::array();
        for (const auto& g : p->givens) givens.push_back(render(g));
        j["givens"] = givens;
        return ok(j);
    }
    if (m == "GET" && std::regex_match(rest, sm, templates_re)) return get_templates(sm[1].str());
    if (m == "POST" && rest == "/problem-sets") return post_problem_set(parse_body(request.body));
    if (m == "POST" && rest == "/sessions") return post_session(parse_body(request.body));

    if (std::regex_match(rest, sm, lines_re) && m == "POST") {
        auto entry = find_session(sm[1].str());
        std::unique_lock lock(entry->mutex, std::try_to_lock);
        if (!lock) throw Error(ErrorCode::SessionBusy, "session '" + sm[1].str() + "' is busy");
        return post_line(*entry, parse_body(request.body));
    }
    if (std::regex_match(rest, sm, line_re) && m == "DELETE") {
        auto entry = find_session(sm[1].str());
        const int n = parse_int(sm[2].str(), "line");
        std::unique_lock lock(entry->mutex, std::try_to_lock);
        if (!lock) throw Error(ErrorCode::SessionBusy, "session '" + sm[1].str() + "' is busy");
        entry->session.retract(n);
        return ok({{"summary", to_json(entry->session.summary())},
                   {"verdicts", verdicts_json(entry->session.verdicts())}});
    }
    if (std::regex_match(rest, sm, session_re)) {
        auto entry = find_session(sm[1].str());
        if (m == "GET") {
            std::shared_lock lock(entry->mutex);
            return ok({{"session_id", entry->session.id()},
                       {"problem_id", entry->session.problem_id()},
                       {"summary", to_json(entry->session.summary())},
                       {"verdicts", verdicts_json(entry->session.verdicts())}});
        }
        if (m == "DELETE") {
            std::unique_lock lock(entry->mutex, std::try_to_lock);
            if (!lock) throw Error(ErrorCode::SessionBusy, "session '" + sm[1].str() + "' is busy");
            entry->session.abandon();
            return ok({{"summary", to_json(entry->session.summary())}});
        }
    }
    if (std::regex_match(rest, sm, action_re)) {
        auto entry = find_session(sm[1].str());
        const auto action = sm[2].str();
        if (action == "hint" && m == "GET") {
            const auto level_text = query_value(request, "level");
            const int level = level_text.empty() ? 1 : parse_int(level_text, "level");
            std::unique_lock lock(entry->mutex, std::try_to_lock);
            if (!lock) throw Error(ErrorCode::SessionBusy, "session '" + sm[1].str() + "' is busy");
            return ok(to_json(entry->session.next_hint(level)));
        }
        if (action == "report" && m == "GET") {
            std::shared_lock lock(entry->mutex);
            return ok(to_json(entry->session.report()));
        }
        if (action == "validate" && m == "POST") {
            std::shared_lock lock(entry->mutex);
            const auto last = static_cast<int>(entry->session.lines().size());
            const auto from_text = query_value(request, "from");
            const auto to_text = query_value(request, "to");
            const int from = from_text.empty() ? 1 : parse_int(from_text, "from");
            const int to = to_text.empty() ? last : parse_int(to_text, "to");
            return ok({{"from", from}, {"to", to},
                       {"verdicts", verdicts_json(entry->session.validate_subsequence(from, to))}});
        }
    }
    throw Error(ErrorCode::NotFound, "no route for " + m + " " + path);
}

Response Service::get_problems(const Request& request) const
{
    const auto band = query_value(request, "band");
    const auto type = query_value(request, "type");
    const auto attr = query_value(request, "attr");
    std::optional<DifficultyBand> want_band;
    if (!band.empty()) {
        want_band = difficulty_band_from_string(band);
        if (!want_band) throw Error(ErrorCode::InvalidArgument, "unknown band '" + band + "'");
    }
    std::optional<ProblemType> want_type;
    if (!type.empty()) {
        want_type = problem_type_from_string(type);
        if (!want_type) throw Error(ErrorCode::InvalidArgument, "unknown problem type '" + type + "'");
    }
    std::optional<std::pair<Attribute, AttributeValue>> want_attr;
    if (!attr.empty()) {
        const auto colon = attr.find(':');
        const auto name = attr.substr(0, colon);
        auto a = attribute_from_string(name);
        if (!a) throw Error(ErrorCode::InvalidArgument, "unknown attribute '" + name + "'");
        auto v = colon == std::string::npos ? std::optional(AttributeValue::Yes)
                                            : attribute_value_from_string(attr.substr(colon + 1));
        if (!v) throw Error(ErrorCode::InvalidArgument, "unknown attribute value in '" + attr + "'");
        want_attr = std::pair{*a, *v};
    }
    json out = json::array();
    for (const auto& p : catalog_->problems()) {
        if (want_band && (p.difficulty < 1 || p.difficulty > 40 || difficulty_band(p.difficulty) != *want_band)) {
            continue;
        }
        if (want_type && !p.type_flags.get(*want_type)) continue;
        if (want_attr && p.attributes.get(want_attr->first) != want_attr->second) continue;
        out.push_back(problem_summary_json(p));
    }
    return ok({{"problems", out}});
}

Response Service::get_templates(const std::string& problem_id) const
{
    if (!config_.constructed_mode_enabled) throw Error(ErrorCode::NotFound, "constructed mode is disabled");
    const auto* p = catalog_->find_problem(problem_id);
    if (!p) throw Error(ErrorCode::UnknownProblem, "unknown problem '" + problem_id + "'");
    std::set<std::string> points;
    for (const auto& g : p->givens) {
        for (const auto& pt : points_of(g)) points.insert(pt);
    }
    for (const auto* g : catalog_->graphs_of(*p)) {
        for (const auto& s : g->steps) {
            if (const auto* st = std::get_if<Statement>(&s.statement)) {
                for (const auto& pt : points_of(*st)) points.insert(pt);
            }
        }
    }
    return ok({{"problem_id", p->id}, {"points", points}, {"templates", templates_json()}});
}

Response Service::post_problem_set(const json& body) const
{
    SetRequest req;
    req.target = body_string(body, "target", true);
    req.known = body_string_set(body, "known");
    if (body.contains("count")) {
        if (!body["count"].is_number_integer()) bad_request("'count' must be an integer");
        req.count = body["count"].get<int>();
    }
    if (const auto mode = body_string(body, "mode", false); !mode.empty()) {
        auto m = necessity_mode_from_string(mode);
        if (!m) throw Error(ErrorCode::InvalidArgument, "unknown mode '" + mode + "'");
        req.mode = *m;
    }
    if (body.contains("ratio")) {
        if (!body["ratio"].is_number()) bad_request("'ratio' must be a number");
        req.ratio = body["ratio"].get<double>();
    }
    if (body.contains("reinforce")) {
        if (!body["reinforce"].is_boolean()) bad_request("'reinforce' must be a boolean");
        req.reinforce = body["reinforce"].get<bool>();
    }
    req.difficulty_range = parse_band(body_string(body, "band", false));
    const auto set = build_set(*catalog_, req);
    return ok(to_json(explain_set(*catalog_, req, set)));
}

Response Service::post_session(const json& body)
{
    const auto problem_id = body_string(body, "problem_id", true);
    const auto known = body_string_set(body, "known");
    MatchConfig mc;
    mc.auto_accept = config_.auto_accept_threshold;
    mc.strict = !config_.writein_enabled;
    mc.external = external_;
    mc.external_required = config_.external_required;
    const auto id = "s" + std::to_string(next_session_++);
    auto entry = std::make_shared<Entry>(id, catalog_, problem_id, known, mc);
    {
        std::lock_guard lock(sessions_mutex_);
        sessions_.emplace(id, entry);
    }
    return ok({{"session_id", id}, {"summary", to_json(entry->session.summary())}}, 201);
}

Response Service::post_line(Entry& entry, const json& body)
{
    ProofLine line;
    line.statement_text = body_string(body, "statement_text", true);
    line.reason_text = body_string(body, "reason_text", false);
    line.index = static_cast<int>(entry.session.lines().size()) + 1;
    if (body.contains("index")) {
        if (!body["index"].is_number_integer()) bad_request("'index' must be an integer");
        line.index = body["index"].get<int>();
    }
    if (body.contains("refs")) {
        if (!body["refs"].is_array()) bad_request("'refs' must be an array of integers");
        for (const auto& r : body["refs"]) {
            if (!r.is_number_integer()) bad_request("'refs' must be an array of integers");
            line.refs.push_back(r.get<int>());
        }
    }
    if (!config_.writein_enabled && entry.session.status() == SessionStatus::Open &&
        line.index == static_cast<int>(entry.session.lines().size()) + 1) {
        parse_statement(line.statement_text); // strict input: failures surface as 422
    }
    auto verdict = entry.session.submit(std::move(line));
    return ok({{"verdict", to_json(verdict)}, {"summary", to_json(entry.session.summary())}});
}

json Service::snapshot() const
{
    std::vector<std::shared_ptr<Entry>> entries;
    {
        std::lock_guard lock(sessions_mutex_);
        for (const auto& [_, e] : sessions_) entries.push_back(e);
    }
    json sessions = json::array();
    for (const auto& e : entries) {
        std::shared_lock lock(e->mutex);
        json lines = json::array();
        for (const auto& l : e->session.lines()) lines.push_back(to_json(l));
        sessions.push_back({
            {"session_id", e->session.id()},
            {"problem_id", e->session.problem_id()},
            {"profile", e->session.known()},
            {"status", to_string(e->session.status())},
            {"lines", lines},
        });
    }
    return {{"schema_version", kSchemaVersion}, {"sessions", sessions}};
}

struct HttpServer::Impl {
    Service* service;
    httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>())
{
    impl_->service = &service;
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        Request r;
        r.method = req.method;
        r.path = req.path;
        for (const auto& [k, v] : req.params) r.query.emplace(k, v);
        r.body = req.body;
        auto out = impl_->service->handle(r);
        res.status = out.status;
        res.set_content(dump_canonical(out.body), "application/json");
    };
    // httplib defaults to SO_REUSEPORT, which lets a second server share a busy port.
    impl_->server.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    impl_->server.Get(".*", handler);
    impl_->server.Post(".*", handler);
    impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

std::optional<int> HttpServer::bind(const std::string& host, int port)
{
    if (port == 0) {
        const int bound = impl_->server.bind_to_any_port(host);
        if (bound <= 0) return std::nullopt;
        return bound;
    }
    if (!impl_->server.bind_to_port(host, port)) return std::nullopt;
    return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop()
{
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

} // namespace geom
