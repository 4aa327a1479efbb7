#include "geom/matcher.hpp"

#include <httplib.h>
#include <json.hpp>

namespace geom {

namespace {

using nlohmann::json;

json to_json(const ExternalMatcherRequest& request)
{
    json candidates = json::array();
    for (const auto& c : request.candidates) candidates.push_back({{"id", c.id}, {"statement", c.statement}});
    return {
        {"problem_text", request.problem_text},
        {"candidates", candidates},
        {"student_text", request.student_text},
    };
}

ExternalMatcherResponse from_json(const json& body)
{
    ExternalMatcherResponse out;
    out.abstain = body.value("abstain", false);
    if (body.contains("candidates")) {
        for (const auto& c : body.at("candidates")) {
            out.candidates.push_back({c.at("id").get<std::string>(), c.at("score").get<double>()});
        }
    }
    return out;
}

} // namespace

HttpExternalMatcher::HttpExternalMatcher(std::string url, std::chrono::milliseconds timeout, int retries)
    : url_(std::move(url)), timeout_(timeout), retries_(retries)
{
}

ExternalMatcherResponse HttpExternalMatcher::match(const ExternalMatcherRequest& request)
{
    const auto scheme_end = url_.find("://");
    const auto path_start = url_.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = url_.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    const auto payload = to_json(request).dump();

    std::string failure = "no attempt made";
    for (int attempt = 0; attempt <= retries_; ++attempt) {
        auto res = client.Post(path, payload, "application/json");
        if (!res) {
            failure = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            failure = "status " + std::to_string(res->status);
            continue;
        }
        try {
            return from_json(json::parse(res->body));
        } catch (const json::exception& e) {
            failure = std::string("malformed response: ") + e.what();
        }
    }
    throw Error(ErrorCode::ExternalUnavailable, "external matcher at " + url_ + ": " + failure);
}

} // namespace geom
