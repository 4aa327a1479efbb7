#include "geom/cli.hpp"

#include "geom/corpus_io.hpp"
#include "geom/json_codec.hpp"
#include "geom/selector.hpp"
#include "geom/service.hpp"
#include "geom/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <sstream>

namespace geom {

namespace {

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::SchemaVersionMismatch:
    case ErrorCode::LintErrors:
    case ErrorCode::InvalidConfig:
    case ErrorCode::ParseError:
    case ErrorCode::ArityError:
    case ErrorCode::DuplicateId:
    case ErrorCode::EmptyName:
        return kExitIo;
    default:
        return kExitUsage;
    }
}

void print_error(std::ostream& err, const Error& e)
{
    err << "error: " << to_string(e.code()) << ": " << e.what();
    if (!e.where().empty()) err << " (" << e.where() << ")";
    err << "\n";
}

std::string resolve_corpus(const std::string& given)
{
    if (!given.empty()) return given;
    if (const char* env = std::getenv("GEOM_CORPUS"); env && *env) return env;
    throw Error(ErrorCode::InvalidArgument, "no corpus given and GEOM_CORPUS is not set");
}

std::shared_ptr<const Catalog> load_catalog(const std::string& path)
{
    return std::make_shared<const Catalog>(load_corpus(resolve_corpus(path)));
}

// --known takes a comma-separated id list or a file holding a JSON array of
// ids or whitespace/comma separated ids.
std::set<std::string> parse_known(const std::string& value)
{
    std::set<std::string> out;
    std::string text = value;
    std::error_code ec;
    if (!value.empty() && std::filesystem::is_regular_file(value, ec)) {
        text = read_file(value);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '[') {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::parse_error& e) {
                throw Error(ErrorCode::ParseError, std::string("bad known-skill file: ") + e.what(), value);
            }
            for (const auto& v : j) {
                if (!v.is_string()) throw Error(ErrorCode::ParseError, "known-skill file must list strings", value);
                out.insert(v.get<std::string>());
            }
            return out;
        }
    }
    std::replace_if(text.begin(), text.end(), [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); },
                    ' ');
    std::istringstream in(text);
    for (std::string id; in >> id;) out.insert(id);
    return out;
}

std::pair<int, int> parse_band(const std::string& s)
{
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument(s);
        std::size_t used_lo = 0, used_hi = 0;
        const auto lo_text = s.substr(0, colon), hi_text = s.substr(colon + 1);
        const int lo = std::stoi(lo_text, &used_lo);
        const int hi = std::stoi(hi_text, &used_hi);
        if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument(s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidArgument, "--band expects lo:hi, got '" + s + "'");
    }
}

struct LintArgs {
    std::string corpus;
    std::string format = "text";
};

int cmd_lint(const LintArgs& a, std::ostream& out)
{
    const auto catalog = parse_corpus_unchecked(read_file(resolve_corpus(a.corpus)), resolve_corpus(a.corpus));
    const auto diags = lint_catalog(catalog);
    if (a.format == "json") {
        out << dump_canonical(to_json(diags));
    } else {
        out << to_text(diags);
    }
    return count_errors(diags) > 0 ? kExitFindings : kExitOk;
}

struct BuildSetArgs {
    std::string corpus;
    std::string target;
    std::string known;
    int count = 10;
    std::string mode = "strict";
    double ratio = 1.5;
    std::string band;
    std::string format = "text";
    bool reinforce = false;
};

int cmd_build_set(const BuildSetArgs& a, std::ostream& out)
{
    const auto catalog = load_catalog(a.corpus);
    SetRequest req;
    req.target = a.target;
    req.known = parse_known(a.known);
    req.count = a.count;
    auto mode = necessity_mode_from_string(a.mode);
    if (!mode) throw Error(ErrorCode::InvalidArgument, "unknown --mode '" + a.mode + "'");
    req.mode = *mode;
    req.ratio = a.ratio;
    req.reinforce = a.reinforce;
    if (!a.band.empty()) req.difficulty_range = parse_band(a.band);
    const auto report = explain_set(*catalog, req, build_set(*catalog, req));
    if (a.format == "json") {
        out << dump_canonical(to_json(report));
    } else {
        out << to_text(report);
    }
    return kExitOk;
}

struct ValidateArgs {
    std::string corpus;
    std::string script;
    std::optional<int> from;
    std::optional<int> to;
    std::string format = "text";
};

int cmd_validate(const ValidateArgs& a, std::ostream& out)
{
    const auto catalog = load_catalog(a.corpus);
    const auto script = load_script(a.script);
    Session session("cli", catalog, script.problem_id,
                    std::set<std::string>(script.profile.begin(), script.profile.end()));
    for (const auto& line : script.lines) session.submit(line);

    if (a.from || a.to) {
        const int from = a.from.value_or(1);
        const int to = a.to.value_or(static_cast<int>(script.lines.size()));
        const auto verdicts = session.validate_subsequence(from, to);
        json arr = json::array();
        bool review = false;
        for (const auto& v : verdicts) {
            arr.push_back(to_json(v));
            if (!v.matched || v.matched->confidence < MatchConfig{}.auto_accept) review = true;
        }
        if (a.format == "json") {
            out << dump_canonical({{"from", from}, {"to", to}, {"verdicts", arr}});
        } else {
            for (const auto& v : verdicts) {
                out << v.index << "  " << to_string(v.verdict);
                if (!v.notes.empty()) {
                    out << "  [";
                    for (std::size_t i = 0; i < v.notes.size(); ++i) out << (i ? ", " : "") << v.notes[i];
                    out << "]";
                }
                out << "\n";
            }
        }
        return review ? kExitFindings : kExitOk;
    }
    const auto report = session.report();
    if (a.format == "json") {
        out << dump_canonical(to_json(report));
    } else {
        out << to_text(report);
    }
    return report.manual_review ? kExitFindings : kExitOk;
}

struct ServeArgs {
    std::string corpus;
    std::optional<int> port;
    std::string config;
    std::string host = "127.0.0.1";
};

std::atomic<HttpServer*> g_server{nullptr};

extern "C" void on_signal(int)
{
    if (auto* s = g_server.load()) s->stop();
}

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err)
{
    ServiceConfig config;
    try {
        if (!a.config.empty()) config = load_service_config(a.config);
        apply_env_overrides(config);
        if (!a.corpus.empty()) config.corpus = a.corpus;
        if (a.port) config.port = *a.port;
        validate_service_config(config);
    } catch (const Error& e) {
        print_error(err, e);
        return kExitIo;
    }
    if (config.corpus.empty()) {
        err << "error: no corpus given (argument, config 'corpus' or GEOM_CORPUS)\n";
        return kExitUsage;
    }
    std::shared_ptr<const Catalog> catalog;
    try {
        catalog = std::make_shared<const Catalog>(load_corpus(config.corpus));
    } catch (const Error& e) {
        print_error(err, e);
        return kExitIo;
    }
    Service service(catalog, config);
    HttpServer server(service);
    const auto bound = server.bind(a.host, config.port);
    if (!bound) {
        err << "error: cannot bind " << a.host << ":" << config.port << " (port in use or not permitted)\n";
        return kExitIo;
    }
    out << "serving " << catalog->problems().size() << " problems on http://" << a.host << ":" << *bound
        << "/api/v1\n"
        << std::flush;
    g_server = &server;
    auto old_int = std::signal(SIGINT, on_signal);
    auto old_term = std::signal(SIGTERM, on_signal);
    server.listen();
    std::signal(SIGINT, old_int);
    std::signal(SIGTERM, old_term);
    g_server = nullptr;
    if (!config.snapshot_path.empty()) {
        try {
            write_file(config.snapshot_path, dump_canonical(service.snapshot()));
            out << "sessions written to " << config.snapshot_path << "\n";
        } catch (const Error& e) {
            print_error(err, e);
            return kExitIo;
        }
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Euclidean geometry curriculum engine and proof validator", "geom"};
    app.require_subcommand(1);

    LintArgs lint;
    auto* lint_cmd = app.add_subcommand("lint", "Check a corpus for structural and semantic errors");
    lint_cmd->add_option("corpus", lint.corpus, "Corpus JSON file (default: $GEOM_CORPUS)");
    lint_cmd->add_option("--format", lint.format)->check(CLI::IsMember({"text", "json"}));

    BuildSetArgs bs;
    auto* bs_cmd = app.add_subcommand("build-set", "Select practice problems for a target skill");
    bs_cmd->add_option("corpus", bs.corpus, "Corpus JSON file (default: $GEOM_CORPUS)");
    bs_cmd->add_option("--target", bs.target, "Skill to practise")->required();
    bs_cmd->add_option("--known", bs.known, "Known skill ids, comma separated, or a file");
    bs_cmd->add_option("--count", bs.count, "Maximum set size");
    bs_cmd->add_option("--mode", bs.mode)->check(CLI::IsMember({"strict", "efficiency"}));
    bs_cmd->add_option("--ratio", bs.ratio, "Efficiency-mode cost ratio (> 1)");
    bs_cmd->add_option("--band", bs.band, "Difficulty range lo:hi");
    bs_cmd->add_option("--format", bs.format)->check(CLI::IsMember({"text", "json"}));
    bs_cmd->add_flag("--reinforce", bs.reinforce, "Allow a target the student already knows");

    ValidateArgs va;
    auto* va_cmd = app.add_subcommand("validate", "Classify every line of a proof script");
    va_cmd->add_option("corpus", va.corpus, "Corpus JSON file")->required();
    va_cmd->add_option("script", va.script, "Proof script JSON file")->required();
    va_cmd->add_option("--from", va.from, "First line of the subsequence");
    va_cmd->add_option("--to", va.to, "Last line of the subsequence");
    va_cmd->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}));

    ServeArgs sv;
    auto* sv_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    sv_cmd->add_option("corpus", sv.corpus, "Corpus JSON file (default: config or $GEOM_CORPUS)");
    sv_cmd->add_option("--port", sv.port, "TCP port (0 picks a free one)");
    sv_cmd->add_option("--config", sv.config, "JSON config file");
    sv_cmd->add_option("--host", sv.host, "Bind address");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*lint_cmd) return cmd_lint(lint, out);
        if (*bs_cmd) return cmd_build_set(bs, out);
        if (*va_cmd) return cmd_validate(va, out);
        if (*sv_cmd) return cmd_serve(sv, out, err);
    } catch (const LintError& e) {
        print_error(err, e);
        err << to_text(e.diagnostics());
        return kExitIo;
    } catch (const Error& e) {
        print_error(err, e);
        return exit_code_for(e.code());
    }
    return kExitUsage;
}

} // namespace geom
