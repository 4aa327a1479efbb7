#include "geom/statement.hpp"

#include "geom/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <utility>

namespace geom {

namespace {

constexpr std::array<std::string_view, 13> kPredicateNames = {
    "Midpoint",   "Congruent", "Similar",   "Parallel", "Perpendicular",
    "EqualLength", "EqualAngle", "OnCircle", "Collinear", "Concyclic",
    "Bisects",    "RightAngle", "ProductEqual",
};

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Word, Points, Number, Symbol, Unknown, End };

struct Token {
    Tok kind = Tok::End;
    std::string text; // lower-cased for words, raw for points, normalised for symbols
    std::string raw;
    std::size_t pos = 0;
};

bool is_points_run(std::string_view run)
{
    std::size_t i = 0;
    if (run.empty()) return false;
    while (i < run.size()) {
        if (!std::isupper(static_cast<unsigned char>(run[i]))) return false;
        ++i;
        if (i < run.size() && std::isdigit(static_cast<unsigned char>(run[i]))) ++i;
    }
    return true;
}

std::vector<std::string> split_points(std::string_view run)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < run.size()) {
        std::size_t len = 1;
        if (i + 1 < run.size() && std::isdigit(static_cast<unsigned char>(run[i + 1]))) len = 2;
        out.emplace_back(run.substr(i, len));
        i += len;
    }
    return out;
}

struct Glyph {
    std::string_view bytes;
    Tok kind;
    std::string_view text;
};

// Unicode spellings and their ASCII equivalents.
constexpr std::array<Glyph, 9> kGlyphs = {{
    {"\xE2\x96\xB3", Tok::Word, "tri"},    // U+25B3 triangle
    {"\xE2\x88\xA0", Tok::Word, "ang"},    // U+2220 angle
    {"\xE2\x88\xA5", Tok::Symbol, "||"},   // U+2225 parallel
    {"\xE2\x8A\xA5", Tok::Symbol, "perp"}, // U+22A5 perpendicular
    {"\xE2\x89\x85", Tok::Symbol, "~="},   // U+2245 congruent
    {"\xE2\x88\xBC", Tok::Symbol, "~"},    // U+223C similar
    {"\xC3\x97", Tok::Symbol, "x"},        // U+00D7 multiplication
    {"\xC2\xB7", Tok::Symbol, "x"},        // U+00B7 middle dot
    {"\xC2\xB0", Tok::Symbol, "deg"},      // U+00B0 degree
}};

std::size_t utf8_length(unsigned char lead)
{
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 1;
}

std::vector<Token> lex(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalnum(c)) {
            std::size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
            auto run = text.substr(i, j - i);
            Token t;
            t.pos = i;
            t.raw = std::string(run);
            if (std::all_of(run.begin(), run.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                t.kind = Tok::Number;
                t.text = t.raw;
            } else if (is_points_run(run)) {
                t.kind = Tok::Points;
                t.text = t.raw;
            } else {
                t.kind = Tok::Word;
                t.text = lower(run);
            }
            out.push_back(std::move(t));
            i = j;
            continue;
        }
        bool matched = false;
        for (const auto& g : kGlyphs) {
            if (text.substr(i, g.bytes.size()) == g.bytes) {
                out.push_back({g.kind, std::string(g.text), std::string(g.bytes), i});
                i += g.bytes.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        auto two = text.substr(i, 2);
        if (two == "||" || two == "~=") {
            out.push_back({Tok::Symbol, std::string(two), std::string(two), i});
            i += 2;
            continue;
        }
        switch (c) {
        case '(': case ')': case ',': case ';': case '=': case '.': case '~':
            out.push_back({Tok::Symbol, std::string(1, static_cast<char>(c)), std::string(1, static_cast<char>(c)), i});
            ++i;
            continue;
        case '*':
            out.push_back({Tok::Symbol, "x", "*", i});
            ++i;
            continue;
        default:
            break;
        }
        const auto len = std::min(utf8_length(c), text.size() - i);
        out.push_back({Tok::Unknown, std::string(text.substr(i, len)), std::string(text.substr(i, len)), i});
        i += len;
    }
    Token end;
    end.kind = Tok::End;
    end.pos = text.size();
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct RawArg {
    enum class Prefix { None, Tri, Ang, Paren };
    Prefix prefix = Prefix::None;
    std::vector<std::string> points;
    std::string word; // set when the argument is a lower-case word
    std::string raw;
    std::size_t pos = 0;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text), toks_(lex(text)) {}

    ParsedLineText parse_line()
    {
        ParsedLineText out;
        out.raw = std::string(text_);
        const auto& t0 = peek();
        if (t0.kind == Tok::End) fail(t0, {"<statement>"});
        if (t0.kind == Tok::Word && predicate_from_name(t0.text) && peek(1).kind == Tok::Symbol && peek(1).text == "(") {
            out.statement = functional();
        } else {
            out.statement = surface();
        }
        accept_sym(".");
        const auto& rest = peek();
        if (rest.kind != Tok::End) {
            auto tail = std::string(text_.substr(rest.pos));
            while (!tail.empty() && std::isspace(static_cast<unsigned char>(tail.back()))) tail.pop_back();
            out.residue = tail;
        }
        residue_pos_ = rest.pos;
        return out;
    }

    std::size_t residue_pos() const { return residue_pos_; }

private:
    const Token& peek(std::size_t k = 0) const
    {
        return toks_[std::min(cur_ + k, toks_.size() - 1)];
    }

    const Token& next()
    {
        const auto& t = toks_[cur_];
        if (cur_ + 1 < toks_.size()) ++cur_;
        return t;
    }

    [[noreturn]] void fail(const Token& at, std::vector<std::string> expected) const
    {
        std::sort(expected.begin(), expected.end());
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += "'" + expected[i] + "'";
        }
        if (at.kind == Tok::End) {
            msg += " at end of input";
        } else {
            msg += " at offset " + std::to_string(at.pos) + " near '" + at.raw + "'";
        }
        throw ParseError(at.pos, std::move(expected), msg);
    }

    [[noreturn]] void arity(const Token& at, const std::string& what) const
    {
        throw ParseError(at.pos, {}, what + " at offset " + std::to_string(at.pos), ErrorCode::ArityError);
    }

    bool is_word(const Token& t, std::string_view w) const { return t.kind == Tok::Word && t.text == w; }
    bool is_sym(const Token& t, std::string_view s) const { return t.kind == Tok::Symbol && t.text == s; }
    bool is_times(const Token& t) const { return is_sym(t, "x") || is_word(t, "x"); }

    bool accept_word(std::string_view w)
    {
        if (is_word(peek(), w)) {
            next();
            return true;
        }
        return false;
    }

    bool accept_sym(std::string_view s)
    {
        if (is_sym(peek(), s)) {
            next();
            return true;
        }
        return false;
    }

    void expect_word(std::string_view w)
    {
        if (!accept_word(w)) fail(peek(), {std::string(w)});
    }

    void expect_sym(std::string_view s)
    {
        if (!accept_sym(s)) fail(peek(), {std::string(s)});
    }

    std::vector<std::string> take_points(std::size_t count, const std::string& placeholder, const char* what)
    {
        const auto& t = peek();
        if (t.kind != Tok::Points) fail(t, {placeholder});
        auto pts = split_points(t.text);
        if (pts.size() != count) {
            arity(t, std::string(what) + " needs " + std::to_string(count) + " points, got '" + t.raw + "'");
        }
        next();
        return pts;
    }

    Entity point()
    {
        auto pts = take_points(1, "<point>", "a point");
        return Entity::point(pts[0]);
    }

    Entity segment()
    {
        if (accept_word("segment") || accept_word("side") || accept_word("seg") || accept_word("line")) {
            auto p = take_points(2, "<segment>", "a segment");
            return Entity::segment(p[0], p[1]);
        }
        const auto& t = peek();
        if (t.kind != Tok::Points) fail(t, {"<segment>", "line", "segment", "side"});
        auto p = take_points(2, "<segment>", "a segment");
        return Entity::segment(p[0], p[1]);
    }

    Entity angle()
    {
        if (!(accept_word("angle") || accept_word("ang"))) fail(peek(), {"angle"});
        auto p = take_points(3, "<angle>", "an angle");
        return Entity::angle(p[0], p[1], p[2]);
    }

    Entity triangle(bool prefix_required)
    {
        const bool had_prefix = accept_word("triangle") || accept_word("tri");
        if (!had_prefix && prefix_required) fail(peek(), {"triangle"});
        auto p = take_points(3, "<triangle>", "a triangle");
        return Entity::triangle(p[0], p[1], p[2]);
    }

    Entity circle()
    {
        expect_word("circle");
        const auto& t = peek();
        if (t.kind != Tok::Word && t.kind != Tok::Points) fail(t, {"<circle>"});
        next();
        return Entity::circle(t.raw);
    }

    Statement surface()
    {
        const auto& t0 = peek();
        if (is_word(t0, "triangle") || is_word(t0, "tri")) return triangle_relation(true);
        if (is_word(t0, "angle") || is_word(t0, "ang")) return angle_statement();
        if (is_word(t0, "segment") || is_word(t0, "side") || is_word(t0, "seg") || is_word(t0, "line")) {
            return segment_statement(segment());
        }
        if (t0.kind == Tok::Points) {
            const auto n = split_points(t0.text).size();
            if (n == 1) {
                if (is_sym(peek(1), ",")) return point_list();
                return point_statement();
            }
            if (n == 2) return segment_statement(segment());
            if (n == 3) {
                const auto& t1 = peek(1);
                if (is_sym(t1, "~=") || is_sym(t1, "~") || is_word(t1, "is")) return triangle_relation(false);
            }
            arity(t0, "cannot read '" + t0.raw + "' as a point or segment");
        }
        fail(t0, {"<point>", "<predicate>(", "<segment>", "angle", "triangle"});
    }

    Statement triangle_relation(bool prefix_required)
    {
        Statement s;
        auto a = triangle(prefix_required);
        if (accept_sym("~=")) {
            s.predicate = Predicate::Congruent;
        } else if (accept_sym("~")) {
            s.predicate = Predicate::Similar;
        } else if (accept_word("is")) {
            if (accept_word("congruent")) {
                s.predicate = Predicate::Congruent;
            } else if (accept_word("similar")) {
                s.predicate = Predicate::Similar;
            } else {
                fail(peek(), {"congruent", "similar"});
            }
            expect_word("to");
        } else {
            fail(peek(), {"is", "~", "~="});
        }
        auto b = triangle(false);
        s.args = {a, b};
        return s;
    }

    Statement angle_statement()
    {
        Statement s;
        auto a = angle();
        if (accept_sym("=")) {
            if (peek().kind == Tok::Number) {
                const auto& num = peek();
                if (num.text != "90") fail(num, {"90", "angle"});
                next();
                accept_sym("deg");
                s.predicate = Predicate::RightAngle;
                s.args = {a};
                return s;
            }
            s.predicate = Predicate::EqualAngle;
            s.args = {a, angle()};
            return s;
        }
        if (accept_word("is")) {
            if (accept_word("equal")) {
                expect_word("to");
                s.predicate = Predicate::EqualAngle;
                s.args = {a, angle()};
                return s;
            }
            accept_word("a");
            if (accept_word("right")) {
                accept_word("angle");
                s.predicate = Predicate::RightAngle;
                s.args = {a};
                return s;
            }
            fail(peek(), {"a", "equal", "right"});
        }
        fail(peek(), {"=", "is"});
    }

    Statement point_statement()
    {
        Statement s;
        auto p = point();
        if (accept_word("lies")) {
            expect_word("on");
            s.predicate = Predicate::OnCircle;
            s.args = {p, circle()};
            return s;
        }
        if (!accept_word("is")) fail(peek(), {"is", "lies"});
        if (accept_word("on")) {
            s.predicate = Predicate::OnCircle;
            s.args = {p, circle()};
            return s;
        }
        if (!accept_word("the")) fail(peek(), {"on", "the"});
        expect_word("midpoint");
        expect_word("of");
        auto seg = segment();
        s.predicate = Predicate::Midpoint;
        s.args = {p, Entity::point(seg.points[0]), Entity::point(seg.points[1])};
        return s;
    }

    Statement point_list()
    {
        Statement s;
        std::vector<Entity> pts{point()};
        while (accept_sym(",")) {
            if (is_word(peek(), "and")) break;
            pts.push_back(point());
        }
        if (accept_word("and")) pts.push_back(point());
        expect_word("are");
        const auto& kw = peek();
        if (accept_word("collinear")) {
            s.predicate = Predicate::Collinear;
        } else if (accept_word("concyclic")) {
            s.predicate = Predicate::Concyclic;
        } else {
            fail(kw, {"collinear", "concyclic"});
        }
        s.args = std::move(pts);
        return s;
    }

    Statement segment_statement(Entity first)
    {
        Statement s;
        const auto& t = peek();
        if (accept_sym("||")) {
            s.predicate = Predicate::Parallel;
            s.args = {first, segment()};
        } else if (accept_sym("perp") || accept_word("perp")) {
            s.predicate = Predicate::Perpendicular;
            s.args = {first, segment()};
        } else if (accept_sym("=")) {
            s.predicate = Predicate::EqualLength;
            s.args = {first, segment()};
        } else if (accept_word("is")) {
            if (accept_word("parallel")) {
                s.predicate = Predicate::Parallel;
            } else if (accept_word("perpendicular")) {
                s.predicate = Predicate::Perpendicular;
            } else if (accept_word("equal")) {
                s.predicate = Predicate::EqualLength;
            } else {
                fail(peek(), {"equal", "parallel", "perpendicular"});
            }
            expect_word("to");
            s.args = {first, segment()};
        } else if (accept_word("bisects")) {
            s.predicate = Predicate::Bisects;
            if (is_word(peek(), "angle") || is_word(peek(), "ang")) {
                s.args = {first, angle()};
            } else {
                s.args = {first, segment()};
            }
        } else if (is_times(t)) {
            next();
            auto b = segment();
            expect_sym("=");
            auto c = segment();
            if (!is_times(peek())) fail(peek(), {"x"});
            next();
            auto d = segment();
            s.predicate = Predicate::ProductEqual;
            s.args = {first, b, c, d};
        } else {
            fail(t, {"=", "bisects", "is", "perp", "x", "||"});
        }
        return s;
    }

    RawArg raw_arg()
    {
        RawArg a;
        const auto& t = peek();
        a.pos = t.pos;
        if (is_word(t, "tri") || is_word(t, "triangle")) {
            next();
            a.prefix = RawArg::Prefix::Tri;
        } else if (is_word(t, "ang") || is_word(t, "angle")) {
            next();
            a.prefix = RawArg::Prefix::Ang;
        } else if (is_sym(t, "(")) {
            next();
            a.prefix = RawArg::Prefix::Paren;
            auto p1 = take_points(1, "<point>", "a segment endpoint");
            expect_sym(",");
            auto p2 = take_points(1, "<point>", "a segment endpoint");
            expect_sym(")");
            a.points = {p1[0], p2[0]};
            a.raw = p1[0] + p2[0];
            return a;
        }
        const auto& v = peek();
        if (v.kind == Tok::Points) {
            a.points = split_points(v.text);
            a.raw = v.raw;
            next();
            return a;
        }
        if (v.kind == Tok::Word && a.prefix == RawArg::Prefix::None) {
            a.word = v.raw;
            a.raw = v.raw;
            next();
            return a;
        }
        fail(v, {"<entity>"});
    }

    Statement functional()
    {
        const auto& name_tok = next();
        const auto pred = *predicate_from_name(name_tok.text);
        expect_sym("(");
        std::vector<RawArg> raw;
        raw.push_back(raw_arg());
        while (accept_sym(",") || accept_sym(";")) raw.push_back(raw_arg());
        expect_sym(")");

        auto bad = [&](const RawArg& a, const std::string& what) -> Entity {
            throw ParseError(a.pos, {}, to_string_(pred) + ": " + what + " at offset " + std::to_string(a.pos),
                             ErrorCode::ArityError);
        };
        auto as_point = [&](const RawArg& a) {
            if (a.prefix != RawArg::Prefix::None || a.points.size() != 1) return bad(a, "expected a point, got '" + a.raw + "'");
            return Entity::point(a.points[0]);
        };
        auto as_segment = [&](const RawArg& a) {
            if ((a.prefix != RawArg::Prefix::None && a.prefix != RawArg::Prefix::Paren) || a.points.size() != 2) {
                return bad(a, "expected a segment, got '" + a.raw + "'");
            }
            return Entity::segment(a.points[0], a.points[1]);
        };
        auto as_angle = [&](const RawArg& a) {
            if ((a.prefix != RawArg::Prefix::None && a.prefix != RawArg::Prefix::Ang) || a.points.size() != 3) {
                return bad(a, "expected an angle, got '" + a.raw + "'");
            }
            return Entity::angle(a.points[0], a.points[1], a.points[2]);
        };
        auto as_triangle = [&](const RawArg& a) {
            if ((a.prefix != RawArg::Prefix::None && a.prefix != RawArg::Prefix::Tri) || a.points.size() != 3) {
                return bad(a, "expected a triangle, got '" + a.raw + "'");
            }
            return Entity::triangle(a.points[0], a.points[1], a.points[2]);
        };
        auto as_circle = [&](const RawArg& a) {
            if (a.prefix != RawArg::Prefix::None || a.raw.empty()) return bad(a, "expected a circle name");
            return Entity::circle(a.raw);
        };
        auto need = [&](std::size_t n) {
            if (raw.size() != n) {
                throw ParseError(name_tok.pos, {},
                                 to_string_(pred) + " takes " + std::to_string(n) + " arguments, got " +
                                     std::to_string(raw.size()),
                                 ErrorCode::ArityError);
            }
        };

        Statement s;
        s.predicate = pred;
        switch (pred) {
        case Predicate::Midpoint:
            need(3);
            s.args = {as_point(raw[0]), as_point(raw[1]), as_point(raw[2])};
            break;
        case Predicate::Congruent:
        case Predicate::Similar:
            need(2);
            s.args = {as_triangle(raw[0]), as_triangle(raw[1])};
            break;
        case Predicate::Parallel:
        case Predicate::Perpendicular:
        case Predicate::EqualLength:
            need(2);
            s.args = {as_segment(raw[0]), as_segment(raw[1])};
            break;
        case Predicate::EqualAngle:
            need(2);
            s.args = {as_angle(raw[0]), as_angle(raw[1])};
            break;
        case Predicate::OnCircle:
            need(2);
            s.args = {as_point(raw[0]), as_circle(raw[1])};
            break;
        case Predicate::Collinear:
        case Predicate::Concyclic:
            for (const auto& a : raw) s.args.push_back(as_point(a));
            break;
        case Predicate::Bisects:
            need(2);
            s.args.push_back(as_segment(raw[0]));
            if (raw[1].prefix == RawArg::Prefix::Ang || raw[1].points.size() == 3) {
                s.args.push_back(as_angle(raw[1]));
            } else {
                s.args.push_back(as_segment(raw[1]));
            }
            break;
        case Predicate::RightAngle:
            need(1);
            s.args = {as_angle(raw[0])};
            break;
        case Predicate::ProductEqual:
            need(4);
            for (const auto& a : raw) s.args.push_back(as_segment(a));
            break;
        }
        try {
            check_arity(s);
        } catch (const ParseError& e) {
            throw ParseError(name_tok.pos, {}, e.what(), ErrorCode::ArityError);
        }
        return s;
    }

    static std::string to_string_(Predicate p) { return std::string(to_string(p)); }

    std::string_view text_;
    std::vector<Token> toks_;
    std::size_t cur_ = 0;
    std::size_t residue_pos_ = 0;
};

bool distinct(const std::vector<std::string>& pts)
{
    std::set<std::string> seen(pts.begin(), pts.end());
    return seen.size() == pts.size();
}

bool valid_point_name(const std::string& p)
{
    return is_points_run(p) && split_points(p).size() == 1;
}

void normalise_entity(Entity& e)
{
    switch (e.kind) {
    case EntityKind::Segment:
        std::sort(e.points.begin(), e.points.end());
        break;
    case EntityKind::Angle:
        if (e.points[2] < e.points[0]) std::swap(e.points[0], e.points[2]);
        break;
    default:
        break;
    }
}

std::vector<std::string> permuted(const std::vector<std::string>& pts, const std::array<int, 3>& perm)
{
    return {pts[perm[0]], pts[perm[1]], pts[perm[2]]};
}

// Re-order a vertex correspondence so the first triangle reads in sorted order.
std::pair<std::vector<std::string>, std::vector<std::string>>
sorted_correspondence(const std::vector<std::string>& x, const std::vector<std::string>& y)
{
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
    return {permuted(x, order), permuted(y, order)};
}

} // namespace

std::string_view to_string(Predicate p)
{
    return kPredicateNames[static_cast<std::size_t>(p)];
}

std::optional<Predicate> predicate_from_name(std::string_view name)
{
    const auto l = lower(name);
    for (std::size_t i = 0; i < kPredicateNames.size(); ++i) {
        if (lower(kPredicateNames[i]) == l) return static_cast<Predicate>(i);
    }
    return std::nullopt;
}

Entity Entity::point(std::string p)
{
    return {EntityKind::Point, {std::move(p)}, {}};
}

Entity Entity::segment(std::string a, std::string b)
{
    return {EntityKind::Segment, {std::move(a), std::move(b)}, {}};
}

Entity Entity::angle(std::string a, std::string vertex, std::string b)
{
    return {EntityKind::Angle, {std::move(a), std::move(vertex), std::move(b)}, {}};
}

Entity Entity::triangle(std::string a, std::string b, std::string c)
{
    return {EntityKind::Triangle, {std::move(a), std::move(b), std::move(c)}, {}};
}

Entity Entity::circle(std::string name)
{
    return {EntityKind::Circle, {}, std::move(name)};
}

void check_arity(const Statement& s)
{
    auto fail = [&](const std::string& why) {
        throw ParseError(0, {}, std::string(to_string(s.predicate)) + ": " + why, ErrorCode::ArityError);
    };
    auto expect_kinds = [&](std::initializer_list<EntityKind> kinds) {
        if (s.args.size() != kinds.size()) {
            fail("takes " + std::to_string(kinds.size()) + " arguments, got " + std::to_string(s.args.size()));
        }
        std::size_t i = 0;
        for (auto k : kinds) {
            if (s.args[i].kind != k) fail("argument " + std::to_string(i + 1) + " has the wrong kind");
            ++i;
        }
    };
    switch (s.predicate) {
    case Predicate::Midpoint:
        expect_kinds({EntityKind::Point, EntityKind::Point, EntityKind::Point});
        if (!distinct({s.args[0].points[0], s.args[1].points[0], s.args[2].points[0]})) fail("points must be distinct");
        break;
    case Predicate::Congruent:
    case Predicate::Similar:
        expect_kinds({EntityKind::Triangle, EntityKind::Triangle});
        break;
    case Predicate::Parallel:
    case Predicate::Perpendicular:
    case Predicate::EqualLength:
        expect_kinds({EntityKind::Segment, EntityKind::Segment});
        break;
    case Predicate::EqualAngle:
        expect_kinds({EntityKind::Angle, EntityKind::Angle});
        break;
    case Predicate::OnCircle:
        expect_kinds({EntityKind::Point, EntityKind::Circle});
        break;
    case Predicate::Collinear:
    case Predicate::Concyclic: {
        const std::size_t min = s.predicate == Predicate::Collinear ? 3 : 4;
        if (s.args.size() < min) fail("needs at least " + std::to_string(min) + " points");
        std::vector<std::string> pts;
        for (const auto& a : s.args) {
            if (a.kind != EntityKind::Point) fail("arguments must be points");
            pts.push_back(a.points.at(0));
        }
        if (!distinct(pts)) fail("points must be distinct");
        break;
    }
    case Predicate::Bisects:
        if (s.args.size() != 2) fail("takes 2 arguments");
        if (s.args[0].kind != EntityKind::Segment) fail("first argument must be a segment");
        if (s.args[1].kind != EntityKind::Angle && s.args[1].kind != EntityKind::Segment) {
            fail("second argument must be an angle or a segment");
        }
        break;
    case Predicate::RightAngle:
        expect_kinds({EntityKind::Angle});
        break;
    case Predicate::ProductEqual:
        expect_kinds({EntityKind::Segment, EntityKind::Segment, EntityKind::Segment, EntityKind::Segment});
        break;
    }
    for (const auto& a : s.args) {
        const std::size_t want = a.kind == EntityKind::Point     ? 1
                                 : a.kind == EntityKind::Segment ? 2
                                 : a.kind == EntityKind::Circle  ? 0
                                                                 : 3;
        if (a.points.size() != want) fail("entity has " + std::to_string(a.points.size()) + " points");
        for (const auto& p : a.points) {
            if (!valid_point_name(p)) fail("bad point name '" + p + "'");
        }
        if (!distinct(a.points)) fail("repeated point in one entity");
        if (a.kind == EntityKind::Circle) {
            if (a.name.empty() || !std::all_of(a.name.begin(), a.name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c));
                })) {
                fail("bad circle name '" + a.name + "'");
            }
        }
    }
}

Statement canonicalize(Statement s)
{
    for (auto& a : s.args) normalise_entity(a);
    switch (s.predicate) {
    case Predicate::Midpoint:
        if (s.args.size() == 3 && s.args[2] < s.args[1]) std::swap(s.args[1], s.args[2]);
        break;
    case Predicate::Congruent:
    case Predicate::Similar:
        if (s.args.size() == 2) {
            auto fwd = sorted_correspondence(s.args[0].points, s.args[1].points);
            auto rev = sorted_correspondence(s.args[1].points, s.args[0].points);
            const auto& best = std::min(fwd, rev);
            s.args[0].points = best.first;
            s.args[1].points = best.second;
        }
        break;
    case Predicate::Parallel:
    case Predicate::Perpendicular:
    case Predicate::EqualLength:
    case Predicate::EqualAngle:
        if (s.args.size() == 2 && s.args[1] < s.args[0]) std::swap(s.args[0], s.args[1]);
        break;
    case Predicate::Collinear:
    case Predicate::Concyclic:
        std::sort(s.args.begin(), s.args.end());
        break;
    case Predicate::ProductEqual:
        if (s.args.size() == 4) {
            if (s.args[1] < s.args[0]) std::swap(s.args[0], s.args[1]);
            if (s.args[3] < s.args[2]) std::swap(s.args[2], s.args[3]);
            if (std::tie(s.args[2], s.args[3]) < std::tie(s.args[0], s.args[1])) {
                std::swap(s.args[0], s.args[2]);
                std::swap(s.args[1], s.args[3]);
            }
        }
        break;
    case Predicate::OnCircle:
    case Predicate::Bisects:
    case Predicate::RightAngle:
        break;
    }
    return s;
}

bool statement_equal(const Statement& a, const Statement& b)
{
    return canonicalize(a) == canonicalize(b);
}

ParsedLineText parse_line(std::string_view text)
{
    Parser parser(text);
    auto out = parser.parse_line();
    out.statement = canonicalize(std::move(out.statement));
    return out;
}

Statement parse_statement(std::string_view text)
{
    Parser parser(text);
    auto out = parser.parse_line();
    if (!out.residue.empty()) {
        const auto pos = parser.residue_pos();
        throw ParseError(pos, {"<end>"}, "unexpected trailing text at offset " + std::to_string(pos) + ": '" +
                                             out.residue + "'");
    }
    return canonicalize(std::move(out.statement));
}

namespace {

std::string render_entity(const Entity& e, bool blank)
{
    auto name = [&](const std::string& p) { return blank ? std::string("_") : p; };
    std::string joined;
    for (const auto& p : e.points) joined += name(p);
    switch (e.kind) {
    case EntityKind::Point:
    case EntityKind::Segment:
        return joined;
    case EntityKind::Angle:
        return "ang " + joined;
    case EntityKind::Triangle:
        return "tri " + joined;
    case EntityKind::Circle:
        return blank ? std::string("_") : e.name;
    }
    return joined;
}

std::string render_impl(const Statement& s, bool blank)
{
    std::string out(to_string(s.predicate));
    out += '(';
    for (std::size_t i = 0; i < s.args.size(); ++i) {
        if (i) {
            const bool semicolon = (s.predicate == Predicate::Midpoint && i == 1) ||
                                   (s.predicate == Predicate::OnCircle && i == 1) ||
                                   (s.predicate == Predicate::Bisects && i == 1) ||
                                   (s.predicate == Predicate::ProductEqual && i == 2);
            out += semicolon ? ';' : ',';
        }
        out += render_entity(s.args[i], blank);
    }
    out += ')';
    return out;
}

} // namespace

std::string render(const Statement& s)
{
    return render_impl(s, false);
}

std::string render_template(const Statement& s)
{
    return render_impl(s, true);
}

std::vector<std::string> points_of(const Statement& s)
{
    std::set<std::string> pts;
    for (const auto& a : s.args) pts.insert(a.points.begin(), a.points.end());
    return {pts.begin(), pts.end()};
}

const std::vector<std::string>& grammar_vocabulary()
{
    static const std::vector<std::string> vocab = [] {
        std::set<std::string> words = {
            "a",        "and",         "ang",       "angle",     "are",       "bisects",  "circle",
            "collinear", "concyclic",  "congruent", "equal",     "is",        "lies",     "line",
            "midpoint", "of",          "on",        "parallel",  "perp",      "perpendicular",
            "right",    "seg",         "segment",   "side",      "similar",   "the",      "to",
            "tri",      "triangle",
        };
        for (auto n : kPredicateNames) words.insert(lower(n));
        return std::vector<std::string>(words.begin(), words.end());
    }();
    return vocab;
}

} // namespace geom
