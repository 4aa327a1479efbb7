#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geom {

// Closed predicate inventory of the controlled statement language, schema
// version 1. Adding a predicate is a schema version bump.
enum class Predicate {
    Midpoint,
    Congruent,
    Similar,
    Parallel,
    Perpendicular,
    EqualLength,
    EqualAngle,
    OnCircle,
    Collinear,
    Concyclic,
    Bisects,
    RightAngle,
    ProductEqual,
};

inline constexpr Predicate kAllPredicates[] = {
    Predicate::Midpoint,    Predicate::Congruent,     Predicate::Similar,
    Predicate::Parallel,    Predicate::Perpendicular, Predicate::EqualLength,
    Predicate::EqualAngle,  Predicate::OnCircle,      Predicate::Collinear,
    Predicate::Concyclic,   Predicate::Bisects,       Predicate::RightAngle,
    Predicate::ProductEqual,
};

std::string_view to_string(Predicate p);
std::optional<Predicate> predicate_from_name(std::string_view name); // case-insensitive

enum class EntityKind { Point, Segment, Angle, Triangle, Circle };

// A geometric entity named by its points. Angles keep the vertex in the
// middle (points[1]). Circles carry a name and no points.
struct Entity {
    EntityKind kind = EntityKind::Point;
    std::vector<std::string> points;
    std::string name;

    static Entity point(std::string p);
    static Entity segment(std::string a, std::string b);
    static Entity angle(std::string a, std::string vertex, std::string b);
    static Entity triangle(std::string a, std::string b, std::string c);
    static Entity circle(std::string name);

    auto operator<=>(const Entity&) const = default;
};

struct Statement {
    Predicate predicate = Predicate::Midpoint;
    std::vector<Entity> args;

    auto operator<=>(const Statement&) const = default;
};

// Result of parsing the longest statement prefix of a line of text.
struct ParsedLineText {
    std::string raw;
    Statement statement;
    std::string residue;
};

// Throws ParseError (ErrorCode::ArityError) when the argument shape does not
// fit the predicate.
void check_arity(const Statement& s);

// Accepts surface forms ("M is the midpoint of AB", "AB ∥ CD") and the
// functional form ("Midpoint(M;A,B)"). The result is canonical. Throws
// ParseError with a byte position and expected-token set, or an ArityError.
Statement parse_statement(std::string_view text);

// Like parse_statement but stops after the first complete statement and
// reports any unparsed trailing text instead of failing on it.
ParsedLineText parse_line(std::string_view text);

Statement canonicalize(Statement s);
bool statement_equal(const Statement& a, const Statement& b);

// Canonical ASCII functional rendering; reparses to the same statement.
std::string render(const Statement& s);

// The rendering with every point name replaced by '_'.
std::string render_template(const Statement& s);

// Every distinct point name mentioned by the statement, sorted.
std::vector<std::string> points_of(const Statement& s);

// Lower-case words the grammar recognises. Used by the matcher for case
// normalisation and spelling correction.
const std::vector<std::string>& grammar_vocabulary();

} // namespace geom
