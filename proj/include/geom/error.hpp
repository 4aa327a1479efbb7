#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace geom {

// Every failure the engine can raise. The service maps each code to exactly
// one HTTP status; the CLI maps them onto exit codes.
enum class ErrorCode {
    DuplicateId,
    EmptyName,
    OutOfRange,
    ParseError,
    ArityError,
    UnknownSkill,
    UnknownProblem,
    UnknownSession,
    NoGraphs,
    TargetKnown,
    SessionClosed,
    SessionBusy,
    BadIndex,
    BadRefs,
    NoSuchLine,
    NoFrontier,
    BadRange,
    InvalidArgument,
    IoError,
    SchemaVersionMismatch,
    LintErrors,
    UnsupportedFormat,
    ExternalUnavailable,
    InvalidConfig,
    BadRequest,
    NotFound,
};

inline constexpr ErrorCode kAllErrorCodes[] = {
    ErrorCode::DuplicateId,     ErrorCode::EmptyName,
    ErrorCode::OutOfRange,      ErrorCode::ParseError,
    ErrorCode::ArityError,      ErrorCode::UnknownSkill,
    ErrorCode::UnknownProblem,  ErrorCode::UnknownSession,
    ErrorCode::NoGraphs,        ErrorCode::TargetKnown,
    ErrorCode::SessionClosed,   ErrorCode::SessionBusy,
    ErrorCode::BadIndex,        ErrorCode::BadRefs,
    ErrorCode::NoSuchLine,      ErrorCode::NoFrontier,
    ErrorCode::BadRange,        ErrorCode::InvalidArgument,
    ErrorCode::IoError,         ErrorCode::SchemaVersionMismatch,
    ErrorCode::LintErrors,      ErrorCode::UnsupportedFormat,
    ErrorCode::ExternalUnavailable, ErrorCode::InvalidConfig,
    ErrorCode::BadRequest,      ErrorCode::NotFound,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string where = {});

    ErrorCode code() const noexcept { return code_; }

    // Location of the fault: "file#/json/pointer", "offset 12", or empty.
    const std::string& where() const noexcept { return where_; }

private:
    ErrorCode code_;
    std::string where_;
};

// Parse failure. `position` is a byte offset into the input; it equals the
// input length when the parser ran out of tokens. `where` defaults to
// "offset N".
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::vector<std::string> expected,
               const std::string& message,
               ErrorCode code = ErrorCode::ParseError,
               std::string where = {});

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

} // namespace geom
