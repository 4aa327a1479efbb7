#include "geom/error.hpp"

#include <utility>

namespace geom {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::UnknownSkill: return "UnknownSkill";
    case ErrorCode::UnknownProblem: return "UnknownProblem";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::NoGraphs: return "NoGraphs";
    case ErrorCode::TargetKnown: return "TargetKnown";
    case ErrorCode::SessionClosed: return "SessionClosed";
    case ErrorCode::SessionBusy: return "SessionBusy";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadRefs: return "BadRefs";
    case ErrorCode::NoSuchLine: return "NoSuchLine";
    case ErrorCode::NoFrontier: return "NoFrontier";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::LintErrors: return "LintErrors";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::ExternalUnavailable: return "ExternalUnavailable";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::NotFound: return "NotFound";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string where)
    : std::runtime_error(message), code_(code), where_(std::move(where))
{
}

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& message, ErrorCode code, std::string where)
    : Error(code, message, where.empty() ? "offset " + std::to_string(position) : std::move(where)),
      position_(position),
      expected_(std::move(expected))
{
}

} // namespace geom
