#include "sentcause/errors.hpp"

namespace sentcause {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config: return 1;
        case ErrorKind::Data: return 2;
        case ErrorKind::Numerical: return 3;
        case ErrorKind::Io: return 4;
    }
    return 2;
}

ParseError::ParseError(std::size_t line, const std::string& msg)
    : Error(ErrorKind::Data, "line " + std::to_string(line) + ": " + msg), line_(line) {}

}  // namespace sentcause
