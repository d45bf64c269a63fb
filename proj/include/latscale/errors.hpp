#pragma once

#include <stdexcept>
#include <string>

namespace latscale {

// Exit-code categories used by the CLI: 2 validation, 3 invariant, 4 io.
struct Error : std::runtime_error {
    enum class Kind { validation = 2, invariant = 3, io = 4 };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(Kind::validation, msg) {}
};

struct InvariantError : Error {
    explicit InvariantError(const std::string& msg) : Error(Kind::invariant, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(Kind::io, msg) {}
};

}  // namespace latscale
