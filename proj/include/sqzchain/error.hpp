#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Categories shared by the C++ core, the C API status codes, and the CLI exit
// code mapping. Keep in sync with sqz_status in sqzchain.h.
enum class ErrorCode {
    Domain,             // argument outside an operation's domain
    Nonphysical,        // loss removal at or below the vacuum floor
    Underdetermined,    // too few independent observations for a fit
    Singular,           // observations carry no information (all-zero pump)
    ConfigSyntax,
    ConfigUnknownKey,
    ConfigMissingKey,
    ConfigRange,
    Data,               // malformed CSV input
    Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

// 2 for configuration problems, 3 for numeric or data problems.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace sqz
