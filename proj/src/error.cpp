#include "sqzchain/error.hpp"

namespace sqz {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Domain: return "E_DOMAIN";
        case ErrorCode::Nonphysical: return "E_NONPHYSICAL";
        case ErrorCode::Underdetermined: return "E_UNDERDETERMINED";
        case ErrorCode::Singular: return "E_SINGULAR";
        case ErrorCode::ConfigSyntax: return "E_CONFIG_SYNTAX";
        case ErrorCode::ConfigUnknownKey: return "E_CONFIG_UNKNOWN_KEY";
        case ErrorCode::ConfigMissingKey: return "E_CONFIG_MISSING_KEY";
        case ErrorCode::ConfigRange: return "E_CONFIG_RANGE";
        case ErrorCode::Data: return "E_DATA";
        case ErrorCode::Internal: return "E_INTERNAL";
    }
    return "E_INTERNAL";
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ConfigSyntax:
        case ErrorCode::ConfigUnknownKey:
        case ErrorCode::ConfigMissingKey:
        case ErrorCode::ConfigRange:
            return 2;
        default:
            return 3;
    }
}

}  // namespace sqz
