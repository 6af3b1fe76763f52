#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace skeletonkit {

/// Domain-level failure with a stable machine-readable code.
/// The CLI maps these to exit code 1 and a JSON error object; anything
/// else escaping a command is a bug.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace skeletonkit
