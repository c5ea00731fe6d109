#pragma once

#include <stdexcept>
#include <string>

namespace polycurve {

/// Input outside an operation's hypotheses. `code` is a stable snake_case tag
/// the CLI copies into its error records.
class DomainError : public std::domain_error {
public:
    DomainError(std::string code, const std::string& what) : std::domain_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace polycurve
