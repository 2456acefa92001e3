#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace owlrules {

struct Location {
    std::size_t line = 1;
    std::size_t column = 1;
    friend auto operator<=>(const Location&, const Location&) = default;
};

struct Diagnostic {
    enum class Severity { Warning, Error };
    Severity severity;
    std::string message;
    Location location;
};

// "ERROR car.owl:3:5 message"
std::string format_diagnostic(const Diagnostic& d, std::string_view source);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

} // namespace owlrules
