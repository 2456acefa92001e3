#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "owlrules/rule.hpp"

namespace owlrules {

inline constexpr int structured_format_version = 1;

struct RuleDocument {
    int version = structured_format_version;
    std::vector<std::string> sources;
    std::vector<Rule> rules;
};

// JSON rule document: {"version": 1, "source": [...], "rules": [...]}.
// Rules are sorted by id and sources by name, so equal inputs give equal bytes.
std::string render_structured(std::span<const Rule> rules, std::span<const std::string> sources = {});

// Inverse of render_structured. Throws FormatError (or UnknownPattern) on
// schema violations, including category/executable fields that disagree with
// the pattern.
RuleDocument parse_structured(std::string_view text);

} // namespace owlrules
