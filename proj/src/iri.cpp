#include "owlrules/iri.hpp"

#include <algorithm>
#include <cctype>

#include "owlrules/error.hpp"

namespace owlrules {

std::string Iri::normalize(std::string_view raw) {
    const auto first = raw.find_first_not_of('#');
    if (first == std::string_view::npos) return {};
    return std::string(raw.substr(first));
}

bool Iri::is_valid(std::string_view raw) noexcept {
    const auto first = raw.find_first_not_of('#');
    if (first == std::string_view::npos) return false;
    return std::none_of(raw.begin() + first, raw.end(),
                        [](unsigned char c) { return std::isspace(c) != 0; });
}

Iri::Iri(std::string_view raw) {
    if (!is_valid(raw)) throw InvalidIri("invalid IRI '" + std::string(raw) + "'");
    value_ = normalize(raw);
}

} // namespace owlrules
