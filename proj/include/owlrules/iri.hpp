#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace owlrules {

// Identifier of a class, property, datatype or individual.
//
// Local references written as "#Car" are normalized to "Car"; absolute IRIs
// and opaque datatype tokens ("xs:string") are kept verbatim.
class Iri {
public:
    Iri() = default;

    // Throws InvalidIri when the normalized value is empty or contains whitespace.
    explicit Iri(std::string_view raw);

    static std::string normalize(std::string_view raw);
    static bool is_valid(std::string_view raw) noexcept;

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    friend auto operator<=>(const Iri&, const Iri&) = default;
    friend bool operator==(const Iri&, const Iri&) = default;

private:
    std::string value_;
};

inline std::ostream& operator<<(std::ostream& os, const Iri& iri) { return os << iri.str(); }

} // namespace owlrules

template <>
struct std::hash<owlrules::Iri> {
    std::size_t operator()(const owlrules::Iri& iri) const noexcept {
        return std::hash<std::string>{}(iri.str());
    }
};
