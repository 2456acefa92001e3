#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owlrules/diagnostics.hpp"
#include "owlrules/iri.hpp"

namespace owlrules {

namespace fact {

struct Membership {
    Iri individual, cls;
    friend auto operator<=>(const Membership&, const Membership&) = default;
};

// `object` names a class rather than an individual when object_is_class is set;
// such links come from class-level consequents like "(?x colleagueOf Engineer)".
struct LinkFact {
    Iri subject, property, object;
    bool object_is_class = false;
    friend auto operator<=>(const LinkFact&, const LinkFact&) = default;
};

struct FeatureExpected {
    Iri individual, feature;
    friend auto operator<=>(const FeatureExpected&, const FeatureExpected&) = default;
};

struct NegMembership {
    Iri individual, cls;
    friend auto operator<=>(const NegMembership&, const NegMembership&) = default;
};

} // namespace fact

using Fact = std::variant<fact::Membership, fact::LinkFact, fact::FeatureExpected, fact::NegMembership>;

// One line of the fact format:
//   isa(fox1, Fox)   link(a, p, b)   classlink(a, p, C)   feature(a, f)   not isa(a, C)
std::string format_fact(const Fact& f);

// Duplicate-free set of instance assertions. Facts added by inference remember
// the first rule that produced them.
class FactBase {
public:
    bool insert(Fact f);
    bool insert_derived(Fact f, const std::string& rule_id);

    bool contains(const Fact& f) const { return facts_.contains(f); }
    const std::set<Fact>& facts() const noexcept { return facts_; }
    std::size_t size() const noexcept { return facts_.size(); }
    bool empty() const noexcept { return facts_.empty(); }

    const std::map<Fact, std::string>& derived_marks() const noexcept { return derived_marks_; }
    std::optional<std::string> derived_by(const Fact& f) const;

    friend bool operator==(const FactBase& a, const FactBase& b) { return a.facts_ == b.facts_; }

private:
    std::set<Fact> facts_;
    std::map<Fact, std::string> derived_marks_;
};

struct FactParse {
    FactBase facts;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Line-oriented fact file; blank lines and lines starting with '#' are skipped.
// Identifiers may not contain whitespace, commas or parentheses.
FactParse parse_fact_base(std::string_view text);
FactParse parse_fact_base(std::istream& in);

// One fact per line in set order; parse_fact_base reads it back unchanged.
std::string print_fact_base(const FactBase& facts);

} // namespace owlrules
