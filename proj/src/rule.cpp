#include "owlrules/rule.hpp"

#include <cstdint>
#include <cstdio>

#include "owlrules/error.hpp"

namespace owlrules {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

struct PatternInfo {
    Pattern pattern;
    std::string_view name;
    int first_rule;
    RuleCategory category;
};

constexpr std::array<PatternInfo, 13> pattern_table{{
    {Pattern::ClassFeature, "class-feature", 1, RuleCategory::Specifying},
    {Pattern::EquivalenceInheritance, "equivalence-inheritance", 2, RuleCategory::Unobvious},
    {Pattern::DomainRangeIdentification, "domain-range-identification", 3, RuleCategory::Identifying},
    {Pattern::SubclassTransitivity, "subclass-transitivity", 4, RuleCategory::Unobvious},
    {Pattern::RelationPropagation, "relation-propagation", 5, RuleCategory::Unobvious},
    {Pattern::SubpropertyLift, "subproperty-lift", 6, RuleCategory::Identifying},
    {Pattern::Symmetric, "symmetric", 7, RuleCategory::MeaningEnriching},
    {Pattern::TransitiveProperty, "transitive-property", 9, RuleCategory::Unobvious},
    {Pattern::SolePartOf, "sole-partof", 10, RuleCategory::Unobvious},
    {Pattern::Cooccurrence, "cooccurrence", 11, RuleCategory::Specifying},
    {Pattern::AllValuesFrom, "all-values-from", 12, RuleCategory::MeaningEnriching},
    {Pattern::IntersectionDecomposition, "intersection-decomposition", 13, RuleCategory::Specifying},
    {Pattern::Inverse, "inverse", 14, RuleCategory::MeaningEnriching},
}};

const PatternInfo& info(Pattern p) {
    for (const auto& row : pattern_table)
        if (row.pattern == p) return row;
    throw UnknownPattern(std::to_string(static_cast<int>(p)));
}

std::string join_atoms(const std::vector<Atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += " and ";
        out += render_atom(atoms[i]);
    }
    return out;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

Atom negate(const atom::Positive& inner) { return atom::Not{inner}; }

std::string_view pattern_name(Pattern p) { return info(p).name; }

Pattern pattern_from_name(std::string_view name) {
    for (const auto& row : pattern_table)
        if (row.name == name) return row.pattern;
    throw UnknownPattern(std::string(name));
}

std::string_view category_name(RuleCategory c) {
    switch (c) {
    case RuleCategory::Identifying: return "identifying";
    case RuleCategory::Specifying: return "specifying";
    case RuleCategory::Unobvious: return "unobvious";
    case RuleCategory::MeaningEnriching: return "meaning-enriching";
    }
    throw Error("invalid rule category");
}

RuleCategory category_from_name(std::string_view name) {
    for (auto c : all_categories)
        if (category_name(c) == name) return c;
    throw FormatError("unknown rule category '" + std::string(name) + "'");
}

RuleCategory classify(Pattern p) { return info(p).category; }

RuleCategory classify(std::string_view name) { return classify(pattern_from_name(name)); }

std::string render_term(const Term& t) {
    return std::visit(overloaded{
                          [](const term::Var& v) { return "?" + v.name; },
                          [](const term::ClassRef& c) { return c.iri.str(); },
                          [](const term::PropRef& p) { return p.iri.str(); },
                          [](const term::IndividualRef& i) { return i.iri.str(); },
                          [](const term::LiteralTok& l) { return l.text; },
                      },
                      t);
}

std::string render_atom(const atom::Positive& a) {
    return std::visit(
        overloaded{
            [](const atom::IsA& x) { return render_term(x.cls) + "(" + render_term(x.subject) + ")"; },
            [](const atom::Link& x) {
                return "(" + render_term(x.subject) + " " + render_term(x.property) + " " + render_term(x.object) +
                       ")";
            },
            [](const atom::HasFeature& x) { return "hasFeature(" + render_term(x.subject) + "," + x.feature.str() + ")"; },
            [](const atom::SchemaSubClassOf& x) {
                return "subClassOf(" + render_term(x.sub) + "," + render_term(x.sup) + ")";
            },
            [](const atom::SchemaEquivalent& x) {
                return "equivalent(" + render_term(x.a) + "," + render_term(x.b) + ")";
            },
            [](const atom::SolePart& x) { return "solePart(" + render_term(x.part) + "," + render_term(x.whole) + ")"; },
            [](const atom::MorePartsExpected& x) { return "morePartsExpected(" + render_term(x.whole) + ")"; },
        },
        a);
}

std::string render_atom(const Atom& a) {
    return std::visit(overloaded{
                          [](const atom::Not& n) { return "not " + render_atom(n.inner); },
                          [](const auto& positive) { return render_atom(atom::Positive(positive)); },
                      },
                      a);
}

std::string render_text(const Rule& rule) {
    return "IF " + join_atoms(rule.antecedent) + " THEN " + join_atoms(rule.consequent);
}

std::string rule_id(Pattern pattern, const std::vector<Atom>& antecedent, const std::vector<Atom>& consequent) {
    const auto& row = info(pattern);
    std::string key(row.name);
    key += '\n';
    key += join_atoms(antecedent);
    key += '\n';
    key += join_atoms(consequent);
    char buf[32];
    std::snprintf(buf, sizeof buf, "R%02d-%016llx", row.first_rule,
                  static_cast<unsigned long long>(fnv1a(key)));
    return buf;
}

Rule make_rule(Pattern pattern, std::vector<Atom> antecedent, std::vector<Atom> consequent, Provenance provenance) {
    std::string id = rule_id(pattern, antecedent, consequent);
    return Rule{std::move(id), pattern, std::move(antecedent), std::move(consequent), std::move(provenance)};
}

} // namespace owlrules
