#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owlrules/iri.hpp"

namespace owlrules {

// ---------------------------------------------------------------------------
// Terms

namespace term {

// Rule variable; templates only use x, y and z.
struct Var {
    std::string name;
    friend auto operator<=>(const Var&, const Var&) = default;
};
struct ClassRef {
    Iri iri;
    friend auto operator<=>(const ClassRef&, const ClassRef&) = default;
};
struct PropRef {
    Iri iri;
    friend auto operator<=>(const PropRef&, const PropRef&) = default;
};
struct IndividualRef {
    Iri iri;
    friend auto operator<=>(const IndividualRef&, const IndividualRef&) = default;
};
struct LiteralTok {
    std::string text;
    friend auto operator<=>(const LiteralTok&, const LiteralTok&) = default;
};

} // namespace term

using Term = std::variant<term::Var, term::ClassRef, term::PropRef, term::IndividualRef, term::LiteralTok>;

inline Term var(std::string_view name) { return term::Var{std::string(name)}; }
inline Term class_ref(const Iri& iri) { return term::ClassRef{iri}; }
inline Term prop_ref(const Iri& iri) { return term::PropRef{iri}; }

// ---------------------------------------------------------------------------
// Atoms

namespace atom {

struct IsA {
    Term subject, cls;
    friend auto operator<=>(const IsA&, const IsA&) = default;
};
struct Link {
    Term subject, property, object;
    friend auto operator<=>(const Link&, const Link&) = default;
};
// Presence of a datatype property value.
struct HasFeature {
    Term subject;
    Iri feature;
    friend auto operator<=>(const HasFeature&, const HasFeature&) = default;
};
struct SchemaSubClassOf {
    Term sub, sup;
    friend auto operator<=>(const SchemaSubClassOf&, const SchemaSubClassOf&) = default;
};
struct SchemaEquivalent {
    Term a, b;
    friend auto operator<=>(const SchemaEquivalent&, const SchemaEquivalent&) = default;
};
struct SolePart {
    Term part, whole;
    friend auto operator<=>(const SolePart&, const SolePart&) = default;
};
struct MorePartsExpected {
    Term whole;
    friend auto operator<=>(const MorePartsExpected&, const MorePartsExpected&) = default;
};

using Positive = std::variant<IsA, Link, HasFeature, SchemaSubClassOf, SchemaEquivalent, SolePart, MorePartsExpected>;

// Negation of a positive atom; the type rules out double negation.
struct Not {
    Positive inner;
    friend auto operator<=>(const Not&, const Not&) = default;
};

} // namespace atom

using Atom = std::variant<atom::IsA, atom::Link, atom::HasFeature, atom::Not, atom::SchemaSubClassOf,
                          atom::SchemaEquivalent, atom::SolePart, atom::MorePartsExpected>;

Atom negate(const atom::Positive& inner);

// ---------------------------------------------------------------------------
// Patterns and categories

// One value per ontology fragment shape that licenses rules.
enum class Pattern {
    ClassFeature,
    EquivalenceInheritance,
    DomainRangeIdentification,
    SubclassTransitivity,
    RelationPropagation,
    SubpropertyLift,
    Symmetric,
    TransitiveProperty,
    SolePartOf,
    Cooccurrence,
    AllValuesFrom,
    IntersectionDecomposition,
    Inverse,
};

inline constexpr std::array<Pattern, 13> all_patterns{
    Pattern::ClassFeature,       Pattern::EquivalenceInheritance, Pattern::DomainRangeIdentification,
    Pattern::SubclassTransitivity, Pattern::RelationPropagation, Pattern::SubpropertyLift,
    Pattern::Symmetric,          Pattern::TransitiveProperty,     Pattern::SolePartOf,
    Pattern::Cooccurrence,       Pattern::AllValuesFrom,          Pattern::IntersectionDecomposition,
    Pattern::Inverse,
};

// Kebab-case identifier used in output, e.g. "subproperty-lift".
std::string_view pattern_name(Pattern p);
// Throws UnknownPattern.
Pattern pattern_from_name(std::string_view name);

enum class RuleCategory { Identifying, Specifying, Unobvious, MeaningEnriching };

// Reporting order.
inline constexpr std::array<RuleCategory, 4> all_categories{
    RuleCategory::Identifying, RuleCategory::Specifying, RuleCategory::Unobvious, RuleCategory::MeaningEnriching};

std::string_view category_name(RuleCategory c);
RuleCategory category_from_name(std::string_view name);

// Category each pattern's rules belong to:
//   identifying       domain-range-identification, subproperty-lift
//   specifying        class-feature, cooccurrence, intersection-decomposition
//   unobvious         equivalence-inheritance, subclass-transitivity, relation-propagation,
//                     transitive-property, sole-partof
//   meaning-enriching symmetric, all-values-from, inverse
RuleCategory classify(Pattern p);
// Throws UnknownPattern for names outside the thirteen patterns.
RuleCategory classify(std::string_view pattern_name);

// Only sole-partof rules lack instance-level semantics.
constexpr bool is_executable(Pattern p) noexcept { return p != Pattern::SolePartOf; }

// ---------------------------------------------------------------------------
// Rules

struct Provenance {
    std::vector<std::string> sources;        // sorted, unique
    std::vector<std::string> trigger_axioms; // sorted, unique
    std::string paper_form;                  // propositional phrasing, display only

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Rule {
    std::string id;
    Pattern pattern;
    std::vector<Atom> antecedent;
    std::vector<Atom> consequent;
    Provenance provenance;

    RuleCategory category() const { return classify(pattern); }
    bool executable() const { return is_executable(pattern); }

    friend bool operator==(const Rule&, const Rule&) = default;
};

// Computes the id from pattern and atoms.
Rule make_rule(Pattern pattern, std::vector<Atom> antecedent, std::vector<Atom> consequent, Provenance provenance);

// "R09-" + 64-bit FNV-1a of the pattern name and the rendered atoms, in hex.
// The prefix is the number of the first rule the pattern yields, so id order
// follows pattern order.
std::string rule_id(Pattern pattern, const std::vector<Atom>& antecedent, const std::vector<Atom>& consequent);

std::string render_term(const Term& t);
std::string render_atom(const Atom& a);
std::string render_atom(const atom::Positive& a);

// "IF Car(?x) THEN hasFeature(?x,Engine) and hasFeature(?x,Wheel)"
std::string render_text(const Rule& rule);

} // namespace owlrules
