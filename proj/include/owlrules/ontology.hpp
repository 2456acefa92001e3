#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owlrules/iri.hpp"

namespace owlrules {

enum class PropertyKind { Datatype, Object, Symmetric, Transitive };

std::string_view to_string(PropertyKind kind) noexcept;

// Symmetric and transitive properties relate individuals, like plain object properties.
constexpr bool is_object_like(PropertyKind kind) noexcept { return kind != PropertyKind::Datatype; }

struct PropertyDecl {
    Iri iri;
    PropertyKind kind = PropertyKind::Object;
    std::optional<Iri> domain;
    // Class for object-like kinds, opaque datatype token for Datatype.
    std::optional<Iri> range;
    // Referenced by an axiom but never declared; any explicit declaration refines it.
    bool implicit = false;

    friend bool operator==(const PropertyDecl&, const PropertyDecl&) = default;
};

namespace axiom {

struct SubClassOf {
    Iri sub, sup;
    friend auto operator<=>(const SubClassOf&, const SubClassOf&) = default;
};

// Stored with a < b.
struct EquivalentClass {
    Iri a, b;
    friend auto operator<=>(const EquivalentClass&, const EquivalentClass&) = default;
};

struct SubPropertyOf {
    Iri sub, sup;
    friend auto operator<=>(const SubPropertyOf&, const SubPropertyOf&) = default;
};

// Kept in declaration orientation: `property` carries the owl:inverseOf element.
struct InverseOf {
    Iri property, inverse;
    friend auto operator<=>(const InverseOf&, const InverseOf&) = default;
};

struct AllValuesFrom {
    Iri on_property, filler;
    friend auto operator<=>(const AllValuesFrom&, const AllValuesFrom&) = default;
};

struct IntersectionOf {
    Iri defined;
    std::vector<Iri> parts;
    friend auto operator<=>(const IntersectionOf&, const IntersectionOf&) = default;
};

// A property element nested between two class elements, e.g. <subAreaOf> inside owl:Class.
struct ClassLink {
    Iri subject, property, object;
    friend auto operator<=>(const ClassLink&, const ClassLink&) = default;
};

} // namespace axiom

using Axiom = std::variant<axiom::SubClassOf, axiom::EquivalentClass, axiom::SubPropertyOf, axiom::InverseOf,
                           axiom::AllValuesFrom, axiom::IntersectionOf, axiom::ClassLink>;

// Functional-style rendering, e.g. "SubClassOf(House, City)". Also the key for origin tracking.
std::string describe(const Axiom& ax);

// Every Iri the axiom mentions, in slot order.
std::vector<Iri> mentioned_iris(const Axiom& ax);

// Schema of one or more ontology sources: classes, properties and axioms.
//
// Construction is single-threaded; once built the model is only read.
class OntologyModel {
public:
    OntologyModel() = default;
    explicit OntologyModel(std::string source_name);

    enum class DeclareOutcome { Added, Unchanged, Refined, KindConflict };

    void declare_class(const Iri& iri);
    DeclareOutcome declare_property(const Iri& iri, PropertyKind kind);

    // Keeps an existing different value and returns false.
    bool set_domain(const Iri& property, const Iri& cls);
    bool set_range(const Iri& property, const Iri& target);

    enum class AddOutcome { Added, Duplicate, Rejected };

    // Idempotent. Rejects non-link axioms relating an Iri to itself and
    // intersections with fewer than two parts.
    AddOutcome add_axiom(Axiom ax);

    const std::set<Iri>& classes() const noexcept { return classes_; }
    const std::map<Iri, PropertyDecl>& properties() const noexcept { return properties_; }
    const std::vector<Axiom>& axioms() const noexcept { return axioms_; }
    const std::vector<std::string>& source_names() const noexcept { return source_names_; }

    bool has_class(const Iri& iri) const { return classes_.contains(iri); }
    const PropertyDecl* property(const Iri& iri) const;
    bool resolves(const Iri& iri) const { return has_class(iri) || property(iri) != nullptr; }
    bool contains(const Axiom& ax) const { return axiom_index_.contains(ax); }
    bool empty() const noexcept { return classes_.empty() && properties_.empty() && axioms_.empty(); }

    // Sources that contributed a fact, keyed by describe() output or by the
    // "Domain(p, C)" / "Range(p, C)" / "<Kind>Property(p)" spellings.
    std::set<std::string> sources_of(const std::string& key) const;

    // Classes, properties and axiom sets; ignores source names, origins and axiom order.
    friend bool operator==(const OntologyModel& a, const OntologyModel& b);

private:
    friend OntologyModel merge(std::span<const OntologyModel>, std::vector<std::string>*);

    void note_origin(const std::string& key);
    void declare_implicit_property(const Iri& iri);

    std::set<Iri> classes_;
    std::map<Iri, PropertyDecl> properties_;
    std::vector<Axiom> axioms_;
    std::set<Axiom> axiom_index_;
    std::vector<std::string> source_names_;
    std::map<std::string, std::set<std::string>> origins_;
};

std::string domain_key(const Iri& property, const Iri& cls);
std::string range_key(const Iri& property, const Iri& target);
std::string kind_key(const Iri& property, PropertyKind kind);

// Union of the given models. Throws MergeConflict when a property's kinds are
// incompatible. Differing domains or ranges resolve to the lexicographically
// smallest value so the result does not depend on input order; each such
// resolution is appended to `warnings`.
OntologyModel merge(std::span<const OntologyModel> models, std::vector<std::string>* warnings = nullptr);

} // namespace owlrules
