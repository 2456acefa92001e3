#include "owlrules/ontology.hpp"

#include <algorithm>
#include <sstream>

#include "owlrules/error.hpp"

namespace owlrules {

std::string_view to_string(PropertyKind kind) noexcept {
    switch (kind) {
    case PropertyKind::Datatype: return "DatatypeProperty";
    case PropertyKind::Object: return "ObjectProperty";
    case PropertyKind::Symmetric: return "SymmetricProperty";
    case PropertyKind::Transitive: return "TransitiveProperty";
    }
    return "?";
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string join_iris(const std::vector<Iri>& iris) {
    std::string out;
    for (std::size_t i = 0; i < iris.size(); ++i) {
        if (i) out += ", ";
        out += iris[i].str();
    }
    return out;
}

struct KindState {
    PropertyKind kind;
    bool implicit;
};

// Least upper bound of two declarations, or nullopt when they cannot both hold.
// Implicit declarations sit at the bottom; Object sits below Symmetric and Transitive.
std::optional<KindState> join(KindState a, KindState b) {
    if (a.implicit) return b;
    if (b.implicit) return a;
    if (a.kind == b.kind) return a;
    if (a.kind == PropertyKind::Object && is_object_like(b.kind)) return b;
    if (b.kind == PropertyKind::Object && is_object_like(a.kind)) return a;
    return std::nullopt;
}

bool relates_to_itself(const Axiom& ax) {
    return std::visit(overloaded{
                          [](const axiom::SubClassOf& a) { return a.sub == a.sup; },
                          [](const axiom::EquivalentClass& a) { return a.a == a.b; },
                          [](const axiom::SubPropertyOf& a) { return a.sub == a.sup; },
                          [](const axiom::InverseOf& a) { return a.property == a.inverse; },
                          [](const axiom::AllValuesFrom& a) { return a.on_property == a.filler; },
                          [](const axiom::IntersectionOf& a) {
                              return std::find(a.parts.begin(), a.parts.end(), a.defined) != a.parts.end();
                          },
                          [](const axiom::ClassLink&) { return false; },
                      },
                      ax);
}

} // namespace

std::string describe(const Axiom& ax) {
    return std::visit(
        overloaded{
            [](const axiom::SubClassOf& a) { return "SubClassOf(" + a.sub.str() + ", " + a.sup.str() + ")"; },
            [](const axiom::EquivalentClass& a) { return "EquivalentClass(" + a.a.str() + ", " + a.b.str() + ")"; },
            [](const axiom::SubPropertyOf& a) { return "SubPropertyOf(" + a.sub.str() + ", " + a.sup.str() + ")"; },
            [](const axiom::InverseOf& a) { return "InverseOf(" + a.property.str() + ", " + a.inverse.str() + ")"; },
            [](const axiom::AllValuesFrom& a) {
                return "AllValuesFrom(" + a.on_property.str() + ", " + a.filler.str() + ")";
            },
            [](const axiom::IntersectionOf& a) {
                return "IntersectionOf(" + a.defined.str() + ", [" + join_iris(a.parts) + "])";
            },
            [](const axiom::ClassLink& a) {
                return "ClassLink(" + a.subject.str() + ", " + a.property.str() + ", " + a.object.str() + ")";
            },
        },
        ax);
}

std::vector<Iri> mentioned_iris(const Axiom& ax) {
    return std::visit(overloaded{
                          [](const axiom::SubClassOf& a) { return std::vector<Iri>{a.sub, a.sup}; },
                          [](const axiom::EquivalentClass& a) { return std::vector<Iri>{a.a, a.b}; },
                          [](const axiom::SubPropertyOf& a) { return std::vector<Iri>{a.sub, a.sup}; },
                          [](const axiom::InverseOf& a) { return std::vector<Iri>{a.property, a.inverse}; },
                          [](const axiom::AllValuesFrom& a) { return std::vector<Iri>{a.on_property, a.filler}; },
                          [](const axiom::IntersectionOf& a) {
                              std::vector<Iri> out{a.defined};
                              out.insert(out.end(), a.parts.begin(), a.parts.end());
                              return out;
                          },
                          [](const axiom::ClassLink& a) { return std::vector<Iri>{a.subject, a.property, a.object}; },
                      },
                      ax);
}

std::string domain_key(const Iri& property, const Iri& cls) {
    return "Domain(" + property.str() + ", " + cls.str() + ")";
}

std::string range_key(const Iri& property, const Iri& target) {
    return "Range(" + property.str() + ", " + target.str() + ")";
}

std::string kind_key(const Iri& property, PropertyKind kind) {
    return std::string(to_string(kind)) + "(" + property.str() + ")";
}

OntologyModel::OntologyModel(std::string source_name) { source_names_.push_back(std::move(source_name)); }

void OntologyModel::note_origin(const std::string& key) {
    if (source_names_.size() == 1) origins_[key].insert(source_names_.front());
}

std::set<std::string> OntologyModel::sources_of(const std::string& key) const {
    auto it = origins_.find(key);
    return it == origins_.end() ? std::set<std::string>{} : it->second;
}

const PropertyDecl* OntologyModel::property(const Iri& iri) const {
    auto it = properties_.find(iri);
    return it == properties_.end() ? nullptr : &it->second;
}

void OntologyModel::declare_class(const Iri& iri) { classes_.insert(iri); }

void OntologyModel::declare_implicit_property(const Iri& iri) {
    if (properties_.contains(iri)) return;
    properties_.emplace(iri, PropertyDecl{iri, PropertyKind::Object, std::nullopt, std::nullopt, true});
}

OntologyModel::DeclareOutcome OntologyModel::declare_property(const Iri& iri, PropertyKind kind) {
    note_origin(kind_key(iri, kind));
    auto it = properties_.find(iri);
    if (it == properties_.end()) {
        properties_.emplace(iri, PropertyDecl{iri, kind, std::nullopt, std::nullopt, false});
        return DeclareOutcome::Added;
    }
    PropertyDecl& decl = it->second;
    auto joined = join({decl.kind, decl.implicit}, {kind, false});
    if (!joined) return DeclareOutcome::KindConflict;
    if (joined->kind == decl.kind && joined->implicit == decl.implicit) return DeclareOutcome::Unchanged;
    decl.kind = joined->kind;
    decl.implicit = false;
    return DeclareOutcome::Refined;
}

bool OntologyModel::set_domain(const Iri& property, const Iri& cls) {
    declare_implicit_property(property);
    PropertyDecl& decl = properties_.at(property);
    if (decl.domain && *decl.domain != cls) return false;
    decl.domain = cls;
    classes_.insert(cls);
    note_origin(domain_key(property, cls));
    return true;
}

bool OntologyModel::set_range(const Iri& property, const Iri& target) {
    declare_implicit_property(property);
    PropertyDecl& decl = properties_.at(property);
    if (decl.range && *decl.range != target) return false;
    decl.range = target;
    if (is_object_like(decl.kind)) classes_.insert(target);
    note_origin(range_key(property, target));
    return true;
}

OntologyModel::AddOutcome OntologyModel::add_axiom(Axiom ax) {
    if (auto* eq = std::get_if<axiom::EquivalentClass>(&ax); eq && eq->b < eq->a) std::swap(eq->a, eq->b);
    if (relates_to_itself(ax)) return AddOutcome::Rejected;
    if (auto* in = std::get_if<axiom::IntersectionOf>(&ax); in && in->parts.size() < 2) return AddOutcome::Rejected;

    note_origin(describe(ax));
    if (axiom_index_.contains(ax)) return AddOutcome::Duplicate;

    std::visit(overloaded{
                   [this](const axiom::SubClassOf& a) { classes_.insert({a.sub, a.sup}); },
                   [this](const axiom::EquivalentClass& a) { classes_.insert({a.a, a.b}); },
                   [this](const axiom::SubPropertyOf& a) {
                       declare_implicit_property(a.sub);
                       declare_implicit_property(a.sup);
                   },
                   [this](const axiom::InverseOf& a) {
                       declare_implicit_property(a.property);
                       declare_implicit_property(a.inverse);
                   },
                   [this](const axiom::AllValuesFrom& a) {
                       declare_implicit_property(a.on_property);
                       classes_.insert(a.filler);
                   },
                   [this](const axiom::IntersectionOf& a) {
                       classes_.insert(a.defined);
                       classes_.insert(a.parts.begin(), a.parts.end());
                   },
                   [this](const axiom::ClassLink& a) {
                       classes_.insert({a.subject, a.object});
                       declare_implicit_property(a.property);
                   },
               },
               ax);
    axiom_index_.insert(ax);
    axioms_.push_back(std::move(ax));
    return AddOutcome::Added;
}

bool operator==(const OntologyModel& a, const OntologyModel& b) {
    return a.classes_ == b.classes_ && a.properties_ == b.properties_ && a.axiom_index_ == b.axiom_index_;
}

OntologyModel merge(std::span<const OntologyModel> models, std::vector<std::string>* warnings) {
    OntologyModel out;
    std::map<Iri, std::set<Iri>> domains;
    std::map<Iri, std::set<Iri>> ranges;

    for (const auto& m : models) {
        out.source_names_.insert(out.source_names_.end(), m.source_names_.begin(), m.source_names_.end());
        out.classes_.insert(m.classes_.begin(), m.classes_.end());
        for (const auto& [key, sources] : m.origins_) out.origins_[key].insert(sources.begin(), sources.end());

        for (const auto& [iri, decl] : m.properties_) {
            auto [it, inserted] = out.properties_.try_emplace(iri, PropertyDecl{iri, decl.kind, {}, {}, decl.implicit});
            if (!inserted) {
                PropertyDecl& have = it->second;
                auto joined = join({have.kind, have.implicit}, {decl.kind, decl.implicit});
                if (!joined) {
                    // Name the kinds in a fixed order so the message is input-order independent.
                    auto k1 = std::string(to_string(have.kind));
                    auto k2 = std::string(to_string(decl.kind));
                    if (k2 < k1) std::swap(k1, k2);
                    throw MergeConflict(iri.str(), k1, k2);
                }
                have.kind = joined->kind;
                have.implicit = joined->implicit;
            }
            if (decl.domain) domains[iri].insert(*decl.domain);
            if (decl.range) ranges[iri].insert(*decl.range);
        }
    }

    auto resolve = [&](std::map<Iri, std::set<Iri>>& candidates, std::optional<Iri> PropertyDecl::*slot,
                       std::string_view what) {
        for (auto& [iri, values] : candidates) {
            out.properties_.at(iri).*slot = *values.begin();
            if (values.size() > 1 && warnings) {
                std::ostringstream msg;
                msg << "property '" << iri << "' has " << values.size() << " " << what << "s {";
                bool first = true;
                for (const auto& v : values) {
                    msg << (first ? "" : ", ") << v;
                    first = false;
                }
                msg << "}; keeping " << *values.begin();
                warnings->push_back(msg.str());
            }
        }
    };
    resolve(domains, &PropertyDecl::domain, "domain");
    resolve(ranges, &PropertyDecl::range, "range");

    for (const auto& m : models)
        for (const auto& ax : m.axioms_)
            if (out.axiom_index_.insert(ax).second) out.axioms_.push_back(ax);

    return out;
}

} // namespace owlrules
