#include "owlrules/extractor.hpp"

#include <algorithm>
#include <set>

#include "owlrules/error.hpp"

namespace owlrules {

namespace {

// Subclass adjacency in both directions, from the model's SubClassOf axioms.
struct SubclassIndex {
    std::map<Iri, std::set<Iri>> supers;
    std::map<Iri, std::set<Iri>> subs;

    explicit SubclassIndex(const OntologyModel& model) {
        for (const auto& ax : model.axioms())
            if (const auto* s = std::get_if<axiom::SubClassOf>(&ax)) {
                supers[s->sub].insert(s->sup);
                subs[s->sup].insert(s->sub);
            }
    }

    const std::set<Iri>& supers_of(const Iri& c) const {
        static const std::set<Iri> none;
        auto it = supers.find(c);
        return it == supers.end() ? none : it->second;
    }
};

std::string quoted(const Iri& iri) { return "\"" + iri.str() + "\""; }

// Collects triggers and resolves their sources against the model.
class RuleBuilder {
public:
    RuleBuilder(const OntologyModel& model, Pattern pattern) : model_(model), pattern_(pattern) {}

    RuleBuilder& trigger(std::string key) {
        triggers_.insert(std::move(key));
        return *this;
    }
    RuleBuilder& trigger(const Axiom& ax) { return trigger(describe(ax)); }
    RuleBuilder& paper_form(std::string text) {
        paper_form_ = std::move(text);
        return *this;
    }

    Rule build(std::vector<Atom> antecedent, std::vector<Atom> consequent) const {
        std::set<std::string> sources;
        for (const auto& t : triggers_) {
            auto s = model_.sources_of(t);
            sources.insert(s.begin(), s.end());
        }
        Provenance prov{{sources.begin(), sources.end()}, {triggers_.begin(), triggers_.end()}, paper_form_};
        return make_rule(pattern_, std::move(antecedent), std::move(consequent), std::move(prov));
    }

private:
    const OntologyModel& model_;
    Pattern pattern_;
    std::set<std::string> triggers_;
    std::string paper_form_;
};

template <class T>
std::set<T> set_union(const std::vector<T>& a, const std::vector<T>& b) {
    std::set<T> out(a.begin(), a.end());
    out.insert(b.begin(), b.end());
    return out;
}

void absorb(Rule& into, const Rule& dup) {
    auto sources = set_union(into.provenance.sources, dup.provenance.sources);
    auto triggers = set_union(into.provenance.trigger_axioms, dup.provenance.trigger_axioms);
    into.provenance.sources.assign(sources.begin(), sources.end());
    into.provenance.trigger_axioms.assign(triggers.begin(), triggers.end());
}

// Sort by id; equal ids describe the same rule, so keep one and merge provenance.
std::vector<Rule> canonical(std::vector<Rule> rules) {
    std::stable_sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.id < b.id; });
    std::vector<Rule> out;
    for (auto& r : rules) {
        if (!out.empty() && out.back().id == r.id) absorb(out.back(), r);
        else out.push_back(std::move(r));
    }
    return out;
}

// Object-like properties with both domain and range, in Iri order.
template <class Fn>
void for_each_typed_relation(const OntologyModel& model, Fn&& fn) {
    for (const auto& [iri, decl] : model.properties())
        if (is_object_like(decl.kind) && decl.domain && decl.range) fn(decl);
}

const Term x = var("x");
const Term y = var("y");
const Term z = var("z");

} // namespace

std::vector<Rule> extract_class_feature(const OntologyModel& model, Warnings*) {
    std::map<Iri, std::vector<const PropertyDecl*>> by_class;
    for (const auto& [iri, decl] : model.properties())
        if (decl.kind == PropertyKind::Datatype && decl.domain) by_class[*decl.domain].push_back(&decl);

    std::vector<Rule> out;
    for (const auto& [cls, props] : by_class) {
        RuleBuilder b(model, Pattern::ClassFeature);
        std::vector<Atom> then;
        std::string features;
        for (const auto* p : props) {
            b.trigger(kind_key(p->iri, p->kind)).trigger(domain_key(p->iri, cls));
            then.push_back(atom::HasFeature{x, p->iri});
            features += (features.empty() ? "" : " and ") + p->iri.str();
        }
        b.paper_form("IF " + cls.str() + " THEN " + features);
        out.push_back(b.build({atom::IsA{x, class_ref(cls)}}, std::move(then)));
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_equivalence_inheritance(const OntologyModel& model, Warnings*) {
    SubclassIndex index(model);
    std::vector<Rule> out;
    for (const auto& ax : model.axioms()) {
        const auto* eq = std::get_if<axiom::EquivalentClass>(&ax);
        if (!eq) continue;
        for (auto [a, b] : {std::pair{eq->a, eq->b}, std::pair{eq->b, eq->a}}) {
            for (const auto& sup : index.supers_of(b)) {
                if (sup == a) continue;
                out.push_back(RuleBuilder(model, Pattern::EquivalenceInheritance)
                                  .trigger(ax)
                                  .trigger(Axiom(axiom::SubClassOf{b, sup}))
                                  .paper_form("IF " + b.str() + " equivalent " + a.str() + " THEN (\"part of\" " +
                                              sup.str() + ") in " + a.str())
                                  .build({atom::SchemaEquivalent{class_ref(a), class_ref(b)},
                                          atom::SchemaSubClassOf{class_ref(b), class_ref(sup)}},
                                         {atom::SchemaSubClassOf{class_ref(a), class_ref(sup)}}));
            }
        }
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_domain_range_identification(const OntologyModel& model, Warnings*) {
    std::vector<Rule> out;
    for_each_typed_relation(model, [&](const PropertyDecl& p) {
        out.push_back(RuleBuilder(model, Pattern::DomainRangeIdentification)
                          .trigger(domain_key(p.iri, *p.domain))
                          .trigger(range_key(p.iri, *p.range))
                          .paper_form("IF (" + p.iri.str() + " " + p.range->str() + ") THEN " + p.domain->str())
                          .build({atom::Link{x, prop_ref(p.iri), y}, atom::IsA{y, class_ref(*p.range)}},
                                 {atom::IsA{x, class_ref(*p.domain)}}));
    });
    return canonical(std::move(out));
}

std::vector<Rule> extract_subclass_transitivity(const OntologyModel& model, Warnings*) {
    SubclassIndex index(model);
    std::vector<Rule> out;
    for (const auto& ax : model.axioms()) {
        const auto* first = std::get_if<axiom::SubClassOf>(&ax);
        if (!first) continue;
        const Iri& a = first->sub;
        const Iri& b = first->sup;
        for (const auto& c : index.supers_of(b)) {
            if (c == a || c == b) continue;
            out.push_back(RuleBuilder(model, Pattern::SubclassTransitivity)
                              .trigger(ax)
                              .trigger(Axiom(axiom::SubClassOf{b, c}))
                              .paper_form("IF (" + a.str() + " \"part of\" " + b.str() + ") and (" + b.str() +
                                          " \"part of\" " + c.str() + ") THEN (" + a.str() + " \"part of\" " +
                                          c.str() + ")")
                              .build({atom::SchemaSubClassOf{class_ref(a), class_ref(b)},
                                      atom::SchemaSubClassOf{class_ref(b), class_ref(c)}},
                                     {atom::SchemaSubClassOf{class_ref(a), class_ref(c)}}));
        }
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_relation_propagation(const OntologyModel& model, Warnings*) {
    SubclassIndex index(model);
    std::vector<Rule> out;
    for_each_typed_relation(model, [&](const PropertyDecl& p) {
        const Iri& d = *p.domain;
        const Iri& r = *p.range;
        for (const auto& w : index.supers_of(r)) {
            out.push_back(RuleBuilder(model, Pattern::RelationPropagation)
                              .trigger(domain_key(p.iri, d))
                              .trigger(range_key(p.iri, r))
                              .trigger(Axiom(axiom::SubClassOf{r, w}))
                              .paper_form("IF (" + d.str() + " " + quoted(p.iri) + " " + r.str() + ") and (" +
                                          r.str() + " \"part of\" " + w.str() + ") THEN (" + d.str() + " " +
                                          quoted(p.iri) + " " + w.str() + ")")
                              .build({atom::Link{x, prop_ref(p.iri), y}, atom::IsA{y, class_ref(r)},
                                      atom::SchemaSubClassOf{class_ref(r), class_ref(w)}},
                                     {atom::Link{x, prop_ref(p.iri), class_ref(w)}}));
        }
    });
    return canonical(std::move(out));
}

std::vector<Rule> extract_subproperty_lift(const OntologyModel& model, Warnings*) {
    std::vector<Rule> out;
    for (const auto& ax : model.axioms()) {
        const auto* sp = std::get_if<axiom::SubPropertyOf>(&ax);
        if (!sp) continue;
        out.push_back(RuleBuilder(model, Pattern::SubpropertyLift)
                          .trigger(ax)
                          .paper_form("IF " + sp->sub.str() + " and \"subproperty of\" THEN " + sp->sup.str())
                          .build({atom::Link{x, prop_ref(sp->sub), y}}, {atom::Link{x, prop_ref(sp->sup), y}}));
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_symmetric(const OntologyModel& model, Warnings* warnings) {
    std::vector<Rule> out;
    for (const auto& [iri, p] : model.properties()) {
        if (p.kind != PropertyKind::Symmetric) continue;
        if (!p.domain || !p.range) {
            if (warnings)
                warnings->push_back("symmetric property '" + iri.str() + "' needs both domain and range; no rules");
            continue;
        }
        for (auto [from, to] : {std::pair{*p.domain, *p.range}, std::pair{*p.range, *p.domain}}) {
            out.push_back(RuleBuilder(model, Pattern::Symmetric)
                              .trigger(kind_key(iri, p.kind))
                              .trigger(domain_key(iri, *p.domain))
                              .trigger(range_key(iri, *p.range))
                              .paper_form("IF " + from.str() + " THEN (" + iri.str() + " " + to.str() + ")")
                              .build({atom::IsA{x, class_ref(from)}}, {atom::Link{x, prop_ref(iri), class_ref(to)}}));
        }
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_transitive(const OntologyModel& model, Warnings*) {
    std::map<Iri, std::map<Iri, std::set<Iri>>> links; // property -> subject -> objects
    for (const auto& ax : model.axioms())
        if (const auto* l = std::get_if<axiom::ClassLink>(&ax)) links[l->property][l->subject].insert(l->object);

    std::vector<Rule> out;
    for (const auto& [t, p] : model.properties()) {
        if (p.kind != PropertyKind::Transitive) continue;
        const std::string kind = kind_key(t, p.kind);
        out.push_back(RuleBuilder(model, Pattern::TransitiveProperty)
                          .trigger(kind)
                          .paper_form("IF (x " + quoted(t) + " y) and (y " + quoted(t) + " z) THEN (x " + quoted(t) +
                                      " z)")
                          .build({atom::Link{x, prop_ref(t), y}, atom::Link{y, prop_ref(t), z}},
                                 {atom::Link{x, prop_ref(t), z}}));

        const auto& graph = links[t];
        for (const auto& [a, mids] : graph) {
            for (const auto& b : mids) {
                auto next = graph.find(b);
                if (b == a || next == graph.end()) continue;
                for (const auto& c : next->second) {
                    if (c == a || c == b) continue;
                    out.push_back(RuleBuilder(model, Pattern::TransitiveProperty)
                                      .trigger(kind)
                                      .trigger(Axiom(axiom::ClassLink{a, t, b}))
                                      .trigger(Axiom(axiom::ClassLink{b, t, c}))
                                      .paper_form("IF (" + a.str() + " " + quoted(t) + " " + b.str() + ") and (" +
                                                  b.str() + " " + quoted(t) + " " + c.str() + ") THEN (" + a.str() +
                                                  " " + quoted(t) + " " + c.str() + ")")
                                      .build({atom::Link{class_ref(a), prop_ref(t), class_ref(b)},
                                              atom::Link{class_ref(b), prop_ref(t), class_ref(c)}},
                                             {atom::Link{class_ref(a), prop_ref(t), class_ref(c)}}));
                }
            }
        }
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_sole_partof(const OntologyModel& model, Warnings*) {
    SubclassIndex index(model);
    std::vector<Rule> out;
    for (const auto& [whole, parts] : index.subs) {
        if (parts.size() != 1) continue;
        const Iri& part = *parts.begin();
        out.push_back(RuleBuilder(model, Pattern::SolePartOf)
                          .trigger(Axiom(axiom::SubClassOf{part, whole}))
                          .paper_form("IF " + whole.str() + " and only one \"part of\" THEN (more \"part of\" in " +
                                      whole.str() + ")")
                          .build({atom::SolePart{class_ref(part), class_ref(whole)}},
                                 {atom::MorePartsExpected{class_ref(whole)}}));
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_cooccurrence(const OntologyModel& model, Warnings*) {
    std::vector<Rule> out;
    for_each_typed_relation(model, [&](const PropertyDecl& p) {
        out.push_back(RuleBuilder(model, Pattern::Cooccurrence)
                          .trigger(domain_key(p.iri, *p.domain))
                          .trigger(range_key(p.iri, *p.range))
                          .paper_form("IF " + p.domain->str() + " and " + p.range->str() + " THEN " + p.iri.str())
                          .build({atom::IsA{x, class_ref(*p.domain)}, atom::IsA{y, class_ref(*p.range)}},
                                 {atom::Link{x, prop_ref(p.iri), y}}));
    });
    return canonical(std::move(out));
}

std::vector<Rule> extract_allvaluesfrom(const OntologyModel& model, Warnings*) {
    std::vector<Rule> out;
    for (const auto& ax : model.axioms()) {
        const auto* avf = std::get_if<axiom::AllValuesFrom>(&ax);
        if (!avf) continue;
        out.push_back(RuleBuilder(model, Pattern::AllValuesFrom)
                          .trigger(ax)
                          .paper_form("IF not " + avf->filler.str() + " THEN not " + avf->on_property.str())
                          .build({negate(atom::IsA{y, class_ref(avf->filler)})},
                                 {negate(atom::Link{x, prop_ref(avf->on_property), y})}));
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_intersection(const OntologyModel& model, Warnings*) {
    std::vector<Rule> out;
    for (const auto& ax : model.axioms()) {
        const auto* in = std::get_if<axiom::IntersectionOf>(&ax);
        if (!in) continue;
        std::vector<Atom> then;
        std::string parts;
        for (const auto& part : in->parts) {
            then.push_back(atom::IsA{x, class_ref(part)});
            parts += (parts.empty() ? "" : " and ") + part.str();
        }
        out.push_back(RuleBuilder(model, Pattern::IntersectionDecomposition)
                          .trigger(ax)
                          .paper_form("IF " + in->defined.str() + " THEN " + parts)
                          .build({atom::IsA{x, class_ref(in->defined)}}, std::move(then)));
    }
    return canonical(std::move(out));
}

std::vector<Rule> extract_inverse(const OntologyModel& model, Warnings* warnings) {
    std::vector<Rule> out;
    for (const auto& ax : model.axioms()) {
        const auto* inv = std::get_if<axiom::InverseOf>(&ax);
        if (!inv) continue;
        const PropertyDecl* p = model.property(inv->property);
        if (!p || !is_object_like(p->kind) || !p->domain || !p->range) {
            if (warnings)
                warnings->push_back("inverse pair '" + inv->property.str() + "'/'" + inv->inverse.str() +
                                    "' needs domain and range on '" + inv->property.str() + "'; no rules");
            continue;
        }
        const Iri& d = *p->domain;
        const Iri& r = *p->range;
        auto builder = [&] {
            RuleBuilder b(model, Pattern::Inverse);
            b.trigger(ax).trigger(domain_key(p->iri, d)).trigger(range_key(p->iri, r));
            return b;
        };
        out.push_back(builder()
                          .paper_form("IF " + d.str() + " THEN (" + inv->property.str() + " " + r.str() + ")")
                          .build({atom::IsA{x, class_ref(d)}}, {atom::Link{x, prop_ref(inv->property), class_ref(r)}}));
        out.push_back(builder()
                          .paper_form("IF " + r.str() + " THEN (" + inv->inverse.str() + " " + d.str() + ")")
                          .build({atom::IsA{x, class_ref(r)}}, {atom::Link{x, prop_ref(inv->inverse), class_ref(d)}}));
    }
    return canonical(std::move(out));
}

PatternExtractor extractor_for(Pattern pattern) {
    switch (pattern) {
    case Pattern::ClassFeature: return extract_class_feature;
    case Pattern::EquivalenceInheritance: return extract_equivalence_inheritance;
    case Pattern::DomainRangeIdentification: return extract_domain_range_identification;
    case Pattern::SubclassTransitivity: return extract_subclass_transitivity;
    case Pattern::RelationPropagation: return extract_relation_propagation;
    case Pattern::SubpropertyLift: return extract_subproperty_lift;
    case Pattern::Symmetric: return extract_symmetric;
    case Pattern::TransitiveProperty: return extract_transitive;
    case Pattern::SolePartOf: return extract_sole_partof;
    case Pattern::Cooccurrence: return extract_cooccurrence;
    case Pattern::AllValuesFrom: return extract_allvaluesfrom;
    case Pattern::IntersectionDecomposition: return extract_intersection;
    case Pattern::Inverse: return extract_inverse;
    }
    throw UnknownPattern(std::to_string(static_cast<int>(pattern)));
}

ExtractionReport extract_all(const OntologyModel& model) {
    ExtractionReport report;
    std::vector<Rule> all;
    for (auto pattern : all_patterns) {
        auto rules = extractor_for(pattern)(model, &report.warnings);
        std::move(rules.begin(), rules.end(), std::back_inserter(all));
    }
    report.rules = canonical(std::move(all));
    for (auto pattern : all_patterns) report.counts[pattern] = 0;
    for (const auto& r : report.rules) ++report.counts[r.pattern];
    return report;
}

} // namespace owlrules
