#include "owlrules/inference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace owlrules {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

using Bindings = std::map<std::string, Iri>;

bool is_schema(const atom::Positive& a) {
    return std::holds_alternative<atom::SchemaSubClassOf>(a) || std::holds_alternative<atom::SchemaEquivalent>(a);
}

bool is_instance_atom(const atom::Positive& a) {
    return std::holds_alternative<atom::IsA>(a) || std::holds_alternative<atom::Link>(a) ||
           std::holds_alternative<atom::HasFeature>(a);
}

void collect_vars(const Term& t, std::set<std::string>& out) {
    if (const auto* v = std::get_if<term::Var>(&t)) out.insert(v->name);
}

std::set<std::string> vars_of(const atom::Positive& a) {
    std::set<std::string> out;
    std::visit(overloaded{
                   [&](const atom::IsA& x) {
                       collect_vars(x.subject, out);
                       collect_vars(x.cls, out);
                   },
                   [&](const atom::Link& x) {
                       collect_vars(x.subject, out);
                       collect_vars(x.property, out);
                       collect_vars(x.object, out);
                   },
                   [&](const atom::HasFeature& x) { collect_vars(x.subject, out); },
                   [&](const auto&) {},
               },
               a);
    return out;
}

// Constants match by name whatever their flag; variables bind individuals only.
bool match_term(const Term& t, const Iri& value, bool value_is_class, Bindings& b) {
    return std::visit(overloaded{
                          [&](const term::Var& v) {
                              if (value_is_class) return false;
                              auto [it, inserted] = b.try_emplace(v.name, value);
                              return inserted || it->second == value;
                          },
                          [&](const term::ClassRef& c) { return c.iri == value; },
                          [&](const term::PropRef& p) { return p.iri == value; },
                          [&](const term::IndividualRef& i) { return i.iri == value; },
                          [&](const term::LiteralTok& l) { return l.text == value.str(); },
                      },
                      t);
}

bool match_atom(const atom::Positive& a, const Fact& f, Bindings& b) {
    if (const auto* isa = std::get_if<atom::IsA>(&a)) {
        const auto* m = std::get_if<fact::Membership>(&f);
        return m && match_term(isa->subject, m->individual, false, b) && match_term(isa->cls, m->cls, true, b);
    }
    if (const auto* link = std::get_if<atom::Link>(&a)) {
        const auto* l = std::get_if<fact::LinkFact>(&f);
        return l && match_term(link->subject, l->subject, false, b) && match_term(link->property, l->property, true, b) &&
               match_term(link->object, l->object, l->object_is_class, b);
    }
    if (const auto* feat = std::get_if<atom::HasFeature>(&a)) {
        const auto* e = std::get_if<fact::FeatureExpected>(&f);
        return e && e->feature == feat->feature && match_term(feat->subject, e->individual, false, b);
    }
    return false;
}

Iri value_of(const Term& t, const Bindings& b) {
    return std::visit(overloaded{
                          [&](const term::Var& v) { return b.at(v.name); },
                          [](const term::ClassRef& c) { return c.iri; },
                          [](const term::PropRef& p) { return p.iri; },
                          [](const term::IndividualRef& i) { return i.iri; },
                          [](const term::LiteralTok& l) { return Iri(l.text); },
                      },
                      t);
}

Fact instantiate(const atom::Positive& a, const Bindings& b) {
    if (const auto* isa = std::get_if<atom::IsA>(&a)) return fact::Membership{value_of(isa->subject, b), value_of(isa->cls, b)};
    if (const auto* link = std::get_if<atom::Link>(&a))
        return fact::LinkFact{value_of(link->subject, b), value_of(link->property, b), value_of(link->object, b),
                              std::holds_alternative<term::ClassRef>(link->object)};
    const auto& feat = std::get<atom::HasFeature>(a);
    return fact::FeatureExpected{value_of(feat.subject, b), feat.feature};
}

// A rule split into what the engine evaluates.
struct CompiledRule {
    const Rule* rule;
    std::vector<atom::Positive> conditions;       // instance atoms to match
    std::vector<atom::Positive> negated_conditions;
    std::vector<atom::Positive> conclusions;      // instance atoms to assert
    std::vector<atom::Positive> denied;           // inner atoms of negated consequents
    bool constraint() const { return !denied.empty(); }
};

CompiledRule compile(const Rule& rule) {
    if (!rule.executable())
        throw RuleNotExecutable("rule " + rule.id + " (" + std::string(pattern_name(rule.pattern)) +
                                ") is not executable");
    CompiledRule c{&rule, {}, {}, {}, {}};
    auto reject = [&](const std::string& why) { throw RuleNotExecutable("rule " + rule.id + ": " + why); };

    for (const auto& a : rule.antecedent) {
        if (const auto* n = std::get_if<atom::Not>(&a)) {
            if (!is_instance_atom(n->inner)) reject("negated condition must be an instance atom");
            c.negated_conditions.push_back(n->inner);
            continue;
        }
        auto p = std::visit([](const auto& x) -> atom::Positive {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, atom::Not>) throw Error("unreachable");
            else return x;
        }, a);
        if (is_instance_atom(p)) c.conditions.push_back(p);
        else if (!is_schema(p)) reject("unsupported condition " + render_atom(a));
    }
    for (const auto& a : rule.consequent) {
        if (const auto* n = std::get_if<atom::Not>(&a)) {
            if (!is_instance_atom(n->inner)) reject("negated consequent must be an instance atom");
            c.denied.push_back(n->inner);
            continue;
        }
        auto p = std::visit([](const auto& x) -> atom::Positive {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, atom::Not>) throw Error("unreachable");
            else return x;
        }, a);
        if (is_instance_atom(p)) c.conclusions.push_back(p);
        else if (!is_schema(p)) reject("unsupported consequent " + render_atom(a));
    }
    if (c.constraint() && !c.conclusions.empty()) reject("mixes negated and positive consequents");
    if (!c.constraint() && !c.negated_conditions.empty()) reject("negated condition outside a constraint rule");

    std::set<std::string> bound;
    for (const auto& a : c.conditions) bound.merge(vars_of(a));
    if (c.constraint())
        for (const auto& a : c.denied) bound.merge(vars_of(a));
    auto require_bound = [&](const std::vector<atom::Positive>& atoms) {
        for (const auto& a : atoms)
            for (const auto& v : vars_of(a))
                if (!bound.contains(v)) reject("variable ?" + v + " is not bound by a condition");
    };
    require_bound(c.conclusions);
    require_bound(c.negated_conditions);
    return c;
}

// Facts grouped by variant alternative so joins only scan candidates of the right shape.
class FactIndex {
public:
    void add(const Fact& f) { by_kind_[f.index()].push_back(f); }
    const std::vector<Fact>& candidates(const atom::Positive& a) const {
        static const std::vector<Fact> none;
        std::size_t kind = std::holds_alternative<atom::IsA>(a)    ? Fact(fact::Membership{}).index()
                           : std::holds_alternative<atom::Link>(a) ? Fact(fact::LinkFact{}).index()
                                                                   : Fact(fact::FeatureExpected{}).index();
        auto it = by_kind_.find(kind);
        return it == by_kind_.end() ? none : it->second;
    }

private:
    std::map<std::size_t, std::vector<Fact>> by_kind_;
};

// Extends `b` over conditions[from..] (skipping `skip`) against `index`; calls `emit` per full match.
void join(const std::vector<atom::Positive>& conditions, std::size_t at, std::size_t skip, const FactIndex& index,
          Bindings& b, const std::function<void(const Bindings&)>& emit) {
    if (at == conditions.size()) {
        emit(b);
        return;
    }
    if (at == skip) {
        join(conditions, at + 1, skip, index, b, emit);
        return;
    }
    for (const auto& f : index.candidates(conditions[at])) {
        Bindings next = b;
        if (match_atom(conditions[at], f, next)) join(conditions, at + 1, skip, index, next, emit);
    }
}

void check_contradiction(const FactBase& base, const Fact& f, const std::string& source) {
    if (const auto* m = std::get_if<fact::Membership>(&f)) {
        if (base.contains(fact::NegMembership{m->individual, m->cls}))
            throw Contradiction(m->individual, m->cls, source, "initial facts");
    } else if (const auto* n = std::get_if<fact::NegMembership>(&f)) {
        if (base.contains(fact::Membership{n->individual, n->cls}))
            throw Contradiction(n->individual, n->cls, base.derived_by(fact::Membership{n->individual, n->cls})
                                                           .value_or("initial facts"),
                                source);
    }
}

} // namespace

InferenceResult run_fixpoint(std::span<const Rule> rules, const FactBase& initial, std::size_t cap) {
    if (cap == 0) throw Error("fixpoint cap must be at least 1");
    std::vector<CompiledRule> compiled;
    for (const auto& r : rules) compiled.push_back(compile(r));

    InferenceResult result;
    FactBase& base = result.final;
    FactIndex index;
    for (const auto& f : initial.facts()) {
        check_contradiction(base, f, "initial facts");
        base.insert(f);
        index.add(f);
    }

    std::vector<Fact> delta(initial.facts().begin(), initial.facts().end());
    for (std::size_t round = 1;; ++round) {
        result.iterations = round;
        FactIndex delta_index;
        for (const auto& f : delta) delta_index.add(f);

        std::vector<std::pair<Fact, std::string>> fresh;
        std::set<Fact> fresh_set;
        for (const auto& c : compiled) {
            if (c.constraint()) continue;
            auto emit = [&](const Bindings& b) {
                for (const auto& concl : c.conclusions) {
                    Fact f = instantiate(concl, b);
                    if (base.contains(f) || fresh_set.contains(f)) continue;
                    fresh_set.insert(f);
                    fresh.emplace_back(std::move(f), c.rule->id);
                }
            };
            if (c.conditions.empty()) {
                if (round == 1) emit({});
                continue;
            }
            // At least one condition must use a fact that is new since the last round.
            for (std::size_t i = 0; i < c.conditions.size(); ++i) {
                for (const auto& f : delta_index.candidates(c.conditions[i])) {
                    Bindings b;
                    if (!match_atom(c.conditions[i], f, b)) continue;
                    join(c.conditions, 0, i, index, b, emit);
                }
            }
        }

        if (fresh.empty()) {
            result.converged = true;
            break;
        }
        delta.clear();
        for (auto& [f, rule_id] : fresh) {
            check_contradiction(base, f, "rule " + rule_id);
            base.insert_derived(f, rule_id);
            index.add(f);
            delta.push_back(f);
            result.derived.push_back({f, rule_id, round});
        }
        if (round >= cap) break;
    }

    std::set<Violation> violations;
    for (const auto& c : compiled) {
        if (!c.constraint()) continue;
        for (const auto& denied : c.denied) {
            for (const auto& f : index.candidates(denied)) {
                Bindings b;
                if (!match_atom(denied, f, b)) continue;
                join(c.conditions, 0, c.conditions.size(), index, b, [&](const Bindings& full) {
                    bool excused = std::any_of(c.negated_conditions.begin(), c.negated_conditions.end(),
                                               [&](const atom::Positive& n) { return base.contains(instantiate(n, full)); });
                    if (!excused) violations.insert({f, c.rule->id});
                });
            }
        }
    }
    result.violations.assign(violations.begin(), violations.end());
    return result;
}

std::size_t termination_cap(std::span<const Rule> rules, const FactBase& facts) {
    std::set<Iri> individuals, properties, classes;
    for (const auto& f : facts.facts()) {
        std::visit(overloaded{
                       [&](const fact::Membership& m) {
                           individuals.insert(m.individual);
                           classes.insert(m.cls);
                       },
                       [&](const fact::NegMembership& m) {
                           individuals.insert(m.individual);
                           classes.insert(m.cls);
                       },
                       [&](const fact::LinkFact& l) {
                           individuals.insert(l.subject);
                           properties.insert(l.property);
                           individuals.insert(l.object);
                       },
                       [&](const fact::FeatureExpected& e) {
                           individuals.insert(e.individual);
                           classes.insert(e.feature);
                       },
                   },
                   f);
    }
    std::function<void(const atom::Positive&)> scan = [&](const atom::Positive& a) {
        std::visit(overloaded{
                       [&](const atom::IsA& x) {
                           if (const auto* c = std::get_if<term::ClassRef>(&x.cls)) classes.insert(c->iri);
                       },
                       [&](const atom::Link& x) {
                           if (const auto* p = std::get_if<term::PropRef>(&x.property)) properties.insert(p->iri);
                           if (const auto* c = std::get_if<term::ClassRef>(&x.subject)) individuals.insert(c->iri);
                           if (const auto* c = std::get_if<term::ClassRef>(&x.object)) individuals.insert(c->iri);
                       },
                       [&](const atom::HasFeature& x) { classes.insert(x.feature); },
                       [](const auto&) {},
                   },
                   a);
    };
    for (const auto& r : rules)
        for (const auto* side : {&r.antecedent, &r.consequent})
            for (const auto& a : *side) {
                if (const auto* n = std::get_if<atom::Not>(&a)) scan(n->inner);
                else std::visit([&](const auto& x) {
                         if constexpr (!std::is_same_v<std::decay_t<decltype(x)>, atom::Not>) scan(x);
                     }, a);
            }
    const std::size_t n = individuals.size();
    return n * n * properties.size() + n * classes.size() + 1;
}

std::vector<Axiom> schema_closure(const OntologyModel& model, std::span<const Rule> rules) {
    bool transitivity = false;
    bool inheritance = false;
    for (const auto& r : rules) {
        if (r.pattern == Pattern::SubclassTransitivity) transitivity = true;
        else if (r.pattern == Pattern::EquivalenceInheritance) inheritance = true;
        else
            throw RuleNotExecutable("schema closure takes subclass-transitivity and equivalence-inheritance rules, not " +
                                    std::string(pattern_name(r.pattern)));
    }

    using Edge = std::pair<Iri, Iri>;
    std::set<Edge> input;
    std::multimap<Iri, Iri> equivalents; // both orientations
    for (const auto& ax : model.axioms()) {
        if (const auto* s = std::get_if<axiom::SubClassOf>(&ax)) input.insert({s->sub, s->sup});
        else if (const auto* e = std::get_if<axiom::EquivalentClass>(&ax)) {
            equivalents.emplace(e->a, e->b);
            equivalents.emplace(e->b, e->a);
        }
    }

    std::set<Edge> all = input;
    std::map<Iri, std::set<Iri>> supers, subs;
    for (const auto& [a, b] : input) {
        supers[a].insert(b);
        subs[b].insert(a);
    }

    std::vector<Edge> delta(input.begin(), input.end());
    while (!delta.empty()) {
        std::set<Edge> fresh;
        auto offer = [&](const Iri& a, const Iri& b) {
            if (a != b && !all.contains({a, b})) fresh.insert({a, b});
        };
        for (const auto& [a, b] : delta) {
            if (transitivity) {
                for (const auto& c : supers[b])
                    if (c != a) offer(a, c);
                for (const auto& d : subs[a])
                    if (d != b) offer(d, b);
            }
            if (inheritance) {
                // a ≡ e and a ⊑ b give e ⊑ b
                auto [lo, hi] = equivalents.equal_range(a);
                for (auto it = lo; it != hi; ++it) offer(it->second, b);
            }
        }
        delta.assign(fresh.begin(), fresh.end());
        for (const auto& [a, b] : fresh) {
            all.insert({a, b});
            supers[a].insert(b);
            subs[b].insert(a);
        }
    }

    std::vector<Axiom> out;
    for (const auto& [a, b] : all)
        if (!input.contains({a, b})) out.push_back(axiom::SubClassOf{a, b});
    return out;
}

} // namespace owlrules
