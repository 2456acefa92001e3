#include "owlrules/rule_json.hpp"

#include <algorithm>

#include <json.hpp>

#include "owlrules/error.hpp"

namespace owlrules {

using json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

json term_to_json(const Term& t) {
    return std::visit(overloaded{
                          [](const term::Var& v) { return json{{"var", v.name}}; },
                          [](const term::ClassRef& c) { return json{{"class", c.iri.str()}}; },
                          [](const term::PropRef& p) { return json{{"prop", p.iri.str()}}; },
                          [](const term::IndividualRef& i) { return json{{"individual", i.iri.str()}}; },
                          [](const term::LiteralTok& l) { return json{{"literal", l.text}}; },
                      },
                      t);
}

json positive_to_json(const atom::Positive& a) {
    return std::visit(
        overloaded{
            [](const atom::IsA& x) {
                return json{{"kind", "isa"}, {"subject", term_to_json(x.subject)}, {"class", term_to_json(x.cls)}};
            },
            [](const atom::Link& x) {
                return json{{"kind", "link"},
                            {"subject", term_to_json(x.subject)},
                            {"property", term_to_json(x.property)},
                            {"object", term_to_json(x.object)}};
            },
            [](const atom::HasFeature& x) {
                return json{{"kind", "feature"},
                            {"subject", term_to_json(x.subject)},
                            {"feature", term_to_json(prop_ref(x.feature))}};
            },
            [](const atom::SchemaSubClassOf& x) {
                return json{{"kind", "subclass"}, {"sub", term_to_json(x.sub)}, {"sup", term_to_json(x.sup)}};
            },
            [](const atom::SchemaEquivalent& x) {
                return json{{"kind", "equivalent"}, {"a", term_to_json(x.a)}, {"b", term_to_json(x.b)}};
            },
            [](const atom::SolePart& x) {
                return json{{"kind", "sole-part"}, {"part", term_to_json(x.part)}, {"whole", term_to_json(x.whole)}};
            },
            [](const atom::MorePartsExpected& x) {
                return json{{"kind", "more-parts"}, {"whole", term_to_json(x.whole)}};
            },
        },
        a);
}

json atom_to_json(const Atom& a) {
    return std::visit(overloaded{
                          [](const atom::Not& n) { return json{{"kind", "not"}, {"atom", positive_to_json(n.inner)}}; },
                          [](const auto& p) { return positive_to_json(atom::Positive(p)); },
                      },
                      a);
}

json atoms_to_json(const std::vector<Atom>& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(atom_to_json(a));
    return out;
}

json rule_to_json(const Rule& r) {
    return json{
        {"id", r.id},
        {"pattern", pattern_name(r.pattern)},
        {"category", category_name(r.category())},
        {"executable", r.executable()},
        {"if", atoms_to_json(r.antecedent)},
        {"then", atoms_to_json(r.consequent)},
        {"provenance",
         json{{"source", r.provenance.sources},
              {"trigger_axioms", r.provenance.trigger_axioms},
              {"paper_form", r.provenance.paper_form}}},
    };
}

// --- reading ---------------------------------------------------------------

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string string_field(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Iri iri_of(const json& v) {
    if (!v.is_string() || !Iri::is_valid(v.get<std::string>())) throw FormatError("invalid IRI in rule document");
    return Iri(v.get<std::string>());
}

Term term_from_json(const json& j) {
    if (!j.is_object() || j.size() != 1) throw FormatError("term must be a single-key object");
    const auto& [key, value] = *j.items().begin();
    if (key == "var") {
        if (!value.is_string()) throw FormatError("variable name must be a string");
        auto name = value.get<std::string>();
        if (name != "x" && name != "y" && name != "z") throw FormatError("variable '" + name + "' not in {x, y, z}");
        return term::Var{name};
    }
    if (key == "class") return term::ClassRef{iri_of(value)};
    if (key == "prop") return term::PropRef{iri_of(value)};
    if (key == "individual") return term::IndividualRef{iri_of(value)};
    if (key == "literal") {
        if (!value.is_string()) throw FormatError("literal must be a string");
        return term::LiteralTok{value.get<std::string>()};
    }
    throw FormatError("unknown term kind '" + key + "'");
}

Term term_at(const json& obj, const char* key) { return term_from_json(field(obj, key)); }

atom::Positive positive_from_json(const json& j) {
    const std::string kind = string_field(j, "kind");
    if (kind == "isa") return atom::IsA{term_at(j, "subject"), term_at(j, "class")};
    if (kind == "link") return atom::Link{term_at(j, "subject"), term_at(j, "property"), term_at(j, "object")};
    if (kind == "feature") {
        Term f = term_at(j, "feature");
        const auto* p = std::get_if<term::PropRef>(&f);
        if (!p) throw FormatError("feature must be a property term");
        return atom::HasFeature{term_at(j, "subject"), p->iri};
    }
    if (kind == "subclass") return atom::SchemaSubClassOf{term_at(j, "sub"), term_at(j, "sup")};
    if (kind == "equivalent") return atom::SchemaEquivalent{term_at(j, "a"), term_at(j, "b")};
    if (kind == "sole-part") return atom::SolePart{term_at(j, "part"), term_at(j, "whole")};
    if (kind == "more-parts") return atom::MorePartsExpected{term_at(j, "whole")};
    if (kind == "not") throw FormatError("negation cannot be nested");
    throw FormatError("unknown atom kind '" + kind + "'");
}

Atom atom_from_json(const json& j) {
    if (string_field(j, "kind") == "not") return atom::Not{positive_from_json(field(j, "atom"))};
    return std::visit([](auto&& p) -> Atom { return p; }, positive_from_json(j));
}

std::vector<Atom> atoms_from_json(const json& j, const char* key) {
    const json& list = field(j, key);
    if (!list.is_array() || list.empty()) throw FormatError(std::string("'") + key + "' must be a non-empty list");
    std::vector<Atom> out;
    for (const auto& a : list) out.push_back(atom_from_json(a));
    return out;
}

std::vector<std::string> strings_from_json(const json& j, const char* key) {
    const json& list = field(j, key);
    if (!list.is_array()) throw FormatError(std::string("'") + key + "' must be a list");
    std::vector<std::string> out;
    for (const auto& s : list) {
        if (!s.is_string()) throw FormatError(std::string("'") + key + "' must hold strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

Rule rule_from_json(const json& j) {
    Rule r;
    r.id = string_field(j, "id");
    r.pattern = pattern_from_name(string_field(j, "pattern"));
    if (category_from_name(string_field(j, "category")) != r.category())
        throw FormatError("rule " + r.id + ": category does not match pattern");
    const json& exec = field(j, "executable");
    if (!exec.is_boolean() || exec.get<bool>() != r.executable())
        throw FormatError("rule " + r.id + ": executable flag does not match pattern");
    r.antecedent = atoms_from_json(j, "if");
    r.consequent = atoms_from_json(j, "then");
    const json& prov = field(j, "provenance");
    r.provenance.sources = strings_from_json(prov, "source");
    r.provenance.trigger_axioms = strings_from_json(prov, "trigger_axioms");
    r.provenance.paper_form = string_field(prov, "paper_form");
    return r;
}

} // namespace

std::string render_structured(std::span<const Rule> rules, std::span<const std::string> sources) {
    std::vector<const Rule*> sorted;
    for (const auto& r : rules) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const Rule* a, const Rule* b) { return a->id < b->id; });

    std::vector<std::string> names(sources.begin(), sources.end());
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    json doc{{"version", structured_format_version}, {"source", names}, {"rules", json::array()}};
    for (const Rule* r : sorted) doc["rules"].push_back(rule_to_json(*r));
    return doc.dump(2) + "\n";
}

RuleDocument parse_structured(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("rule document is not valid JSON: ") + e.what());
    }
    RuleDocument out;
    const json& version = field(doc, "version");
    if (!version.is_number_integer() || version.get<int>() != structured_format_version)
        throw FormatError("unsupported rule document version");
    out.sources = strings_from_json(doc, "source");
    const json& rules = field(doc, "rules");
    if (!rules.is_array()) throw FormatError("'rules' must be a list");
    for (const auto& r : rules) out.rules.push_back(rule_from_json(r));
    return out;
}

} // namespace owlrules
