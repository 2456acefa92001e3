#include "owlrules/owl_parser.hpp"

#include <expat.h>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "owlrules/error.hpp"

namespace owlrules {

std::string format_diagnostic(const Diagnostic& d, std::string_view source) {
    std::ostringstream os;
    os << (d.severity == Diagnostic::Severity::Error ? "ERROR " : "WARNING ") << source << ':' << d.location.line
       << ':' << d.location.column << ' ' << d.message;
    return os.str();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

// ---------------------------------------------------------------------------
// Event stream (expat, namespace-unaware so prefixes stay literal)

namespace {

struct ExpatState {
    XML_Parser parser;
    std::vector<ParseEvent> events;
    std::string pending_text;
    Location pending_at;

    Location here() const {
        return {static_cast<std::size_t>(XML_GetCurrentLineNumber(parser)),
                static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser)) + 1};
    }

    void flush_text() {
        if (pending_text.empty()) return;
        events.push_back({ParseEvent::Kind::Text, std::move(pending_text), {}, pending_at});
        pending_text.clear();
    }
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto* st = static_cast<ExpatState*>(user);
    st->flush_text();
    ParseEvent ev{ParseEvent::Kind::StartElement, name, {}, st->here()};
    for (std::size_t i = 0; attrs[i]; i += 2) ev.attributes.emplace_back(attrs[i], attrs[i + 1]);
    st->events.push_back(std::move(ev));
}

void XMLCALL on_end(void* user, const XML_Char* name) {
    auto* st = static_cast<ExpatState*>(user);
    st->flush_text();
    st->events.push_back({ParseEvent::Kind::EndElement, name, {}, st->here()});
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
    auto* st = static_cast<ExpatState*>(user);
    if (st->pending_text.empty()) st->pending_at = st->here();
    st->pending_text.append(s, static_cast<std::size_t>(len));
}

} // namespace

std::vector<ParseEvent> read_xml_events(std::string_view xml, std::vector<Diagnostic>& diagnostics) {
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"), XML_ParserFree);
    if (!parser) throw Error("cannot allocate XML parser");

    ExpatState st{parser.get(), {}, {}, {}};
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);

    if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE) == XML_STATUS_ERROR) {
        diagnostics.push_back({Diagnostic::Severity::Error,
                               std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())),
                               st.here()});
    }
    st.flush_text();
    return std::move(st.events);
}

// ---------------------------------------------------------------------------
// Fragment wrapping

namespace {

std::size_t skip_prolog(std::string_view s, std::size_t pos) {
    for (;;) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (s.substr(pos, 4) == "<!--") {
            auto end = s.find("-->", pos + 4);
            if (end == std::string_view::npos) return s.size();
            pos = end + 3;
        } else if (s.substr(pos, 2) == "<?" || s.substr(pos, 2) == "<!") {
            auto end = s.find('>', pos);
            if (end == std::string_view::npos) return s.size();
            pos = end + 1;
        } else {
            return pos;
        }
    }
}

bool starts_with_rdf_root(std::string_view s, std::size_t pos) {
    constexpr std::string_view tag = "<rdf:RDF";
    if (s.substr(pos, tag.size()) != tag) return false;
    if (pos + tag.size() >= s.size()) return false;
    char next = s[pos + tag.size()];
    return next == '>' || next == '/' || std::isspace(static_cast<unsigned char>(next));
}

std::size_t count_lines(std::string_view s) {
    if (s.empty()) return 1;
    auto n = static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
    return s.back() == '\n' ? std::max<std::size_t>(n, 1) : n + 1;
}

} // namespace

WrappedFragment wrap_fragment(std::string_view text) {
    std::size_t start = text.substr(0, 3) == "\xEF\xBB\xBF" ? 3 : 0;
    if (starts_with_rdf_root(text, skip_prolog(text, start))) return {std::string(text), 0};

    std::string body(text);
    // Processing instructions and doctype may only precede the root; blank them.
    for (std::size_t pos = start;;) {
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
        std::size_t end;
        if (body.compare(pos, 4, "<!--") == 0) {
            end = body.find("-->", pos + 4);
            if (end == std::string::npos) break;
            pos = end + 3;
            continue;
        }
        if (body.compare(pos, 2, "<?") != 0 && body.compare(pos, 2, "<!") != 0) break;
        end = body.find('>', pos);
        if (end == std::string::npos) break;
        for (std::size_t i = pos; i <= end; ++i)
            if (body[i] != '\n') body[i] = ' ';
        pos = end + 1;
    }
    for (std::size_t i = 0; i < start; ++i) body[i] = ' ';

    constexpr std::string_view open = "<rdf:RDF>";
    return {std::string(open) + body + "</rdf:RDF>", open.size()};
}

// ---------------------------------------------------------------------------
// Element tree and OWL construct recognition

namespace {

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    Location location;

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attributes)
            if (k == key) return &v;
        return nullptr;
    }
};

std::vector<Element> build_tree(const std::vector<ParseEvent>& events) {
    std::vector<Element> roots;
    std::vector<Element> stack;
    for (const auto& ev : events) {
        switch (ev.kind) {
        case ParseEvent::Kind::StartElement:
            stack.push_back({ev.name, ev.attributes, {}, ev.location});
            break;
        case ParseEvent::Kind::EndElement: {
            Element done = std::move(stack.back());
            stack.pop_back();
            (stack.empty() ? roots : stack.back().children).push_back(std::move(done));
            break;
        }
        case ParseEvent::Kind::Text:
            break;
        }
    }
    // Unclosed elements only survive a malformed parse; keep what was read.
    while (!stack.empty()) {
        Element done = std::move(stack.back());
        stack.pop_back();
        (stack.empty() ? roots : stack.back().children).push_back(std::move(done));
    }
    return roots;
}

bool has_prefix(std::string_view name, std::string_view prefix) { return name.substr(0, prefix.size()) == prefix; }

bool is_vocabulary(std::string_view name) {
    return has_prefix(name, "owl:") || has_prefix(name, "rdf:") || has_prefix(name, "rdfs:");
}

bool is_annotation(std::string_view name) {
    return name == "rdfs:label" || name == "rdfs:comment" || name == "rdfs:seeAlso" || name == "rdfs:isDefinedBy" ||
           name == "owl:versionInfo";
}

// Local part of an rdf:type value such as "http://www.w3.org/2002/07/owl#ObjectProperty" or "owl:Class".
std::string_view type_local_name(std::string_view resource) {
    auto cut = resource.find_last_of("#:");
    return cut == std::string_view::npos ? resource : resource.substr(cut + 1);
}

std::optional<PropertyKind> property_kind_of(std::string_view local) {
    if (local == "DatatypeProperty") return PropertyKind::Datatype;
    if (local == "ObjectProperty") return PropertyKind::Object;
    if (local == "SymmetricProperty") return PropertyKind::Symmetric;
    if (local == "TransitiveProperty") return PropertyKind::Transitive;
    return std::nullopt;
}

class ModelBuilder {
public:
    ModelBuilder(OntologyModel& model, std::vector<Diagnostic>& diagnostics)
        : model_(model), diagnostics_(diagnostics) {}

    void top_level(const Element& el) {
        const std::string& n = el.name;
        if (n == "rdf:RDF") {
            for (const auto& child : el.children) top_level(child);
        } else if (n == "owl:Ontology" || is_annotation(n)) {
            // header metadata
        } else if (n == "owl:Class") {
            class_element(el);
        } else if (auto kind = property_element_kind(n)) {
            property_element(el, *kind);
        } else if (n == "owl:Restriction") {
            restriction(el);
        } else if (n == "rdf:Description") {
            description(el);
        } else if (is_vocabulary(n)) {
            warn(el, "unsupported element <" + n + "> skipped");
        } else {
            warn(el, "instance element <" + n + "> skipped");
        }
    }

private:
    static std::optional<PropertyKind> property_element_kind(std::string_view name) {
        if (!has_prefix(name, "owl:")) return std::nullopt;
        return property_kind_of(name.substr(4));
    }

    void warn(const Element& el, std::string msg) {
        diagnostics_.push_back({Diagnostic::Severity::Warning, std::move(msg), el.location});
    }
    void error(const Element& el, std::string msg) {
        diagnostics_.push_back({Diagnostic::Severity::Error, std::move(msg), el.location});
    }

    std::optional<Iri> make_iri(const Element& el, const std::string& raw) {
        if (!Iri::is_valid(raw)) {
            error(el, "invalid identifier '" + raw + "' on <" + el.name + ">");
            return std::nullopt;
        }
        return Iri(raw);
    }

    // rdf:ID defines, rdf:about references; either names the element's subject.
    std::optional<Iri> subject_of(const Element& el) {
        if (const auto* id = el.attr("rdf:ID")) return make_iri(el, *id);
        if (const auto* about = el.attr("rdf:about")) return make_iri(el, *about);
        return std::nullopt;
    }

    // Object of a property element: rdf:resource, or a nested named class.
    std::optional<Iri> object_of(const Element& el) {
        if (const auto* res = el.attr("rdf:resource")) return make_iri(el, *res);
        for (const auto& child : el.children) {
            if (child.name == "owl:Class") return class_element(child);
            if (child.name == "rdf:Description") {
                if (auto s = subject_of(child)) {
                    model_.declare_class(*s);
                    return s;
                }
            }
        }
        return std::nullopt;
    }

    void add(const Element& el, Axiom ax) {
        std::string text = describe(ax);
        if (model_.add_axiom(std::move(ax)) == OntologyModel::AddOutcome::Rejected)
            warn(el, text + " relates an identifier to itself; ignored");
    }

    std::optional<Iri> class_element(const Element& el) {
        auto cls = subject_of(el);
        if (!cls) {
            if (!el.attr("rdf:ID") && !el.attr("rdf:about")) error(el, "owl:Class without rdf:ID or rdf:about");
            return std::nullopt;
        }
        model_.declare_class(*cls);
        for (const auto& child : el.children) class_child(*cls, child);
        return cls;
    }

    void class_child(const Iri& cls, const Element& child) {
        const std::string& n = child.name;
        if (is_annotation(n)) return;
        if (n == "rdfs:subClassOf") {
            if (nested_restriction(child)) return;
            if (auto sup = object_of(child)) add(child, axiom::SubClassOf{cls, *sup});
            else warn(child, "rdfs:subClassOf without a class reference");
        } else if (n == "owl:equivalentClass" || n == "owl:sameAs") {
            if (nested_restriction(child)) return;
            if (auto other = object_of(child)) add(child, axiom::EquivalentClass{cls, *other});
            else warn(child, "<" + n + "> without a class reference");
        } else if (n == "owl:intersectionOf") {
            intersection(cls, child);
        } else if (n == "rdf:type") {
            const auto* res = child.attr("rdf:resource");
            if (!res || type_local_name(*res) != "Class") warn(child, "unsupported rdf:type on class skipped");
        } else if (is_vocabulary(n)) {
            warn(child, "unsupported element <" + n + "> inside owl:Class skipped");
        } else {
            // Custom property element between classes.
            auto prop = make_iri(child, n);
            auto target = object_of(child);
            if (!prop) return;
            if (!target) {
                warn(child, "property element <" + n + "> without an object skipped");
                return;
            }
            add(child, axiom::ClassLink{cls, *prop, *target});
        }
    }

    bool nested_restriction(const Element& el) {
        bool found = false;
        for (const auto& child : el.children)
            if (child.name == "owl:Restriction") {
                restriction(child);
                found = true;
            }
        return found;
    }

    void intersection(const Iri& cls, const Element& el) {
        const auto* parse_type = el.attr("rdf:parseType");
        if (!parse_type || *parse_type != "Collection") {
            warn(el, "owl:intersectionOf without rdf:parseType=\"Collection\" skipped");
            return;
        }
        std::vector<Iri> parts;
        for (const auto& child : el.children) {
            if (child.name == "owl:Class" || child.name == "rdf:Description") {
                if (auto part = child.name == "owl:Class" ? class_element(child) : subject_of(child)) {
                    model_.declare_class(*part);
                    parts.push_back(*part);
                }
            } else {
                warn(child, "unsupported intersection member <" + child.name + "> skipped");
            }
        }
        if (parts.size() < 2) {
            warn(el, "owl:intersectionOf needs at least two named classes");
            return;
        }
        add(el, axiom::IntersectionOf{cls, std::move(parts)});
    }

    void property_element(const Element& el, PropertyKind kind) {
        auto prop = subject_of(el);
        if (!prop) {
            if (!el.attr("rdf:ID") && !el.attr("rdf:about")) error(el, el.name + " without rdf:ID or rdf:about");
            return;
        }
        declare(el, *prop, kind);
        for (const auto& child : el.children) property_child(*prop, child);
    }

    void declare(const Element& el, const Iri& prop, PropertyKind kind) {
        if (model_.declare_property(prop, kind) == OntologyModel::DeclareOutcome::KindConflict)
            warn(el, "property '" + prop.str() + "' already declared as " +
                         std::string(to_string(model_.property(prop)->kind)) + "; keeping it over " +
                         std::string(to_string(kind)));
    }

    void property_child(const Iri& prop, const Element& child) {
        const std::string& n = child.name;
        if (is_annotation(n)) return;
        if (n == "rdfs:domain") {
            auto cls = object_of(child);
            if (!cls) warn(child, "rdfs:domain without a class reference");
            else if (!model_.set_domain(prop, *cls))
                warn(child, "property '" + prop.str() + "' has several domains; keeping " +
                                model_.property(prop)->domain->str());
        } else if (n == "rdfs:range") {
            auto target = object_of(child);
            if (!target) warn(child, "rdfs:range without a reference");
            else if (!model_.set_range(prop, *target))
                warn(child, "property '" + prop.str() + "' has several ranges; keeping " +
                                model_.property(prop)->range->str());
        } else if (n == "rdfs:subPropertyOf") {
            if (auto sup = object_of(child)) add(child, axiom::SubPropertyOf{prop, *sup});
            else warn(child, "rdfs:subPropertyOf without a property reference");
        } else if (n == "owl:inverseOf") {
            if (auto inv = object_of(child)) add(child, axiom::InverseOf{prop, *inv});
            else warn(child, "owl:inverseOf without a property reference");
        } else if (n == "rdf:type") {
            const auto* res = child.attr("rdf:resource");
            auto kind = res ? property_kind_of(type_local_name(*res)) : std::nullopt;
            if (kind) declare(child, prop, *kind);
            else warn(child, "unsupported rdf:type on property skipped");
        } else {
            warn(child, "unsupported element <" + n + "> inside property skipped");
        }
    }

    void restriction(const Element& el) {
        std::optional<Iri> on_property;
        std::optional<Iri> filler;
        for (const auto& child : el.children) {
            if (child.name == "owl:onProperty") {
                on_property = object_of(child);
            } else if (child.name == "owl:allValuesFrom") {
                filler = object_of(child);
            } else if (!is_annotation(child.name)) {
                warn(child, "unsupported restriction component <" + child.name + "> skipped");
            }
        }
        if (on_property && filler) add(el, axiom::AllValuesFrom{*on_property, *filler});
        else warn(el, "owl:Restriction without owl:onProperty and owl:allValuesFrom skipped");
    }

    void description(const Element& el) {
        auto subject = subject_of(el);
        if (!subject) {
            warn(el, "rdf:Description without rdf:about skipped");
            return;
        }
        for (const auto& child : el.children) {
            const std::string& n = child.name;
            if (n == "rdfs:subClassOf" || n == "owl:equivalentClass" || n == "owl:sameAs" ||
                n == "owl:intersectionOf") {
                model_.declare_class(*subject);
                class_child(*subject, child);
            } else if (n == "rdfs:subPropertyOf" || n == "owl:inverseOf") {
                property_child(*subject, child);
            } else if (n == "rdf:type") {
                const auto* res = child.attr("rdf:resource");
                auto local = res ? type_local_name(*res) : std::string_view{};
                if (local == "Class") model_.declare_class(*subject);
                else if (auto kind = property_kind_of(local)) declare(child, *subject, *kind);
                else warn(child, "unsupported rdf:type skipped");
            } else if (!is_annotation(n)) {
                warn(child, "unsupported element <" + n + "> inside rdf:Description skipped");
            }
        }
    }

    OntologyModel& model_;
    std::vector<Diagnostic>& diagnostics_;
};

} // namespace

OntologyParse parse_ontology(std::string_view xml, std::string name) {
    OntologyParse out{OntologyModel(std::move(name)), {}};
    auto events = read_xml_events(xml, out.diagnostics);
    if (!out.ok()) return out;
    ModelBuilder builder(out.model, out.diagnostics);
    for (const auto& root : build_tree(events)) builder.top_level(root);
    return out;
}

OntologyParse parse_ontology(std::istream& in, std::string name) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ontology(buf.str(), std::move(name));
}

OntologyParse parse_ontology_fragment(std::string_view text, std::string name) {
    auto wrapped = wrap_fragment(text);
    auto out = parse_ontology(wrapped.text, std::move(name));
    const std::size_t last_line = count_lines(text);
    for (auto& d : out.diagnostics) {
        auto& loc = d.location;
        if (loc.line == 1 && wrapped.first_line_shift) loc.column = loc.column > wrapped.first_line_shift
                                                                        ? loc.column - wrapped.first_line_shift
                                                                        : 1;
        loc.line = std::clamp<std::size_t>(loc.line, 1, last_line);
    }
    return out;
}

OntologyParse load_ontology_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        OntologyParse out{OntologyModel(path.string()), {}};
        out.diagnostics.push_back({Diagnostic::Severity::Error, "cannot open file", {1, 1}});
        return out;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ontology_fragment(buf.str(), path.string());
}

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string attr_ref(const Iri& iri) {
    std::string out = "#";
    for (char c : iri.str()) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

std::string print_model(const OntologyModel& model) {
    std::ostringstream os;
    os << "<rdf:RDF>\n";
    for (const auto& cls : model.classes()) os << "  <owl:Class rdf:about=\"" << attr_ref(cls) << "\"/>\n";
    for (const auto& [iri, decl] : model.properties()) {
        if (decl.implicit) continue;
        const auto tag = to_string(decl.kind);
        os << "  <owl:" << tag << " rdf:about=\"" << attr_ref(iri) << "\"";
        if (!decl.domain && !decl.range) {
            os << "/>\n";
            continue;
        }
        os << ">\n";
        if (decl.domain) os << "    <rdfs:domain rdf:resource=\"" << attr_ref(*decl.domain) << "\"/>\n";
        if (decl.range) os << "    <rdfs:range rdf:resource=\"" << attr_ref(*decl.range) << "\"/>\n";
        os << "  </owl:" << tag << ">\n";
    }
    for (const auto& ax : model.axioms()) {
        std::visit(overloaded{
                       [&](const axiom::SubClassOf& a) {
                           os << "  <owl:Class rdf:about=\"" << attr_ref(a.sub) << "\"><rdfs:subClassOf rdf:resource=\""
                              << attr_ref(a.sup) << "\"/></owl:Class>\n";
                       },
                       [&](const axiom::EquivalentClass& a) {
                           os << "  <owl:Class rdf:about=\"" << attr_ref(a.a)
                              << "\"><owl:equivalentClass rdf:resource=\"" << attr_ref(a.b) << "\"/></owl:Class>\n";
                       },
                       [&](const axiom::SubPropertyOf& a) {
                           os << "  <rdf:Description rdf:about=\"" << attr_ref(a.sub)
                              << "\"><rdfs:subPropertyOf rdf:resource=\"" << attr_ref(a.sup)
                              << "\"/></rdf:Description>\n";
                       },
                       [&](const axiom::InverseOf& a) {
                           os << "  <rdf:Description rdf:about=\"" << attr_ref(a.property)
                              << "\"><owl:inverseOf rdf:resource=\"" << attr_ref(a.inverse)
                              << "\"/></rdf:Description>\n";
                       },
                       [&](const axiom::AllValuesFrom& a) {
                           os << "  <owl:Restriction><owl:onProperty rdf:resource=\"" << attr_ref(a.on_property)
                              << "\"/><owl:allValuesFrom rdf:resource=\"" << attr_ref(a.filler)
                              << "\"/></owl:Restriction>\n";
                       },
                       [&](const axiom::IntersectionOf& a) {
                           os << "  <owl:Class rdf:about=\"" << attr_ref(a.defined)
                              << "\"><owl:intersectionOf rdf:parseType=\"Collection\">";
                           for (const auto& p : a.parts) os << "<owl:Class rdf:about=\"" << attr_ref(p) << "\"/>";
                           os << "</owl:intersectionOf></owl:Class>\n";
                       },
                       [&](const axiom::ClassLink& a) {
                           os << "  <owl:Class rdf:about=\"" << attr_ref(a.subject) << "\"><" << a.property.str()
                              << " rdf:resource=\"" << attr_ref(a.object) << "\"/></owl:Class>\n";
                       },
                   },
                   ax);
    }
    os << "</rdf:RDF>\n";
    return os.str();
}

} // namespace owlrules
