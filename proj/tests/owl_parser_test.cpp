#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "random_models.hpp"

#include "owlrules/owl_parser.hpp"

using namespace owlrules;

namespace {

Iri I(const char* s) { return Iri(s); }

std::filesystem::path corpus(const std::string& name) { return std::filesystem::path(OWLRULES_CORPUS_DIR) / name; }

OntologyModel load(const std::string& name) {
    auto parsed = load_ontology_file(corpus(name));
    EXPECT_TRUE(parsed.ok()) << name;
    return parsed.model;
}

std::size_t count(const std::vector<Diagnostic>& ds, Diagnostic::Severity s) {
    return std::count_if(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.severity == s; });
}

} // namespace

TEST(Parser, CarListing) {
    auto m = load("f01_car.owl");
    EXPECT_EQ(m.classes(), std::set<Iri>{I("Car")});
    ASSERT_EQ(m.properties().size(), 2u);
    for (const char* p : {"Wheel", "Engine"}) {
        const auto* d = m.property(I(p));
        ASSERT_NE(d, nullptr);
        EXPECT_EQ(d->kind, PropertyKind::Datatype);
        EXPECT_EQ(*d->domain, I("Car"));
        EXPECT_EQ(*d->range, I("xs:string"));
        EXPECT_FALSE(d->implicit);
    }
    EXPECT_TRUE(m.axioms().empty());
}

TEST(Parser, EmptyRoot) {
    auto r = parse_ontology("<rdf:RDF/>", "e");
    EXPECT_TRUE(r.model.empty());
    EXPECT_TRUE(r.diagnostics.empty());
    auto blank = parse_ontology_fragment("", "blank");
    EXPECT_TRUE(blank.model.empty());
    EXPECT_TRUE(blank.diagnostics.empty());
}

TEST(Parser, SubclassSpellingsAgree) {
    auto a = load("f04a_resource.owl");
    EXPECT_EQ(load("f04b_nested_id.owl"), a);
    EXPECT_EQ(load("f04c_nested_about.owl"), a);
    EXPECT_TRUE(a.contains(axiom::SubClassOf{I("House"), I("City")}));
    EXPECT_TRUE(a.contains(axiom::SubClassOf{I("City"), I("Country")}));
    EXPECT_EQ(a.axioms().size(), 2u);
}

TEST(Parser, EveryVariantGroupAgrees) {
    EXPECT_EQ(load("f02a_equivalent.owl"), load("f02b_sameas.owl"));
    EXPECT_EQ(load("f05a_resource.owl"), load("f05b_nested_id.owl"));
    EXPECT_EQ(load("f05a_resource.owl"), load("f05c_nested_about.owl"));
    EXPECT_EQ(load("f09a_nested.owl"), load("f09b_resource.owl"));
    EXPECT_EQ(load("f10a_resource.owl"), load("f10b_nested_id.owl"));
    EXPECT_EQ(load("f10a_resource.owl"), load("f10c_nested_about.owl"));
}

TEST(Parser, TransitiveListing) {
    for (const char* f : {"f09a_nested.owl", "f09b_resource.owl"}) {
        auto m = load(f);
        EXPECT_EQ(m.classes(), (std::set<Iri>{I("EU"), I("Latgale"), I("Latvia")})) << f;
        ASSERT_NE(m.property(I("subAreaOf")), nullptr);
        EXPECT_EQ(m.property(I("subAreaOf"))->kind, PropertyKind::Transitive);
        EXPECT_TRUE(m.contains(axiom::ClassLink{I("Latgale"), I("subAreaOf"), I("Latvia")}));
        EXPECT_TRUE(m.contains(axiom::ClassLink{I("Latvia"), I("subAreaOf"), I("EU")}));
        EXPECT_EQ(m.axioms().size(), 2u);
    }
}

TEST(Parser, SameAsIsEquivalence) {
    auto m = load("f02b_sameas.owl");
    EXPECT_TRUE(m.contains(axiom::EquivalentClass{I("Auto"), I("Car")}));
}

TEST(Parser, RestrictionIntersectionInverse) {
    EXPECT_TRUE(load("f12_allvalues.owl").contains(axiom::AllValuesFrom{I("hasPass"), I("Citizen")}));
    EXPECT_TRUE(load("f13_intersection.owl").contains(axiom::IntersectionOf{I("Man"), {I("Male"), I("Human")}}));
    auto inv = load("f14_inverse.owl");
    EXPECT_TRUE(inv.contains(axiom::InverseOf{I("owns"), I("is_owned_by")}));
    EXPECT_TRUE(inv.property(I("is_owned_by"))->implicit);
    EXPECT_TRUE(load("f06_subproperty.owl").contains(axiom::SubPropertyOf{I("hasFather"), I("hasParent")}));
}

TEST(Parser, RestrictionInsideSubclass) {
    auto r = parse_ontology_fragment(R"(<owl:Class rdf:ID="Holder">
  <rdfs:subClassOf>
    <owl:Restriction>
      <owl:onProperty rdf:resource="#hasPass"/>
      <owl:allValuesFrom rdf:resource="#Citizen"/>
    </owl:Restriction>
  </rdfs:subClassOf>
</owl:Class>)",
                                     "r");
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.model.contains(axiom::AllValuesFrom{I("hasPass"), I("Citizen")}));
}

TEST(Parser, MalformedXmlHasLocation) {
    auto r = parse_ontology_fragment("<owl:Class rdf:ID=\"Car\">\n<rdfs:subClassOf rdf:resource=\"#V\">\n</owl:Class>\n",
                                     "bad");
    EXPECT_FALSE(r.ok());
    ASSERT_EQ(count(r.diagnostics, Diagnostic::Severity::Error), 1u);
    const auto& d = r.diagnostics.back();
    EXPECT_GE(d.location.line, 1u);
    EXPECT_LE(d.location.line, 3u);
}

TEST(Parser, RunTogetherListingIsNotXml) {
    auto r = parse_ontology_fragment("<owl:Classrdf:ID=\"#Car\"/>", "typo");
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(count(r.diagnostics, Diagnostic::Severity::Error), 1u);
}

TEST(Parser, ClassWithoutIdentifierIsError) {
    auto r = parse_ontology_fragment("<owl:Class>\n</owl:Class>", "x");
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.diagnostics.front().location.line, 1u);
    EXPECT_EQ(format_diagnostic(r.diagnostics.front(), "x.owl").rfind("ERROR x.owl:1:1 ", 0), 0u);
}

TEST(Parser, UnknownVocabularyWarnsAndSkips) {
    auto r = parse_ontology_fragment("<owl:Class rdf:ID=\"A\"/>\n<owl:FunctionalProperty rdf:ID=\"p\"/>", "u");
    EXPECT_TRUE(r.ok());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].severity, Diagnostic::Severity::Warning);
    EXPECT_EQ(r.diagnostics[0].location.line, 2u);
    EXPECT_EQ(r.model.classes(), std::set<Iri>{I("A")});
    EXPECT_EQ(r.model.property(I("p")), nullptr);
}

TEST(Parser, SelfSubclassWarns) {
    auto r = parse_ontology_fragment("<owl:Class rdf:ID=\"A\"><rdfs:subClassOf rdf:resource=\"#A\"/></owl:Class>", "s");
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(count(r.diagnostics, Diagnostic::Severity::Warning), 1u);
    EXPECT_TRUE(r.model.axioms().empty());
}

TEST(Parser, SecondDomainWarnsKeepsFirst) {
    auto r = parse_ontology_fragment(R"(<owl:ObjectProperty rdf:ID="liveIn">
  <rdfs:domain rdf:resource="#Man"/>
  <rdfs:domain rdf:resource="#Fox"/>
</owl:ObjectProperty>)",
                                     "d");
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(count(r.diagnostics, Diagnostic::Severity::Warning), 1u);
    EXPECT_EQ(*r.model.property(I("liveIn"))->domain, I("Man"));
}

TEST(Parser, FullDocumentWithNamespaces) {
    auto r = parse_ontology(R"(<?xml version="1.0"?>
<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#" xmlns:owl="http://www.w3.org/2002/07/owl#"
         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#">
  <owl:Ontology rdf:about=""/>
  <owl:Class rdf:ID="House"><rdfs:label>house</rdfs:label><rdfs:subClassOf rdf:resource="#City"/></owl:Class>
</rdf:RDF>)",
                            "ns");
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.diagnostics.empty());
    EXPECT_TRUE(r.model.contains(axiom::SubClassOf{I("House"), I("City")}));
}

TEST(Parser, FragmentLocationsReferToOriginalText) {
    auto r = parse_ontology_fragment("<owl:Class rdf:ID=\"A\"/>\n\n  <owl:Thing rdf:about=\"#x\"/>", "l");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].location.line, 3u);
    EXPECT_EQ(r.diagnostics[0].location.column, 3u);
}

TEST(Parser, MissingFile) {
    auto r = load_ontology_file(corpus("does-not-exist.owl"));
    EXPECT_FALSE(r.ok());
}

TEST(Parser, EventStreamIsWellNested) {
    std::vector<Diagnostic> ds;
    auto events = read_xml_events("<a><b x=\"1\">t</b><c/></a>", ds);
    EXPECT_TRUE(ds.empty());
    std::vector<std::string> stack;
    for (const auto& e : events) {
        if (e.kind == ParseEvent::Kind::StartElement) stack.push_back(e.name);
        if (e.kind == ParseEvent::Kind::EndElement) {
            ASSERT_FALSE(stack.empty());
            EXPECT_EQ(stack.back(), e.name);
            stack.pop_back();
        }
    }
    EXPECT_TRUE(stack.empty());
    EXPECT_EQ(events[1].attributes.front(), (std::pair<std::string, std::string>{"x", "1"}));
}

TEST(Parser, PrintParseRoundTripOnCorpus) {
    for (const auto& entry : std::filesystem::directory_iterator(OWLRULES_CORPUS_DIR)) {
        if (entry.path().extension() != ".owl") continue;
        auto m = load(entry.path().filename().string());
        auto back = parse_ontology(print_model(m), "printed");
        EXPECT_TRUE(back.ok());
        EXPECT_EQ(back.model, m) << entry.path();
    }
}

TEST(Parser, PrintParseRoundTripOnRandomModels) {
    gen::Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        auto m = gen::random_model(rng);
        auto text = print_model(m);
        auto back = parse_ontology(text, "printed");
        ASSERT_TRUE(back.ok()) << text;
        EXPECT_EQ(back.model, m) << text;
        EXPECT_EQ(back.model.axioms().size(), m.axioms().size());
    }
}

TEST(Parser, DiagnosticLinesStayInBounds) {
    gen::Rng rng(23);
    const std::string base = print_model(gen::random_model(rng));
    for (int i = 0; i < 200; ++i) {
        std::string text = base;
        // Chop at a random point to provoke malformed-XML errors anywhere.
        text.resize(std::uniform_int_distribution<std::size_t>(0, text.size())(rng));
        auto r = parse_ontology_fragment(text, "cut");
        const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
        for (const auto& d : r.diagnostics) {
            EXPECT_GE(d.location.line, 1u);
            EXPECT_LE(d.location.line, lines);
        }
    }
}
