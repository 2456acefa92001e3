#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "oracles.hpp"
#include "random_models.hpp"

#include "owlrules/extractor.hpp"
#include "owlrules/owl_parser.hpp"

using namespace owlrules;

namespace {

Iri I(const std::string& s) { return Iri(s); }

std::vector<std::string> texts(const std::vector<Rule>& rules) {
    std::vector<std::string> out;
    for (const auto& r : rules) out.push_back(render_text(r));
    std::sort(out.begin(), out.end());
    return out;
}

OntologyModel corpus(const std::string& name) {
    auto parsed = load_ontology_file(std::filesystem::path(OWLRULES_CORPUS_DIR) / name);
    EXPECT_TRUE(parsed.ok());
    return parsed.model;
}

void relation(OntologyModel& m, const std::string& p, const std::string& d, const std::string& r,
              PropertyKind kind = PropertyKind::Object) {
    m.declare_property(I(p), kind);
    m.set_domain(I(p), I(d));
    m.set_range(I(p), I(r));
}

void sub(OntologyModel& m, const std::string& a, const std::string& b) { m.add_axiom(axiom::SubClassOf{I(a), I(b)}); }

} // namespace

TEST(ClassFeature, Car) {
    EXPECT_EQ(texts(extract_class_feature(corpus("f01_car.owl"))),
              std::vector<std::string>{"IF Car(?x) THEN hasFeature(?x,Engine) and hasFeature(?x,Wheel)"});
}

TEST(ClassFeature, NeedsDatatypeProperties) {
    OntologyModel m;
    m.declare_class(I("A"));
    relation(m, "p", "A", "B");
    EXPECT_TRUE(extract_class_feature(m).empty());
}

TEST(ClassFeature, ThreeClassesTwoFeaturesEach) {
    OntologyModel m;
    for (int c = 0; c < 3; ++c)
        for (int f = 0; f < 2; ++f)
            relation(m, "f" + std::to_string(c) + std::to_string(f), "C" + std::to_string(c), "xs:string",
                     PropertyKind::Datatype);
    auto rules = extract_class_feature(m);
    ASSERT_EQ(rules.size(), 3u);
    for (const auto& r : rules) EXPECT_EQ(r.consequent.size(), 2u);
}

TEST(EquivalenceInheritance, AutoCar) {
    EXPECT_EQ(texts(extract_equivalence_inheritance(corpus("f02a_equivalent.owl"))),
              std::vector<std::string>{"IF equivalent(Auto,Car) and subClassOf(Car,Vehicle) THEN subClassOf(Auto,Vehicle)"});
}

TEST(EquivalenceInheritance, BothOrientations) {
    OntologyModel m;
    m.add_axiom(axiom::EquivalentClass{I("A"), I("B")});
    EXPECT_TRUE(extract_equivalence_inheritance(m).empty());
    sub(m, "B", "S1");
    sub(m, "B", "S2");
    sub(m, "A", "S3");
    EXPECT_EQ(texts(extract_equivalence_inheritance(m)),
              (std::vector<std::string>{"IF equivalent(A,B) and subClassOf(B,S1) THEN subClassOf(A,S1)",
                                        "IF equivalent(A,B) and subClassOf(B,S2) THEN subClassOf(A,S2)",
                                        "IF equivalent(B,A) and subClassOf(A,S3) THEN subClassOf(B,S3)"}));
}

TEST(DomainRange, LiveIn) {
    EXPECT_EQ(texts(extract_domain_range_identification(corpus("f03_livein.owl"))),
              std::vector<std::string>{"IF (?x liveIn ?y) and House(?y) THEN Man(?x)"});
}

TEST(DomainRange, NeedsBothEnds) {
    OntologyModel m;
    m.declare_property(I("p"), PropertyKind::Object);
    m.set_domain(I("p"), I("A"));
    EXPECT_TRUE(extract_domain_range_identification(m).empty());
    for (int i = 0; i < 4; ++i) relation(m, "q" + std::to_string(i), "A", "B");
    EXPECT_EQ(extract_domain_range_identification(m).size(), 4u);
}

TEST(SubclassTransitivity, HouseCityCountry) {
    EXPECT_EQ(texts(extract_subclass_transitivity(corpus("f04a_resource.owl"))),
              std::vector<std::string>{
                  "IF subClassOf(House,City) and subClassOf(City,Country) THEN subClassOf(House,Country)"});
}

TEST(SubclassTransitivity, ChainOfFour) {
    OntologyModel m;
    sub(m, "A", "B");
    EXPECT_TRUE(extract_subclass_transitivity(m).empty());
    sub(m, "B", "C");
    sub(m, "C", "D");
    EXPECT_EQ(extract_subclass_transitivity(m).size(), 2u);
}

TEST(SubclassTransitivity, CycleNeedsDistinctClasses) {
    OntologyModel m;
    sub(m, "A", "B");
    sub(m, "B", "A");
    EXPECT_TRUE(extract_subclass_transitivity(m).empty());
}

TEST(RelationPropagation, ManHouseCity) {
    EXPECT_EQ(texts(extract_relation_propagation(corpus("f05a_resource.owl"))),
              std::vector<std::string>{"IF (?x liveIn ?y) and House(?y) and subClassOf(House,City) THEN (?x liveIn City)"});
}

TEST(RelationPropagation, OnePerSuperclass) {
    OntologyModel m;
    relation(m, "liveIn", "Man", "House");
    EXPECT_TRUE(extract_relation_propagation(m).empty());
    sub(m, "House", "City");
    sub(m, "House", "Building");
    EXPECT_EQ(extract_relation_propagation(m).size(), 2u);
}

TEST(SubpropertyLift, HasFather) {
    EXPECT_EQ(texts(extract_subproperty_lift(corpus("f06_subproperty.owl"))),
              std::vector<std::string>{"IF (?x hasFather ?y) THEN (?x hasParent ?y)"});
    OntologyModel m;
    EXPECT_TRUE(extract_subproperty_lift(m).empty());
    m.add_axiom(axiom::SubPropertyOf{I("p"), I("q")});
    m.add_axiom(axiom::SubPropertyOf{I("q"), I("r")});
    EXPECT_EQ(extract_subproperty_lift(m).size(), 2u);
}

TEST(Symmetric, ColleagueOf) {
    EXPECT_EQ(texts(extract_symmetric(corpus("f07_symmetric.owl"))),
              (std::vector<std::string>{"IF Engineer(?x) THEN (?x colleagueOf Programmer)",
                                        "IF Programmer(?x) THEN (?x colleagueOf Engineer)"}));
}

TEST(Symmetric, MissingRangeWarns) {
    OntologyModel m;
    m.declare_property(I("s"), PropertyKind::Symmetric);
    m.set_domain(I("s"), I("A"));
    Warnings w;
    EXPECT_TRUE(extract_symmetric(m, &w).empty());
    EXPECT_EQ(w.size(), 1u);
    relation(m, "t", "B", "C", PropertyKind::Symmetric);
    relation(m, "u", "D", "E", PropertyKind::Symmetric);
    EXPECT_EQ(extract_symmetric(m).size(), 4u);
}

TEST(Symmetric, SameDomainAndRangeGivesOneRule) {
    OntologyModel m;
    relation(m, "s", "A", "A", PropertyKind::Symmetric);
    EXPECT_EQ(extract_symmetric(m).size(), 1u);
}

TEST(Transitive, SubAreaOf) {
    EXPECT_EQ(texts(extract_transitive(corpus("f09b_resource.owl"))),
              (std::vector<std::string>{
                  "IF (?x subAreaOf ?y) and (?y subAreaOf ?z) THEN (?x subAreaOf ?z)",
                  "IF (Latgale subAreaOf Latvia) and (Latvia subAreaOf EU) THEN (Latgale subAreaOf EU)"}));
}

TEST(Transitive, VariableFormAloneAndLongerChains) {
    OntologyModel m;
    m.declare_property(I("t"), PropertyKind::Transitive);
    EXPECT_EQ(extract_transitive(m).size(), 1u);
    for (auto [a, b] : {std::pair{"A", "B"}, {"B", "C"}, {"C", "D"}})
        m.add_axiom(axiom::ClassLink{I(a), I("t"), I(b)});
    EXPECT_EQ(extract_transitive(m).size(), 3u);
}

TEST(Transitive, IgnoresLinksOverOtherProperties) {
    OntologyModel m;
    m.declare_property(I("t"), PropertyKind::Transitive);
    m.add_axiom(axiom::ClassLink{I("A"), I("p"), I("B")});
    m.add_axiom(axiom::ClassLink{I("B"), I("p"), I("C")});
    EXPECT_EQ(extract_transitive(m).size(), 1u);
}

TEST(SolePartOf, City) {
    EXPECT_EQ(texts(extract_sole_partof(corpus("f10c_nested_about.owl"))),
              std::vector<std::string>{"IF solePart(House,City) THEN morePartsExpected(City)"});
    OntologyModel m;
    sub(m, "A", "W");
    sub(m, "B", "W");
    EXPECT_TRUE(extract_sole_partof(m).empty());
    sub(m, "P", "X");
    sub(m, "Q", "Y");
    sub(m, "R", "Z");
    auto rules = extract_sole_partof(m);
    EXPECT_EQ(rules.size(), 3u);
    for (const auto& r : rules) EXPECT_FALSE(r.executable());
}

TEST(Cooccurrence, FoxHole) {
    EXPECT_EQ(texts(extract_cooccurrence(corpus("f11_fox.owl"))),
              std::vector<std::string>{"IF Fox(?x) and Hole(?y) THEN (?x liveIn ?y)"});
}

TEST(Cooccurrence, ObjectKindOnlyAndDoubleFiring) {
    OntologyModel m;
    relation(m, "Wheel", "Car", "xs:string", PropertyKind::Datatype);
    EXPECT_TRUE(extract_cooccurrence(m).empty());
    relation(m, "liveIn", "Man", "House");
    relation(m, "liveIn2", "Fox", "Hole");
    auto report = extract_all(m);
    EXPECT_EQ(report.counts.at(Pattern::Cooccurrence), 2u);
    EXPECT_EQ(report.counts.at(Pattern::DomainRangeIdentification), 2u);
}

TEST(AllValuesFrom, HasPass) {
    EXPECT_EQ(texts(extract_allvaluesfrom(corpus("f12_allvalues.owl"))),
              std::vector<std::string>{"IF not Citizen(?y) THEN not (?x hasPass ?y)"});
    OntologyModel m;
    EXPECT_TRUE(extract_allvaluesfrom(m).empty());
    m.add_axiom(axiom::AllValuesFrom{I("p"), I("F")});
    m.add_axiom(axiom::AllValuesFrom{I("q"), I("F")});
    EXPECT_EQ(extract_allvaluesfrom(m).size(), 2u);
}

TEST(Intersection, ManMaleHuman) {
    EXPECT_EQ(texts(extract_intersection(corpus("f13_intersection.owl"))),
              std::vector<std::string>{"IF Man(?x) THEN Male(?x) and Human(?x)"});
    OntologyModel m;
    EXPECT_TRUE(extract_intersection(m).empty());
    m.add_axiom(axiom::IntersectionOf{I("M"), {I("A"), I("B"), I("C")}});
    auto rules = extract_intersection(m);
    ASSERT_EQ(rules.size(), 1u);
    EXPECT_EQ(rules[0].consequent.size(), 3u);
}

TEST(Inverse, OwnsIsOwnedBy) {
    EXPECT_EQ(texts(extract_inverse(corpus("f14_inverse.owl"))),
              (std::vector<std::string>{"IF Human(?x) THEN (?x owns Plane)", "IF Plane(?x) THEN (?x is_owned_by Human)"}));
}

TEST(Inverse, GuardsAndPairs) {
    OntologyModel m;
    m.add_axiom(axiom::InverseOf{I("p"), I("q")});
    Warnings w;
    EXPECT_TRUE(extract_inverse(m, &w).empty());
    EXPECT_EQ(w.size(), 1u);
    relation(m, "p", "A", "B");
    m.add_axiom(axiom::InverseOf{I("r"), I("s")});
    relation(m, "r", "C", "D");
    EXPECT_EQ(extract_inverse(m).size(), 4u);
}

TEST(ExtractAll, EmptyModel) {
    auto report = extract_all(OntologyModel());
    EXPECT_TRUE(report.rules.empty());
    EXPECT_EQ(report.counts.size(), all_patterns.size());
    for (const auto& [p, n] : report.counts) EXPECT_EQ(n, 0u);
}

TEST(ExtractAll, CoFiringOnRelationPropagationFragment) {
    auto report = extract_all(corpus("f05a_resource.owl"));
    EXPECT_EQ(report.counts.at(Pattern::RelationPropagation), 1u);
    EXPECT_EQ(report.counts.at(Pattern::DomainRangeIdentification), 1u);
    EXPECT_EQ(report.counts.at(Pattern::Cooccurrence), 1u);
    EXPECT_EQ(report.counts.at(Pattern::SolePartOf), 1u);
    EXPECT_EQ(report.rules.size(), 4u);
}

TEST(ExtractAll, ProvenanceNamesSourceAndTriggers) {
    auto report = extract_all(corpus("f13_intersection.owl"));
    ASSERT_EQ(report.rules.size(), 1u);
    const auto& p = report.rules[0].provenance;
    ASSERT_EQ(p.sources.size(), 1u);
    EXPECT_NE(p.sources[0].find("f13_intersection.owl"), std::string::npos);
    EXPECT_EQ(p.trigger_axioms, std::vector<std::string>{"IntersectionOf(Man, [Male, Human])"});
    EXPECT_EQ(p.paper_form, "IF Man THEN Male and Human");
}

TEST(ExtractAll, MergedDuplicatesShareOneRuleWithBothSources) {
    std::vector<OntologyModel> ms{corpus("f04a_resource.owl"), corpus("f04b_nested_id.owl")};
    auto report = extract_all(merge(ms));
    auto it = std::find_if(report.rules.begin(), report.rules.end(),
                           [](const Rule& r) { return r.pattern == Pattern::SubclassTransitivity; });
    ASSERT_NE(it, report.rules.end());
    EXPECT_EQ(it->provenance.sources.size(), 2u);
}

TEST(ExtractAll, CountOracleOnRandomModels) {
    gen::Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        auto m = gen::random_model(rng, {7, 6, 20});
        auto report = extract_all(m);
        auto want = oracle::expected_counts(m);
        std::size_t total = 0;
        for (auto p : all_patterns) {
            EXPECT_EQ(report.counts.at(p), want.at(p)) << pattern_name(p) << "\n" << print_model(m);
            EXPECT_EQ(extractor_for(p)(m, nullptr).size(), want.at(p));
            total += report.counts.at(p);
        }
        EXPECT_EQ(total, report.rules.size());
        EXPECT_TRUE(std::is_sorted(report.rules.begin(), report.rules.end(),
                                   [](const Rule& a, const Rule& b) { return a.id < b.id; }));
    }
}

TEST(ExtractAll, MonotoneExceptSolePart) {
    gen::Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        auto m = gen::random_model(rng, {6, 5, 12});
        auto grown = m;
        auto extra = gen::random_model(rng, {6, 5, 8}, "extra");
        std::size_t added = 0;
        for (const auto& ax : extra.axioms()) {
            if (m.axioms().size() + added >= 20) break;
            added += grown.add_axiom(ax) == OntologyModel::AddOutcome::Added;
        }
        auto after = extract_all(grown).rules;
        std::set<std::string> after_ids;
        for (const auto& r : after) after_ids.insert(r.id);
        for (const auto& r : extract_all(m).rules)
            if (r.pattern != Pattern::SolePartOf) EXPECT_TRUE(after_ids.contains(r.id)) << render_text(r);
    }
}

TEST(ExtractAll, AxiomOrderDoesNotMatter) {
    gen::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto m = gen::random_model(rng);
        auto axioms = m.axioms();
        gen::shuffle(rng, axioms);
        OntologyModel shuffled("random");
        for (const auto& [iri, d] : m.properties()) {
            if (d.implicit) continue;
            shuffled.declare_property(iri, d.kind);
            if (d.domain) shuffled.set_domain(iri, *d.domain);
            if (d.range) shuffled.set_range(iri, *d.range);
        }
        for (const auto& c : m.classes()) shuffled.declare_class(c);
        for (const auto& ax : axioms) shuffled.add_axiom(ax);
        ASSERT_EQ(shuffled, m);
        auto a = extract_all(m), b = extract_all(shuffled);
        EXPECT_EQ(a.rules, b.rules);
        EXPECT_EQ(a.counts, b.counts);
        EXPECT_EQ(a.rules, extract_all(m).rules);
    }
}
