#pragma once

#include <map>
#include <string>
#include <vector>

#include "owlrules/ontology.hpp"
#include "owlrules/rule.hpp"

namespace owlrules {

using Warnings = std::vector<std::string>;

// Each extractor scans the whole model for one fragment shape and returns every
// rule it licenses, duplicate-free and sorted by id. Guards that a property
// nearly meets (e.g. a symmetric property without a range) are reported to
// `warnings` when given.

// IF C(?x) THEN hasFeature(?x,p1) and ... for the datatype properties with domain C.
std::vector<Rule> extract_class_feature(const OntologyModel& model, Warnings* warnings = nullptr);
// A≡B, B⊑S  =>  IF equivalent(A,B) and subClassOf(B,S) THEN subClassOf(A,S); both orientations of ≡.
std::vector<Rule> extract_equivalence_inheritance(const OntologyModel& model, Warnings* warnings = nullptr);
// p: D→R  =>  IF (?x p ?y) and R(?y) THEN D(?x)
std::vector<Rule> extract_domain_range_identification(const OntologyModel& model, Warnings* warnings = nullptr);
// A⊑B⊑C, pairwise distinct  =>  IF subClassOf(A,B) and subClassOf(B,C) THEN subClassOf(A,C)
std::vector<Rule> extract_subclass_transitivity(const OntologyModel& model, Warnings* warnings = nullptr);
// p: D→R, R⊑W  =>  IF (?x p ?y) and R(?y) and subClassOf(R,W) THEN (?x p W)
std::vector<Rule> extract_relation_propagation(const OntologyModel& model, Warnings* warnings = nullptr);
// p⊑q  =>  IF (?x p ?y) THEN (?x q ?y)
std::vector<Rule> extract_subproperty_lift(const OntologyModel& model, Warnings* warnings = nullptr);
// symmetric s: D→R  =>  IF D(?x) THEN (?x s R);  IF R(?x) THEN (?x s D)
std::vector<Rule> extract_symmetric(const OntologyModel& model, Warnings* warnings = nullptr);
// transitive t  =>  IF (?x t ?y) and (?y t ?z) THEN (?x t ?z), plus one grounded rule per
// ClassLink chain A-t->B-t->C over distinct classes.
std::vector<Rule> extract_transitive(const OntologyModel& model, Warnings* warnings = nullptr);
// W with exactly one direct subclass P  =>  IF solePart(P,W) THEN morePartsExpected(W)
std::vector<Rule> extract_sole_partof(const OntologyModel& model, Warnings* warnings = nullptr);
// p: D→R  =>  IF D(?x) and R(?y) THEN (?x p ?y)
std::vector<Rule> extract_cooccurrence(const OntologyModel& model, Warnings* warnings = nullptr);
// p only F  =>  IF not F(?y) THEN not (?x p ?y)
std::vector<Rule> extract_allvaluesfrom(const OntologyModel& model, Warnings* warnings = nullptr);
// M = P1 ⊓ ... ⊓ Pn  =>  IF M(?x) THEN P1(?x) and ... and Pn(?x), parts in listing order
std::vector<Rule> extract_intersection(const OntologyModel& model, Warnings* warnings = nullptr);
// p inverseOf q, p: D→R  =>  IF D(?x) THEN (?x p R);  IF R(?x) THEN (?x q D)
std::vector<Rule> extract_inverse(const OntologyModel& model, Warnings* warnings = nullptr);

using PatternExtractor = std::vector<Rule> (*)(const OntologyModel&, Warnings*);

PatternExtractor extractor_for(Pattern pattern);

struct ExtractionReport {
    std::vector<Rule> rules; // unique ids, sorted by id
    std::map<Pattern, std::size_t> counts;
    Warnings warnings;
};

// Runs all thirteen extractors. Rules with equal ids are collapsed and their
// provenance merged.
ExtractionReport extract_all(const OntologyModel& model);

} // namespace owlrules
