#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "owlrules/error.hpp"
#include "owlrules/facts.hpp"
#include "owlrules/ontology.hpp"
#include "owlrules/rule.hpp"

namespace owlrules {

// An individual ends up both asserted and denied membership in a class.
class Contradiction : public Error {
public:
    Contradiction(Iri individual, Iri cls, std::string membership_source, std::string negation_source)
        : Error("contradiction on isa(" + individual.str() + ", " + cls.str() + "): asserted by " +
                membership_source + ", denied by " + negation_source),
          individual_(std::move(individual)), cls_(std::move(cls)),
          membership_source_(std::move(membership_source)), negation_source_(std::move(negation_source)) {}

    const Iri& individual() const noexcept { return individual_; }
    const Iri& cls() const noexcept { return cls_; }
    const std::string& membership_source() const noexcept { return membership_source_; }
    const std::string& negation_source() const noexcept { return negation_source_; }

private:
    Iri individual_, cls_;
    std::string membership_source_, negation_source_;
};

struct Derivation {
    Fact fact;
    std::string rule_id;
    std::size_t round; // 1-based round that produced the fact
};

// A fact that breaks a negative (constraint) rule under the closed-world reading.
struct Violation {
    Fact fact;
    std::string rule_id;
    friend auto operator<=>(const Violation&, const Violation&) = default;
};

struct InferenceResult {
    FactBase final;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<Derivation> derived; // in derivation order
    std::vector<Violation> violations; // sorted
};

// Semi-naive forward chaining to a fixpoint, at most `cap` rounds.
//
// Variables bind individuals only; class-flagged link objects match constant
// class terms but never variables. Schema atoms in a condition hold by
// construction and schema consequents are left to schema_closure. Rules whose
// consequent is negated are not fired: after the fixpoint every fact matching
// the negated consequent is checked against the rule's negated conditions, and
// a failing fact is reported as a violation.
//
// Throws RuleNotExecutable for non-executable or ill-formed rules and
// Contradiction when a membership is both derived or asserted and denied.
InferenceResult run_fixpoint(std::span<const Rule> rules, const FactBase& initial, std::size_t cap);

// |individuals|² × |properties| + |individuals| × |classes| + 1 over the
// vocabulary of the rules and facts; bounds the rounds of any positive run.
// Every name that can fill a link end counts as an individual, class-valued
// objects included, and features count as classes.
std::size_t termination_cap(std::span<const Rule> rules, const FactBase& facts);

// Least fixpoint of the subclass-transitivity and equivalence-inheritance
// templates over the model's SubClassOf and EquivalentClass axioms. A template
// takes part only when `rules` holds a rule of its pattern; other patterns are
// rejected with RuleNotExecutable. Returns the SubClassOf axioms not already in
// the model, sorted.
std::vector<Axiom> schema_closure(const OntologyModel& model, std::span<const Rule> rules);

} // namespace owlrules
