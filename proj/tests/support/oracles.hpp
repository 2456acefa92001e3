#pragma once

// Reference implementations used only by tests. They favour obviousness over
// speed and share no code with the library's evaluators.

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "owlrules/facts.hpp"
#include "owlrules/inference.hpp"
#include "owlrules/ontology.hpp"
#include "owlrules/rule.hpp"

namespace oracle {

using owlrules::Iri;
using Edge = std::pair<Iri, Iri>;

// Warshall over an adjacency matrix; returns every reachable (a, b), a != b.
std::set<Edge> transitive_closure(const std::set<Edge>& edges);

struct Saturation {
    std::set<owlrules::Fact> facts;
    std::set<owlrules::Violation> violations;
};

// Tries every assignment of individuals to rule variables until nothing changes.
Saturation naive_saturation(std::span<const owlrules::Rule> rules, const owlrules::FactBase& initial);

// Number of distinct rules each pattern should yield on `model`, counted by
// enumerating the tuples a pattern's definition ranges over.
std::map<owlrules::Pattern, std::size_t> expected_counts(const owlrules::OntologyModel& model);

} // namespace oracle
