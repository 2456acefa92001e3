#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owlrules/diagnostics.hpp"
#include "owlrules/ontology.hpp"

namespace owlrules {

struct ParseEvent {
    enum class Kind { StartElement, EndElement, Text };
    Kind kind;
    // Qualified name as written ("owl:Class"); text content for Text events.
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    Location location;
};

// Flat, well-nested event stream of an XML document. On malformed input the
// events read so far are returned and an Error diagnostic is appended.
std::vector<ParseEvent> read_xml_events(std::string_view xml, std::vector<Diagnostic>& diagnostics);

struct WrappedFragment {
    std::string text;
    // Characters inserted ahead of the original first line.
    std::size_t first_line_shift = 0;
};

// Encloses a fragment in a synthetic rdf:RDF root unless it already has one.
// An XML declaration is blanked out so line and column positions survive.
WrappedFragment wrap_fragment(std::string_view text);

struct OntologyParse {
    OntologyModel model;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

// Parses a well-formed RDF/XML document (OWL subset) into a model.
OntologyParse parse_ontology(std::string_view xml, std::string name);
OntologyParse parse_ontology(std::istream& in, std::string name);

// Wraps a bare fragment when needed, then parses; locations refer to `text`.
OntologyParse parse_ontology_fragment(std::string_view text, std::string name);

// Reads a file and parses it as a fragment; the path string becomes the source name.
OntologyParse load_ontology_file(const std::filesystem::path& path);

// RDF/XML rendering that parse_ontology reads back to an equal model.
std::string print_model(const OntologyModel& model);

} // namespace owlrules
