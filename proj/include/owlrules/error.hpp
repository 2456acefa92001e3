#pragma once

#include <stdexcept>
#include <string>

namespace owlrules {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidIri : public Error {
public:
    using Error::Error;
};

// Two inputs declare the same property with incompatible kinds.
class MergeConflict : public Error {
public:
    MergeConflict(std::string iri, std::string first_kind, std::string second_kind)
        : Error("conflicting property kinds for '" + iri + "': " + first_kind + " vs " + second_kind),
          iri_(std::move(iri)), first_kind_(std::move(first_kind)), second_kind_(std::move(second_kind)) {}

    const std::string& iri() const noexcept { return iri_; }
    const std::string& first_kind() const noexcept { return first_kind_; }
    const std::string& second_kind() const noexcept { return second_kind_; }

private:
    std::string iri_;
    std::string first_kind_;
    std::string second_kind_;
};

class UnknownPattern : public Error {
public:
    explicit UnknownPattern(const std::string& name) : Error("unknown rule pattern '" + name + "'") {}
};

// A rule handed to the engine that it cannot evaluate (non-executable pattern,
// unbound consequent variable, wrong pattern for schema closure).
class RuleNotExecutable : public Error {
public:
    using Error::Error;
};

// Structured rule document that does not follow the expected schema.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace owlrules
