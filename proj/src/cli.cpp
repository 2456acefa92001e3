#include "owlrules/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "owlrules/error.hpp"
#include "owlrules/extractor.hpp"
#include "owlrules/facts.hpp"
#include "owlrules/inference.hpp"
#include "owlrules/owl_parser.hpp"
#include "owlrules/rule_json.hpp"

namespace owlrules::cli {

namespace {

using json = nlohmann::ordered_json;

void report(const std::vector<Diagnostic>& diagnostics, const std::string& source, std::ostream& err) {
    for (const auto& d : diagnostics) err << format_diagnostic(d, source) << '\n';
}

// Parses and merges every input; nullopt after reporting on failure.
struct Loaded {
    OntologyModel model;
    std::vector<std::string> sources;
};

std::variant<Loaded, int> load(const RunConfig& config, std::ostream& err) {
    std::vector<OntologyModel> models;
    bool failed = false;
    for (const auto& path : config.inputs) {
        auto parsed = load_ontology_file(path);
        report(parsed.diagnostics, path, err);
        if (!parsed.ok()) failed = true;
        models.push_back(std::move(parsed.model));
    }
    if (failed) return ParseFailure;
    std::vector<std::string> warnings;
    Loaded loaded;
    try {
        loaded.model = merge(models, &warnings);
    } catch (const MergeConflict& e) {
        err << "ERROR " << e.what() << '\n';
        return MergeFailure;
    }
    for (const auto& w : warnings) err << "WARNING " << w << '\n';
    loaded.sources = config.inputs;
    std::sort(loaded.sources.begin(), loaded.sources.end());
    loaded.sources.erase(std::unique(loaded.sources.begin(), loaded.sources.end()), loaded.sources.end());
    return loaded;
}

std::vector<Rule> extract(const Loaded& loaded, bool include_nonexecutable, std::ostream& err) {
    auto report_ = extract_all(loaded.model);
    for (const auto& w : report_.warnings) err << "WARNING " << w << '\n';
    std::vector<Rule> rules;
    for (auto& r : report_.rules)
        if (include_nonexecutable || r.executable()) rules.push_back(std::move(r));
    return rules;
}

int cmd_extract(const RunConfig& config, const Loaded& loaded, std::ostream& out, std::ostream& err) {
    auto rules = extract(loaded, config.include_nonexecutable, err);
    if (config.format == Format::Structured) {
        out << render_structured(rules, loaded.sources);
    } else {
        for (const auto& r : rules) out << render_text(r) << '\n';
    }
    return Ok;
}

int cmd_classify(const RunConfig& config, const Loaded& loaded, std::ostream& out, std::ostream& err) {
    auto rules = extract(loaded, config.include_nonexecutable, err);
    std::map<RuleCategory, std::size_t> counts;
    for (auto c : all_categories) counts[c] = 0;
    for (const auto& r : rules) ++counts[r.category()];

    if (config.format == Format::Structured) {
        json doc;
        doc["version"] = structured_format_version;
        doc["source"] = loaded.sources;
        json jc = json::object();
        for (auto c : all_categories) jc[std::string(category_name(c))] = counts[c];
        doc["counts"] = jc;
        json jr = json::array();
        for (const auto& r : rules)
            jr.push_back({{"id", r.id},
                          {"pattern", std::string(pattern_name(r.pattern))},
                          {"category", std::string(category_name(r.category()))},
                          {"rule", render_text(r)}});
        doc["rules"] = jr;
        out << doc.dump(2) << '\n';
        return Ok;
    }
    for (auto c : all_categories) out << category_name(c) << '=' << counts[c] << '\n';
    for (auto c : all_categories)
        for (const auto& r : rules)
            if (r.category() == c) out << category_name(c) << ' ' << r.id << ' ' << render_text(r) << '\n';
    return Ok;
}

int cmd_infer(const RunConfig& config, const Loaded& loaded, std::ostream& out, std::ostream& err) {
    std::ifstream in(*config.facts);
    if (!in) {
        err << "ERROR " << *config.facts << ":1:1 cannot open file\n";
        return ParseFailure;
    }
    auto facts = parse_fact_base(in);
    report(facts.diagnostics, *config.facts, err);
    if (!facts.ok()) return ParseFailure;

    auto rules = extract(loaded, false, err);
    InferenceResult result;
    try {
        result = run_fixpoint(rules, facts.facts, config.cap);
    } catch (const Contradiction& e) {
        err << "ERROR " << e.what() << '\n';
        return ContradictionFound;
    }

    if (config.format == Format::Structured) {
        json doc;
        doc["version"] = structured_format_version;
        doc["source"] = loaded.sources;
        json jd = json::array();
        for (const auto& d : result.derived)
            jd.push_back({{"fact", format_fact(d.fact)}, {"rule", d.rule_id}, {"round", d.round}});
        doc["derived"] = jd;
        json jv = json::array();
        for (const auto& v : result.violations) jv.push_back({{"fact", format_fact(v.fact)}, {"rule", v.rule_id}});
        doc["violations"] = jv;
        doc["iterations"] = result.iterations;
        doc["converged"] = result.converged;
        out << doc.dump(2) << '\n';
    } else {
        for (const auto& d : result.derived) out << format_fact(d.fact) << '\n';
        for (const auto& v : result.violations) out << "# violation: " << format_fact(v.fact) << " breaks " << v.rule_id << '\n';
        out << "# iterations: " << result.iterations << '\n';
        out << "# derived: " << result.derived.size() << '\n';
        out << "# violations: " << result.violations.size() << '\n';
        out << "# converged: " << (result.converged ? "yes" : "no") << '\n';
    }

    if (!result.converged) {
        err << "ERROR fixpoint not reached within " << config.cap << " rounds\n";
        return CapExceeded;
    }
    if (config.strict && !result.violations.empty()) return StrictViolations;
    return Ok;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.inputs.empty()) {
        err << "ERROR no input files\n";
        return ParseFailure;
    }
    if (config.command == Command::Infer && !config.facts) {
        err << "ERROR infer requires --facts\n";
        return ParseFailure;
    }
    if (config.cap == 0) {
        err << "ERROR --cap must be positive\n";
        return ParseFailure;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (config.output) {
        file.open(*config.output, std::ios::binary);
        if (!file) {
            err << "ERROR cannot write " << *config.output << '\n';
            return ParseFailure;
        }
        sink = &file;
    }

    auto loaded = load(config, err);
    if (auto* code = std::get_if<int>(&loaded)) return *code;
    const auto& model = std::get<Loaded>(loaded);
    try {
        switch (config.command) {
        case Command::Extract: return cmd_extract(config, model, *sink, err);
        case Command::Classify: return cmd_classify(config, model, *sink, err);
        case Command::Infer: return cmd_infer(config, model, *sink, err);
        }
    } catch (const Error& e) {
        err << "ERROR " << e.what() << '\n';
        return ParseFailure;
    }
    return ParseFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extract, classify and run IF-THEN rules from OWL ontologies", "owlrules"};
    RunConfig config;
    std::string command;
    std::string format = "text";
    std::string facts, output;
    bool no_nonexecutable = false;

    app.add_option("command", command, "extract, classify or infer")
        ->required()
        ->check(CLI::IsMember({"extract", "classify", "infer"}));
    app.add_option("files", config.inputs, "ontology files (RDF/XML or bare fragments)")->required();
    app.add_option("--facts", facts, "fact file for infer");
    app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--output", output, "write results here instead of standard output");
    app.add_option("--cap", config.cap, "maximum inference rounds")->check(CLI::PositiveNumber);
    app.add_flag("--strict", config.strict, "exit 5 when constraint violations are found");
    app.add_flag("--no-nonexecutable", no_nonexecutable, "drop rules without instance semantics");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "ERROR " << e.what() << '\n' << app.help();
        return ParseFailure;
    }

    config.command = command == "extract" ? Command::Extract : command == "classify" ? Command::Classify : Command::Infer;
    config.format = format == "structured" ? Format::Structured : Format::Text;
    if (!facts.empty()) config.facts = facts;
    if (!output.empty()) config.output = output;
    config.include_nonexecutable = config.command != Command::Infer && !no_nonexecutable;
    return run(config, out, err);
}

} // namespace owlrules::cli
