#include "owlrules/facts.hpp"

#include <istream>
#include <regex>
#include <sstream>

namespace owlrules {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

std::string format_fact(const Fact& f) {
    return std::visit(
        overloaded{
            [](const fact::Membership& m) { return "isa(" + m.individual.str() + ", " + m.cls.str() + ")"; },
            [](const fact::LinkFact& l) {
                return std::string(l.object_is_class ? "classlink(" : "link(") + l.subject.str() + ", " +
                       l.property.str() + ", " + l.object.str() + ")";
            },
            [](const fact::FeatureExpected& e) {
                return "feature(" + e.individual.str() + ", " + e.feature.str() + ")";
            },
            [](const fact::NegMembership& n) { return "not isa(" + n.individual.str() + ", " + n.cls.str() + ")"; },
        },
        f);
}

bool FactBase::insert(Fact f) { return facts_.insert(std::move(f)).second; }

bool FactBase::insert_derived(Fact f, const std::string& rule_id) {
    auto [it, inserted] = facts_.insert(std::move(f));
    if (inserted) derived_marks_.emplace(*it, rule_id);
    return inserted;
}

std::optional<std::string> FactBase::derived_by(const Fact& f) const {
    auto it = derived_marks_.find(f);
    if (it == derived_marks_.end()) return std::nullopt;
    return it->second;
}

FactParse parse_fact_base(std::string_view text) {
    static const std::regex line_re(
        R"(^(not\s+)?([a-z]+)\s*\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*(?:,\s*([^\s,()]+)\s*)?\)$)");

    FactParse out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        auto fail = [&](const std::string& msg) {
            out.diagnostics.push_back({Diagnostic::Severity::Error, msg, {line_no, 1}});
        };

        std::match_results<std::string_view::const_iterator> m;
        if (!std::regex_match(line.begin(), line.end(), m, line_re)) {
            fail("malformed fact '" + std::string(line) + "'");
            continue;
        }
        const bool negated = m[1].matched;
        const std::string head = m[2].str();
        const bool ternary = m[5].matched;
        std::vector<std::string> args{m[3].str(), m[4].str()};
        if (ternary) args.push_back(m[5].str());
        bool ids_ok = true;
        for (const auto& a : args) ids_ok = ids_ok && Iri::is_valid(a);
        if (!ids_ok) {
            fail("invalid identifier in '" + std::string(line) + "'");
            continue;
        }

        if (head == "isa" && !ternary) {
            Iri ind(args[0]), cls(args[1]);
            out.facts.insert(negated ? Fact(fact::NegMembership{ind, cls}) : Fact(fact::Membership{ind, cls}));
        } else if (negated) {
            fail("only isa facts can be negated: '" + std::string(line) + "'");
        } else if ((head == "link" || head == "classlink") && ternary) {
            out.facts.insert(fact::LinkFact{Iri(args[0]), Iri(args[1]), Iri(args[2]), head == "classlink"});
        } else if (head == "feature" && !ternary) {
            out.facts.insert(fact::FeatureExpected{Iri(args[0]), Iri(args[1])});
        } else {
            fail("unknown fact form '" + std::string(line) + "'");
        }
    }
    return out;
}

FactParse parse_fact_base(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_fact_base(buf.str());
}

std::string print_fact_base(const FactBase& facts) {
    std::string out;
    for (const auto& f : facts.facts()) out += format_fact(f) + "\n";
    return out;
}

} // namespace owlrules
