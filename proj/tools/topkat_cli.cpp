// Command-line front end: one subcommand per decision procedure, oracle and
// model search. Exit codes: 0 holds, 1 refuted (witness or countermodel
// printed), 2 usage or input error, 3 resource cap exceeded.

#include "topkat/decide.hpp"
#include "topkat/domain.hpp"
#include "topkat/error.hpp"
#include "topkat/json_io.hpp"
#include "topkat/logic.hpp"
#include "topkat/reduce.hpp"
#include "topkat/relmodel.hpp"
#include "topkat/semantics.hpp"
#include "topkat/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace topkat;
using nlohmann::json;

namespace {

enum Exit { exit_holds = 0, exit_refuted = 1, exit_usage = 2, exit_resource = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string tests;
    std::string actions;
    bool actions_given = false;
    bool json = false;
    std::size_t atom_cap = default_atom_cap;
    std::string file;

    std::vector<std::string> terms;
    std::string member_string;
    std::string member_term;
    std::size_t max_actions = 2;
    bool numeric = false;
    std::string direction = "under-approx";

    std::string kind;
    std::size_t max_states = 2;
    bool exhaustive = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::uint64_t ceiling = default_enumeration_ceiling;

    std::string rule;
    std::vector<std::string> binds;
    std::vector<std::string> hyps;
    std::string goal;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read file '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        auto e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

/// Declared tests from --tests; actions from --actions, or else every other
/// identifier in the inputs in order of first appearance.
Alphabet make_alphabet(const Options& opt, const std::vector<std::string>& texts) {
    auto tests = split_list(opt.tests);
    if (opt.actions_given)
        return Alphabet(split_list(opt.actions), tests);
    std::vector<std::string> actions;
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    for (const auto& text : texts)
        for (std::sregex_iterator it(text.begin(), text.end(), ident), end; it != end; ++it) {
            std::string id = it->str();
            if (id == "T" || id == top_action_name)
                continue;
            if (std::find(tests.begin(), tests.end(), id) != tests.end())
                continue;
            if (std::find(actions.begin(), actions.end(), id) == actions.end())
                actions.push_back(id);
        }
    return Alphabet(actions, tests);
}

std::vector<std::string> term_inputs(const Options& opt, std::size_t expected) {
    std::vector<std::string> texts = opt.terms;
    if (!opt.file.empty())
        for (auto& line : read_lines(opt.file))
            texts.push_back(std::move(line));
    if (texts.size() != expected)
        throw UsageError("expected " + std::to_string(expected) + " term(s), got " + std::to_string(texts.size()));
    return texts;
}

void emit(const Options& opt, const json& doc, const std::string& human) {
    if (opt.json)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << human;
}

json envelope(const std::string& verdict) { return {{"v", json_schema_version}, {"verdict", verdict}}; }

const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

std::string describe_relation(const Relation& r) {
    std::string out = "{";
    bool first = true;
    for (auto [i, j] : r.pairs()) {
        if (!first)
            out += ", ";
        first = false;
        out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return out + "}";
}

std::string describe_relations(const RelInterpretation& interp, const std::string& indent) {
    std::string out;
    for (const auto* group : {&interp.actions, &interp.tests})
        for (const auto& [name, r] : *group)
            out += indent + name + " = " + describe_relation(r) + "\n";
    return out;
}

std::string describe_refutation(const ComparisonVerdict::Refutation& ref, const Alphabet& alphabet, bool numeric) {
    const Alphabet extended = alphabet.with_top_action();
    std::string out = "witness: " + render(ref.witness, extended) + "\n";
    out += "countermodel:\n";
    const auto& m = ref.model;
    if (numeric) {
        out += "  carrier: {";
        for (std::size_t i = 0; i < m.carrier.size(); ++i)
            out += (i ? ", " : "") + std::to_string(i);
        out += "}\n";
    } else {
        out += "  carrier:\n";
        for (std::size_t i = 0; i < m.carrier.size(); ++i)
            out += "    " + std::to_string(i) + " = " + render(m.carrier[i], extended) + "\n";
    }
    out += describe_relations(m.interp, "  ");
    out += "  violating point: " + std::to_string(m.violating_point);
    if (!numeric)
        out += " = " + render(m.carrier[m.violating_point], extended);
    return out + "\n";
}

int run_decide(const Options& opt, bool is_leq) {
    auto texts = term_inputs(opt, 2);
    Alphabet alphabet = make_alphabet(opt, texts);
    Term t1 = parse(texts[0], alphabet);
    Term t2 = parse(texts[1], alphabet);
    Verdict v = is_leq ? topkat_leq(t1, t2, alphabet, opt.atom_cap)
                       : topkat_equivalent(t1, t2, alphabet, opt.atom_cap);
    const std::string yes = is_leq ? "provable" : "equivalent";
    const std::string no = is_leq ? "refuted" : "inequivalent";
    const std::string relation = is_leq ? " <= " : " = ";
    if (v.holds()) {
        emit(opt, envelope(yes), yes + ": " + render(t1) + relation + render(t2) + "\n");
        return exit_holds;
    }
    const std::string w = render(*v.witness, alphabet.with_top_action());
    json doc = envelope(no);
    doc["witness"] = w;
    doc["side"] = side_name(v.side);
    emit(opt, doc,
         no + ": " + render(t1) + relation + render(t2) + "\nwitness: " + w + "\naccepted by: " + side_name(v.side) +
             " only\n");
    return exit_refuted;
}

int run_comparison(const Options& opt, bool codomain) {
    auto texts = term_inputs(opt, 2);
    Alphabet alphabet = make_alphabet(opt, texts);
    Term t1 = parse(texts[0], alphabet);
    Term t2 = parse(texts[1], alphabet);
    ComparisonVerdict v = codomain ? cod_geq(t1, t2, alphabet, opt.atom_cap) : dom_geq(t1, t2, alphabet, opt.atom_cap);
    const std::string op = codomain ? "cod" : "dom";
    const std::string claim = op + "(" + render(t1) + ") >= " + op + "(" + render(t2) + ")";
    if (v.provable()) {
        emit(opt, envelope("provable"), "provable: " + claim + "\n");
        return exit_holds;
    }
    json doc = envelope("refuted");
    doc["witness"] = render(v.refutation->witness, alphabet.with_top_action());
    doc["countermodel"] = countermodel_json(*v.refutation, alphabet);
    emit(opt, doc, "refuted: " + claim + "\n" + describe_refutation(*v.refutation, alphabet, opt.numeric));
    return exit_refuted;
}

int run_reduce(const Options& opt) {
    auto texts = term_inputs(opt, 1);
    Alphabet alphabet = make_alphabet(opt, texts);
    Term r = reduce(parse(texts[0], alphabet), alphabet);
    json doc = envelope("ok");
    doc["term"] = render(r);
    emit(opt, doc, render(r) + "\n");
    return exit_holds;
}

int run_lang(const Options& opt) {
    auto texts = term_inputs(opt, 1);
    Alphabet alphabet = make_alphabet(opt, texts);
    Term t = parse(texts[0], alphabet);
    Alphabet target = alphabet;
    if (contains_top(t)) {
        t = reduce(t, alphabet);
        target = alphabet.with_top_action();
    }
    Language lang = lang_bounded(t, target, opt.max_actions, opt.atom_cap);
    json strings = json::array();
    std::string human;
    for (const auto& s : lang) {
        strings.push_back(render(s, target));
        human += render(s, target) + "\n";
    }
    json doc = envelope("ok");
    doc["strings"] = std::move(strings);
    emit(opt, doc, human);
    return exit_holds;
}

int run_member(const Options& opt) {
    auto texts = term_inputs(opt, 2);
    Alphabet alphabet = make_alphabet(opt, texts);
    const Alphabet extended = alphabet.with_top_action();
    GuardedString s = parse_guarded_string(texts[0], extended);
    Term t = reduce(parse(texts[1], alphabet), alphabet);
    bool in = member(s, t, extended, opt.atom_cap);
    emit(opt, envelope(in ? "member" : "non-member"), std::string(in ? "member" : "non-member") + "\n");
    return in ? exit_holds : exit_refuted;
}

int run_triple(const Options& opt) {
    std::vector<std::string> lines = opt.terms;
    if (!opt.file.empty())
        for (auto& line : read_lines(opt.file))
            lines.push_back(std::move(line));
    if (lines.empty())
        throw UsageError("no triples given (use --file or positional arguments)");
    Direction direction = parse_direction(opt.direction);
    std::vector<std::string> bodies;
    for (const auto& line : lines) {
        auto b = line.find_first_not_of(" \t");
        auto e = b == std::string::npos ? b : line.find_first_of(" \t", b);
        bodies.push_back(e == std::string::npos ? std::string() : line.substr(e));
    }
    Alphabet alphabet = make_alphabet(opt, bodies);

    bool all = true;
    json results = json::array();
    std::string human;
    for (const auto& line : lines) {
        Triple tr = parse_triple(line, alphabet);
        TripleResult r = check_triple(tr, alphabet, direction);
        all = all && r.provable;
        json item = {{"triple", render(tr)}, {"verdict", r.provable ? "provable" : "refuted"}};
        human += std::string(r.provable ? "provable: " : "refuted: ") + render(tr) + "\n";
        if (!r.provable) {
            if (r.equation && r.equation->witness) {
                std::string w = render(*r.equation->witness, alphabet.with_top_action());
                item["witness"] = w;
                human += "equation witness: " + w + "\n";
            }
            item["countermodel"] = countermodel_json(*r.comparison.refutation, alphabet);
            if (!item.contains("witness"))
                item["witness"] = render(r.comparison.refutation->witness, alphabet.with_top_action());
            human += describe_refutation(*r.comparison.refutation, alphabet, opt.numeric);
        }
        results.push_back(std::move(item));
    }
    json doc = envelope(all ? "provable" : "refuted");
    doc["triples"] = std::move(results);
    emit(opt, doc, human);
    return all ? exit_holds : exit_refuted;
}

SearchBudget make_budget(const Options& opt) {
    if (opt.exhaustive && opt.samples > 0)
        throw UsageError("--exhaustive and --samples are mutually exclusive");
    if (opt.samples > 0) {
        if (!opt.seed_given)
            throw UsageError("random search requires --seed");
        return SearchBudget::random(opt.samples, opt.seed);
    }
    return SearchBudget::enumerate(opt.ceiling);
}

std::string budget_text(const Options& opt, const SearchBudget& budget) {
    if (budget.exhaustive)
        return "exhaustive, carrier size <= " + std::to_string(opt.max_states);
    return std::to_string(budget.samples) + " samples, carrier size " + std::to_string(opt.max_states) +
           ", seed " + std::to_string(budget.seed);
}

void add_model(json& doc, std::string& human, const RelCountermodel& m) {
    doc["countermodel"] = countermodel_json(m);
    human += "countermodel (carrier size " + std::to_string(m.interp.carrier_size) + "):\n";
    human += describe_relations(m.interp, "  ");
    human += "  violation: " + m.report + "\n";
}

int run_search(const Options& opt) {
    auto texts = term_inputs(opt, 2);
    ComparisonKind kind = parse_comparison_kind(opt.kind);
    SearchBudget budget = make_budget(opt);
    Alphabet alphabet = make_alphabet(opt, texts);
    Term t1 = parse(texts[0], alphabet);
    Term t2 = parse(texts[1], alphabet);
    auto found = search_countermodel(kind, t1, t2, alphabet, opt.max_states, budget);

    json doc = envelope(found ? "countermodel" : "no-countermodel");
    if (!budget.exhaustive)
        doc["seed"] = budget.seed;
    std::string human = to_string(kind) + ": " + render(t1) + " vs " + render(t2) + "\n";
    if (found) {
        add_model(doc, human, *found);
    } else {
        human += "no countermodel (" + budget_text(opt, budget) + ")\n";
    }
    if (!budget.exhaustive)
        human += "seed: " + std::to_string(budget.seed) + "\n";
    emit(opt, doc, human);
    return found ? exit_refuted : exit_holds;
}

int run_rule(const Options& opt) {
    SearchBudget budget = make_budget(opt);
    Direction direction = parse_direction(opt.direction);
    std::vector<std::string> texts;
    std::vector<std::pair<std::string, std::string>> binds;
    for (const auto& b : opt.binds) {
        auto eq = b.find('=');
        if (eq == std::string::npos)
            throw UsageError("--bind expects name=term, got '" + b + "'");
        binds.emplace_back(b.substr(0, eq), b.substr(eq + 1));
        texts.push_back(b.substr(eq + 1));
    }
    texts.insert(texts.end(), opt.hyps.begin(), opt.hyps.end());
    if (!opt.goal.empty())
        texts.push_back(opt.goal);
    Alphabet alphabet = make_alphabet(opt, texts);

    RuleInstance instance;
    std::string name = opt.rule;
    if (opt.rule == "custom") {
        if (opt.goal.empty())
            throw UsageError("a custom rule needs --goal");
        for (const auto& h : opt.hyps)
            instance.hyps.push_back(parse_top_inequality(h, alphabet));
        instance.goal = parse_top_inequality(opt.goal, alphabet);
    } else {
        if (!opt.hyps.empty() || !opt.goal.empty())
            throw UsageError("--hyp/--goal are only accepted with --name custom");
        std::map<std::string, Term> bindings;
        for (const auto& [k, v] : binds)
            bindings.emplace(k, parse(v, alphabet));
        instance = instantiate(parse_rule(opt.rule), bindings, direction);
    }
    auto found = falsify_implication(instance.hyps, instance.goal, alphabet, opt.max_states, budget);

    std::string human = "rule " + name + ":\n";
    json hyps = json::array();
    for (const auto& h : instance.hyps) {
        human += "  hypothesis: " + render(h) + "\n";
        hyps.push_back(render(h));
    }
    human += "  goal: " + render(instance.goal) + "\n";
    json doc = envelope(found ? "countermodel" : "no-countermodel");
    doc["hypotheses"] = std::move(hyps);
    doc["goal"] = render(instance.goal);
    if (!budget.exhaustive)
        doc["seed"] = budget.seed;
    if (found)
        add_model(doc, human, *found);
    else
        human += "no refutation found (" + budget_text(opt, budget) + "); this does not prove the rule\n";
    emit(opt, doc, human);
    return found ? exit_refuted : exit_holds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide KAT and TopKAT (in)equalities, domain/codomain comparisons and triples; "
                 "search finite relational countermodels."};
    app.require_subcommand(1);
    Options opt;

    auto common = [&opt](CLI::App* sub) {
        sub->add_option("--tests", opt.tests, "Comma-separated test identifiers");
        sub->add_option("--actions", opt.actions, "Comma-separated action identifiers (default: inferred)")
            ->each([&opt](const std::string&) { opt.actions_given = true; });
        sub->add_flag("--json", opt.json, "Emit a single JSON object");
        sub->add_option("--atom-cap", opt.atom_cap, "Largest number of tests enumerated explicitly");
    };
    auto search_flags = [&opt](CLI::App* sub) {
        sub->add_option("--max-states", opt.max_states, "Largest carrier size")->check(CLI::PositiveNumber);
        sub->add_flag("--exhaustive", opt.exhaustive, "Enumerate every interpretation (default)");
        sub->add_option("--samples", opt.samples, "Number of random interpretations");
        sub->add_option("--seed", opt.seed, "Seed for random sampling")->each([&opt](const std::string&) {
            opt.seed_given = true;
        });
        sub->add_option("--ceiling", opt.ceiling, "Largest number of interpretations enumerated");
    };

    std::string chosen;
    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        s->callback([&chosen, name] { chosen = name; });
        return s;
    };

    auto* decide_cmd = sub("decide", "Decide t1 = t2 (TopKAT, KAT for T-free terms)");
    decide_cmd->add_option("terms", opt.terms, "Two terms");
    decide_cmd->add_option("--file", opt.file, "Read terms from a file, one per line");

    auto* leq_cmd = sub("leq", "Decide t1 <= t2");
    leq_cmd->add_option("terms", opt.terms, "Two terms");
    leq_cmd->add_option("--file", opt.file, "Read terms from a file, one per line");

    for (auto [name, help] : {std::pair{"cod-geq", "Decide cod(t1) >= cod(t2) over relational models"},
                              std::pair{"dom-geq", "Decide dom(t1) >= dom(t2) over relational models"}}) {
        auto* s = sub(name, help);
        s->add_option("terms", opt.terms, "Two T-free terms");
        s->add_option("--file", opt.file, "Read terms from a file, one per line");
        s->add_flag("--numeric", opt.numeric, "Show carrier elements as 0..n-1");
    }

    auto* reduce_cmd = sub("reduce", "Print the T-free reduct over the alphabet extended with __top__");
    reduce_cmd->add_option("terms", opt.terms, "One term");
    reduce_cmd->add_option("--file", opt.file, "Read the term from a file");

    auto* lang_cmd = sub("lang", "List the guarded strings of a term up to a number of actions");
    lang_cmd->add_option("terms", opt.terms, "One term");
    lang_cmd->add_option("--file", opt.file, "Read the term from a file");
    lang_cmd->add_option("--max-actions", opt.max_actions, "Largest number of actions");

    auto* member_cmd = sub("member", "Test membership of a guarded string, e.g. \"[b] p [!b]\"");
    // Scalar positionals: CLI11 would read a vector element "[b] p [c]" as a bracketed list.
    member_cmd->add_option("string", opt.member_string, "Guarded string over the actions plus __top__");
    member_cmd->add_option("term", opt.member_term, "Term");
    member_cmd->add_option("--file", opt.file, "Read inputs from a file");

    auto* triple_cmd = sub("triple", "Check Hoare and incorrectness triples");
    triple_cmd->allow_extras();
    triple_cmd->footer("Positional arguments are triples, e.g. \"incorrectness [b] p;q [c]\".");
    triple_cmd->add_option("--file", opt.file, "Read triples from a file, one per line");
    triple_cmd->add_option("--direction", opt.direction, "under-approx (default) or as-printed");
    triple_cmd->add_flag("--numeric", opt.numeric, "Show carrier elements as 0..n-1");

    auto* search_cmd = sub("search", "Search finite relational countermodels");
    search_cmd->add_option("terms", opt.terms, "Two terms");
    search_cmd->add_option("--file", opt.file, "Read terms from a file, one per line");
    search_cmd->add_option("--kind", opt.kind, "equality, leq, dom-geq or cod-geq")->required();
    search_flags(search_cmd);

    auto* rule_cmd = sub("rule", "Search a countermodel to a proof rule instance");
    rule_cmd->add_option("--name", opt.rule, "sequencing, consequence, choice or custom")->required();
    rule_cmd->add_option("--bind", opt.binds, "Metavariable binding name=term");
    rule_cmd->add_option("--hyp", opt.hyps, "Custom hypothesis 'x <= y' read as T x <= T y");
    rule_cmd->add_option("--goal", opt.goal, "Custom goal 'x <= y'");
    rule_cmd->add_option("--direction", opt.direction, "under-approx (default) or as-printed");
    search_flags(rule_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (chosen == "member") {
            for (const auto* text : {&opt.member_string, &opt.member_term})
                if (!text->empty())
                    opt.terms.push_back(*text);
        }
        if (chosen == "triple") {
            for (const auto& arg : triple_cmd->remaining()) {
                if (arg.starts_with("--"))
                    throw UsageError("unknown option " + arg);
                opt.terms.push_back(arg);
            }
        }
        if (chosen == "decide")
            return run_decide(opt, false);
        if (chosen == "leq")
            return run_decide(opt, true);
        if (chosen == "cod-geq")
            return run_comparison(opt, true);
        if (chosen == "dom-geq")
            return run_comparison(opt, false);
        if (chosen == "reduce")
            return run_reduce(opt);
        if (chosen == "lang")
            return run_lang(opt);
        if (chosen == "member")
            return run_member(opt);
        if (chosen == "triple")
            return run_triple(opt);
        if (chosen == "search")
            return run_search(opt);
        if (chosen == "rule")
            return run_rule(opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return exit_resource;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
