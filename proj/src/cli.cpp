#include "hecc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hecc/checker.hpp"
#include "hecc/parser.hpp"

namespace hecc {

using ordered_json = nlohmann::ordered_json;

std::string QueryReport::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["arguments"] = arguments;
    j["model"] = model;
    j["status"] = status;
    j["result"] = result;
    j["exit_code"] = exit_code;
    j["details"] = details;
    return j.dump();
}

QueryReport QueryReport::from_json(std::string_view text) {
    auto j = ordered_json::parse(text);
    QueryReport r;
    r.command = j.at("command").get<std::string>();
    r.arguments = j.at("arguments").get<std::vector<std::string>>();
    r.model = j.at("model").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.result = j.at("result").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.details = j.at("details");
    return r;
}

std::string QueryReport::text() const {
    std::ostringstream os;
    os << command;
    if (!model.empty()) os << " [model " << model << "]";
    os << ": " << status << '\n';
    if (!result.empty()) os << "  " << result << '\n';
    for (const auto& [key, value] : details.items()) {
        if (value.is_string()) {
            os << "  " << key << ": " << value.get<std::string>() << '\n';
        } else if (value.is_array() && !value.empty() && value.front().is_array()) {
            os << "  " << key << ":\n";
            for (const auto& row : value) {
                os << "   ";
                for (const auto& cell : row) {
                    const std::string text = cell.get<std::string>();
                    // Pad by code points so names like φ line up.
                    std::size_t width = 0;
                    for (unsigned char c : text) width += (c & 0xC0) != 0x80;
                    os << ' ' << std::string(width < 6 ? 6 - width : 0, ' ') << text;
                }
                os << '\n';
            }
        } else {
            os << "  " << key << ": " << value.dump() << '\n';
        }
    }
    return os.str();
}

bool operator==(const QueryReport& a, const QueryReport& b) {
    return a.command == b.command && a.arguments == b.arguments && a.model == b.model && a.status == b.status &&
           a.result == b.result && a.exit_code == b.exit_code && a.details == b.details;
}

FiniteTopology load_model(const std::string& name_or_path) {
    for (const auto& name : builtin_names())
        if (name == name_or_path) return builtin(name_or_path);
    std::ifstream in(name_or_path);
    if (!in)
        throw TopologyError(TopologyError::Kind::UnknownModel,
                            "'" + name_or_path + "' is neither a builtin model nor a readable file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

SearchResult search_countermodel(const Term& goal, const std::optional<Term>& axiom, std::size_t max_points,
                                 EvalOptions options) {
    CompiledTerm g(Context{}, goal, options);
    if (!g.is_propositional()) throw InterpError(InterpError::Kind::PreconditionViolated, "goal is not a proposition");
    std::optional<CompiledTerm> a;
    if (axiom) {
        a.emplace(Context{}, *axiom, options);
        if (!a->is_propositional())
            throw InterpError(InterpError::Kind::PreconditionViolated, "axiom is not a proposition");
    }
    auto holds = [](const CompiledTerm& p, const FiniteTopology& m) {
        return ((p.evaluate({}, m).bits() >> m.reference_point()) & 1u) != 0;
    };
    SearchResult result;
    for (std::size_t n = 1; n <= max_points; ++n)
        for (const auto& e : enumerate_topologies(n))
            for (std::size_t q = 0; q < n; ++q) {
                FiniteTopology m = e.topology.with_reference_point(q);
                ++result.models_tried;
                if (a && !holds(*a, m)) continue;
                if (!holds(g, m)) {
                    result.model = m;
                    return result;
                }
            }
    return result;
}

std::size_t fuel_from_environment() {
    const char* s = std::getenv("HEYTING_ECC_FUEL");
    if (!s || !*s) return kDefaultFuel;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0' || v == 0) throw std::invalid_argument("HEYTING_ECC_FUEL must be a positive integer");
    return static_cast<std::size_t>(v);
}

namespace {

std::string span_text(const Span& s) {
    return std::to_string(s.line) + ":" + std::to_string(s.column) + "-" + std::to_string(s.end_line) + ":" +
           std::to_string(s.end_column);
}

/// Name of an open for reports: the conventional name on builtin models, else the
/// point list.
std::string open_name(const FiniteTopology& m, const std::string& model_arg, Bits bits) {
    auto names = builtin_open_names(model_arg);
    const auto& opens = m.open_bits();
    for (std::size_t i = 0; i < names.size() && i < opens.size(); ++i)
        if (opens[i] == bits) return names[i];
    return m.render(bits);
}

struct Session {
    std::vector<std::string> args;
    EvalOptions options;
    QueryReport report;

    void error(const std::string& kind, const std::string& message) {
        report.status = "error";
        report.result = message;
        report.exit_code = 1;
        report.details["error"] = kind;
    }
};

LoweredTerm parse_input(const std::string& text) { return lower(parse_source(text)); }

void describe_value(Session& s, const FiniteTopology& m, const std::string& model_arg, const Value& v) {
    s.report.result = render(v, m);
    if (v.is(Value::Kind::Open) && !builtin_open_names(model_arg).empty())
        s.report.details["name"] = open_name(m, model_arg, v.bits());
}

void run_check(Session& s, const std::string& term_text, const std::string& ctx_text) {
    Context ctx = parse_context(ctx_text);
    LoweredTerm t = parse_input(term_text);
    try {
        TypeChecker tc(s.options.fuel);
        tc.require_wf_context(ctx);
        Term type = tc.infer(ctx, t.term);
        s.report.status = "ok";
        s.report.result = pretty(type);
        s.report.details["term"] = pretty(t.term);
    } catch (const TypingError& e) {
        s.error(to_string(e.kind()), e.what());
        s.report.details["subterm"] = pretty(e.subterm());
        if (const Span* sp = t.span_of(e.subterm())) s.report.details["span"] = span_text(*sp);
    }
}

void run_eval(Session& s, const std::string& model_arg, const std::string& term_text) {
    FiniteTopology m = load_model(model_arg);
    Term t = parse_input(term_text).term;
    Value v = interpret(Context{}, t, {}, m, s.options);
    s.report.status = "ok";
    describe_value(s, m, model_arg, v);
}

void run_valid(Session& s, const std::string& model_arg, const std::string& term_text, const std::string& ctx_text) {
    FiniteTopology m = load_model(model_arg);
    Context ctx = parse_context(ctx_text);
    Term p = parse_input(term_text).term;
    Validity v = validity(ctx, p, m, s.options);
    const std::string ref = m.points()[m.reference_point()];
    s.report.details["reference_point"] = ref;
    s.report.details["environments"] = std::to_string(v.environments);
    if (v.denotation) {
        s.report.details["denotation"] = render(*v.denotation, m);
        if (!builtin_open_names(model_arg).empty())
            s.report.details["name"] = open_name(m, model_arg, v.denotation->bits());
    }
    if (v.vacuous) {
        s.report.status = "vacuous";
        s.report.result = "valid (vacuously: the context has no interpretation)";
    } else if (v.valid) {
        s.report.status = "valid";
        s.report.result = "valid: " + ref + " lies in every denotation";
    } else {
        s.report.status = "invalid";
        s.report.result = "invalid: " + ref + " is not in " + m.render(v.denotation->bits());
        s.report.exit_code = 2;
        std::vector<std::string> env;
        for (std::size_t i = 0; i < ctx.size(); ++i)
            env.push_back(ctx[i].name + " = " + render((*v.counterexample)[i], m));
        if (!env.empty()) s.report.details["counterexample"] = env;
    }
}

void run_table(Session& s, const std::string& model_arg, const std::string& op) {
    if (op != "exp") {
        s.error("UnknownOperation", "unknown table operation '" + op + "' (only 'exp' is supported)");
        return;
    }
    FiniteTopology m = load_model(model_arg);
    const auto opens = m.opens();
    ordered_json rows = ordered_json::array();
    ordered_json header = ordered_json::array({"x^y"});
    for (const auto& y : opens) header.push_back(open_name(m, model_arg, y.bits()));
    rows.push_back(header);
    for (const auto& x : opens) {
        ordered_json row = ordered_json::array({open_name(m, model_arg, x.bits())});
        for (const auto& y : opens) row.push_back(open_name(m, model_arg, exponential(x, y).bits()));
        rows.push_back(std::move(row));
    }
    s.report.status = "ok";
    s.report.result = "exponential x^y, rows x, columns y";
    s.report.details["table"] = std::move(rows);
}

void run_search(Session& s, const std::string& goal_text, const std::string& axiom_text, std::size_t max_points) {
    Term goal = parse_input(goal_text).term;
    std::optional<Term> axiom;
    if (!axiom_text.empty()) axiom = parse_input(axiom_text).term;
    SearchResult r = search_countermodel(goal, axiom, max_points, s.options);
    s.report.details["models_tried"] = std::to_string(r.models_tried);
    if (r.model) {
        s.report.status = "found";
        s.report.result = model_to_json(*r.model);
        s.report.details["points"] = std::to_string(r.model->size());
    } else {
        s.report.status = "none";
        s.report.result = "no countermodel with at most " + std::to_string(max_points) + " points";
        s.report.exit_code = 3;
    }
}

void run_point_condition(Session& s, const std::string& model_arg) {
    FiniteTopology m = load_model(model_arg);
    std::size_t p = m.reference_point();
    OpenSet hood = minimal_neighborhood(m, p);
    bool holds = check_point_condition(m, p);
    s.report.status = "ok";
    s.report.result = "minimal neighborhood of " + m.points()[p] + " is " + m.render(hood.bits()) +
                      (holds ? "; the point condition holds" : "; the point condition fails");
    s.report.details["reference_point"] = m.points()[p];
    s.report.details["minimal_neighborhood"] = m.render(hood.bits());
    s.report.details["holds"] = holds ? "true" : "false";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Type checker and finite topological models for a restricted ECC", "heyting-ecc"};
    app.require_subcommand(1);

    std::string term, ctx, model, op = "exp", goal, axiom;
    std::size_t max_points = kMaxEnumerationPoints;

    auto* check = app.add_subcommand("check", "Infer the type of a term");
    check->add_option("term", term, "Term")->required();
    check->add_option("--ctx", ctx, "Context, e.g. \"P : Prop; h : P\"");

    auto* eval = app.add_subcommand("eval", "Denotation of a closed term in a model");
    eval->add_option("--model", model, "Builtin model name or model file")->required();
    eval->add_option("term", term, "Term")->required();

    auto* valid = app.add_subcommand("valid", "Whether the reference point lies in a proposition's denotation");
    valid->add_option("--model", model, "Builtin model name or model file")->required();
    valid->add_option("term", term, "Proposition")->required();
    valid->add_option("--ctx", ctx, "Context");

    auto* table = app.add_subcommand("table", "Operation table over the opens of a model");
    table->add_option("--model", model, "Builtin model name or model file")->required();
    table->add_option("--op", op, "Operation (exp)");

    auto* search = app.add_subcommand("search", "Find a finite model separating an axiom from a goal");
    search->add_option("--goal", goal, "Proposition that should fail")->required();
    search->add_option("--axiom", axiom, "Proposition that should hold");
    search->add_option("--max-points", max_points, "Largest space to try")
        ->check(CLI::Range(std::size_t{1}, kMaxEnumerationPoints));

    auto* point = app.add_subcommand("point-condition", "Minimal neighborhood of the reference point");
    point->add_option("--model", model, "Builtin model name or model file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        Session s;
        s.report.arguments = args;
        s.report.command = args.empty() ? "heyting-ecc" : args.front();
        s.error("UsageError", e.what());
        err << s.report.text() << app.help();
        out << s.report.to_json() << '\n';
        return 1;
    }

    Session s;
    s.report.arguments = args;
    auto* sub = app.get_subcommands().front();
    s.report.command = sub->get_name();
    if (sub != check && sub != search) s.report.model = model;
    try {
        s.options.fuel = fuel_from_environment();
        if (sub == check) run_check(s, term, ctx);
        else if (sub == eval) run_eval(s, model, term);
        else if (sub == valid) run_valid(s, model, term, ctx);
        else if (sub == table) run_table(s, model, op);
        else if (sub == search) run_search(s, goal, axiom, max_points);
        else run_point_condition(s, model);
    } catch (const ParseError& e) {
        s.error(e.kind() == ParseError::Kind::DuplicateName ? "DuplicateName" : "ParseError", e.what());
        s.report.details["span"] = span_text(e.span());
    } catch (const TypingError& e) {
        s.error(to_string(e.kind()), e.what());
    } catch (const InterpError& e) {
        s.error(to_string(e.kind()), e.what());
    } catch (const TopologyError& e) {
        s.error(to_string(e.kind()), e.what());
    } catch (const FuelExhausted& e) {
        s.error("FuelExhausted", e.what());
    } catch (const std::exception& e) {
        s.error("Error", e.what());
    }

    (s.report.exit_code == 1 ? err : out) << s.report.text();
    out << s.report.to_json() << '\n';
    return s.report.exit_code;
}

}  // namespace hecc
