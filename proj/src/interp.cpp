#include "hecc/interp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hecc/checker.hpp"

namespace hecc {

InterpError::InterpError(Kind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

const char* to_string(InterpError::Kind k) noexcept {
    switch (k) {
    case InterpError::Kind::NonEnumerableDomain: return "NonEnumerableDomain";
    case InterpError::Kind::NotInDomain: return "NotInDomain";
    case InterpError::Kind::PreconditionViolated: return "PreconditionViolated";
    case InterpError::Kind::ProductTooLarge: return "ProductTooLarge";
    }
    return "?";
}

namespace {

enum class Op { Point, Universe, PropSet, Var, PiPP, PiTP, PiT, Lam, App, Strict };

struct Node {
    Op op;
    int a = -1;
    int b = -1;
    unsigned n = 0;     // universe level or variable position
    std::size_t depth;  // context length at this node
    std::vector<std::size_t> deps;  // positions below depth read by the subtree
};

}  // namespace

struct CompiledTerm::Plan {
    std::vector<Node> nodes;
    int root = -1;
    int strict_root = -1;
    bool propositional = false;
    bool proof = false;
    EvalOptions options;
};

namespace {

[[noreturn]] void precondition(const std::string& message) {
    throw InterpError(InterpError::Kind::PreconditionViolated, message);
}

class Compiler {
public:
    Compiler(std::vector<Node>& nodes, std::size_t fuel) : tc_(fuel), nodes_(nodes) {}

    const TypeChecker& checker() const { return tc_; }

    int compile(const Context& ctx, const Term& t) {
        const std::size_t d = ctx.size();
        if (tc_.is_proof_term(ctx, t)) return add({Op::Point, -1, -1, 0, d, {}});
        switch (t.kind()) {
        case Term::Kind::Type:
            return add({Op::Universe, -1, -1, t.level(), d, {}});
        case Term::Kind::Prop:
            return add({Op::PropSet, -1, -1, 0, d, {}});
        case Term::Kind::Var: {
            auto i = ctx.index_of(t.name());
            if (!i) precondition("unbound variable '" + t.name() + "'");
            return add({Op::Var, -1, -1, static_cast<unsigned>(*i), d, {*i}});
        }
        case Term::Kind::App: {
            int f = compile(ctx, t.fun());
            int x = compile(ctx, t.arg());
            return add({Op::App, f, x, 0, d, merge(f, x, d)});
        }
        case Term::Kind::Lam: {
            int a = compile_strict(ctx, t.domain());
            Scoped inner = enter_binder(ctx, t.name(), t.domain(), t.body());
            int b = compile(inner.context, inner.body);
            return add({Op::Lam, a, b, 0, d, merge(a, b, d)});
        }
        case Term::Kind::Pi: {
            Scoped inner = enter_binder(ctx, t.name(), t.domain(), t.body());
            switch (tc_.classify_pt(ctx, t.name(), t.domain(), t.body())) {
            case PTClass::PP: {
                int a = compile(ctx, t.domain());
                int b = compile(ctx, inner.body);
                return add({Op::PiPP, a, b, 0, d, merge(a, b, d)});
            }
            case PTClass::TP: {
                int a = compile(ctx, t.domain());
                int b = compile(inner.context, inner.body);
                return add({Op::PiTP, a, b, 0, d, merge(a, b, d)});
            }
            case PTClass::T: {
                int a = compile_strict(ctx, t.domain());
                int b = compile(inner.context, inner.body);
                return add({Op::PiT, a, b, 0, d, merge(a, b, d)});
            }
            }
        }
        }
        precondition("unsupported term");
    }

    int compile_strict(const Context& ctx, const Term& A) {
        int a = compile(ctx, A);
        if (!tc_.is_propositional(ctx, A)) return a;
        return add({Op::Strict, a, -1, 0, ctx.size(), nodes_[a].deps});
    }

    int strict_of(int a) { return add({Op::Strict, a, -1, 0, nodes_[a].depth, nodes_[a].deps}); }

private:
    int add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size() - 1);
    }

    std::vector<std::size_t> merge(int a, int b, std::size_t depth) const {
        std::set<std::size_t> out;
        for (int id : {a, b})
            for (std::size_t v : nodes_[id].deps)
                if (v < depth) out.insert(v);
        return {out.begin(), out.end()};
    }

    TypeChecker tc_;
    std::vector<Node>& nodes_;
};

class Evaluator {
public:
    Evaluator(const CompiledTerm::Plan& plan, const FiniteTopology& model)
        : plan_(plan), model_(model), memo_(plan.nodes.size()) {}

    Value eval(int id, Env& env) {
        const Node& n = plan_.nodes[id];
        switch (n.op) {
        case Op::Point: return Value::point();
        case Op::Universe: return Value::universe(n.n);
        case Op::PropSet: return prop_set();
        case Op::Var:
            if (n.n >= env.size()) precondition("environment is shorter than the context");
            return env[n.n];
        case Op::PiPP: {
            Value b = eval(n.b, env);
            Value a = eval(n.a, env);
            if (!a.is(Value::Kind::Open) || !b.is(Value::Kind::Open)) precondition("propositions must denote opens");
            return Value::open(exponential(model_.open(b.bits()), model_.open(a.bits())).bits());
        }
        case Op::App: {
            Value f = eval(n.a, env);
            Value x = eval(n.b, env);
            if (!f.is(Value::Kind::FinFunc)) precondition("applied value is not a function");
            auto y = f.lookup(x);
            if (!y) throw InterpError(InterpError::Kind::NotInDomain, "argument outside the function's domain");
            return *y;
        }
        case Op::Strict: {
            Value a = eval(n.a, env);
            if (!a.is(Value::Kind::Open)) precondition("propositions must denote opens");
            if ((a.bits() >> model_.reference_point()) & 1u) return Value::fin_set({Value::point()});
            return Value::fin_set({});
        }
        case Op::PiTP:
        case Op::PiT:
        case Op::Lam:
            break;
        }
        std::vector<Value> key;
        key.reserve(n.deps.size());
        for (std::size_t v : n.deps) key.push_back(env[v]);
        auto& memo = memo_[id];
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Value result = eval_binder(n, env);
        memo.emplace(std::move(key), result);
        return result;
    }

    bool member(const Value& v, int id, Env& env) {
        const Node& n = plan_.nodes[id];
        if (n.op != Op::PiT) return value_in(v, eval(id, env), model_);
        Value dom = domain(n, env);
        if (!v.is(Value::Kind::FinFunc) || v.graph().size() != dom.elements().size()) return false;
        for (std::size_t i = 0; i < dom.elements().size(); ++i) {
            const auto& [arg, out] = v.graph()[i];
            if (arg != dom.elements()[i]) return false;
            env.push_back(arg);
            bool ok = member(out, n.b, env);
            env.pop_back();
            if (!ok) return false;
        }
        return true;
    }

private:
    Value prop_set() {
        if (!prop_set_) {
            std::vector<Value> opens;
            for (Bits b : model_.open_bits()) opens.push_back(Value::open(b));
            prop_set_ = Value::fin_set(std::move(opens));
        }
        return *prop_set_;
    }

    Value domain(const Node& n, Env& env) {
        Value dom = eval(n.a, env);
        if (dom.is(Value::Kind::Universe))
            throw InterpError(InterpError::Kind::NonEnumerableDomain,
                              "cannot range over Universe " + std::to_string(dom.level()));
        if (!dom.is(Value::Kind::FinSet)) precondition("domain does not denote a set");
        return dom;
    }

    Value eval_binder(const Node& n, Env& env) {
        Value dom = domain(n, env);
        std::vector<Value> fibers;
        fibers.reserve(dom.elements().size());
        for (const Value& alpha : dom.elements()) {
            env.push_back(alpha);
            fibers.push_back(eval(n.b, env));
            env.pop_back();
        }
        if (n.op == Op::Lam) {
            std::vector<std::pair<Value, Value>> graph;
            for (std::size_t i = 0; i < fibers.size(); ++i) graph.emplace_back(dom.elements()[i], fibers[i]);
            return Value::fin_func(std::move(graph));
        }
        if (n.op == Op::PiTP) {
            std::vector<OpenSet> family;
            for (const Value& f : fibers) {
                if (!f.is(Value::Kind::Open)) precondition("propositions must denote opens");
                family.push_back(model_.open(f.bits()));
            }
            return Value::open(meet_family(model_, family).bits());
        }
        return product(dom, fibers);
    }

    Value product(const Value& dom, const std::vector<Value>& fibers) {
        std::size_t total = 1;
        for (const Value& f : fibers) {
            if (f.is(Value::Kind::Universe))
                throw InterpError(InterpError::Kind::NonEnumerableDomain,
                                  "cannot materialize functions into Universe " + std::to_string(f.level()));
            if (!f.is(Value::Kind::FinSet)) precondition("codomain does not denote a set");
            if (f.elements().empty()) return Value::fin_set({});
        }
        for (const Value& f : fibers) {
            total *= f.elements().size();
            if (total > plan_.options.max_product)
                throw InterpError(InterpError::Kind::ProductTooLarge,
                                  "dependent product exceeds " + std::to_string(plan_.options.max_product) +
                                      " functions");
        }
        std::vector<Value> functions;
        functions.reserve(total);
        std::vector<std::size_t> choice(fibers.size(), 0);
        for (;;) {
            std::vector<std::pair<Value, Value>> graph;
            graph.reserve(fibers.size());
            for (std::size_t i = 0; i < fibers.size(); ++i)
                graph.emplace_back(dom.elements()[i], fibers[i].elements()[choice[i]]);
            functions.push_back(Value::fin_func(std::move(graph)));
            std::size_t i = 0;
            while (i < fibers.size() && ++choice[i] == fibers[i].elements().size()) choice[i++] = 0;
            if (i == fibers.size()) break;
        }
        return Value::fin_set(std::move(functions));
    }

    const CompiledTerm::Plan& plan_;
    const FiniteTopology& model_;
    std::vector<std::map<std::vector<Value>, Value>> memo_;
    std::optional<Value> prop_set_;
};

}  // namespace

CompiledTerm::CompiledTerm(const Context& ctx, const Term& t, EvalOptions options)
    : plan_(std::make_unique<Plan>()) {
    plan_->options = options;
    Compiler c(plan_->nodes, options.fuel);
    try {
        c.checker().require_wf_context(ctx);
        c.checker().infer(ctx, t);
    } catch (const TypingError& e) {
        precondition(std::string("not a derivable judgment: ") + e.what());
    }
    plan_->proof = c.checker().is_proof_term(ctx, t);
    plan_->propositional = c.checker().is_propositional(ctx, t);
    plan_->root = c.compile(ctx, t);
    plan_->strict_root = plan_->propositional ? c.strict_of(plan_->root) : plan_->root;
}

CompiledTerm::~CompiledTerm() = default;
CompiledTerm::CompiledTerm(CompiledTerm&&) noexcept = default;
CompiledTerm& CompiledTerm::operator=(CompiledTerm&&) noexcept = default;

Value CompiledTerm::evaluate(const Env& env, const FiniteTopology& model) const {
    Env e = env;
    return Evaluator(*plan_, model).eval(plan_->root, e);
}

Value CompiledTerm::evaluate_strict(const Env& env, const FiniteTopology& model) const {
    Env e = env;
    return Evaluator(*plan_, model).eval(plan_->strict_root, e);
}

bool CompiledTerm::has_member(const Value& v, const Env& env, const FiniteTopology& model) const {
    Env e = env;
    return Evaluator(*plan_, model).member(v, plan_->root, e);
}

bool CompiledTerm::is_propositional() const noexcept { return plan_->propositional; }
bool CompiledTerm::is_proof_term() const noexcept { return plan_->proof; }

Value interpret(const Context& ctx, const Term& t, const Env& env, const FiniteTopology& model,
                EvalOptions options) {
    if (env.size() != ctx.size()) precondition("environment length does not match the context");
    return CompiledTerm(ctx, t, options).evaluate(env, model);
}

Value interpret_strict(const Context& ctx, const Term& A, const Env& env, const FiniteTopology& model,
                       EvalOptions options) {
    if (env.size() != ctx.size()) precondition("environment length does not match the context");
    return CompiledTerm(ctx, A, options).evaluate_strict(env, model);
}

std::vector<Env> enumerate_context(const Context& ctx, const FiniteTopology& model, EvalOptions options) {
    if (!TypeChecker(options.fuel).wf_context(ctx)) precondition("ill-formed context");
    std::vector<CompiledTerm> entries;
    for (std::size_t i = 0; i < ctx.size(); ++i) entries.emplace_back(ctx.prefix(i), ctx[i].type, options);

    std::vector<Env> out;
    Env env;
    auto go = [&](auto& self, std::size_t i) -> void {
        if (i == entries.size()) {
            out.push_back(env);
            return;
        }
        Value dom = entries[i].evaluate_strict(env, model);
        if (dom.is(Value::Kind::Universe))
            throw InterpError(InterpError::Kind::NonEnumerableDomain,
                              "context entry '" + ctx[i].name + "' ranges over Universe " +
                                  std::to_string(dom.level()));
        if (!dom.is(Value::Kind::FinSet)) precondition("context entry '" + ctx[i].name + "' is not a type");
        for (const Value& v : dom.elements()) {
            env.push_back(v);
            self(self, i + 1);
            env.pop_back();
        }
    };
    go(go, 0);
    return out;
}

bool value_in(const Value& v, const Value& V, const FiniteTopology& model) {
    switch (V.kind()) {
    case Value::Kind::Open:
        return v.is(Value::Kind::Point) && ((V.bits() >> model.reference_point()) & 1u);
    case Value::Kind::FinSet:
        return V.contains(v);
    case Value::Kind::Universe:
        return !v.is(Value::Kind::Universe) || v.level() < V.level();
    case Value::Kind::Point:
    case Value::Kind::FinFunc:
        return false;
    }
    return false;
}

Validity validity(const Context& ctx, const Term& P, const FiniteTopology& model, EvalOptions options) {
    CompiledTerm prop(ctx, P, options);
    if (!prop.is_propositional()) precondition("validity needs a proposition");
    Validity out;
    for (const Env& env : enumerate_context(ctx, model, options)) {
        ++out.environments;
        Value v = prop.evaluate(env, model);
        if (!((v.bits() >> model.reference_point()) & 1u)) {
            out.valid = false;
            out.counterexample = env;
            out.denotation = v;
            return out;
        }
        if (!out.denotation) out.denotation = v;
    }
    out.vacuous = out.environments == 0;
    return out;
}

bool is_valid(const Context& ctx, const Term& P, const FiniteTopology& model, EvalOptions options) {
    return validity(ctx, P, model, options).valid;
}

bool check_soundness(const Context& ctx, const Term& t, const Term& T, const FiniteTopology& model,
                     EvalOptions options) {
    try {
        if (!check(ctx, t, T, options.fuel)) precondition("the judgment does not type check");
    } catch (const TypingError& e) {
        precondition(std::string("the judgment does not type check: ") + e.what());
    }
    CompiledTerm term(ctx, t, options);
    CompiledTerm type(ctx, T, options);
    for (const Env& env : enumerate_context(ctx, model, options))
        if (!type.has_member(term.evaluate(env, model), env, model)) return false;
    return true;
}

}  // namespace hecc
