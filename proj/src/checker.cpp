#include "hecc/checker.hpp"

#include <algorithm>

#include "hecc/parser.hpp"

namespace hecc {

const char* to_string(PTClass c) noexcept {
    switch (c) {
    case PTClass::PP: return "PP";
    case PTClass::TP: return "TP";
    case PTClass::T: return "T";
    }
    return "?";
}

const char* to_string(TypingErrorKind k) noexcept {
    switch (k) {
    case TypingErrorKind::UnboundVariable: return "UnboundVariable";
    case TypingErrorKind::NotAFunction: return "NotAFunction";
    case TypingErrorKind::DomainMismatch: return "DomainMismatch";
    case TypingErrorKind::RestrictedPiViolation: return "RestrictedPiViolation";
    case TypingErrorKind::NoSubtypingPropToType: return "NoSubtypingPropToType";
    case TypingErrorKind::IllFormedContext: return "IllFormedContext";
    case TypingErrorKind::NotASort: return "NotASort";
    }
    return "?";
}

TypingError::TypingError(TypingErrorKind kind, Term subterm, Context context, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      subterm_(std::move(subterm)),
      context_(std::move(context)) {}

Scoped enter_binder(const Context& ctx, const std::string& x, const Term& A, const Term& body) {
    Scoped s{ctx, {}, body};
    std::set<std::string> avoid;
    if (ctx.contains(x)) avoid = free_vars(body);
    s.binder = s.context.push(x, A, avoid);
    if (s.binder != x) s.body = substitute(body, x, Term::var(s.binder));
    return s;
}

namespace {

enum class Conversion { Ok, PropToType, Mismatch };

Conversion convertible(const Term& actual, const Term& expected, std::size_t fuel) {
    if (beta_eq(actual, expected, fuel)) return Conversion::Ok;
    Term a = normalize(actual, fuel);
    Term e = normalize(expected, fuel);
    if (a.is(Term::Kind::Type) && e.is(Term::Kind::Type) && a.level() <= e.level()) return Conversion::Ok;
    if (a.is(Term::Kind::Prop) && e.is(Term::Kind::Type)) return Conversion::PropToType;
    return Conversion::Mismatch;
}

[[noreturn]] void mismatch(Conversion c, const Context& ctx, const Term& t, const Term& actual,
                           const Term& expected) {
    if (c == Conversion::PropToType)
        throw TypingError(TypingErrorKind::NoSubtypingPropToType, t, ctx,
                          "'" + pretty(t) + "' is a proposition; it cannot be used at " + pretty(expected));
    throw TypingError(TypingErrorKind::DomainMismatch, t, ctx,
                      "'" + pretty(t) + "' has type " + pretty(actual) + " but " + pretty(expected) +
                          " was expected");
}

}  // namespace

Term TypeChecker::sort_of(const Context& ctx, const Term& A) const {
    Term s = whnf(infer(ctx, A), fuel_);
    if (!s.is(Term::Kind::Prop) && !s.is(Term::Kind::Type))
        throw TypingError(TypingErrorKind::NotASort, A, ctx,
                          "'" + pretty(A) + "' is not a type (its type is " + pretty(s) + ")");
    return s;
}

Term TypeChecker::infer(const Context& ctx, const Term& t) const {
    switch (t.kind()) {
    case Term::Kind::Var: {
        auto i = ctx.index_of(t.name());
        if (!i) throw TypingError(TypingErrorKind::UnboundVariable, t, ctx, "unbound variable '" + t.name() + "'");
        return ctx[*i].type;
    }
    case Term::Kind::Prop:
        return Term::type(0);
    case Term::Kind::Type:
        return Term::type(t.level() + 1);
    case Term::Kind::Pi: {
        Term sa = sort_of(ctx, t.domain());
        Scoped inner = enter_binder(ctx, t.name(), t.domain(), t.body());
        Term sb = sort_of(inner.context, inner.body);
        bool dom_prop = sa.is(Term::Kind::Prop);
        if (sb.is(Term::Kind::Prop)) {
            if (dom_prop && occurs_free(inner.body, inner.binder))
                throw TypingError(TypingErrorKind::RestrictedPiViolation, t, ctx,
                                  "proposition over proofs: '" + t.name() + "' occurs in " + pretty(t.body()));
            return Term::prop();
        }
        if (dom_prop) return sb;
        return Term::type(std::max(sa.level(), sb.level()));
    }
    case Term::Kind::Lam: {
        sort_of(ctx, t.domain());
        Scoped inner = enter_binder(ctx, t.name(), t.domain(), t.body());
        Term body_type = infer(inner.context, inner.body);
        Term product = Term::pi(inner.binder, t.domain(), body_type);
        sort_of(ctx, product);
        return product;
    }
    case Term::Kind::App: {
        Term fun_type = whnf(infer(ctx, t.fun()), fuel_);
        if (!fun_type.is(Term::Kind::Pi))
            throw TypingError(TypingErrorKind::NotAFunction, t.fun(), ctx,
                              "'" + pretty(t.fun()) + "' of type " + pretty(fun_type) + " is applied");
        Term arg_type = infer(ctx, t.arg());
        Conversion c = convertible(arg_type, fun_type.domain(), fuel_);
        if (c != Conversion::Ok) mismatch(c, ctx, t.arg(), arg_type, fun_type.domain());
        return substitute(fun_type.body(), fun_type.name(), t.arg());
    }
    }
    return Term::prop();
}

void TypeChecker::expect_type(const Context& ctx, const Term& t, const Term& T) const {
    sort_of(ctx, T);
    Term actual = infer(ctx, t);
    Conversion c = convertible(actual, T, fuel_);
    if (c != Conversion::Ok) mismatch(c, ctx, t, actual, T);
}

bool TypeChecker::check(const Context& ctx, const Term& t, const Term& T) const {
    try {
        expect_type(ctx, t, T);
        return true;
    } catch (const TypingError& e) {
        if (e.kind() == TypingErrorKind::DomainMismatch || e.kind() == TypingErrorKind::NoSubtypingPropToType) {
            // Only a mismatch at the top is a "no"; inner failures are errors.
            if (e.subterm().node() == t.node()) return false;
        }
        throw;
    }
}

bool TypeChecker::is_propositional(const Context& ctx, const Term& A) const {
    try {
        return whnf(infer(ctx, A), fuel_).is(Term::Kind::Prop);
    } catch (const TypingError&) {
        return false;
    }
}

bool TypeChecker::is_proof_term(const Context& ctx, const Term& t) const {
    try {
        return is_propositional(ctx, infer(ctx, t));
    } catch (const TypingError&) {
        return false;
    }
}

PTClass TypeChecker::classify_pt(const Context& ctx, const std::string& x, const Term& A, const Term& B) const {
    Scoped inner = enter_binder(ctx, x, A, B);
    bool codomain_prop = is_propositional(inner.context, inner.body);
    if (is_propositional(ctx, A))
        return codomain_prop && !occurs_free(inner.body, inner.binder) ? PTClass::PP : PTClass::T;
    return codomain_prop ? PTClass::TP : PTClass::T;
}

bool TypeChecker::wf_context(const Context& ctx) const {
    try {
        require_wf_context(ctx);
        return true;
    } catch (const TypingError&) {
        return false;
    }
}

void TypeChecker::require_wf_context(const Context& ctx) const {
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        Context prefix = ctx.prefix(i);
        if (prefix.contains(ctx[i].name))
            throw TypingError(TypingErrorKind::IllFormedContext, Term::var(ctx[i].name), prefix,
                              "duplicate context name '" + ctx[i].name + "'");
        try {
            sort_of(prefix, ctx[i].type);
        } catch (const TypingError& e) {
            throw TypingError(TypingErrorKind::IllFormedContext, ctx[i].type, prefix,
                              "entry '" + ctx[i].name + "' is ill-formed: " + e.what());
        }
    }
}

Term infer(const Context& ctx, const Term& t, std::size_t fuel) {
    TypeChecker tc(fuel);
    tc.require_wf_context(ctx);
    return tc.infer(ctx, t);
}

bool check(const Context& ctx, const Term& t, const Term& T, std::size_t fuel) {
    TypeChecker tc(fuel);
    tc.require_wf_context(ctx);
    return tc.check(ctx, t, T);
}

bool is_propositional(const Context& ctx, const Term& A, std::size_t fuel) {
    TypeChecker tc(fuel);
    return tc.wf_context(ctx) && tc.is_propositional(ctx, A);
}

bool is_proof_term(const Context& ctx, const Term& t, std::size_t fuel) {
    TypeChecker tc(fuel);
    return tc.wf_context(ctx) && tc.is_proof_term(ctx, t);
}

PTClass classify_pt(const Context& ctx, const std::string& x, const Term& A, const Term& B, std::size_t fuel) {
    return TypeChecker(fuel).classify_pt(ctx, x, A, B);
}

bool wf_context(const Context& ctx, std::size_t fuel) { return TypeChecker(fuel).wf_context(ctx); }

}  // namespace hecc
