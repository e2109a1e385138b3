#include <doctest.h>

#include "hecc/checker.hpp"
#include "hecc/parser.hpp"

using namespace hecc;

namespace {

Term V(const char* n) { return Term::var(n); }
const Term P = Term::prop();

TypingErrorKind error_of(const Context& ctx, const Term& t) {
    try {
        infer(ctx, t);
    } catch (const TypingError& e) {
        return e.kind();
    }
    FAIL("expected a typing error for " << pretty(t));
    throw std::logic_error("unreachable");
}

struct Judgment {
    const char* ctx;
    const char* term;
    const char* type;
};

// Well-typed judgments, several with redexes.
const Judgment kCorpus[] = {
    {"", "Prop", "Type0"},
    {"", "Type0", "Type1"},
    {"", "False", "Prop"},
    {"", "fun P : Prop => fun q : P => q", "forall P : Prop, P -> P"},
    {"", "fun P : Prop => P", "Prop -> Prop"},
    {"", "(fun P : Prop => P) (False -> False)", "Prop"},
    {"", "(fun P : Prop => fun q : P => q) (False -> False)", "(False -> False) -> False -> False"},
    {"", "fun A : Prop => fun B : Prop => fun a : A => fun b : B => fun R : Prop => fun k : A -> B -> R => k a b",
     "forall A : Prop, forall B : Prop, A -> B -> A /\\ B"},
    {"", "fun A : Prop => fun B : Prop => fun h : A /\\ B => h A (fun a : A => fun b : B => a)",
     "forall A : Prop, forall B : Prop, A /\\ B -> A"},
    {"", "fun A : Prop => fun a : A => fun k : ~A => k a", "forall A : Prop, A -> ~ ~A"},
    {"P : Prop; Q : Prop", "fun f : P -> Q => fun nq : ~Q => fun p : P => nq (f p)", "(P -> Q) -> ~Q -> ~P"},
    {"P : Prop; Q : Prop; h : P", "(fun x : P => fun y : Q => x) h", "Q -> P"},
    {"", "fun X : Type0 => fun x : X => x", "forall X : Type0, X -> X"},
    {"", "(fun X : Type1 => fun x : X => x) Prop", "Prop -> Prop"},
    {"", "(fun X : Type1 => fun x : X => x) Type0 Prop", "Type0"},
    {"", "fun P : Prop => fun f : P -> Prop => f", "forall P : Prop, (P -> Prop) -> P -> Prop"},
    {"", "forall X : Type0, X -> X", "Type1"},
    {"", "Prop -> Prop", "Type0"},
    {"A : Type0; a : A; B : A -> Prop", "B a", "Prop"},
    {"A : Type0; a : A; B : A -> Prop; b : B a", "(fun x : A => x) a", "A"},
};

Context ctx_of(const Judgment& j) { return parse_context(j.ctx); }

// Visits every product of a well-typed term with its local context.
template <typename F>
void for_each_pi(const Context& ctx, const Term& t, F&& f) {
    switch (t.kind()) {
    case Term::Kind::App:
        for_each_pi(ctx, t.fun(), f);
        for_each_pi(ctx, t.arg(), f);
        return;
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
        if (t.is(Term::Kind::Pi)) f(ctx, t);
        for_each_pi(ctx, t.domain(), f);
        Scoped inner = enter_binder(ctx, t.name(), t.domain(), t.body());
        for_each_pi(inner.context, inner.body, f);
        return;
    }
    default:
        return;
    }
}

}  // namespace

TEST_CASE("inference of sorts and products") {
    CHECK(alpha_eq(infer({}, P), Term::type(0)));
    CHECK(alpha_eq(infer({}, Term::type(4)), Term::type(5)));
    CHECK(alpha_eq(infer({}, Term::pi("P", P, V("P"))), P));
    CHECK(alpha_eq(infer({}, parse_term("Prop -> Type0")), Term::type(1)));
    CHECK(alpha_eq(infer({}, parse_term("Type2 -> Type0")), Term::type(3)));
    // Prop domain, Type codomain.
    CHECK(alpha_eq(infer(parse_context("P : Prop"), parse_term("P -> Type1")), Term::type(2)));
    CHECK(alpha_eq(infer({}, parse_term("fun P : Prop => P")), parse_term("Prop -> Prop")));
}

TEST_CASE("the Prop-Prop rule rejects statements about proofs") {
    Context ctx = parse_context("P : Prop; Q : P -> Prop");
    Term t = Term::pi("h", V("P"), Term::app(V("Q"), V("h")));
    CHECK(error_of(ctx, t) == TypingErrorKind::RestrictedPiViolation);
    // Without the binder in the codomain the product is fine.
    CHECK(alpha_eq(infer(parse_context("P : Prop; Q : Prop"), parse_term("forall h : P, Q")), P));
}

TEST_CASE("Prop is not a subtype of Type") {
    Context ctx = parse_context("P : Prop");
    try {
        TypeChecker().expect_type(ctx, V("P"), Term::type(0));
        FAIL("Prop accepted at Type0");
    } catch (const TypingError& e) {
        CHECK(e.kind() == TypingErrorKind::NoSubtypingPropToType);
    }
    CHECK_FALSE(check(ctx, V("P"), Term::type(0)));
    CHECK(error_of(ctx, parse_term("(fun X : Type0 => X) P")) == TypingErrorKind::NoSubtypingPropToType);
    // Types are cumulative.
    CHECK(check({}, P, Term::type(3)));
    CHECK(check({}, Term::type(0), Term::type(2)));
    CHECK_FALSE(check({}, Term::type(2), Term::type(2)));
}

TEST_CASE("error kinds") {
    CHECK(error_of({}, V("x")) == TypingErrorKind::UnboundVariable);
    CHECK(error_of({}, Term::app(P, P)) == TypingErrorKind::NotAFunction);
    CHECK(error_of(parse_context("P : Prop; Q : Prop; h : P; f : Q -> Q"), parse_term("f h")) ==
          TypingErrorKind::DomainMismatch);
    CHECK(error_of(parse_context("h : P"), P) == TypingErrorKind::IllFormedContext);
    CHECK(error_of({}, parse_term("fun x : (fun y : Prop => y) => x")) == TypingErrorKind::NotASort);
    CHECK(error_of(parse_context("P : Prop; h : P"), parse_term("forall x : h, P")) == TypingErrorKind::NotASort);

    try {
        infer(parse_context("P : Prop; Q : Prop; h : P; f : Q -> Q"), parse_term("f h"));
    } catch (const TypingError& e) {
        CHECK(alpha_eq(e.subterm(), V("h")));
        CHECK(e.context().size() == 4);
    }
}

TEST_CASE("check") {
    CHECK(check({}, Term::lam("P", P, V("P")), arrow(P, P)));
    CHECK(check({}, Term::pi("P", P, V("P")), P));
    CHECK(check({}, P, Term::type(3)));
    CHECK_FALSE(check({}, Term::pi("P", P, V("P")), Term::type(0)));
    // Conversion up to beta.
    CHECK(check(parse_context("P : Prop; h : P"), V("h"), parse_term("(fun X : Prop => X) P")));
    // The target must itself be a type.
    try {
        check(parse_context("P : Prop; h : P"), V("h"), V("h"));
        FAIL("a proof accepted as a type");
    } catch (const TypingError& e) {
        CHECK(e.kind() == TypingErrorKind::NotASort);
    }
}

TEST_CASE("classification predicates") {
    CHECK(is_propositional({}, bottom()));
    CHECK_FALSE(is_propositional({}, P));
    CHECK(is_propositional(parse_context("P : Prop"), V("P")));
    CHECK_FALSE(is_propositional({}, V("nope")));

    CHECK(is_proof_term(parse_context("P : Prop; h : P"), V("h")));
    CHECK(is_proof_term({}, parse_term("fun P : Prop => fun q : P => q")));
    CHECK_FALSE(is_proof_term({}, P));
    CHECK_FALSE(is_proof_term({}, parse_term("fun P : Prop => P")));

    CHECK(classify_pt(parse_context("P : Prop; Q : Prop"), "_", V("P"), V("Q")) == PTClass::PP);
    CHECK(classify_pt({}, "P", P, V("P")) == PTClass::TP);
    CHECK(classify_pt({}, "A", Term::type(0), Term::type(0)) == PTClass::T);
    CHECK(classify_pt(parse_context("P : Prop"), "h", V("P"), P) == PTClass::T);
    CHECK(classify_pt({}, "P", P, P) == PTClass::T);

    CHECK(wf_context({}));
    CHECK(wf_context(parse_context("P : Prop; h : P")));
    CHECK_FALSE(wf_context(parse_context("h : P")));
    CHECK_FALSE(wf_context(parse_context("P : Prop; h : P; k : h")));
}

TEST_CASE("binders that clash with context names are renamed") {
    Context ctx = parse_context("P : Prop; h : P");
    // The inner P shadows the context's P; the result must mention both.
    Term t = parse_term("fun P : Prop => fun q : P => h");
    Term T = infer(ctx, t);
    CHECK(alpha_eq(T, Term::pi("X", P, Term::pi("q", V("X"), V("P")))));
}

TEST_CASE("corpus judgments check") {
    for (const auto& j : kCorpus) {
        INFO(j.term);
        CHECK(check(ctx_of(j), parse_term(j.term), parse_term(j.type)));
    }
}

TEST_CASE("inference is deterministic") {
    for (const auto& j : kCorpus) {
        Context ctx = ctx_of(j);
        Term t = parse_term(j.term);
        CHECK(alpha_eq(infer(ctx, t), infer(ctx, t)));
    }
}

TEST_CASE("types are preserved by reduction") {
    for (const auto& j : kCorpus) {
        INFO(j.term);
        Context ctx = ctx_of(j);
        Term t = parse_term(j.term);
        Term T = parse_term(j.type);
        CHECK(check(ctx, whnf(t), T));
        CHECK(check(ctx, normalize(t), T));
    }
}

TEST_CASE("no propositional product mentions its binder") {
    for (const auto& j : kCorpus) {
        Context ctx = ctx_of(j);
        for_each_pi(ctx, parse_term(j.term), [](const Context& c, const Term& pi) {
            if (classify_pt(c, pi.name(), pi.domain(), pi.body()) == PTClass::PP)
                CHECK_FALSE(occurs_free(pi.body(), pi.name()));
        });
    }
}

namespace {

struct SubstCase {
    const char* ctx;
    const char* x;
    const char* U;
    const char* delta;
    const char* term;
    const char* type;
    const char* u;
};

const SubstCase kSubst[] = {
    {"P : Prop; p0 : P", "h", "P", "k : P -> P", "k h", "P", "p0"},
    {"", "A", "Prop", "a : A", "fun f : A -> A => f a", "(A -> A) -> A", "False -> False"},
    {"", "X", "Type0", "", "fun y : X => y", "X -> X", "Prop"},
    {"Q : Prop", "A", "Prop", "a : A; b : Q", "fun R : Prop => fun f : A -> Q -> R => f a b", "A /\\ Q", "Q -> Q"},
    {"", "F", "Prop -> Prop", "", "F False", "Prop", "fun P : Prop => ~P"},
    {"P : Prop; p0 : P", "h", "P", "", "fun Q : Prop => fun k : P -> Q => k h", "forall Q : Prop, (P -> Q) -> Q",
     "p0"},
    {"", "A", "Type0", "B : A -> Prop; a : A; b : B a", "b", "B a", "Prop"},
    {"", "A", "Type0", "B : A -> Prop; a : A", "B a", "Prop", "Prop -> Prop"},
};

}  // namespace

TEST_CASE("substitution preserves typing and proof-term status") {
    for (const auto& c : kSubst) {
        INFO(c.term);
        Context gamma = parse_context(c.ctx);
        Term U = parse_term(c.U);
        Term u = parse_term(c.u);
        REQUIRE(check(gamma, u, U));

        Context full = gamma;
        full.push(c.x, U);
        Context delta = parse_context(c.delta);
        for (const auto& e : delta) full.push(e.name, e.type);
        Term t = parse_term(c.term);
        Term T = parse_term(c.type);
        REQUIRE(check(full, t, T));

        Context substituted = gamma;
        for (const auto& e : delta) substituted.push(e.name, substitute(e.type, c.x, u));
        Term t2 = substitute(t, c.x, u);
        CHECK(check(substituted, t2, substitute(T, c.x, u)));
        CHECK(is_proof_term(full, t) == is_proof_term(substituted, t2));
    }
}
