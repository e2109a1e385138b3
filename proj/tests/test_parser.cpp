#include <doctest.h>

#include <algorithm>
#include <random>

#include "hecc/parser.hpp"
#include "term_gen.hpp"

using namespace hecc;

namespace {

Term V(const char* n) { return Term::var(n); }
const Term P = Term::prop();

ParseError parse_failure(std::string_view text) {
    try {
        parse_term(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for: " << text);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("parse basic forms") {
    CHECK(alpha_eq(parse_term("forall P : Prop, P"), Term::pi("P", P, V("P"))));
    CHECK(alpha_eq(parse_term("False"), Term::pi("P", P, V("P"))));
    CHECK(alpha_eq(parse_term("fun x : Prop => x"), Term::lam("x", P, V("x"))));
    CHECK(alpha_eq(parse_term("Type0"), Term::type(0)));
    CHECK(alpha_eq(parse_term("Type12"), Term::type(12)));
    CHECK(alpha_eq(parse_term("f a b"), Term::app(Term::app(V("f"), V("a")), V("b"))));
    CHECK(alpha_eq(parse_term("f (a b)"), Term::app(V("f"), Term::app(V("a"), V("b")))));
}

TEST_CASE("parse expands notations") {
    Term em = parse_term("forall P : Prop, P \\/ ~P");
    // Expanded by hand: forall P, forall R, (P -> R) -> ((P -> forall S, S) -> R) -> R
    Term bot = Term::pi("S", P, V("S"));
    Term expect = Term::pi(
        "P", P,
        Term::pi("R", P,
                 Term::pi("_", Term::pi("_", V("P"), V("R")),
                          Term::pi("_", Term::pi("_", Term::pi("_", V("P"), bot), V("R")), V("R")))));
    CHECK(alpha_eq(em, expect));

    CHECK(alpha_eq(parse_term("A /\\ B"), conj(V("A"), V("B"))));
    CHECK(alpha_eq(parse_term("A <-> B"), iff(V("A"), V("B"))));
    CHECK(alpha_eq(parse_term("exists x : A, Q"), exists("x", V("A"), V("Q"))));
    CHECK(alpha_eq(parse_term("x = y :> A"), eq(V("A"), V("x"), V("y"))));
    CHECK(alpha_eq(parse_term("~ ~A"), neg(neg(V("A")))));
}

TEST_CASE("precedence and associativity") {
    CHECK(alpha_eq(parse_term("A -> B -> C"), arrow(V("A"), arrow(V("B"), V("C")))));
    CHECK(alpha_eq(parse_term("A \\/ B /\\ C"), disj(V("A"), conj(V("B"), V("C")))));
    CHECK(alpha_eq(parse_term("A /\\ B -> C"), arrow(conj(V("A"), V("B")), V("C"))));
    CHECK(alpha_eq(parse_term("A -> B <-> C"), iff(arrow(V("A"), V("B")), V("C"))));
    CHECK(alpha_eq(parse_term("~A /\\ B"), conj(neg(V("A")), V("B"))));
    CHECK(alpha_eq(parse_term("~f a"), neg(Term::app(V("f"), V("a")))));
    CHECK(alpha_eq(parse_term("A -> forall x : A, B"), arrow(V("A"), Term::pi("x", V("A"), V("B")))));
    CHECK(alpha_eq(parse_term("forall x : A, B -> C"), Term::pi("x", V("A"), arrow(V("B"), V("C")))));
    CHECK(alpha_eq(parse_term("f x = g y :> A -> B"), arrow(eq(V("A"), Term::app(V("f"), V("x")), Term::app(V("g"), V("y"))), V("B"))));
}

TEST_CASE("parse errors carry spans and expectations") {
    ParseError e = parse_failure("forall P Prop, P");
    CHECK(e.kind() == ParseError::Kind::Syntax);
    CHECK(e.span().line == 1);
    CHECK(e.span().column == 10);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "':'") != e.expected().end());

    ParseError bare = parse_failure("Type");
    CHECK(bare.span().column == 1);

    ParseError eol = parse_failure("fun x : Prop =>\n");
    CHECK(eol.span().line == 2);

    parse_failure("");
    parse_failure("(A");
    parse_failure("A B)");
    parse_failure("x = y");
    parse_failure("A $ B");
}

TEST_CASE("contexts") {
    CHECK(parse_context("").empty());
    CHECK(parse_context("  ").empty());

    Context one = parse_context("P : Prop");
    REQUIRE(one.size() == 1);
    CHECK(one[0].name == "P");
    CHECK(alpha_eq(one[0].type, P));

    Context two = parse_context("P : Prop; h : P");
    REQUIRE(two.size() == 2);
    CHECK(two[1].name == "h");
    CHECK(alpha_eq(two[1].type, V("P")));

    CHECK(parse_context("P : Prop; h : P;").size() == 2);

    try {
        parse_context("P : Prop; P : Prop");
        FAIL("duplicate accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::DuplicateName);
        CHECK(e.span().column == 11);
    }
}

TEST_CASE("pretty printing") {
    CHECK(pretty(Term::pi("P", P, V("P"))) == "forall P : Prop, P");
    CHECK(pretty(Term::app(Term::app(V("f"), V("a")), V("b"))) == "f a b");
    CHECK(pretty(arrow(V("A"), V("B"))) == "A -> B");
    CHECK(pretty(arrow(arrow(V("A"), V("B")), V("C"))) == "(A -> B) -> C");
    CHECK(pretty(Term::app(V("f"), Term::app(V("g"), V("x")))) == "f (g x)");
    CHECK(pretty(Term::lam("x", Term::type(1), V("x"))) == "fun x : Type1 => x");
}

TEST_CASE("spans cover lowered nodes") {
    LoweredTerm lt = lower(parse_source("f (g x)"));
    REQUIRE(lt.term.is(Term::Kind::App));
    const Span* whole = lt.span_of(lt.term);
    const Span* arg = lt.span_of(lt.term.arg());
    REQUIRE(whole);
    REQUIRE(arg);
    CHECK(whole->column == 1);
    CHECK(whole->end_column == 8);
    CHECK(arg->column == 3);
    CHECK(arg->end_column == 8);
}

TEST_CASE("pretty output parses back to the same term") {
    testing::TermGen gen(2024);
    for (int i = 0; i < 3000; ++i) {
        Term t = gen.term(6);
        std::string text = pretty(t);
        INFO(text);
        CHECK(alpha_eq(parse_term(text), t));
    }
    for (const char* src : {"forall P : Prop, P \\/ ~P", "forall P : Prop, forall Q : Prop, (P -> Q) \\/ (Q -> P)",
                            "exists x : Prop, x /\\ x", "fun a : Prop => a = a :> Prop"}) {
        Term t = parse_term(src);
        CHECK(alpha_eq(parse_term(pretty(t)), t));
    }
}

TEST_CASE("parsing arbitrary text never crashes") {
    const std::string alphabet = "forall fun exists Prop Type0 False ( ) : , => -> <-> \\/ /\\ ~ = :> ; x y P _ ' 1 $";
    std::vector<std::string> tokens;
    for (std::size_t i = 0, j; i < alphabet.size(); i = j + 1) {
        j = alphabet.find(' ', i);
        if (j == std::string::npos) j = alphabet.size();
        tokens.push_back(alphabet.substr(i, j - i));
    }
    std::mt19937 rng(5);
    int ok = 0;
    for (int i = 0; i < 5000; ++i) {
        std::string text;
        int len = std::uniform_int_distribution<int>(0, 12)(rng);
        for (int k = 0; k < len; ++k) {
            text += tokens[std::uniform_int_distribution<std::size_t>(0, tokens.size() - 1)(rng)];
            if (rng() % 2) text += ' ';
        }
        try {
            parse_term(text);
            ++ok;
        } catch (const ParseError&) {
        }
        try {
            parse_context(text);
        } catch (const ParseError&) {
        }
    }
    CHECK(ok > 0);
}
