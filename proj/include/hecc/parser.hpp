#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hecc/term.hpp"

namespace hecc {

struct Span {
    int line = 1;
    int column = 1;
    int end_line = 1;
    int end_column = 1;
};

/// Concrete syntax tree. Notation nodes (False, Arrow, Not, ...) survive here
/// and are expanded by `lower`.
struct SourceTerm {
    enum class Kind { Var, App, Lam, Pi, Prop, Type, False, Arrow, Not, And, Or, Iff, Exists, Eq };

    Kind kind;
    Span span;
    std::string name;  // Var name or binder
    unsigned level = 0;
    // App: fun, arg. Lam/Pi/Exists: domain, body. Arrow/And/Or/Iff: lhs, rhs.
    // Not: operand. Eq: lhs, rhs, type.
    std::vector<SourceTerm> children;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, DuplicateName };

    ParseError(Kind kind, Span span, std::string message, std::vector<std::string> expected = {});

    Kind kind() const noexcept { return kind_; }
    const Span& span() const noexcept { return span_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    Kind kind_;
    Span span_;
    std::string detail_;
    std::vector<std::string> expected_;
};

/// Kernel term with the source span of every node produced by lowering.
struct LoweredTerm {
    Term term;
    std::unordered_map<const TermNode*, Span> spans;

    const Span* span_of(const Term& t) const;
};

SourceTerm parse_source(std::string_view text);
LoweredTerm lower(const SourceTerm& source);

Term parse_term(std::string_view text);

/// `x : T; y : U; ...`, left to right. Empty text is the empty context.
Context parse_context(std::string_view text);

std::string pretty(const Term& t);

}  // namespace hecc
