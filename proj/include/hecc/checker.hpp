#pragma once

#include <stdexcept>
#include <string>

#include "hecc/term.hpp"

namespace hecc {

/// Classification of a dependent product by the propositional status of its
/// domain and codomain.
enum class PTClass { PP, TP, T };

const char* to_string(PTClass c) noexcept;

enum class TypingErrorKind {
    UnboundVariable,
    NotAFunction,
    DomainMismatch,
    RestrictedPiViolation,
    NoSubtypingPropToType,
    IllFormedContext,
    NotASort,
};

const char* to_string(TypingErrorKind k) noexcept;

class TypingError : public std::runtime_error {
public:
    TypingError(TypingErrorKind kind, Term subterm, Context context, const std::string& message);

    TypingErrorKind kind() const noexcept { return kind_; }
    const Term& subterm() const noexcept { return subterm_; }
    const Context& context() const noexcept { return context_; }

private:
    TypingErrorKind kind_;
    Term subterm_;
    Context context_;
};

/// Syntax-directed checker for the restricted calculus.
///
/// Member functions assume the context they are given is well formed; the
/// free functions below validate it first.
class TypeChecker {
public:
    explicit TypeChecker(std::size_t fuel = kDefaultFuel) : fuel_(fuel) {}

    std::size_t fuel() const noexcept { return fuel_; }

    /// Minimal type of `t`: sorts at their lowest level, Prop when derivable.
    Term infer(const Context& ctx, const Term& t) const;

    /// Throws TypingError unless ctx |- t : T. T must itself have a sort.
    void expect_type(const Context& ctx, const Term& t, const Term& T) const;

    /// Like expect_type, but a mismatch of types yields false instead of an
    /// error. Errors inside t or T still propagate.
    bool check(const Context& ctx, const Term& t, const Term& T) const;

    /// Returns Prop or Type_i (in normal form), or throws NotASort.
    Term sort_of(const Context& ctx, const Term& A) const;

    bool is_propositional(const Context& ctx, const Term& A) const;
    bool is_proof_term(const Context& ctx, const Term& t) const;
    PTClass classify_pt(const Context& ctx, const std::string& x, const Term& A, const Term& B) const;

    bool wf_context(const Context& ctx) const;
    void require_wf_context(const Context& ctx) const;

private:
    std::size_t fuel_;
};

/// Extends `ctx` with the binder `x : A` scoping over `body`, renaming the
/// binder when it clashes with an existing name.
struct Scoped {
    Context context;
    std::string binder;
    Term body;
};
Scoped enter_binder(const Context& ctx, const std::string& x, const Term& A, const Term& body);

Term infer(const Context& ctx, const Term& t, std::size_t fuel = kDefaultFuel);
bool check(const Context& ctx, const Term& t, const Term& T, std::size_t fuel = kDefaultFuel);
bool is_propositional(const Context& ctx, const Term& A, std::size_t fuel = kDefaultFuel);
bool is_proof_term(const Context& ctx, const Term& t, std::size_t fuel = kDefaultFuel);
PTClass classify_pt(const Context& ctx, const std::string& x, const Term& A, const Term& B,
                    std::size_t fuel = kDefaultFuel);
bool wf_context(const Context& ctx, std::size_t fuel = kDefaultFuel);

}  // namespace hecc
