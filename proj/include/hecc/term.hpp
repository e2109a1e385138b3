#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hecc {

inline constexpr std::size_t kDefaultFuel = 1'000'000;

struct TermNode;

/// Immutable term of the restricted calculus. Copies share structure.
///
/// Variables are named; Lam and Pi carry their binder name. Equality up to
/// binder names is `alpha_eq`, not `operator==`.
class Term {
public:
    enum class Kind { Var, App, Lam, Pi, Prop, Type };

    static Term var(std::string name);
    static Term app(Term fun, Term arg);
    static Term lam(std::string binder, Term domain, Term body);
    static Term pi(std::string binder, Term domain, Term codomain);
    static Term prop();
    static Term type(unsigned level);

    Kind kind() const noexcept;
    bool is(Kind k) const noexcept { return kind() == k; }

    /// Variable name, or binder name for Lam/Pi.
    const std::string& name() const noexcept;
    const Term& fun() const noexcept;
    const Term& arg() const noexcept;
    const Term& domain() const noexcept;
    /// Body of a Lam, codomain of a Pi.
    const Term& body() const noexcept;
    unsigned level() const noexcept;

    /// Identity of the shared node; stable for the lifetime of any copy.
    const TermNode* node() const noexcept { return node_.get(); }

private:
    friend struct TermNode;
    Term() = default;
    static Term make(Kind kind, std::string name, const Term* left, const Term* right, unsigned level);

    std::shared_ptr<const TermNode> node_;
};

struct TermNode {
    Term::Kind kind;
    std::string name;
    Term left;   // fun / domain
    Term right;  // arg / body / codomain
    unsigned level = 0;
};

class FuelExhausted : public std::runtime_error {
public:
    explicit FuelExhausted(std::size_t fuel)
        : std::runtime_error("normalization fuel exhausted after " + std::to_string(fuel) + " steps"),
          fuel_(fuel) {}
    std::size_t fuel() const noexcept { return fuel_; }

private:
    std::size_t fuel_;
};

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view x);

/// `base`, or `base` followed by primes, avoiding every name in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Capture-avoiding t[x\v].
Term substitute(const Term& t, const std::string& x, const Term& v);

bool alpha_eq(const Term& a, const Term& b);

/// Weak-head normal form; throws FuelExhausted after `fuel` beta steps.
Term whnf(const Term& t, std::size_t fuel = kDefaultFuel);

/// Beta-normal form by leftmost-outermost reduction.
Term normalize(const Term& t, std::size_t fuel = kDefaultFuel);

bool beta_eq(const Term& a, const Term& b, std::size_t fuel = kDefaultFuel);

// Logical notations, expanded to kernel terms. Introduced binders are chosen
// fresh for the operands so no free variable is captured.
Term arrow(Term a, Term b);
Term bottom();
Term neg(Term a);
Term conj(Term a, Term b);
Term disj(Term a, Term b);
Term exists(std::string x, Term domain, Term body);
Term iff(Term a, Term b);
Term eq(Term type, Term lhs, Term rhs);

class SugarError : public std::invalid_argument {
public:
    enum class Kind { ArityMismatch, UnknownSymbol };
    SugarError(Kind kind, const std::string& msg) : std::invalid_argument(msg), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Expands a notation by name: arrow/2, bottom/0, neg/1, and/2, or/2,
/// exists/3, iff/2, eq/3. For `exists` the first argument must be a Var
/// naming the binder.
Term expand_sugar(std::string_view symbol, const std::vector<Term>& args);

struct ContextEntry {
    std::string name;
    Term type;
};

/// Ordered telescope of typed assumptions with pairwise distinct names.
class Context {
public:
    Context() = default;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const ContextEntry& operator[](std::size_t i) const { return entries_[i]; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    bool contains(std::string_view name) const;
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::set<std::string> names() const;

    /// Appends an entry. If `name` is already taken (or listed in `avoid`) a
    /// fresh variant is used instead; the name actually bound is returned.
    std::string push(std::string name, Term type, const std::set<std::string>& avoid = {});

    Context prefix(std::size_t n) const;

private:
    std::vector<ContextEntry> entries_;
};

}  // namespace hecc
