#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecc/term.hpp"
#include "hecc/topology.hpp"
#include "hecc/value.hpp"

namespace hecc {

class InterpError : public std::runtime_error {
public:
    enum class Kind { NonEnumerableDomain, NotInDomain, PreconditionViolated, ProductTooLarge };

    InterpError(Kind kind, const std::string& message);
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* to_string(InterpError::Kind k) noexcept;

struct EvalOptions {
    std::size_t fuel = kDefaultFuel;
    /// Bound on the number of functions in one dependent product.
    std::size_t max_product = 1'000'000;
};

/// One value per context entry, in context order.
using Env = std::vector<Value>;

/// A term in a context, classified once and evaluable in any model and
/// environment. Classification (proof term, propositional, product class) does
/// not depend on the model, so it is done up front.
class CompiledTerm {
public:
    /// Throws InterpError::PreconditionViolated when the context is ill formed
    /// or the term is ill typed.
    CompiledTerm(const Context& ctx, const Term& t, EvalOptions options = {});
    ~CompiledTerm();
    CompiledTerm(CompiledTerm&&) noexcept;
    CompiledTerm& operator=(CompiledTerm&&) noexcept;

    Value evaluate(const Env& env, const FiniteTopology& model) const;
    /// The strict reading: a propositional type collapses to {Point} or {}.
    Value evaluate_strict(const Env& env, const FiniteTopology& model) const;
    /// Whether `v` belongs to the denotation of this term read as a type.
    /// Dependent products are checked pointwise rather than materialized.
    bool has_member(const Value& v, const Env& env, const FiniteTopology& model) const;

    bool is_propositional() const noexcept;
    bool is_proof_term() const noexcept;

    struct Plan;

private:
    std::unique_ptr<Plan> plan_;
};

Value interpret(const Context& ctx, const Term& t, const Env& env, const FiniteTopology& model,
                EvalOptions options = {});
Value interpret_strict(const Context& ctx, const Term& A, const Env& env, const FiniteTopology& model,
                       EvalOptions options = {});

/// Every environment of the context denotation, depth first.
std::vector<Env> enumerate_context(const Context& ctx, const FiniteTopology& model, EvalOptions options = {});

bool value_in(const Value& v, const Value& V, const FiniteTopology& model);

struct Validity {
    bool valid = true;
    /// The context denotation is empty, so validity holds trivially.
    bool vacuous = false;
    std::size_t environments = 0;
    /// First environment where the reference point is missing, with the
    /// denotation there.
    std::optional<Env> counterexample;
    std::optional<Value> denotation;
};

Validity validity(const Context& ctx, const Term& P, const FiniteTopology& model, EvalOptions options = {});
bool is_valid(const Context& ctx, const Term& P, const FiniteTopology& model, EvalOptions options = {});

bool check_soundness(const Context& ctx, const Term& t, const Term& T, const FiniteTopology& model,
                     EvalOptions options = {});

}  // namespace hecc
