#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hecc/topology.hpp"

namespace hecc {

/// Denotation of a term in a finite model. Immutable and cheap to copy.
///
/// Values are compared by a canonical total order: variant tag first (in the
/// order of Kind), then contents.
class Value {
public:
    enum class Kind { Open, Point, FinSet, FinFunc, Universe };

    static Value open(Bits bits);
    static Value point();
    /// Sorts and removes duplicates.
    static Value fin_set(std::vector<Value> elements);
    /// Sorts by argument; throws std::invalid_argument if not functional.
    static Value fin_func(std::vector<std::pair<Value, Value>> graph);
    static Value universe(unsigned level);

    Kind kind() const noexcept;
    bool is(Kind k) const noexcept { return kind() == k; }
    Bits bits() const noexcept;
    unsigned level() const noexcept;
    const std::vector<Value>& elements() const noexcept;
    const std::vector<std::pair<Value, Value>>& graph() const noexcept;

    bool contains(const Value& v) const;
    std::optional<Value> lookup(const Value& arg) const;

    friend int compare(const Value& a, const Value& b) noexcept;
    friend bool operator==(const Value& a, const Value& b) noexcept { return compare(a, b) == 0; }
    friend bool operator!=(const Value& a, const Value& b) noexcept { return compare(a, b) != 0; }
    friend bool operator<(const Value& a, const Value& b) noexcept { return compare(a, b) < 0; }

    struct Rep;

private:
    explicit Value(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

const char* to_string(Value::Kind k) noexcept;

bool value_eq(const Value& a, const Value& b) noexcept;

/// `Open {0}`, `Point`, `Set {...}`, `Func {a -> b, ...}`, `Universe 0`.
std::string render(const Value& v, const FiniteTopology& model);

}  // namespace hecc
