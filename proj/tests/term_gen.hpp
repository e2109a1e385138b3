#pragma once

#include <random>
#include <string>
#include <vector>

#include "hecc/term.hpp"

namespace hecc::testing {

/// Random raw terms (not necessarily well typed) over a small name pool so
/// that shadowing and capture happen often.
class TermGen {
public:
    explicit TermGen(unsigned seed) : rng_(seed) {}

    Term term(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(6)) {
        case 0: return leaf();
        case 1:
        case 2: return Term::app(term(depth - 1), term(depth - 1));
        case 3: return Term::lam(name(), term(depth - 1), term(depth - 1));
        default: return Term::pi(name(), term(depth - 1), term(depth - 1));
        }
    }

    std::string name() { return names_[pick(names_.size())]; }

    int pick(std::size_t n) { return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_)); }

private:
    Term leaf() {
        switch (pick(5)) {
        case 0: return Term::prop();
        case 1: return Term::type(static_cast<unsigned>(pick(3)));
        default: return Term::var(name());
        }
    }

    std::mt19937 rng_;
    std::vector<std::string> names_{"x", "y", "z", "a", "b", "x'"};
};

}  // namespace hecc::testing
