#include "hecc/value.hpp"

#include <algorithm>
#include <stdexcept>

namespace hecc {

struct Value::Rep {
    Kind kind;
    Bits bits = 0;
    unsigned level = 0;
    std::vector<Value> elements;
    std::vector<std::pair<Value, Value>> graph;
};

Value Value::open(Bits bits) {
    auto r = std::make_shared<Rep>();
    r->kind = Kind::Open;
    r->bits = bits;
    return Value(std::move(r));
}

Value Value::point() {
    static const Value p = [] {
        auto r = std::make_shared<Rep>();
        r->kind = Kind::Point;
        return Value(std::move(r));
    }();
    return p;
}

Value Value::fin_set(std::vector<Value> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    auto r = std::make_shared<Rep>();
    r->kind = Kind::FinSet;
    r->elements = std::move(elements);
    return Value(std::move(r));
}

Value Value::fin_func(std::vector<std::pair<Value, Value>> graph) {
    std::sort(graph.begin(), graph.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < graph.size(); ++i)
        if (graph[i - 1].first == graph[i].first) throw std::invalid_argument("function graph is not functional");
    auto r = std::make_shared<Rep>();
    r->kind = Kind::FinFunc;
    r->graph = std::move(graph);
    return Value(std::move(r));
}

Value Value::universe(unsigned level) {
    auto r = std::make_shared<Rep>();
    r->kind = Kind::Universe;
    r->level = level;
    return Value(std::move(r));
}

Value::Kind Value::kind() const noexcept { return rep_->kind; }
Bits Value::bits() const noexcept { return rep_->bits; }
unsigned Value::level() const noexcept { return rep_->level; }
const std::vector<Value>& Value::elements() const noexcept { return rep_->elements; }
const std::vector<std::pair<Value, Value>>& Value::graph() const noexcept { return rep_->graph; }

bool Value::contains(const Value& v) const {
    return std::binary_search(rep_->elements.begin(), rep_->elements.end(), v);
}

std::optional<Value> Value::lookup(const Value& arg) const {
    auto it = std::lower_bound(rep_->graph.begin(), rep_->graph.end(), arg,
                               [](const auto& pair, const Value& key) { return pair.first < key; });
    if (it == rep_->graph.end() || it->first != arg) return std::nullopt;
    return it->second;
}

int compare(const Value& a, const Value& b) noexcept {
    if (a.rep_ == b.rep_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
    case Value::Kind::Open:
        return a.bits() == b.bits() ? 0 : (a.bits() < b.bits() ? -1 : 1);
    case Value::Kind::Point:
        return 0;
    case Value::Kind::Universe:
        return a.level() == b.level() ? 0 : (a.level() < b.level() ? -1 : 1);
    case Value::Kind::FinSet: {
        const auto& x = a.elements();
        const auto& y = b.elements();
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
            if (int c = compare(x[i], y[i])) return c;
        return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
    }
    case Value::Kind::FinFunc: {
        const auto& x = a.graph();
        const auto& y = b.graph();
        for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
            if (int c = compare(x[i].first, y[i].first)) return c;
            if (int c = compare(x[i].second, y[i].second)) return c;
        }
        return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
    }
    }
    return 0;
}

const char* to_string(Value::Kind k) noexcept {
    switch (k) {
    case Value::Kind::Open: return "Open";
    case Value::Kind::Point: return "Point";
    case Value::Kind::FinSet: return "FinSet";
    case Value::Kind::FinFunc: return "FinFunc";
    case Value::Kind::Universe: return "Universe";
    }
    return "?";
}

bool value_eq(const Value& a, const Value& b) noexcept { return a == b; }

std::string render(const Value& v, const FiniteTopology& model) {
    switch (v.kind()) {
    case Value::Kind::Open:
        return "Open " + model.render(v.bits());
    case Value::Kind::Point:
        return "Point";
    case Value::Kind::Universe:
        return "Universe " + std::to_string(v.level());
    case Value::Kind::FinSet: {
        std::string out = "Set {";
        for (std::size_t i = 0; i < v.elements().size(); ++i) {
            if (i) out += ", ";
            out += render(v.elements()[i], model);
        }
        return out + "}";
    }
    case Value::Kind::FinFunc: {
        std::string out = "Func {";
        for (std::size_t i = 0; i < v.graph().size(); ++i) {
            if (i) out += ", ";
            out += render(v.graph()[i].first, model) + " -> " + render(v.graph()[i].second, model);
        }
        return out + "}";
    }
    }
    return "?";
}

}  // namespace hecc
