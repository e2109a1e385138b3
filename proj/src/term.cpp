#include "hecc/term.hpp"

#include <algorithm>
#include <utility>

namespace hecc {

Term Term::make(Kind kind, std::string name, const Term* left, const Term* right, unsigned level) {
    auto n = std::make_shared<TermNode>();
    n->kind = kind;
    n->name = std::move(name);
    if (left) n->left = *left;
    if (right) n->right = *right;
    n->level = level;
    Term t;
    t.node_ = std::move(n);
    return t;
}

Term Term::var(std::string name) { return make(Kind::Var, std::move(name), nullptr, nullptr, 0); }
Term Term::app(Term fun, Term arg) { return make(Kind::App, {}, &fun, &arg, 0); }
Term Term::lam(std::string binder, Term domain, Term body) {
    return make(Kind::Lam, std::move(binder), &domain, &body, 0);
}
Term Term::pi(std::string binder, Term domain, Term codomain) {
    return make(Kind::Pi, std::move(binder), &domain, &codomain, 0);
}
Term Term::prop() {
    static const Term p = make(Kind::Prop, {}, nullptr, nullptr, 0);
    return p;
}
Term Term::type(unsigned level) { return make(Kind::Type, {}, nullptr, nullptr, level); }

Term::Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
const Term& Term::fun() const noexcept { return node_->left; }
const Term& Term::arg() const noexcept { return node_->right; }
const Term& Term::domain() const noexcept { return node_->left; }
const Term& Term::body() const noexcept { return node_->right; }
unsigned Term::level() const noexcept { return node_->level; }

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind()) {
    case Term::Kind::Var:
        if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
        return;
    case Term::Kind::App:
        collect_free(t.fun(), bound, out);
        collect_free(t.arg(), bound, out);
        return;
    case Term::Kind::Lam:
    case Term::Kind::Pi:
        collect_free(t.domain(), bound, out);
        bound.push_back(t.name());
        collect_free(t.body(), bound, out);
        bound.pop_back();
        return;
    case Term::Kind::Prop:
    case Term::Kind::Type:
        return;
    }
}

Term rebuild(const Term& t, Term left, Term right) {
    if (left.node() == t.domain().node() && right.node() == t.body().node()) return t;
    switch (t.kind()) {
    case Term::Kind::App: return Term::app(std::move(left), std::move(right));
    case Term::Kind::Lam: return Term::lam(t.name(), std::move(left), std::move(right));
    case Term::Kind::Pi: return Term::pi(t.name(), std::move(left), std::move(right));
    default: return t;
    }
}

Term subst_impl(const Term& t, const std::string& x, const Term& v, const std::set<std::string>& fv_v) {
    switch (t.kind()) {
    case Term::Kind::Var:
        return t.name() == x ? v : t;
    case Term::Kind::App:
        return rebuild(t, subst_impl(t.fun(), x, v, fv_v), subst_impl(t.arg(), x, v, fv_v));
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
        Term dom = subst_impl(t.domain(), x, v, fv_v);
        if (t.name() == x || !occurs_free(t.body(), x)) return rebuild(t, std::move(dom), t.body());
        if (fv_v.count(t.name()) == 0) return rebuild(t, std::move(dom), subst_impl(t.body(), x, v, fv_v));
        // The binder would capture a free variable of v: rename it first.
        std::set<std::string> avoid = fv_v;
        avoid.merge(free_vars(t.body()));
        avoid.insert(x);
        std::string y = fresh_name(t.name(), avoid);
        Term body = substitute(t.body(), t.name(), Term::var(y));
        body = subst_impl(body, x, v, fv_v);
        return t.is(Term::Kind::Lam) ? Term::lam(y, std::move(dom), std::move(body))
                                     : Term::pi(y, std::move(dom), std::move(body));
    }
    case Term::Kind::Prop:
    case Term::Kind::Type:
        return t;
    }
    return t;
}

using Scope = std::vector<std::string>;

std::optional<std::size_t> depth_of(const Scope& s, const std::string& name) {
    for (std::size_t i = s.size(); i-- > 0;)
        if (s[i] == name) return s.size() - 1 - i;
    return std::nullopt;
}

bool alpha_impl(const Term& a, const Term& b, Scope& sa, Scope& sb) {
    if (a.node() == b.node() && sa == sb) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Term::Kind::Var: {
        auto da = depth_of(sa, a.name());
        auto db = depth_of(sb, b.name());
        if (da || db) return da == db;
        return a.name() == b.name();
    }
    case Term::Kind::App:
        return alpha_impl(a.fun(), b.fun(), sa, sb) && alpha_impl(a.arg(), b.arg(), sa, sb);
    case Term::Kind::Lam:
    case Term::Kind::Pi: {
        if (!alpha_impl(a.domain(), b.domain(), sa, sb)) return false;
        sa.push_back(a.name());
        sb.push_back(b.name());
        bool ok = alpha_impl(a.body(), b.body(), sa, sb);
        sa.pop_back();
        sb.pop_back();
        return ok;
    }
    case Term::Kind::Prop:
        return true;
    case Term::Kind::Type:
        return a.level() == b.level();
    }
    return false;
}

class Reducer {
public:
    explicit Reducer(std::size_t fuel) : fuel_(fuel) {}

    Term whnf(Term t) {
        while (t.is(Term::Kind::App)) {
            Term head = whnf(t.fun());
            if (head.is(Term::Kind::Lam)) {
                if (steps_ == fuel_) throw FuelExhausted(fuel_);
                ++steps_;
                t = substitute(head.body(), head.name(), t.arg());
                continue;
            }
            return head.node() == t.fun().node() ? t : Term::app(head, t.arg());
        }
        return t;
    }

    Term nf(const Term& t) {
        Term w = whnf(t);
        switch (w.kind()) {
        case Term::Kind::App:
        case Term::Kind::Lam:
        case Term::Kind::Pi: {
            Term left = nf(w.domain());
            Term right = nf(w.body());
            return rebuild(w, std::move(left), std::move(right));
        }
        default:
            return w;
        }
    }

private:
    std::size_t fuel_;
    std::size_t steps_ = 0;
};

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(t, bound, out);
    return out;
}

bool occurs_free(const Term& t, std::string_view x) {
    switch (t.kind()) {
    case Term::Kind::Var:
        return t.name() == x;
    case Term::Kind::App:
        return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    case Term::Kind::Lam:
    case Term::Kind::Pi:
        return occurs_free(t.domain(), x) || (t.name() != x && occurs_free(t.body(), x));
    default:
        return false;
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string name = base;
    while (avoid.count(name)) name += '\'';
    return name;
}

Term substitute(const Term& t, const std::string& x, const Term& v) {
    if (!occurs_free(t, x)) return t;
    return subst_impl(t, x, v, free_vars(v));
}

bool alpha_eq(const Term& a, const Term& b) {
    Scope sa, sb;
    return alpha_impl(a, b, sa, sb);
}

Term whnf(const Term& t, std::size_t fuel) { return Reducer(fuel).whnf(t); }

Term normalize(const Term& t, std::size_t fuel) { return Reducer(fuel).nf(t); }

bool beta_eq(const Term& a, const Term& b, std::size_t fuel) {
    if (alpha_eq(a, b)) return true;
    return alpha_eq(normalize(a, fuel), normalize(b, fuel));
}

Term arrow(Term a, Term b) {
    std::string x = fresh_name("_", free_vars(b));
    return Term::pi(std::move(x), std::move(a), std::move(b));
}

Term bottom() { return Term::pi("P", Term::prop(), Term::var("P")); }

Term neg(Term a) { return arrow(std::move(a), bottom()); }

Term conj(Term a, Term b) {
    std::set<std::string> avoid = free_vars(a);
    avoid.merge(free_vars(b));
    std::string p = fresh_name("P", avoid);
    Term vp = Term::var(p);
    return Term::pi(p, Term::prop(), arrow(arrow(std::move(a), arrow(std::move(b), vp)), vp));
}

Term disj(Term a, Term b) {
    std::set<std::string> avoid = free_vars(a);
    avoid.merge(free_vars(b));
    std::string p = fresh_name("P", avoid);
    Term vp = Term::var(p);
    return Term::pi(p, Term::prop(), arrow(arrow(std::move(a), vp), arrow(arrow(std::move(b), vp), vp)));
}

Term exists(std::string x, Term domain, Term body) {
    std::set<std::string> avoid = free_vars(domain);
    avoid.merge(free_vars(body));
    avoid.insert(x);
    std::string p = fresh_name("P", avoid);
    Term vp = Term::var(p);
    Term inner = Term::pi(std::move(x), std::move(domain), arrow(std::move(body), vp));
    return Term::pi(p, Term::prop(), arrow(std::move(inner), vp));
}

Term iff(Term a, Term b) { return conj(arrow(a, b), arrow(b, a)); }

Term eq(Term type, Term lhs, Term rhs) {
    std::set<std::string> avoid = free_vars(type);
    avoid.merge(free_vars(lhs));
    avoid.merge(free_vars(rhs));
    std::string q = fresh_name("Q", avoid);
    Term vq = Term::var(q);
    return Term::pi(q, arrow(std::move(type), Term::prop()),
                    iff(Term::app(vq, std::move(lhs)), Term::app(vq, std::move(rhs))));
}

Term expand_sugar(std::string_view symbol, const std::vector<Term>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw SugarError(SugarError::Kind::ArityMismatch,
                             std::string(symbol) + " expects " + std::to_string(n) + " argument(s), got " +
                                 std::to_string(args.size()));
    };
    if (symbol == "arrow") { need(2); return arrow(args[0], args[1]); }
    if (symbol == "bottom") { need(0); return bottom(); }
    if (symbol == "neg") { need(1); return neg(args[0]); }
    if (symbol == "and") { need(2); return conj(args[0], args[1]); }
    if (symbol == "or") { need(2); return disj(args[0], args[1]); }
    if (symbol == "iff") { need(2); return iff(args[0], args[1]); }
    if (symbol == "eq") { need(3); return eq(args[0], args[1], args[2]); }
    if (symbol == "exists") {
        need(3);
        if (!args[0].is(Term::Kind::Var))
            throw SugarError(SugarError::Kind::ArityMismatch, "exists expects a variable as its binder");
        return exists(args[0].name(), args[1], args[2]);
    }
    throw SugarError(SugarError::Kind::UnknownSymbol, "unknown notation '" + std::string(symbol) + "'");
}

bool Context::contains(std::string_view name) const { return index_of(name).has_value(); }

std::optional<std::size_t> Context::index_of(std::string_view name) const {
    for (std::size_t i = entries_.size(); i-- > 0;)
        if (entries_[i].name == name) return i;
    return std::nullopt;
}

std::set<std::string> Context::names() const {
    std::set<std::string> out;
    for (const auto& e : entries_) out.insert(e.name);
    return out;
}

std::string Context::push(std::string name, Term type, const std::set<std::string>& avoid) {
    if (contains(name) || avoid.count(name)) {
        std::set<std::string> taken = names();
        taken.insert(avoid.begin(), avoid.end());
        name = fresh_name(name, taken);
    }
    entries_.push_back({name, std::move(type)});
    return name;
}

Context Context::prefix(std::size_t n) const {
    Context c;
    c.entries_.assign(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
    return c;
}

}  // namespace hecc
