#include "hecc/parser.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace hecc {

ParseError::ParseError(Kind kind, Span span, std::string message, std::vector<std::string> expected)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << span.line << ':' << span.column << ": " << message;
          if (!expected.empty()) {
              os << " (expected ";
              for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
              os << ')';
          }
          return os.str();
      }()),
      kind_(kind),
      span_(span),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

const Span* LoweredTerm::span_of(const Term& t) const {
    auto it = spans.find(t.node());
    return it == spans.end() ? nullptr : &it->second;
}

namespace {

enum class Tok {
    Ident, TypeN, Prop, False, Forall, Fun, Exists,
    LParen, RParen, Colon, Comma, FatArrow, Arrow, Iff, Or, And, Not, Eq, EqType, Semi, End
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::TypeN: return "TypeN";
    case Tok::Prop: return "'Prop'";
    case Tok::False: return "'False'";
    case Tok::Forall: return "'forall'";
    case Tok::Fun: return "'fun'";
    case Tok::Exists: return "'exists'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::FatArrow: return "'=>'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Or: return "'\\/'";
    case Tok::And: return "'/\\'";
    case Tok::Not: return "'~'";
    case Tok::Eq: return "'='";
    case Tok::EqType: return "':>'";
    case Tok::Semi: return "';'";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    unsigned level = 0;
    Span span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::End) return out;
        }
    }

private:
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    Token finish(Tok kind, std::size_t len, Span start) {
        for (std::size_t i = 0; i < len; ++i) advance();
        start.end_line = line_;
        start.end_column = col_;
        return Token{kind, {}, 0, start};
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    Token next() {
        Span start{line_, col_, line_, col_};
        if (pos_ >= src_.size()) return Token{Tok::End, {}, 0, start};

        static const std::pair<std::string_view, Tok> symbols[] = {
            {"<->", Tok::Iff}, {"->", Tok::Arrow}, {"=>", Tok::FatArrow}, {":>", Tok::EqType},
            {"\\/", Tok::Or},  {"/\\", Tok::And},  {"(", Tok::LParen},    {")", Tok::RParen},
            {":", Tok::Colon}, {",", Tok::Comma},  {"~", Tok::Not},       {"=", Tok::Eq},
            {";", Tok::Semi},
        };
        for (const auto& [text, kind] : symbols)
            if (starts(text)) return finish(kind, text.size(), start);

        char c = src_[pos_];
        if (!ident_start(c)) {
            throw ParseError(ParseError::Kind::Syntax, start,
                             std::string("unexpected character '") + c + "'");
        }
        std::size_t end = pos_;
        while (end < src_.size() && ident_char(src_[end])) ++end;
        std::string word(src_.substr(pos_, end - pos_));
        Token tok = finish(Tok::Ident, word.size(), start);
        tok.text = word;
        if (word == "forall") tok.kind = Tok::Forall;
        else if (word == "fun") tok.kind = Tok::Fun;
        else if (word == "exists") tok.kind = Tok::Exists;
        else if (word == "Prop") tok.kind = Tok::Prop;
        else if (word == "False") tok.kind = Tok::False;
        else if (word == "Type")
            throw ParseError(ParseError::Kind::Syntax, tok.span,
                             "universe level required: write Type0, Type1, ...");
        else if (word.size() > 4 && word.compare(0, 4, "Type") == 0 &&
                 word.find_first_not_of("0123456789", 4) == std::string::npos) {
            if (word.size() - 4 > 9)
                throw ParseError(ParseError::Kind::Syntax, tok.span, "universe level too large");
            tok.kind = Tok::TypeN;
            tok.level = static_cast<unsigned>(std::stoul(word.substr(4)));
        }
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Span join(const Span& a, const Span& b) { return Span{a.line, a.column, b.end_line, b.end_column}; }

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    SourceTerm parse_whole() {
        SourceTerm t = expr();
        expect(Tok::End);
        return t;
    }

    std::vector<std::pair<Token, SourceTerm>> parse_entries() {
        std::vector<std::pair<Token, SourceTerm>> out;
        while (!at(Tok::End)) {
            Token name = expect(Tok::Ident);
            expect(Tok::Colon);
            SourceTerm type = expr();
            out.emplace_back(std::move(name), std::move(type));
            if (at(Tok::End)) break;
            expect(Tok::Semi);
        }
        return out;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }

    Token take() {
        Token t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string what = t.kind == Tok::End ? "unexpected end of input"
                                              : "unexpected " + std::string(describe(t.kind)) +
                                                    (t.text.empty() ? "" : " '" + t.text + "'");
        throw ParseError(ParseError::Kind::Syntax, t.span, what, std::move(expected));
    }

    Token expect(Tok k) {
        if (!at(k)) fail({describe(k)});
        return take();
    }

    static SourceTerm node(SourceTerm::Kind kind, Span span, std::vector<SourceTerm> children = {},
                           std::string name = {}) {
        return SourceTerm{kind, span, std::move(name), 0, std::move(children)};
    }

    static bool starts_binder(Tok k) { return k == Tok::Forall || k == Tok::Fun || k == Tok::Exists; }

    // expr := binder | iff
    SourceTerm expr() {
        if (starts_binder(peek().kind)) return binder();
        return iff_level();
    }

    SourceTerm binder() {
        Token head = take();
        Token name = expect(Tok::Ident);
        expect(Tok::Colon);
        SourceTerm dom = expr();
        expect(head.kind == Tok::Fun ? Tok::FatArrow : Tok::Comma);
        SourceTerm body = expr();
        SourceTerm::Kind kind = head.kind == Tok::Fun      ? SourceTerm::Kind::Lam
                                : head.kind == Tok::Forall ? SourceTerm::Kind::Pi
                                                           : SourceTerm::Kind::Exists;
        Span span = join(head.span, body.span);
        return node(kind, span, {std::move(dom), std::move(body)}, name.text);
    }

    SourceTerm iff_level() {
        SourceTerm lhs = arrow_level();
        if (!at(Tok::Iff)) return lhs;
        take();
        SourceTerm rhs = starts_binder(peek().kind) ? binder() : iff_level();
        Span span = join(lhs.span, rhs.span);
        return node(SourceTerm::Kind::Iff, span, {std::move(lhs), std::move(rhs)});
    }

    SourceTerm arrow_level() {
        SourceTerm lhs = or_level();
        if (!at(Tok::Arrow)) return lhs;
        take();
        SourceTerm rhs = starts_binder(peek().kind) ? binder() : arrow_level();
        Span span = join(lhs.span, rhs.span);
        return node(SourceTerm::Kind::Arrow, span, {std::move(lhs), std::move(rhs)});
    }

    SourceTerm or_level() {
        SourceTerm lhs = and_level();
        if (!at(Tok::Or)) return lhs;
        take();
        SourceTerm rhs = starts_binder(peek().kind) ? binder() : or_level();
        Span span = join(lhs.span, rhs.span);
        return node(SourceTerm::Kind::Or, span, {std::move(lhs), std::move(rhs)});
    }

    SourceTerm and_level() {
        SourceTerm lhs = unary();
        if (!at(Tok::And)) return lhs;
        take();
        SourceTerm rhs = starts_binder(peek().kind) ? binder() : and_level();
        Span span = join(lhs.span, rhs.span);
        return node(SourceTerm::Kind::And, span, {std::move(lhs), std::move(rhs)});
    }

    SourceTerm unary() {
        if (starts_binder(peek().kind)) return binder();
        if (at(Tok::Not)) {
            Token t = take();
            SourceTerm operand = unary();
            Span span = join(t.span, operand.span);
            return node(SourceTerm::Kind::Not, span, {std::move(operand)});
        }
        return eq_level();
    }

    SourceTerm eq_level() {
        SourceTerm lhs = application();
        if (!at(Tok::Eq)) return lhs;
        take();
        SourceTerm rhs = application();
        expect(Tok::EqType);
        SourceTerm type = application();
        Span span = join(lhs.span, type.span);
        return node(SourceTerm::Kind::Eq, span, {std::move(lhs), std::move(rhs), std::move(type)});
    }

    static bool starts_atom(Tok k) {
        return k == Tok::Ident || k == Tok::TypeN || k == Tok::Prop || k == Tok::False || k == Tok::LParen;
    }

    SourceTerm application() {
        SourceTerm head = atom();
        while (starts_atom(peek().kind)) {
            SourceTerm arg = atom();
            Span span = join(head.span, arg.span);
            head = node(SourceTerm::Kind::App, span, {std::move(head), std::move(arg)});
        }
        return head;
    }

    SourceTerm atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: {
            Token id = take();
            return node(SourceTerm::Kind::Var, id.span, {}, id.text);
        }
        case Tok::Prop: return node(SourceTerm::Kind::Prop, take().span);
        case Tok::False: return node(SourceTerm::Kind::False, take().span);
        case Tok::TypeN: {
            Token ty = take();
            SourceTerm n = node(SourceTerm::Kind::Type, ty.span);
            n.level = ty.level;
            return n;
        }
        case Tok::LParen: {
            Token open = take();
            SourceTerm inner = expr();
            Token close = expect(Tok::RParen);
            inner.span = join(open.span, close.span);
            return inner;
        }
        default:
            fail({"identifier", "'Prop'", "TypeN", "'False'", "'('", "'forall'", "'fun'", "'exists'", "'~'"});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

class Lowering {
public:
    LoweredTerm run(const SourceTerm& s) {
        Term t = go(s);
        return LoweredTerm{std::move(t), std::move(spans_)};
    }

private:
    Term tag(Term t, const Span& span) {
        spans_.emplace(t.node(), span);
        return t;
    }

    Term go(const SourceTerm& s) {
        using K = SourceTerm::Kind;
        const auto& c = s.children;
        switch (s.kind) {
        case K::Var: return tag(Term::var(s.name), s.span);
        case K::Prop: return tag(Term::prop(), s.span);
        case K::Type: return tag(Term::type(s.level), s.span);
        case K::App: return tag(Term::app(go(c[0]), go(c[1])), s.span);
        case K::Lam: return tag(Term::lam(s.name, go(c[0]), go(c[1])), s.span);
        case K::Pi: return tag(Term::pi(s.name, go(c[0]), go(c[1])), s.span);
        case K::False: return tag(expand_sugar("bottom", {}), s.span);
        case K::Arrow: return tag(expand_sugar("arrow", {go(c[0]), go(c[1])}), s.span);
        case K::Not: return tag(expand_sugar("neg", {go(c[0])}), s.span);
        case K::And: return tag(expand_sugar("and", {go(c[0]), go(c[1])}), s.span);
        case K::Or: return tag(expand_sugar("or", {go(c[0]), go(c[1])}), s.span);
        case K::Iff: return tag(expand_sugar("iff", {go(c[0]), go(c[1])}), s.span);
        case K::Exists: return tag(expand_sugar("exists", {Term::var(s.name), go(c[0]), go(c[1])}), s.span);
        case K::Eq: return tag(expand_sugar("eq", {go(c[2]), go(c[0]), go(c[1])}), s.span);
        }
        return Term::prop();
    }

    std::unordered_map<const TermNode*, Span> spans_;
};

// Printing precedences: binder forms 0, arrows 1, application 2, atoms 3.
void print(std::ostream& os, const Term& t, int need) {
    auto paren = [&](int have, auto&& body) {
        if (have < need) os << '(';
        body();
        if (have < need) os << ')';
    };
    switch (t.kind()) {
    case Term::Kind::Var: os << t.name(); return;
    case Term::Kind::Prop: os << "Prop"; return;
    case Term::Kind::Type: os << "Type" << t.level(); return;
    case Term::Kind::App:
        paren(2, [&] {
            print(os, t.fun(), 2);
            os << ' ';
            print(os, t.arg(), 3);
        });
        return;
    case Term::Kind::Lam:
        paren(0, [&] {
            os << "fun " << t.name() << " : ";
            print(os, t.domain(), 1);
            os << " => ";
            print(os, t.body(), 0);
        });
        return;
    case Term::Kind::Pi:
        if (!occurs_free(t.body(), t.name())) {
            paren(1, [&] {
                print(os, t.domain(), 2);
                os << " -> ";
                print(os, t.body(), 0);
            });
        } else {
            paren(0, [&] {
                os << "forall " << t.name() << " : ";
                print(os, t.domain(), 1);
                os << ", ";
                print(os, t.body(), 0);
            });
        }
        return;
    }
}

}  // namespace

SourceTerm parse_source(std::string_view text) { return Parser(text).parse_whole(); }

LoweredTerm lower(const SourceTerm& source) { return Lowering().run(source); }

Term parse_term(std::string_view text) { return lower(parse_source(text)).term; }

Context parse_context(std::string_view text) {
    Context ctx;
    for (auto& [name, type] : Parser(text).parse_entries()) {
        if (ctx.contains(name.text))
            throw ParseError(ParseError::Kind::DuplicateName, name.span,
                             "duplicate context name '" + name.text + "'");
        ctx.push(name.text, lower(type).term);
    }
    return ctx;
}

std::string pretty(const Term& t) {
    std::ostringstream os;
    print(os, t, 0);
    return os.str();
}

}  // namespace hecc
