#include "cqp/lang/parse.hpp"

#include <cctype>
#include <set>

namespace cqp::lang {

namespace {

enum class Tok {
    Name, Int,
    LParen, RParen, LBrack, RBrack, LBrace, RBrace,
    Bang, Question, Dot, Comma, Colon, Equals, Bar, Caret, Plus, Minus,
    StarEq, End,
};

struct Token {
    Tok kind;
    std::string text;
    long value = 0;
    SourceLoc loc;
};

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Name: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Bar: return "'|'";
    case Tok::Caret: return "'^'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::StarEq: return "'*='";
    case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        SourceLoc loc{line_, col_};
        if (pos_ >= src_.size()) return {Tok::End, "", 0, loc};
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_'))
                name += take();
            return {Tok::Name, name, 0, loc};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_])))
                digits += take();
            if (digits.size() > 18)
                throw ParseError(loc, "integer literal too large");
            return {Tok::Int, digits, std::stol(digits), loc};
        }
        take();
        switch (c) {
        case '(': return {Tok::LParen, "(", 0, loc};
        case ')': return {Tok::RParen, ")", 0, loc};
        case '[': return {Tok::LBrack, "[", 0, loc};
        case ']': return {Tok::RBrack, "]", 0, loc};
        case '{': return {Tok::LBrace, "{", 0, loc};
        case '}': return {Tok::RBrace, "}", 0, loc};
        case '!': return {Tok::Bang, "!", 0, loc};
        case '?': return {Tok::Question, "?", 0, loc};
        case '.': return {Tok::Dot, ".", 0, loc};
        case ',': return {Tok::Comma, ",", 0, loc};
        case ':': return {Tok::Colon, ":", 0, loc};
        case '=': return {Tok::Equals, "=", 0, loc};
        case '|': return {Tok::Bar, "|", 0, loc};
        case '^': return {Tok::Caret, "^", 0, loc};
        case '+': return {Tok::Plus, "+", 0, loc};
        case '-': return {Tok::Minus, "-", 0, loc};
        case '*':
            if (pos_ < src_.size() && src_[pos_] == '=') {
                take();
                return {Tok::StarEq, "*=", 0, loc};
            }
            throw ParseError(loc, "expected '*=' after '*'");
        }
        throw ParseError(loc, std::string("unexpected character '") + c + "'");
    }

private:
    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) { advance(); }

    Program parse_program() {
        Program prog;
        bool have_main = false;
        std::set<std::string> names;
        while (cur_.kind != Tok::End) {
            if (cur_.kind != Tok::Name)
                throw ParseError(cur_.loc, std::string("expected a definition, found ") +
                                               tok_name(cur_.kind));
            if (cur_.text == "main") {
                if (have_main) throw ParseError(cur_.loc, "duplicate main declaration");
                have_main = true;
                prog.explicit_main = true;
                advance();
                expect(Tok::Equals);
                Token entry = expect(Tok::Name);
                prog.entry = entry.text;
                expect(Tok::LParen);
                prog.entry_args = cur_.kind == Tok::RParen ? std::vector<ExprPtr>{}
                                                           : parse_expr_list();
                expect(Tok::RParen);
                continue;
            }
            Definition def = parse_definition();
            if (!names.insert(def.name).second)
                throw ParseError(def.loc, "duplicate definition of '" + def.name + "'");
            prog.definitions.push_back(std::move(def));
        }
        if (prog.definitions.empty())
            throw ParseError(cur_.loc, "no process definitions");
        if (!have_main) {
            // default entry: the first definition, applied to its own
            // parameter names as free external channels
            const Definition& first = prog.definitions.front();
            prog.entry = first.name;
            for (const auto& p : first.params)
                prog.entry_args.push_back(Expr::var(p.name, p.loc));
        } else if (!prog.find(prog.entry)) {
            throw ParseError(cur_.loc, "main refers to undefined process '" +
                                           prog.entry + "'");
        }
        return prog;
    }

private:
    void advance() { cur_ = lex_.next(); }

    Token expect(Tok kind) {
        if (cur_.kind != kind)
            throw ParseError(cur_.loc, std::string("expected ") + tok_name(kind) +
                                           ", found " + tok_name(cur_.kind));
        Token t = cur_;
        advance();
        return t;
    }

    bool accept(Tok kind) {
        if (cur_.kind != kind) return false;
        advance();
        return true;
    }

    Definition parse_definition() {
        Definition def;
        Token name = expect(Tok::Name);
        def.name = name.text;
        def.loc = name.loc;
        expect(Tok::LParen);
        if (cur_.kind != Tok::RParen) def.params = parse_params();
        expect(Tok::RParen);
        expect(Tok::Equals);
        def.body = parse_parallel();
        return def;
    }

    std::vector<Param> parse_params() {
        std::vector<Param> params;
        do {
            Token name = expect(Tok::Name);
            expect(Tok::Colon);
            params.push_back({name.text, parse_type(), name.loc});
        } while (accept(Tok::Comma));
        return params;
    }

    TypeExpr parse_type() {
        if (cur_.kind == Tok::Caret) {
            advance();
            expect(Tok::LBrack);
            std::vector<TypeExpr> payload;
            do {
                payload.push_back(parse_type());
            } while (accept(Tok::Comma));
            expect(Tok::RBrack);
            return TypeExpr::chan(std::move(payload));
        }
        Token name = expect(Tok::Name);
        if (name.text == "Qdit") return TypeExpr::qdit();
        if (name.text == "Val") return TypeExpr::val();
        throw ParseError(name.loc, "unknown type '" + name.text +
                                       "' (expected Qdit, Val or ^[...])");
    }

    TermPtr parse_parallel() {
        TermPtr left = parse_seq();
        if (cur_.kind == Tok::Bar) {
            SourceLoc loc = cur_.loc;
            advance();
            return ProcessTerm::parallel(left, parse_parallel(), loc);
        }
        return left;
    }

    TermPtr parse_seq() {
        SourceLoc loc = cur_.loc;
        switch (cur_.kind) {
        case Tok::Int: {
            if (cur_.value != 0)
                throw ParseError(loc, "expected a process ('0' is the only literal)");
            advance();
            return ProcessTerm::nil(loc);
        }
        case Tok::Name: {
            Token name = cur_;
            advance();
            if (cur_.kind == Tok::Question) {
                advance();
                expect(Tok::LBrack);
                std::vector<Param> params = parse_params();
                expect(Tok::RBrack);
                expect(Tok::Dot);
                return ProcessTerm::input(name.text, std::move(params), parse_seq(),
                                          loc);
            }
            if (cur_.kind == Tok::Bang) {
                advance();
                expect(Tok::LBrack);
                std::vector<ExprPtr> args = parse_expr_list();
                expect(Tok::RBrack);
                expect(Tok::Dot);
                return ProcessTerm::output(name.text, std::move(args), parse_seq(),
                                           loc);
            }
            if (cur_.kind == Tok::LParen) {
                advance();
                std::vector<ExprPtr> args;
                if (cur_.kind != Tok::RParen) args = parse_expr_list();
                expect(Tok::RParen);
                return ProcessTerm::call(name.text, std::move(args), loc);
            }
            throw ParseError(cur_.loc,
                             "expected '?', '!' or '(' after '" + name.text + "'");
        }
        case Tok::LBrace: {
            advance();
            std::vector<std::string> targets = parse_name_list();
            expect(Tok::StarEq);
            GateRef gate = parse_gate();
            expect(Tok::RBrace);
            expect(Tok::Dot);
            return ProcessTerm::action(std::move(targets), std::move(gate),
                                       parse_seq(), loc);
        }
        case Tok::LParen: {
            advance();
            if (cur_.kind == Tok::Name && cur_.text == "qdit") {
                advance();
                std::vector<std::string> names = parse_name_list();
                expect(Tok::RParen);
                return ProcessTerm::qdit_alloc(std::move(names), parse_seq(), loc);
            }
            if (cur_.kind == Tok::Name && cur_.text == "new") {
                advance();
                Token name = expect(Tok::Name);
                expect(Tok::Colon);
                TypeExpr type = parse_type();
                expect(Tok::RParen);
                return ProcessTerm::new_chan(name.text, std::move(type), parse_seq(),
                                             loc);
            }
            TermPtr inner = parse_parallel();
            expect(Tok::RParen);
            return inner;
        }
        default:
            throw ParseError(loc, std::string("expected a process, found ") +
                                      tok_name(cur_.kind));
        }
    }

    GateRef parse_gate() {
        Token name = expect(Tok::Name);
        GateRef gate;
        if (name.text == "H") gate.kind = GateRef::Kind::Hadamard;
        else if (name.text == "Rc") gate.kind = GateRef::Kind::CnotRight;
        else if (name.text == "Lc") gate.kind = GateRef::Kind::CnotLeft;
        else if (name.text == "X") gate.kind = GateRef::Kind::ShiftX;
        else if (name.text == "Z") gate.kind = GateRef::Kind::PhaseZ;
        else
            throw ParseError(name.loc, "unknown gate '" + name.text +
                                           "' (expected H, X, Z, Rc or Lc)");
        if (cur_.kind == Tok::Caret) {
            if (gate.kind != GateRef::Kind::ShiftX && gate.kind != GateRef::Kind::PhaseZ)
                throw ParseError(cur_.loc,
                                 "gate '" + name.text + "' takes no exponent");
            advance();
            gate.negated = accept(Tok::Minus);
            gate.exponent = parse_exponent_atom();
        } else if (gate.kind == GateRef::Kind::ShiftX ||
                   gate.kind == GateRef::Kind::PhaseZ) {
            gate.exponent = Expr::literal(1, name.loc);
        }
        return gate;
    }

    ExprPtr parse_exponent_atom() {
        SourceLoc loc = cur_.loc;
        if (cur_.kind == Tok::Int) {
            long v = cur_.value;
            advance();
            return Expr::literal(v, loc);
        }
        if (cur_.kind == Tok::Name) {
            std::string n = cur_.text;
            advance();
            return Expr::var(std::move(n), loc);
        }
        if (cur_.kind == Tok::LParen) {
            advance();
            ExprPtr e = parse_expr();
            expect(Tok::RParen);
            return e;
        }
        throw ParseError(loc, std::string("expected a gate exponent, found ") +
                                  tok_name(cur_.kind));
    }

    std::vector<std::string> parse_name_list() {
        std::vector<std::string> names;
        do {
            names.push_back(expect(Tok::Name).text);
        } while (accept(Tok::Comma));
        return names;
    }

    std::vector<ExprPtr> parse_expr_list() {
        std::vector<ExprPtr> exprs;
        do {
            exprs.push_back(parse_expr());
        } while (accept(Tok::Comma));
        return exprs;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_atom();
        while (cur_.kind == Tok::Plus) {
            SourceLoc loc = cur_.loc;
            advance();
            lhs = Expr::plus(std::move(lhs), parse_atom(), loc);
        }
        return lhs;
    }

    ExprPtr parse_atom() {
        SourceLoc loc = cur_.loc;
        switch (cur_.kind) {
        case Tok::Int: {
            long v = cur_.value;
            advance();
            return Expr::literal(v, loc);
        }
        case Tok::Name: {
            if (cur_.text == "measure") {
                advance();
                std::vector<std::string> targets;
                if (accept(Tok::LParen)) {
                    targets = parse_name_list();
                    expect(Tok::RParen);
                } else {
                    targets.push_back(expect(Tok::Name).text);
                }
                return Expr::measure(std::move(targets), loc);
            }
            std::string n = cur_.text;
            advance();
            return Expr::var(std::move(n), loc);
        }
        case Tok::LParen: {
            advance();
            ExprPtr e = parse_expr();
            expect(Tok::RParen);
            return e;
        }
        default:
            throw ParseError(loc, std::string("expected an expression, found ") +
                                      tok_name(cur_.kind));
        }
    }

    Lexer lex_;
    Token cur_;
};

} // namespace

Program parse(const std::string& source) {
    Parser parser(source);
    return parser.parse_program();
}

} // namespace cqp::lang
