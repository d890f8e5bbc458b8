#include "scarr/expr_parser.hpp"

#include "scarr/errors.hpp"

#include <cctype>

namespace scarr {

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok kind, std::string t, std::size_t c) {
        out.push_back(Token{kind, std::move(t), line, c});
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            ++col;
            continue;
        }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        std::size_t start_col = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push(Tok::Number, text.substr(i, j - i), start_col);
            col += j - i;
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            push(Tok::Ident, text.substr(i, j - i), start_col);
            col += j - i;
            i = j;
            continue;
        }
        if (ch == '=' && i + 1 < text.size() && text[i + 1] == '>') {
            push(Tok::Arrow, "=>", start_col);
            i += 2;
            col += 2;
            continue;
        }
        Tok kind;
        switch (ch) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case ',': kind = Tok::Comma; break;
            case ';': kind = Tok::Semicolon; break;
            case ':': kind = Tok::Colon; break;
            case '=': kind = Tok::Equals; break;
            default:
                throw SyntaxError(line, start_col, std::string("unexpected character '") + ch +
                                                       "'");
        }
        push(kind, std::string(1, ch), start_col);
        ++i;
        ++col;
    }
    out.push_back(Token{Tok::End, "", line, col});
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t idx = pos_ + ahead;
    if (idx >= tokens_.size()) idx = tokens_.size() - 1;
    return tokens_[idx];
}

const Token& TokenStream::next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

Token TokenStream::expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail("expected " + what);
    return next();
}

Token TokenStream::expect_keyword(const std::string& word) {
    if (!(peek().kind == Tok::Ident && peek().text == word)) fail("expected '" + word + "'");
    return next();
}

bool TokenStream::match(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
}

bool TokenStream::peek_keyword(const std::string& word, std::size_t ahead) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == word;
}

void TokenStream::fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, msg + ", got " + got);
}

namespace {

class ExpressionParser {
public:
    ExpressionParser(TokenStream& ts, const Chart& chart) : ts_(ts), chart_(chart) {}

    SuperFunction parse() { return expr(); }

private:
    SuperFunction expr() {
        SuperFunction value = term();
        while (ts_.peek().kind == Tok::Plus || ts_.peek().kind == Tok::Minus) {
            bool minus = ts_.next().kind == Tok::Minus;
            SuperFunction rhs = term();
            value = minus ? value - rhs : value + rhs;
        }
        return value;
    }

    bool stops_term() const {
        // Inside vector-field expressions a coefficient ends before 'd('.
        return ts_.peek().kind == Tok::Star && ts_.peek(1).kind == Tok::Ident &&
               ts_.peek(1).text == "d" && ts_.peek(2).kind == Tok::LParen;
    }

    SuperFunction term() {
        SuperFunction value = factor();
        while (ts_.peek().kind == Tok::Star || ts_.peek().kind == Tok::Slash) {
            if (stops_term()) break;
            bool divide = ts_.next().kind == Tok::Slash;
            SuperFunction rhs = factor();
            value = divide ? do_divide(value, rhs) : value * rhs;
        }
        return value;
    }

    SuperFunction factor() {
        SuperFunction value = atom();
        if (ts_.peek().kind == Tok::Caret) {
            ts_.next();
            bool negative = ts_.match(Tok::Minus);
            Token n = ts_.expect(Tok::Number, "integer exponent");
            int e = std::stoi(n.text);
            if (negative) e = -e;
            value = power(value, e);
        }
        return value;
    }

    SuperFunction atom() {
        const Token& t = ts_.peek();
        if (t.kind == Tok::Number) {
            ts_.next();
            return SuperFunction(chart_, ScalarExpr::from_rational(Rational(t.text)));
        }
        if (t.kind == Tok::Minus) {
            ts_.next();
            return -factor();
        }
        if (t.kind == Tok::LParen) {
            ts_.next();
            SuperFunction inner = expr();
            ts_.expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "D") return derivative();
            if (t.text == "d") ts_.fail("'d' is reserved for vector-field syntax");
            return symbol();
        }
        ts_.fail("expected expression");
    }

    SuperFunction derivative() {
        ts_.next(); // D
        ts_.expect(Tok::LParen, "'('");
        SuperFunction inner = expr();
        ts_.expect(Tok::Comma, "','");
        Token c = ts_.expect(Tok::Ident, "coordinate name");
        ts_.expect(Tok::RParen, "')'");
        auto idx = chart_.coordinate_index(c.text);
        if (!idx) throw UnknownSymbol(c.text);
        if (chart_.coordinate_parity(*idx) == Parity::Even) return diff_even(inner, c.text);
        return odd_partial(inner, c.text);
    }

    SuperFunction symbol() {
        Token t = ts_.next();
        if (auto idx = chart_.coordinate_index(t.text))
            return SuperFunction::coordinate(chart_, *idx);
        const FunctionSymbol* f = chart_.scope().find_function(t.text);
        if (f == nullptr) throw UnknownSymbol(t.text);
        if (ts_.peek().kind == Tok::LParen) {
            // Optional argument list. A parenthesized identifier list is
            // consumed as one only when it matches the declared
            // dependencies and is not the head of a following block entry
            // (lookahead for '='); otherwise the symbol stands bare.
            std::size_t mark = ts_.position();
            ts_.next();
            std::vector<std::string> args;
            bool shape_ok = true;
            if (ts_.peek().kind != Tok::RParen) {
                while (true) {
                    if (ts_.peek().kind != Tok::Ident) {
                        shape_ok = false;
                        break;
                    }
                    args.push_back(ts_.next().text);
                    if (ts_.match(Tok::Comma)) continue;
                    break;
                }
            }
            shape_ok = shape_ok && ts_.match(Tok::RParen);
            if (!shape_ok || args != f->depends_on || ts_.peek().kind == Tok::Equals)
                ts_.rewind(mark);
        }
        return SuperFunction(chart_, ScalarExpr::from_symbol(t.text));
    }

    SuperFunction do_divide(const SuperFunction& a, const SuperFunction& b) {
        ScalarExpr divisor = scalar_divisor(b);
        return a * (checked_div(chart_.scope(), ScalarExpr::one(), divisor));
    }

    SuperFunction power(const SuperFunction& base, int e) {
        if (e == 0) return SuperFunction::constant(chart_, 1);
        if (e > 0) {
            SuperFunction out = base;
            for (int i = 1; i < e; ++i) out = out * base;
            return out;
        }
        ScalarExpr divisor = scalar_divisor(base);
        ScalarExpr inv = checked_div(chart_.scope(), ScalarExpr::one(), divisor);
        SuperFunction out = SuperFunction::constant(chart_, 1);
        for (int i = 0; i < -e; ++i) out = out * SuperFunction(chart_, inv);
        return out;
    }

    ScalarExpr scalar_divisor(const SuperFunction& b) {
        for (const auto& [mask, coeff] : b.terms())
            if (mask != 0)
                throw DivisionByNonDeclared("divisor contains odd coordinates: " + b.str());
        return reduce_eps(b);
    }

    TokenStream& ts_;
    const Chart& chart_;
};

} // namespace

SuperFunction parse_expression(TokenStream& ts, const Chart& chart) {
    return ExpressionParser(ts, chart).parse();
}

SuperFunction parse_expression_text(const std::string& text, const Chart& chart) {
    TokenStream ts(tokenize(text));
    SuperFunction out = parse_expression(ts, chart);
    if (!ts.at_end()) ts.fail("trailing input after expression");
    return out;
}

ScalarExpr parse_scalar_text(const std::string& text, const Chart& chart) {
    SuperFunction f = parse_expression_text(text, chart);
    for (const auto& [mask, coeff] : f.terms())
        if (mask != 0) throw OddCoordinate("expression has an odd part: " + f.str());
    return reduce_eps(f);
}

VectorField parse_vector_field(TokenStream& ts, const Chart& chart) {
    VectorField out(chart);
    bool first = true;
    while (true) {
        int sign = 1;
        if (first) {
            if (ts.match(Tok::Minus)) sign = -1;
        } else if (ts.peek().kind == Tok::Plus || ts.peek().kind == Tok::Minus) {
            sign = ts.next().kind == Tok::Minus ? -1 : 1;
        } else {
            break;
        }
        SuperFunction coeff = SuperFunction::constant(chart, 1);
        bool is_d = ts.peek().kind == Tok::Ident && ts.peek().text == "d" &&
                    ts.peek(1).kind == Tok::LParen;
        if (!is_d) {
            coeff = parse_expression(ts, chart);
            ts.expect(Tok::Star, "'*' before d(...)");
        }
        ts.expect_keyword("d");
        ts.expect(Tok::LParen, "'('");
        Token c = ts.expect(Tok::Ident, "coordinate name");
        ts.expect(Tok::RParen, "')'");
        auto idx = chart.coordinate_index(c.text);
        if (!idx) throw UnknownSymbol(c.text);
        if (sign < 0) coeff = -coeff;
        out.set_component(*idx, out.component(*idx) + coeff);
        first = false;
    }
    if (first) ts.fail("expected vector field expression");
    return out;
}

VectorField parse_vector_field_text(const std::string& text, const Chart& chart) {
    TokenStream ts(tokenize(text));
    VectorField out = parse_vector_field(ts, chart);
    if (!ts.at_end()) ts.fail("trailing input after vector field");
    return out;
}

} // namespace scarr
