#ifndef SCARR_EXPR_PARSER_HPP
#define SCARR_EXPR_PARSER_HPP

#include "scarr/fields.hpp"

#include <string>
#include <vector>

namespace scarr {

enum class Tok {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Colon,
    Equals,
    Arrow, // =>
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

// '#' starts a comment running to end of line.
std::vector<Token> tokenize(const std::string& text);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_end() const { return peek().kind == Tok::End; }

    Token expect(Tok kind, const std::string& what);
    Token expect_keyword(const std::string& word);
    bool match(Tok kind);
    bool peek_keyword(const std::string& word, std::size_t ahead = 0) const;

    std::size_t position() const { return pos_; }
    void rewind(std::size_t pos) { pos_ = pos; }

    [[noreturn]] void fail(const std::string& msg) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// Shared expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' integer)?
//   atom   := rational | identifier | identifier '(' id-list ')'
//           | 'D(' expr ',' identifier ')' | '(' expr ')' | '-' factor
// Odd coordinates are legal identifiers; 'd' and 'D' are reserved. In a
// vector-field context the parser stops before '* d('.
SuperFunction parse_expression(TokenStream& ts, const Chart& chart);

SuperFunction parse_expression_text(const std::string& text, const Chart& chart);

// Expression restricted to the scalar ring: no odd part allowed.
ScalarExpr parse_scalar_text(const std::string& text, const Chart& chart);

// vfexpr := [expr '*'] 'd(' id ')' ({'+'|'-'} [expr '*'] 'd(' id ')')*
VectorField parse_vector_field(TokenStream& ts, const Chart& chart);
VectorField parse_vector_field_text(const std::string& text, const Chart& chart);

} // namespace scarr

#endif
