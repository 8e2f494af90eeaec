#pragma once

#include "idlbridge/source_span.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace idlb {

enum class TokenKind {
    identifier,
    kw_package,
    kw_class,
    kw_interface,
    kw_extends,
    kw_implements,
    kw_int,
    kw_double,
    kw_boolean,
    kw_string,
    kw_void,
    init,       // the literal `<init>`
    l_bracket,
    r_bracket,
    l_brace,
    r_brace,
    l_paren,
    r_paren,
    semicolon,
    comma,
    invalid,    // unrecognized character
    end,
};

std::string_view describe(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    SourceSpan span;
};

/// Splits IDL text into tokens. `//` comments and whitespace are dropped.
/// The sequence always ends with exactly one `end` token; unrecognized
/// characters become `invalid` tokens for the parser to report.
std::vector<Token> tokenize(std::string_view source);

} // namespace idlb
