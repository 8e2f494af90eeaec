#include "idlbridge/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace idlb {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 10> keywords{{
    {"package", TokenKind::kw_package},
    {"class", TokenKind::kw_class},
    {"interface", TokenKind::kw_interface},
    {"extends", TokenKind::kw_extends},
    {"implements", TokenKind::kw_implements},
    {"int", TokenKind::kw_int},
    {"double", TokenKind::kw_double},
    {"boolean", TokenKind::kw_boolean},
    {"string", TokenKind::kw_string},
    {"void", TokenKind::kw_void},
}};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

std::string_view describe(TokenKind kind) {
    switch (kind) {
    case TokenKind::identifier:
        return "identifier";
    case TokenKind::kw_package:
        return "'package'";
    case TokenKind::kw_class:
        return "'class'";
    case TokenKind::kw_interface:
        return "'interface'";
    case TokenKind::kw_extends:
        return "'extends'";
    case TokenKind::kw_implements:
        return "'implements'";
    case TokenKind::kw_int:
        return "'int'";
    case TokenKind::kw_double:
        return "'double'";
    case TokenKind::kw_boolean:
        return "'boolean'";
    case TokenKind::kw_string:
        return "'string'";
    case TokenKind::kw_void:
        return "'void'";
    case TokenKind::init:
        return "'<init>'";
    case TokenKind::l_bracket:
        return "'['";
    case TokenKind::r_bracket:
        return "']'";
    case TokenKind::l_brace:
        return "'{'";
    case TokenKind::r_brace:
        return "'}'";
    case TokenKind::l_paren:
        return "'('";
    case TokenKind::r_paren:
        return "')'";
    case TokenKind::semicolon:
        return "';'";
    case TokenKind::comma:
        return "','";
    case TokenKind::invalid:
        return "invalid character";
    case TokenKind::end:
        return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t i = 0; i < n && pos < source.size(); ++i, ++pos) {
            if (source[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto push = [&](TokenKind kind, std::size_t length) {
        tokens.push_back({kind, std::string(source.substr(pos, length)), {line, column, length}});
        advance(length);
    };

    while (pos < source.size()) {
        const char c = source[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (source.substr(pos, 2) == "//") {
            while (pos < source.size() && source[pos] != '\n') {
                advance(1);
            }
            continue;
        }
        if (source.substr(pos, 6) == "<init>") {
            push(TokenKind::init, 6);
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t end = pos + 1;
            while (end < source.size() && is_ident_char(source[end])) {
                ++end;
            }
            const auto word = source.substr(pos, end - pos);
            TokenKind kind = TokenKind::identifier;
            for (const auto& [spelling, kw] : keywords) {
                if (word == spelling) {
                    kind = kw;
                }
            }
            push(kind, word.size());
            continue;
        }
        switch (c) {
        case '[':
            push(TokenKind::l_bracket, 1);
            break;
        case ']':
            push(TokenKind::r_bracket, 1);
            break;
        case '{':
            push(TokenKind::l_brace, 1);
            break;
        case '}':
            push(TokenKind::r_brace, 1);
            break;
        case '(':
            push(TokenKind::l_paren, 1);
            break;
        case ')':
            push(TokenKind::r_paren, 1);
            break;
        case ';':
            push(TokenKind::semicolon, 1);
            break;
        case ',':
            push(TokenKind::comma, 1);
            break;
        default:
            push(TokenKind::invalid, 1);
            break;
        }
    }

    // The end token sits just past the last character so its span stays
    // within the input's line structure.
    tokens.push_back({TokenKind::end, {}, {line, column, 1}});
    return tokens;
}

} // namespace idlb
