#include "idlbridge/parser.hpp"

#include "idlbridge/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace idlb {

namespace {

// Primitive spellings of neighbouring languages that the IDL does not
// support. They are rejected rather than silently read as class names.
constexpr std::array<std::string_view, 13> foreign_primitives{
    "bool", "float", "long", "short", "byte", "sbyte", "char",
    "uint", "ulong", "ushort", "decimal", "object", "String",
};

struct ParseFailure {
    SyntaxDiagnostic diag;
};

class Parser {
public:
    explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

    ParseResult run() {
        IdlFile file;
        try {
            parse_package(file);
        } catch (const ParseFailure& failure) {
            diagnostics_.push_back(failure.diag);
            return finish(std::move(file));
        }
        while (!at(TokenKind::end)) {
            try {
                if (auto decl = parse_declaration()) {
                    file.declarations.push_back(std::move(*decl));
                }
            } catch (const ParseFailure& failure) {
                diagnostics_.push_back(failure.diag);
                sync_to_declaration();
            }
        }
        return finish(std::move(file));
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<SyntaxDiagnostic> diagnostics_;

    ParseResult finish(IdlFile file) {
        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        if (result.diagnostics.empty()) {
            result.file = std::move(file);
        }
        return result;
    }

    const Token& peek() const { return tokens_[pos_]; }
    bool at(TokenKind kind) const { return peek().kind == kind; }

    const Token& advance() {
        const Token& tok = tokens_[pos_];
        if (tok.kind != TokenKind::end) {
            ++pos_;
        }
        return tok;
    }

    bool accept(TokenKind kind) {
        if (at(kind)) {
            advance();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const SourceSpan& span, std::string message) const {
        throw ParseFailure{{span, std::move(message)}};
    }

    [[noreturn]] void fail_here(std::string message) const {
        if (at(TokenKind::invalid)) {
            fail(peek().span, "unexpected character '" + peek().text + "'");
        }
        fail(peek().span, std::move(message));
    }

    const Token& expect(TokenKind kind, std::string_view context) {
        if (!at(kind)) {
            fail_here("expected " + std::string(describe(kind)) + " " + std::string(context) +
                      ", found " + found());
        }
        return advance();
    }

    std::string found() const {
        if (at(TokenKind::end)) {
            return "end of input";
        }
        return "'" + peek().text + "'";
    }

    std::string expect_identifier(std::string_view context) {
        if (at(TokenKind::identifier)) {
            return advance().text;
        }
        if (!at(TokenKind::end) && !at(TokenKind::invalid) && !peek().text.empty() &&
            std::isalpha(static_cast<unsigned char>(peek().text.front()))) {
            fail_here("'" + peek().text + "' is a reserved keyword and cannot be used as " +
                      std::string(context));
        }
        fail_here("expected " + std::string(context) + ", found " + found());
    }

    void parse_package(IdlFile& file) {
        if (!at(TokenKind::kw_package)) {
            fail_here("expected 'package' declaration at start of file, found " + found());
        }
        advance();
        for (auto& attr : parse_attributes()) {
            if (attr.key != AttributeKey::assembly) {
                fail(attr.span, "attribute '" + std::string(to_string(attr.key)) +
                                    "' is not allowed on a package");
            }
            file.package_attributes.push_back(std::move(attr));
        }
        file.package = expect_identifier("package name");
        expect(TokenKind::semicolon, "after package declaration");
    }

    std::vector<Attribute> parse_attributes() {
        std::vector<Attribute> attrs;
        while (at(TokenKind::l_bracket)) {
            const Token& open = advance();
            if (!at(TokenKind::identifier)) {
                fail_here("expected attribute key, found " + found());
            }
            const Token& key_tok = advance();
            Attribute attr;
            attr.span = open.span;
            if (key_tok.text == "name") {
                attr.key = AttributeKey::name;
            } else if (key_tok.text == "callback") {
                attr.key = AttributeKey::callback;
            } else if (key_tok.text == "assembly") {
                attr.key = AttributeKey::assembly;
            } else {
                fail(key_tok.span, "unknown attribute key '" + key_tok.text + "'");
            }
            if (at(TokenKind::identifier)) {
                attr.value = advance().text;
            }
            const Token& close = expect(TokenKind::r_bracket, "to close attribute");
            attr.span.length = close.span.line == open.span.line
                                   ? close.span.column + 1 - open.span.column
                                   : 1;
            if (attr.key == AttributeKey::callback && attr.value) {
                fail(attr.span, "attribute 'callback' takes no value");
            }
            if (attr.key != AttributeKey::callback && !attr.value) {
                fail(attr.span, "attribute '" + std::string(to_string(attr.key)) +
                                    "' requires a value");
            }
            attrs.push_back(std::move(attr));
        }
        return attrs;
    }

    std::optional<Declaration> parse_declaration() {
        auto attrs = parse_attributes();
        if (at(TokenKind::kw_class)) {
            return parse_class(std::move(attrs));
        }
        if (at(TokenKind::kw_interface)) {
            if (!attrs.empty()) {
                fail(attrs.front().span, "attributes are not allowed on interfaces");
            }
            return parse_interface();
        }
        if (at(TokenKind::init)) {
            fail_here("'<init>' outside a class");
        }
        if (at(TokenKind::kw_package)) {
            fail_here("duplicate package declaration");
        }
        fail_here("expected 'class' or 'interface', found " + found());
    }

    ClassDecl parse_class(std::vector<Attribute> attrs) {
        ClassDecl decl;
        advance(); // class
        for (const auto& attr : attrs) {
            if (attr.key != AttributeKey::callback) {
                fail(attr.span, "attribute '" + std::string(to_string(attr.key)) +
                                    "' is not allowed on a class");
            }
            if (decl.callback) {
                fail(attr.span, "duplicate attribute 'callback'");
            }
            decl.callback = true;
        }
        decl.attributes = std::move(attrs);
        decl.span = peek().span;
        decl.name = expect_identifier("class name");
        if (accept(TokenKind::kw_extends)) {
            decl.extends = expect_identifier("superclass name");
            if (at(TokenKind::comma)) {
                fail_here("a class extends at most one class");
            }
        }
        if (accept(TokenKind::kw_implements)) {
            do {
                const SourceSpan span = peek().span;
                auto name = expect_identifier("interface name");
                if (std::find(decl.implements.begin(), decl.implements.end(), name) !=
                    decl.implements.end()) {
                    fail(span, "duplicate interface '" + name + "' in implements list");
                }
                decl.implements.push_back(std::move(name));
            } while (accept(TokenKind::comma));
        }
        const Token& open = expect(TokenKind::l_brace, "to open class body");
        parse_body(open, "class '" + decl.name + "'", [&] { parse_class_member(decl); });
        return decl;
    }

    InterfaceDecl parse_interface() {
        InterfaceDecl decl;
        advance(); // interface
        decl.span = peek().span;
        decl.name = expect_identifier("interface name");
        if (at(TokenKind::kw_extends)) {
            fail_here("interfaces cannot extend other interfaces");
        }
        const Token& open = expect(TokenKind::l_brace, "to open interface body");
        parse_body(open, "interface '" + decl.name + "'", [&] { parse_interface_member(decl); });
        return decl;
    }

    template <typename MemberFn>
    void parse_body(const Token& open, const std::string& owner, MemberFn&& member) {
        const SourceSpan open_span = open.span;
        while (!at(TokenKind::r_brace)) {
            if (at(TokenKind::end)) {
                fail(open_span, "unterminated block: missing '}' for " + owner);
            }
            try {
                member();
            } catch (const ParseFailure& failure) {
                diagnostics_.push_back(failure.diag);
                sync_to_member();
            }
        }
        advance(); // }
    }

    void parse_class_member(ClassDecl& decl) {
        auto attrs = parse_attributes();
        if (at(TokenKind::init)) {
            decl.ctors.push_back(parse_ctor(std::move(attrs)));
            return;
        }
        const SourceSpan start = peek().span;
        TypeRef type = parse_type();
        const SourceSpan name_span = peek().span;
        std::string name = expect_identifier("member name");
        if (at(TokenKind::l_paren)) {
            decl.methods.push_back(
                finish_method(std::move(attrs), std::move(type), std::move(name), name_span));
            return;
        }
        if (!attrs.empty()) {
            fail(attrs.front().span, "attributes are not allowed on fields");
        }
        if (type.is_void()) {
            fail(start, "field '" + name + "' cannot have type void");
        }
        expect_terminator("field '" + name + "'");
        decl.fields.push_back({std::move(type), std::move(name), name_span});
    }

    void parse_interface_member(InterfaceDecl& decl) {
        auto attrs = parse_attributes();
        if (at(TokenKind::init)) {
            fail_here("'<init>' outside a class");
        }
        TypeRef type = parse_type();
        const SourceSpan name_span = peek().span;
        std::string name = expect_identifier("method name");
        if (!at(TokenKind::l_paren)) {
            fail(name_span, "interfaces cannot declare fields");
        }
        decl.methods.push_back(
            finish_method(std::move(attrs), std::move(type), std::move(name), name_span));
    }

    CtorSig parse_ctor(std::vector<Attribute> attrs) {
        CtorSig ctor;
        ctor.span = advance().span; // <init>
        int aliases = 0;
        for (const auto& attr : attrs) {
            if (attr.key != AttributeKey::name) {
                fail(attr.span, "attribute '" + std::string(to_string(attr.key)) +
                                    "' is not allowed on a constructor");
            }
            ++aliases;
        }
        if (aliases == 0) {
            fail(ctor.span, "constructor missing required `name` alias attribute");
        }
        if (aliases > 1) {
            fail(ctor.span, "constructor has more than one `name` attribute");
        }
        ctor.attributes = std::move(attrs);
        ctor.params = parse_params();
        expect_terminator("constructor");
        return ctor;
    }

    MethodSig finish_method(std::vector<Attribute> attrs, TypeRef ret, std::string name,
                            SourceSpan span) {
        MethodSig method;
        method.alias = name;
        bool aliased = false;
        for (const auto& attr : attrs) {
            if (attr.key != AttributeKey::name) {
                fail(attr.span, "attribute '" + std::string(to_string(attr.key)) +
                                    "' is not allowed on a method");
            }
            if (aliased) {
                fail(attr.span, "method has more than one `name` attribute");
            }
            aliased = true;
            method.alias = *attr.value;
        }
        method.attributes = std::move(attrs);
        method.return_type = std::move(ret);
        method.name = std::move(name);
        method.span = span;
        method.params = parse_params();
        expect_terminator("method '" + method.name + "'");
        return method;
    }

    std::vector<TypeRef> parse_params() {
        std::vector<TypeRef> params;
        expect(TokenKind::l_paren, "to open parameter list");
        if (accept(TokenKind::r_paren)) {
            return params;
        }
        do {
            const SourceSpan span = peek().span;
            TypeRef type = parse_type();
            if (type.is_void()) {
                fail(span, "parameter cannot have type void");
            }
            params.push_back(std::move(type));
        } while (accept(TokenKind::comma));
        expect(TokenKind::r_paren, "to close parameter list");
        return params;
    }

    TypeRef parse_type() {
        switch (peek().kind) {
        case TokenKind::kw_int:
            advance();
            return TypeRef::primitive(TypeKind::int_);
        case TokenKind::kw_double:
            advance();
            return TypeRef::primitive(TypeKind::double_);
        case TokenKind::kw_boolean:
            advance();
            return TypeRef::primitive(TypeKind::boolean);
        case TokenKind::kw_string:
            advance();
            return TypeRef::primitive(TypeKind::string);
        case TokenKind::kw_void:
            advance();
            return TypeRef::primitive(TypeKind::void_);
        case TokenKind::identifier: {
            const auto& text = peek().text;
            if (std::find(foreign_primitives.begin(), foreign_primitives.end(), text) !=
                foreign_primitives.end()) {
                fail_here("unknown primitive type '" + text + "'");
            }
            return TypeRef::named_type(advance().text);
        }
        default:
            fail_here("expected a type, found " + found());
        }
    }

    // A member ends in ';', which may be omitted right before '}'.
    void expect_terminator(const std::string& what) {
        if (accept(TokenKind::semicolon) || at(TokenKind::r_brace)) {
            return;
        }
        fail_here("missing ';' after " + what + ", found " + found());
    }

    void sync_to_member() {
        while (!at(TokenKind::end) && !at(TokenKind::r_brace)) {
            if (advance().kind == TokenKind::semicolon) {
                return;
            }
        }
    }

    void sync_to_declaration() {
        int depth = 0;
        while (!at(TokenKind::end)) {
            if (depth == 0 && (at(TokenKind::kw_class) || at(TokenKind::kw_interface) ||
                               at(TokenKind::l_bracket))) {
                return;
            }
            const auto kind = advance().kind;
            if (kind == TokenKind::l_brace) {
                ++depth;
            } else if (kind == TokenKind::r_brace && depth > 0) {
                --depth;
            }
        }
    }
};

} // namespace

std::string render(const SyntaxDiagnostic& diag, std::string_view file_name) {
    return std::string(file_name) + ":" + to_string(diag.span) + ": error: " + diag.message;
}

ParseResult parse_idl(std::string_view source) {
    return Parser(source).run();
}

} // namespace idlb
