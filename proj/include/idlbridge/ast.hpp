#pragma once

// Syntax tree for IDL sources.
//
// Equality on every node is structural: source spans are carried for
// diagnostics but never take part in comparisons.

#include "idlbridge/source_span.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace idlb {

enum class AttributeKey { name, callback, assembly };

std::string_view to_string(AttributeKey key);

struct Attribute {
    AttributeKey key = AttributeKey::name;
    std::optional<std::string> value;
    SourceSpan span;

    friend bool operator==(const Attribute& a, const Attribute& b) {
        return a.key == b.key && a.value == b.value;
    }
};

enum class TypeKind { int_, double_, boolean, string, void_, named };

struct TypeRef {
    TypeKind kind = TypeKind::void_;
    std::string name; // non-empty iff kind == named

    static TypeRef primitive(TypeKind kind) { return {kind, {}}; }
    static TypeRef named_type(std::string name) { return {TypeKind::named, std::move(name)}; }

    bool is_void() const { return kind == TypeKind::void_; }
    friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

/// IDL spelling of a type: `int`, `boolean`, `Point`, ...
std::string to_string(const TypeRef& type);

struct FieldDecl {
    TypeRef type;
    std::string name;
    SourceSpan span;

    friend bool operator==(const FieldDecl& a, const FieldDecl& b) {
        return a.type == b.type && a.name == b.name;
    }
};

struct CtorSig {
    std::vector<Attribute> attributes;
    std::vector<TypeRef> params;
    SourceSpan span;

    /// Value of the `name` attribute; empty when absent.
    std::string alias() const;

    friend bool operator==(const CtorSig& a, const CtorSig& b) {
        return a.attributes == b.attributes && a.params == b.params;
    }
};

struct MethodSig {
    std::vector<Attribute> attributes;
    TypeRef return_type;
    std::string name;
    std::string alias; // `name` attribute value if present, else `name`
    std::vector<TypeRef> params;
    SourceSpan span;

    friend bool operator==(const MethodSig& a, const MethodSig& b) {
        return a.attributes == b.attributes && a.return_type == b.return_type &&
               a.name == b.name && a.alias == b.alias && a.params == b.params;
    }
};

struct ClassDecl {
    std::vector<Attribute> attributes;
    std::string name;
    std::optional<std::string> extends;
    std::vector<std::string> implements;
    std::vector<FieldDecl> fields;
    std::vector<CtorSig> ctors;
    std::vector<MethodSig> methods;
    bool callback = false;
    SourceSpan span;

    friend bool operator==(const ClassDecl& a, const ClassDecl& b) {
        return a.attributes == b.attributes && a.name == b.name && a.extends == b.extends &&
               a.implements == b.implements && a.fields == b.fields && a.ctors == b.ctors &&
               a.methods == b.methods && a.callback == b.callback;
    }
};

struct InterfaceDecl {
    std::string name;
    std::vector<MethodSig> methods;
    SourceSpan span;

    friend bool operator==(const InterfaceDecl& a, const InterfaceDecl& b) {
        return a.name == b.name && a.methods == b.methods;
    }
};

using Declaration = std::variant<ClassDecl, InterfaceDecl>;

struct IdlFile {
    std::string package;
    std::vector<Attribute> package_attributes;
    std::vector<Declaration> declarations; // source order

    std::vector<const ClassDecl*> classes() const;
    std::vector<const InterfaceDecl*> interfaces() const;

    friend bool operator==(const IdlFile&, const IdlFile&) = default;
};

const std::string& declaration_name(const Declaration& decl);
const SourceSpan& declaration_span(const Declaration& decl);

} // namespace idlb
