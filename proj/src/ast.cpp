#include "idlbridge/ast.hpp"

namespace idlb {

std::string_view to_string(AttributeKey key) {
    switch (key) {
    case AttributeKey::name:
        return "name";
    case AttributeKey::callback:
        return "callback";
    case AttributeKey::assembly:
        return "assembly";
    }
    return "?";
}

std::string to_string(const TypeRef& type) {
    switch (type.kind) {
    case TypeKind::int_:
        return "int";
    case TypeKind::double_:
        return "double";
    case TypeKind::boolean:
        return "boolean";
    case TypeKind::string:
        return "string";
    case TypeKind::void_:
        return "void";
    case TypeKind::named:
        return type.name;
    }
    return "?";
}

std::string CtorSig::alias() const {
    for (const auto& attr : attributes) {
        if (attr.key == AttributeKey::name && attr.value) {
            return *attr.value;
        }
    }
    return {};
}

std::vector<const ClassDecl*> IdlFile::classes() const {
    std::vector<const ClassDecl*> out;
    for (const auto& decl : declarations) {
        if (const auto* c = std::get_if<ClassDecl>(&decl)) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<const InterfaceDecl*> IdlFile::interfaces() const {
    std::vector<const InterfaceDecl*> out;
    for (const auto& decl : declarations) {
        if (const auto* i = std::get_if<InterfaceDecl>(&decl)) {
            out.push_back(i);
        }
    }
    return out;
}

const std::string& declaration_name(const Declaration& decl) {
    return std::visit([](const auto& d) -> const std::string& { return d.name; }, decl);
}

const SourceSpan& declaration_span(const Declaration& decl) {
    return std::visit([](const auto& d) -> const SourceSpan& { return d.span; }, decl);
}

} // namespace idlb
