#include "idlbridge/parser.hpp"

#include <sstream>

namespace idlb {

namespace {

void write_attributes(std::ostringstream& out, const std::vector<Attribute>& attrs) {
    for (const auto& attr : attrs) {
        out << '[' << to_string(attr.key);
        if (attr.value) {
            out << ' ' << *attr.value;
        }
        out << "] ";
    }
}

void write_params(std::ostringstream& out, const std::vector<TypeRef>& params) {
    out << '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        out << (i ? ", " : "") << to_string(params[i]);
    }
    out << ')';
}

void write_method(std::ostringstream& out, const MethodSig& method) {
    out << "    ";
    write_attributes(out, method.attributes);
    out << to_string(method.return_type) << ' ' << method.name;
    write_params(out, method.params);
    out << ";\n";
}

void write_class(std::ostringstream& out, const ClassDecl& decl) {
    write_attributes(out, decl.attributes);
    out << "class " << decl.name;
    if (decl.extends) {
        out << " extends " << *decl.extends;
    }
    for (std::size_t i = 0; i < decl.implements.size(); ++i) {
        out << (i ? ", " : " implements ") << decl.implements[i];
    }
    out << " {\n";
    for (const auto& field : decl.fields) {
        out << "    " << to_string(field.type) << ' ' << field.name << ";\n";
    }
    for (const auto& ctor : decl.ctors) {
        out << "    ";
        write_attributes(out, ctor.attributes);
        out << "<init>";
        write_params(out, ctor.params);
        out << ";\n";
    }
    for (const auto& method : decl.methods) {
        write_method(out, method);
    }
    out << "}\n";
}

void write_interface(std::ostringstream& out, const InterfaceDecl& decl) {
    out << "interface " << decl.name << " {\n";
    for (const auto& method : decl.methods) {
        write_method(out, method);
    }
    out << "}\n";
}

} // namespace

std::string format_idl(const IdlFile& file) {
    std::ostringstream out;
    out << "package ";
    write_attributes(out, file.package_attributes);
    out << file.package << ";\n";
    for (const auto& decl : file.declarations) {
        out << '\n';
        if (const auto* c = std::get_if<ClassDecl>(&decl)) {
            write_class(out, *c);
        } else {
            write_interface(out, std::get<InterfaceDecl>(decl));
        }
    }
    return out.str();
}

} // namespace idlb
