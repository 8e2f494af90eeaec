#pragma once

// Name resolution and class-graph construction.
//
// The resolved model is the intersection of the two object worlds: single
// nominal inheritance, interfaces for additional supertypes, inheritance
// implies subtyping, and no overloading (method aliases are unique within
// a closure).

#include "idlbridge/ast.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace idlb {

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    SourceSpan span;
};

/// `file:line:col: error: code: message`
std::string render(const Diagnostic& diag, std::string_view file_name);

struct ResolvedMethod {
    std::string alias;
    std::string declared_name;
    TypeRef return_type;
    std::vector<TypeRef> params;
    std::string origin;       // class or interface that supplied the entry
    bool overridden = false;  // replaces an inherited entry of the same alias

    bool same_signature(const ResolvedMethod& other) const {
        return return_type == other.return_type && params == other.params;
    }
};

struct ClassNode {
    ClassDecl decl;
    std::optional<std::string> parent;
    std::vector<std::string> interfaces;
    std::vector<ResolvedMethod> closure;
    std::vector<std::string> ctor_aliases;
};

struct InterfaceNode {
    InterfaceDecl decl;
    std::vector<ResolvedMethod> closure;
};

using GraphNode = std::variant<ClassNode, InterfaceNode>;

struct ClassGraph {
    std::string package;
    std::vector<Attribute> package_attributes;
    std::map<std::string, GraphNode> nodes;
    std::vector<std::string> order;   // declaration order
    std::vector<std::string> roots;   // classes without a parent

    const GraphNode& node(const std::string& name) const;
    const ClassNode* find_class(const std::string& name) const;
    const InterfaceNode* find_interface(const std::string& name) const;
    bool is_class(const std::string& name) const { return find_class(name) != nullptr; }
    std::size_t class_count() const;
    std::size_t interface_count() const;
};

struct ResolveResult {
    std::optional<ClassGraph> graph; // engaged iff no error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return graph.has_value(); }
};

ResolveResult resolve(const IdlFile& file);

/// Reflexive-transitive closure of extends/implements edges.
/// Throws std::invalid_argument for names not in the graph.
bool subtype_of(const ClassGraph& graph, const std::string& sub, const std::string& super);

/// Declared plus inherited methods; inherited entries come first, overrides
/// keep the inherited position. Throws std::invalid_argument for unknown names.
const std::vector<ResolvedMethod>& method_closure(const ClassGraph& graph, const std::string& name);

/// Fields of `name` and all of its ancestors, root class first.
std::vector<FieldDecl> all_fields(const ClassGraph& graph, const std::string& name);

} // namespace idlb
