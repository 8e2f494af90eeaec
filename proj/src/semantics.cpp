#include "idlbridge/semantics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace idlb {

std::string render(const Diagnostic& diag, std::string_view file_name) {
    return std::string(file_name) + ":" + to_string(diag.span) +
           (diag.severity == Severity::error ? ": error: " : ": warning: ") + diag.code + ": " +
           diag.message;
}

const GraphNode& ClassGraph::node(const std::string& name) const {
    auto it = nodes.find(name);
    if (it == nodes.end()) {
        throw std::invalid_argument("unknown type '" + name + "'");
    }
    return it->second;
}

const ClassNode* ClassGraph::find_class(const std::string& name) const {
    auto it = nodes.find(name);
    return it == nodes.end() ? nullptr : std::get_if<ClassNode>(&it->second);
}

const InterfaceNode* ClassGraph::find_interface(const std::string& name) const {
    auto it = nodes.find(name);
    return it == nodes.end() ? nullptr : std::get_if<InterfaceNode>(&it->second);
}

std::size_t ClassGraph::class_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& kv) {
        return std::holds_alternative<ClassNode>(kv.second);
    }));
}

std::size_t ClassGraph::interface_count() const {
    return nodes.size() - class_count();
}

namespace {

bool has_name_attribute(const MethodSig& method) {
    return std::any_of(method.attributes.begin(), method.attributes.end(),
                       [](const Attribute& a) { return a.key == AttributeKey::name; });
}

ResolvedMethod resolved_from(const MethodSig& method, const std::string& origin) {
    return {method.alias, method.name, method.return_type, method.params, origin, false};
}

class Resolver {
public:
    explicit Resolver(const IdlFile& file) : file_(file) {}

    ResolveResult run() {
        graph_.package = file_.package;
        graph_.package_attributes = file_.package_attributes;
        declare_nodes();
        check_edges();
        check_cycles();
        check_type_refs();
        if (!has_errors()) {
            build_interface_closures();
            build_class_closures();
            check_fields();
            check_ctor_aliases();
        }
        ResolveResult result;
        result.diagnostics = std::move(diags_);
        if (!has_errors_in(result.diagnostics)) {
            result.graph = std::move(graph_);
        }
        return result;
    }

private:
    const IdlFile& file_;
    ClassGraph graph_;
    std::vector<Diagnostic> diags_;

    static bool has_errors_in(const std::vector<Diagnostic>& diags) {
        return std::any_of(diags.begin(), diags.end(),
                           [](const Diagnostic& d) { return d.severity == Severity::error; });
    }
    bool has_errors() const { return has_errors_in(diags_); }

    void error(std::string code, std::string message, const SourceSpan& span) {
        diags_.push_back({Severity::error, std::move(code), std::move(message), span});
    }

    ClassNode& class_node(const std::string& name) {
        return std::get<ClassNode>(graph_.nodes.at(name));
    }

    void declare_nodes() {
        for (const auto& decl : file_.declarations) {
            const auto& name = declaration_name(decl);
            if (graph_.nodes.count(name)) {
                error("duplicate-declaration", "'" + name + "' is declared more than once",
                      declaration_span(decl));
                continue;
            }
            if (const auto* c = std::get_if<ClassDecl>(&decl)) {
                ClassNode node;
                node.decl = *c;
                node.parent = c->extends;
                node.interfaces = c->implements;
                graph_.nodes.emplace(name, std::move(node));
                if (!c->extends) {
                    graph_.roots.push_back(name);
                }
            } else {
                graph_.nodes.emplace(name, InterfaceNode{std::get<InterfaceDecl>(decl), {}});
            }
            graph_.order.push_back(name);
        }
    }

    void check_edges() {
        for (const auto& name : graph_.order) {
            const auto* node = graph_.find_class(name);
            if (!node) {
                continue;
            }
            const auto& decl = node->decl;
            if (decl.extends) {
                if (!graph_.nodes.count(*decl.extends)) {
                    error("unresolved-name",
                          "class '" + name + "' extends unknown class '" + *decl.extends + "'",
                          decl.span);
                } else if (!graph_.is_class(*decl.extends)) {
                    error("extends-interface",
                          "class '" + name + "' cannot extend interface '" + *decl.extends +
                              "'; use implements",
                          decl.span);
                }
            }
            for (const auto& iface : decl.implements) {
                if (!graph_.nodes.count(iface)) {
                    error("unresolved-name",
                          "class '" + name + "' implements unknown interface '" + iface + "'",
                          decl.span);
                } else if (!graph_.find_interface(iface)) {
                    error("implements-class",
                          "class '" + name + "' cannot implement class '" + iface +
                              "'; a class has a single superclass",
                          decl.span);
                }
            }
        }
    }

    void check_cycles() {
        std::set<std::string> reported;
        for (const auto& name : graph_.order) {
            if (!graph_.is_class(name) || reported.count(name)) {
                continue;
            }
            std::vector<std::string> path{name};
            std::string current = name;
            while (true) {
                const auto* node = graph_.find_class(current);
                if (!node || !node->parent || !graph_.is_class(*node->parent)) {
                    break;
                }
                current = *node->parent;
                auto hit = std::find(path.begin(), path.end(), current);
                if (hit != path.end()) {
                    std::string chain;
                    for (auto it = hit; it != path.end(); ++it) {
                        chain += *it + " -> ";
                        reported.insert(*it);
                    }
                    chain += current;
                    error("inheritance-cycle", "inheritance cycle: " + chain,
                          graph_.find_class(current)->decl.span);
                    break;
                }
                if (reported.count(current)) {
                    break;
                }
                path.push_back(current);
            }
        }
    }

    void check_type(const TypeRef& type, const std::string& where, const SourceSpan& span) {
        if (type.kind == TypeKind::named && !graph_.nodes.count(type.name)) {
            error("unresolved-type", "unknown type '" + type.name + "' in " + where, span);
        }
    }

    void check_method_types(const MethodSig& m, const std::string& owner) {
        const auto where = owner + "." + m.name;
        check_type(m.return_type, where, m.span);
        for (const auto& p : m.params) {
            check_type(p, where, m.span);
        }
    }

    void check_type_refs() {
        for (const auto& decl : file_.declarations) {
            if (const auto* c = std::get_if<ClassDecl>(&decl)) {
                for (const auto& f : c->fields) {
                    check_type(f.type, "field " + c->name + "." + f.name, f.span);
                }
                for (const auto& ctor : c->ctors) {
                    for (const auto& p : ctor.params) {
                        check_type(p, "constructor " + ctor.alias(), ctor.span);
                    }
                }
                for (const auto& m : c->methods) {
                    check_method_types(m, c->name);
                }
            } else {
                const auto& i = std::get<InterfaceDecl>(decl);
                for (const auto& m : i.methods) {
                    check_method_types(m, i.name);
                }
            }
        }
    }

    // Adds a declared method to a closure, enforcing the no-overloading rule.
    void add_declared(std::vector<ResolvedMethod>& closure, std::size_t inherited_count,
                      const MethodSig& method, const std::string& owner) {
        auto entry = resolved_from(method, owner);
        auto it = std::find_if(closure.begin(), closure.end(),
                               [&](const ResolvedMethod& r) { return r.alias == method.alias; });
        if (it == closure.end()) {
            closure.push_back(std::move(entry));
            return;
        }
        const bool inherited = static_cast<std::size_t>(it - closure.begin()) < inherited_count &&
                               !it->overridden;
        if (inherited && it->origin != owner && it->same_signature(entry)) {
            entry.overridden = true;
            *it = std::move(entry);
            return;
        }
        if (!it->same_signature(entry) && !has_name_attribute(method)) {
            error("overload-without-alias",
                  "method '" + method.name + "' in '" + owner +
                      "' overloads an existing method of the same name; add a [name ...] alias",
                  method.span);
        } else {
            error("duplicate-alias",
                  "alias '" + method.alias + "' is already used in the closure of '" + owner + "'",
                  method.span);
        }
    }

    void build_interface_closures() {
        for (const auto& name : graph_.order) {
            auto it = graph_.nodes.find(name);
            if (auto* iface = std::get_if<InterfaceNode>(&it->second)) {
                for (const auto& m : iface->decl.methods) {
                    add_declared(iface->closure, 0, m, name);
                }
            }
        }
    }

    void build_class_closures() {
        std::set<std::string> done;
        for (const auto& name : graph_.order) {
            build_class_closure(name, done);
        }
    }

    void build_class_closure(const std::string& name, std::set<std::string>& done) {
        if (!graph_.is_class(name) || done.count(name)) {
            return;
        }
        done.insert(name);
        auto& node = class_node(name);
        std::vector<ResolvedMethod> closure;
        if (node.parent) {
            build_class_closure(*node.parent, done);
            closure = class_node(*node.parent).closure;
            for (auto& m : closure) {
                m.overridden = false;
            }
        }
        const std::size_t inherited = closure.size();
        for (const auto& m : node.decl.methods) {
            add_declared(closure, inherited, m, name);
        }
        for (const auto& iface_name : node.interfaces) {
            const auto* iface = graph_.find_interface(iface_name);
            for (const auto& required : iface->closure) {
                auto it = std::find_if(closure.begin(), closure.end(), [&](const ResolvedMethod& r) {
                    return r.alias == required.alias;
                });
                if (it != closure.end()) {
                    if (!it->same_signature(required)) {
                        error("interface-signature-mismatch",
                              "'" + name + "." + it->alias + "' does not match the signature required by '" +
                                  iface_name + "'",
                              node.decl.span);
                    }
                } else if (node.decl.callback) {
                    closure.push_back(required);
                } else {
                    error("unimplemented-interface-method",
                          "class '" + name + "' does not implement '" + iface_name + "." +
                              required.alias + "' (only [callback] classes may defer it)",
                          node.decl.span);
                }
            }
        }
        node.closure = std::move(closure);
    }

    void check_fields() {
        for (const auto& name : graph_.order) {
            const auto* node = graph_.find_class(name);
            if (!node) {
                continue;
            }
            std::set<std::string> seen;
            for (const auto& f : all_fields(graph_, name)) {
                const bool own = std::any_of(node->decl.fields.begin(), node->decl.fields.end(),
                                             [&](const FieldDecl& d) { return d.name == f.name; });
                if (!seen.insert(f.name).second && own) {
                    error("duplicate-field",
                          "field '" + f.name + "' of '" + name + "' is already declared", f.span);
                }
            }
            for (const auto& f : all_fields(graph_, name)) {
                const bool own = std::any_of(node->decl.fields.begin(), node->decl.fields.end(),
                                             [&](const FieldDecl& d) { return d.name == f.name; });
                for (const auto& accessor : {"get_" + f.name, "set_" + f.name}) {
                    for (const auto& m : node->closure) {
                        if (m.alias == accessor && (own || m.origin == name)) {
                            error("accessor-collision",
                                  "generated accessor '" + accessor + "' for field '" + name +
                                      "." + f.name + "' collides with a method alias",
                                  f.span);
                        }
                    }
                }
            }
        }
    }

    void check_ctor_aliases() {
        std::set<std::string> seen;
        for (const auto& name : graph_.order) {
            if (!graph_.is_class(name)) {
                continue;
            }
            auto& node = class_node(name);
            for (const auto& ctor : node.decl.ctors) {
                const auto alias = ctor.alias();
                if (!seen.insert(alias).second) {
                    error("duplicate-ctor-alias",
                          "constructor alias '" + alias + "' is already used in package '" +
                              graph_.package + "'",
                          ctor.span);
                }
                node.ctor_aliases.push_back(alias);
            }
        }
    }
};

} // namespace

ResolveResult resolve(const IdlFile& file) {
    return Resolver(file).run();
}

bool subtype_of(const ClassGraph& graph, const std::string& sub, const std::string& super) {
    graph.node(sub);
    graph.node(super);
    std::vector<std::string> stack{sub};
    std::set<std::string> seen;
    while (!stack.empty()) {
        auto current = stack.back();
        stack.pop_back();
        if (current == super) {
            return true;
        }
        if (!seen.insert(current).second) {
            continue;
        }
        if (const auto* c = graph.find_class(current)) {
            if (c->parent) {
                stack.push_back(*c->parent);
            }
            stack.insert(stack.end(), c->interfaces.begin(), c->interfaces.end());
        }
    }
    return false;
}

const std::vector<ResolvedMethod>& method_closure(const ClassGraph& graph, const std::string& name) {
    return std::visit([](const auto& n) -> const std::vector<ResolvedMethod>& { return n.closure; },
                      graph.node(name));
}

std::vector<FieldDecl> all_fields(const ClassGraph& graph, const std::string& name) {
    std::vector<const ClassNode*> chain;
    for (const auto* c = graph.find_class(name); c; c = c->parent ? graph.find_class(*c->parent) : nullptr) {
        if (std::find(chain.begin(), chain.end(), c) != chain.end()) {
            break;
        }
        chain.push_back(c);
    }
    std::vector<FieldDecl> fields;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        fields.insert(fields.end(), (*it)->decl.fields.begin(), (*it)->decl.fields.end());
    }
    return fields;
}

} // namespace idlb
