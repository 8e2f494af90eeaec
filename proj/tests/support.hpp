#pragma once
// Shared helpers for the test binaries: corpus access and random generators.

#include "idlbridge/ast.hpp"
#include "idlbridge/manifest.hpp"
#include "idlbridge/nominal_world.hpp"
#include "idlbridge/parser.hpp"
#include "idlbridge/semantics.hpp"
#include "idlbridge/value.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testkit {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(IDLB_TEST_DATA) / name;
}

inline std::filesystem::path golden_path(const std::string& name) {
    return std::filesystem::path(IDLB_GOLDEN_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_data(const std::string& name) { return slurp(data_path(name)); }

inline idlb::IdlFile parse_ok(std::string_view src) {
    auto r = idlb::parse_idl(src);
    if (!r.ok()) {
        throw std::runtime_error("parse failed: " + r.diagnostics.front().message);
    }
    return *r.file;
}

inline idlb::ClassGraph resolve_ok(std::string_view src) {
    auto r = idlb::resolve(parse_ok(src));
    if (!r.ok()) {
        throw std::runtime_error("resolve failed: " + r.diagnostics.front().code + ": " +
                                 r.diagnostics.front().message);
    }
    return *r.graph;
}

inline std::vector<std::string> codes(const idlb::ResolveResult& r) {
    std::vector<std::string> out;
    for (const auto& d : r.diagnostics) {
        out.push_back(d.code);
    }
    return out;
}

// Code of the BridgeError thrown by fn, or "" when it returns normally.
template <typename Fn>
std::string error_code(Fn&& fn) {
    try {
        fn();
    } catch (const idlb::BridgeError& e) {
        return e.code();
    }
    return "";
}

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline idlb::TypeRef random_type(Rng& rng, const std::vector<std::string>& named, bool allow_void) {
    using idlb::TypeKind;
    static const TypeKind prims[] = {TypeKind::int_, TypeKind::double_, TypeKind::boolean,
                                     TypeKind::string};
    if (allow_void && coin(rng, 0.2)) {
        return idlb::TypeRef::primitive(TypeKind::void_);
    }
    if (!named.empty() && coin(rng, 0.3)) {
        return idlb::TypeRef::named_type(named[pick(rng, 0, int(named.size()) - 1)]);
    }
    return idlb::TypeRef::primitive(prims[pick(rng, 0, 3)]);
}

inline idlb::Attribute name_attr(std::string value) {
    idlb::Attribute a;
    a.key = idlb::AttributeKey::name;
    a.value = std::move(value);
    return a;
}

inline std::vector<idlb::TypeRef> random_params(Rng& rng, const std::vector<std::string>& named) {
    std::vector<idlb::TypeRef> params;
    for (int i = pick(rng, 0, 3); i > 0; --i) {
        params.push_back(random_type(rng, named, false));
    }
    return params;
}

// Syntactically valid, not necessarily resolvable.
inline idlb::IdlFile random_idl_file(Rng& rng) {
    idlb::IdlFile file;
    file.package = "pkg" + std::to_string(pick(rng, 0, 99));
    if (coin(rng, 0.3)) {
        idlb::Attribute a;
        a.key = idlb::AttributeKey::assembly;
        a.value = "asm" + std::to_string(pick(rng, 0, 9));
        file.package_attributes.push_back(a);
    }
    std::vector<std::string> names;
    const int decls = pick(rng, 0, 6);
    for (int d = 0; d < decls; ++d) {
        names.push_back((coin(rng) ? "C" : "I") + std::to_string(d));
    }
    for (int d = 0; d < decls; ++d) {
        const auto& name = names[d];
        auto method = [&](int i) {
            idlb::MethodSig m;
            m.return_type = random_type(rng, names, true);
            m.name = "m" + std::to_string(i);
            m.alias = m.name;
            if (coin(rng, 0.3)) {
                m.alias = "alias_" + std::to_string(i);
                m.attributes.push_back(name_attr(m.alias));
            }
            m.params = random_params(rng, names);
            return m;
        };
        if (name[0] == 'I') {
            idlb::InterfaceDecl decl;
            decl.name = name;
            for (int i = pick(rng, 0, 3); i > 0; --i) {
                decl.methods.push_back(method(i));
            }
            file.declarations.emplace_back(std::move(decl));
            continue;
        }
        idlb::ClassDecl decl;
        decl.name = name;
        if (coin(rng, 0.3)) {
            decl.callback = true;
            idlb::Attribute a;
            a.key = idlb::AttributeKey::callback;
            decl.attributes.push_back(a);
        }
        if (coin(rng, 0.4)) {
            decl.extends = names[pick(rng, 0, decls - 1)];
        }
        std::set<std::string> seen;
        for (int i = pick(rng, 0, 2); i > 0; --i) {
            auto iface = names[pick(rng, 0, decls - 1)];
            if (seen.insert(iface).second) {
                decl.implements.push_back(iface);
            }
        }
        for (int i = pick(rng, 0, 3); i > 0; --i) {
            idlb::FieldDecl f;
            f.type = random_type(rng, names, false);
            f.name = "f" + std::to_string(i);
            decl.fields.push_back(f);
        }
        for (int i = pick(rng, 0, 2); i > 0; --i) {
            idlb::CtorSig c;
            c.attributes.push_back(name_attr("make_" + name + "_" + std::to_string(i)));
            c.params = random_params(rng, names);
            decl.ctors.push_back(c);
        }
        for (int i = pick(rng, 0, 4); i > 0; --i) {
            decl.methods.push_back(method(i));
        }
        file.declarations.emplace_back(std::move(decl));
    }
    return file;
}

// A resolvable graph plus the declared edges it was built from.
struct RandomGraph {
    idlb::IdlFile file;
    std::map<std::string, std::vector<std::string>> supers;  // direct extends/implements
};

// Classes and interfaces where every declaration only refers to earlier
// ones. Method names are unique per declaration, overrides repeat the exact
// inherited signature, and classes spell out every interface method.
inline RandomGraph random_graph(Rng& rng) {
    RandomGraph g;
    g.file.package = "gen";
    std::vector<std::string> classes, interfaces;
    std::map<std::string, std::vector<idlb::MethodSig>> visible;  // closure by name
    const int decls = pick(rng, 1, 10);
    for (int d = 0; d < decls; ++d) {
        auto fresh_method = [&](const std::string& owner, int i) {
            idlb::MethodSig m;
            m.name = "m_" + owner + "_" + std::to_string(i);
            m.alias = m.name;
            m.return_type = random_type(rng, {}, true);
            m.params = random_params(rng, {});
            return m;
        };
        if (coin(rng, 0.3)) {
            idlb::InterfaceDecl decl;
            decl.name = "I" + std::to_string(d);
            for (int i = pick(rng, 0, 3); i > 0; --i) {
                decl.methods.push_back(fresh_method(decl.name, i));
            }
            visible[decl.name] = decl.methods;
            interfaces.push_back(decl.name);
            g.supers[decl.name];
            g.file.declarations.emplace_back(std::move(decl));
            continue;
        }
        idlb::ClassDecl decl;
        decl.name = "C" + std::to_string(d);
        auto& sup = g.supers[decl.name];
        std::vector<idlb::MethodSig> closure;
        std::set<std::string> have;
        if (!classes.empty() && coin(rng, 0.6)) {
            decl.extends = classes[pick(rng, 0, int(classes.size()) - 1)];
            sup.push_back(*decl.extends);
            closure = visible[*decl.extends];
            for (const auto& m : closure) {
                have.insert(m.alias);
            }
        }
        for (const auto& iface : interfaces) {
            if (!coin(rng, 0.3)) {
                continue;
            }
            decl.implements.push_back(iface);
            sup.push_back(iface);
            for (const auto& m : visible[iface]) {
                if (have.insert(m.alias).second) {
                    decl.methods.push_back(m);
                    closure.push_back(m);
                }
            }
        }
        for (const auto& m : closure) {
            if (coin(rng, 0.2) && std::find(decl.methods.begin(), decl.methods.end(), m) == decl.methods.end()) {
                decl.methods.push_back(m);  // override
            }
        }
        for (int i = pick(rng, 0, 3); i > 0; --i) {
            auto m = fresh_method(decl.name, i);
            decl.methods.push_back(m);
            closure.push_back(m);
        }
        if (coin(rng, 0.3)) {
            idlb::FieldDecl f;
            f.type = random_type(rng, {}, false);
            f.name = "f_" + decl.name;
            decl.fields.push_back(f);
        }
        idlb::CtorSig ctor;
        ctor.attributes.push_back(name_attr("new_" + decl.name));
        decl.ctors.push_back(ctor);
        visible[decl.name] = closure;
        classes.push_back(decl.name);
        g.file.declarations.emplace_back(std::move(decl));
    }
    return g;
}

// Reachability over declared edges; independent of the resolver.
inline bool reaches(const RandomGraph& g, const std::string& sub, const std::string& super) {
    std::vector<std::string> stack{sub};
    std::set<std::string> seen;
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (cur == super) {
            return true;
        }
        if (!seen.insert(cur).second) {
            continue;
        }
        for (const auto& s : g.supers.at(cur)) {
            stack.push_back(s);
        }
    }
    return false;
}

// Single-inheritance class tree of depth <= max_depth as IDL text.
struct RandomTree {
    std::string idl;
    std::vector<std::string> classes;
    std::map<std::string, std::string> parent;
};

inline RandomTree random_tree(Rng& rng, int max_depth) {
    RandomTree t;
    std::map<std::string, int> depth;
    std::ostringstream src;
    src << "package tree;\n";
    const int n = pick(rng, 1, 9);
    for (int i = 0; i < n; ++i) {
        std::string name = "K" + std::to_string(i);
        std::vector<std::string> eligible;
        for (const auto& c : t.classes) {
            if (depth[c] < max_depth - 1) {
                eligible.push_back(c);
            }
        }
        src << "class " << name;
        depth[name] = 0;
        if (!eligible.empty() && coin(rng, 0.7)) {
            const auto& p = eligible[pick(rng, 0, int(eligible.size()) - 1)];
            t.parent[name] = p;
            depth[name] = depth[p] + 1;
            src << " extends " << p;
        }
        src << " {\n    [name new_" << name << "] <init>();\n    string who();\n}\n";
        t.classes.push_back(name);
    }
    t.idl = src.str();
    return t;
}

// Walks the tree's parent links; independent of the resolver.
inline bool reaches_class(const RandomTree& t, std::string cls, const std::string& target) {
    for (;;) {
        if (cls == target) {
            return true;
        }
        auto it = t.parent.find(cls);
        if (it == t.parent.end()) {
            return false;
        }
        cls = it->second;
    }
}

// Nominal classes matching a resolved graph: one zero-arity body per
// declared method returning "<Class>.<alias>", accessors for own fields,
// and trivial constructors.
inline void synthesize_world(const idlb::ClassGraph& graph, idlb::NominalWorld& world) {
    for (const auto& name : graph.order) {
        const auto* node = graph.find_class(name);
        if (!node) {
            continue;
        }
        idlb::NominalClass cls;
        cls.name = name;
        cls.parent = node->parent;
        for (const auto& m : node->decl.methods) {
            const std::string tag = name + "." + m.alias;
            cls.vtable[m.alias] = {m.params.size(),
                                   [tag](idlb::NominalWorld&, idlb::ObjRef, std::span<const idlb::Value>) {
                                       return idlb::Value(tag);
                                   }};
        }
        for (const auto& f : node->decl.fields) {
            cls.fields[f.name] = idlb::Value(0);
            const std::string field = f.name;
            cls.vtable["get_" + field] = {0, [field](idlb::NominalWorld& w, idlb::ObjRef self,
                                                     std::span<const idlb::Value>) {
                                              return w.get_field(self, field);
                                          }};
            cls.vtable["set_" + field] = {1, [field](idlb::NominalWorld& w, idlb::ObjRef self,
                                                     std::span<const idlb::Value> args) {
                                              w.set_field(self, field, args[0]);
                                              return idlb::Value();
                                          }};
        }
        for (const auto& c : node->decl.ctors) {
            cls.ctors[c.alias()] = {c.params.size(), [](idlb::NominalWorld&, idlb::ObjRef,
                                                        std::span<const idlb::Value>) { return idlb::Value(); }};
        }
        world.register_class(std::move(cls));
    }
}

} // namespace testkit
