#include "idlbridge/manifest.hpp"

#include <nlohmann/json.hpp>

#include <set>

namespace idlb {

using nlohmann::json;

namespace {

json to_json(const MethodDescriptor& m) {
    return {{"alias", m.alias}, {"params", m.params}, {"return", m.return_type}};
}

MethodDescriptor method_from(const json& j) {
    return {j.at("alias").get<std::string>(), j.at("params").get<std::vector<std::string>>(),
            j.at("return").get<std::string>()};
}

void check_consistency(const WrapperManifest& m) {
    std::set<std::string> names{std::string(top_type)};
    for (const auto& t : m.types) {
        if (!names.insert(t.name).second) {
            throw ManifestError("duplicate type '" + t.name + "'");
        }
    }
    auto require_type = [&](const std::string& name, const std::string& where) {
        if (!names.count(name)) {
            throw ManifestError(where + " refers to unknown type '" + name + "'");
        }
    };
    for (const auto& [sub, super] : m.subtype_edges) {
        require_type(sub, "subtype edge");
        require_type(super, "subtype edge");
    }
    for (const auto& w : m.wrappers) {
        require_type(w.exposes, "wrapper '" + w.name + "'");
    }
    for (const auto& c : m.coercions) {
        require_type(c.target, "coercion '" + c.name + "'");
    }
    std::set<std::string> aliases;
    for (const auto& c : m.constructors) {
        if (!m.type_of_class(c.target_class)) {
            throw ManifestError("constructor '" + c.alias + "' targets unknown class '" +
                                c.target_class + "'");
        }
        if (!aliases.insert(c.alias).second) {
            throw ManifestError("duplicate constructor alias '" + c.alias + "'");
        }
    }
    for (const auto& s : m.stub_pairs) {
        if (!m.type_of_class(s.class_name)) {
            throw ManifestError("stub pair for unknown class '" + s.class_name + "'");
        }
    }
}

} // namespace

std::string emit_manifest(const WrapperManifest& manifest) {
    json types = json::array();
    for (const auto& t : manifest.types) {
        json methods = json::array();
        for (const auto& m : t.methods) {
            methods.push_back(to_json(m));
        }
        types.push_back({{"name", t.name},
                         {"kind", t.kind == TypeSource::class_ ? "class" : "interface"},
                         {"source", t.source},
                         {"methods", std::move(methods)}});
    }
    json wrappers = json::array();
    for (const auto& w : manifest.wrappers) {
        wrappers.push_back({{"name", w.name}, {"exposes", w.exposes}, {"source", w.source}});
    }
    json ctors = json::array();
    for (const auto& c : manifest.constructors) {
        ctors.push_back({{"alias", c.alias},
                         {"target_class", c.target_class},
                         {"params", c.params},
                         {"via_stub", c.via_stub}});
    }
    json coercions = json::array();
    for (const auto& c : manifest.coercions) {
        coercions.push_back({{"name", c.name}, {"target", c.target}});
    }
    json stubs = json::array();
    for (const auto& s : manifest.stub_pairs) {
        stubs.push_back({{"class", s.class_name},
                         {"foreign_stub", s.foreign_stub},
                         {"native_stub", s.native_stub}});
    }
    json edges = json::array();
    for (const auto& [sub, super] : manifest.subtype_edges) {
        edges.push_back(json::array({sub, super}));
    }
    json doc{{"package", manifest.package},
             {"types", std::move(types)},
             {"wrappers", std::move(wrappers)},
             {"constructors", std::move(ctors)},
             {"coercions", std::move(coercions)},
             {"stub_pairs", std::move(stubs)},
             {"subtype_edges", std::move(edges)}};
    return doc.dump(2) + "\n";
}

WrapperManifest parse_manifest(std::string_view text) {
    WrapperManifest m;
    try {
        const json doc = json::parse(text);
        m.package = doc.at("package").get<std::string>();
        for (const auto& t : doc.at("types")) {
            StructuralType type;
            type.name = t.at("name").get<std::string>();
            const auto kind = t.at("kind").get<std::string>();
            if (kind != "class" && kind != "interface") {
                throw ManifestError("type '" + type.name + "' has unknown kind '" + kind + "'");
            }
            type.kind = kind == "class" ? TypeSource::class_ : TypeSource::interface;
            type.source = t.at("source").get<std::string>();
            for (const auto& method : t.at("methods")) {
                type.methods.push_back(method_from(method));
            }
            m.types.push_back(std::move(type));
        }
        for (const auto& w : doc.at("wrappers")) {
            m.wrappers.push_back({w.at("name").get<std::string>(), w.at("exposes").get<std::string>(),
                                  w.at("source").get<std::string>()});
        }
        for (const auto& c : doc.at("constructors")) {
            m.constructors.push_back({c.at("alias").get<std::string>(),
                                      c.at("target_class").get<std::string>(),
                                      c.at("params").get<std::vector<std::string>>(),
                                      c.at("via_stub").get<bool>()});
        }
        for (const auto& c : doc.at("coercions")) {
            m.coercions.push_back({c.at("name").get<std::string>(), c.at("target").get<std::string>()});
        }
        for (const auto& s : doc.at("stub_pairs")) {
            m.stub_pairs.push_back({s.at("class").get<std::string>(),
                                    s.at("foreign_stub").get<std::string>(),
                                    s.at("native_stub").get<std::string>()});
        }
        for (const auto& e : doc.at("subtype_edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw ManifestError("subtype edge must be a [sub, super] pair");
            }
            m.subtype_edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
    } catch (const json::exception& e) {
        throw ManifestError(std::string("malformed manifest: ") + e.what());
    }
    check_consistency(m);
    return m;
}

} // namespace idlb
