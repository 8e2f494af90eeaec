#include "idlbridge/world_export.hpp"

#include "idlbridge/manifest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace idlb {

using nlohmann::json;

const ExportedMember* ExportedClass::find_method(std::string_view alias) const {
    auto it = std::find_if(methods.begin(), methods.end(),
                           [&](const ExportedMember& m) { return m.alias == alias; });
    return it == methods.end() ? nullptr : &*it;
}

const ExportedMember* ExportedClass::find_ctor(std::string_view alias) const {
    auto it = std::find_if(ctors.begin(), ctors.end(),
                           [&](const ExportedMember& m) { return m.alias == alias; });
    return it == ctors.end() ? nullptr : &*it;
}

const ExportedClass* WorldExport::find(std::string_view name) const {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const ExportedClass& c) { return c.name == name; });
    return it == classes.end() ? nullptr : &*it;
}

namespace {

json members_to_json(const std::vector<ExportedMember>& members) {
    json out = json::array();
    for (const auto& m : members) {
        json entry{{"alias", m.alias}, {"arity", m.arity}};
        if (m.abstract) {
            entry["abstract"] = true;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<ExportedMember> members_from(const json& j) {
    std::vector<ExportedMember> out;
    for (const auto& m : j) {
        out.push_back({m.at("alias").get<std::string>(), m.at("arity").get<std::size_t>(),
                       m.value("abstract", false)});
    }
    return out;
}

} // namespace

std::string emit_world_export(const WorldExport& world) {
    json classes = json::array();
    for (const auto& c : world.classes) {
        classes.push_back({{"name", c.name},
                           {"parent", c.parent ? json(*c.parent) : json(nullptr)},
                           {"methods", members_to_json(c.methods)},
                           {"ctors", members_to_json(c.ctors)}});
    }
    json doc{{"world", world.kind == ExportKind::nominal ? "nominal" : "structural-types"},
             {"classes", std::move(classes)}};
    return doc.dump(2) + "\n";
}

WorldExport parse_world_export(std::string_view text) {
    WorldExport world;
    try {
        const json doc = json::parse(text);
        const auto kind = doc.at("world").get<std::string>();
        if (kind == "nominal") {
            world.kind = ExportKind::nominal;
        } else if (kind == "structural-types") {
            world.kind = ExportKind::structural_types;
        } else {
            throw ManifestError("unknown world kind '" + kind + "'");
        }
        for (const auto& c : doc.at("classes")) {
            ExportedClass cls;
            cls.name = c.at("name").get<std::string>();
            if (c.contains("parent") && !c.at("parent").is_null()) {
                cls.parent = c.at("parent").get<std::string>();
            }
            cls.methods = members_from(c.at("methods"));
            cls.ctors = members_from(c.value("ctors", json::array()));
            world.classes.push_back(std::move(cls));
        }
    } catch (const json::exception& e) {
        throw ManifestError(std::string("malformed world export: ") + e.what());
    }
    return world;
}

} // namespace idlb
