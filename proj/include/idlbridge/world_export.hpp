#pragma once

// Reflection snapshot of a world, as consumed by startup verification.
//
//   { "world": "nominal" | "structural-types",
//     "classes": [ { "name", "parent", "methods": [{ "alias", "arity" }],
//                    "ctors": [{ "alias", "arity" }] } ] }
//
// Nominal methods list only what a class declares itself; lookups walk
// `parent`. A method with no body carries `"abstract": true`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idlb {

enum class ExportKind { nominal, structural_types };

struct ExportedMember {
    std::string alias;
    std::size_t arity = 0;
    bool abstract = false;
    friend bool operator==(const ExportedMember&, const ExportedMember&) = default;
};

struct ExportedClass {
    std::string name;
    std::optional<std::string> parent;
    std::vector<ExportedMember> methods;
    std::vector<ExportedMember> ctors;

    const ExportedMember* find_method(std::string_view alias) const;
    const ExportedMember* find_ctor(std::string_view alias) const;
    friend bool operator==(const ExportedClass&, const ExportedClass&) = default;
};

struct WorldExport {
    ExportKind kind = ExportKind::nominal;
    std::vector<ExportedClass> classes;

    const ExportedClass* find(std::string_view name) const;
    friend bool operator==(const WorldExport&, const WorldExport&) = default;
};

std::string emit_world_export(const WorldExport& world);

/// Throws ManifestError on malformed input.
WorldExport parse_world_export(std::string_view text);

} // namespace idlb
