#pragma once

// The wrapper manifest: everything the generator derives from a resolved
// class graph. It stands in for generated source files and is what the
// bridge runtime executes.

#include "idlbridge/semantics.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace idlb {

inline constexpr std::string_view top_type = "top";

/// One method of a structural type. Types are spelled in structural form:
/// primitives by their IDL keyword, class and interface types as `cs<Name>`.
struct MethodDescriptor {
    std::string alias;
    std::vector<std::string> params;
    std::string return_type;

    std::size_t arity() const { return params.size(); }
    friend bool operator==(const MethodDescriptor&, const MethodDescriptor&) = default;
    friend auto operator<=>(const MethodDescriptor&, const MethodDescriptor&) = default;
};

enum class TypeSource { class_, interface };

struct StructuralType {
    std::string name;    // cs<Name>
    TypeSource kind = TypeSource::class_;
    std::string source;  // IDL declaration it was generated from
    std::vector<MethodDescriptor> methods;

    const MethodDescriptor* find(std::string_view alias) const;
    friend bool operator==(const StructuralType&, const StructuralType&) = default;
};

struct WrapperClass {
    std::string name;
    std::string exposes;
    std::string source;
    friend bool operator==(const WrapperClass&, const WrapperClass&) = default;
};

struct ConstructorFn {
    std::string alias;
    std::string target_class;
    std::vector<std::string> params;
    bool via_stub = false;
    friend bool operator==(const ConstructorFn&, const ConstructorFn&) = default;
};

struct CoercionFn {
    std::string name;    // cs<Class>_of_top
    std::string target;  // cs<Class>
    friend bool operator==(const CoercionFn&, const CoercionFn&) = default;
};

/// The two halves generated for a `[callback]` class: a nominal subclass
/// whose methods all call back into the structural world, and a structural
/// class whose default methods call the nominal base non-virtually.
struct StubPairDesc {
    std::string class_name;
    std::string foreign_stub;  // <Class>Stub
    std::string native_stub;   // callback_<snake_class>
    friend bool operator==(const StubPairDesc&, const StubPairDesc&) = default;
};

using SubtypeEdge = std::pair<std::string, std::string>;

struct WrapperManifest {
    std::string package;
    std::vector<StructuralType> types;
    std::vector<WrapperClass> wrappers;
    std::vector<ConstructorFn> constructors;
    std::vector<CoercionFn> coercions;
    std::vector<StubPairDesc> stub_pairs;
    std::vector<SubtypeEdge> subtype_edges;

    const StructuralType* find_type(std::string_view name) const;
    const StructuralType* type_of_class(std::string_view class_name) const;
    const WrapperClass* wrapper_of(std::string_view decl_name) const;
    const ConstructorFn* find_constructor(std::string_view alias) const;
    const CoercionFn* find_coercion(std::string_view name) const;
    const StubPairDesc* stub_pair_of(std::string_view class_name) const;
    /// Nominal parent of a class as recorded by the class-to-class edges.
    std::optional<std::string> parent_class(std::string_view class_name) const;

    friend bool operator==(const WrapperManifest&, const WrapperManifest&) = default;
};

class ManifestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string structural_name(std::string_view decl_name);
std::string structural_spelling(const TypeRef& type);
std::string snake_case(std::string_view name);
std::string coercion_name(std::string_view class_name);
std::string foreign_stub_name(std::string_view class_name);
std::string native_stub_name(std::string_view class_name);
std::string wrapper_name(std::string_view class_name);

WrapperManifest gen_manifest(const ClassGraph& graph);

/// Method set of a structural type, `top` included (empty).
/// Throws std::invalid_argument for unknown names.
const std::vector<MethodDescriptor>& structural_signature(const WrapperManifest& manifest,
                                                          std::string_view type_name);

/// Canonical `.bridge.json` text: sorted keys, two-space indent, trailing newline.
std::string emit_manifest(const WrapperManifest& manifest);

/// Throws ManifestError on malformed or inconsistent input.
WrapperManifest parse_manifest(std::string_view text);

} // namespace idlb
