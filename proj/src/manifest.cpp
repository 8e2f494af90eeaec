#include "idlbridge/manifest.hpp"

#include <algorithm>
#include <cctype>

namespace idlb {

namespace {

template <typename T, typename Pred>
const T* find_in(const std::vector<T>& items, Pred pred) {
    auto it = std::find_if(items.begin(), items.end(), pred);
    return it == items.end() ? nullptr : &*it;
}

} // namespace

const MethodDescriptor* StructuralType::find(std::string_view alias) const {
    return find_in(methods, [&](const MethodDescriptor& m) { return m.alias == alias; });
}

const StructuralType* WrapperManifest::find_type(std::string_view name) const {
    return find_in(types, [&](const StructuralType& t) { return t.name == name; });
}

const StructuralType* WrapperManifest::type_of_class(std::string_view class_name) const {
    return find_in(types, [&](const StructuralType& t) {
        return t.kind == TypeSource::class_ && t.source == class_name;
    });
}

const WrapperClass* WrapperManifest::wrapper_of(std::string_view decl_name) const {
    return find_in(wrappers, [&](const WrapperClass& w) { return w.source == decl_name; });
}

const ConstructorFn* WrapperManifest::find_constructor(std::string_view alias) const {
    return find_in(constructors, [&](const ConstructorFn& c) { return c.alias == alias; });
}

const CoercionFn* WrapperManifest::find_coercion(std::string_view name) const {
    return find_in(coercions, [&](const CoercionFn& c) { return c.name == name; });
}

const StubPairDesc* WrapperManifest::stub_pair_of(std::string_view class_name) const {
    return find_in(stub_pairs, [&](const StubPairDesc& s) { return s.class_name == class_name; });
}

std::optional<std::string> WrapperManifest::parent_class(std::string_view class_name) const {
    const auto* sub = type_of_class(class_name);
    if (!sub) {
        return std::nullopt;
    }
    for (const auto& [from, to] : subtype_edges) {
        if (from != sub->name) {
            continue;
        }
        const auto* super = find_type(to);
        if (super && super->kind == TypeSource::class_) {
            return super->source;
        }
    }
    return std::nullopt;
}

std::string structural_name(std::string_view decl_name) {
    return "cs" + std::string(decl_name);
}

std::string structural_spelling(const TypeRef& type) {
    return type.kind == TypeKind::named ? structural_name(type.name) : to_string(type);
}

std::string snake_case(std::string_view name) {
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        const auto c = static_cast<unsigned char>(name[i]);
        if (std::isupper(c) && i > 0) {
            const auto prev = static_cast<unsigned char>(name[i - 1]);
            const bool next_lower =
                i + 1 < name.size() && std::islower(static_cast<unsigned char>(name[i + 1]));
            if (std::islower(prev) || std::isdigit(prev) || (std::isupper(prev) && next_lower)) {
                out += '_';
            }
        }
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

std::string coercion_name(std::string_view class_name) {
    return structural_name(class_name) + "_of_top";
}

std::string foreign_stub_name(std::string_view class_name) {
    return std::string(class_name) + "Stub";
}

std::string native_stub_name(std::string_view class_name) {
    return "callback_" + snake_case(class_name);
}

std::string wrapper_name(std::string_view class_name) {
    return "wrapper_" + snake_case(class_name);
}

namespace {

MethodDescriptor describe(const ResolvedMethod& m) {
    MethodDescriptor d;
    d.alias = m.alias;
    d.return_type = structural_spelling(m.return_type);
    for (const auto& p : m.params) {
        d.params.push_back(structural_spelling(p));
    }
    return d;
}

} // namespace

WrapperManifest gen_manifest(const ClassGraph& graph) {
    WrapperManifest manifest;
    manifest.package = graph.package;

    for (const auto& name : graph.order) {
        StructuralType type;
        type.name = structural_name(name);
        type.source = name;
        if (const auto* node = graph.find_class(name)) {
            type.kind = TypeSource::class_;
            for (const auto& field : all_fields(graph, name)) {
                const auto spelled = structural_spelling(field.type);
                type.methods.push_back({"get_" + field.name, {}, spelled});
                type.methods.push_back({"set_" + field.name, {spelled}, "void"});
            }
            for (const auto& m : node->closure) {
                type.methods.push_back(describe(m));
            }

            manifest.wrappers.push_back({wrapper_name(name), type.name, name});
            for (const auto& ctor : node->decl.ctors) {
                ConstructorFn fn;
                fn.alias = ctor.alias();
                fn.target_class = name;
                fn.via_stub = node->decl.callback;
                for (const auto& p : ctor.params) {
                    fn.params.push_back(structural_spelling(p));
                }
                manifest.constructors.push_back(std::move(fn));
            }
            manifest.coercions.push_back({coercion_name(name), type.name});
            if (node->decl.callback) {
                manifest.stub_pairs.push_back(
                    {name, foreign_stub_name(name), native_stub_name(name)});
            }

            if (node->parent) {
                manifest.subtype_edges.emplace_back(type.name, structural_name(*node->parent));
            }
            for (const auto& iface : node->interfaces) {
                manifest.subtype_edges.emplace_back(type.name, structural_name(iface));
            }
            if (!node->parent && node->interfaces.empty()) {
                manifest.subtype_edges.emplace_back(type.name, std::string(top_type));
            }
        } else {
            type.kind = TypeSource::interface;
            for (const auto& m : method_closure(graph, name)) {
                type.methods.push_back(describe(m));
            }
            // exposes objects that only surface through the interface type
            manifest.wrappers.push_back({wrapper_name(name), type.name, name});
            manifest.subtype_edges.emplace_back(type.name, std::string(top_type));
        }
        manifest.types.push_back(std::move(type));
    }
    return manifest;
}

const std::vector<MethodDescriptor>& structural_signature(const WrapperManifest& manifest,
                                                          std::string_view type_name) {
    static const std::vector<MethodDescriptor> empty;
    if (type_name == top_type) {
        return empty;
    }
    const auto* type = manifest.find_type(type_name);
    if (!type) {
        throw std::invalid_argument("unknown structural type '" + std::string(type_name) + "'");
    }
    return type->methods;
}

} // namespace idlb
