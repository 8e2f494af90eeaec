#pragma once

// A class-based object runtime: single inheritance, virtual dispatch along
// the parent chain, non-virtual calls pinned to an ancestor, and runtime
// instance-of. Method bodies are host callables.
//
// A world is single-threaded; callers serialize access.

#include "idlbridge/value.hpp"
#include "idlbridge/world_export.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace idlb {

class NominalWorld;
using NominalMethod = BasicMethodImpl<NominalWorld>;

struct NominalClass {
    std::string name;
    std::optional<std::string> parent;
    std::map<std::string, NominalMethod> vtable;  // methods declared by this class
    std::map<std::string, Value> fields;          // declared fields with defaults
    std::map<std::string, NominalMethod> ctors;
};

class NominalWorld {
public:
    /// Errors: duplicate-class, unknown-parent.
    void register_class(NominalClass cls);

    bool has_class(std::string_view name) const;
    const NominalClass& get_class(std::string_view name) const;
    const std::vector<std::string>& class_names() const { return order_; }

    /// Allocates an instance with default fields, calls `before_init` with
    /// the fresh reference, then runs the constructor body.
    ObjRef new_object(std::string_view cls, std::string_view ctor, std::span<const Value> args,
                      const std::function<void(ObjRef)>& before_init = {});

    Value invoke_virtual(ObjRef recv, std::string_view alias, std::span<const Value> args);
    Value invoke_nonvirtual(ObjRef recv, std::string_view defining_class, std::string_view alias,
                            std::span<const Value> args);

    bool instance_of(ObjRef obj, std::string_view cls) const;
    bool is_ancestor(std::string_view ancestor, std::string_view cls) const;
    const std::string& runtime_class(ObjRef obj) const;

    /// Class on `cls`'s chain (inclusive) that declares `alias`, if any.
    std::optional<std::string> defining_class(std::string_view cls, std::string_view alias) const;

    Value get_field(ObjRef obj, std::string_view name) const;
    void set_field(ObjRef obj, std::string_view name, Value value);

    std::size_t object_count() const { return objects_.size(); }

    WorldExport export_manifest() const;

private:
    struct Instance {
        std::string cls;
        std::map<std::string, Value, std::less<>> fields;
    };

    std::map<std::string, NominalClass, std::less<>> classes_;
    std::vector<std::string> order_;
    std::unordered_map<std::uint64_t, Instance> objects_;
    std::uint64_t next_id_ = 1;

    const Instance& instance(ObjRef obj) const;
    Instance& instance(ObjRef obj);
    Value call(const NominalMethod& method, ObjRef self, std::string_view what,
               std::span<const Value> args);
};

} // namespace idlb
