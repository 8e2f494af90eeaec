#pragma once

// A record-of-methods object runtime. An object is its slots; a type is a
// method set; conformance is width subtyping. There is no class identity
// and therefore no downcast.
//
// A world is single-threaded; callers serialize access.

#include "idlbridge/manifest.hpp"
#include "idlbridge/value.hpp"
#include "idlbridge/world_export.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace idlb {

class StructuralWorld;
using StructuralMethod = BasicMethodImpl<StructuralWorld>;
using SlotTable = std::map<std::string, StructuralMethod, std::less<>>;

/// Named slot layout of generated structural classes (wrappers and
/// callback stubs). Only used for reflection and startup verification.
struct SlotTemplate {
    std::string name;
    std::vector<ExportedMember> slots;
};

class StructuralWorld {
public:
    ObjRef make_object(SlotTable slots, std::map<std::string, Value> state = {});

    Value invoke(ObjRef recv, std::string_view alias, std::span<const Value> args);

    /// Replaces a slot and returns the previous implementation.
    StructuralMethod replace_slot(ObjRef obj, std::string_view alias, StructuralMethod impl);

    bool has_slot(ObjRef obj, std::string_view alias) const;
    const StructuralMethod& slot(ObjRef obj, std::string_view alias) const;
    const SlotTable& slots(ObjRef obj) const;

    bool conforms(ObjRef obj, const std::vector<MethodDescriptor>& methods) const;
    bool conforms(ObjRef obj, const StructuralType& type) const { return conforms(obj, type.methods); }

    Value get_state(ObjRef obj, std::string_view name) const;
    void set_state(ObjRef obj, std::string_view name, Value value);
    const std::map<std::string, Value>& state(ObjRef obj) const;

    bool contains(ObjRef obj) const;
    std::size_t object_count() const { return objects_.size(); }

    void register_template(SlotTemplate tmpl);
    bool has_template(std::string_view name) const;
    WorldExport export_manifest() const;

private:
    struct Record {
        SlotTable slots;
        std::map<std::string, Value> state;
    };

    std::unordered_map<std::uint64_t, Record> objects_;
    std::vector<SlotTemplate> templates_;
    std::uint64_t next_id_ = 1;

    const Record& record(ObjRef obj) const;
    Record& record(ObjRef obj);
};

} // namespace idlb
