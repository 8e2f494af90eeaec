#include "idlbridge/structural_world.hpp"

#include <algorithm>
#include <utility>

namespace idlb {

namespace {

[[noreturn]] void fail(std::string code, std::string message) {
    throw BridgeError(ErrorOrigin::structural, std::move(code), Value(std::move(message)));
}

} // namespace

ObjRef StructuralWorld::make_object(SlotTable slots, std::map<std::string, Value> state) {
    const ObjRef ref{WorldKind::structural, next_id_++};
    objects_.emplace(ref.id, Record{std::move(slots), std::move(state)});
    return ref;
}

const StructuralWorld::Record& StructuralWorld::record(ObjRef obj) const {
    if (obj.world != WorldKind::structural) {
        fail("wrong-world", "nominal object used where a structural object is required");
    }
    auto it = objects_.find(obj.id);
    if (it == objects_.end()) {
        fail("dangling-ref", "no structural object #" + std::to_string(obj.id));
    }
    return it->second;
}

StructuralWorld::Record& StructuralWorld::record(ObjRef obj) {
    return const_cast<Record&>(std::as_const(*this).record(obj));
}

bool StructuralWorld::contains(ObjRef obj) const {
    return obj.world == WorldKind::structural && objects_.count(obj.id) != 0;
}

Value StructuralWorld::invoke(ObjRef recv, std::string_view alias, std::span<const Value> args) {
    // Late binding: the slot is read at call time, and copied so that a
    // body replacing its own slot keeps running.
    const StructuralMethod method = slot(recv, alias);
    if (args.size() != method.arity) {
        fail("arity-mismatch", "method '" + std::string(alias) + "' expects " +
                                   std::to_string(method.arity) + " argument(s), got " +
                                   std::to_string(args.size()));
    }
    if (method.is_abstract()) {
        fail("no-such-slot", "slot '" + std::string(alias) + "' has no body");
    }
    return method.body(*this, recv, args);
}

StructuralMethod StructuralWorld::replace_slot(ObjRef obj, std::string_view alias,
                                               StructuralMethod impl) {
    auto& slots = record(obj).slots;
    auto it = slots.find(alias);
    if (it == slots.end()) {
        fail("no-such-slot", "object has no slot '" + std::string(alias) + "'");
    }
    return std::exchange(it->second, std::move(impl));
}

bool StructuralWorld::has_slot(ObjRef obj, std::string_view alias) const {
    const auto& slots = record(obj).slots;
    return slots.find(alias) != slots.end();
}

const StructuralMethod& StructuralWorld::slot(ObjRef obj, std::string_view alias) const {
    const auto& slots = record(obj).slots;
    auto it = slots.find(alias);
    if (it == slots.end()) {
        fail("no-such-slot", "object has no slot '" + std::string(alias) + "'");
    }
    return it->second;
}

const SlotTable& StructuralWorld::slots(ObjRef obj) const {
    return record(obj).slots;
}

bool StructuralWorld::conforms(ObjRef obj, const std::vector<MethodDescriptor>& methods) const {
    const auto& slots = record(obj).slots;
    return std::all_of(methods.begin(), methods.end(), [&](const MethodDescriptor& m) {
        auto it = slots.find(m.alias);
        return it != slots.end() && it->second.arity == m.arity();
    });
}

Value StructuralWorld::get_state(ObjRef obj, std::string_view name) const {
    const auto& state = record(obj).state;
    auto it = state.find(std::string(name));
    if (it == state.end()) {
        fail("no-such-field", "object has no state '" + std::string(name) + "'");
    }
    return it->second;
}

void StructuralWorld::set_state(ObjRef obj, std::string_view name, Value value) {
    record(obj).state[std::string(name)] = std::move(value);
}

const std::map<std::string, Value>& StructuralWorld::state(ObjRef obj) const {
    return record(obj).state;
}

void StructuralWorld::register_template(SlotTemplate tmpl) {
    auto it = std::find_if(templates_.begin(), templates_.end(),
                           [&](const SlotTemplate& t) { return t.name == tmpl.name; });
    if (it != templates_.end()) {
        *it = std::move(tmpl);
    } else {
        templates_.push_back(std::move(tmpl));
    }
}

bool StructuralWorld::has_template(std::string_view name) const {
    return std::any_of(templates_.begin(), templates_.end(),
                       [&](const SlotTemplate& t) { return t.name == name; });
}

WorldExport StructuralWorld::export_manifest() const {
    WorldExport out;
    out.kind = ExportKind::structural_types;
    for (const auto& t : templates_) {
        out.classes.push_back({t.name, std::nullopt, t.slots, {}});
    }
    return out;
}

} // namespace idlb
