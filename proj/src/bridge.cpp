#include "idlbridge/bridge.hpp"

#include <algorithm>

namespace idlb {

namespace {

[[noreturn]] void fail(std::string code, std::string message) {
    throw BridgeError(ErrorOrigin::bridge, std::move(code), Value(std::move(message)));
}

ErrorOrigin origin_of(WorldKind world) {
    return world == WorldKind::nominal ? ErrorOrigin::nominal : ErrorOrigin::structural;
}

std::vector<ExportedMember> layout_of(const StructuralType& type) {
    std::vector<ExportedMember> slots;
    for (const auto& m : type.methods) {
        slots.push_back({m.alias, m.arity(), false});
    }
    return slots;
}

} // namespace

Bridge::Bridge(WrapperManifest manifest, NominalWorld& nominal, StructuralWorld& structural,
               BridgeOptions options)
    : manifest_(std::move(manifest)), nominal_(nominal), structural_(structural), options_(options) {
    install_generated();
}

void Bridge::install_generated() {
    for (const auto& stub : manifest_.stub_pairs) {
        const auto* type = manifest_.type_of_class(stub.class_name);
        // A missing base is reported by verification; nothing to derive from.
        if (!type || !nominal_.has_class(stub.class_name) || nominal_.has_class(stub.foreign_stub)) {
            continue;
        }
        NominalClass cls;
        cls.name = stub.foreign_stub;
        cls.parent = stub.class_name;
        for (const auto& m : type->methods) {
            const auto alias = m.alias;
            cls.vtable[alias] = NominalMethod{
                m.arity(), [this, alias](NominalWorld&, ObjRef self, std::span<const Value> args) {
                    const auto peer = structural_peer(self);
                    if (!peer) {
                        fail("no-peer", "callback stub instance has no structural peer");
                    }
                    const auto sargs = to_structural_values(args);
                    const Value result = cross(WorldKind::nominal, WorldKind::structural, alias,
                                               [&] { return structural_.invoke(*peer, alias, sargs); });
                    return to_nominal_value(result);
                }};
        }
        cls.ctors = nominal_.get_class(stub.class_name).ctors;
        nominal_.register_class(std::move(cls));
    }
    for (const auto& wrapper : manifest_.wrappers) {
        if (const auto* type = manifest_.find_type(wrapper.exposes)) {
            structural_.register_template({wrapper.name, layout_of(*type)});
        }
    }
    for (const auto& stub : manifest_.stub_pairs) {
        if (const auto* type = manifest_.type_of_class(stub.class_name)) {
            structural_.register_template({stub.native_stub, layout_of(*type)});
        }
    }
}

const VerificationReport& Bridge::verify_startup() {
    const auto nominal = nominal_.export_manifest();
    const auto structural = structural_.export_manifest();
    report_ = verify_against(manifest_, &nominal, &structural);
    verified_ = report_.ok();
    return report_;
}

void Bridge::require_verified() const {
    if (!verified_) {
        fail("verify-not-run", "startup verification has not succeeded for package '" +
                                   manifest_.package + "'");
    }
}

void Bridge::link(ObjRef nominal, ObjRef structural) {
    to_structural_[nominal] = structural;
    to_nominal_[structural] = nominal;
}

std::optional<ObjRef> Bridge::nominal_peer(ObjRef structural) const {
    auto it = to_nominal_.find(structural);
    return it == to_nominal_.end() ? std::nullopt : std::optional(it->second);
}

std::optional<ObjRef> Bridge::structural_peer(ObjRef nominal) const {
    auto it = to_structural_.find(nominal);
    return it == to_structural_.end() ? std::nullopt : std::optional(it->second);
}

namespace {

// Marks a public operation so the crossing budget counts per outermost call.
struct OperationScope {
    std::size_t& ops;
    OperationScope(std::size_t& ops_depth, std::size_t crossing_depth, std::size_t& counter)
        : ops(ops_depth) {
        if (ops == 0 && crossing_depth == 0) {
            counter = 0;
        }
        ++ops;
    }
    ~OperationScope() { --ops; }
};

} // namespace

template <typename Fn>
Value Bridge::cross(WorldKind from, WorldKind to, std::string_view method, Fn&& fn) {
    if (depth_ == 0 && operation_depth_ == 0) {
        crossings_in_operation_ = 0;
    }
    if (++crossings_in_operation_ > options_.crossing_budget) {
        fail("crossing-budget-exceeded",
             "more than " + std::to_string(options_.crossing_budget) +
                 " boundary crossings in one operation (at '" + std::string(method) + "')");
    }
    if (depth_ >= options_.nesting_limit) {
        fail("crossing-depth-exceeded",
             "more than " + std::to_string(options_.nesting_limit) +
                 " nested boundary crossings (at '" + std::string(method) + "')");
    }
    ++total_crossings_;
    ++depth_;
    struct DepthGuard {
        std::size_t& depth;
        ~DepthGuard() { --depth; }
    } guard{depth_};
    try {
        return fn();
    } catch (BridgeError& e) {
        e.add_crossing({from, to, std::string(method)});
        throw;
    } catch (const std::exception& e) {
        BridgeError wrapped(origin_of(to), "host-exception", Value(std::string(e.what())));
        wrapped.add_crossing({from, to, std::string(method)});
        throw wrapped;
    }
}

Value Bridge::to_nominal_value(const Value& v) const {
    if (const auto* ref = std::get_if<ObjRef>(&v.data()); ref && ref->world == WorldKind::structural) {
        const auto peer = nominal_peer(*ref);
        if (!peer) {
            fail("no-peer", "structural object has no nominal peer and cannot cross the boundary");
        }
        return Value(*peer);
    }
    return v;
}

Value Bridge::to_structural_value(const Value& v) {
    if (const auto* ref = std::get_if<ObjRef>(&v.data()); ref && ref->world == WorldKind::nominal) {
        return Value(structural_view(*ref));
    }
    return v;
}

std::vector<Value> Bridge::to_nominal_values(std::span<const Value> args) const {
    std::vector<Value> out;
    out.reserve(args.size());
    for (const auto& a : args) {
        out.push_back(to_nominal_value(a));
    }
    return out;
}

std::vector<Value> Bridge::to_structural_values(std::span<const Value> args) {
    std::vector<Value> out;
    out.reserve(args.size());
    for (const auto& a : args) {
        out.push_back(to_structural_value(a));
    }
    return out;
}

const StructuralType& Bridge::class_type(std::string_view class_name) const {
    const auto* type = manifest_.type_of_class(class_name);
    if (!type) {
        fail("unknown-class", "manifest has no class '" + std::string(class_name) + "'");
    }
    return *type;
}

SlotTable Bridge::forwarding_slots(ObjRef nominal, const StructuralType& type,
                                   std::optional<std::string> nonvirtual_base) {
    SlotTable slots;
    for (const auto& m : type.methods) {
        const auto alias = m.alias;
        slots[alias] = StructuralMethod{
            m.arity(), [this, nominal, alias, nonvirtual_base](StructuralWorld&, ObjRef,
                                                              std::span<const Value> args) {
                const auto nargs = to_nominal_values(args);
                const Value result = cross(WorldKind::structural, WorldKind::nominal, alias, [&] {
                    return nonvirtual_base
                               ? nominal_.invoke_nonvirtual(nominal, *nonvirtual_base, alias, nargs)
                               : nominal_.invoke_virtual(nominal, alias, nargs);
                });
                return to_structural_value(result);
            }};
    }
    return slots;
}

ObjRef Bridge::structural_view(ObjRef nominal) {
    if (const auto peer = structural_peer(nominal)) {
        return *peer;
    }
    std::optional<std::string> cls = nominal_.runtime_class(nominal);
    while (cls && !manifest_.type_of_class(*cls)) {
        cls = nominal_.get_class(*cls).parent;
    }
    SlotTable slots;
    if (cls) {
        slots = forwarding_slots(nominal, class_type(*cls), std::nullopt);
    }
    const auto view = structural_.make_object(std::move(slots));
    link(nominal, view);
    return view;
}

ObjRef Bridge::wrap_new(std::string_view ctor_alias, std::vector<Value> args, Linkage linkage) {
    require_verified();
    OperationScope scope(operation_depth_, depth_, crossings_in_operation_);
    const auto* ctor = manifest_.find_constructor(ctor_alias);
    if (!ctor) {
        fail("unknown-ctor", "no constructor '" + std::string(ctor_alias) + "' in package '" +
                                 manifest_.package + "'");
    }
    if (args.size() != ctor->params.size()) {
        fail("arity-mismatch", "constructor '" + ctor->alias + "' expects " +
                                   std::to_string(ctor->params.size()) + " argument(s), got " +
                                   std::to_string(args.size()));
    }
    if (linkage == Linkage::callback) {
        if (!ctor->via_stub) {
            fail("not-a-callback-class",
                 "class '" + ctor->target_class + "' is not declared [callback]");
        }
        return new_stub_pair(*ctor, std::move(args), nullptr);
    }
    const auto nargs = to_nominal_values(args);
    const Value made = cross(WorldKind::structural, WorldKind::nominal, ctor->alias, [&] {
        return Value(nominal_.new_object(ctor->target_class, ctor->alias, nargs));
    });
    const ObjRef instance = made.as_object();
    const auto wrapper =
        structural_.make_object(forwarding_slots(instance, class_type(ctor->target_class), std::nullopt));
    link(instance, wrapper);
    return wrapper;
}

ObjRef Bridge::new_stub_pair(const ConstructorFn& ctor, std::vector<Value> args, const SlotTable* impls) {
    const auto* pair = manifest_.stub_pair_of(ctor.target_class);
    if (!pair) {
        fail("not-a-callback-class", "class '" + ctor.target_class + "' has no stub pair");
    }
    const auto& type = class_type(ctor.target_class);
    const auto nargs = to_nominal_values(args);
    ObjRef peer{};
    // The structural peer is linked before the constructor body runs, so
    // virtual calls made by the constructor already reach the overrides.
    cross(WorldKind::structural, WorldKind::nominal, ctor.alias, [&] {
        return Value(nominal_.new_object(pair->foreign_stub, ctor.alias, nargs, [&](ObjRef allocated) {
            auto slots = forwarding_slots(allocated, type, ctor.target_class);
            if (impls) {
                for (const auto& [alias, impl] : *impls) {
                    slots[alias] = impl;
                }
            }
            peer = structural_.make_object(std::move(slots));
            link(allocated, peer);
        }));
    });
    return peer;
}

void Bridge::override_slot(ObjRef obj, std::string_view alias, StructuralMethod impl) {
    require_verified();
    const auto& current = structural_.slot(obj, alias);
    if (current.arity != impl.arity) {
        fail("arity-mismatch", "override of '" + std::string(alias) + "' has arity " +
                                   std::to_string(impl.arity) + ", slot has " +
                                   std::to_string(current.arity));
    }
    structural_.replace_slot(obj, alias, std::move(impl));
}

Value Bridge::bridged_invoke(ObjRef obj, std::string_view alias, std::vector<Value> args) {
    require_verified();
    OperationScope scope(operation_depth_, depth_, crossings_in_operation_);
    return structural_.invoke(obj, alias, args);
}

ObjRef Bridge::coerce_up(ObjRef obj, std::string_view type_name) {
    require_verified();
    if (type_name != top_type && !manifest_.find_type(type_name)) {
        fail("unknown-type", "no structural type '" + std::string(type_name) + "'");
    }
    const auto& methods = structural_signature(manifest_, type_name);
    if (!structural_.conforms(obj, methods)) {
        std::string missing;
        for (const auto& m : methods) {
            if (!structural_.has_slot(obj, m.alias) || structural_.slot(obj, m.alias).arity != m.arity()) {
                missing = m.alias;
                break;
            }
        }
        fail("coercion-failure", "object does not conform to " + std::string(type_name) +
                                     " (no matching method '" + missing + "')");
    }
    return obj;
}

ObjRef Bridge::coerce_down(ObjRef obj, std::string_view coercion) {
    require_verified();
    const auto* fn = manifest_.find_coercion(coercion);
    if (!fn) {
        fail("unknown-coercion", "no coercion function '" + std::string(coercion) + "'");
    }
    const auto& target = *manifest_.find_type(fn->target);
    if (!structural_.contains(obj)) {
        structural_.slots(obj); // raises wrong-world / dangling-ref
    }
    const auto peer = nominal_peer(obj);
    if (!peer) {
        fail("no-peer", std::string(coercion) + ": object has no nominal peer to check");
    }
    if (!nominal_.instance_of(*peer, target.source)) {
        fail("coercion-failure", std::string(coercion) + ": runtime class " +
                                     nominal_.runtime_class(*peer) + " is not a " + target.source);
    }
    return structural_view(*peer);
}

ObjRef Bridge::multi_inherit(const std::vector<ObjRef>& parents, SlotTable overrides) {
    require_verified();
    SlotTable merged;
    std::map<std::string, Value> state;
    std::vector<std::string> collisions;
    for (const auto& parent : parents) {
        for (const auto& [alias, impl] : structural_.slots(parent)) {
            if (merged.count(alias)) {
                if (!overrides.count(alias) &&
                    std::find(collisions.begin(), collisions.end(), alias) == collisions.end()) {
                    collisions.push_back(alias);
                }
                continue;
            }
            merged[alias] = impl;
        }
        for (const auto& [key, value] : structural_.state(parent)) {
            state.emplace(key, value);
        }
    }
    if (!collisions.empty()) {
        std::string list;
        for (const auto& c : collisions) {
            list += (list.empty() ? "" : ", ") + c;
        }
        fail("alias-collision", "inherited methods share an alias with no override: " + list);
    }
    for (auto& [alias, impl] : overrides) {
        merged[alias] = std::move(impl);
    }
    return structural_.make_object(std::move(merged), std::move(state));
}

ObjRef Bridge::reverse_expose(std::string_view callback_class, SlotTable impls,
                              std::vector<Value> ctor_args) {
    require_verified();
    OperationScope scope(operation_depth_, depth_, crossings_in_operation_);
    if (!manifest_.stub_pair_of(callback_class)) {
        fail("unknown-callback-class", "'" + std::string(callback_class) + "' is not a [callback] class");
    }
    const auto& type = class_type(callback_class);
    for (const auto& [alias, impl] : impls) {
        const auto* m = type.find(alias);
        if (!m) {
            fail("no-such-slot", "'" + type.name + "' has no method '" + alias + "'");
        }
        if (m->arity() != impl.arity) {
            fail("arity-mismatch", "implementation of '" + alias + "' has arity " +
                                       std::to_string(impl.arity) + ", expected " +
                                       std::to_string(m->arity()));
        }
    }
    for (const auto& m : type.methods) {
        const auto owner = nominal_.defining_class(callback_class, m.alias);
        if (owner && nominal_.get_class(*owner).vtable.at(m.alias).is_abstract() && !impls.count(m.alias)) {
            fail("missing-impl", "'" + std::string(callback_class) + "." + m.alias +
                                     "' has no nominal body and no implementation was supplied");
        }
    }
    const ConstructorFn* chosen = nullptr;
    for (const auto& ctor : manifest_.constructors) {
        if (ctor.target_class == callback_class && ctor.params.size() == ctor_args.size()) {
            if (chosen) {
                fail("ambiguous-ctor", "several constructors of '" + std::string(callback_class) +
                                           "' take " + std::to_string(ctor_args.size()) + " argument(s)");
            }
            chosen = &ctor;
        }
    }
    if (!chosen) {
        fail("unknown-ctor", "no constructor of '" + std::string(callback_class) + "' takes " +
                                 std::to_string(ctor_args.size()) + " argument(s)");
    }
    const auto peer = new_stub_pair(*chosen, std::move(ctor_args), &impls);
    return *nominal_peer(peer);
}

} // namespace idlb
