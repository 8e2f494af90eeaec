#include "idlbridge/nominal_world.hpp"

#include <utility>

namespace idlb {

namespace {

[[noreturn]] void fail(std::string code, std::string message) {
    throw BridgeError(ErrorOrigin::nominal, std::move(code), Value(std::move(message)));
}

} // namespace

void NominalWorld::register_class(NominalClass cls) {
    if (classes_.count(cls.name)) {
        fail("duplicate-class", "class '" + cls.name + "' is already registered");
    }
    if (cls.parent && !classes_.count(*cls.parent)) {
        fail("unknown-parent", "class '" + cls.name + "' extends unregistered class '" +
                                   *cls.parent + "'");
    }
    order_.push_back(cls.name);
    auto name = cls.name;
    classes_.emplace(std::move(name), std::move(cls));
}

bool NominalWorld::has_class(std::string_view name) const {
    return classes_.find(name) != classes_.end();
}

const NominalClass& NominalWorld::get_class(std::string_view name) const {
    auto it = classes_.find(name);
    if (it == classes_.end()) {
        fail("unknown-class", "no class '" + std::string(name) + "'");
    }
    return it->second;
}

const NominalWorld::Instance& NominalWorld::instance(ObjRef obj) const {
    if (obj.world != WorldKind::nominal) {
        fail("wrong-world", "structural object used where a nominal object is required");
    }
    auto it = objects_.find(obj.id);
    if (it == objects_.end()) {
        fail("dangling-ref", "no nominal object #" + std::to_string(obj.id));
    }
    return it->second;
}

NominalWorld::Instance& NominalWorld::instance(ObjRef obj) {
    return const_cast<Instance&>(std::as_const(*this).instance(obj));
}

Value NominalWorld::call(const NominalMethod& method, ObjRef self, std::string_view what,
                         std::span<const Value> args) {
    if (args.size() != method.arity) {
        fail("arity-mismatch", std::string(what) + " expects " + std::to_string(method.arity) +
                                   " argument(s), got " + std::to_string(args.size()));
    }
    if (method.is_abstract()) {
        fail("abstract-method", std::string(what) + " has no body in the nominal world");
    }
    // Copy: the body may register classes or allocate, which must not
    // invalidate the callable being run.
    const auto body = method.body;
    return body(*this, self, args);
}

ObjRef NominalWorld::new_object(std::string_view cls, std::string_view ctor,
                                std::span<const Value> args,
                                const std::function<void(ObjRef)>& before_init) {
    const auto& klass = get_class(cls);
    auto ctor_it = klass.ctors.find(std::string(ctor));
    if (ctor_it == klass.ctors.end()) {
        fail("unknown-ctor", "class '" + klass.name + "' has no constructor '" + std::string(ctor) + "'");
    }
    if (args.size() != ctor_it->second.arity) {
        fail("arity-mismatch", "constructor '" + std::string(ctor) + "' expects " +
                                   std::to_string(ctor_it->second.arity) + " argument(s), got " +
                                   std::to_string(args.size()));
    }

    std::vector<const NominalClass*> chain;
    for (const auto* c = &klass; c; c = c->parent ? &get_class(*c->parent) : nullptr) {
        chain.push_back(c);
    }
    Instance inst{klass.name, {}};
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (const auto& [field, value] : (*it)->fields) {
            inst.fields[field] = value;
        }
    }
    const ObjRef ref{WorldKind::nominal, next_id_++};
    objects_.emplace(ref.id, std::move(inst));

    const auto ctor_impl = ctor_it->second;
    if (before_init) {
        before_init(ref);
    }
    call(ctor_impl, ref, "constructor '" + std::string(ctor) + "'", args);
    return ref;
}

std::optional<std::string> NominalWorld::defining_class(std::string_view cls,
                                                        std::string_view alias) const {
    for (const auto* c = &get_class(cls); c; c = c->parent ? &get_class(*c->parent) : nullptr) {
        if (c->vtable.count(std::string(alias))) {
            return c->name;
        }
    }
    return std::nullopt;
}

Value NominalWorld::invoke_virtual(ObjRef recv, std::string_view alias,
                                   std::span<const Value> args) {
    const auto cls = instance(recv).cls;
    const auto owner = defining_class(cls, alias);
    if (!owner) {
        fail("no-such-method", "'" + cls + "' has no method '" + std::string(alias) + "'");
    }
    const auto method = get_class(*owner).vtable.at(std::string(alias));
    return call(method, recv, *owner + "." + std::string(alias), args);
}

Value NominalWorld::invoke_nonvirtual(ObjRef recv, std::string_view defining_class_name,
                                      std::string_view alias, std::span<const Value> args) {
    const auto cls = instance(recv).cls;
    get_class(defining_class_name);
    if (!is_ancestor(defining_class_name, cls)) {
        fail("not-an-ancestor", "'" + std::string(defining_class_name) + "' is not on the chain of '" +
                                    cls + "'");
    }
    const auto owner = defining_class(defining_class_name, alias);
    if (!owner) {
        fail("no-such-method",
             "'" + std::string(defining_class_name) + "' has no method '" + std::string(alias) + "'");
    }
    const auto method = get_class(*owner).vtable.at(std::string(alias));
    return call(method, recv, *owner + "." + std::string(alias), args);
}

bool NominalWorld::is_ancestor(std::string_view ancestor, std::string_view cls) const {
    for (const auto* c = &get_class(cls); c; c = c->parent ? &get_class(*c->parent) : nullptr) {
        if (c->name == ancestor) {
            return true;
        }
    }
    return false;
}

bool NominalWorld::instance_of(ObjRef obj, std::string_view cls) const {
    get_class(cls);
    return is_ancestor(cls, instance(obj).cls);
}

const std::string& NominalWorld::runtime_class(ObjRef obj) const {
    return instance(obj).cls;
}

Value NominalWorld::get_field(ObjRef obj, std::string_view name) const {
    const auto& inst = instance(obj);
    auto it = inst.fields.find(name);
    if (it == inst.fields.end()) {
        fail("no-such-field", "'" + inst.cls + "' has no field '" + std::string(name) + "'");
    }
    return it->second;
}

void NominalWorld::set_field(ObjRef obj, std::string_view name, Value value) {
    auto& inst = instance(obj);
    auto it = inst.fields.find(name);
    if (it == inst.fields.end()) {
        fail("no-such-field", "'" + inst.cls + "' has no field '" + std::string(name) + "'");
    }
    it->second = std::move(value);
}

WorldExport NominalWorld::export_manifest() const {
    WorldExport out;
    out.kind = ExportKind::nominal;
    for (const auto& name : order_) {
        const auto& cls = classes_.find(name)->second;
        ExportedClass entry;
        entry.name = cls.name;
        entry.parent = cls.parent;
        for (const auto& [alias, m] : cls.vtable) {
            entry.methods.push_back({alias, m.arity, m.is_abstract()});
        }
        for (const auto& [alias, c] : cls.ctors) {
            entry.ctors.push_back({alias, c.arity, false});
        }
        out.classes.push_back(std::move(entry));
    }
    return out;
}

} // namespace idlb
