#pragma once

// Executes a wrapper manifest between a nominal and a structural world.
//
// Plain wrappers are structural objects whose slots forward virtually to a
// nominal peer. For `[callback]` classes a stub pair links the two sides
// in both directions:
//
//   structural native stub --(non-virtual call to the base class)--> nominal
//   nominal foreign stub   --(callback on every virtual method)-----> structural
//
// so a slot overridden on the structural side is reached by nominal code
// calling the method on itself, and an un-overridden slot never re-enters
// the foreign stub.
//
// A bridge and its two worlds form one single-threaded unit. The bridge
// installs closures referring to itself into both worlds, so it must
// outlive every use of objects it created.

#include "idlbridge/manifest.hpp"
#include "idlbridge/nominal_world.hpp"
#include "idlbridge/structural_world.hpp"
#include "idlbridge/verify.hpp"

#include <optional>
#include <unordered_map>

namespace idlb {

enum class Linkage {
    plain,     // structural wrapper over a nominal instance
    callback,  // stub pair; only for constructors of [callback] classes
};

struct BridgeOptions {
    /// Maximum boundary crossings within one outermost operation.
    std::size_t crossing_budget = 10'000;
    /// Maximum crossings active at once. Each nested crossing holds native
    /// stack, so a callback loop is stopped here long before the budget.
    std::size_t nesting_limit = 1'000;
};

class Bridge {
public:
    /// Installs the generated nominal stubs and structural layouts. The
    /// worlds must already hold the classes the manifest describes.
    Bridge(WrapperManifest manifest, NominalWorld& nominal, StructuralWorld& structural,
           BridgeOptions options = {});

    Bridge(const Bridge&) = delete;
    Bridge& operator=(const Bridge&) = delete;

    /// Must succeed before any other operation is accepted.
    const VerificationReport& verify_startup();
    bool verified() const { return verified_; }

    ObjRef wrap_new(std::string_view ctor_alias, std::vector<Value> args,
                    Linkage linkage = Linkage::plain);

    /// Replaces a slot of a wrapper or stub-backed object. On stub-backed
    /// objects nominal-side virtual calls reach the new body too.
    void override_slot(ObjRef obj, std::string_view alias, StructuralMethod impl);

    Value bridged_invoke(ObjRef obj, std::string_view alias, std::vector<Value> args);

    /// `:>` coercion; identity on the reference. Errors: coercion-failure.
    ObjRef coerce_up(ObjRef obj, std::string_view type_name);

    /// `cs<Class>_of_top`; checked against the nominal peer's runtime class.
    /// Errors: coercion-failure, no-peer, unknown-coercion.
    ObjRef coerce_down(ObjRef obj, std::string_view coercion);

    /// Slot union of several structural objects plus overrides. Every
    /// inherited slot keeps forwarding to its own nominal peer.
    /// Errors: alias-collision when parents share an alias no override resolves.
    ObjRef multi_inherit(const std::vector<ObjRef>& parents, SlotTable overrides);

    /// Builds a foreign stub instance whose methods run the given structural
    /// bodies, for use by nominal code. Omitted methods fall back to the base
    /// class. The constructor is the unique one matching ctor_args' length.
    ObjRef reverse_expose(std::string_view callback_class, SlotTable impls,
                          std::vector<Value> ctor_args);

    std::optional<ObjRef> nominal_peer(ObjRef structural) const;
    std::optional<ObjRef> structural_peer(ObjRef nominal) const;
    std::size_t peer_count() const { return to_structural_.size(); }

    /// Structural view of a nominal object: its existing peer, or a new
    /// plain wrapper typed by the nearest ancestor the manifest describes.
    ObjRef structural_view(ObjRef nominal);

    /// Boundary crossings performed since construction.
    std::size_t total_crossings() const { return total_crossings_; }

    const WrapperManifest& manifest() const { return manifest_; }
    NominalWorld& nominal() { return nominal_; }
    StructuralWorld& structural() { return structural_; }

private:
    WrapperManifest manifest_;
    NominalWorld& nominal_;
    StructuralWorld& structural_;
    BridgeOptions options_;
    VerificationReport report_;
    bool verified_ = false;

    std::unordered_map<ObjRef, ObjRef, ObjRefHash> to_structural_;
    std::unordered_map<ObjRef, ObjRef, ObjRefHash> to_nominal_;

    std::size_t depth_ = 0;
    std::size_t operation_depth_ = 0;
    std::size_t crossings_in_operation_ = 0;
    std::size_t total_crossings_ = 0;

    void install_generated();
    void require_verified() const;
    void link(ObjRef nominal, ObjRef structural);

    template <typename Fn>
    Value cross(WorldKind from, WorldKind to, std::string_view method, Fn&& fn);

    Value to_nominal_value(const Value& v) const;
    Value to_structural_value(const Value& v);
    std::vector<Value> to_nominal_values(std::span<const Value> args) const;
    std::vector<Value> to_structural_values(std::span<const Value> args);

    const StructuralType& class_type(std::string_view class_name) const;
    SlotTable forwarding_slots(ObjRef nominal, const StructuralType& type,
                               std::optional<std::string> nonvirtual_base);
    ObjRef new_stub_pair(const ConstructorFn& ctor, std::vector<Value> args, const SlotTable* impls);
};

} // namespace idlb
