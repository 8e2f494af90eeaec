#include "idlbridge/verify.hpp"

#include <nlohmann/json.hpp>

#include <set>

namespace idlb {

std::string_view to_string(MismatchKind kind) {
    switch (kind) {
    case MismatchKind::missing_class:
        return "missing-class";
    case MismatchKind::missing_method:
        return "missing-method";
    case MismatchKind::arity_mismatch:
        return "arity-mismatch";
    case MismatchKind::missing_ctor:
        return "missing-ctor";
    case MismatchKind::parent_mismatch:
        return "parent-mismatch";
    }
    return "?";
}

namespace {

class Verifier {
public:
    Verifier(const WrapperManifest& manifest, const WorldExport& nominal)
        : manifest_(manifest), nominal_(nominal) {}

    VerificationReport run(bool check_nominal, const WorldExport* structural) {
        if (check_nominal) {
            for (const auto& type : manifest_.types) {
                if (type.kind == TypeSource::class_) {
                    check_class(type);
                }
            }
        }
        if (structural) {
            check_structural(*structural);
        }
        return std::move(report_);
    }

private:
    const WrapperManifest& manifest_;
    const WorldExport& nominal_;
    VerificationReport report_;

    void add(MismatchKind kind, std::string subject, std::string detail) {
        report_.mismatches.push_back({kind, std::move(subject), std::move(detail)});
    }

    // Walks the exported parent chain; the export is untrusted, so cycles
    // and dangling parents end the walk.
    const ExportedMember* lookup(const ExportedClass& start, std::string_view alias) const {
        std::set<std::string> seen;
        for (const auto* c = &start; c && seen.insert(c->name).second;
             c = c->parent ? nominal_.find(*c->parent) : nullptr) {
            if (const auto* m = c->find_method(alias)) {
                return m;
            }
        }
        return nullptr;
    }

    static std::string arity_detail(std::size_t expected, std::size_t found) {
        return "expected arity " + std::to_string(expected) + ", found " + std::to_string(found);
    }

    void check_class(const StructuralType& type) {
        const auto& name = type.source;
        const auto* cls = nominal_.find(name);
        if (!cls) {
            add(MismatchKind::missing_class, name, "class is not present in the nominal world");
            return;
        }
        const auto expected_parent = manifest_.parent_class(name);
        if (expected_parent != cls->parent) {
            add(MismatchKind::parent_mismatch, name,
                "expected parent " + expected_parent.value_or("(none)") + ", found " +
                    cls->parent.value_or("(none)"));
        }
        const auto* stub = manifest_.stub_pair_of(name);
        for (const auto& ctor : manifest_.constructors) {
            if (ctor.target_class != name) {
                continue;
            }
            const auto subject = name + "." + ctor.alias;
            const auto* found = cls->find_ctor(ctor.alias);
            if (!found) {
                add(MismatchKind::missing_ctor, subject, "constructor is not present");
            } else if (found->arity != ctor.params.size()) {
                add(MismatchKind::arity_mismatch, subject, arity_detail(ctor.params.size(), found->arity));
            }
        }
        const auto* parent_type = expected_parent ? manifest_.type_of_class(*expected_parent) : nullptr;
        for (const auto& method : type.methods) {
            // inherited and not redeclared here: reported once, on the parent
            if (parent_type && parent_type->find(method.alias) && !cls->find_method(method.alias)) {
                continue;
            }
            const auto subject = name + "." + method.alias;
            const auto* found = lookup(*cls, method.alias);
            if (!found) {
                add(MismatchKind::missing_method, subject, "method is not present");
            } else if (found->arity != method.arity()) {
                add(MismatchKind::arity_mismatch, subject, arity_detail(method.arity(), found->arity));
            } else if (found->abstract && !stub) {
                add(MismatchKind::missing_method, subject,
                    "method has no body and the class is not [callback]");
            }
        }
        if (stub) {
            check_foreign_stub(type, *stub);
        }
    }

    void check_foreign_stub(const StructuralType& type, const StubPairDesc& stub) {
        const auto* cls = nominal_.find(stub.foreign_stub);
        if (!cls) {
            add(MismatchKind::missing_class, stub.foreign_stub,
                "generated callback stub is not present in the nominal world");
            return;
        }
        if (cls->parent != stub.class_name) {
            add(MismatchKind::parent_mismatch, stub.foreign_stub,
                "expected parent " + stub.class_name + ", found " + cls->parent.value_or("(none)"));
        }
        // The stub overrides every method itself; inherited bodies would skip the callback.
        for (const auto& method : type.methods) {
            const auto subject = stub.foreign_stub + "." + method.alias;
            const auto* found = cls->find_method(method.alias);
            if (!found) {
                add(MismatchKind::missing_method, subject, "callback override is not present");
            } else if (found->arity != method.arity()) {
                add(MismatchKind::arity_mismatch, subject, arity_detail(method.arity(), found->arity));
            }
        }
        for (const auto& ctor : manifest_.constructors) {
            if (ctor.target_class != stub.class_name) {
                continue;
            }
            const auto subject = stub.foreign_stub + "." + ctor.alias;
            const auto* found = cls->find_ctor(ctor.alias);
            if (!found) {
                add(MismatchKind::missing_ctor, subject, "stub constructor is not present");
            } else if (found->arity != ctor.params.size()) {
                add(MismatchKind::arity_mismatch, subject, arity_detail(ctor.params.size(), found->arity));
            }
        }
    }

    void check_layout(const WorldExport& structural, const std::string& layout,
                      const StructuralType& type) {
        const auto* tmpl = structural.find(layout);
        if (!tmpl) {
            add(MismatchKind::missing_class, layout, "generated structural class is not present");
            return;
        }
        for (const auto& method : type.methods) {
            const auto subject = layout + "." + method.alias;
            const auto* found = tmpl->find_method(method.alias);
            if (!found) {
                add(MismatchKind::missing_method, subject, "slot is not present");
            } else if (found->arity != method.arity()) {
                add(MismatchKind::arity_mismatch, subject, arity_detail(method.arity(), found->arity));
            }
        }
    }

    void check_structural(const WorldExport& structural) {
        for (const auto& wrapper : manifest_.wrappers) {
            if (const auto* type = manifest_.find_type(wrapper.exposes)) {
                check_layout(structural, wrapper.name, *type);
            }
        }
        for (const auto& stub : manifest_.stub_pairs) {
            if (const auto* type = manifest_.type_of_class(stub.class_name)) {
                check_layout(structural, stub.native_stub, *type);
            }
        }
    }
};

} // namespace

VerificationReport verify_against(const WrapperManifest& manifest, const WorldExport* nominal,
                                  const WorldExport* structural) {
    static const WorldExport empty;
    return Verifier(manifest, nominal ? *nominal : empty).run(nominal != nullptr, structural);
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& m : report.mismatches) {
        mismatches.push_back({{"kind", to_string(m.kind)}, {"subject", m.subject}, {"detail", m.detail}});
    }
    nlohmann::json doc{{"ok", report.ok()}, {"mismatches", std::move(mismatches)}};
    return doc.dump(2) + "\n";
}

std::vector<std::string> report_lines(const VerificationReport& report) {
    std::vector<std::string> lines;
    for (const auto& m : report.mismatches) {
        lines.push_back(std::string(to_string(m.kind)) + " " + m.subject + ": " + m.detail);
    }
    return lines;
}

} // namespace idlb
