#pragma once

// Startup consistency checks between a manifest and the worlds it will run
// against. Mismatches are data; nothing here throws for a bad world.

#include "idlbridge/manifest.hpp"
#include "idlbridge/world_export.hpp"

#include <string>
#include <vector>

namespace idlb {

enum class MismatchKind { missing_class, missing_method, arity_mismatch, missing_ctor, parent_mismatch };

std::string_view to_string(MismatchKind kind);

struct Mismatch {
    MismatchKind kind;
    std::string subject;  // Class, Class.alias or Stub.alias
    std::string detail;
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
    std::vector<Mismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Checks every manifest class, constructor and method against the
/// nominal export: existence, parent edge and arity. For `[callback]`
/// classes the generated nominal stub is checked as well. Against the
/// structural export, the generated wrapper and callback-stub slot layouts
/// are checked against the structural types. Either export may be absent,
/// which skips that half.
VerificationReport verify_against(const WrapperManifest& manifest, const WorldExport* nominal,
                                  const WorldExport* structural);

std::string report_to_json(const VerificationReport& report);

/// One line per mismatch: `<kind> <subject>: <detail>`.
std::vector<std::string> report_lines(const VerificationReport& report);

} // namespace idlb
