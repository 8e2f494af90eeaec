#pragma once

// Built-in fixtures and scenarios: IDL sources, the nominal classes they
// describe, and scripted sessions that exercise a bridge over them.

#include "idlbridge/bridge.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idlb::demo {

std::string_view points_idl();
std::string_view rect_idl();
std::string_view roundtrip_idl();

/// parse + resolve + generate; throws std::runtime_error listing diagnostics.
WrapperManifest compile(std::string_view idl_source);

/// Point and ColoredPoint. toString renders "(x,y)" and ColoredPoint
/// appends ":" and the result of a virtual getColor call.
void install_points_world(NominalWorld& world);

/// Point, GraphRectangle and GeomRectangle.
void install_rect_world(NominalWorld& world);

/// An abstract Render (compute has no nominal body) and a 4x4 Display
/// that calls render.compute when a scene is chosen.
void install_roundtrip_world(NominalWorld& world);

inline constexpr int display_size = 4;

/// The points world after the generated nominal stubs are installed, as
/// exported for `verify`.
WorldExport deployed_points_world();

struct Transcript {
    std::vector<std::string> lines;   // standard output
    std::vector<std::string> errors;  // standard error
    int exit_code = 0;

    std::string text() const;
};

const std::vector<std::string>& scenario_names();

/// Empty when the name is unknown.
std::optional<Transcript> run_scenario(std::string_view name);

} // namespace idlb::demo
