#pragma once

// Command-line front end. Each command returns a transcript so it can be
// tested without a process boundary.
//
// Exit codes: 0 success, 1 semantic or verification failure, 2 usage or
// I/O failure.

#include "idlbridge/demo.hpp"

#include <filesystem>
#include <iosfwd>

namespace idlb::cli {

using demo::Transcript;

Transcript cmd_check(const std::filesystem::path& idl_path);
Transcript cmd_gen(const std::filesystem::path& idl_path, const std::filesystem::path& out_path);
Transcript cmd_verify(const std::filesystem::path& manifest_path,
                      const std::filesystem::path& world_path, bool json = false);
Transcript cmd_demo(std::string_view name);

/// Parses argv, runs one subcommand, writes its transcript and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace idlb::cli
