#include "idlbridge/cli.hpp"

#include "idlbridge/parser.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace idlb::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string count(std::size_t n, std::string_view singular, std::string_view plural) {
    return std::to_string(n) + " " + std::string(n == 1 ? singular : plural);
}

// Parses and resolves; on failure the transcript carries the diagnostics.
std::optional<ClassGraph> load_graph(const std::filesystem::path& path, Transcript& t) {
    const auto source = read_file(path);
    if (!source) {
        t.errors.push_back(path.string() + ": error: cannot read file");
        t.exit_code = exit_usage;
        return std::nullopt;
    }
    const auto name = path.string();
    auto parsed = parse_idl(*source);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics) {
            t.errors.push_back(render(d, name));
        }
        t.exit_code = exit_failure;
        return std::nullopt;
    }
    auto resolved = resolve(*parsed.file);
    for (const auto& d : resolved.diagnostics) {
        t.errors.push_back(render(d, name));
    }
    if (!resolved.ok()) {
        t.exit_code = exit_failure;
        return std::nullopt;
    }
    return std::move(resolved.graph);
}

} // namespace

Transcript cmd_check(const std::filesystem::path& idl_path) {
    Transcript t;
    if (const auto graph = load_graph(idl_path, t)) {
        t.lines.push_back("ok: " + count(graph->class_count(), "class", "classes") + ", " +
                          count(graph->interface_count(), "interface", "interfaces"));
    }
    return t;
}

Transcript cmd_gen(const std::filesystem::path& idl_path, const std::filesystem::path& out_path) {
    Transcript t;
    const auto graph = load_graph(idl_path, t);
    if (!graph) {
        return t;
    }
    const auto manifest = gen_manifest(*graph);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << emit_manifest(manifest)) || !out.flush()) {
        t.errors.push_back(out_path.string() + ": error: cannot write manifest");
        t.exit_code = exit_usage;
        return t;
    }
    t.lines.push_back("generated: " + count(manifest.types.size(), "type", "types") + ", " +
                      count(manifest.wrappers.size(), "wrapper", "wrappers") + ", " +
                      count(manifest.constructors.size(), "constructor", "constructors") + ", " +
                      count(manifest.coercions.size(), "coercion", "coercions") + ", " +
                      count(manifest.stub_pairs.size(), "stub pair", "stub pairs"));
    return t;
}

Transcript cmd_verify(const std::filesystem::path& manifest_path,
                      const std::filesystem::path& world_path, bool json) {
    Transcript t;
    const auto manifest_text = read_file(manifest_path);
    const auto world_text = read_file(world_path);
    if (!manifest_text || !world_text) {
        t.errors.push_back((manifest_text ? world_path : manifest_path).string() +
                           ": error: cannot read file");
        t.exit_code = exit_usage;
        return t;
    }
    WrapperManifest manifest;
    WorldExport world;
    try {
        manifest = parse_manifest(*manifest_text);
    } catch (const ManifestError& e) {
        t.errors.push_back(manifest_path.string() + ": error: " + e.what());
        t.exit_code = exit_usage;
        return t;
    }
    try {
        world = parse_world_export(*world_text);
    } catch (const ManifestError& e) {
        t.errors.push_back(world_path.string() + ": error: " + e.what());
        t.exit_code = exit_usage;
        return t;
    }
    const auto report = world.kind == ExportKind::nominal ? verify_against(manifest, &world, nullptr)
                                                          : verify_against(manifest, nullptr, &world);
    if (json) {
        t.lines.push_back(report_to_json(report));
    } else {
        for (const auto& line : report_lines(report)) {
            t.lines.push_back("mismatch: " + line);
        }
        t.lines.push_back(report.ok() ? "verification ok"
                                      : "verification failed: " +
                                            count(report.mismatches.size(), "mismatch", "mismatches"));
    }
    t.exit_code = report.ok() ? exit_ok : exit_failure;
    return t;
}

Transcript cmd_demo(std::string_view name) {
    if (auto t = demo::run_scenario(name)) {
        return *t;
    }
    Transcript t;
    std::string known;
    for (const auto& n : demo::scenario_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    t.errors.push_back("error: unknown demo '" + std::string(name) + "' (known: " + known + ")");
    t.exit_code = exit_usage;
    return t;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"IDL compiler and object-model bridge", "idlbridge"};
    app.require_subcommand(1);

    std::string idl_path;
    std::string out_path;
    std::string manifest_path;
    std::string world_path;
    std::string demo_name;
    bool json = false;

    auto* check = app.add_subcommand("check", "Parse and resolve an IDL file");
    check->add_option("file", idl_path, "IDL source (.idl)")->required();

    auto* gen = app.add_subcommand("gen", "Generate a .bridge.json manifest from an IDL file");
    gen->add_option("file", idl_path, "IDL source (.idl)")->required();
    gen->add_option("-o,--output", out_path, "Manifest to write (.bridge.json)")->required();

    auto* verify = app.add_subcommand("verify", "Check a manifest against a world export");
    verify->add_option("manifest", manifest_path, "Manifest (.bridge.json)")->required();
    verify->add_option("world", world_path, "World export (.json)")->required();
    verify->add_flag("--json", json, "Print the report as JSON");

    auto* demo_cmd = app.add_subcommand("demo", "Run a built-in scenario");
    demo_cmd->add_option("name", demo_name, "points, callback, rectangles, downcast or roundtrip")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }

    Transcript t;
    if (*check) {
        t = cmd_check(idl_path);
    } else if (*gen) {
        t = cmd_gen(idl_path, out_path);
    } else if (*verify) {
        t = cmd_verify(manifest_path, world_path, json);
    } else {
        t = cmd_demo(demo_name);
    }
    for (const auto& line : t.errors) {
        err << line << "\n";
    }
    for (const auto& line : t.lines) {
        out << line;
        if (line.empty() || line.back() != '\n') {
            out << "\n";
        }
    }
    return t.exit_code;
}

} // namespace idlb::cli
