// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include "support.hpp"

#include "idlbridge/bridge.hpp"
#include "idlbridge/cli.hpp"
#include "idlbridge/demo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace idlb;

namespace {

using Args = std::span<const Value>;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects the first few failed expectations of one criterion.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 3) {
            failures_.push_back(what);
        }
        ok_ = ok_ && ok;
    }
    Outcome done(std::string summary) const {
        if (ok_) {
            return {true, std::move(summary)};
        }
        std::string detail;
        for (const auto& f : failures_) {
            detail += (detail.empty() ? "" : "; ") + f;
        }
        return {false, detail};
    }

private:
    bool ok_ = true;
    std::vector<std::string> failures_;
};

std::vector<std::string> result_lines(const demo::Transcript& t) {
    std::vector<std::string> out;
    for (const auto& line : t.lines) {
        if (line.rfind("- : ", 0) == 0) {
            out.push_back(line);
        }
    }
    return out;
}

demo::Transcript scenario(std::string_view name) {
    auto t = demo::run_scenario(name);
    if (!t) {
        throw std::runtime_error("no scenario " + std::string(name));
    }
    return *t;
}

Outcome inventory() {
    Checker c;
    auto t = cli::cmd_gen(testkit::data_path("p.idl"), std::filesystem::temp_directory_path() / "acceptance_p.bridge.json");
    c.expect(t.exit_code == 0, "gen exit " + std::to_string(t.exit_code));
    auto m = gen_manifest(testkit::resolve_ok(testkit::read_data("p.idl")));
    c.expect(m.types.size() == 3, "types " + std::to_string(m.types.size()));
    c.expect(m.wrappers.size() == 3, "wrappers " + std::to_string(m.wrappers.size()));
    c.expect(m.constructors.size() == 4, "constructors " + std::to_string(m.constructors.size()));
    c.expect(!t.lines.empty() && t.lines[0].rfind("generated: 3 types, 3 wrappers, 4 constructors", 0) == 0,
             "summary line");
    return c.done("3 types, 3 wrappers, 4 constructors");
}

Outcome session() {
    Checker c;
    auto t = scenario("points");
    auto r = result_lines(t);
    c.expect(t.exit_code == 0, "exit code");
    c.expect(r.size() == 6, "expected 6 results, got " + std::to_string(r.size()));
    if (r.size() == 6) {
        c.expect(r[0] == "- : string = \"(1,2)\"", r[0]);
        c.expect(r[1] == "- : string = \"(3,4):blue\"" || r[1] == "- : string = \"(3,4);blue\"", r[1]);
        c.expect(r[2] == "- : bool = false", "p#equals (pc :> csPoint): " + r[2]);
        c.expect(r[3] == "- : unit = ()", r[3]);
        c.expect(r[4] == "- : bool = true", "pc#equals p after moveTo: " + r[4]);
        c.expect(r[5] == "- : bool = false", "pc#equals_pc pc2: " + r[5]);
    }
    return c.done("\"(1,2)\", \"(3,4):blue\", false, true, false");
}

// Override that defers to what the slot did before.
StructuralMethod delegate(const StructuralMethod& prev) {
    return {prev.arity, [prev](StructuralWorld& s, ObjRef self, Args a) { return prev.body(s, self, a); }};
}

Outcome callback_divergence() {
    Checker c;
    auto r = result_lines(scenario("callback"));
    c.expect(r.size() >= 2, "missing results");
    if (r.size() >= 2) {
        c.expect(r[0] == "- : string = \"(6,7):green\"", r[0]);
        c.expect(r[1] == "- : string = \"(8,9):MLred\"", r[1]);
    }

    NominalWorld n;
    StructuralWorld s;
    demo::install_points_world(n);
    Bridge b(demo::compile(demo::points_idl()), n, s);
    c.expect(b.verify_startup().ok(), "verification");
    const auto& methods = b.manifest().type_of_class("ColoredPoint")->methods;
    const auto k = methods.size();
    auto other_p = b.wrap_new("point", {7, 7});
    auto other_cp = b.wrap_new("colored_point", {7, 7, "teal"});
    auto args_for = [&](const MethodDescriptor& m) {
        std::vector<Value> args;
        for (const auto& p : m.params) {
            if (p == "int") {
                args.emplace_back(2);
            } else if (p == "string") {
                args.emplace_back("teal");
            } else {
                args.emplace_back(p == "csPoint" ? other_p : other_cp);
            }
        }
        return args;
    };
    std::size_t invocations = 0, worst = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        auto obj = b.wrap_new("colored_point", {3, 4, "blue"}, Linkage::callback);
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::size_t{1} << i)) {
                b.override_slot(obj, methods[i].alias, delegate(s.slot(obj, methods[i].alias)));
            }
        }
        for (const auto& m : methods) {
            const auto before = b.total_crossings();
            try {
                b.bridged_invoke(obj, m.alias, args_for(m));
            } catch (const BridgeError& e) {
                c.expect(false, "mask " + std::to_string(mask) + " " + m.alias + ": " + e.code());
            }
            worst = std::max(worst, b.total_crossings() - before);
            ++invocations;
        }
    }
    c.expect(worst <= 10'000, "crossings " + std::to_string(worst));
    return c.done("\"(6,7):green\" / \"(8,9):MLred\"; " + std::to_string(std::size_t{1} << k) +
                  " override subsets (k=" + std::to_string(k) + "), " + std::to_string(invocations) +
                  " invocations, max " + std::to_string(worst) + " crossings");
}

Outcome multiple_inheritance() {
    Checker c;
    auto t = scenario("rectangles");
    c.expect(t.exit_code == 0, "exit code");

    NominalWorld n;
    StructuralWorld s;
    demo::install_rect_world(n);
    Bridge b(demo::compile(demo::rect_idl()), n, s);
    c.expect(b.verify_startup().ok(), "verification");
    auto p1 = b.wrap_new("point", {10, 10});
    auto p2 = b.wrap_new("point", {20, 20});
    auto ggr = b.multi_inherit({b.wrap_new("geom_rect", {p1, p2}), b.wrap_new("graph_rect", {p1, p2})}, {});
    // |20-10| * |20-10|, computed here rather than taken from the fixture
    const double expected = std::abs(20.0 - 10.0) * std::abs(20.0 - 10.0);
    const double area = b.bridged_invoke(ggr, "compute_area", {}).as_float();
    c.expect(std::abs(area - expected) <= 1e-9, "area " + std::to_string(area));
    const auto text = b.bridged_invoke(ggr, "toString", {});
    c.expect(text.as_text().find("GraphRectangle") != std::string::npos, to_string(text));
    c.expect(s.conforms(ggr, *b.manifest().find_type("csGeomRectangle")) &&
                 s.conforms(ggr, *b.manifest().find_type("csGraphRectangle")),
             "conformance to both parents");
    std::ostringstream area_text;
    area_text << area;
    return c.done("area=" + area_text.str() + " (|err| <= 1e-9), toString=" + text.as_text());
}

Outcome downcast() {
    Checker c;
    auto t = scenario("downcast");
    auto r = result_lines(t);
    c.expect(!r.empty() && r.back() == "- : string list = [\"(8,9):MLred\"; \"(6,7):green\"]", "mapped list");
    c.expect(t.text().find("val lc : csColoredPoint list = [<obj>; <obj>]") != std::string::npos, "lc");
    c.expect(t.text().find("Exception: coercion-failure") != std::string::npos, "plain point coercion");

    testkit::Rng rng(20260501);
    std::size_t checks = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto tree = testkit::random_tree(rng, 5);
        auto graph = testkit::resolve_ok(tree.idl);
        NominalWorld n;
        StructuralWorld s;
        testkit::synthesize_world(graph, n);
        Bridge b(gen_manifest(graph), n, s);
        c.expect(b.verify_startup().ok(), "verification of generated hierarchy");
        for (const auto& cls : tree.classes) {
            auto obj = b.coerce_up(b.wrap_new("new_" + cls, {}), "top");
            for (const auto& target : tree.classes) {
                const bool oracle = testkit::reaches_class(tree, cls, target);
                const auto code = testkit::error_code([&] { b.coerce_down(obj, coercion_name(target)); });
                c.expect(code == (oracle ? "" : "coercion-failure"),
                         cls + " to " + target + ": got '" + code + "'");
                ++checks;
            }
        }
    }
    return c.done("list of 2 coerced, plain Point rejected; " + std::to_string(checks) +
                  " coercions over 200 hierarchies agree with instance-of");
}

Outcome startup_verification() {
    Checker c;
    const auto manifest = testkit::data_path("p.bridge.json");
    c.expect(cli::cmd_verify(manifest, testkit::data_path("p.world.json")).exit_code == 0, "matching fixture");
    const std::pair<const char*, const char*> faults[] = {
        {"fault_missing_class.world.json", "missing-class ColoredPoint:"},
        {"fault_missing_method.world.json", "missing-method Point.display:"},
        {"fault_arity.world.json", "arity-mismatch Point.moveTo:"},
        {"fault_missing_ctor.world.json", "missing-ctor Point.default_point:"},
        {"fault_parent.world.json", "parent-mismatch ColoredPoint:"},
    };
    for (const auto& [file, subject] : faults) {
        auto t = cli::cmd_verify(manifest, testkit::data_path(file));
        c.expect(t.exit_code == 1, std::string(file) + " exit " + std::to_string(t.exit_code));
        c.expect(t.text().find(std::string("mismatch: ") + subject) != std::string::npos,
                 std::string(file) + " does not name " + subject);
    }

    NominalWorld n;
    StructuralWorld s;
    demo::install_points_world(n);
    Bridge b(demo::compile(demo::points_idl()), n, s);
    const ObjRef any{WorldKind::structural, 1};
    const std::vector<std::function<void()>> ops{
        [&] { b.wrap_new("point", {1, 2}); },
        [&] { b.wrap_new("colored_point", {1, 2, "red"}, Linkage::callback); },
        [&] { b.bridged_invoke(any, "toString", {}); },
        [&] { b.override_slot(any, "getColor", {0, {}}); },
        [&] { b.coerce_up(any, "top"); },
        [&] { b.coerce_down(any, "csPoint_of_top"); },
        [&] { b.multi_inherit({any}, {}); },
        [&] { b.reverse_expose("ColoredPoint", {}, {}); },
    };
    for (const auto& op : ops) {
        c.expect(testkit::error_code(op) == "verify-not-run", "operation ran before verification");
    }
    c.expect(n.object_count() == 0, "objects were created before verification");
    return c.done("5 faults exit 1 naming their subject, matching world exits 0, " +
                  std::to_string(ops.size()) + " operations refused before verification");
}

Outcome error_transparency() {
    Checker c;
    auto t = scenario("roundtrip");
    c.expect(t.text().find("Exception: pixel-out-of-range") != std::string::npos, "roundtrip transcript");

    NominalWorld n;
    StructuralWorld s;
    demo::install_roundtrip_world(n);
    Bridge b(demo::compile(demo::roundtrip_idl()), n, s);
    c.expect(b.verify_startup().ok(), "verification");
    std::optional<Value> raised;  // payload as seen right at the nominal raise site
    StructuralMethod compute{2, [&](StructuralWorld&, ObjRef, Args a) {
                                 try {
                                     b.bridged_invoke(a[1].as_object(), "drawPixel", {demo::display_size, 0, 1});
                                 } catch (const BridgeError& e) {
                                     raised = e.payload();
                                     throw;
                                 }
                                 return Value();
                             }};
    auto render = b.reverse_expose("Render", {{"compute", compute}}, {});
    auto display = b.wrap_new("display", {*b.structural_peer(render)});
    std::size_t crossings = 0;
    try {
        b.bridged_invoke(display, "chooseScene", {"broken.gml"});
        c.expect(false, "no error reached the caller");
    } catch (const BridgeError& e) {
        crossings = e.trace().size();
        c.expect(e.code() == "pixel-out-of-range", e.code());
        c.expect(e.origin() == ErrorOrigin::nominal, "origin");
        c.expect(raised.has_value() && *raised == e.payload(), "payload changed in transit");
        c.expect(crossings >= 2, "crossings " + std::to_string(crossings));
    }
    return c.done("pixel-out-of-range payload identical after " + std::to_string(crossings) + " crossings");
}

Outcome property_suites() {
    Checker c;
    testkit::Rng rng(1);

    for (int i = 0; i < 500; ++i) {
        auto f = testkit::random_idl_file(rng);
        auto back = parse_idl(format_idl(f));
        c.expect(back.ok() && *back.file == f, "round trip failed:\n" + format_idl(f));
    }

    std::size_t pairs = 0;
    for (int i = 0; i < 200; ++i) {
        auto rg = testkit::random_graph(rng);
        auto r = resolve(rg.file);
        c.expect(r.ok(), "generated graph did not resolve");
        if (!r.ok()) {
            continue;
        }
        const auto& g = *r.graph;
        for (const auto& a : g.order) {
            c.expect(subtype_of(g, a, a), "reflexivity " + a);
            for (const auto& b : g.order) {
                const bool ab = subtype_of(g, a, b);
                c.expect(ab == testkit::reaches(rg, a, b), "edge closure " + a + " <: " + b);
                c.expect(!(ab && a != b && subtype_of(g, b, a)), "antisymmetry " + a + ", " + b);
                for (const auto& z : g.order) {
                    c.expect(!(ab && subtype_of(g, b, z)) || subtype_of(g, a, z), "transitivity");
                }
                if (ab) {
                    const auto& wide = method_closure(g, a);
                    for (const auto& m : method_closure(g, b)) {
                        c.expect(std::any_of(wide.begin(), wide.end(),
                                             [&](const ResolvedMethod& w) { return w.alias == m.alias; }),
                                 "closure width " + a + " lacks " + m.alias);
                    }
                }
                ++pairs;
            }
        }
        auto m = gen_manifest(g);
        auto text = emit_manifest(m);
        c.expect(parse_manifest(text) == m && emit_manifest(parse_manifest(text)) == text, "manifest round trip");
    }

    std::size_t calls = 0;
    for (int trial = 0; trial < 200; ++trial) {
        NominalWorld w;
        const int depth = testkit::pick(rng, 1, 5);
        std::vector<std::set<std::string>> declares;
        for (int d = 0; d < depth; ++d) {
            NominalClass cls;
            cls.name = "L" + std::to_string(d);
            if (d > 0) {
                cls.parent = "L" + std::to_string(d - 1);
            }
            std::set<std::string> own;
            for (const char* m : {"a", "b", "c"}) {
                if (testkit::coin(rng, d == 0 ? 1.0 : 0.4)) {
                    const std::string tag = cls.name + "." + m;
                    cls.vtable[m] = {0, [tag](NominalWorld&, ObjRef, Args) { return Value(tag); }};
                    own.insert(m);
                }
            }
            cls.ctors["make"] = {0, [](NominalWorld&, ObjRef, Args) { return Value(); }};
            declares.push_back(own);
            w.register_class(std::move(cls));
        }
        for (int k = 0; k < depth; ++k) {
            auto obj = w.new_object("L" + std::to_string(k), "make", {});
            for (const char* m : {"a", "b", "c"}) {
                int owner = k;
                while (!declares[owner].count(m)) {
                    --owner;
                }
                const Value expected("L" + std::to_string(owner) + "." + m);
                c.expect(w.invoke_virtual(obj, m, {}) == expected, "virtual dispatch");
                ++calls;
            }
        }
    }
    return c.done("500 round trips; " + std::to_string(pairs) + " subtype pairs over 200 graphs; " +
                  "200 manifest round trips; " + std::to_string(calls) + " dispatches on random chains");
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"inventory reproduction", inventory},
        {"session reproduction", session},
        {"callback divergence", callback_divergence},
        {"multiple inheritance", multiple_inheritance},
        {"downcast", downcast},
        {"startup verification", startup_verification},
        {"error transparency", error_transparency},
        {"property suites", property_suites},
    };
    int failed = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << index++ << " " << name << ": " << o.detail << "\n";
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failed" : std::string("acceptance: all passed"))
              << "\n";
    return failed ? 1 : 0;
}
