#include "idlbridge/demo.hpp"

#include <cstdio>
#include <functional>
#include <map>

namespace idlb::demo {

std::string Transcript::text() const {
    std::string out;
    for (const auto& line : lines) {
        out += line + "\n";
    }
    return out;
}

namespace {

using Args = std::span<const Value>;

std::string toplevel_type(const Value& v) {
    const auto name = v.type_name();
    return name == "object" ? "csObject" : std::string(name);
}

std::string result_line(const Value& v) {
    return "- : " + toplevel_type(v) + " = " + to_string(v);
}

std::string exception_line(const BridgeError& e) {
    const auto& payload = e.payload();
    const std::string text = std::holds_alternative<std::string>(payload.data())
                                 ? "\"" + payload.as_text() + "\""
                                 : to_string(payload);
    return "Exception: " + e.code() + " " + text + " (raised on " + std::string(to_string(e.origin())) +
           " side, " + std::to_string(e.trace().size()) + " boundary crossing" +
           (e.trace().size() == 1 ? "" : "s") + ")";
}

// Worlds, a bridge and the transcript for one scenario.
class Session {
public:
    Session(std::string_view idl, const std::function<void(NominalWorld&)>& install)
        : manifest_(compile(idl)) {
        install(nominal_);
        bridge_.emplace(manifest_, nominal_, structural_);
    }

    bool start() {
        const auto& report = bridge_->verify_startup();
        if (!report.ok()) {
            for (const auto& line : report_lines(report)) {
                t.errors.push_back("verify: " + line);
            }
            t.exit_code = 1;
            return false;
        }
        say("(* startup verification: ok *)");
        return true;
    }

    Bridge& bridge() { return *bridge_; }
    void say(std::string line) { t.lines.push_back(std::move(line)); }

    ObjRef let(const std::string& name, const std::string& shown_type, const std::string& expr,
               const std::function<ObjRef()>& make) {
        say("# let " + name + " = " + expr + ";;");
        const auto ref = make();
        say("val " + name + " : " + shown_type + " = <obj>");
        return ref;
    }

    Value call(const std::string& shown, ObjRef recv, std::string_view alias, std::vector<Value> args) {
        say("# " + shown + ";;");
        auto v = bridge_->bridged_invoke(recv, alias, std::move(args));
        say(result_line(v));
        return v;
    }

    Transcript t;

private:
    WrapperManifest manifest_;
    NominalWorld nominal_;
    StructuralWorld structural_;
    std::optional<Bridge> bridge_;
};

// Overrides getColor to prepend "ML" to the inherited result.
void prepend_ml(Bridge& bridge, ObjRef obj) {
    const auto inherited = bridge.structural().slot(obj, "getColor");
    bridge.override_slot(obj, "getColor",
                         StructuralMethod{0, [inherited](StructuralWorld& w, ObjRef self, Args a) {
                             return Value("ML" + inherited.body(w, self, a).as_text());
                         }});
}

struct ColoredPair {
    ObjRef wrong;  // inherits the plain wrapper
    ObjRef right;  // inherits the callback stub
};

ColoredPair make_ml_points(Session& s) {
    auto& b = s.bridge();
    s.say("(* wrong_ml_colored_point inherits colored_point and redefines getColor *)");
    const auto wml = s.let("wml_cp", "wrong_ml_colored_point", "new wrong_ml_colored_point 6 7 \"green\"", [&] {
        const auto o = b.wrap_new("colored_point", {6, 7, "green"});
        prepend_ml(b, o);
        return o;
    });
    s.say("(* ml_colored_point inherits callback_colored_point and redefines getColor *)");
    const auto ml = s.let("ml_cp", "ml_colored_point", "new ml_colored_point 8 9 \"red\"", [&] {
        const auto o = b.wrap_new("colored_point", {8, 9, "red"}, Linkage::callback);
        prepend_ml(b, o);
        return o;
    });
    return {wml, ml};
}

void points(Session& s) {
    auto& b = s.bridge();
    const auto p = s.let("p", "point", "new point 1 2", [&] { return b.wrap_new("point", {1, 2}); });
    s.let("p2", "default_point", "new default_point ()", [&] { return b.wrap_new("default_point", {}); });
    const auto pc = s.let("pc", "colored_point", "new colored_point 3 4 \"blue\"",
                          [&] { return b.wrap_new("colored_point", {3, 4, "blue"}); });
    const auto pc2 = s.let("pc2", "default_colored_point", "new default_colored_point ()",
                           [&] { return b.wrap_new("default_colored_point", {}); });
    s.call("p#toString ()", p, "toString", {});
    s.call("pc#toString ()", pc, "toString", {});
    s.call("p#equals (pc :> csPoint)", p, "equals", {b.coerce_up(pc, "csPoint")});
    s.call("pc#moveTo 1 2", pc, "moveTo", {1, 2});
    s.call("pc#equals p", pc, "equals", {p});
    s.call("pc#equals_pc pc2", pc, "equals_pc", {pc2});
}

void callback(Session& s) {
    const auto [wml, ml] = make_ml_points(s);
    s.call("wml_cp#toString ()", wml, "toString", {});
    s.call("ml_cp#toString ()", ml, "toString", {});
    s.call("wml_cp#getColor ()", wml, "getColor", {});
    s.call("ml_cp#getColor ()", ml, "getColor", {});
}

void rectangles(Session& s) {
    auto& b = s.bridge();
    const auto p1 = s.let("p1", "point", "new point 10 10", [&] { return b.wrap_new("point", {10, 10}); });
    const auto p2 = s.let("p2", "point", "new point 20 20", [&] { return b.wrap_new("point", {20, 20}); });
    s.say("(* geom_graph_rect inherits geom_rect and graph_rect *)");
    const auto ggr = s.let("ggr", "geom_graph_rect", "new geom_graph_rect p1 p2", [&] {
        const auto geo = b.wrap_new("geom_rect", {p1, p2});
        const auto graph = b.wrap_new("graph_rect", {p1, p2});
        return b.multi_inherit({geo, graph}, {});
    });
    const auto area = b.bridged_invoke(ggr, "compute_area", {}).as_float();
    char buf[64];
    std::snprintf(buf, sizeof buf, "area=%g", area);
    s.say(buf);
    s.say("toString=" + b.bridged_invoke(ggr, "toString", {}).as_text());
}

void downcast(Session& s) {
    auto& b = s.bridge();
    const auto [wml, ml] = make_ml_points(s);
    s.say("# let l = [(ml_cp :> csPoint); (wml_cp :> csPoint)];;");
    const std::vector<ObjRef> l{b.coerce_up(ml, "csPoint"), b.coerce_up(wml, "csPoint")};
    s.say("val l : csPoint list = [<obj>; <obj>]");
    s.say("# let lc = List.map (fun x -> csColoredPoint_of_top (x :> top)) l;;");
    std::vector<ObjRef> lc;
    for (const auto x : l) {
        lc.push_back(b.coerce_down(b.coerce_up(x, "top"), "csColoredPoint_of_top"));
    }
    s.say("val lc : csColoredPoint list = [<obj>; <obj>]");
    s.say("# List.map (fun x -> x#toString ()) lc;;");
    std::string rendered;
    for (const auto x : lc) {
        rendered += (rendered.empty() ? "" : "; ") + to_string(b.bridged_invoke(x, "toString", {}));
    }
    s.say("- : string list = [" + rendered + "]");
    s.say("# csColoredPoint_of_top (new point 1 2 :> top);;");
    try {
        b.coerce_down(b.coerce_up(b.wrap_new("point", {1, 2}), "top"), "csColoredPoint_of_top");
        s.say("- : csColoredPoint = <obj>");
    } catch (const BridgeError& e) {
        s.say(exception_line(e));
    }
}

void roundtrip(Session& s) {
    auto& b = s.bridge();
    s.say("(* Render.compute is implemented on the structural side *)");
    StructuralMethod compute{2, [](StructuralWorld& w, ObjRef, Args a) {
        const auto& scene = a[0].as_text();
        const auto display = a[1].as_object();
        for (int y = 0; y < display_size; ++y) {
            for (int x = 0; x < display_size; ++x) {
                const Value pixel[] = {x, y, 16 * y + x};
                w.invoke(display, "drawPixel", pixel);
            }
        }
        if (scene.find("broken") != std::string::npos) {
            const Value stray[] = {display_size, 0, 255};
            w.invoke(display, "drawPixel", stray);
        }
        return Value();
    }};
    ObjRef render_ref{};
    s.let("r", "render", "new render () with compute redefined", [&] {
        const auto nominal = b.reverse_expose("Render", {{"compute", compute}}, {});
        render_ref = b.structural_view(nominal);
        return render_ref;
    });
    const auto d = s.let("d", "display", "new display r", [&] { return b.wrap_new("display", {render_ref}); });
    s.call("d#chooseScene \"scene.gml\"", d, "chooseScene", {"scene.gml"});
    s.call("d#pixelCount ()", d, "pixelCount", {});
    s.call("d#checksum ()", d, "checksum", {});
    s.say("# d#chooseScene \"broken.gml\";;");
    try {
        b.bridged_invoke(d, "chooseScene", {"broken.gml"});
        s.say(result_line(Value()));
    } catch (const BridgeError& e) {
        s.say(exception_line(e));
    }
}

struct Scenario {
    std::string_view (*idl)();
    void (*install)(NominalWorld&);
    void (*run)(Session&);
};

const std::map<std::string, Scenario, std::less<>>& scenarios() {
    static const std::map<std::string, Scenario, std::less<>> table{
        {"points", {points_idl, install_points_world, points}},
        {"callback", {points_idl, install_points_world, callback}},
        {"rectangles", {rect_idl, install_rect_world, rectangles}},
        {"downcast", {points_idl, install_points_world, downcast}},
        {"roundtrip", {roundtrip_idl, install_roundtrip_world, roundtrip}},
    };
    return table;
}

} // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"points", "callback", "rectangles", "downcast", "roundtrip"};
    return names;
}

std::optional<Transcript> run_scenario(std::string_view name) {
    const auto it = scenarios().find(name);
    if (it == scenarios().end()) {
        return std::nullopt;
    }
    Session session(it->second.idl(), it->second.install);
    if (!session.start()) {
        return session.t;
    }
    try {
        it->second.run(session);
    } catch (const BridgeError& e) {
        // Uncaught at the outermost caller: report and fail the run.
        session.say(exception_line(e));
        session.t.exit_code = 1;
    }
    return session.t;
}

} // namespace idlb::demo
