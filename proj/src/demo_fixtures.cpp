#include "idlbridge/demo.hpp"

#include "idlbridge/parser.hpp"

#include <cmath>
#include <stdexcept>

namespace idlb::demo {

namespace {

constexpr std::string_view points_source = R"(// Points and colored points.
package [assembly point] mypack;

class Point {
    int x;
    int y;
    [name default_point] <init> ();
    [name point] <init> (int,int);
    void moveTo(int,int);
    string toString();
    void display();
    boolean equals(Point);
}

interface Colored {
    string getColor();
    void setColor(string);
}

[callback] class ColoredPoint extends Point implements Colored {
    [name default_colored_point] <init> ();
    [name colored_point] <init> (int,int,string);
    [name equals_pc] boolean equals(ColoredPoint)
}
)";

constexpr std::string_view rect_source = R"(// Two unrelated rectangle hierarchies.
package mypack;

class Point {
    [name point] <init> (int, int);
}

class GraphRectangle {
    [name graph_rect] <init>(Point, Point);
    string toString();
}

class GeomRectangle {
    [name geom_rect] <init>(Point, Point);
    double compute_area();
}
)";

constexpr std::string_view roundtrip_source = R"(// Renderer implemented structurally, display implemented nominally.
package raytracer;

[callback] class Render {
    [name render] <init> ();
    void compute(string, Display);
}

class Display {
    [name display] <init> (Render);
    void chooseScene(string);
    void drawPixel(int, int, int);
    int pixelCount();
    int checksum();
}
)";

using Args = std::span<const Value>;

NominalMethod method(std::size_t arity, NominalMethod::Body body) {
    return {arity, std::move(body)};
}

void add_accessors(NominalClass& cls, const std::string& field) {
    cls.vtable["get_" + field] = method(0, [field](NominalWorld& w, ObjRef self, Args) {
        return w.get_field(self, field);
    });
    cls.vtable["set_" + field] = method(1, [field](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, field, a[0]);
        return Value();
    });
}

ObjRef object_arg(const Value& v, std::string_view method_name) {
    if (!v.is_object()) {
        throw BridgeError(ErrorOrigin::nominal, "type-mismatch",
                          Value(std::string(method_name) + " expects an object argument"));
    }
    return v.as_object();
}

std::string render_point(NominalWorld& w, ObjRef p) {
    return "(" + std::to_string(w.get_field(p, "x").as_int()) + "," +
           std::to_string(w.get_field(p, "y").as_int()) + ")";
}

} // namespace

std::string_view points_idl() {
    return points_source;
}

std::string_view rect_idl() {
    return rect_source;
}

std::string_view roundtrip_idl() {
    return roundtrip_source;
}

WrapperManifest compile(std::string_view idl_source) {
    auto parsed = parse_idl(idl_source);
    if (!parsed.ok()) {
        std::string msg = "IDL does not parse:";
        for (const auto& d : parsed.diagnostics) {
            msg += "\n  " + render(d, "<idl>");
        }
        throw std::runtime_error(msg);
    }
    auto resolved = resolve(*parsed.file);
    if (!resolved.ok()) {
        std::string msg = "IDL does not resolve:";
        for (const auto& d : resolved.diagnostics) {
            msg += "\n  " + render(d, "<idl>");
        }
        throw std::runtime_error(msg);
    }
    return gen_manifest(*resolved.graph);
}

void install_points_world(NominalWorld& world) {
    NominalClass point;
    point.name = "Point";
    point.fields = {{"x", Value(0)}, {"y", Value(0)}};
    point.ctors["default_point"] = method(0, [](NominalWorld&, ObjRef, Args) { return Value(); });
    point.ctors["point"] = method(2, [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "x", Value(a[0].as_int()));
        w.set_field(self, "y", Value(a[1].as_int()));
        return Value();
    });
    add_accessors(point, "x");
    add_accessors(point, "y");
    point.vtable["moveTo"] = method(2, [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "x", Value(a[0].as_int()));
        w.set_field(self, "y", Value(a[1].as_int()));
        return Value();
    });
    point.vtable["toString"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        return Value(render_point(w, self));
    });
    point.vtable["display"] = method(0, [](NominalWorld&, ObjRef, Args) { return Value(); });
    // Compares instance variables x and y only.
    point.vtable["equals"] = method(1, [](NominalWorld& w, ObjRef self, Args a) {
        const auto other = object_arg(a[0], "equals");
        return Value(w.get_field(self, "x") == w.get_field(other, "x") &&
                     w.get_field(self, "y") == w.get_field(other, "y"));
    });
    world.register_class(std::move(point));

    NominalClass colored;
    colored.name = "ColoredPoint";
    colored.parent = "Point";
    colored.fields = {{"color", Value("white")}};
    colored.ctors["default_colored_point"] = method(0, [](NominalWorld&, ObjRef, Args) { return Value(); });
    colored.ctors["colored_point"] = method(3, [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "x", Value(a[0].as_int()));
        w.set_field(self, "y", Value(a[1].as_int()));
        w.set_field(self, "color", Value(a[2].as_text()));
        return Value();
    });
    colored.vtable["getColor"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        return w.get_field(self, "color");
    });
    colored.vtable["setColor"] = method(1, [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "color", Value(a[0].as_text()));
        return Value();
    });
    // Superclass rendering plus a late-bound call to getColor on self.
    colored.vtable["toString"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        const auto base = w.invoke_nonvirtual(self, "Point", "toString", {});
        const auto color = w.invoke_virtual(self, "getColor", {});
        return Value(base.as_text() + ":" + color.as_text());
    });
    colored.vtable["equals_pc"] = method(1, [](NominalWorld& w, ObjRef self, Args a) {
        const auto other = object_arg(a[0], "equals_pc");
        if (!w.instance_of(other, "ColoredPoint")) {
            return Value(false);
        }
        return Value(w.get_field(self, "x") == w.get_field(other, "x") &&
                     w.get_field(self, "y") == w.get_field(other, "y") &&
                     w.get_field(self, "color") == w.get_field(other, "color"));
    });
    world.register_class(std::move(colored));
}

void install_rect_world(NominalWorld& world) {
    NominalClass point;
    point.name = "Point";
    point.fields = {{"x", Value(0)}, {"y", Value(0)}};
    point.ctors["point"] = method(2, [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "x", Value(a[0].as_int()));
        w.set_field(self, "y", Value(a[1].as_int()));
        return Value();
    });
    world.register_class(std::move(point));

    auto store_corners = [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "p1", Value(object_arg(a[0], "rectangle")));
        w.set_field(self, "p2", Value(object_arg(a[1], "rectangle")));
        return Value();
    };

    NominalClass graph;
    graph.name = "GraphRectangle";
    graph.fields = {{"p1", Value()}, {"p2", Value()}};
    graph.ctors["graph_rect"] = method(2, store_corners);
    graph.vtable["toString"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        return Value("GraphRectangle(" + render_point(w, w.get_field(self, "p1").as_object()) + "," +
                     render_point(w, w.get_field(self, "p2").as_object()) + ")");
    });
    world.register_class(std::move(graph));

    NominalClass geom;
    geom.name = "GeomRectangle";
    geom.fields = {{"p1", Value()}, {"p2", Value()}};
    geom.ctors["geom_rect"] = method(2, store_corners);
    geom.vtable["compute_area"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        const auto p1 = w.get_field(self, "p1").as_object();
        const auto p2 = w.get_field(self, "p2").as_object();
        const auto dx = w.get_field(p2, "x").as_int() - w.get_field(p1, "x").as_int();
        const auto dy = w.get_field(p2, "y").as_int() - w.get_field(p1, "y").as_int();
        return Value(std::fabs(static_cast<double>(dx)) * std::fabs(static_cast<double>(dy)));
    });
    world.register_class(std::move(geom));
}

void install_roundtrip_world(NominalWorld& world) {
    NominalClass render;
    render.name = "Render";
    render.ctors["render"] = method(0, [](NominalWorld&, ObjRef, Args) { return Value(); });
    render.vtable["compute"] = NominalMethod{2, {}};
    world.register_class(std::move(render));

    NominalClass display;
    display.name = "Display";
    display.fields = {{"render", Value()}, {"pixels", Value(0)}, {"checksum", Value(0)}};
    display.ctors["display"] = method(1, [](NominalWorld& w, ObjRef self, Args a) {
        w.set_field(self, "render", Value(object_arg(a[0], "display")));
        return Value();
    });
    display.vtable["chooseScene"] = method(1, [](NominalWorld& w, ObjRef self, Args a) {
        const auto render_ref = w.get_field(self, "render").as_object();
        const Value args[] = {a[0], Value(self)};
        return w.invoke_virtual(render_ref, "compute", args);
    });
    display.vtable["drawPixel"] = method(3, [](NominalWorld& w, ObjRef self, Args a) {
        const auto x = a[0].as_int();
        const auto y = a[1].as_int();
        if (x < 0 || y < 0 || x >= display_size || y >= display_size) {
            throw BridgeError(ErrorOrigin::nominal, "pixel-out-of-range",
                              Value("pixel (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") is outside the " + std::to_string(display_size) + "x" +
                                    std::to_string(display_size) + " display"));
        }
        w.set_field(self, "pixels", Value(w.get_field(self, "pixels").as_int() + 1));
        w.set_field(self, "checksum", Value(w.get_field(self, "checksum").as_int() + a[2].as_int()));
        return Value();
    });
    display.vtable["pixelCount"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        return w.get_field(self, "pixels");
    });
    display.vtable["checksum"] = method(0, [](NominalWorld& w, ObjRef self, Args) {
        return w.get_field(self, "checksum");
    });
    world.register_class(std::move(display));
}

WorldExport deployed_points_world() {
    NominalWorld nominal;
    StructuralWorld structural;
    install_points_world(nominal);
    Bridge bridge(compile(points_idl()), nominal, structural);
    return nominal.export_manifest();
}

} // namespace idlb::demo
