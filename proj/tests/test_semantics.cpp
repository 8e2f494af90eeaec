#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace idlb;
using testkit::codes;
using testkit::resolve_ok;

namespace {

ResolveResult resolve_src(std::string_view src) { return resolve(testkit::parse_ok(src)); }

bool has_code(std::string_view src, const std::string& code) {
    auto c = codes(resolve_src(src));
    return std::find(c.begin(), c.end(), code) != c.end();
}

std::vector<std::string> aliases(const std::vector<ResolvedMethod>& closure) {
    std::vector<std::string> out;
    for (const auto& m : closure) {
        out.push_back(m.alias);
    }
    return out;
}

} // namespace

TEST_CASE("resolve: points graph") {
    auto g = resolve_ok(testkit::read_data("p.idl"));
    CHECK(g.package == "mypack");
    CHECK(g.class_count() == 2);
    CHECK(g.interface_count() == 1);
    CHECK(g.order == std::vector<std::string>{"Point", "Colored", "ColoredPoint"});
    CHECK(g.roots == std::vector<std::string>{"Point"});

    const auto* cp = g.find_class("ColoredPoint");
    REQUIRE(cp);
    CHECK(cp->parent == "Point");
    CHECK(cp->interfaces == std::vector<std::string>{"Colored"});
    CHECK(cp->ctor_aliases == std::vector<std::string>{"default_colored_point", "colored_point"});
    CHECK(aliases(cp->closure) == std::vector<std::string>{"moveTo", "toString", "display", "equals",
                                                           "equals_pc", "getColor", "setColor"});
    CHECK(cp->closure[4].declared_name == "equals");
    CHECK(cp->closure[5].origin == "Colored");
    CHECK(cp->closure[0].origin == "Point");

    auto fields = all_fields(g, "ColoredPoint");
    REQUIRE(fields.size() == 2);
    CHECK(fields[0].name == "x");
}

TEST_CASE("resolve: interface methods are deferred only for callback classes") {
    auto r = resolve(testkit::parse_ok(testkit::read_data("p_basic.idl")));
    CHECK_FALSE(r.ok());
    CHECK(codes(r) == std::vector<std::string>{"unimplemented-interface-method",
                                               "unimplemented-interface-method"});
    CHECK(r.diagnostics[0].span.line == 17);
}

TEST_CASE("resolve: override keeps the inherited position") {
    auto g = resolve_ok("package m; class A { void f(); int g(); } class B extends A { void h(); int g(); }");
    const auto& c = g.find_class("B")->closure;
    CHECK(aliases(c) == std::vector<std::string>{"f", "g", "h"});
    CHECK(c[1].overridden);
    CHECK(c[1].origin == "B");
    CHECK_FALSE(c[0].overridden);
}

TEST_CASE("resolve: implementing by inheritance") {
    auto g = resolve_ok("package m; interface I { int f(); } class A { int f(); } class B extends A implements I { }");
    CHECK(aliases(g.find_class("B")->closure) == std::vector<std::string>{"f"});
    CHECK(subtype_of(g, "B", "I"));
}

TEST_CASE("resolve: error codes") {
    CHECK(has_code("package m; class A { } class A { }", "duplicate-declaration"));
    CHECK(has_code("package m; class A extends B { }", "unresolved-name"));
    CHECK(has_code("package m; class A implements J { }", "unresolved-name"));
    CHECK(has_code("package m; interface I { } class A extends I { }", "extends-interface"));
    CHECK(has_code("package m; class B { } class A implements B { }", "implements-class"));
    CHECK(has_code("package m; class A extends B { } class B extends A { }", "inheritance-cycle"));
    CHECK(has_code("package m; class A extends A { }", "inheritance-cycle"));
    CHECK(has_code("package m; class A { void f(Q); }", "unresolved-type"));
    CHECK(has_code("package m; class A { Q x; }", "unresolved-type"));
    CHECK(has_code(testkit::read_data("overload.idl"), "overload-without-alias"));
    CHECK(has_code("package m; class A { int f(); } class B extends A { string f(int); }",
                   "overload-without-alias"));
    CHECK(has_code("package m; class A { [name g] void f(); void g(); }", "duplicate-alias"));
    CHECK(has_code("package m; interface I { string c(); } class A implements I { int c(); }",
                   "interface-signature-mismatch"));
    CHECK(has_code("package m; interface I { string c(); } class A implements I { }",
                   "unimplemented-interface-method"));
    CHECK(has_code("package m; class A { int x; int x; }", "duplicate-field"));
    CHECK(has_code("package m; class A { int x; int get_x(); }", "accessor-collision"));
    CHECK(has_code("package m; class A { int x; } class B extends A { void set_x(int); }",
                   "accessor-collision"));
    CHECK(has_code("package m; class A { [name mk] <init>(); } class B { [name mk] <init>(int); }",
                   "duplicate-ctor-alias"));
}

TEST_CASE("resolve: aliasing resolves an overload") {
    auto g = resolve_ok("package m; class A { string f(); [name f_int] int f(int); }");
    CHECK(aliases(g.find_class("A")->closure) == std::vector<std::string>{"f", "f_int"});
}

TEST_CASE("resolve: diagnostics render with code") {
    auto r = resolve_src("package m;\nclass A extends Nope { }");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(render(r.diagnostics[0], "a.idl").rfind("a.idl:2:", 0) == 0);
    CHECK(render(r.diagnostics[0], "a.idl").find("error: unresolved-name: ") != std::string::npos);
}

TEST_CASE("subtype_of: points hierarchy") {
    auto g = resolve_ok(testkit::read_data("p.idl"));
    CHECK(subtype_of(g, "ColoredPoint", "Point"));
    CHECK(subtype_of(g, "ColoredPoint", "Colored"));
    CHECK(subtype_of(g, "Point", "Point"));
    CHECK_FALSE(subtype_of(g, "Point", "ColoredPoint"));
    CHECK_FALSE(subtype_of(g, "Point", "Colored"));
    CHECK_THROWS_AS(subtype_of(g, "Nope", "Point"), std::invalid_argument);
    CHECK_THROWS_AS(method_closure(g, "Nope"), std::invalid_argument);
}

TEST_CASE("property: subtype partial order and closure width over generated graphs") {
    testkit::Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        auto rg = testkit::random_graph(rng);
        auto r = resolve(rg.file);
        REQUIRE_MESSAGE(r.ok(), format_idl(rg.file));
        const auto& g = *r.graph;
        for (const auto& a : g.order) {
            CHECK(subtype_of(g, a, a));
            for (const auto& b : g.order) {
                const bool ab = subtype_of(g, a, b);
                CHECK(ab == testkit::reaches(rg, a, b));
                if (a != b && ab) {
                    CHECK_FALSE(subtype_of(g, b, a));
                }
                if (!ab) {
                    continue;
                }
                auto wide = aliases(method_closure(g, a));
                for (const auto& alias : aliases(method_closure(g, b))) {
                    CHECK(std::find(wide.begin(), wide.end(), alias) != wide.end());
                }
                for (const auto& c : g.order) {
                    if (subtype_of(g, b, c)) {
                        CHECK(subtype_of(g, a, c));
                    }
                }
            }
        }
    }
}
