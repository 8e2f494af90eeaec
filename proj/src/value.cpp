#include "idlbridge/value.hpp"

#include <cstdio>

namespace idlb {

std::string_view to_string(WorldKind world) {
    return world == WorldKind::nominal ? "nominal" : "structural";
}

std::string_view to_string(ErrorOrigin origin) {
    switch (origin) {
    case ErrorOrigin::nominal:
        return "nominal";
    case ErrorOrigin::structural:
        return "structural";
    case ErrorOrigin::bridge:
        return "bridge";
    }
    return "?";
}

namespace {

template <typename T>
const T& get_or_throw(const Value& value, std::string_view wanted) {
    if (const auto* v = std::get_if<T>(&value.data())) {
        return *v;
    }
    throw BridgeError(ErrorOrigin::bridge, "type-mismatch",
                      Value("expected " + std::string(wanted) + ", got " +
                            std::string(value.type_name())));
}

} // namespace

std::int64_t Value::as_int() const {
    return get_or_throw<std::int64_t>(*this, "int");
}

double Value::as_float() const {
    return get_or_throw<double>(*this, "float");
}

bool Value::as_bool() const {
    return get_or_throw<bool>(*this, "bool");
}

const std::string& Value::as_text() const {
    return get_or_throw<std::string>(*this, "string");
}

ObjRef Value::as_object() const {
    return get_or_throw<ObjRef>(*this, "object");
}

std::string_view Value::type_name() const {
    static constexpr std::string_view names[] = {"unit", "int", "float", "bool",
                                                 "string", "object", "error"};
    return names[data_.index()];
}

std::string to_string(const Value& value) {
    struct Printer {
        std::string operator()(Unit) const { return "()"; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            std::string s = buf;
            if (s.find_first_of(".eEn") == std::string::npos) {
                s += '.';
            }
            return s;
        }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return "\"" + v + "\""; }
        std::string operator()(ObjRef) const { return "<obj>"; }
        std::string operator()(const ErrorPayload& e) const {
            return "Error(" + e.code + ", \"" + e.message + "\")";
        }
    };
    return std::visit(Printer{}, value.data());
}

BridgeError::BridgeError(ErrorOrigin origin, std::string code, Value payload)
    : origin_(origin), code_(std::move(code)), payload_(std::move(payload)) {
    what_ = code_ + ": " +
            (std::holds_alternative<std::string>(payload_.data()) ? payload_.as_text()
                                                                  : to_string(payload_));
}

} // namespace idlb
