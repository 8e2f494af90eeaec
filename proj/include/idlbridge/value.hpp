#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace idlb {

enum class WorldKind { nominal, structural };

std::string_view to_string(WorldKind world);

/// Handle to an object living in one of the two worlds.
struct ObjRef {
    WorldKind world = WorldKind::nominal;
    std::uint64_t id = 0;

    friend bool operator==(const ObjRef&, const ObjRef&) = default;
    friend auto operator<=>(const ObjRef&, const ObjRef&) = default;
};

struct ObjRefHash {
    std::size_t operator()(const ObjRef& ref) const noexcept {
        return std::hash<std::uint64_t>{}(ref.id * 2 + (ref.world == WorldKind::structural ? 1 : 0));
    }
};

struct Unit {
    friend bool operator==(Unit, Unit) { return true; }
};

struct ErrorPayload {
    std::string code;
    std::string message;
    friend bool operator==(const ErrorPayload&, const ErrorPayload&) = default;
};

class Value {
public:
    using Data = std::variant<Unit, std::int64_t, double, bool, std::string, ObjRef, ErrorPayload>;

    Value() = default;
    Value(Unit) {}
    Value(std::int64_t v) : data_(v) {}
    Value(int v) : data_(std::int64_t{v}) {}
    Value(double v) : data_(v) {}
    Value(bool v) : data_(v) {}
    Value(std::string v) : data_(std::move(v)) {}
    Value(const char* v) : data_(std::string(v)) {}
    Value(ObjRef v) : data_(v) {}
    Value(ErrorPayload v) : data_(std::move(v)) {}

    const Data& data() const { return data_; }

    bool is_unit() const { return std::holds_alternative<Unit>(data_); }
    bool is_object() const { return std::holds_alternative<ObjRef>(data_); }

    // Typed accessors raise a BridgeError `type-mismatch` on the wrong kind.
    std::int64_t as_int() const;
    double as_float() const;
    bool as_bool() const;
    const std::string& as_text() const;
    ObjRef as_object() const;

    /// "int", "string", "object", ...
    std::string_view type_name() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    Data data_;
};

/// Toplevel-style rendering: strings quoted, floats with a trailing dot.
std::string to_string(const Value& value);

enum class ErrorOrigin { nominal, structural, bridge };

std::string_view to_string(ErrorOrigin origin);

/// One boundary an error travelled through while unwinding.
struct Crossing {
    WorldKind from = WorldKind::structural;  // caller side
    WorldKind to = WorldKind::nominal;       // side that was called
    std::string method;
};

/// Error raised by either world or by the bridge. The payload is carried
/// unchanged across any number of boundary crossings; each crossing the
/// error unwinds through is appended to the trace.
class BridgeError : public std::exception {
public:
    BridgeError(ErrorOrigin origin, std::string code, Value payload);

    ErrorOrigin origin() const { return origin_; }
    const std::string& code() const { return code_; }
    const Value& payload() const { return payload_; }
    const std::vector<Crossing>& trace() const { return trace_; }

    void add_crossing(Crossing crossing) { trace_.push_back(std::move(crossing)); }

    const char* what() const noexcept override { return what_.c_str(); }

private:
    ErrorOrigin origin_;
    std::string code_;
    Value payload_;
    std::vector<Crossing> trace_;
    std::string what_;
};

/// A method body supplied by the host. An empty body marks an abstract
/// method (nominal world only).
template <typename World>
struct BasicMethodImpl {
    using Body = std::function<Value(World&, ObjRef self, std::span<const Value> args)>;

    std::size_t arity = 0;
    Body body;

    bool is_abstract() const { return !body; }
};

} // namespace idlb
