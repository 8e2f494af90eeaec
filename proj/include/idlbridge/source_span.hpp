#pragma once

#include <cstddef>
#include <string>

namespace idlb {

/// 1-based location of a token or declaration in IDL source text.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 1;
};

inline std::string to_string(const SourceSpan& span) {
    return std::to_string(span.line) + ":" + std::to_string(span.column);
}

} // namespace idlb
