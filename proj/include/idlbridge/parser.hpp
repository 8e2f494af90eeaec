#pragma once

#include "idlbridge/ast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idlb {

struct SyntaxDiagnostic {
    SourceSpan span;
    std::string message;

    friend bool operator==(const SyntaxDiagnostic& a, const SyntaxDiagnostic& b) {
        return a.span.line == b.span.line && a.span.column == b.span.column &&
               a.span.length == b.span.length && a.message == b.message;
    }
};

/// `file:line:col: error: message`
std::string render(const SyntaxDiagnostic& diag, std::string_view file_name);

struct ParseResult {
    std::optional<IdlFile> file; // engaged iff diagnostics is empty
    std::vector<SyntaxDiagnostic> diagnostics;

    bool ok() const { return file.has_value(); }
};

/// Parses IDL source text. Errors are recovered at member and declaration
/// granularity so that one call reports every independent problem.
ParseResult parse_idl(std::string_view source);

/// Canonical text for a well-formed tree. parse_idl(format_idl(f)) == f.
std::string format_idl(const IdlFile& file);

} // namespace idlb
