#pragma once

#include <string>
#include <string_view>

namespace gazetrace {

/// Fixed 6-decimal, locale-independent float formatting used by every output
/// artifact writer. Negative zero is normalized to "0.000000".
std::string format_fixed6(double v);

/// Shortest round-trip formatting (for synthetic input files, where the
/// reader must recover the exact double).
std::string format_shortest(double v);

/// Escapes `\` and `"` for quoted DOT/JSON string output.
std::string escape_quoted(std::string_view s);

}  // namespace gazetrace
