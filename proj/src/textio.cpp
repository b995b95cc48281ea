#include "gazetrace/textio.hpp"

#include <charconv>
#include <cstring>

namespace gazetrace {

std::string format_fixed6(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    std::string out(buf, res.ptr);
    if (out == "-0.000000") out = "0.000000";
    return out;
}

std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string escape_quoted(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\' || c == '"') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace gazetrace
