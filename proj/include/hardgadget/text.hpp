#pragma once

// Line/token helpers shared by all text formats.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace hardgadget {

/// Malformed input text. Carries the 1-based line number (0 when unknown).
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed text (or a programmatic value) that breaks a structural invariant.
class invalid_instance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

struct TextLine {
    std::size_t number = 0;
    bool comment = false;
    std::vector<std::string> tokens;
};

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Non-blank lines. Lines whose first token starts with '#' are flagged as comments and
/// keep their tokens (with the leading '#' token stripped).
inline std::vector<TextLine> read_lines(std::string_view text) {
    std::vector<TextLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto tokens = split_ws(text.substr(pos, end - pos));
        if (!tokens.empty()) {
            TextLine line;
            line.number = number;
            if (tokens.front().front() == '#') {
                line.comment = true;
                if (tokens.front() == "#") {
                    tokens.erase(tokens.begin());
                } else {
                    tokens.front().erase(0, 1);
                }
            }
            line.tokens = std::move(tokens);
            out.push_back(std::move(line));
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

inline std::vector<TextLine> content_lines(std::string_view text) {
    auto lines = read_lines(text);
    std::erase_if(lines, [](const TextLine& l) { return l.comment; });
    return lines;
}

inline long long parse_integer(const std::string& token, std::size_t line) {
    long long value = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw parse_error(line, "expected an integer, got '" + token + "'");
    }
    return value;
}

inline int parse_int(const std::string& token, std::size_t line) {
    long long v = parse_integer(token, line);
    if (v < -2147483647LL || v > 2147483647LL) {
        throw parse_error(line, "integer out of range: " + token);
    }
    return static_cast<int>(v);
}

inline double parse_real(const std::string& token, std::size_t line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw parse_error(line, "expected a number, got '" + token + "'");
    }
    return value;
}

inline void expect_tokens(const TextLine& line, std::size_t count, const char* what) {
    if (line.tokens.size() != count) {
        throw parse_error(line.number, std::string("malformed ") + what + " record");
    }
}

}  // namespace detail

/// printf-style "%.<digits>g" in the C locale.
inline std::string format_real(double value, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
}

}  // namespace hardgadget
