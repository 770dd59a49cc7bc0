#include "vlopt/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vlopt {

TomlValue TomlValue::string(std::string s) {
    TomlValue v;
    v.kind_ = Kind::String;
    v.str_ = std::move(s);
    return v;
}
TomlValue TomlValue::number(double d) {
    TomlValue v;
    v.kind_ = Kind::Number;
    v.num_ = d;
    return v;
}
TomlValue TomlValue::boolean(bool b) {
    TomlValue v;
    v.kind_ = Kind::Boolean;
    v.bool_ = b;
    return v;
}
TomlValue TomlValue::array() {
    TomlValue v;
    v.kind_ = Kind::Array;
    return v;
}
TomlValue TomlValue::table() {
    TomlValue v;
    v.kind_ = Kind::Table;
    return v;
}

static const char* kind_name(TomlValue::Kind k) {
    switch (k) {
        case TomlValue::Kind::String: return "string";
        case TomlValue::Kind::Number: return "number";
        case TomlValue::Kind::Boolean: return "boolean";
        case TomlValue::Kind::Array: return "array";
        case TomlValue::Kind::Table: return "table";
    }
    return "?";
}

static void expect_kind(const TomlValue& v, TomlValue::Kind want) {
    if (v.kind() != want) {
        throw TomlError(std::string("expected ") + kind_name(want) + ", found " +
                        kind_name(v.kind()));
    }
}

const std::string& TomlValue::as_string() const {
    expect_kind(*this, Kind::String);
    return str_;
}
double TomlValue::as_number() const {
    expect_kind(*this, Kind::Number);
    return num_;
}
long long TomlValue::as_int() const {
    const double d = as_number();
    const double r = std::round(d);
    if (std::abs(d - r) > 1e-9) throw TomlError("expected integer, found " + std::to_string(d));
    return static_cast<long long>(r);
}
bool TomlValue::as_bool() const {
    expect_kind(*this, Kind::Boolean);
    return bool_;
}
const TomlValue::Array& TomlValue::as_array() const {
    expect_kind(*this, Kind::Array);
    return array_;
}
TomlValue::Array& TomlValue::as_array() {
    expect_kind(*this, Kind::Array);
    return array_;
}
const TomlValue::Table& TomlValue::as_table() const {
    expect_kind(*this, Kind::Table);
    return table_;
}
TomlValue::Table& TomlValue::as_table() {
    expect_kind(*this, Kind::Table);
    return table_;
}

const TomlValue* TomlValue::get(const std::string& key) const {
    expect_kind(*this, Kind::Table);
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
}
const TomlValue& TomlValue::at(const std::string& key) const {
    const TomlValue* v = get(key);
    if (!v) throw TomlError("missing key '" + key + "'");
    return *v;
}
double TomlValue::number_or(const std::string& key, double def) const {
    const TomlValue* v = get(key);
    return v ? v->as_number() : def;
}
std::string TomlValue::string_or(const std::string& key, const std::string& def) const {
    const TomlValue* v = get(key);
    return v ? v->as_string() : def;
}
std::vector<double> TomlValue::as_number_array() const {
    std::vector<double> out;
    for (const auto& e : as_array()) out.push_back(e.as_number());
    return out;
}
std::vector<std::string> TomlValue::as_string_array() const {
    std::vector<std::string> out;
    for (const auto& e : as_array()) out.push_back(e.as_string());
    return out;
}

// ---------------------------------------------------------------------------

class TomlParser {
public:
    TomlParser(const std::string& text, std::string origin)
        : src_(text), origin_(std::move(origin)) {}

    TomlValue parse() {
        TomlValue root = TomlValue::table();
        current_ = &root;
        while (!at_end()) {
            skip_ws_and_comments();
            if (at_end()) break;
            if (peek() == '[') {
                parse_header(root);
            } else {
                parse_key_value(*current_);
            }
            expect_line_end();
        }
        return root;
    }

private:
    const std::string& src_;
    std::string origin_;
    std::size_t pos_ = 0;
    int line_ = 1;
    TomlValue* current_ = nullptr;

    [[noreturn]] void fail(const std::string& msg) const {
        throw TomlError(origin_ + ":" + std::to_string(line_) + ": " + msg);
    }
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    void skip_spaces() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }
    void skip_ws_and_comments() {
        for (;;) {
            skip_spaces();
            if (at_end()) return;
            char c = peek();
            if (c == '\n' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') ++pos_;
            } else {
                return;
            }
        }
    }
    // After a header or key/value: only spaces, a comment, then newline/EOF.
    void expect_line_end() {
        skip_spaces();
        if (at_end()) return;
        if (peek() == '#') {
            while (!at_end() && peek() != '\n') ++pos_;
        }
        if (at_end()) return;
        if (peek() == '\n' || peek() == '\r') {
            advance();
            return;
        }
        fail(std::string("unexpected character '") + peek() + "' after value");
    }

    static bool is_bare_key_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    std::string parse_key() {
        skip_spaces();
        if (at_end()) fail("expected key");
        if (peek() == '"') return parse_basic_string();
        std::string key;
        while (!at_end() && is_bare_key_char(peek())) key += advance();
        if (key.empty()) fail("expected key");
        return key;
    }

    std::vector<std::string> parse_dotted_key() {
        std::vector<std::string> path{parse_key()};
        skip_spaces();
        while (!at_end() && peek() == '.') {
            advance();
            path.push_back(parse_key());
            skip_spaces();
        }
        return path;
    }

    // Walk (creating) nested tables; a segment holding an array-of-tables
    // descends into its last element, per TOML semantics.
    TomlValue* descend(TomlValue& root, const std::vector<std::string>& path,
                       std::size_t count) {
        TomlValue* node = &root;
        for (std::size_t i = 0; i < count; ++i) {
            TomlValue::Table& tab = node->as_table();
            auto [it, inserted] = tab.try_emplace(path[i], TomlValue::table());
            node = &it->second;
            if (node->is_array()) {
                if (node->as_array().empty()) fail("empty array-of-tables '" + path[i] + "'");
                node = &node->as_array().back();
            }
            if (!node->is_table()) fail("key '" + path[i] + "' is not a table");
        }
        return node;
    }

    void parse_header(TomlValue& root) {
        advance(); // '['
        const bool array_of_tables = !at_end() && peek() == '[';
        if (array_of_tables) advance();
        auto path = parse_dotted_key();
        skip_spaces();
        if (at_end() || advance() != ']') fail("expected ']' in table header");
        if (array_of_tables) {
            if (at_end() || advance() != ']') fail("expected ']]' in array-of-tables header");
            TomlValue* parent = descend(root, path, path.size() - 1);
            auto [it, inserted] =
                parent->as_table().try_emplace(path.back(), TomlValue::array());
            if (!it->second.is_array()) fail("key '" + path.back() + "' is not an array");
            it->second.as_array().push_back(TomlValue::table());
            current_ = &it->second.as_array().back();
        } else {
            current_ = descend(root, path, path.size());
        }
    }

    void parse_key_value(TomlValue& into) {
        auto path = parse_dotted_key();
        skip_spaces();
        if (at_end() || advance() != '=') fail("expected '=' after key");
        skip_spaces();
        TomlValue value = parse_value();
        TomlValue* parent = descend_for_key(into, path);
        auto [it, inserted] = parent->as_table().try_emplace(path.back(), std::move(value));
        if (!inserted) fail("duplicate key '" + path.back() + "'");
    }

    TomlValue* descend_for_key(TomlValue& into, const std::vector<std::string>& path) {
        TomlValue* node = &into;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            auto [it, inserted] = node->as_table().try_emplace(path[i], TomlValue::table());
            node = &it->second;
            if (!node->is_table()) fail("key '" + path[i] + "' is not a table");
        }
        return node;
    }

    std::string parse_basic_string() {
        if (advance() != '"') fail("expected '\"'");
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated string");
            char c = advance();
            if (c == '"') break;
            if (c == '\n') fail("newline in string");
            if (c == '\\') {
                if (at_end()) fail("unterminated escape");
                char e = advance();
                switch (e) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    default: fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    TomlValue parse_value() {
        skip_spaces();
        if (at_end()) fail("expected value");
        char c = peek();
        if (c == '"') return TomlValue::string(parse_basic_string());
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (!at_end() && std::isalpha(static_cast<unsigned char>(peek())))
                word += advance();
            if (word == "true") return TomlValue::boolean(true);
            if (word == "false") return TomlValue::boolean(false);
            fail("unrecognized value '" + word + "'");
        }
        return parse_number();
    }

    TomlValue parse_number() {
        std::size_t start = pos_;
        while (!at_end()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
                c == '.' || c == 'e' || c == 'E') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected value");
        double d = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        if (*first == '+') ++first; // from_chars rejects a leading '+'
        auto [ptr, ec] = std::from_chars(first, last, d);
        if (ec != std::errc() || ptr != last)
            fail("malformed number '" + std::string(src_.data() + start, last) + "'");
        return TomlValue::number(d);
    }

    TomlValue parse_array() {
        advance(); // '['
        TomlValue arr = TomlValue::array();
        skip_spaces();
        if (!at_end() && peek() == ']') {
            advance();
            return arr;
        }
        for (;;) {
            arr.as_array().push_back(parse_value());
            skip_spaces();
            if (at_end()) fail("unterminated array");
            char c = advance();
            if (c == ']') break;
            if (c != ',') fail("expected ',' or ']' in array");
            skip_spaces();
            // Permit a trailing comma before the closing bracket.
            if (!at_end() && peek() == ']') {
                advance();
                break;
            }
        }
        return arr;
    }

    TomlValue parse_inline_table() {
        advance(); // '{'
        TomlValue tab = TomlValue::table();
        skip_spaces();
        if (!at_end() && peek() == '}') {
            advance();
            return tab;
        }
        for (;;) {
            std::string key = parse_key();
            skip_spaces();
            if (at_end() || advance() != '=') fail("expected '=' in inline table");
            auto [it, inserted] = tab.as_table().try_emplace(key, parse_value());
            if (!inserted) fail("duplicate key '" + key + "' in inline table");
            skip_spaces();
            if (at_end()) fail("unterminated inline table");
            char c = advance();
            if (c == '}') break;
            if (c != ',') fail("expected ',' or '}' in inline table");
            skip_spaces();
        }
        return tab;
    }
};

TomlValue toml_parse(const std::string& text, const std::string& origin) {
    return TomlParser(text, origin).parse();
}

TomlValue toml_parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TomlError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return toml_parse(ss.str(), path);
}

} // namespace vlopt
