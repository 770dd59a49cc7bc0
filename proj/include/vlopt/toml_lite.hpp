#pragma once
// Minimal TOML-subset reader for instance, solution, and plan files.
//
// Supported subset (all the bundled fixtures need, nothing more):
//   - comments (# to end of line)
//   - [table] and [dotted.table] headers; a path segment that names an
//     array-of-tables descends into its last element
//   - [[array.of.tables]] headers
//   - key = value with bare ([A-Za-z0-9_-]+) or "quoted" keys and one
//     level of dotting (a.b = ...)
//   - values: "basic strings" (\\ \" \n \t \r escapes), numbers (parsed as
//     double), true/false, single-line [arrays], {inline = "tables"} —
//     arrays and inline tables nest recursively
// Not supported: literal strings, multi-line strings/arrays, dates.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlopt {

class TomlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TomlValue {
public:
    using Array = std::vector<TomlValue>;
    using Table = std::map<std::string, TomlValue>;

    TomlValue() : kind_(Kind::Table) {}
    static TomlValue string(std::string s);
    static TomlValue number(double d);
    static TomlValue boolean(bool b);
    static TomlValue array();
    static TomlValue table();

    enum class Kind { String, Number, Boolean, Array, Table };
    Kind kind() const { return kind_; }
    bool is_table() const { return kind_ == Kind::Table; }
    bool is_array() const { return kind_ == Kind::Array; }

    // Checked accessors; throw TomlError naming the expected kind.
    const std::string& as_string() const;
    double as_number() const;
    // Number that must be (near-)integral; throws otherwise.
    long long as_int() const;
    bool as_bool() const;
    const Array& as_array() const;
    Array& as_array();
    const Table& as_table() const;
    Table& as_table();

    // Table lookups. `get` returns nullptr when absent; `at` throws with
    // the key name; the *_or forms supply defaults.
    const TomlValue* get(const std::string& key) const;
    const TomlValue& at(const std::string& key) const;
    double number_or(const std::string& key, double def) const;
    std::string string_or(const std::string& key, const std::string& def) const;

    // Convenience: array of numbers / array of strings.
    std::vector<double> as_number_array() const;
    std::vector<std::string> as_string_array() const;

private:
    Kind kind_;
    std::string str_;
    double num_ = 0.0;
    bool bool_ = false;
    Array array_;
    Table table_;

    friend class TomlParser;
};

// Parse a document (root is a table). Errors carry 1-based line numbers.
TomlValue toml_parse(const std::string& text, const std::string& origin = "<string>");
TomlValue toml_parse_file(const std::string& path);

} // namespace vlopt
