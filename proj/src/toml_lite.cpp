#include "sfcsim/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sfcsim {

namespace {

using nlohmann::json;

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw TomlError(line, what);
    }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char take() {
        char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
    }

    void skip_comment() {
        if (!eof() && peek() == '#') {
            while (!eof() && peek() != '\n') ++pos;
        }
    }

    // Whitespace, comments, and newlines.
    void skip_blank() {
        while (!eof()) {
            skip_ws();
            skip_comment();
            if (!eof() && peek() == '\n') {
                take();
                continue;
            }
            if (!eof() && peek() == '\r') {
                ++pos;
                continue;
            }
            break;
        }
    }

    void expect_line_end() {
        skip_ws();
        skip_comment();
        if (eof()) return;
        if (peek() == '\r') ++pos;
        if (eof()) return;
        if (peek() != '\n') fail("unexpected trailing characters");
        take();
    }

    std::string bare_key() {
        std::string key;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                          peek() == '_' || peek() == '-')) {
            key += take();
        }
        if (key.empty()) fail("expected key");
        return key;
    }

    std::string key_part() {
        skip_ws();
        if (!eof() && peek() == '"') return quoted_string();
        return bare_key();
    }

    std::vector<std::string> dotted_key() {
        std::vector<std::string> parts{key_part()};
        skip_ws();
        while (!eof() && peek() == '.') {
            take();
            parts.push_back(key_part());
            skip_ws();
        }
        return parts;
    }

    std::string quoted_string() {
        if (take() != '"') fail("expected '\"'");
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string");
            char c = take();
            if (c == '"') break;
            if (c == '\n') fail("newline in string");
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                char e = take();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail("unsupported escape sequence");
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    json number_or_bool() {
        std::string tok;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                          peek() == '+' || peek() == '-' || peek() == '.' ||
                          peek() == '_')) {
            tok += take();
        }
        if (tok == "true") return json(true);
        if (tok == "false") return json(false);
        std::string digits;
        for (char c : tok) {
            if (c != '_') digits += c;
        }
        if (digits.empty()) fail("expected value");
        const bool is_float = digits.find_first_of(".eE") != std::string::npos &&
                              digits.find("0x") != 0;
        try {
            std::size_t used = 0;
            if (is_float) {
                double v = std::stod(digits, &used);
                if (used != digits.size()) fail("malformed number: " + tok);
                return json(v);
            }
            long long v = std::stoll(digits, &used, 0);
            if (used != digits.size()) fail("malformed number: " + tok);
            return json(v);
        } catch (const std::exception&) {
            fail("malformed number: " + tok);
        }
    }

    json value() {
        skip_ws();
        if (eof()) fail("expected value");
        char c = peek();
        if (c == '"') return json(quoted_string());
        if (c == '[') return array();
        if (c == '{') return inline_table();
        return number_or_bool();
    }

    json array() {
        take();  // '['
        json arr = json::array();
        while (true) {
            skip_blank();
            if (eof()) fail("unterminated array");
            if (peek() == ']') {
                take();
                break;
            }
            arr.push_back(value());
            skip_blank();
            if (eof()) fail("unterminated array");
            if (peek() == ',') {
                take();
                continue;
            }
            if (peek() == ']') {
                take();
                break;
            }
            fail("expected ',' or ']' in array");
        }
        return arr;
    }

    json inline_table() {
        take();  // '{'
        json obj = json::object();
        skip_ws();
        if (!eof() && peek() == '}') {
            take();
            return obj;
        }
        while (true) {
            skip_ws();
            auto parts = dotted_key();
            skip_ws();
            if (eof() || take() != '=') fail("expected '=' in inline table");
            json* slot = &obj;
            for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
                slot = &(*slot)[parts[i]];
            }
            (*slot)[parts.back()] = value();
            skip_ws();
            if (eof()) fail("unterminated inline table");
            if (peek() == ',') {
                take();
                continue;
            }
            if (peek() == '}') {
                take();
                break;
            }
            fail("expected ',' or '}' in inline table");
        }
        return obj;
    }

    // Walks/creates the table at a dotted path. For path components that hold
    // arrays of tables, descends into the last element.
    json* descend(json& root, const std::vector<std::string>& parts,
                  std::size_t count) {
        json* node = &root;
        for (std::size_t i = 0; i < count; ++i) {
            json& child = (*node)[parts[i]];
            if (child.is_null()) child = json::object();
            if (child.is_array()) {
                if (child.empty()) fail("cannot extend empty table array");
                node = &child.back();
            } else if (child.is_object()) {
                node = &child;
            } else {
                fail("key '" + parts[i] + "' is not a table");
            }
        }
        return node;
    }

    json parse() {
        json root = json::object();
        json* current = &root;
        while (true) {
            skip_blank();
            if (eof()) break;
            if (peek() == '[') {
                take();
                const bool table_array = !eof() && peek() == '[';
                if (table_array) take();
                auto parts = dotted_key();
                skip_ws();
                if (eof() || take() != ']') fail("expected ']'");
                if (table_array && (eof() || take() != ']')) fail("expected ']]'");
                expect_line_end();
                json* parent = descend(root, parts, parts.size() - 1);
                json& slot = (*parent)[parts.back()];
                if (table_array) {
                    if (slot.is_null()) slot = json::array();
                    if (!slot.is_array()) fail("table redefined as array");
                    slot.push_back(json::object());
                    current = &slot.back();
                } else {
                    if (slot.is_null()) slot = json::object();
                    if (!slot.is_object()) fail("array redefined as table");
                    current = &slot;
                }
                continue;
            }
            auto parts = dotted_key();
            skip_ws();
            if (eof() || take() != '=') fail("expected '='");
            json* parent = descend(*current, parts, parts.size() - 1);
            if (parent->contains(parts.back())) {
                fail("duplicate key '" + parts.back() + "'");
            }
            (*parent)[parts.back()] = value();
            expect_line_end();
        }
        return root;
    }
};

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
    Parser parser(text);
    return parser.parse();
}

nlohmann::json load_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_toml(buf.str());
}

}  // namespace sfcsim
