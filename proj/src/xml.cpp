#include "semlink/xml.hpp"

#include "semlink/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace semlink::xml {

namespace {

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    Element parse() {
        skip_prolog_and_misc();
        Element root = parse_element();
        skip_misc();
        if (pos_ != text_.size())
            fail("trailing content after the document element");
        return root;
    }

  private:
    [[noreturn]] void fail(const std::string& message) const {
        throw Error(ErrorKind::MalformedDocument,
                    "line " + std::to_string(line_) + ": " + message);
    }

    bool eof() const { return pos_ >= text_.size(); }

    char peek() const { return eof() ? '\0' : text_[pos_]; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n')
            ++line_;
        return c;
    }

    bool consume(const std::string& token) {
        if (text_.compare(pos_, token.size(), token) != 0)
            return false;
        for (std::size_t i = 0; i < token.size(); ++i)
            advance();
        return true;
    }

    void skip_whitespace() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            advance();
    }

    void skip_comment() {
        // caller consumed "<!--"
        while (!consume("-->")) {
            if (eof())
                fail("unterminated comment");
            advance();
        }
    }

    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (consume("<!--")) {
                skip_comment();
                continue;
            }
            return;
        }
    }

    void skip_prolog_and_misc() {
        skip_whitespace();
        if (consume("<?xml")) {
            while (!consume("?>")) {
                if (eof())
                    fail("unterminated XML declaration");
                advance();
            }
        }
        skip_misc();
    }

    std::string parse_name() {
        if (eof() || !is_name_start(peek()))
            fail("expected a name");
        std::string name;
        while (!eof() && is_name_char(peek()))
            name += advance();
        return name;
    }

    void append_reference(std::string& out) {
        // caller consumed '&'
        std::string entity;
        while (!eof() && peek() != ';') {
            entity += advance();
            if (entity.size() > 8)
                fail("unterminated entity reference");
        }
        if (eof())
            fail("unterminated entity reference");
        advance(); // ';'
        if (entity == "amp")
            out += '&';
        else if (entity == "lt")
            out += '<';
        else if (entity == "gt")
            out += '>';
        else if (entity == "quot")
            out += '"';
        else if (entity == "apos")
            out += '\'';
        else if (entity.size() > 1 && entity[0] == '#')
            append_char_reference(out, entity);
        else
            fail("unknown entity '&" + entity + ";'");
    }

    void append_char_reference(std::string& out, const std::string& entity) {
        std::size_t idx = 1;
        int base = 10;
        if (entity.size() > 2 && (entity[1] == 'x' || entity[1] == 'X')) {
            idx = 2;
            base = 16;
        }
        unsigned long code = 0;
        if (idx >= entity.size())
            fail("empty character reference");
        for (; idx < entity.size(); ++idx) {
            char c = entity[idx];
            int digit;
            if (c >= '0' && c <= '9')
                digit = c - '0';
            else if (base == 16 && c >= 'a' && c <= 'f')
                digit = 10 + (c - 'a');
            else if (base == 16 && c >= 'A' && c <= 'F')
                digit = 10 + (c - 'A');
            else
                fail("bad character reference '&" + entity + ";'");
            code = code * base + static_cast<unsigned long>(digit);
            if (code > 0x10FFFF)
                fail("character reference out of range");
        }
        // encode as UTF-8
        if (code < 0x80) {
            out += static_cast<char>(code);
        } else if (code < 0x800) {
            out += static_cast<char>(0xC0 | (code >> 6));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
            out += static_cast<char>(0xE0 | (code >> 12));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (code >> 18));
            out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        }
    }

    std::string parse_attribute_value() {
        char quote = peek();
        if (quote != '"' && quote != '\'')
            fail("expected a quoted attribute value");
        advance();
        std::string value;
        for (;;) {
            if (eof())
                fail("unterminated attribute value");
            char c = advance();
            if (c == quote)
                break;
            if (c == '<')
                fail("'<' in attribute value");
            if (c == '&')
                append_reference(value);
            else
                value += c;
        }
        return value;
    }

    Element parse_element() {
        if (!consume("<"))
            fail("expected an element");
        Element element;
        element.line = line_;
        element.name = parse_name();
        for (;;) {
            bool had_space = !eof() && std::isspace(static_cast<unsigned char>(peek()));
            skip_whitespace();
            if (consume("/>"))
                return element;
            if (consume(">"))
                break;
            if (eof())
                fail("unterminated start tag of <" + element.name + ">");
            if (!had_space)
                fail("expected whitespace before attribute in <" + element.name + ">");
            std::string attr_name = parse_name();
            skip_whitespace();
            if (!consume("="))
                fail("expected '=' after attribute '" + attr_name + "'");
            skip_whitespace();
            std::string value = parse_attribute_value();
            for (const auto& [existing, _] : element.attributes)
                if (existing == attr_name)
                    fail("duplicate attribute '" + attr_name + "' in <" + element.name + ">");
            element.attributes.emplace_back(attr_name, value);
        }
        // content: child elements, comments, and whitespace only
        for (;;) {
            if (eof())
                fail("missing end tag for <" + element.name + ">");
            char c = peek();
            if (c == '<') {
                if (consume("</")) {
                    std::string closing = parse_name();
                    if (closing != element.name)
                        fail("end tag </" + closing + "> does not match <" + element.name + ">");
                    skip_whitespace();
                    if (!consume(">"))
                        fail("malformed end tag </" + closing + ">");
                    return element;
                }
                if (consume("<!--")) {
                    skip_comment();
                    continue;
                }
                element.children.push_back(parse_element());
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                fail("text content is not allowed inside <" + element.name + ">");
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

void write_element(std::ostringstream& out, const Element& element, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out << indent << '<' << element.name;

    auto attributes = element.attributes;
    std::sort(attributes.begin(), attributes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [name, value] : attributes)
        out << ' ' << name << "=\"" << escape_attribute(value) << '"';

    if (element.children.empty()) {
        out << "/>\n";
        return;
    }
    out << ">\n";
    for (const Element& child : element.children)
        write_element(out, child, depth + 1);
    out << indent << "</" << element.name << ">\n";
}

} // namespace

const std::string* Element::find_attribute(const std::string& attr_name) const {
    for (const auto& [name, value] : attributes)
        if (name == attr_name)
            return &value;
    return nullptr;
}

bool Element::operator==(const Element& other) const {
    return name == other.name && attributes == other.attributes && children == other.children;
}

Element parse_document(const std::string& text) {
    return Parser(text).parse();
}

std::string write_document(const Element& root) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_element(out, root, 0);
    return out.str();
}

std::string escape_attribute(const std::string& value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\n': out += "&#10;"; break;
        case '\t': out += "&#9;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace semlink::xml
