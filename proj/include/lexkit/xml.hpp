#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "unicode.hpp"

// Minimal XML 1.0 reader/writer for the lexicon dialects: elements,
// attributes, character data, comments, CDATA and the five predefined plus
// numeric entities. No DTD processing — a DOCTYPE is refused outright, so
// external entities cannot occur. The writer is deterministic: 2-space
// indentation, attribute order as given, UTF-8, LF line ends.

namespace lexkit::xml {

struct Node;

struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Node> children;
    std::size_t line = 0;

    const std::string* attr(std::string_view name) const;
    std::vector<const Element*> child_elements() const;
    /// Concatenated direct text content.
    std::string text() const;
};

struct Node {
    std::variant<Element, std::string> data;

    bool is_element() const noexcept { return data.index() == 0; }
    const Element& element() const { return std::get<Element>(data); }
    const std::string& text() const { return std::get<std::string>(data); }
};

inline const std::string* Element::attr(std::string_view n) const {
    for (const auto& [k, v] : attributes)
        if (k == n) return &v;
    return nullptr;
}

inline std::vector<const Element*> Element::child_elements() const {
    std::vector<const Element*> out;
    for (const Node& n : children)
        if (n.is_element()) out.push_back(&n.element());
    return out;
}

inline std::string Element::text() const {
    std::string out;
    for (const Node& n : children)
        if (!n.is_element()) out += n.text();
    return out;
}

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    Element run() {
        skip_prolog();
        Element root = parse_element();
        skip_misc();
        if (pos_ != in_.size()) fail("content after the document element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        raise(errc::xml_error, message, line_);
    }

    bool eof() const noexcept { return pos_ >= in_.size(); }
    char peek() const noexcept { return in_[pos_]; }

    char take() {
        char c = in_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    bool starts_with(std::string_view s) const {
        return in_.compare(pos_, s.size(), s) == 0;
    }

    void expect(std::string_view s) {
        if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
        for (std::size_t i = 0; i < s.size(); ++i) take();
    }

    static bool is_space(char c) noexcept {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    }

    void skip_space() {
        while (!eof() && is_space(peek())) take();
    }

    static bool name_start(char c) noexcept {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' ||
               static_cast<unsigned char>(c) >= 0x80;
    }
    static bool name_char(char c) noexcept {
        return name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
    }

    std::string parse_name() {
        if (eof() || !name_start(peek())) fail("expected a name");
        std::string name;
        while (!eof() && name_char(peek())) name += take();
        return name;
    }

    void skip_comment() {
        expect("<!--");
        while (!starts_with("-->")) {
            if (eof()) fail("unterminated comment");
            take();
        }
        expect("-->");
    }

    void skip_pi() {
        expect("<?");
        while (!starts_with("?>")) {
            if (eof()) fail("unterminated processing instruction");
            take();
        }
        expect("?>");
    }

    void skip_prolog() {
        skip_space();
        if (starts_with("<?xml")) skip_pi();
        skip_misc();
    }

    void skip_misc() {
        while (true) {
            skip_space();
            if (starts_with("<!--")) { skip_comment(); continue; }
            if (starts_with("<?")) { skip_pi(); continue; }
            if (starts_with("<!DOCTYPE") || starts_with("<!doctype"))
                fail("DTD processing is not supported");
            return;
        }
    }

    void append_codepoint(std::string& out, unsigned long cp) {
        if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            fail("character reference out of range");
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    void parse_reference(std::string& out) {
        expect("&");
        std::string ent;
        while (!eof() && peek() != ';') {
            ent += take();
            if (ent.size() > 10) fail("malformed entity reference");
        }
        if (eof()) fail("unterminated entity reference");
        expect(";");
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (!ent.empty() && ent[0] == '#') {
            unsigned long cp = 0;
            bool ok = ent.size() > 1;
            if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
                for (std::size_t i = 2; i < ent.size(); ++i) {
                    char c = ent[i];
                    unsigned d =
                        (c >= '0' && c <= '9')   ? static_cast<unsigned>(c - '0')
                        : (c >= 'a' && c <= 'f') ? static_cast<unsigned>(c - 'a' + 10)
                        : (c >= 'A' && c <= 'F') ? static_cast<unsigned>(c - 'A' + 10)
                                                 : (ok = false, 0u);
                    cp = cp * 16 + d;
                }
            } else {
                for (std::size_t i = 1; i < ent.size(); ++i) {
                    char c = ent[i];
                    if (c < '0' || c > '9') { ok = false; break; }
                    cp = cp * 10 + static_cast<unsigned>(c - '0');
                }
            }
            if (!ok) fail("malformed character reference '&" + ent + ";'");
            append_codepoint(out, cp);
        } else {
            fail("unknown entity '&" + ent + ";' (no DTD, so only predefined entities exist)");
        }
    }

    std::string parse_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected a quoted attribute value");
        char quote = take();
        std::string value;
        while (true) {
            if (eof()) fail("unterminated attribute value");
            char c = peek();
            if (c == quote) { take(); break; }
            if (c == '<') fail("'<' in attribute value");
            if (c == '&') { parse_reference(value); continue; }
            value += take();
        }
        return value;
    }

    Element parse_element() {
        std::size_t start_line = line_;
        expect("<");
        Element el;
        el.line = start_line;
        el.name = parse_name();
        while (true) {
            bool had_space = !eof() && is_space(peek());
            skip_space();
            if (eof()) fail("unterminated start tag");
            if (peek() == '>') { take(); break; }
            if (starts_with("/>")) { expect("/>"); return el; }
            if (!had_space) fail("expected whitespace before attribute");
            std::string attr_name = parse_name();
            skip_space();
            expect("=");
            skip_space();
            std::string value = parse_attr_value();
            if (el.attr(attr_name) != nullptr)
                fail("duplicate attribute '" + attr_name + "'");
            el.attributes.emplace_back(std::move(attr_name), std::move(value));
        }
        // content
        std::string text;
        auto flush_text = [&]() {
            if (text.empty()) return;
            bool ws_only = true;
            for (char c : text)
                if (!is_space(c)) { ws_only = false; break; }
            // whitespace between child elements is layout, not data
            if (!ws_only) el.children.push_back(Node{std::move(text)});
            text.clear();
        };
        while (true) {
            if (eof()) fail("unterminated element '" + el.name + "'");
            if (starts_with("</")) {
                flush_text();
                expect("</");
                std::string close = parse_name();
                if (close != el.name)
                    fail("mismatched end tag '</" + close + ">' for '<" + el.name + ">'");
                skip_space();
                expect(">");
                return el;
            }
            if (starts_with("<!--")) { skip_comment(); continue; }
            if (starts_with("<![CDATA[")) {
                expect("<![CDATA[");
                while (!starts_with("]]>")) {
                    if (eof()) fail("unterminated CDATA section");
                    text += take();
                }
                expect("]]>");
                continue;
            }
            if (starts_with("<?")) { skip_pi(); continue; }
            if (starts_with("<!")) fail("DTD processing is not supported");
            if (peek() == '<') {
                flush_text();
                el.children.push_back(Node{parse_element()});
                continue;
            }
            if (peek() == '&') { parse_reference(text); continue; }
            text += take();
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

inline void escape_text(std::string_view s, std::string& out) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
}

inline void escape_attr(std::string_view s, std::string& out) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\t': out += "&#9;"; break;
            default: out += c;
        }
    }
}

inline void write_element(const Element& el, std::string& out, int depth) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += '<';
    out += el.name;
    for (const auto& [k, v] : el.attributes) {
        out += ' ';
        out += k;
        out += "=\"";
        escape_attr(v, out);
        out += '"';
    }
    if (el.children.empty()) {
        out += "/>\n";
        return;
    }
    bool text_only = true;
    for (const Node& n : el.children)
        if (n.is_element()) { text_only = false; break; }
    if (text_only) {
        out += '>';
        for (const Node& n : el.children) escape_text(n.text(), out);
        out += "</";
        out += el.name;
        out += ">\n";
        return;
    }
    out += ">\n";
    for (const Node& n : el.children) {
        if (n.is_element()) {
            write_element(n.element(), out, depth + 1);
        } else {
            out.append(static_cast<std::size_t>(depth + 1) * 2, ' ');
            escape_text(n.text(), out);
            out += '\n';
        }
    }
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "</";
    out += el.name;
    out += ">\n";
}

} // namespace detail

/// Parses a UTF-8 XML document and returns its single root element.
inline Element parse(std::string_view bytes) {
    if (!uni::valid_utf8(bytes)) raise(errc::xml_error, "document is not valid UTF-8");
    return detail::Parser(bytes).run();
}

/// Deterministic serialization with XML declaration and trailing newline.
inline std::string serialize(const Element& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    detail::write_element(root, out, 0);
    return out;
}

} // namespace lexkit::xml
