#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "unicode.hpp"

namespace lexkit {

/// One logical line of a TAB-separated record file.
struct Record {
    std::size_t line = 0; // 1-based
    std::vector<std::string> fields;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace detail

/// Splits UTF-8 text into records: one per line, fields separated by single
/// TABs, `#`-prefixed comment lines and blank lines skipped. Fields are
/// NFC-normalized and stripped of surrounding spaces.
inline std::vector<Record> read_records(std::string_view text) {
    if (!uni::valid_utf8(text)) raise(errc::parse_error, "input is not valid UTF-8");
    std::vector<Record> records;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        ++lineno;
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

        std::string_view stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        Record rec;
        rec.line = lineno;
        std::size_t f = 0;
        while (true) {
            std::size_t tab = line.find('\t', f);
            std::string_view field = (tab == std::string_view::npos)
                                         ? line.substr(f)
                                         : line.substr(f, tab - f);
            // spaces around a field are authoring slack, not content
            std::string_view t = field;
            while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
            while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
            rec.fields.push_back(uni::nfc(t));
            if (tab == std::string_view::npos) break;
            f = tab + 1;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace lexkit
