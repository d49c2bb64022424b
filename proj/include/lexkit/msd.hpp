#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "feature.hpp"
#include "records.hpp"
#include "registry.hpp"

namespace lexkit {

/// Feature name fixed for the category letter of an MSD tag.
inline constexpr std::string_view kCategoryFeature = "cat";

/// One positional slot of a tagset category: which attribute it encodes and
/// the bijection between single-character codes and canonical value ids.
struct TagsetSlot {
    std::string attribute;
    std::vector<std::pair<char, std::string>> codes; // file order
    std::map<char, std::string> by_code;
    std::map<std::string, char> by_value;
};

struct TagsetCategory {
    char letter = 0;
    std::string category_value; // canonical id for the `cat` feature
    std::vector<TagsetSlot> slots;
};

/// Declarative positional tagset: drives both directions of the MSD codec.
/// Immutable after load; decode/encode are pure.
class TagsetSpec {
public:
    /// Record format (TAB-separated, `#` comments):
    ///   language <TAB> code                                (optional)
    ///   category <TAB> letter <TAB> value-id
    ///   slot     <TAB> letter <TAB> position <TAB> attribute-id
    ///   code     <TAB> letter <TAB> position <TAB> char <TAB> value-id
    /// Slot positions are contiguous from 1; `-` is reserved and cannot be
    /// mapped. All ids must resolve in the registry, and slot values must lie
    /// in the attribute's applicable domain for the spec's language.
    static TagsetSpec load(std::string_view text, const Registry& reg) {
        TagsetSpec spec;
        if (!reg.is_attribute(kCategoryFeature))
            raise(errc::unknown_data_category,
                  "'" + std::string(kCategoryFeature) + "' attribute is not registered");

        struct RawSlot {
            std::size_t line = 0;
            std::string attribute;
        };
        // letter -> position -> slot/code records, order-independent input
        std::map<char, std::map<std::size_t, RawSlot>> raw_slots;
        std::map<char, std::vector<std::tuple<std::size_t, std::size_t, char, std::string>>> raw_codes;

        for (const Record& rec : read_records(text)) {
            const auto& f = rec.fields;
            if (f[0] == "language") {
                if (f.size() != 2) raise(errc::parse_error, "language needs one field", rec.line);
                spec.language_ = f[1];
            } else if (f[0] == "category") {
                if (f.size() != 3) raise(errc::parse_error, "category needs letter and value-id", rec.line);
                char letter = single_char(f[1], rec.line);
                if (spec.categories_.count(letter))
                    raise(errc::parse_error, std::string("category '") + letter + "' defined twice", rec.line);
                TagsetCategory cat;
                cat.letter = letter;
                cat.category_value = f[2];
                spec.categories_.emplace(letter, std::move(cat));
                spec.category_order_.push_back(letter);
            } else if (f[0] == "slot") {
                if (f.size() != 4) raise(errc::parse_error, "slot needs letter, position, attribute", rec.line);
                char letter = single_char(f[1], rec.line);
                std::size_t pos = parse_position(f[2], rec.line);
                auto [it, fresh] = raw_slots[letter].emplace(pos, RawSlot{rec.line, f[3]});
                if (!fresh)
                    raise(errc::parse_error, "slot " + f[2] + " of category '" + f[1] + "' defined twice", rec.line);
            } else if (f[0] == "code") {
                if (f.size() != 5) raise(errc::parse_error, "code needs letter, position, char, value-id", rec.line);
                char letter = single_char(f[1], rec.line);
                std::size_t pos = parse_position(f[2], rec.line);
                char c = single_char(f[3], rec.line);
                raw_codes[letter].emplace_back(rec.line, pos, c, f[4]);
            } else {
                raise(errc::parse_error, "unknown record type '" + f[0] + "'", rec.line);
            }
        }

        // assemble and cross-check
        std::set<std::string> seen_category_values;
        for (char letter : spec.category_order_) {
            TagsetCategory& cat = spec.categories_.at(letter);
            if (!reg.is_value(cat.category_value))
                raise(errc::unknown_data_category, "'" + cat.category_value + "'");
            if (!seen_category_values.insert(cat.category_value).second)
                raise(errc::parse_error,
                      "category value '" + cat.category_value + "' is assigned to two letters");
            if (!reg.validate_pair(kCategoryFeature, cat.category_value, spec.language_))
                raise(errc::parse_error, "category value '" + cat.category_value +
                                             "' is outside the 'cat' domain");

            auto slots_it = raw_slots.find(letter);
            if (slots_it != raw_slots.end()) {
                std::size_t expected = 1;
                std::set<std::string> slot_attrs;
                for (const auto& [pos, raw] : slots_it->second) {
                    if (pos != expected)
                        raise(errc::parse_error,
                              "slot positions of category '" + std::string(1, letter) +
                                  "' are not contiguous from 1",
                              raw.line);
                    ++expected;
                    if (!reg.is_attribute(raw.attribute))
                        raise(errc::unknown_data_category, "'" + raw.attribute + "'", raw.line);
                    if (raw.attribute == kCategoryFeature)
                        raise(errc::parse_error,
                              "'" + raw.attribute + "' is reserved for the category letter",
                              raw.line);
                    if (!slot_attrs.insert(raw.attribute).second)
                        raise(errc::parse_error,
                              "attribute '" + raw.attribute + "' encoded by two slots of category '" +
                                  std::string(1, letter) + "'",
                              raw.line);
                    TagsetSlot slot;
                    slot.attribute = raw.attribute;
                    cat.slots.push_back(std::move(slot));
                }
            }
            raw_slots.erase(letter);
        }
        if (!raw_slots.empty())
            raise(errc::parse_error,
                  std::string("slot for undeclared category '") + raw_slots.begin()->first + "'");

        for (auto& [letter, entries] : raw_codes) {
            auto cat_it = spec.categories_.find(letter);
            if (cat_it == spec.categories_.end())
                raise(errc::parse_error, std::string("code for undeclared category '") + letter + "'",
                      std::get<0>(entries.front()));
            for (auto& [line, pos, c, value] : entries) {
                if (pos == 0 || pos > cat_it->second.slots.size())
                    raise(errc::parse_error,
                          "code position " + std::to_string(pos) + " has no slot", line);
                TagsetSlot& slot = cat_it->second.slots[pos - 1];
                if (c == '-') raise(errc::reserved_dash, "'-' cannot be mapped to a value", line);
                if (slot.by_code.count(c))
                    raise(errc::duplicate_code,
                          std::string("char '") + c + "' occurs twice in slot " + std::to_string(pos) +
                              " of category '" + letter + "'",
                          line);
                if (slot.by_value.count(value))
                    raise(errc::duplicate_code,
                          "value '" + value + "' occurs twice in slot " + std::to_string(pos) +
                              " of category '" + letter + "'",
                          line);
                if (!reg.is_value(value))
                    raise(errc::unknown_data_category, "'" + value + "'", line);
                if (!reg.validate_pair(slot.attribute, value, spec.language_))
                    raise(errc::parse_error,
                          "value '" + value + "' is outside the domain of '" + slot.attribute + "'",
                          line);
                slot.codes.emplace_back(c, value);
                slot.by_code.emplace(c, value);
                slot.by_value.emplace(value, c);
            }
        }
        return spec;
    }

    const std::string& language() const noexcept { return language_; }

    const TagsetCategory* category(char letter) const {
        auto it = categories_.find(letter);
        return it == categories_.end() ? nullptr : &it->second;
    }

    const std::vector<char>& category_letters() const noexcept { return category_order_; }

    /// Tag -> feature structure. `-` and truncated trailing slots contribute
    /// no feature. The result always contains the `cat` feature.
    FeatureStructure decode(std::string_view tag) const {
        if (tag.empty()) raise(errc::parse_error, "empty MSD tag");
        const TagsetCategory* cat = category(tag[0]);
        if (cat == nullptr)
            raise(errc::unknown_category, std::string("'") + tag[0] + "'");
        if (tag.size() > 1 + cat->slots.size())
            raise(errc::tag_too_long, "'" + std::string(tag) + "' has " +
                                          std::to_string(tag.size() - 1) + " slot codes, category '" +
                                          tag[0] + "' defines " + std::to_string(cat->slots.size()));
        FeatureStructure fs;
        fs.add(kCategoryFeature, cat->category_value);
        for (std::size_t i = 1; i < tag.size(); ++i) {
            char c = tag[i];
            if (c == '-') continue;
            const TagsetSlot& slot = cat->slots[i - 1];
            auto it = slot.by_code.find(c);
            if (it == slot.by_code.end())
                raise(errc::unknown_code, std::string("char '") + c + "' at position " +
                                              std::to_string(i) + " of '" + std::string(tag) + "'");
            fs.add(slot.attribute, it->second);
        }
        return fs;
    }

    /// Feature structure -> canonical tag: category letter, one code or `-`
    /// per slot, maximal trailing `-` run removed.
    std::string encode(const FeatureStructure& fs) const {
        auto cat_value = fs.get(kCategoryFeature);
        if (!cat_value) raise(errc::missing_category, "feature structure has no 'cat' feature");
        const TagsetCategory* cat = nullptr;
        for (char letter : category_order_) {
            const TagsetCategory& c = categories_.at(letter);
            if (c.category_value == *cat_value) { cat = &c; break; }
        }
        if (cat == nullptr)
            raise(errc::value_not_in_slot,
                  "no category encodes cat='" + std::string(*cat_value) + "' (position 0)");

        std::string codes(cat->slots.size(), '-');
        for (const Feature& f : fs) {
            if (f.name.str() == kCategoryFeature) continue;
            std::size_t pos = 0;
            for (std::size_t i = 0; i < cat->slots.size(); ++i) {
                if (cat->slots[i].attribute == f.name.str()) { pos = i + 1; break; }
            }
            if (pos == 0) raise(errc::unknown_feature, "'" + f.name.str() + "'");
            const TagsetSlot& slot = cat->slots[pos - 1];
            auto it = slot.by_value.find(f.value.str());
            if (it == slot.by_value.end())
                raise(errc::value_not_in_slot, "value '" + f.value.str() + "' at position " +
                                                   std::to_string(pos));
            codes[pos - 1] = it->second;
        }
        while (!codes.empty() && codes.back() == '-') codes.pop_back();
        return std::string(1, cat->letter) + codes;
    }

    /// Every canonical tag of one category, in deterministic order: the
    /// cartesian product over slots of (`-` plus each code in file order),
    /// rendered with trailing-dash truncation and deduplicated.
    std::vector<std::string> enumerate_tags(char letter) const {
        const TagsetCategory* cat = category(letter);
        if (cat == nullptr)
            raise(errc::unknown_category, std::string("'") + letter + "'");
        std::vector<std::string> out;
        std::set<std::string> seen;
        std::vector<std::size_t> odometer(cat->slots.size(), 0); // 0 = dash
        while (true) {
            std::string codes;
            for (std::size_t i = 0; i < odometer.size(); ++i)
                codes += odometer[i] == 0 ? '-' : cat->slots[i].codes[odometer[i] - 1].first;
            while (!codes.empty() && codes.back() == '-') codes.pop_back();
            std::string tag = std::string(1, letter) + codes;
            if (seen.insert(tag).second) out.push_back(std::move(tag));
            // advance, last slot fastest
            std::size_t i = odometer.size();
            while (i > 0) {
                --i;
                if (odometer[i] < cat->slots[i].codes.size()) { ++odometer[i]; break; }
                odometer[i] = 0;
                if (i == 0) return out;
            }
            if (odometer.empty()) return out;
        }
    }

    /// enumerate_tags over all categories, concatenated in declaration order.
    std::vector<std::string> all_tags() const {
        std::vector<std::string> out;
        for (char letter : category_order_) {
            std::vector<std::string> tags = enumerate_tags(letter);
            out.insert(out.end(), tags.begin(), tags.end());
        }
        return out;
    }

private:
    static char single_char(std::string_view s, std::size_t line) {
        if (s.size() != 1 || static_cast<unsigned char>(s[0]) >= 0x80 || s[0] <= 0x20)
            raise(errc::parse_error, "expected a single printable ASCII character, got '" +
                                         std::string(s) + "'",
                  line);
        return s[0];
    }

    static std::size_t parse_position(std::string_view s, std::size_t line) {
        std::size_t v = 0;
        if (s.empty()) raise(errc::parse_error, "empty position", line);
        for (char c : s) {
            if (c < '0' || c > '9') raise(errc::parse_error, "position '" + std::string(s) + "' is not a number", line);
            v = v * 10 + static_cast<std::size_t>(c - '0');
        }
        if (v == 0) raise(errc::parse_error, "slot positions start at 1", line);
        return v;
    }

    std::string language_;
    std::map<char, TagsetCategory> categories_;
    std::vector<char> category_order_;
};

/// One record of a Multext-style full-form lexicon file.
struct LexiconLine {
    std::string form;
    std::string lemma;
    std::string tag;

    friend bool operator==(const LexiconLine&, const LexiconLine&) = default;
};

/// Splits a line on runs of TAB/space into exactly form, lemma, tag. The tag
/// is not semantically validated here.
inline LexiconLine parse_line(std::string_view text) {
    std::vector<std::string> fields;
    std::size_t i = 0, n = text.size();
    while (i < n) {
        while (i < n && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
        if (i >= n) break;
        std::size_t start = i;
        while (i < n && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
        fields.push_back(uni::nfc(text.substr(start, i - start)));
    }
    if (fields.size() != 3)
        raise(errc::field_count, "expected 3 fields, got " + std::to_string(fields.size()));
    return LexiconLine{std::move(fields[0]), std::move(fields[1]), std::move(fields[2])};
}

inline std::string render_line(const LexiconLine& l) {
    return l.form + "\t" + l.lemma + "\t" + l.tag;
}

} // namespace lexkit
