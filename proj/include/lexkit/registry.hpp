#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "records.hpp"
#include "unicode.hpp"

namespace lexkit {

enum class CategoryKind { attribute, value };

inline std::string_view to_string(CategoryKind k) noexcept {
    return k == CategoryKind::attribute ? "attribute" : "value";
}

/// A standardized elementary descriptor: a stable identifier plus its
/// documentary definition.
struct DataCategory {
    std::string id;
    CategoryKind kind = CategoryKind::value;
    std::string definition;
    std::string profile; // optional, e.g. "morphosyntax"
};

/// Permitted value categories for one attribute, optionally scoped to a
/// language. A language-scoped domain fully replaces the universal one.
struct ConceptualDomain {
    std::string attribute;
    std::string language; // empty = universal
    std::set<std::string> values;
};

/// One external encoding of a canonical value within a scheme.
struct CodeEntry {
    std::string scheme;
    std::string attribute;
    std::string code;
    std::string value;
};

/// Immutable snapshot of data categories, conceptual domains and per-scheme
/// code bijections. Construct with `load`; all referential integrity is
/// verified up front, so an existing Registry is consistent by construction.
class Registry {
public:
    Registry() = default;

    /// Parses the line-oriented registry format:
    ///   datcat <TAB> id <TAB> kind <TAB> definition...
    ///   domain <TAB> attribute-id <TAB> lang-or-"*" <TAB> value-id[,value-id...]
    ///   code   <TAB> scheme-id <TAB> attribute-id <TAB> code <TAB> value-id
    /// Record order is irrelevant; integrity is checked after the full read.
    static Registry load(std::string_view text) {
        Registry reg;
        std::vector<Record> records = read_records(text);

        struct PendingDomain {
            std::size_t line;
            ConceptualDomain dom;
        };
        struct PendingCode {
            std::size_t line;
            CodeEntry entry;
        };
        std::vector<PendingDomain> domains;
        std::vector<PendingCode> codes;

        for (const Record& rec : records) {
            const auto& f = rec.fields;
            if (f[0] == "datcat") {
                if (f.size() < 3)
                    raise(errc::parse_error, "datcat needs id and kind", rec.line);
                DataCategory cat;
                cat.id = require_token(f[1], rec.line);
                if (f[2] == "attribute") cat.kind = CategoryKind::attribute;
                else if (f[2] == "value") cat.kind = CategoryKind::value;
                else raise(errc::parse_error, "unknown kind '" + f[2] + "'", rec.line);
                if (f.size() > 3) cat.definition = f[3];
                if (f.size() > 4) cat.profile = f[4];
                if (reg.categories_.count(cat.id))
                    raise(errc::duplicate_id, "'" + cat.id + "'", rec.line);
                reg.category_order_.push_back(cat.id);
                reg.categories_.emplace(cat.id, std::move(cat));
            } else if (f[0] == "domain") {
                if (f.size() != 4)
                    raise(errc::parse_error, "domain needs attribute, language and values", rec.line);
                ConceptualDomain dom;
                dom.attribute = require_token(f[1], rec.line);
                dom.language = (f[2] == "*") ? std::string() : require_token(f[2], rec.line);
                std::string_view rest = f[3];
                while (!rest.empty()) {
                    std::size_t comma = rest.find(',');
                    std::string_view item = rest.substr(0, comma);
                    dom.values.insert(std::string(require_token(item, rec.line)));
                    if (comma == std::string_view::npos) break;
                    rest.remove_prefix(comma + 1);
                }
                if (dom.values.empty())
                    raise(errc::parse_error, "domain value list is empty", rec.line);
                domains.push_back({rec.line, std::move(dom)});
            } else if (f[0] == "code") {
                if (f.size() != 5)
                    raise(errc::parse_error, "code needs scheme, attribute, code and value", rec.line);
                CodeEntry e;
                e.scheme = require_token(f[1], rec.line);
                e.attribute = require_token(f[2], rec.line);
                e.code = require_token(f[3], rec.line);
                e.value = require_token(f[4], rec.line);
                codes.push_back({rec.line, std::move(e)});
            } else {
                raise(errc::parse_error, "unknown record type '" + f[0] + "'", rec.line);
            }
        }

        // integrity pass; forward references are legal, so this runs last
        for (auto& [line, dom] : domains) {
            reg.require_kind(dom.attribute, CategoryKind::attribute, line);
            for (const std::string& v : dom.values)
                reg.require_kind(v, CategoryKind::value, line);
            auto& slot = reg.domains_[dom.attribute][dom.language];
            slot.insert(dom.values.begin(), dom.values.end());
        }
        for (auto& [line, e] : codes) {
            reg.require_kind(e.attribute, CategoryKind::attribute, line);
            reg.require_kind(e.value, CategoryKind::value, line);
            auto& table = reg.schemes_[SchemeKey{e.scheme, e.attribute}];
            if (table.by_code.count(e.code))
                raise(errc::non_bijective_scheme,
                      "scheme '" + e.scheme + "' maps code '" + e.code +
                          "' twice for attribute '" + e.attribute + "'",
                      line);
            if (table.by_value.count(e.value))
                raise(errc::non_bijective_scheme,
                      "scheme '" + e.scheme + "' maps value '" + e.value +
                          "' twice for attribute '" + e.attribute + "'",
                      line);
            table.by_code.emplace(e.code, e.value);
            table.by_value.emplace(e.value, e.code);
            reg.codes_.push_back(std::move(e));
        }
        return reg;
    }

    bool has_category(std::string_view id) const {
        return categories_.count(normalize(id)) != 0;
    }

    const DataCategory* find(std::string_view id) const {
        auto it = categories_.find(normalize(id));
        return it == categories_.end() ? nullptr : &it->second;
    }

    bool is_attribute(std::string_view id) const {
        const DataCategory* c = find(id);
        return c != nullptr && c->kind == CategoryKind::attribute;
    }

    bool is_value(std::string_view id) const {
        const DataCategory* c = find(id);
        return c != nullptr && c->kind == CategoryKind::value;
    }

    /// The conceptual domain applicable to `attribute` under `language`:
    /// the language-scoped one when present, else the universal one, else
    /// null (unconstrained attribute).
    const std::set<std::string>* applicable_domain(std::string_view attribute,
                                                   std::string_view language = {}) const {
        auto it = domains_.find(normalize(attribute));
        if (it == domains_.end()) return nullptr;
        if (!language.empty()) {
            auto lang_it = it->second.find(normalize(language));
            if (lang_it != it->second.end()) return &lang_it->second;
        }
        auto uni_it = it->second.find(std::string());
        return uni_it == it->second.end() ? nullptr : &uni_it->second;
    }

    /// True iff `value` lies in the applicable conceptual domain. Attributes
    /// without any domain are unconstrained and accept every value. Throws
    /// UnknownAttribute when the attribute is not registered.
    bool validate_pair(std::string_view attribute, std::string_view value,
                       std::string_view language = {}) const {
        std::string attr = normalize(attribute);
        if (!is_attribute(attr))
            raise(errc::unknown_attribute, "'" + attr + "'");
        const std::set<std::string>* dom = applicable_domain(attr, language);
        if (dom == nullptr) return true;
        return dom->count(normalize(value)) != 0;
    }

    /// Canonical value for an external code under (scheme, attribute).
    const std::string& map_code(std::string_view scheme, std::string_view attribute,
                                std::string_view code) const {
        const SchemeTable* table = scheme_table(scheme, attribute);
        std::string c = normalize(code);
        if (table != nullptr) {
            auto it = table->by_code.find(c);
            if (it != table->by_code.end()) return it->second;
        }
        raise(errc::unknown_code, "no code '" + c + "' for attribute '" + normalize(attribute) +
                                      "' in scheme '" + normalize(scheme) + "'");
    }

    /// External code for a canonical value under (scheme, attribute); the
    /// exact inverse of map_code.
    const std::string& reverse_map(std::string_view scheme, std::string_view attribute,
                                   std::string_view value) const {
        const SchemeTable* table = scheme_table(scheme, attribute);
        std::string v = normalize(value);
        if (table != nullptr) {
            auto it = table->by_value.find(v);
            if (it != table->by_value.end()) return it->second;
        }
        raise(errc::unknown_value, "no value '" + v + "' for attribute '" + normalize(attribute) +
                                       "' in scheme '" + normalize(scheme) + "'");
    }

    bool has_code(std::string_view scheme, std::string_view attribute,
                  std::string_view code) const {
        const SchemeTable* t = scheme_table(scheme, attribute);
        return t != nullptr && t->by_code.count(normalize(code)) != 0;
    }

    bool has_scheme_value(std::string_view scheme, std::string_view attribute,
                          std::string_view value) const {
        const SchemeTable* t = scheme_table(scheme, attribute);
        return t != nullptr && t->by_value.count(normalize(value)) != 0;
    }

    /// Every registered code triple, in file order. Exhaustive iteration for
    /// the inverse-mapping checks.
    const std::vector<CodeEntry>& codes() const noexcept { return codes_; }

    /// Registered category ids in file order.
    const std::vector<std::string>& category_ids() const noexcept { return category_order_; }

    std::size_t category_count() const noexcept { return categories_.size(); }

private:
    struct SchemeKey {
        std::string scheme;
        std::string attribute;
        friend auto operator<=>(const SchemeKey&, const SchemeKey&) = default;
    };
    struct SchemeTable {
        std::map<std::string, std::string> by_code;
        std::map<std::string, std::string> by_value;
    };

    static std::string normalize(std::string_view s) { return uni::nfc(s); }

    static std::string require_token(std::string_view s, std::size_t line) {
        std::string t(detail::trim(s));
        if (!uni::is_token(t))
            raise(errc::parse_error, "expected a token, got '" + t + "'", line);
        return t;
    }

    void require_kind(const std::string& id, CategoryKind kind, std::size_t line) const {
        auto it = categories_.find(id);
        if (it == categories_.end())
            raise(errc::dangling_reference, "'" + id + "' is not registered", line);
        if (it->second.kind != kind)
            raise(errc::dangling_reference,
                  "'" + id + "' has kind " + std::string(to_string(it->second.kind)) +
                      ", expected " + std::string(to_string(kind)),
                  line);
    }

    const SchemeTable* scheme_table(std::string_view scheme, std::string_view attribute) const {
        auto it = schemes_.find(SchemeKey{normalize(scheme), normalize(attribute)});
        return it == schemes_.end() ? nullptr : &it->second;
    }

    std::map<std::string, DataCategory> categories_;
    std::vector<std::string> category_order_;
    // attribute -> language ("" = universal) -> value set
    std::map<std::string, std::map<std::string, std::set<std::string>>> domains_;
    std::map<SchemeKey, SchemeTable> schemes_;
    std::vector<CodeEntry> codes_;
};

} // namespace lexkit
