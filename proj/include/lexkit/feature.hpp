#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "unicode.hpp"

namespace lexkit {

/// Attribute key of a feature pair. NFC-normalized at construction; must be a
/// non-empty token with no whitespace or control characters.
class FeatureName {
public:
    explicit FeatureName(std::string_view s) : value_(uni::nfc(s)) {
        if (!uni::is_token(value_))
            raise(errc::invalid_token, "feature name must be a non-empty token: '" + value_ + "'");
    }

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const FeatureName&, const FeatureName&) = default;
    friend auto operator<=>(const FeatureName&, const FeatureName&) = default;

private:
    std::string value_;
};

/// Value of a feature pair. NFC-normalized; must be non-empty. Values are
/// opaque here; whether they name registered data categories is the registry
/// module's business.
class FeatureValue {
public:
    explicit FeatureValue(std::string_view s) : value_(uni::nfc(s)) {
        if (value_.empty())
            raise(errc::invalid_token, "feature value must be non-empty");
    }

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const FeatureValue&, const FeatureValue&) = default;
    friend auto operator<=>(const FeatureValue&, const FeatureValue&) = default;

private:
    std::string value_;
};

struct Feature {
    FeatureName name;
    FeatureValue value;

    friend bool operator==(const Feature&, const Feature&) = default;
};

/// Flat feature structure: an ordered sequence of attribute/value pairs with
/// no duplicate attributes. Insertion order is preserved for deterministic
/// serialization; equality is order-insensitive (set semantics).
class FeatureStructure {
public:
    FeatureStructure() = default;

    /// Builds from (name, value) pairs. Rejects a repeated name regardless of
    /// the values involved.
    static FeatureStructure build(
        std::initializer_list<std::pair<std::string_view, std::string_view>> pairs) {
        FeatureStructure fs;
        for (const auto& [n, v] : pairs) fs.add(n, v);
        return fs;
    }

    template <typename Range>
    static FeatureStructure build(const Range& pairs) {
        FeatureStructure fs;
        for (const auto& [n, v] : pairs) fs.add(n, v);
        return fs;
    }

    /// Appends one pair. Throws DuplicateAttribute if the name is already
    /// present. Intended for single-threaded construction; treat the
    /// structure as immutable once shared.
    void add(std::string_view name, std::string_view value) {
        add(Feature{FeatureName(name), FeatureValue(value)});
    }

    void add(Feature f) {
        if (find(f.name.str()) != nullptr)
            raise(errc::duplicate_attribute, "attribute '" + f.name.str() + "' occurs twice");
        pairs_.push_back(std::move(f));
    }

    /// Value for `name`, or absent. Never errors on a missing attribute.
    std::optional<std::string_view> get(std::string_view name) const {
        const Feature* f = uni::is_ascii(name) ? find(name) : find(uni::nfc(name));
        if (f == nullptr) return std::nullopt;
        return std::string_view(f->value.str());
    }

    bool contains(std::string_view name) const { return get(name).has_value(); }

    /// Consistent union: shared attributes must agree on their value. The
    /// result keeps this structure's pairs first, then the other's novel
    /// pairs. Throws Conflict on disagreement.
    FeatureStructure merged(const FeatureStructure& other) const {
        FeatureStructure out = *this;
        for (const Feature& f : other.pairs_) {
            const Feature* mine = out.find(f.name.str());
            if (mine == nullptr) {
                out.pairs_.push_back(f);
            } else if (mine->value != f.value) {
                raise(errc::conflict, "attribute '" + f.name.str() + "' maps to both '" +
                                          mine->value.str() + "' and '" + f.value.str() + "'");
            }
        }
        return out;
    }

    /// Non-throwing merge; absent on conflict.
    std::optional<FeatureStructure> try_merged(const FeatureStructure& other) const {
        FeatureStructure out = *this;
        for (const Feature& f : other.pairs_) {
            const Feature* mine = out.find(f.name.str());
            if (mine == nullptr) out.pairs_.push_back(f);
            else if (mine->value != f.value) return std::nullopt;
        }
        return out;
    }

    /// True iff every pair of this structure occurs in `other` (this is the
    /// more general structure).
    bool subsumes(const FeatureStructure& other) const {
        for (const Feature& f : pairs_) {
            const Feature* theirs = other.find(f.name.str());
            if (theirs == nullptr || theirs->value != f.value) return false;
        }
        return true;
    }

    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }
    auto begin() const noexcept { return pairs_.begin(); }
    auto end() const noexcept { return pairs_.end(); }
    const std::vector<Feature>& pairs() const noexcept { return pairs_; }

    /// Set equality over pairs; insertion order does not matter.
    friend bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
        return a.pairs_.size() == b.pairs_.size() && a.subsumes(b);
    }

    /// Debug rendering `{name=value, ...}` in insertion order. Diagnostics
    /// only, not a parse format.
    std::string debug() const {
        std::string s = "{";
        bool first = true;
        for (const Feature& f : pairs_) {
            if (!first) s += ", ";
            first = false;
            s += f.name.str();
            s += "=";
            s += f.value.str();
        }
        s += "}";
        return s;
    }

private:
    const Feature* find(std::string_view normalized_name) const {
        for (const Feature& f : pairs_)
            if (f.name.str() == normalized_name) return &f;
        return nullptr;
    }

    std::vector<Feature> pairs_;
};

} // namespace lexkit
