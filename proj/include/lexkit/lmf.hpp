#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "feature.hpp"
#include "registry.hpp"

namespace lexkit {

enum class FormType { lemma, wordForm, stem };

inline std::string_view to_string(FormType t) noexcept {
    switch (t) {
        case FormType::lemma: return "lemma";
        case FormType::wordForm: return "wordForm";
        case FormType::stem: return "stem";
    }
    return "wordForm";
}

inline std::optional<FormType> formtype_from(std::string_view s) noexcept {
    if (s == "lemma") return FormType::lemma;
    if (s == "wordForm") return FormType::wordForm;
    if (s == "stem") return FormType::stem;
    return std::nullopt;
}

/// Feature name that carries a form's orthography.
inline constexpr std::string_view kWrittenForm = "writtenForm";
/// Feature name for the entry-level part of speech.
inline constexpr std::string_view kPartOfSpeech = "partOfSpeech";

/// One written/spoken rendering of a form. The feats must include a
/// non-empty `writtenForm`.
struct FormRepresentation {
    FeatureStructure feats;

    std::string_view written_form() const {
        auto v = feats.get(kWrittenForm);
        return v ? *v : std::string_view();
    }

    friend bool operator==(const FormRepresentation&, const FormRepresentation&) = default;
};

struct Form {
    FormType type = FormType::wordForm;
    FeatureStructure feats;
    std::vector<FormRepresentation> representations; // at least one

    friend bool operator==(const Form&, const Form&) = default;
};

/// Fully recursive sense tree. Absent from full-form lexica but round-tripped
/// by the canonical serializer.
struct Sense {
    std::string id; // optional
    FeatureStructure feats;
    std::vector<Sense> subsenses;

    friend bool operator==(const Sense&, const Sense&) = default;
};

/// Typed link to another entry, e.g. feminineVariantOf. The target is an
/// entry id within the same resource; dangling targets are validation
/// violations, not load errors.
struct EntryRelation {
    std::string type;
    std::string target;
    std::string label; // display text, stored verbatim

    friend bool operator==(const EntryRelation&, const EntryRelation&) = default;
};

struct LexicalEntry {
    std::string id;
    FeatureStructure feats;
    std::vector<Form> forms; // at least one, at most one lemma
    std::vector<Sense> senses;
    std::vector<EntryRelation> relations;

    const Form* lemma_form() const {
        for (const Form& f : forms)
            if (f.type == FormType::lemma) return &f;
        return nullptr;
    }

    friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
};

struct Lexicon {
    std::string language;
    FeatureStructure feats;
    std::vector<LexicalEntry> entries;

    friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

struct GlobalInformation {
    FeatureStructure feats;

    friend bool operator==(const GlobalInformation&, const GlobalInformation&) = default;
};

struct LexicalResource {
    GlobalInformation global;
    std::vector<Lexicon> lexica; // at least one

    friend bool operator==(const LexicalResource&, const LexicalResource&) = default;
};

// ---------------------------------------------------------------------------
// validation

enum class ViolationCode {
    no_lexicon,
    missing_form,
    multiple_lemma_forms,
    missing_representation,
    missing_written_form,
    duplicate_entry_id,
    dangling_relation_target,
    unknown_relation_type,
    invalid_feature_value,
};

inline const char* to_string(ViolationCode c) noexcept {
    switch (c) {
        case ViolationCode::no_lexicon: return "NoLexicon";
        case ViolationCode::missing_form: return "MissingForm";
        case ViolationCode::multiple_lemma_forms: return "MultipleLemmaForms";
        case ViolationCode::missing_representation: return "MissingRepresentation";
        case ViolationCode::missing_written_form: return "MissingWrittenForm";
        case ViolationCode::duplicate_entry_id: return "DuplicateEntryId";
        case ViolationCode::dangling_relation_target: return "DanglingRelationTarget";
        case ViolationCode::unknown_relation_type: return "UnknownRelationType";
        case ViolationCode::invalid_feature_value: return "InvalidFeatureValue";
    }
    return "Unknown";
}

struct Violation {
    ViolationCode code;
    std::string location; // path such as lexicon[0]/entry[championne_1]/form[1]
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

inline void check_feats(const FeatureStructure& fs, const Registry& reg,
                        std::string_view language, const std::string& location,
                        ValidationReport& report) {
    for (const Feature& f : fs) {
        // only attributes with a registered conceptual domain are constrained;
        // free-text attributes (writtenForm, metadata) pass through
        if (!reg.is_attribute(f.name.str())) continue;
        const std::set<std::string>* dom = reg.applicable_domain(f.name.str(), language);
        if (dom == nullptr) continue;
        if (dom->count(f.value.str()) == 0)
            report.violations.push_back(
                {ViolationCode::invalid_feature_value, location,
                 "value '" + f.value.str() + "' is not in the domain of '" + f.name.str() + "'"});
    }
}

} // namespace detail

/// Structural and semantic check of a whole resource. Violations are data,
/// not failures; an empty report means valid.
inline ValidationReport validate_resource(const LexicalResource& res, const Registry& reg) {
    ValidationReport report;

    std::set<std::string> all_entry_ids;
    for (const Lexicon& lex : res.lexica)
        for (const LexicalEntry& e : lex.entries)
            if (!e.id.empty()) all_entry_ids.insert(e.id);

    if (res.lexica.empty())
        report.violations.push_back(
            {ViolationCode::no_lexicon, "resource", "a lexical resource needs at least one lexicon"});

    detail::check_feats(res.global.feats, reg, {}, "global", report);

    for (std::size_t li = 0; li < res.lexica.size(); ++li) {
        const Lexicon& lex = res.lexica[li];
        std::string lex_loc = "lexicon[" + std::to_string(li) + "]";
        detail::check_feats(lex.feats, reg, lex.language, lex_loc, report);

        std::set<std::string> seen_ids;
        for (std::size_t ei = 0; ei < lex.entries.size(); ++ei) {
            const LexicalEntry& e = lex.entries[ei];
            std::string e_loc =
                lex_loc + "/entry[" + (e.id.empty() ? std::to_string(ei) : e.id) + "]";

            if (!e.id.empty() && !seen_ids.insert(e.id).second)
                report.violations.push_back({ViolationCode::duplicate_entry_id, e_loc,
                                             "entry id '" + e.id + "' occurs twice in this lexicon"});
            if (e.forms.empty())
                report.violations.push_back({ViolationCode::missing_form, e_loc,
                                             "a lexical entry needs at least one form"});
            std::size_t lemma_count = 0;
            for (const Form& f : e.forms)
                if (f.type == FormType::lemma) ++lemma_count;
            if (lemma_count > 1)
                report.violations.push_back({ViolationCode::multiple_lemma_forms, e_loc,
                                             std::to_string(lemma_count) + " lemma forms"});

            detail::check_feats(e.feats, reg, lex.language, e_loc, report);

            for (std::size_t fi = 0; fi < e.forms.size(); ++fi) {
                const Form& f = e.forms[fi];
                std::string f_loc = e_loc + "/form[" + std::to_string(fi) + "]";
                if (f.representations.empty())
                    report.violations.push_back({ViolationCode::missing_representation, f_loc,
                                                 "a form needs at least one representation"});
                detail::check_feats(f.feats, reg, lex.language, f_loc, report);
                for (std::size_t ri = 0; ri < f.representations.size(); ++ri) {
                    const FormRepresentation& rep = f.representations[ri];
                    std::string r_loc = f_loc + "/representation[" + std::to_string(ri) + "]";
                    if (rep.written_form().empty())
                        report.violations.push_back({ViolationCode::missing_written_form, r_loc,
                                                     "representation has no writtenForm"});
                    detail::check_feats(rep.feats, reg, lex.language, r_loc, report);
                }
            }

            for (std::size_t si = 0; si < e.relations.size(); ++si) {
                const EntryRelation& rel = e.relations[si];
                std::string rel_loc = e_loc + "/relation[" + std::to_string(si) + "]";
                if (!reg.is_attribute(rel.type))
                    report.violations.push_back(
                        {ViolationCode::unknown_relation_type, rel_loc,
                         "relation type '" + rel.type + "' is not a registered attribute"});
                if (all_entry_ids.count(rel.target) == 0)
                    report.violations.push_back(
                        {ViolationCode::dangling_relation_target, rel_loc,
                         "target '" + rel.target + "' does not name an entry in this resource"});
            }

            // sense feats, recursively
            std::vector<std::pair<const Sense*, std::string>> stack;
            for (std::size_t si = 0; si < e.senses.size(); ++si)
                stack.emplace_back(&e.senses[si], e_loc + "/sense[" + std::to_string(si) + "]");
            while (!stack.empty()) {
                auto [s, s_loc] = stack.back();
                stack.pop_back();
                detail::check_feats(s->feats, reg, lex.language, s_loc, report);
                for (std::size_t si = 0; si < s->subsenses.size(); ++si)
                    stack.emplace_back(&s->subsenses[si],
                                       s_loc + "/sense[" + std::to_string(si) + "]");
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// full-form lookup

struct LookupHit {
    std::string entry_id;
    FormType form_type = FormType::wordForm;
    FeatureStructure feats; // entry ⊔ form ⊔ representation

    friend bool operator==(const LookupHit&, const LookupHit&) = default;
};

/// All (entry, form, representation) triples whose writtenForm equals
/// `surface` (exact after NFC). Feats are merged outward-in; a merge conflict
/// skips the triple with a warning. When `filter` is given, a hit's merged
/// feats must contain every filter pair.
inline std::vector<LookupHit> lookup_form(const LexicalResource& res, std::string_view surface,
                                          const FeatureStructure* filter = nullptr,
                                          std::vector<std::string>* warnings = nullptr) {
    std::vector<LookupHit> hits;
    std::string needle = uni::nfc(surface);
    for (const Lexicon& lex : res.lexica) {
        for (const LexicalEntry& e : lex.entries) {
            for (const Form& f : e.forms) {
                for (const FormRepresentation& rep : f.representations) {
                    if (rep.written_form() != needle) continue;
                    std::optional<FeatureStructure> merged = e.feats.try_merged(f.feats);
                    if (merged) merged = merged->try_merged(rep.feats);
                    if (!merged) {
                        if (warnings != nullptr)
                            warnings->push_back("conflicting features for '" + needle +
                                                "' in entry '" + e.id + "'; hit skipped");
                        continue;
                    }
                    if (filter != nullptr && !filter->subsumes(*merged)) continue;
                    hits.push_back({e.id, f.type, std::move(*merged)});
                }
            }
        }
    }
    return hits;
}

// ---------------------------------------------------------------------------
// stats

struct StatsSummary {
    std::size_t lexica = 0;
    std::size_t entries = 0;
    std::size_t lemma_forms = 0;
    std::size_t word_forms = 0;
    std::size_t stem_forms = 0;
    std::size_t representations = 0;
    std::size_t senses = 0; // recursive
    std::size_t relations = 0;

    std::size_t forms() const noexcept { return lemma_forms + word_forms + stem_forms; }

    friend bool operator==(const StatsSummary&, const StatsSummary&) = default;
};

namespace detail {
inline std::size_t count_senses(const Sense& s) {
    std::size_t n = 1;
    for (const Sense& sub : s.subsenses) n += count_senses(sub);
    return n;
}
} // namespace detail

inline StatsSummary resource_stats(const LexicalResource& res) {
    StatsSummary st;
    st.lexica = res.lexica.size();
    for (const Lexicon& lex : res.lexica) {
        st.entries += lex.entries.size();
        for (const LexicalEntry& e : lex.entries) {
            for (const Form& f : e.forms) {
                switch (f.type) {
                    case FormType::lemma: ++st.lemma_forms; break;
                    case FormType::wordForm: ++st.word_forms; break;
                    case FormType::stem: ++st.stem_forms; break;
                }
                st.representations += f.representations.size();
            }
            for (const Sense& s : e.senses) st.senses += detail::count_senses(s);
            st.relations += e.relations.size();
        }
    }
    return st;
}

} // namespace lexkit
