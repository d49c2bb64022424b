#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialects.hpp"
#include "errors.hpp"
#include "lmf.hpp"
#include "msd.hpp"
#include "registry.hpp"

namespace lexkit {

/// Cross-dialect conversion: parse in one dialect, serialize in another.
/// Converting a document to its own dialect canonicalizes it: a second pass
/// over the output is byte-identical.
inline std::string convert(std::string_view bytes, DialectId from, DialectId to,
                           const Registry& reg, const DialectSet& dialects) {
    return write_resource(read_resource(bytes, from, reg, dialects), to, reg, dialects);
}

struct LineError {
    std::size_t line = 0;
    std::string message;
};

struct ImportResult {
    LexicalResource resource;
    std::vector<LineError> errors;
    std::size_t lines_read = 0; // lines successfully parsed and decoded
};

/// Multext full-form lexicon import. Lines are grouped into entries by
/// (lemma, decoded cat value); the cat value becomes the entry's
/// partOfSpeech, features shared by every group member sit on the lemma
/// form, and each input line becomes one wordForm carrying its remaining
/// features. Line errors are collected, not fatal; the resource covers the
/// lines that survived.
inline ImportResult import_multext(std::string_view bytes, const TagsetSpec& spec,
                                   const Registry& reg, std::string_view language) {
    (void)reg; // decode output is registry-validated by tagset construction
    ImportResult result;

    struct Member {
        LexiconLine line;
        FeatureStructure feats; // decoded, minus cat
    };
    struct Group {
        std::string lemma;
        std::string pos;
        std::vector<Member> members;
    };
    std::vector<Group> groups;
    std::map<std::pair<std::string, std::string>, std::size_t> group_index;
    std::map<std::string, std::size_t> lemma_occurrences;
    std::map<std::pair<std::string, std::string>, std::size_t> group_ordinal;

    if (!uni::valid_utf8(bytes)) raise(errc::parse_error, "input is not valid UTF-8");

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos) ? bytes.substr(pos)
                                                               : bytes.substr(pos, eol - pos);
        ++lineno;
        pos = (eol == std::string_view::npos) ? bytes.size() + 1 : eol + 1;

        std::string_view stripped = detail::trim(raw);
        if (stripped.empty() || stripped.front() == '#') continue;

        try {
            LexiconLine line = parse_line(raw);
            FeatureStructure decoded = spec.decode(line.tag);
            std::string cat(*decoded.get(kCategoryFeature));
            FeatureStructure rest;
            for (const Feature& f : decoded)
                if (f.name.str() != kCategoryFeature) rest.add(f);

            auto key = std::make_pair(line.lemma, cat);
            auto it = group_index.find(key);
            if (it == group_index.end()) {
                it = group_index.emplace(key, groups.size()).first;
                groups.push_back(Group{line.lemma, cat, {}});
                group_ordinal[key] = ++lemma_occurrences[line.lemma];
            }
            groups[it->second].members.push_back(Member{std::move(line), std::move(rest)});
            ++result.lines_read;
        } catch (const Error& e) {
            result.errors.push_back({lineno, e.what()});
        }
    }

    Lexicon lexicon;
    lexicon.language = uni::nfc(language);
    for (const Group& g : groups) {
        LexicalEntry entry;
        entry.id = g.lemma + "_" + std::to_string(group_ordinal.at({g.lemma, g.pos}));
        entry.feats.add(kPartOfSpeech, g.pos);

        // strict intersection: a pair is shared when every member carries it
        FeatureStructure shared;
        for (const Feature& f : g.members.front().feats) {
            bool everywhere = true;
            for (const Member& mem : g.members) {
                auto v = mem.feats.get(f.name.str());
                if (!v || *v != f.value.str()) { everywhere = false; break; }
            }
            if (everywhere) shared.add(f);
        }

        Form lemma_form;
        lemma_form.type = FormType::lemma;
        lemma_form.feats = shared;
        FormRepresentation lemma_rep;
        lemma_rep.feats.add(kWrittenForm, g.lemma);
        lemma_form.representations.push_back(std::move(lemma_rep));
        entry.forms.push_back(std::move(lemma_form));

        for (const Member& mem : g.members) {
            Form wf;
            wf.type = FormType::wordForm;
            for (const Feature& f : mem.feats)
                if (!shared.contains(f.name.str())) wf.feats.add(f);
            FormRepresentation rep;
            rep.feats.add(kWrittenForm, mem.line.form);
            wf.representations.push_back(std::move(rep));
            entry.forms.push_back(std::move(wf));
        }
        lexicon.entries.push_back(std::move(entry));
    }
    result.resource.lexica.push_back(std::move(lexicon));
    return result;
}

/// Re-expands an imported entry: entry partOfSpeech (as `cat`) ⊔ lemma-form
/// feats ⊔ one wordForm's feats. Import is lossless exactly when this equals
/// the corresponding line's decoded structure for every wordForm.
inline FeatureStructure reexpand_word_form(const LexicalEntry& entry, const Form& word_form) {
    FeatureStructure fs;
    auto pos = entry.feats.get(kPartOfSpeech);
    if (pos) fs.add(kCategoryFeature, *pos);
    const Form* lemma = entry.lemma_form();
    if (lemma != nullptr) fs = fs.merged(lemma->feats);
    return fs.merged(word_form.feats);
}

} // namespace lexkit
