#pragma once

// Shared helpers for the unit and acceptance suites: demo-data loading and
// deterministic random generators for resources and Multext lexicon files.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <lexkit/lexkit.hpp>

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(LEXKIT_DATA_DIR); }
inline fs::path fixture_dir() { return fs::path(LEXKIT_FIXTURE_DIR); }

inline std::string data_file(const std::string& name) {
    return lexkit::read_file(data_dir() / name);
}

inline std::string fixture(const std::string& name) {
    return lexkit::read_file(fixture_dir() / name);
}

inline const lexkit::Registry& demo_registry() {
    static lexkit::Registry reg = lexkit::Registry::load(data_file("registry.tsv"));
    return reg;
}

inline const lexkit::TagsetSpec& demo_tagset_de() {
    static lexkit::TagsetSpec spec =
        lexkit::TagsetSpec::load(data_file("tagset-de.tsv"), demo_registry());
    return spec;
}

inline const lexkit::TagsetSpec& demo_tagset_fr() {
    static lexkit::TagsetSpec spec =
        lexkit::TagsetSpec::load(data_file("tagset-fr.tsv"), demo_registry());
    return spec;
}

inline const lexkit::DialectSet& demo_dialects() {
    static lexkit::DialectSet set{
        lexkit::DialectMapping::load(data_file("morphalou.map"), demo_registry()),
        lexkit::DialectMapping::load(data_file("tei.map"), demo_registry()),
    };
    return set;
}

/// The championne entry, built by hand exactly as the Morphalou figure
/// describes it: part of speech and gender on the lemma form, number on the
/// two inflected forms, one relation to the (absent) champion entry.
inline lexkit::LexicalResource championne_model() {
    using namespace lexkit;
    LexicalResource res;
    Lexicon lex;
    lex.language = "fr";
    LexicalEntry e;
    e.id = "championne_1";
    e.relations.push_back({"feminineVariantOf", "champion_1", "champion"});

    Form lemma;
    lemma.type = FormType::lemma;
    lemma.feats.add("partOfSpeech", "commonNoun");
    lemma.feats.add("gender", "feminine");
    FormRepresentation lr;
    lr.feats.add(kWrittenForm, "championne");
    lemma.representations.push_back(std::move(lr));
    e.forms.push_back(std::move(lemma));

    Form singular;
    singular.type = FormType::wordForm;
    singular.feats.add("number", "singular");
    FormRepresentation sr;
    sr.feats.add(kWrittenForm, "championne");
    singular.representations.push_back(std::move(sr));
    e.forms.push_back(std::move(singular));

    Form plural;
    plural.type = FormType::wordForm;
    plural.feats.add("number", "plural");
    FormRepresentation pr;
    pr.feats.add(kWrittenForm, "championnes");
    plural.representations.push_back(std::move(pr));
    e.forms.push_back(std::move(plural));

    lex.entries.push_back(std::move(e));
    res.lexica.push_back(std::move(lex));
    return res;
}

// ---------------------------------------------------------------------------
// randomized model instances

class Rng {
public:
    explicit Rng(unsigned seed) : engine_(seed) {}

    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(engine_) < p; }

    std::string word(std::size_t min_len = 3, std::size_t max_len = 8) {
        static const std::vector<std::string> letters = {
            "a", "b", "c", "d", "e", "f", "g", "h", "i", "k", "l", "m",
            "n", "o", "p", "r", "s", "t", "u", "w", "z", "é", "ö", "ü"};
        std::size_t len = min_len + below(max_len - min_len + 1);
        std::string out;
        for (std::size_t i = 0; i < len; ++i) out += letters[below(letters.size())];
        return out;
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937 engine_;
};

/// Pool of (attribute, candidate values) kept inside every demo domain that
/// applies universally and for "de"/"fr", so generated resources are also
/// validation-clean.
inline const std::vector<std::pair<std::string, std::vector<std::string>>>& feature_pool() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> pool = {
        {"gender", {"masculine", "feminine", "neuter"}},
        {"number", {"singular", "plural"}},
        {"case", {"nominative", "genitive", "dative", "accusative"}},
        {"type", {"common", "proper"}},
        {"degree", {"positive", "comparative", "superlative"}},
    };
    return pool;
}

inline lexkit::FeatureStructure random_feats(Rng& rng, std::size_t max_pairs) {
    lexkit::FeatureStructure fs;
    std::size_t n = rng.below(max_pairs + 1);
    std::vector<std::size_t> order(feature_pool().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < order.size(); ++i) std::swap(order[i], order[rng.below(order.size())]);
    for (std::size_t i = 0; i < n && i < order.size(); ++i) {
        const auto& [attr, values] = feature_pool()[order[i]];
        fs.add(attr, rng.pick(values));
    }
    return fs;
}

inline lexkit::Sense random_sense(Rng& rng, std::size_t depth_budget, int& counter) {
    lexkit::Sense s;
    if (rng.chance(0.6)) s.id = "s" + std::to_string(counter++);
    s.feats = random_feats(rng, 2);
    if (depth_budget > 1) {
        std::size_t kids = rng.below(3);
        for (std::size_t i = 0; i < kids; ++i)
            s.subsenses.push_back(random_sense(rng, depth_budget - 1, counter));
    }
    return s;
}

/// Small random resource: entries <= max_entries, sense depth <= max_depth.
/// Valid by construction (one lemma per entry, relations target real entries,
/// feature values inside their domains).
inline lexkit::LexicalResource random_resource(unsigned seed, std::size_t max_entries = 5,
                                               std::size_t max_sense_depth = 4) {
    Rng rng(seed);
    lexkit::LexicalResource res;
    if (rng.chance(0.5)) res.global.feats.add("creator", "lexkit-test");
    if (rng.chance(0.3)) res.global.feats.add("version", "v" + std::to_string(rng.below(9) + 1));

    lexkit::Lexicon lex;
    static const std::vector<std::string> langs = {"", "de", "fr"};
    lex.language = rng.pick(langs);
    if (rng.chance(0.3)) lex.feats.add("note", rng.word());

    std::size_t entry_count = rng.below(max_entries + 1);
    int sense_counter = 0;
    for (std::size_t ei = 0; ei < entry_count; ++ei) {
        lexkit::LexicalEntry e;
        e.id = rng.word() + "_" + std::to_string(ei);
        if (rng.chance(0.5)) e.feats.add("partOfSpeech", rng.chance(0.5) ? "noun" : "verb");

        std::size_t form_count = 1 + rng.below(3);
        bool lemma_used = false;
        for (std::size_t fi = 0; fi < form_count; ++fi) {
            lexkit::Form f;
            if (!lemma_used && rng.chance(0.6)) {
                f.type = lexkit::FormType::lemma;
                lemma_used = true;
            } else {
                f.type = rng.chance(0.85) ? lexkit::FormType::wordForm : lexkit::FormType::stem;
            }
            f.feats = random_feats(rng, 3);
            std::size_t rep_count = 1 + rng.below(2);
            for (std::size_t ri = 0; ri < rep_count; ++ri) {
                lexkit::FormRepresentation rep;
                rep.feats.add(lexkit::kWrittenForm, rng.word());
                if (rng.chance(0.2)) rep.feats.add("note", rng.word());
                f.representations.push_back(std::move(rep));
            }
            e.forms.push_back(std::move(f));
        }

        if (rng.chance(0.5)) {
            std::size_t sense_count = 1 + rng.below(2);
            for (std::size_t si = 0; si < sense_count; ++si)
                e.senses.push_back(random_sense(rng, 1 + rng.below(max_sense_depth), sense_counter));
        }
        lex.entries.push_back(std::move(e));
    }

    // relations point at entries that exist, so the resource validates clean
    if (!lex.entries.empty()) {
        std::vector<std::string> ids;
        for (const auto& e : lex.entries) ids.push_back(e.id);
        for (auto& e : lex.entries) {
            if (rng.chance(0.3)) {
                lexkit::EntryRelation rel;
                rel.type = rng.chance(0.5) ? "feminineVariantOf" : "variantOf";
                rel.target = rng.pick(ids);
                if (rng.chance(0.5)) rel.label = rng.word();
                e.relations.push_back(std::move(rel));
            }
        }
    }
    res.lexica.push_back(std::move(lex));
    return res;
}

// ---------------------------------------------------------------------------
// randomized Multext lexicon files

struct MultextFixture {
    std::string text;
    std::vector<lexkit::LexiconLine> lines; // in file order, comments excluded
};

/// Random three-column lexicon over the given tagset: a smallish lemma pool
/// so grouping kicks in, tags drawn from the full enumerable set, mixed
/// TAB/space separators, occasional comments and blank lines.
inline MultextFixture random_multext(unsigned seed, std::size_t line_count,
                                     const lexkit::TagsetSpec& spec) {
    Rng rng(seed);
    std::vector<std::string> tags = spec.all_tags();
    std::size_t pool_size = 1 + line_count / 3;
    std::vector<std::string> lemmas;
    for (std::size_t i = 0; i < pool_size; ++i)
        lemmas.push_back(rng.word() + std::to_string(i));

    MultextFixture fx;
    for (std::size_t i = 0; i < line_count; ++i) {
        if (rng.chance(0.05)) fx.text += "# noise comment\n";
        if (rng.chance(0.05)) fx.text += "\n";
        lexkit::LexiconLine line;
        line.form = rng.word();
        line.lemma = rng.pick(lemmas);
        line.tag = rng.pick(tags);
        const char* sep1 = rng.chance(0.5) ? "\t" : " ";
        const char* sep2 = rng.chance(0.5) ? "\t" : "  ";
        fx.text += line.form + sep1 + line.lemma + sep2 + line.tag + "\n";
        fx.lines.push_back(std::move(line));
    }
    return fx;
}

} // namespace testsupport
