#include <catch2/catch_amalgamated.hpp>

#include <lexkit/convert.hpp>

#include <map>

#include "support.hpp"

using namespace lexkit;
using testsupport::demo_dialects;
using testsupport::demo_registry;
using testsupport::demo_tagset_de;
using testsupport::demo_tagset_fr;
using testsupport::fixture;

TEST_CASE("morphalou to tei matches the corrected figure structure") {
    std::string tei_bytes = convert(fixture("fig3_morphalou.xml"), DialectId::morphalou,
                                    DialectId::tei, demo_registry(), demo_dialects());
    LexicalResource back =
        read_resource(tei_bytes, DialectId::tei, demo_registry(), demo_dialects());
    REQUIRE(back == testsupport::championne_model());

    // the figure's own shape: typed forms, gramGrp with pos and gen, num
    // directly inside the inflected forms
    REQUIRE(tei_bytes.find("<form type=\"lemma\">") != std::string::npos);
    REQUIRE(tei_bytes.find("<form type=\"inflected\">") != std::string::npos);
    REQUIRE(tei_bytes.find("<gramGrp>") != std::string::npos);
    REQUIRE(tei_bytes.find("<pos>commonNoun</pos>") != std::string::npos);
    REQUIRE(tei_bytes.find("<gen>feminine</gen>") != std::string::npos);
    REQUIRE(tei_bytes.find("<num>singular</num>") != std::string::npos);
    REQUIRE(tei_bytes.find("<num>plural</num>") != std::string::npos);
}

TEST_CASE("conversion to the same dialect is canonicalizing and idempotent") {
    struct Case {
        const char* file;
        DialectId dialect;
    };
    const Case cases[] = {
        {"fig3_morphalou.xml", DialectId::morphalou},
        {"canonical_empty.xml", DialectId::canonical_lmf},
        {"tei_championne_corrected.xml", DialectId::tei},
    };
    for (const Case& c : cases) {
        INFO(c.file);
        std::string once =
            convert(fixture(c.file), c.dialect, c.dialect, demo_registry(), demo_dialects());
        std::string twice = convert(once, c.dialect, c.dialect, demo_registry(), demo_dialects());
        REQUIRE(once == twice);
    }
}

TEST_CASE("tei -> morphalou -> tei reproduces the structure") {
    std::string tei1 = convert(fixture("tei_championne_corrected.xml"), DialectId::tei,
                               DialectId::tei, demo_registry(), demo_dialects());
    std::string morphalou = convert(tei1, DialectId::tei, DialectId::morphalou, demo_registry(),
                                    demo_dialects());
    std::string tei2 =
        convert(morphalou, DialectId::morphalou, DialectId::tei, demo_registry(), demo_dialects());
    REQUIRE(tei1 == tei2);
    REQUIRE(read_resource(tei1, DialectId::tei, demo_registry(), demo_dialects()) ==
            read_resource(tei2, DialectId::tei, demo_registry(), demo_dialects()));
}

TEST_CASE("NotExpressible propagates through convert") {
    // the German import carries case features, which TEI cannot say
    ImportResult imported =
        import_multext(fixture("hund.lex"), demo_tagset_de(), demo_registry(), "de");
    std::string canonical = write_resource(imported.resource, DialectId::canonical_lmf,
                                           demo_registry(), demo_dialects());
    try {
        convert(canonical, DialectId::canonical_lmf, DialectId::tei, demo_registry(),
                demo_dialects());
        FAIL();
    } catch (const Error& e) {
        REQUIRE(e.code() == errc::not_expressible);
    }
}

// ---------------------------------------------------------------------------
// Multext import

TEST_CASE("single-line import lifts all features onto the lemma form") {
    ImportResult r = import_multext("Hundes Hund Ncmsg", demo_tagset_de(), demo_registry(), "de");
    REQUIRE(r.errors.empty());
    REQUIRE(r.lines_read == 1);
    REQUIRE(r.resource.lexica.size() == 1);
    const Lexicon& lex = r.resource.lexica[0];
    REQUIRE(lex.language == "de");
    REQUIRE(lex.entries.size() == 1);

    const LexicalEntry& e = lex.entries[0];
    REQUIRE(e.id == "Hund_1");
    REQUIRE(e.feats == FeatureStructure::build({{"partOfSpeech", "noun"}}));
    REQUIRE(e.forms.size() == 2);
    REQUIRE(e.forms[0].type == FormType::lemma);
    REQUIRE(e.forms[0].representations[0].written_form() == "Hund");
    // with a single member every non-cat feature is shared
    REQUIRE(e.forms[0].feats == FeatureStructure::build({{"type", "common"},
                                                         {"gender", "masculine"},
                                                         {"number", "singular"},
                                                         {"case", "genitive"}}));
    REQUIRE(e.forms[1].type == FormType::wordForm);
    REQUIRE(e.forms[1].representations[0].written_form() == "Hundes");
    REQUIRE(e.forms[1].feats.empty());

    REQUIRE(reexpand_word_form(e, e.forms[1]) == demo_tagset_de().decode("Ncmsg"));
}

TEST_CASE("the championne pair imports with the figure's feature placement") {
    ImportResult r =
        import_multext(fixture("championne.lex"), demo_tagset_fr(), demo_registry(), "fr");
    REQUIRE(r.errors.empty());
    const Lexicon& lex = r.resource.lexica[0];
    REQUIRE(lex.entries.size() == 1);
    const LexicalEntry& e = lex.entries[0];
    REQUIRE(e.id == "championne_1");
    REQUIRE(e.feats.get("partOfSpeech") == "noun");
    REQUIRE(e.forms.size() == 3);
    // gender sits on the lemma, number on the inflected forms
    REQUIRE(e.forms[0].type == FormType::lemma);
    REQUIRE(e.forms[0].feats == FeatureStructure::build({{"type", "common"},
                                                         {"gender", "feminine"}}));
    REQUIRE(e.forms[1].feats == FeatureStructure::build({{"number", "singular"}}));
    REQUIRE(e.forms[2].feats == FeatureStructure::build({{"number", "plural"}}));
    REQUIRE(e.forms[1].representations[0].written_form() == "championne");
    REQUIRE(e.forms[2].representations[0].written_form() == "championnes");
}

TEST_CASE("empty input imports as one empty lexicon") {
    ImportResult r = import_multext("", demo_tagset_de(), demo_registry(), "de");
    REQUIRE(r.errors.empty());
    REQUIRE(r.resource.lexica.size() == 1);
    REQUIRE(r.resource.lexica[0].entries.empty());
    REQUIRE(validate_resource(r.resource, demo_registry()).ok());

    ImportResult comments =
        import_multext("# nur Kommentare\n\n   \n", demo_tagset_de(), demo_registry(), "de");
    REQUIRE(comments.resource.lexica[0].entries.empty());
}

TEST_CASE("line errors are collected, not fatal") {
    ImportResult r =
        import_multext(fixture("bad_tags.lex"), demo_tagset_de(), demo_registry(), "de");
    REQUIRE(r.errors.size() == 1);
    REQUIRE(r.errors[0].line == 8); // the Nxxsn line, counting the comment line
    REQUIRE(r.errors[0].message.find("UnknownCode") != std::string::npos);
    REQUIRE(r.lines_read == 9);
    REQUIRE(resource_stats(r.resource).word_forms == 9);

    ImportResult two = import_multext("kaputt kaputt\nHundes Hund Ncmsg\n", demo_tagset_de(),
                                      demo_registry(), "de");
    REQUIRE(two.errors.size() == 1);
    REQUIRE(two.errors[0].line == 1);
    REQUIRE(two.errors[0].message.find("FieldCount") != std::string::npos);
    REQUIRE(two.lines_read == 1);
}

TEST_CASE("homographs across categories get occurrence-indexed ids") {
    std::string text =
        "essen\tessen\tVmp1p\n"
        "Essen\tessen\tNcnsn\n"
        "isst\tessen\tVmp3s\n";
    ImportResult r = import_multext(text, demo_tagset_de(), demo_registry(), "de");
    REQUIRE(r.errors.empty());
    const Lexicon& lex = r.resource.lexica[0];
    REQUIRE(lex.entries.size() == 2);
    REQUIRE(lex.entries[0].id == "essen_1");
    REQUIRE(lex.entries[0].feats.get("partOfSpeech") == "verb");
    REQUIRE(lex.entries[0].forms.size() == 3); // lemma + two verb lines
    REQUIRE(lex.entries[1].id == "essen_2");
    REQUIRE(lex.entries[1].feats.get("partOfSpeech") == "noun");
}

TEST_CASE("duplicate lines each become their own wordForm") {
    ImportResult r = import_multext("geht gehen Vmp3s\ngeht gehen Vmp3s\n", demo_tagset_de(),
                                    demo_registry(), "de");
    REQUIRE(r.errors.empty());
    const LexicalEntry& e = r.resource.lexica[0].entries[0];
    REQUIRE(resource_stats(r.resource).word_forms == 2);
    REQUIRE(reexpand_word_form(e, e.forms[1]) == demo_tagset_de().decode("Vmp3s"));
    REQUIRE(reexpand_word_form(e, e.forms[2]) == demo_tagset_de().decode("Vmp3s"));
}

TEST_CASE("an imported entry-level category survives the Morphalou dialect") {
    // one line, type slot left unspecified, so every feature fits Morphalou
    ImportResult r =
        import_multext("championne championne N-fs", demo_tagset_fr(), demo_registry(), "fr");
    REQUIRE(r.errors.empty());
    std::string bytes = write_resource(r.resource, DialectId::morphalou, demo_registry(),
                                       demo_dialects());
    // the entry-level partOfSpeech lands as an element under lexicalEntry
    REQUIRE(bytes.find("<grammaticalCategory>noun</grammaticalCategory>") != std::string::npos);
    REQUIRE(read_resource(bytes, DialectId::morphalou, demo_registry(), demo_dialects()) ==
            r.resource);
}

TEST_CASE("fig3 survives morphalou -> canonical -> morphalou") {
    std::string canonical = convert(fixture("fig3_morphalou.xml"), DialectId::morphalou,
                                    DialectId::canonical_lmf, demo_registry(), demo_dialects());
    // canonical stores the bare entry id, no fragment prefix
    REQUIRE(canonical.find("target=\"champion_1\"") != std::string::npos);
    std::string back = convert(canonical, DialectId::canonical_lmf, DialectId::morphalou,
                               demo_registry(), demo_dialects());
    REQUIRE(back.find("target=\"#champion_1\"") != std::string::npos);
    REQUIRE(read_resource(back, DialectId::morphalou, demo_registry(), demo_dialects()) ==
            testsupport::championne_model());
}

TEST_CASE("import normalizes orthographies to NFC") {
    // decomposed u + diaeresis in both form and lemma
    std::string text = "Hündin Hündin Ncfsn\n";
    ImportResult r = import_multext(text, demo_tagset_de(), demo_registry(), "de");
    REQUIRE(r.errors.empty());
    const LexicalEntry& e = r.resource.lexica[0].entries[0];
    REQUIRE(e.id == "Hündin_1");
    REQUIRE(e.forms[0].representations[0].written_form() == "Hündin");
}

TEST_CASE("import losslessness oracle on random lexica") {
    for (unsigned seed = 1; seed <= 5; ++seed) {
        testsupport::MultextFixture fx = testsupport::random_multext(seed, 120, demo_tagset_de());
        ImportResult r = import_multext(fx.text, demo_tagset_de(), demo_registry(), "de");
        REQUIRE(r.errors.empty());
        REQUIRE(r.lines_read == fx.lines.size());

        // count preservation
        REQUIRE(resource_stats(r.resource).word_forms == fx.lines.size());

        // grouping soundness: (lemma writtenForm, partOfSpeech) unique
        std::set<std::pair<std::string, std::string>> keys;
        const Lexicon& lex = r.resource.lexica[0];
        for (const LexicalEntry& e : lex.entries) {
            const Form* lemma = e.lemma_form();
            REQUIRE(lemma != nullptr);
            auto key = std::make_pair(std::string(lemma->representations[0].written_form()),
                                      std::string(*e.feats.get("partOfSpeech")));
            REQUIRE(keys.insert(key).second);
        }

        // per-line re-expansion: walk the file again, consuming each group's
        // wordForms in order, and compare against a fresh decode
        std::map<std::pair<std::string, std::string>, const LexicalEntry*> by_key;
        std::map<const LexicalEntry*, std::size_t> cursor;
        for (const LexicalEntry& e : lex.entries) {
            const Form* lemma = e.lemma_form();
            by_key[{std::string(lemma->representations[0].written_form()),
                    std::string(*e.feats.get("partOfSpeech"))}] = &e;
        }
        for (const LexiconLine& line : fx.lines) {
            FeatureStructure decoded = demo_tagset_de().decode(line.tag);
            const LexicalEntry* e = by_key.at({line.lemma, std::string(*decoded.get("cat"))});
            std::size_t word_index = 1 + cursor[e]++; // forms[0] is the lemma
            REQUIRE(word_index < e->forms.size() + 1);
            const Form& wf = e->forms[word_index];
            REQUIRE(wf.representations[0].written_form() == line.form);
            REQUIRE(reexpand_word_form(*e, wf) == decoded);
        }
    }
}
