// lexkit command line front end: validation, conversion, tag codec, lexicon
// import, full-form lookup and stats over the supported dialects.
//
// Exit codes, uniform across subcommands:
//   0  success
//   1  domain violation (validation findings, codec errors, NotExpressible,
//      rejected import lines)
//   2  environmental failure (I/O, malformed input, bad usage)

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lexkit/lexkit.hpp>

namespace {

namespace fs = std::filesystem;

fs::path data_dir() {
    if (const char* env = std::getenv("LEXKIT_DATA"); env != nullptr && *env != '\0')
        return fs::path(env);
    return fs::path(LEXKIT_DEFAULT_DATA_DIR);
}

lexkit::Registry load_registry(const std::string& override_path) {
    fs::path p = override_path.empty() ? data_dir() / "registry.tsv" : fs::path(override_path);
    return lexkit::Registry::load(lexkit::read_file(p));
}

lexkit::TagsetSpec load_tagset(const std::string& override_path, const lexkit::Registry& reg) {
    fs::path p = override_path.empty() ? data_dir() / "tagset-de.tsv" : fs::path(override_path);
    return lexkit::TagsetSpec::load(lexkit::read_file(p), reg);
}

lexkit::DialectSet load_dialects(const lexkit::Registry& reg) {
    lexkit::DialectSet set;
    set.morphalou = lexkit::DialectMapping::load(lexkit::read_file(data_dir() / "morphalou.map"), reg);
    set.tei = lexkit::DialectMapping::load(lexkit::read_file(data_dir() / "tei.map"), reg);
    return set;
}

lexkit::DialectId parse_dialect(const std::string& name) {
    auto d = lexkit::dialect_from(name);
    if (!d) lexkit::raise(lexkit::errc::parse_error, "unknown dialect '" + name + "'");
    return *d;
}

std::pair<std::string, std::string> split_pair(const std::string& token) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
        lexkit::raise(lexkit::errc::parse_error, "expected name=value, got '" + token + "'");
    return {token.substr(0, eq), token.substr(eq + 1)};
}

std::string feat_list(const lexkit::FeatureStructure& fs) {
    std::string out;
    for (const lexkit::Feature& f : fs) {
        if (!out.empty()) out += ' ';
        out += f.name.str();
        out += '=';
        out += f.value.str();
    }
    return out;
}

void emit(const std::string& out_path, std::string_view bytes) {
    if (out_path.empty()) std::cout << bytes;
    else lexkit::write_file(out_path, bytes);
}

int fail(const lexkit::Error& e, int exit_code) {
    std::cerr << "lexkit: " << e.what() << "\n";
    return exit_code;
}

// ---------------------------------------------------------------------------

int run_validate(const std::string& path, const std::string& registry_path,
                 const std::string& dialect_name) {
    lexkit::Registry reg;
    lexkit::DialectSet dialects;
    lexkit::DialectId dialect;
    std::string bytes;
    try {
        reg = load_registry(registry_path);
        dialects = load_dialects(reg);
        dialect = parse_dialect(dialect_name);
        bytes = lexkit::read_file(path);
    } catch (const lexkit::Error& e) {
        return fail(e, 2);
    }

    lexkit::LexicalResource res;
    try {
        res = lexkit::read_resource(bytes, dialect, reg, dialects);
    } catch (const lexkit::Error& e) {
        if (e.code() == lexkit::errc::structural_violation) {
            std::cout << "error StructuralViolation - " << e.what() << "\n";
            return 1;
        }
        return fail(e, 2);
    }

    lexkit::ValidationReport report = lexkit::validate_resource(res, reg);
    for (const lexkit::Violation& v : report.violations)
        std::cout << "error " << lexkit::to_string(v.code) << " " << v.location << " "
                  << v.message << "\n";
    return report.ok() ? 0 : 1;
}

int run_convert(const std::string& path, const std::string& from_name, const std::string& to_name,
                const std::string& registry_path, const std::string& out_path) {
    try {
        lexkit::Registry reg = load_registry(registry_path);
        lexkit::DialectSet dialects = load_dialects(reg);
        lexkit::DialectId from = parse_dialect(from_name);
        lexkit::DialectId to = parse_dialect(to_name);
        std::string bytes = lexkit::read_file(path);
        lexkit::LexicalResource res = lexkit::read_resource(bytes, from, reg, dialects);
        try {
            emit(out_path, lexkit::write_resource(res, to, reg, dialects));
        } catch (const lexkit::Error& e) {
            if (e.code() == lexkit::errc::not_expressible) return fail(e, 1);
            throw;
        }
        return 0;
    } catch (const lexkit::Error& e) {
        return fail(e, 2);
    }
}

int run_tag(const std::string& mode, const std::vector<std::string>& values,
            const std::string& tagset_path, const std::string& registry_path) {
    lexkit::Registry reg;
    std::optional<lexkit::TagsetSpec> spec;
    try {
        reg = load_registry(registry_path);
        spec = load_tagset(tagset_path, reg);
    } catch (const lexkit::Error& e) {
        return fail(e, 2);
    }
    try {
        if (mode == "decode") {
            if (values.size() != 1)
                lexkit::raise(lexkit::errc::parse_error, "decode takes exactly one tag");
            lexkit::FeatureStructure fs = spec->decode(values.front());
            for (const lexkit::Feature& f : fs)
                std::cout << f.name.str() << "=" << f.value.str() << "\n";
        } else {
            lexkit::FeatureStructure fs;
            for (const std::string& token : values) {
                auto [name, value] = split_pair(token);
                fs.add(name, value);
            }
            std::cout << spec->encode(fs) << "\n";
        }
        return 0;
    } catch (const lexkit::Error& e) {
        return fail(e, 1);
    }
}

int run_lookup(const std::string& surface, const std::string& path,
               const std::string& dialect_name, const std::string& registry_path,
               const std::vector<std::string>& filters) {
    try {
        lexkit::Registry reg = load_registry(registry_path);
        lexkit::DialectSet dialects = load_dialects(reg);
        lexkit::DialectId dialect = parse_dialect(dialect_name);
        lexkit::LexicalResource res =
            lexkit::read_resource(lexkit::read_file(path), dialect, reg, dialects);

        lexkit::FeatureStructure filter;
        for (const std::string& token : filters) {
            auto [name, value] = split_pair(token);
            filter.add(name, value);
        }
        std::vector<std::string> warnings;
        std::vector<lexkit::LookupHit> hits = lexkit::lookup_form(
            res, surface, filters.empty() ? nullptr : &filter, &warnings);
        for (const std::string& w : warnings) std::cerr << "lexkit: warning: " << w << "\n";
        for (const lexkit::LookupHit& hit : hits)
            std::cout << hit.entry_id << "\t" << lexkit::to_string(hit.form_type) << "\t"
                      << feat_list(hit.feats) << "\n";
        return 0;
    } catch (const lexkit::Error& e) {
        return fail(e, 2);
    }
}

int run_import(const std::string& path, const std::string& language,
               const std::string& tagset_path, const std::string& registry_path,
               const std::string& out_path, bool keep_going) {
    lexkit::Registry reg;
    std::optional<lexkit::TagsetSpec> spec;
    std::string bytes;
    lexkit::DialectSet dialects;
    try {
        reg = load_registry(registry_path);
        spec = load_tagset(tagset_path, reg);
        dialects = load_dialects(reg);
        bytes = lexkit::read_file(path);
    } catch (const lexkit::Error& e) {
        return fail(e, 2);
    }

    lexkit::ImportResult result = lexkit::import_multext(bytes, *spec, reg, language);
    for (const lexkit::LineError& err : result.errors)
        std::cerr << "lexkit: line " << err.line << ": " << err.message << "\n";

    lexkit::StatsSummary st = lexkit::resource_stats(result.resource);
    std::cerr << "entries=" << st.entries << " forms=" << st.forms()
              << " errors=" << result.errors.size() << "\n";

    bool write_output = result.errors.empty() || keep_going;
    if (write_output) {
        try {
            emit(out_path, lexkit::write_resource(result.resource, lexkit::DialectId::canonical_lmf,
                                                  reg, dialects));
        } catch (const lexkit::Error& e) {
            return fail(e, 2);
        }
    }
    return result.errors.empty() ? 0 : 1;
}

int run_stats(const std::string& path, const std::string& dialect_name,
              const std::string& registry_path) {
    try {
        lexkit::Registry reg = load_registry(registry_path);
        lexkit::DialectSet dialects = load_dialects(reg);
        lexkit::DialectId dialect = parse_dialect(dialect_name);
        lexkit::LexicalResource res =
            lexkit::read_resource(lexkit::read_file(path), dialect, reg, dialects);
        lexkit::StatsSummary st = lexkit::resource_stats(res);
        std::cout << "lexica=" << st.lexica << "\n"
                  << "entries=" << st.entries << "\n"
                  << "lemmaForms=" << st.lemma_forms << "\n"
                  << "wordForms=" << st.word_forms << "\n"
                  << "stemForms=" << st.stem_forms << "\n"
                  << "representations=" << st.representations << "\n"
                  << "senses=" << st.senses << "\n"
                  << "relations=" << st.relations << "\n";
        return 0;
    } catch (const lexkit::Error& e) {
        return fail(e, 2);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexical-resource toolkit: LMF, Morphalou and TEI dictionary dialects"};
    app.require_subcommand(1);

    std::string in_path, out_path, registry_path, tagset_path, dialect_name = "canonical-lmf";
    std::string from_name, to_name, surface, language, tag_mode;
    std::vector<std::string> tag_values, filters;
    bool keep_going = false;

    CLI::App* validate = app.add_subcommand("validate", "check a lexicon file and report violations");
    validate->add_option("file", in_path, "lexicon file")->required();
    validate->add_option("--registry", registry_path, "registry file (default: demo data)");
    validate->add_option("--dialect", dialect_name, "canonical-lmf|morphalou|tei");

    CLI::App* convert = app.add_subcommand("convert", "convert a lexicon between dialects");
    convert->add_option("file", in_path, "input lexicon file")->required();
    convert->add_option("--from", from_name, "source dialect")->required();
    convert->add_option("--to", to_name, "target dialect")->required();
    convert->add_option("--registry", registry_path, "registry file (default: demo data)");
    convert->add_option("-o,--output", out_path, "output file (default: standard output)");

    CLI::App* tag = app.add_subcommand("tag", "decode or encode a positional MSD tag");
    tag->add_option("mode", tag_mode, "decode|encode")
        ->required()
        ->check(CLI::IsMember({"decode", "encode"}));
    tag->add_option("value", tag_values, "tag to decode, or name=value pairs to encode")
        ->required();
    tag->add_option("--tagset", tagset_path, "tagset file (default: demo German tagset)");
    tag->add_option("--registry", registry_path, "registry file (default: demo data)");

    CLI::App* lookup = app.add_subcommand("lookup", "find entries by written form");
    lookup->add_option("surface", surface, "surface form to look up")->required();
    lookup->add_option("file", in_path, "lexicon file")->required();
    lookup->add_option("--dialect", dialect_name, "canonical-lmf|morphalou|tei");
    lookup->add_option("--registry", registry_path, "registry file (default: demo data)");
    lookup->add_option("--filter", filters, "name=value constraint, repeatable (conjunctive)");

    CLI::App* import_cmd = app.add_subcommand("import", "import a Multext full-form lexicon");
    import_cmd->add_option("file", in_path, "three-column lexicon file")->required();
    import_cmd->add_option("--lang", language, "language code of the lexicon")->required();
    import_cmd->add_option("--tagset", tagset_path, "tagset file (default: demo German tagset)");
    import_cmd->add_option("--registry", registry_path, "registry file (default: demo data)");
    import_cmd->add_option("-o,--output", out_path, "output file (default: standard output)");
    import_cmd->add_flag("--keep-going", keep_going, "write partial output despite line errors");

    CLI::App* stats = app.add_subcommand("stats", "print component counts of a lexicon file");
    stats->add_option("file", in_path, "lexicon file")->required();
    stats->add_option("--dialect", dialect_name, "canonical-lmf|morphalou|tei");
    stats->add_option("--registry", registry_path, "registry file (default: demo data)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (validate->parsed()) return run_validate(in_path, registry_path, dialect_name);
    if (convert->parsed())
        return run_convert(in_path, from_name, to_name, registry_path, out_path);
    if (tag->parsed()) return run_tag(tag_mode, tag_values, tagset_path, registry_path);
    if (lookup->parsed())
        return run_lookup(surface, in_path, dialect_name, registry_path, filters);
    if (import_cmd->parsed())
        return run_import(in_path, language, tagset_path, registry_path, out_path, keep_going);
    if (stats->parsed()) return run_stats(in_path, dialect_name, registry_path);
    return 2;
}
