#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "lmf.hpp"
#include "records.hpp"
#include "registry.hpp"
#include "xml.hpp"

namespace lexkit {

inline constexpr std::string_view kTeiNamespace = "http://www.tei-c.org/ns/1.0";

enum class DialectId { canonical_lmf, morphalou, tei };

inline std::string_view to_string(DialectId d) noexcept {
    switch (d) {
        case DialectId::canonical_lmf: return "canonical-lmf";
        case DialectId::morphalou: return "morphalou";
        case DialectId::tei: return "tei";
    }
    return "canonical-lmf";
}

inline std::optional<DialectId> dialect_from(std::string_view s) noexcept {
    if (s == "canonical-lmf" || s == "canonical") return DialectId::canonical_lmf;
    if (s == "morphalou") return DialectId::morphalou;
    if (s == "tei") return DialectId::tei;
    return std::nullopt;
}

/// What an external element name stands for in a dialect.
enum class ElementRole {
    envelope,     // document root
    entry_elem,   // lexical entry container
    form_group,   // groups forms inside an entry (Morphalou formSet)
    form_elem,    // a form; arg names the form type (Morphalou) or is empty (TEI)
    gram_group,   // TEI gramGrp
    feature,      // text element carrying a feature; arg = attribute id
    gram_feature, // like feature but placed inside the gram group on write
    orth,         // text element carrying a written form; arg = attribute id
    relation,     // entry-to-entry link; arg = relation type id, or "*" when
                  // the element's type attribute names the relation
};

struct ElementRule {
    ElementRole role;
    std::string arg;
};

/// Data-driven binding of one dialect's element names to model roles and of
/// its text values to registry codes. Loaded from the TAB record format:
///   scheme   <TAB> scheme-id
///   elem     <TAB> element-name <TAB> role <TAB> arg
///   formtype <TAB> external-name <TAB> lemma|wordForm|stem
class DialectMapping {
public:
    static DialectMapping load(std::string_view text, const Registry& reg) {
        DialectMapping m;
        for (const Record& rec : read_records(text)) {
            const auto& f = rec.fields;
            if (f[0] == "scheme") {
                if (f.size() != 2) raise(errc::parse_error, "scheme needs one field", rec.line);
                m.scheme_ = f[1];
            } else if (f[0] == "elem") {
                if (f.size() != 4) raise(errc::parse_error, "elem needs name, role and arg", rec.line);
                ElementRule rule;
                rule.arg = f[3];
                if (f[2] == "component") {
                    if (f[3] == "envelope") rule.role = ElementRole::envelope;
                    else if (f[3] == "entry") rule.role = ElementRole::entry_elem;
                    else if (f[3] == "formGroup") rule.role = ElementRole::form_group;
                    else if (f[3] == "gramGroup") rule.role = ElementRole::gram_group;
                    else if (f[3] == "form") {
                        // typeless form element; the form type travels in an
                        // attribute, resolved through the formtype records
                        rule.role = ElementRole::form_elem;
                        rule.arg.clear();
                    } else {
                        raise(errc::parse_error, "unknown component kind '" + f[3] + "'", rec.line);
                    }
                } else if (f[2] == "form") {
                    rule.role = ElementRole::form_elem;
                    if (!formtype_from(f[3]))
                        raise(errc::parse_error, "unknown form type '" + f[3] + "'", rec.line);
                } else if (f[2] == "feature" || f[2] == "gramfeature" || f[2] == "orth") {
                    rule.role = f[2] == "feature"       ? ElementRole::feature
                                : f[2] == "gramfeature" ? ElementRole::gram_feature
                                                        : ElementRole::orth;
                    if (!reg.is_attribute(f[3]))
                        raise(errc::unknown_data_category, "'" + f[3] + "'", rec.line);
                } else if (f[2] == "relation") {
                    rule.role = ElementRole::relation;
                    if (f[3] != "*" && !reg.is_attribute(f[3]))
                        raise(errc::unknown_data_category, "'" + f[3] + "'", rec.line);
                } else {
                    raise(errc::parse_error, "unknown role '" + f[2] + "'", rec.line);
                }
                if (!m.rules_.emplace(f[1], rule).second)
                    raise(errc::parse_error, "element '" + f[1] + "' mapped twice", rec.line);
            } else if (f[0] == "formtype") {
                if (f.size() != 3) raise(errc::parse_error, "formtype needs external and internal names", rec.line);
                auto ft = formtype_from(f[2]);
                if (!ft) raise(errc::parse_error, "unknown form type '" + f[2] + "'", rec.line);
                if (!m.formtype_by_name_.emplace(f[1], *ft).second)
                    raise(errc::parse_error, "form type name '" + f[1] + "' mapped twice", rec.line);
                if (!m.formtype_names_.emplace(*ft, f[1]).second)
                    raise(errc::parse_error, "form type '" + f[2] + "' mapped twice", rec.line);
            } else {
                raise(errc::parse_error, "unknown record type '" + f[0] + "'", rec.line);
            }
        }
        if (m.scheme_.empty()) raise(errc::parse_error, "dialect mapping declares no scheme");
        // reverse indexes; ambiguity is an authoring error
        for (const auto& [name, rule] : m.rules_) {
            if (rule.role == ElementRole::feature || rule.role == ElementRole::gram_feature) {
                if (!m.feature_elements_.emplace(rule.arg, name).second)
                    raise(errc::parse_error, "attribute '" + rule.arg + "' is carried by two elements");
            } else if (rule.role == ElementRole::relation && rule.arg != "*") {
                if (!m.relation_elements_.emplace(rule.arg, name).second)
                    raise(errc::parse_error, "relation '" + rule.arg + "' is carried by two elements");
            } else if (rule.role == ElementRole::form_elem && !rule.arg.empty()) {
                FormType ft = *formtype_from(rule.arg);
                m.form_elements_.emplace(ft, name);
            } else if (rule.role == ElementRole::orth) {
                m.orth_element_ = name;
            }
        }
        return m;
    }

    const std::string& scheme() const noexcept { return scheme_; }

    const ElementRule* rule(std::string_view element) const {
        auto it = rules_.find(std::string(element));
        return it == rules_.end() ? nullptr : &it->second;
    }

    const std::string* element_with_role(ElementRole role) const {
        for (const auto& [name, rule] : rules_)
            if (rule.role == role) return &name;
        return nullptr;
    }

    /// Element carrying a given feature attribute, whether plain or gram.
    const std::string* element_for_feature(std::string_view attr) const {
        auto it = feature_elements_.find(std::string(attr));
        return it == feature_elements_.end() ? nullptr : &it->second;
    }

    const std::string* element_for_relation(std::string_view type) const {
        auto it = relation_elements_.find(std::string(type));
        return it == relation_elements_.end() ? nullptr : &it->second;
    }

    const std::string* element_for_formtype(FormType t) const {
        auto it = form_elements_.find(t);
        return it == form_elements_.end() ? nullptr : &it->second;
    }

    const std::string& orth_element() const noexcept { return orth_element_; }

    std::optional<FormType> formtype(std::string_view external) const {
        auto it = formtype_by_name_.find(std::string(external));
        if (it == formtype_by_name_.end()) return std::nullopt;
        return it->second;
    }

    const std::string* formtype_name(FormType t) const {
        auto it = formtype_names_.find(t);
        return it == formtype_names_.end() ? nullptr : &it->second;
    }

private:
    std::string scheme_;
    std::map<std::string, ElementRule> rules_;
    std::map<std::string, std::string> feature_elements_;  // attr -> element
    std::map<std::string, std::string> relation_elements_; // type -> element
    std::map<FormType, std::string> form_elements_;        // type -> element
    std::map<std::string, FormType> formtype_by_name_;
    std::map<FormType, std::string> formtype_names_;
    std::string orth_element_;
};

/// The two data-driven dialect mappings. The canonical dialect is this
/// artifact's own format and needs none.
struct DialectSet {
    DialectMapping morphalou;
    DialectMapping tei;
};

// ---------------------------------------------------------------------------
// TEI subset constraints

enum class TeiConstraint {
    recursion_depth,
    illegal_type_value,
    missing_type,
    gramgrp_outside_form,
    unknown_grammatical_element,
};

inline const char* to_string(TeiConstraint c) noexcept {
    switch (c) {
        case TeiConstraint::recursion_depth: return "RecursionDepth";
        case TeiConstraint::illegal_type_value: return "IllegalTypeValue";
        case TeiConstraint::missing_type: return "MissingType";
        case TeiConstraint::gramgrp_outside_form: return "GramGrpOutsideForm";
        case TeiConstraint::unknown_grammatical_element: return "UnknownGrammaticalElement";
    }
    return "Unknown";
}

struct ConstraintViolation {
    TeiConstraint kind;
    std::string detail;
    std::size_t line = 0;

    std::string describe() const {
        std::string s = to_string(kind);
        s += "(";
        s += detail;
        s += ")";
        if (line != 0) s += " at line " + std::to_string(line);
        return s;
    }
};

namespace detail {

inline void tei_check_form(const xml::Element& form, const DialectMapping& tei, std::size_t depth,
                           std::vector<ConstraintViolation>& out) {
    if (depth > 2) {
        out.push_back({TeiConstraint::recursion_depth, std::to_string(depth), form.line});
        return;
    }
    const std::string* type = form.attr("type");
    if (type == nullptr)
        out.push_back({TeiConstraint::missing_type, "form has no type attribute", form.line});
    else if (!tei.formtype(*type))
        out.push_back({TeiConstraint::illegal_type_value, *type, form.line});
    for (const xml::Element* child : form.child_elements()) {
        const ElementRule* rule = tei.rule(child->name);
        if (rule == nullptr) {
            out.push_back({TeiConstraint::unknown_grammatical_element, child->name, child->line});
        } else if (rule->role == ElementRole::form_elem) {
            tei_check_form(*child, tei, depth + 1, out);
        } else if (rule->role == ElementRole::gram_group) {
            for (const xml::Element* g : child->child_elements()) {
                const ElementRule* grule = tei.rule(g->name);
                if (grule == nullptr || (grule->role != ElementRole::feature &&
                                         grule->role != ElementRole::gram_feature))
                    out.push_back(
                        {TeiConstraint::unknown_grammatical_element, g->name, g->line});
            }
        } else if (rule->role != ElementRole::orth && rule->role != ElementRole::feature &&
                   rule->role != ElementRole::gram_feature) {
            out.push_back({TeiConstraint::unknown_grammatical_element, child->name, child->line});
        }
    }
}

} // namespace detail

/// Checks one parsed TEI <entry> tree against the constrained dictionary
/// subset: limited form recursion, closed form/@type vocabulary, gramGrp
/// only inside form, no unknown grammatical elements.
inline std::vector<ConstraintViolation> tei_constraints_check(const xml::Element& entry,
                                                              const DialectMapping& tei) {
    std::vector<ConstraintViolation> out;
    for (const xml::Element* child : entry.child_elements()) {
        const ElementRule* rule = tei.rule(child->name);
        if (rule == nullptr) {
            out.push_back({TeiConstraint::unknown_grammatical_element, child->name, child->line});
        } else if (rule->role == ElementRole::form_elem) {
            detail::tei_check_form(*child, tei, 1, out);
        } else if (rule->role == ElementRole::gram_group) {
            out.push_back({TeiConstraint::gramgrp_outside_form, child->name, child->line});
        } else if (rule->role != ElementRole::relation) {
            out.push_back({TeiConstraint::unknown_grammatical_element, child->name, child->line});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// shared reader/writer helpers

namespace detail {

[[noreturn]] inline void not_expressible(DialectId d, const std::string& detail) {
    raise(errc::not_expressible,
          "dialect '" + std::string(to_string(d)) + "': " + detail);
}

inline std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

/// Canonicalizes the text content of a mapped feature element via the
/// dialect's code scheme.
inline std::string mapped_value(const xml::Element& el, const DialectMapping& m,
                                const Registry& reg, const std::string& attr) {
    std::string code(trim_view(el.text()));
    try {
        return reg.map_code(m.scheme(), attr, code);
    } catch (const Error&) {
        raise(errc::unmappable_value, "<" + el.name + "> carries '" + code +
                                          "', which is not a known code for '" + attr +
                                          "' in scheme '" + m.scheme() + "'",
              el.line);
    }
}

inline std::string strip_fragment(std::string_view target) {
    if (!target.empty() && target.front() == '#') target.remove_prefix(1);
    return std::string(target);
}

/// Structural invariants are read errors, unlike validate_resource where the
/// same findings are report entries.
inline void enforce_structure(const LexicalResource& res, const Registry& reg) {
    ValidationReport report = validate_resource(res, reg);
    for (const Violation& v : report.violations) {
        switch (v.code) {
            case ViolationCode::no_lexicon:
            case ViolationCode::missing_form:
            case ViolationCode::multiple_lemma_forms:
            case ViolationCode::missing_representation:
            case ViolationCode::missing_written_form:
            case ViolationCode::duplicate_entry_id:
            case ViolationCode::unknown_relation_type:
                raise(errc::structural_violation,
                      std::string(to_string(v.code)) + " at " + v.location + ": " + v.message);
            case ViolationCode::dangling_relation_target:
            case ViolationCode::invalid_feature_value:
                break; // semantic findings stay in validate_resource's court
        }
    }
}

// -- canonical ---------------------------------------------------------------

inline FeatureStructure read_feats(const xml::Element& parent) {
    FeatureStructure fs;
    for (const xml::Element* el : parent.child_elements()) {
        if (el->name != "feat") continue;
        const std::string* att = el->attr("att");
        const std::string* val = el->attr("val");
        if (att == nullptr || val == nullptr)
            raise(errc::xml_error, "<feat> needs att and val attributes", el->line);
        fs.add(*att, *val);
    }
    return fs;
}

inline xml::Element feat_element(std::string_view att, std::string_view val) {
    xml::Element el;
    el.name = "feat";
    el.attributes.emplace_back("att", std::string(att));
    el.attributes.emplace_back("val", std::string(val));
    return el;
}

inline void append_feats(xml::Element& parent, const FeatureStructure& fs) {
    for (const Feature& f : fs)
        parent.children.push_back(xml::Node{feat_element(f.name.str(), f.value.str())});
}

inline Sense read_canonical_sense(const xml::Element& el) {
    Sense s;
    if (const std::string* id = el.attr("id")) s.id = *id;
    s.feats = read_feats(el);
    for (const xml::Element* child : el.child_elements()) {
        if (child->name == "Sense") s.subsenses.push_back(read_canonical_sense(*child));
        else if (child->name != "feat")
            raise(errc::unknown_element, "<" + child->name + "> inside <Sense>", child->line);
    }
    return s;
}

inline LexicalResource read_canonical(const xml::Element& root, const Registry& reg) {
    if (root.name != "LexicalResource")
        raise(errc::unknown_element, "expected <LexicalResource>, got <" + root.name + ">",
              root.line);
    LexicalResource res;
    for (const xml::Element* el : root.child_elements()) {
        if (el->name == "GlobalInformation") {
            res.global.feats = read_feats(*el);
            for (const xml::Element* c : el->child_elements())
                if (c->name != "feat")
                    raise(errc::unknown_element, "<" + c->name + "> inside <GlobalInformation>",
                          c->line);
        } else if (el->name == "Lexicon") {
            Lexicon lex;
            if (const std::string* lang = el->attr("language")) lex.language = *lang;
            lex.feats = read_feats(*el);
            for (const xml::Element* c : el->child_elements()) {
                if (c->name == "feat") continue;
                if (c->name != "LexicalEntry")
                    raise(errc::unknown_element, "<" + c->name + "> inside <Lexicon>", c->line);
                LexicalEntry entry;
                if (const std::string* id = c->attr("id")) entry.id = *id;
                entry.feats = read_feats(*c);
                for (const xml::Element* part : c->child_elements()) {
                    if (part->name == "feat") continue;
                    if (part->name == "Relation") {
                        const std::string* type = part->attr("type");
                        const std::string* target = part->attr("target");
                        if (type == nullptr || target == nullptr)
                            raise(errc::xml_error, "<Relation> needs type and target", part->line);
                        EntryRelation rel;
                        rel.type = *type;
                        rel.target = strip_fragment(*target);
                        if (const std::string* label = part->attr("label")) rel.label = *label;
                        entry.relations.push_back(std::move(rel));
                    } else if (part->name == "Form") {
                        Form form;
                        const std::string* type = part->attr("type");
                        if (type == nullptr)
                            raise(errc::structural_violation, "<Form> has no type attribute",
                                  part->line);
                        auto ft = formtype_from(*type);
                        if (!ft)
                            raise(errc::structural_violation, "unknown form type '" + *type + "'",
                                  part->line);
                        form.type = *ft;
                        form.feats = read_feats(*part);
                        for (const xml::Element* r : part->child_elements()) {
                            if (r->name == "feat") continue;
                            if (r->name != "FormRepresentation")
                                raise(errc::unknown_element, "<" + r->name + "> inside <Form>",
                                      r->line);
                            FormRepresentation rep;
                            rep.feats = read_feats(*r);
                            for (const xml::Element* rc : r->child_elements())
                                if (rc->name != "feat")
                                    raise(errc::unknown_element,
                                          "<" + rc->name + "> inside <FormRepresentation>",
                                          rc->line);
                            form.representations.push_back(std::move(rep));
                        }
                        entry.forms.push_back(std::move(form));
                    } else if (part->name == "Sense") {
                        entry.senses.push_back(read_canonical_sense(*part));
                    } else {
                        raise(errc::unknown_element, "<" + part->name + "> inside <LexicalEntry>",
                              part->line);
                    }
                }
                lex.entries.push_back(std::move(entry));
            }
            res.lexica.push_back(std::move(lex));
        } else {
            raise(errc::unknown_element, "<" + el->name + "> inside <LexicalResource>", el->line);
        }
    }
    enforce_structure(res, reg);
    return res;
}

inline xml::Element write_canonical_sense(const Sense& s) {
    xml::Element el;
    el.name = "Sense";
    if (!s.id.empty()) el.attributes.emplace_back("id", s.id);
    append_feats(el, s.feats);
    for (const Sense& sub : s.subsenses)
        el.children.push_back(xml::Node{write_canonical_sense(sub)});
    return el;
}

inline xml::Element write_canonical_tree(const LexicalResource& res) {
    xml::Element root;
    root.name = "LexicalResource";
    xml::Element global;
    global.name = "GlobalInformation";
    append_feats(global, res.global.feats);
    root.children.push_back(xml::Node{std::move(global)});
    for (const Lexicon& lex : res.lexica) {
        xml::Element lx;
        lx.name = "Lexicon";
        lx.attributes.emplace_back("language", lex.language);
        append_feats(lx, lex.feats);
        for (const LexicalEntry& e : lex.entries) {
            xml::Element en;
            en.name = "LexicalEntry";
            if (!e.id.empty()) en.attributes.emplace_back("id", e.id);
            append_feats(en, e.feats);
            for (const EntryRelation& rel : e.relations) {
                xml::Element r;
                r.name = "Relation";
                r.attributes.emplace_back("type", rel.type);
                r.attributes.emplace_back("target", rel.target);
                if (!rel.label.empty()) r.attributes.emplace_back("label", rel.label);
                en.children.push_back(xml::Node{std::move(r)});
            }
            for (const Form& f : e.forms) {
                xml::Element fe;
                fe.name = "Form";
                fe.attributes.emplace_back("type", std::string(to_string(f.type)));
                append_feats(fe, f.feats);
                for (const FormRepresentation& rep : f.representations) {
                    xml::Element re;
                    re.name = "FormRepresentation";
                    append_feats(re, rep.feats);
                    fe.children.push_back(xml::Node{std::move(re)});
                }
                en.children.push_back(xml::Node{std::move(fe)});
            }
            for (const Sense& s : e.senses)
                en.children.push_back(xml::Node{write_canonical_sense(s)});
            lx.children.push_back(xml::Node{std::move(en)});
        }
        root.children.push_back(xml::Node{std::move(lx)});
    }
    return root;
}

// -- Morphalou ---------------------------------------------------------------

inline LexicalResource read_morphalou(const xml::Element& root, const Registry& reg,
                                      const DialectMapping& m) {
    const ElementRule* root_rule = m.rule(root.name);
    if (root_rule == nullptr || root_rule->role != ElementRole::envelope)
        raise(errc::unknown_element, "<" + root.name + "> is not the dialect's envelope",
              root.line);
    LexicalResource res;
    Lexicon lex;
    if (const std::string* lang = root.attr("language")) lex.language = *lang;

    auto read_form = [&](const xml::Element& fel, FormType type) {
        Form form;
        form.type = type;
        for (const xml::Element* c : fel.child_elements()) {
            const ElementRule* rule = m.rule(c->name);
            if (rule == nullptr)
                raise(errc::unknown_element, "<" + c->name + "> inside <" + fel.name + ">",
                      c->line);
            if (rule->role == ElementRole::orth) {
                std::string written(trim_view(c->text()));
                if (written.empty())
                    raise(errc::structural_violation, "<" + c->name + "> is empty", c->line);
                FormRepresentation rep;
                rep.feats.add(rule->arg, written);
                form.representations.push_back(std::move(rep));
            } else if (rule->role == ElementRole::feature) {
                form.feats.add(rule->arg, mapped_value(*c, m, reg, rule->arg));
            } else {
                raise(errc::unknown_element,
                      "<" + c->name + "> is not allowed inside <" + fel.name + ">", c->line);
            }
        }
        return form;
    };

    for (const xml::Element* eel : root.child_elements()) {
        const ElementRule* erule = m.rule(eel->name);
        if (erule == nullptr || erule->role != ElementRole::entry_elem)
            raise(errc::unknown_element, "<" + eel->name + "> inside <" + root.name + ">",
                  eel->line);
        LexicalEntry entry;
        if (const std::string* id = eel->attr("xml:id")) entry.id = *id;
        for (const xml::Element* c : eel->child_elements()) {
            const ElementRule* rule = m.rule(c->name);
            if (rule == nullptr)
                raise(errc::unknown_element, "<" + c->name + "> inside <" + eel->name + ">",
                      c->line);
            switch (rule->role) {
                case ElementRole::relation: {
                    const std::string* target = c->attr("target");
                    if (target == nullptr)
                        raise(errc::structural_violation,
                              "<" + c->name + "> has no target attribute", c->line);
                    EntryRelation rel;
                    rel.type = rule->arg;
                    rel.target = strip_fragment(*target);
                    rel.label = std::string(trim_view(c->text()));
                    entry.relations.push_back(std::move(rel));
                    break;
                }
                case ElementRole::feature:
                    entry.feats.add(rule->arg, mapped_value(*c, m, reg, rule->arg));
                    break;
                case ElementRole::form_group:
                    for (const xml::Element* fel : c->child_elements()) {
                        const ElementRule* frule = m.rule(fel->name);
                        if (frule == nullptr || frule->role != ElementRole::form_elem)
                            raise(errc::unknown_element,
                                  "<" + fel->name + "> inside <" + c->name + ">", fel->line);
                        auto ft = formtype_from(frule->arg);
                        if (!ft)
                            raise(errc::parse_error,
                                  "mapping gives <" + fel->name + "> no form type", fel->line);
                        entry.forms.push_back(read_form(*fel, *ft));
                    }
                    break;
                default:
                    raise(errc::unknown_element,
                          "<" + c->name + "> is not allowed inside <" + eel->name + ">", c->line);
            }
        }
        lex.entries.push_back(std::move(entry));
    }
    res.lexica.push_back(std::move(lex));
    enforce_structure(res, reg);
    return res;
}

inline xml::Element text_element(std::string name, std::string text) {
    xml::Element el;
    el.name = std::move(name);
    if (!text.empty()) el.children.push_back(xml::Node{std::move(text)});
    return el;
}

/// Writes a feature as a dialect element, canonical value re-encoded through
/// the dialect's scheme.
inline xml::Element feature_element(const Feature& f, DialectId d, const DialectMapping& m,
                                    const Registry& reg) {
    const std::string* elem = m.element_for_feature(f.name.str());
    if (elem == nullptr)
        not_expressible(d, "no element carries attribute '" + f.name.str() + "'");
    try {
        return text_element(*elem, reg.reverse_map(m.scheme(), f.name.str(), f.value.str()));
    } catch (const Error&) {
        not_expressible(d, "value '" + f.value.str() + "' of '" + f.name.str() +
                               "' has no code in scheme '" + m.scheme() + "'");
    }
}

inline void require_plain_representation(const FormRepresentation& rep, DialectId d) {
    if (rep.feats.size() != 1 || !rep.feats.contains(kWrittenForm))
        not_expressible(d, "form representations may carry only a writtenForm");
}

inline const Lexicon& single_lexicon(const LexicalResource& res, DialectId d) {
    if (res.lexica.size() != 1)
        not_expressible(d, "exactly one lexicon is expressible, resource has " +
                               std::to_string(res.lexica.size()));
    if (!res.global.feats.empty()) not_expressible(d, "global metadata has no representation");
    if (!res.lexica.front().feats.empty())
        not_expressible(d, "lexicon-level features have no representation");
    return res.lexica.front();
}

inline xml::Element write_morphalou_tree(const LexicalResource& res, const Registry& reg,
                                         const DialectMapping& m) {
    constexpr DialectId d = DialectId::morphalou;
    const Lexicon& lex = single_lexicon(res, d);
    const std::string* envelope = m.element_with_role(ElementRole::envelope);
    const std::string* entry_elem = m.element_with_role(ElementRole::entry_elem);
    const std::string* form_group = m.element_with_role(ElementRole::form_group);
    if (envelope == nullptr || entry_elem == nullptr || form_group == nullptr)
        raise(errc::parse_error, "morphalou mapping lacks envelope/entry/formGroup elements");

    xml::Element root;
    root.name = *envelope;
    if (!lex.language.empty()) root.attributes.emplace_back("language", lex.language);
    for (const LexicalEntry& e : lex.entries) {
        if (!e.senses.empty()) not_expressible(d, "senses have no representation");
        xml::Element en;
        en.name = *entry_elem;
        if (!e.id.empty()) en.attributes.emplace_back("xml:id", e.id);
        for (const Feature& f : e.feats)
            en.children.push_back(xml::Node{feature_element(f, d, m, reg)});
        for (const EntryRelation& rel : e.relations) {
            const std::string* relem = m.element_for_relation(rel.type);
            if (relem == nullptr)
                not_expressible(d, "no element carries relation '" + rel.type + "'");
            xml::Element r = text_element(*relem, rel.label);
            r.attributes.emplace_back("target", "#" + rel.target);
            en.children.push_back(xml::Node{std::move(r)});
        }
        xml::Element group;
        group.name = *form_group;
        for (const Form& form : e.forms) {
            const std::string* felem = m.element_for_formtype(form.type);
            if (felem == nullptr)
                not_expressible(d, "no element carries form type '" +
                                       std::string(to_string(form.type)) + "'");
            xml::Element fe;
            fe.name = *felem;
            for (const FormRepresentation& rep : form.representations) {
                require_plain_representation(rep, d);
                fe.children.push_back(xml::Node{
                    text_element(m.orth_element(), std::string(rep.written_form()))});
            }
            for (const Feature& f : form.feats)
                fe.children.push_back(xml::Node{feature_element(f, d, m, reg)});
            group.children.push_back(xml::Node{std::move(fe)});
        }
        en.children.push_back(xml::Node{std::move(group)});
        root.children.push_back(xml::Node{std::move(en)});
    }
    return root;
}

// -- TEI ---------------------------------------------------------------------

inline void read_tei_form_into(const xml::Element& fel, const Registry& reg,
                               const DialectMapping& m, std::vector<Form>& out) {
    Form form;
    const std::string* type = fel.attr("type");
    form.type = *m.formtype(*type); // constraint check has already vetted this
    std::vector<const xml::Element*> nested;
    for (const xml::Element* c : fel.child_elements()) {
        const ElementRule* rule = m.rule(c->name);
        switch (rule->role) {
            case ElementRole::orth: {
                std::string written(trim_view(c->text()));
                if (written.empty())
                    raise(errc::structural_violation, "<" + c->name + "> is empty", c->line);
                FormRepresentation rep;
                rep.feats.add(rule->arg, written);
                form.representations.push_back(std::move(rep));
                break;
            }
            case ElementRole::gram_group:
                for (const xml::Element* g : c->child_elements()) {
                    const ElementRule* grule = m.rule(g->name);
                    form.feats.add(grule->arg, mapped_value(*g, m, reg, grule->arg));
                }
                break;
            case ElementRole::feature:
            case ElementRole::gram_feature:
                form.feats.add(rule->arg, mapped_value(*c, m, reg, rule->arg));
                break;
            case ElementRole::form_elem:
                nested.push_back(c);
                break;
            default:
                raise(errc::unknown_element, "<" + c->name + "> inside <" + fel.name + ">",
                      c->line);
        }
    }
    out.push_back(std::move(form));
    // grouped inflected forms become siblings: LMF forms do not nest
    for (const xml::Element* n : nested) read_tei_form_into(*n, reg, m, out);
}

inline LexicalEntry read_tei_entry(const xml::Element& eel, const Registry& reg,
                                   const DialectMapping& m) {
    std::vector<ConstraintViolation> violations = tei_constraints_check(eel, m);
    if (!violations.empty())
        raise(errc::structural_violation, "TEI constraint violated: " + violations.front().describe(),
              violations.front().line);
    LexicalEntry entry;
    if (const std::string* id = eel.attr("xml:id")) entry.id = *id;
    for (const xml::Element* c : eel.child_elements()) {
        const ElementRule* rule = m.rule(c->name);
        if (rule->role == ElementRole::form_elem) {
            read_tei_form_into(*c, reg, m, entry.forms);
        } else if (rule->role == ElementRole::relation) {
            const std::string* type = c->attr("type");
            if (type == nullptr)
                raise(errc::structural_violation, "<" + c->name + "> has no type attribute",
                      c->line);
            const xml::Element* ref = nullptr;
            for (const xml::Element* rc : c->child_elements()) {
                if (rc->name != "ref")
                    raise(errc::unknown_element, "<" + rc->name + "> inside <" + c->name + ">",
                          rc->line);
                if (ref != nullptr)
                    raise(errc::structural_violation, "<" + c->name + "> has two <ref> children",
                          rc->line);
                ref = rc;
            }
            if (ref == nullptr)
                raise(errc::structural_violation, "<" + c->name + "> has no <ref> child", c->line);
            const std::string* target = ref->attr("target");
            if (target == nullptr)
                raise(errc::structural_violation, "<ref> has no target attribute", ref->line);
            EntryRelation rel;
            rel.type = *type;
            rel.target = strip_fragment(*target);
            rel.label = std::string(trim_view(ref->text()));
            entry.relations.push_back(std::move(rel));
        }
    }
    return entry;
}

inline LexicalResource read_tei(const xml::Element& root, const Registry& reg,
                                const DialectMapping& m) {
    LexicalResource res;
    Lexicon lex;
    const ElementRule* root_rule = m.rule(root.name);
    if (root_rule != nullptr && root_rule->role == ElementRole::entry_elem) {
        // a bare dictionary entry is a legal single-entry document
        if (const std::string* lang = root.attr("xml:lang")) lex.language = *lang;
        lex.entries.push_back(read_tei_entry(root, reg, m));
    } else if (root_rule != nullptr && root_rule->role == ElementRole::envelope) {
        for (const xml::Element* t : root.child_elements()) {
            if (t->name == "teiHeader") continue; // header metadata is not mapped
            if (t->name != "text")
                raise(errc::unknown_element, "<" + t->name + "> inside <" + root.name + ">",
                      t->line);
            if (const std::string* lang = t->attr("xml:lang")) lex.language = *lang;
            for (const xml::Element* b : t->child_elements()) {
                if (b->name != "body")
                    raise(errc::unknown_element, "<" + b->name + "> inside <text>", b->line);
                for (const xml::Element* eel : b->child_elements()) {
                    const ElementRule* erule = m.rule(eel->name);
                    if (erule == nullptr || erule->role != ElementRole::entry_elem)
                        raise(errc::unknown_element, "<" + eel->name + "> inside <body>",
                              eel->line);
                    lex.entries.push_back(read_tei_entry(*eel, reg, m));
                }
            }
        }
    } else {
        raise(errc::unknown_element,
              "<" + root.name + "> is neither the TEI envelope nor an entry", root.line);
    }
    res.lexica.push_back(std::move(lex));
    enforce_structure(res, reg);
    return res;
}

inline xml::Element write_tei_tree(const LexicalResource& res, const Registry& reg,
                                   const DialectMapping& m) {
    constexpr DialectId d = DialectId::tei;
    const Lexicon& lex = single_lexicon(res, d);
    const std::string* envelope = m.element_with_role(ElementRole::envelope);
    const std::string* entry_elem = m.element_with_role(ElementRole::entry_elem);
    const std::string* form_elem = m.element_with_role(ElementRole::form_elem);
    const std::string* gram_group = m.element_with_role(ElementRole::gram_group);
    const std::string* relation_elem = m.element_with_role(ElementRole::relation);
    if (envelope == nullptr || entry_elem == nullptr || form_elem == nullptr ||
        gram_group == nullptr)
        raise(errc::parse_error, "tei mapping lacks envelope/entry/form/gramGroup elements");

    xml::Element root;
    root.name = *envelope;
    root.attributes.emplace_back("xmlns", std::string(kTeiNamespace));
    xml::Element text;
    text.name = "text";
    if (!lex.language.empty()) text.attributes.emplace_back("xml:lang", lex.language);
    xml::Element body;
    body.name = "body";

    for (const LexicalEntry& e : lex.entries) {
        if (!e.senses.empty()) not_expressible(d, "senses have no representation");
        if (!e.feats.empty())
            not_expressible(d, "entry-level features have no representation in the TEI subset");
        xml::Element en;
        en.name = *entry_elem;
        if (!e.id.empty()) en.attributes.emplace_back("xml:id", e.id);
        for (const EntryRelation& rel : e.relations) {
            if (relation_elem == nullptr)
                not_expressible(d, "relations have no representation");
            if (!reg.is_attribute(rel.type))
                not_expressible(d, "relation type '" + rel.type + "' is not registered");
            xml::Element xr;
            xr.name = *relation_elem;
            xr.attributes.emplace_back("type", rel.type);
            xml::Element ref = text_element("ref", rel.label);
            ref.attributes.emplace_back("target", "#" + rel.target);
            xr.children.push_back(xml::Node{std::move(ref)});
            en.children.push_back(xml::Node{std::move(xr)});
        }
        for (const Form& form : e.forms) {
            const std::string* type_name = m.formtype_name(form.type);
            if (type_name == nullptr)
                not_expressible(d, "no type value for form type '" +
                                       std::string(to_string(form.type)) + "'");
            xml::Element fe;
            fe.name = *form_elem;
            fe.attributes.emplace_back("type", *type_name);
            for (const FormRepresentation& rep : form.representations) {
                require_plain_representation(rep, d);
                fe.children.push_back(xml::Node{
                    text_element(m.orth_element(), std::string(rep.written_form()))});
            }
            xml::Element grams;
            grams.name = *gram_group;
            std::vector<xml::Element> plain;
            for (const Feature& f : form.feats) {
                const std::string* felem = m.element_for_feature(f.name.str());
                if (felem == nullptr)
                    not_expressible(d, "no element carries attribute '" + f.name.str() + "'");
                const ElementRule* rule = m.rule(*felem);
                xml::Element ge = feature_element(f, d, m, reg);
                if (rule->role == ElementRole::gram_feature)
                    grams.children.push_back(xml::Node{std::move(ge)});
                else
                    plain.push_back(std::move(ge));
            }
            if (!grams.children.empty()) fe.children.push_back(xml::Node{std::move(grams)});
            for (xml::Element& p : plain) fe.children.push_back(xml::Node{std::move(p)});
            en.children.push_back(xml::Node{std::move(fe)});
        }
        body.children.push_back(xml::Node{std::move(en)});
    }
    text.children.push_back(xml::Node{std::move(body)});
    root.children.push_back(xml::Node{std::move(text)});
    return root;
}

} // namespace detail

// ---------------------------------------------------------------------------
// public serialization surface

/// Parses a lexicon document in the given dialect into the common model.
/// Structural invariants are verified here and raised as errors; semantic
/// findings (dangling targets, domain violations) are left to
/// validate_resource.
inline LexicalResource read_resource(std::string_view bytes, DialectId dialect,
                                     const Registry& reg, const DialectSet& dialects) {
    xml::Element root = xml::parse(bytes);
    switch (dialect) {
        case DialectId::canonical_lmf: return detail::read_canonical(root, reg);
        case DialectId::morphalou: return detail::read_morphalou(root, reg, dialects.morphalou);
        case DialectId::tei: return detail::read_tei(root, reg, dialects.tei);
    }
    raise(errc::io_error, "unreachable dialect");
}

/// Serializes the model in the given dialect. Deterministic: a pure function
/// of its inputs, byte-identical across runs. Throws NotExpressible when the
/// resource lies outside the dialect's subset, StructuralViolation when it
/// breaks the core invariants (the reader would refuse the output otherwise).
inline std::string write_resource(const LexicalResource& res, DialectId dialect,
                                  const Registry& reg, const DialectSet& dialects) {
    detail::enforce_structure(res, reg);
    switch (dialect) {
        case DialectId::canonical_lmf: return xml::serialize(detail::write_canonical_tree(res));
        case DialectId::morphalou:
            return xml::serialize(detail::write_morphalou_tree(res, reg, dialects.morphalou));
        case DialectId::tei: return xml::serialize(detail::write_tei_tree(res, reg, dialects.tei));
    }
    raise(errc::io_error, "unreachable dialect");
}

} // namespace lexkit
