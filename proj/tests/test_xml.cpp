#include <catch2/catch_amalgamated.hpp>

#include <lexkit/xml.hpp>

#include "support.hpp"

using namespace lexkit;

TEST_CASE("basic parsing") {
    xml::Element root = xml::parse(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<a x=\"1\" y=\"two\"><b>text</b><c/></a>");
    REQUIRE(root.name == "a");
    REQUIRE(*root.attr("x") == "1");
    REQUIRE(*root.attr("y") == "two");
    REQUIRE(root.attr("z") == nullptr);
    auto kids = root.child_elements();
    REQUIRE(kids.size() == 2);
    REQUIRE(kids[0]->name == "b");
    REQUIRE(kids[0]->text() == "text");
    REQUIRE(kids[1]->name == "c");
}

TEST_CASE("entities and character references") {
    xml::Element root =
        xml::parse("<t a=\"x&amp;y&#10;z\">&lt;tag&gt; &quot;&apos; &#233; &#x00E9;</t>");
    REQUIRE(*root.attr("a") == "x&y\nz");
    REQUIRE(root.text() == "<tag> \"' é é");
    REQUIRE_THROWS_AS(xml::parse("<t>&unknown;</t>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<t>&#xD800;</t>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<t>&#zz;</t>"), Error);
}

TEST_CASE("comments, processing instructions and CDATA") {
    xml::Element root = xml::parse("<a><!-- note --><b><?pi data?>x<![CDATA[<raw>&]]>y</b></a>");
    auto kids = root.child_elements();
    REQUIRE(kids.size() == 1);
    REQUIRE(kids[0]->text() == "x<raw>&y");
}

TEST_CASE("whitespace between elements is layout, inner text is kept") {
    xml::Element root = xml::parse("<a>\n  <b>  spaced  </b>\n</a>");
    REQUIRE(root.children.size() == 1); // the whitespace around <b> is dropped
    REQUIRE(root.child_elements()[0]->text() == "  spaced  ");
}

TEST_CASE("well-formedness errors") {
    REQUIRE_THROWS_AS(xml::parse("<a><b></a></b>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<a>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<a x=\"1\" x=\"2\"/>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<a/><b/>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<a x=unquoted/>"), Error);
    REQUIRE_THROWS_AS(xml::parse("<a b=\"<\"/>"), Error);
    REQUIRE_THROWS_AS(xml::parse(""), Error);
    REQUIRE_THROWS_AS(xml::parse("just text"), Error);
    try {
        xml::parse("<a>\n<b>\n</c>\n</a>");
        FAIL();
    } catch (const Error& e) {
        REQUIRE(e.code() == errc::xml_error);
        REQUIRE(e.line() == 3);
    }
}

TEST_CASE("doctype and external entities are refused") {
    try {
        xml::parse("<!DOCTYPE lexicon SYSTEM \"evil.dtd\"><lexicon/>");
        FAIL();
    } catch (const Error& e) {
        REQUIRE(e.code() == errc::xml_error);
        REQUIRE(std::string(e.what()).find("DTD") != std::string::npos);
    }
    REQUIRE_THROWS_AS(xml::parse("<a><!ENTITY x \"y\"></a>"), Error);
}

TEST_CASE("the verbatim TEI figure is malformed as printed") {
    try {
        xml::parse(testsupport::fixture("tei_championne_broken.xml"));
        FAIL("the duplicated open tag and stray close tag must not parse");
    } catch (const Error& e) {
        REQUIRE(e.code() == errc::xml_error);
    }
}

TEST_CASE("serialization is deterministic and parse-stable") {
    xml::Element root;
    root.name = "outer";
    root.attributes.emplace_back("lang", "fr");
    xml::Element leaf;
    leaf.name = "leaf";
    leaf.attributes.emplace_back("v", "a&b<c>\"d\ne");
    leaf.children.push_back(xml::Node{std::string("text &<> é here")});
    root.children.push_back(xml::Node{leaf});
    xml::Element empty;
    empty.name = "empty";
    root.children.push_back(xml::Node{empty});

    std::string bytes = xml::serialize(root);
    REQUIRE(bytes ==
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            "<outer lang=\"fr\">\n"
            "  <leaf v=\"a&amp;b&lt;c&gt;&quot;d&#10;e\">text &amp;&lt;&gt; é here</leaf>\n"
            "  <empty/>\n"
            "</outer>\n");
    REQUIRE(bytes == xml::serialize(root));

    xml::Element reparsed = xml::parse(bytes);
    REQUIRE(reparsed.name == "outer");
    REQUIRE(*reparsed.child_elements()[0]->attr("v") == "a&b<c>\"d\ne");
    REQUIRE(reparsed.child_elements()[0]->text() == "text &<> é here");
}
