#include <doctest.h>

#include "forge/postag.hpp"
#include "forge/error.hpp"
#include "test_util.hpp"

using namespace forge;
using testutil::TempDir;
using testutil::sent;
using testutil::tok;

namespace {

TagLexicon tiny_lexicon() {
    TagLexicon lex;
    lex.word_tags = {{"food", "NN"}, {"love", "VBP"}, {"i", "PRP"}};
    // stored longest-first, as the loader guarantees
    lex.suffix_rules = {{"ing", "VBG"}, {"ng", "JJ"}, {"s", "NNS"}};
    lex.default_tag = "NN";
    return lex;
}

}  // namespace

TEST_CASE("tag_sentence: lexicon lookup, suffix fallback, default, SYM") {
    TagLexicon lex = tiny_lexicon();
    Sentence s = sent("s1", {tok("Food", LangKind::Matrix), tok("blorping", LangKind::Matrix),
                             tok("!!", LangKind::Univ), tok("zzz", LangKind::Matrix)});
    Sentence tagged = tag_sentence(s, lex);
    CHECK(tagged.tokens[0].pos == "NN");    // case-folded lookup
    CHECK(tagged.tokens[1].pos == "VBG");   // longest suffix wins over "ng"
    CHECK(tagged.tokens[2].pos == "SYM");   // univ rule
    CHECK(tagged.tokens[3].pos == "NN");    // default
    for (const Token& t : tagged.tokens) CHECK(t.pos.has_value());
}

TEST_CASE("lexicon loader sorts suffix rules longest-first") {
    TempDir dir("postag");
    std::string lex_path = dir.file("lex.tsv");
    testutil::write_file(lex_path, "food\tNN\n");
    std::string suf_path = dir.file("suf.tsv");
    // file lists the short rule first; loader must still try "ing" first
    testutil::write_file(suf_path, "g\tX\ning\tVBG\n");
    TagLexicon lex = TagLexicon::load(lex_path, suf_path);
    Sentence tagged =
        tag_sentence(sent("s", {tok("blorping", LangKind::Matrix)}), lex);
    CHECK(tagged.tokens[0].pos == "VBG");
}

TEST_CASE("load_tags assigns authoritative tags and overrides existing ones") {
    TempDir dir("loadtags");
    Corpus c;
    Sentence s = sent("s1", {tok("i", LangKind::Matrix), tok("love", LangKind::Matrix),
                             tok("food", LangKind::Matrix)});
    s.tokens[0].pos = "XX";  // stale tag, must be overwritten
    c.sentences = {s};
    std::string path = dir.file("tags.tsv");
    testutil::write_file(path, "s1\tPRP VBP NN\n");
    Corpus tagged = load_tags(c, path);
    CHECK(tagged.sentences[0].tokens[0].pos == "PRP");
    CHECK(tagged.sentences[0].tokens[1].pos == "VBP");
    CHECK(tagged.sentences[0].tokens[2].pos == "NN");
}

TEST_CASE("load_tags errors name the offending sentence") {
    TempDir dir("loadtags_err");
    Corpus c;
    c.sentences = {sent("s1", {tok("a", LangKind::Matrix), tok("b", LangKind::Matrix)}),
                   sent("s2", {tok("c", LangKind::Matrix)})};

    std::string short_tags = dir.file("short.tsv");
    testutil::write_file(short_tags, "s1\tNN\ns2\tNN\n");
    CHECK_THROWS_WITH_AS(load_tags(c, short_tags), doctest::Contains("s1"), DataError);

    std::string missing = dir.file("missing.tsv");
    testutil::write_file(missing, "s1\tNN NN\n");
    CHECK_THROWS_WITH_AS(load_tags(c, missing), doctest::Contains("s2"), DataError);

    std::string unknown = dir.file("unknown.tsv");
    testutil::write_file(unknown, "s1\tNN NN\ns2\tNN\nzz\tNN\n");
    CHECK_THROWS_WITH_AS(load_tags(c, unknown), doctest::Contains("zz"), DataError);
}
