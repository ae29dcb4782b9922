#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forge {

enum class LangKind { Matrix, Embedded, Univ, Mask };

// Per-token language tag. The embedded variant carries the language id; a
// corpus requires every embedded tag to match its own embedded language.
struct LanguageTag {
    LangKind kind = LangKind::Matrix;
    std::string lang;  // set iff kind == Embedded

    static LanguageTag matrix() { return {LangKind::Matrix, {}}; }
    static LanguageTag embedded(std::string id) { return {LangKind::Embedded, std::move(id)}; }
    static LanguageTag univ() { return {LangKind::Univ, {}}; }
    static LanguageTag mask() { return {LangKind::Mask, {}}; }

    bool operator==(const LanguageTag&) const = default;
};

struct Token {
    std::string surface;  // non-empty, no whitespace
    LanguageTag lang;
    std::optional<std::string> pos;  // Penn Treebank pre-terminal

    bool operator==(const Token&) const = default;
};

enum class SentimentLabel { Positive, Negative, Neutral };

const char* label_to_string(SentimentLabel label);
SentimentLabel label_from_string(const std::string& s);  // throws DataError

enum class Origin { Natural, Synthetic };

// Generation provenance carried by every synthetic sentence.
struct GenRecord {
    std::string strategy;
    std::map<std::string, std::string> params;
    uint64_t seed = 0;
    std::string src;  // source sentence id; empty for model-sampled text

    bool operator==(const GenRecord&) const = default;
};

struct Sentence {
    std::string id;
    std::vector<Token> tokens;
    SentimentLabel label = SentimentLabel::Neutral;
    Origin origin = Origin::Natural;
    std::optional<GenRecord> gen;

    bool operator==(const Sentence&) const = default;
};

struct Corpus {
    std::string matrix_lang = "en";
    std::string embedded_lang = "hi";  // "GIB" for mask corpora
    std::string mask = "<GIB>";
    std::vector<Sentence> sentences;
    std::map<std::string, std::string> meta;

    bool operator==(const Corpus&) const = default;

    // Checks ids unique, tokens well formed, embedded tags match
    // embedded_lang, mask tokens spell the mask string, and the
    // origin <-> gen-record pairing. Throws DataError naming the sentence.
    void validate() const;
};

// Settings for the script/pattern language-tag heuristic.
struct TagConfig {
    std::string matrix_id = "en";
    std::string embedded_id = "hi";
    std::string mask = "<GIB>";
    // Codepoint ranges of the embedded script; default Devanagari.
    std::vector<std::pair<char32_t, char32_t>> embedded_ranges = {{0x0900, 0x097F}};
};

TagConfig corpus_tag_config(const Corpus& corpus);

// Pure: mask string match, then univ patterns (all-punctuation, all-digit,
// URL, @mention, lone '#'), then script dispatch. Letters all in the matrix
// script -> matrix; all in an embedded range -> embedded; mixed or unknown
// scripts (and tokens with no letters) -> matrix. Romanized embedded-language
// words are therefore tagged matrix; authoritative tags in jsonl input
// override this heuristic. Throws DataError on an empty surface.
LanguageTag tag_language(const std::string& surface, const TagConfig& config);

// Whitespace split, then leading/trailing punctuation runs become their own
// tokens ("stop!!" -> [stop][!!], "#cool" -> [#][cool]). Chunks equal to the
// mask string and @mentions are kept whole. Tags via tag_language.
std::vector<Token> tokenize(const std::string& raw, const TagConfig& config = {});

enum class CorpusFormat { Jsonl, RawTsv };

// jsonl: optional {"corpus":{...}} header line then one sentence object per
// line (see README for the schema). raw-tsv: id<TAB>text<TAB>label, tokenized
// and language-tagged on load. Errors carry line numbers / sentence ids.
Corpus read_corpus(const std::string& path, CorpusFormat format,
                   const TagConfig& config = {});

// Deterministic byte output: header line plus one sentence per line with
// fixed field order. write(read(write(c))) is byte-identical.
void write_corpus(const Corpus& corpus, const std::string& path);

std::string corpus_to_jsonl(const Corpus& corpus);

struct RawRow {
    std::string id;
    std::string text;
    std::string label;
};

// Rows of a raw-tsv file, unparsed beyond the three fields.
std::vector<RawRow> read_raw_rows(const std::string& path);

}  // namespace forge
