#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "forge/corpus.hpp"

namespace forge {

// Emoji / emoticon -> English description. Keys are codepoint sequences
// (multi-codepoint ZWJ sequences and ASCII emoticons both work); descriptions
// are underscore-joined and whitespace-free. Keys should not be substrings of
// descriptions or clean() loses idempotency.
class EmojiMap {
public:
    EmojiMap() = default;

    // TSV rows: emoji<TAB>description. Whitespace inside a description is
    // joined with underscores. Empty descriptions are an error.
    static EmojiMap load_tsv(const std::string& path);

    void add(const std::string& emoji, const std::string& description);

    // Longest key matching a prefix of cps[pos..]; returns match length in
    // codepoints (0 = no match) and sets description.
    size_t match(const std::vector<char32_t>& cps, size_t pos,
                 std::string* description) const;

    size_t size() const { return entry_count_; }

private:
    struct Entry {
        std::vector<char32_t> key;
        std::string description;
    };
    // first codepoint -> entries sorted by key length, longest first
    std::unordered_map<char32_t, std::vector<Entry>> entries_by_head_;
    size_t entry_count_ = 0;
};

struct ScoreRecord {
    std::string sentence_id;
    SentimentLabel predicted = SentimentLabel::Neutral;
    double confidence = 0.0;  // in [0,1]
};

// TSV rows: id<TAB>label<TAB>confidence. Confidence outside [0,1] is an error.
std::vector<ScoreRecord> read_scores_tsv(const std::string& path);

// Coarse social-media filtering: URL chunks dropped, '#' characters removed,
// mapped emoji replaced by their descriptions, unmapped emoji dropped,
// whitespace collapsed, result trimmed. Idempotent.
std::string clean(const std::string& raw, const EmojiMap& emoji_map);

// clean() every row of a raw-tsv file, drop rows that come out empty,
// tokenize and tag the rest.
Corpus preprocess_rows(const std::vector<RawRow>& rows, const EmojiMap& emoji_map,
                       const TagConfig& config = {});

// Sub-corpus of candidates whose score record is neutral with confidence
// strictly greater than threshold; kept sentences are relabeled neutral.
// A record naming an unknown id is an error; candidates without a record
// are silently excluded.
Corpus mine_neutral(const Corpus& candidates, const std::vector<ScoreRecord>& scores,
                    double threshold = 0.85);

}  // namespace forge
