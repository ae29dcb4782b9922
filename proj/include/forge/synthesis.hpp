#pragma once

#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/lexicon.hpp"
#include "forge/rng.hpp"

namespace forge {

// Contiguous token range to be replaced. Span sets are non-overlapping,
// in-bounds and sorted by start.
struct Span {
    size_t start = 0;
    size_t length = 1;

    bool operator==(const Span&) const = default;
};

enum class StrategyKind { Word, Phrase, Pos };

const char* strategy_to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& s);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::Word;
    double tau = 0.0;                          // word / phrase
    std::vector<std::string> pos_tags;         // pos (one tag per generation run)
    std::vector<int> phrase_lengths = {1, 2, 3};  // phrase
};

// Each non-univ, non-mask token is selected with probability tau; one draw
// per considered token in order, univ/mask tokens are skipped without
// consuming a draw. Selected tokens become length-1 spans.
std::vector<Span> select_words(const Sentence& sentence, double tau, RngStream& rng);

// Cursor walk: at each position draw r; r < tau starts a phrase whose length
// is drawn uniformly from phrase_lengths (truncated at the sentence end) and
// the cursor jumps past it, otherwise the cursor advances one token. Exactly
// one selection draw per loop entry and one length draw per accepted phrase.
std::vector<Span> select_phrases(const Sentence& sentence, double tau,
                                 const std::vector<int>& phrase_lengths, RngStream& rng);

// Exactly the tokens whose POS tag equals tag, as length-1 spans.
// Any untagged token is an error.
std::vector<Span> select_by_pos(const Sentence& sentence, const std::string& tag);

// Splices translate_tokens output over each span, keeps everything else
// verbatim, preserves the label and stamps origin=synthetic with the given
// provenance. Spans are consumed in order against the one rng stream.
Sentence apply_replacement(const Sentence& sentence, const std::vector<Span>& spans,
                           const Translator& translator, RngStream& rng, GenRecord gen);

// Emits `count` synthetic sentences by cycling the seed-shuffled source. Each
// emission i draws from RngStream(stable_hash(seed, source-id, i)), so output
// bytes are identical for any thread count. For pos-kind configs exactly one
// tag must be set and the source must be fully tagged.
Corpus generate_corpus(const Corpus& source, const StrategyConfig& config,
                       const Translator& translator, size_t count, uint64_t seed,
                       int threads = 1);

// Set-like union: exact duplicates (same token surfaces and label) are
// dropped keeping the first occurrence; ids are re-minted. All inputs must
// share the language pair.
Corpus union_pos_datasets(const std::vector<Corpus>& datasets);

}  // namespace forge
