#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/rng.hpp"

namespace forge {

struct AlignmentLink {
    size_t src_index = 0;
    size_t tgt_index = 0;

    bool operator==(const AlignmentLink&) const = default;
};

// One aligned sentence pair, plain whitespace tokens on both sides.
struct BitextPair {
    std::vector<std::string> src;
    std::vector<std::string> tgt;
};
using Bitext = std::vector<BitextPair>;

// TSV rows: src tokens<TAB>tgt tokens (each side whitespace-split).
Bitext read_bitext_tsv(const std::string& path);

// t(tgt | src) lexical translation table.
using ProbTable =
    std::unordered_map<std::string, std::unordered_map<std::string, double>>;

// Uniform initialization: t(. | src) = 1 / |target vocabulary| for every
// target word co-occurring with src.
ProbTable ibm1_init(const Bitext& pairs);

// One expectation-maximization round (count and normalize).
void ibm1_iterate(ProbTable& table, const Bitext& pairs);

ProbTable ibm1_train(const Bitext& pairs, int iterations);

// Per-pair links: each source token linked to its argmax target token under
// t(tgt|src); ties go to the smallest target index. Deterministic.
std::vector<std::vector<AlignmentLink>> ibm1_align(const Bitext& pairs, int iterations);
std::vector<std::vector<AlignmentLink>> align_from_table(const ProbTable& table,
                                                         const Bitext& pairs);

// Pharaoh format: one line per pair of space-separated "i-j" links.
void write_links(const std::vector<std::vector<AlignmentLink>>& links,
                 const std::string& path);
std::vector<std::vector<AlignmentLink>> read_links(const std::string& path);

struct WeightedTarget {
    std::string word;
    double weight = 0.0;  // > 0; per source the weights sum to 1
};

// Weighted one-to-many source -> target word map. Source keys are
// case-folded; candidate lists are sorted by descending weight, ties
// lexicographic.
class TranslationDictionary {
public:
    void add_counts(const std::string& src, const std::string& tgt, double count);
    // Normalizes per-source counts to weights and sorts candidates.
    void finalize();

    const std::vector<WeightedTarget>* lookup(const std::string& word) const;
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // Sorted by source word; TSV rows src<TAB>tgt<TAB>weight.
    void save_tsv(const std::string& path) const;
    static TranslationDictionary load_tsv(const std::string& path);

    const std::unordered_map<std::string, std::vector<WeightedTarget>>& entries() const {
        return entries_;
    }

private:
    std::unordered_map<std::string, std::vector<WeightedTarget>> entries_;
    bool finalized_ = false;
};

// Counts each (src surface, tgt surface) link across the bitext and
// normalizes per source word. Out-of-range links are an error.
TranslationDictionary build_dictionary(const Bitext& pairs,
                                       const std::vector<std::vector<AlignmentLink>>& links);

enum class OovPolicy { KeepSource, Drop, Error };

// The pluggable word/phrase translator. Dictionary sampling draws once per
// dictionary hit, consuming the rng stream in token order; OOV tokens follow
// the policy without consuming a draw. ConstantMask replaces every token with
// one mask token. Table looks up the whitespace-joined (case-folded) phrase
// and returns its mapped token list; a miss keeps the source tokens.
struct Translator {
    enum class Kind { Dictionary, ConstantMask, Table };

    Kind kind = Kind::ConstantMask;
    TranslationDictionary dict;
    OovPolicy oov = OovPolicy::KeepSource;
    std::string mask = "<GIB>";
    std::unordered_map<std::string, std::vector<std::string>> table;
    std::string embedded_id = "hi";

    static Translator dictionary(TranslationDictionary d, std::string embedded_id,
                                 OovPolicy policy = OovPolicy::KeepSource);
    static Translator constant_mask(std::string mask = "<GIB>");
    static Translator phrase_table(
        std::unordered_map<std::string, std::vector<std::string>> table,
        std::string embedded_id);
};

// phrase table TSV: src phrase<TAB>tgt phrase
std::unordered_map<std::string, std::vector<std::string>> read_phrase_table_tsv(
    const std::string& path);

std::vector<Token> translate_tokens(const Translator& translator,
                                    const std::vector<Token>& tokens, RngStream& rng);

}  // namespace forge
