#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/rng.hpp"

namespace forge {

// Per-label n-gram language model with add-lambda smoothing and full
// backoff on unseen contexts. The normalization / generation support is the
// observed vocabulary plus EOS; unseen query words map to UNK, which carries
// the plain zero-count add-lambda mass and is never generated.
struct NgramModel {
    int order = 3;  // in [2,6]
    double lambda = 0.1;
    SentimentLabel label = SentimentLabel::Neutral;

    std::string matrix_lang = "en";
    std::string embedded_lang = "hi";
    std::string mask = "<GIB>";
    std::string bos = "<s>";
    std::string eos = "</s>";
    std::string unk = "<unk>";

    std::vector<std::string> vocab;  // sorted; observed words + eos
    // majority language tag per vocab word, learned from the training corpus
    std::unordered_map<std::string, LanguageTag> word_tags;

    // counts[k-1]: order-k events; context of k-1 words joined with '\x1f'
    // -> predicted word -> count. Level-k sequences use k-1 BOS pads.
    std::vector<std::unordered_map<std::string, std::map<std::string, int>>> counts;
    std::vector<std::unordered_map<std::string, long long>> context_totals;

    bool in_vocab(const std::string& word) const;
};

// Counts the label-filtered slice of the corpus at every order 1..n.
// Errors: no sentence with the label, order outside [2,6], lambda <= 0,
// or a training surface colliding with a reserved symbol.
NgramModel train_ngram(const Corpus& corpus, SentimentLabel label, int order,
                       double lambda);

// P(word | context). Contexts shorter than order-1 are left-padded with BOS,
// longer ones keep their last order-1 words; unseen words (in the context or
// the query) map to UNK. Zero-count contexts back off one order at a time,
// grounding at the unigram add-lambda distribution.
double ngram_prob(const NgramModel& model, const std::vector<std::string>& context,
                  const std::string& word);

// Ancestral sampling from BOS context until EOS or max_len tokens. UNK is
// never emitted. May return a sentence with zero tokens (immediate EOS).
Sentence generate_sentence(const NgramModel& model, RngStream& rng, size_t max_len);

// per_model_count sentences from each model (per-sentence seeds derived from
// (seed, model index, sentence index)), concatenated, shuffled by seed, empty
// generations dropped, exact duplicates removed, ids re-minted.
Corpus combine_generated(const std::vector<NgramModel>& models, size_t per_model_count,
                         uint64_t seed, size_t max_len = 30);

// Versioned JSON dump; load(save(m)) reproduces the model exactly.
void save_model(const NgramModel& model, const std::string& path);
NgramModel load_model(const std::string& path);

}  // namespace forge
