#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "forge/corpus.hpp"

namespace forge {

// Minimal fallback tagger: case-folded word lookup, then longest matching
// suffix rule, then the default tag. Authoritative tags from a file (see
// load_tags) take precedence over anything this produces.
struct TagLexicon {
    std::unordered_map<std::string, std::string> word_tags;
    // kept sorted longest-suffix-first (stable on file order)
    std::vector<std::pair<std::string, std::string>> suffix_rules;
    std::string default_tag = "NN";

    static TagLexicon load(const std::string& lexicon_path,
                           const std::string& suffix_path = "",
                           const std::string& default_tag = "NN");
};

// Every token gets a tag: univ tokens "SYM", everything else via the lexicon.
Sentence tag_sentence(const Sentence& sentence, const TagLexicon& lexicon);
Corpus tag_corpus(const Corpus& corpus, const TagLexicon& lexicon);

// Authoritative tags: file rows are id<TAB>tag1 tag2 ... and must cover every
// sentence with exactly one tag per token. Overrides existing pos fields.
Corpus load_tags(const Corpus& corpus, const std::string& path);

}  // namespace forge
