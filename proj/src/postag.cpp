#include "forge/postag.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge {

TagLexicon TagLexicon::load(const std::string& lexicon_path,
                            const std::string& suffix_path,
                            const std::string& default_tag) {
    TagLexicon lex;
    lex.default_tag = default_tag;
    {
        std::ifstream in(lexicon_path);
        if (!in) throw DataError("cannot open file: " + lexicon_path);
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> fields = split_char(line, '\t');
            if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
                throw DataError("line " + std::to_string(line_no) +
                                ": expected word<TAB>tag");
            // first entry wins on duplicates
            lex.word_tags.emplace(ascii_lower(fields[0]), fields[1]);
        }
    }
    if (!suffix_path.empty()) {
        std::ifstream in(suffix_path);
        if (!in) throw DataError("cannot open file: " + suffix_path);
        std::string line;
        size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> fields = split_char(line, '\t');
            if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
                throw DataError("line " + std::to_string(line_no) +
                                ": expected suffix<TAB>tag");
            lex.suffix_rules.emplace_back(ascii_lower(fields[0]), fields[1]);
        }
        std::stable_sort(lex.suffix_rules.begin(), lex.suffix_rules.end(),
                         [](const auto& a, const auto& b) {
                             return a.first.size() > b.first.size();
                         });
    }
    return lex;
}

namespace {

std::string tag_word(const std::string& surface, const TagLexicon& lexicon) {
    std::string folded = ascii_lower(surface);
    auto it = lexicon.word_tags.find(folded);
    if (it != lexicon.word_tags.end()) return it->second;
    for (const auto& [suffix, tag] : lexicon.suffix_rules) {
        if (folded.size() >= suffix.size() &&
            folded.compare(folded.size() - suffix.size(), suffix.size(), suffix) == 0)
            return tag;
    }
    return lexicon.default_tag;
}

}  // namespace

Sentence tag_sentence(const Sentence& sentence, const TagLexicon& lexicon) {
    Sentence out = sentence;
    for (Token& t : out.tokens)
        t.pos = t.lang.kind == LangKind::Univ ? "SYM" : tag_word(t.surface, lexicon);
    return out;
}

Corpus tag_corpus(const Corpus& corpus, const TagLexicon& lexicon) {
    Corpus out = corpus;
    for (Sentence& s : out.sentences) s = tag_sentence(s, lexicon);
    return out;
}

Corpus load_tags(const Corpus& corpus, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::unordered_map<std::string, std::vector<std::string>> by_id;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 2)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected id<TAB>tags");
        if (!by_id.emplace(fields[0], split_ws(fields[1])).second)
            throw DataError("line " + std::to_string(line_no) + ": duplicate id '" +
                            fields[0] + "'");
    }
    std::unordered_map<std::string, bool> known;
    for (const Sentence& s : corpus.sentences) known[s.id] = true;
    for (const auto& [id, tags] : by_id)
        if (!known.count(id))
            throw DataError("tag file references unknown sentence id '" + id + "'");

    Corpus out = corpus;
    std::string missing;
    for (Sentence& s : out.sentences) {
        auto it = by_id.find(s.id);
        if (it == by_id.end()) {
            missing += missing.empty() ? s.id : ", " + s.id;
            continue;
        }
        if (it->second.size() != s.tokens.size())
            throw DataError("sentence '" + s.id + "': " +
                            std::to_string(it->second.size()) + " tags for " +
                            std::to_string(s.tokens.size()) + " tokens");
        for (size_t i = 0; i < s.tokens.size(); ++i) s.tokens[i].pos = it->second[i];
    }
    if (!missing.empty())
        throw DataError("tag file is missing sentence ids: " + missing);
    return out;
}

}  // namespace forge
