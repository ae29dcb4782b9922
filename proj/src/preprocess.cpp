#include "forge/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge {

EmojiMap EmojiMap::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    EmojiMap map;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 2)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected emoji<TAB>description");
        std::vector<std::string> words = split_ws(fields[1]);
        if (fields[0].empty() || words.empty())
            throw DataError("line " + std::to_string(line_no) +
                            ": empty emoji or description");
        std::string desc = words[0];
        for (size_t i = 1; i < words.size(); ++i) desc += "_" + words[i];
        map.add(fields[0], desc);
    }
    return map;
}

void EmojiMap::add(const std::string& emoji, const std::string& description) {
    Entry e{utf8_decode(emoji), description};
    if (e.key.empty()) throw DataError("empty emoji key");
    auto& bucket = entries_by_head_[e.key[0]];
    bucket.push_back(std::move(e));
    std::stable_sort(bucket.begin(), bucket.end(),
                     [](const Entry& a, const Entry& b) { return a.key.size() > b.key.size(); });
    ++entry_count_;
}

size_t EmojiMap::match(const std::vector<char32_t>& cps, size_t pos,
                       std::string* description) const {
    auto it = entries_by_head_.find(cps[pos]);
    if (it == entries_by_head_.end()) return 0;
    for (const Entry& e : it->second) {
        if (pos + e.key.size() > cps.size()) continue;
        if (std::equal(e.key.begin(), e.key.end(), cps.begin() + pos)) {
            *description = e.description;
            return e.key.size();
        }
    }
    return 0;
}

std::vector<ScoreRecord> read_scores_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<ScoreRecord> records;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected id<TAB>label<TAB>confidence");
        ScoreRecord r;
        r.sentence_id = fields[0];
        r.predicted = label_from_string(fields[1]);
        try {
            r.confidence = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw DataError("line " + std::to_string(line_no) + ": bad confidence '" +
                            fields[2] + "'");
        }
        if (r.confidence < 0.0 || r.confidence > 1.0)
            throw DataError("line " + std::to_string(line_no) +
                            ": confidence out of [0,1]");
        records.push_back(std::move(r));
    }
    return records;
}

std::string clean(const std::string& raw, const EmojiMap& emoji_map) {
    std::vector<std::string> pieces;
    for (const std::string& chunk : split_ws(raw)) {
        if (looks_like_url(chunk)) continue;
        std::vector<char32_t> cps = utf8_decode(chunk);
        std::string current;
        auto flush = [&]() {
            // emoji removal can leave a bare URL behind; those go too
            if (!current.empty() && !looks_like_url(current)) pieces.push_back(current);
            current.clear();
        };
        size_t i = 0;
        while (i < cps.size()) {
            std::string desc;
            size_t matched = emoji_map.match(cps, i, &desc);
            if (matched > 0) {
                flush();
                pieces.push_back(desc);
                i += matched;
                continue;
            }
            char32_t cp = cps[i];
            ++i;
            if (cp == U'#') continue;
            if (is_emoji_cp(cp)) continue;  // unmapped emoji dropped
            utf8_append(current, cp);
        }
        flush();
    }
    std::string out;
    for (const std::string& p : pieces) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

Corpus preprocess_rows(const std::vector<RawRow>& rows, const EmojiMap& emoji_map,
                       const TagConfig& config) {
    Corpus corpus;
    corpus.matrix_lang = config.matrix_id;
    corpus.embedded_lang = config.embedded_id;
    corpus.mask = config.mask;
    for (const RawRow& row : rows) {
        std::string text = clean(row.text, emoji_map);
        if (text.empty()) continue;  // empty strings removed
        Sentence s;
        s.id = row.id;
        s.label = label_from_string(row.label);
        s.origin = Origin::Natural;
        s.tokens = tokenize(text, config);
        if (s.tokens.empty()) continue;
        corpus.sentences.push_back(std::move(s));
    }
    corpus.validate();
    return corpus;
}

Corpus mine_neutral(const Corpus& candidates, const std::vector<ScoreRecord>& scores,
                    double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw DataError("threshold out of [0,1]");
    std::unordered_set<std::string> known;
    for (const Sentence& s : candidates.sentences) known.insert(s.id);
    std::unordered_map<std::string, const ScoreRecord*> by_id;
    for (const ScoreRecord& r : scores) {
        if (!known.count(r.sentence_id))
            throw DataError("score record references unknown sentence id '" +
                            r.sentence_id + "'");
        by_id[r.sentence_id] = &r;
    }
    Corpus out;
    out.matrix_lang = candidates.matrix_lang;
    out.embedded_lang = candidates.embedded_lang;
    out.mask = candidates.mask;
    for (const Sentence& s : candidates.sentences) {
        auto it = by_id.find(s.id);
        if (it == by_id.end()) continue;  // unscored: excluded
        const ScoreRecord& r = *it->second;
        if (r.predicted != SentimentLabel::Neutral || !(r.confidence > threshold))
            continue;
        Sentence kept = s;
        kept.label = SentimentLabel::Neutral;
        out.sentences.push_back(std::move(kept));
    }
    return out;
}

}  // namespace forge
