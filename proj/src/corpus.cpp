#include "forge/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge {

using ojson = nlohmann::ordered_json;

const char* label_to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Positive: return "positive";
        case SentimentLabel::Negative: return "negative";
        case SentimentLabel::Neutral: return "neutral";
    }
    return "neutral";
}

SentimentLabel label_from_string(const std::string& s) {
    if (s == "positive") return SentimentLabel::Positive;
    if (s == "negative") return SentimentLabel::Negative;
    if (s == "neutral") return SentimentLabel::Neutral;
    throw DataError("unknown sentiment label: '" + s + "'");
}

namespace {

const char* lang_to_string(const LanguageTag& tag) {
    switch (tag.kind) {
        case LangKind::Matrix: return "mat";
        case LangKind::Embedded: return "emb";
        case LangKind::Univ: return "univ";
        case LangKind::Mask: return "mask";
    }
    return "mat";
}

LanguageTag lang_from_string(const std::string& s, const std::string& embedded_id) {
    if (s == "mat") return LanguageTag::matrix();
    if (s == "emb") return LanguageTag::embedded(embedded_id);
    if (s == "univ") return LanguageTag::univ();
    if (s == "mask") return LanguageTag::mask();
    throw DataError("unknown language tag: '" + s + "'");
}

bool surface_well_formed(const std::string& surface) {
    if (surface.empty()) return false;
    for (char c : surface)
        if (is_ascii_space(c)) return false;
    return true;
}

}  // namespace

void Corpus::validate() const {
    std::unordered_set<std::string> ids;
    ids.reserve(sentences.size());
    for (const Sentence& s : sentences) {
        if (!ids.insert(s.id).second)
            throw DataError("duplicate sentence id: '" + s.id + "'");
        if (s.tokens.empty())
            throw DataError("sentence '" + s.id + "' has no tokens");
        if ((s.origin == Origin::Synthetic) != s.gen.has_value())
            throw DataError("sentence '" + s.id +
                            "': origin and gen-record presence disagree");
        for (const Token& t : s.tokens) {
            if (!surface_well_formed(t.surface))
                throw DataError("sentence '" + s.id + "' has a malformed token surface");
            if (t.lang.kind == LangKind::Embedded && t.lang.lang != embedded_lang)
                throw DataError("sentence '" + s.id + "': embedded tag '" + t.lang.lang +
                                "' does not match corpus embedded language '" +
                                embedded_lang + "'");
            if (t.lang.kind == LangKind::Mask && t.surface != mask)
                throw DataError("sentence '" + s.id + "': mask token surface '" +
                                t.surface + "' is not the mask string '" + mask + "'");
        }
    }
}

TagConfig corpus_tag_config(const Corpus& corpus) {
    TagConfig config;
    config.matrix_id = corpus.matrix_lang;
    config.embedded_id = corpus.embedded_lang;
    config.mask = corpus.mask;
    return config;
}

LanguageTag tag_language(const std::string& surface, const TagConfig& config) {
    if (surface.empty()) throw DataError("cannot tag an empty token surface");
    if (surface == config.mask) return LanguageTag::mask();

    std::vector<char32_t> cps = utf8_decode(surface);
    bool all_punct = true, all_digit = true;
    for (char32_t cp : cps) {
        if (!is_punct_cp(cp)) all_punct = false;
        if (!is_digit_cp(cp)) all_digit = false;
    }
    if (all_punct || all_digit) return LanguageTag::univ();
    if (looks_like_url(surface) || looks_like_mention(surface)) return LanguageTag::univ();

    bool any_matrix = false, any_embedded = false, any_other = false;
    for (char32_t cp : cps) {
        if (is_punct_cp(cp) || is_digit_cp(cp)) continue;
        bool emb = false;
        for (auto [lo, hi] : config.embedded_ranges)
            if (cp >= lo && cp <= hi) { emb = true; break; }
        if (emb)
            any_embedded = true;
        else if (is_latin_letter_cp(cp))
            any_matrix = true;
        else
            any_other = true;
    }
    if (any_embedded && !any_matrix && !any_other)
        return LanguageTag::embedded(config.embedded_id);
    return LanguageTag::matrix();
}

std::vector<Token> tokenize(const std::string& raw, const TagConfig& config) {
    std::vector<Token> tokens;
    for (const std::string& chunk : split_ws(raw)) {
        if (chunk == config.mask) {
            tokens.push_back({chunk, LanguageTag::mask(), std::nullopt});
            continue;
        }
        if (looks_like_mention(chunk)) {
            tokens.push_back({chunk, tag_language(chunk, config), std::nullopt});
            continue;
        }
        std::vector<char32_t> cps = utf8_decode(chunk);
        size_t n = cps.size();
        size_t lead = 0;
        while (lead < n && is_punct_cp(cps[lead])) {
            // keep a mention prefix attached: "@user!" -> [@user][!]
            if (cps[lead] == U'@' && lead + 1 < n && !is_punct_cp(cps[lead + 1])) break;
            ++lead;
        }
        if (lead == n) {
            // all punctuation: one token
            tokens.push_back({chunk, tag_language(chunk, config), std::nullopt});
            continue;
        }
        size_t tail = n;
        while (tail > lead && is_punct_cp(cps[tail - 1])) --tail;

        auto emit = [&](size_t from, size_t to) {
            if (from >= to) return;
            std::string piece = utf8_encode({cps.begin() + from, cps.begin() + to});
            tokens.push_back({piece, tag_language(piece, config), std::nullopt});
        };
        emit(0, lead);
        emit(lead, tail);
        emit(tail, n);
    }
    return tokens;
}

namespace {

ojson sentence_to_json(const Sentence& s) {
    ojson j;
    j["id"] = s.id;
    j["label"] = label_to_string(s.label);
    j["origin"] = s.origin == Origin::Natural ? "natural" : "synthetic";
    ojson toks = ojson::array();
    for (const Token& t : s.tokens) {
        ojson jt;
        jt["t"] = t.surface;
        jt["lang"] = lang_to_string(t.lang);
        if (t.pos) jt["pos"] = *t.pos;
        toks.push_back(std::move(jt));
    }
    j["tokens"] = std::move(toks);
    if (s.gen) {
        ojson jg;
        jg["strategy"] = s.gen->strategy;
        jg["params"] = ojson(s.gen->params);
        jg["seed"] = s.gen->seed;
        if (!s.gen->src.empty()) jg["src"] = s.gen->src;
        j["gen"] = std::move(jg);
    }
    return j;
}

Sentence sentence_from_json(const ojson& j, const std::string& embedded_id,
                            size_t line_no) {
    auto fail = [&](const std::string& msg) -> DataError {
        return DataError("line " + std::to_string(line_no) + ": " + msg);
    };
    try {
        Sentence s;
        s.id = j.at("id").get<std::string>();
        s.label = label_from_string(j.at("label").get<std::string>());
        std::string origin = j.at("origin").get<std::string>();
        if (origin == "natural")
            s.origin = Origin::Natural;
        else if (origin == "synthetic")
            s.origin = Origin::Synthetic;
        else
            throw fail("unknown origin '" + origin + "'");
        for (const auto& jt : j.at("tokens")) {
            Token t;
            t.surface = jt.at("t").get<std::string>();
            t.lang = lang_from_string(jt.at("lang").get<std::string>(), embedded_id);
            if (jt.contains("pos")) t.pos = jt.at("pos").get<std::string>();
            s.tokens.push_back(std::move(t));
        }
        if (j.contains("gen")) {
            const auto& jg = j.at("gen");
            GenRecord g;
            g.strategy = jg.at("strategy").get<std::string>();
            if (jg.contains("params"))
                for (const auto& [k, v] : jg.at("params").items())
                    g.params[k] = v.get<std::string>();
            g.seed = jg.at("seed").get<uint64_t>();
            if (jg.contains("src")) g.src = jg.at("src").get<std::string>();
            s.gen = std::move(g);
        }
        return s;
    } catch (const ojson::exception& e) {
        throw fail(e.what());
    }
}

Corpus read_corpus_jsonl(const std::string& path, const TagConfig& config) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    Corpus corpus;
    corpus.matrix_lang = config.matrix_id;
    corpus.embedded_lang = config.embedded_id;
    corpus.mask = config.mask;
    std::string line;
    size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ojson j;
        try {
            j = ojson::parse(line);
        } catch (const ojson::exception& e) {
            throw DataError("line " + std::to_string(line_no) + ": bad json: " + e.what());
        }
        if (first && j.contains("corpus")) {
            const auto& h = j.at("corpus");
            if (h.contains("matrix")) corpus.matrix_lang = h.at("matrix").get<std::string>();
            if (h.contains("embedded"))
                corpus.embedded_lang = h.at("embedded").get<std::string>();
            if (h.contains("mask")) corpus.mask = h.at("mask").get<std::string>();
            if (h.contains("meta"))
                for (const auto& [k, v] : h.at("meta").items())
                    corpus.meta[k] = v.get<std::string>();
            first = false;
            continue;
        }
        first = false;
        corpus.sentences.push_back(
            sentence_from_json(j, corpus.embedded_lang, line_no));
    }
    corpus.validate();
    return corpus;
}

Corpus read_corpus_raw_tsv(const std::string& path, const TagConfig& config) {
    Corpus corpus;
    corpus.matrix_lang = config.matrix_id;
    corpus.embedded_lang = config.embedded_id;
    corpus.mask = config.mask;
    for (const RawRow& row : read_raw_rows(path)) {
        Sentence s;
        s.id = row.id;
        s.label = label_from_string(row.label);
        s.origin = Origin::Natural;
        s.tokens = tokenize(row.text, config);
        if (s.tokens.empty())
            throw DataError("sentence '" + row.id + "': no tokens after tokenization");
        corpus.sentences.push_back(std::move(s));
    }
    corpus.validate();
    return corpus;
}

}  // namespace

Corpus read_corpus(const std::string& path, CorpusFormat format, const TagConfig& config) {
    return format == CorpusFormat::Jsonl ? read_corpus_jsonl(path, config)
                                         : read_corpus_raw_tsv(path, config);
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    ojson header;
    ojson h;
    h["matrix"] = corpus.matrix_lang;
    h["embedded"] = corpus.embedded_lang;
    h["mask"] = corpus.mask;
    h["meta"] = ojson(corpus.meta);
    header["corpus"] = std::move(h);
    out += header.dump();
    out += '\n';
    for (const Sentence& s : corpus.sentences) {
        out += sentence_to_json(s).dump();
        out += '\n';
    }
    return out;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
    corpus.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << corpus_to_jsonl(corpus);
    if (!out) throw DataError("write failed: " + path);
}

std::vector<RawRow> read_raw_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<RawRow> rows;
    std::unordered_set<std::string> seen;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected id<TAB>text<TAB>label, got " +
                            std::to_string(fields.size()) + " fields");
        if (fields[0].empty())
            throw DataError("line " + std::to_string(line_no) + ": empty id");
        if (!seen.insert(fields[0]).second)
            throw DataError("line " + std::to_string(line_no) + ": duplicate id '" +
                            fields[0] + "'");
        rows.push_back({fields[0], fields[1], fields[2]});
    }
    return rows;
}

}  // namespace forge
