#include "forge/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "forge/error.hpp"

namespace forge {

const char* strategy_to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Word: return "word";
        case StrategyKind::Phrase: return "phrase";
        case StrategyKind::Pos: return "pos";
    }
    return "word";
}

StrategyKind strategy_from_string(const std::string& s) {
    if (s == "word") return StrategyKind::Word;
    if (s == "phrase") return StrategyKind::Phrase;
    if (s == "pos") return StrategyKind::Pos;
    throw DataError("unknown strategy: '" + s + "'");
}

std::vector<Span> select_words(const Sentence& sentence, double tau, RngStream& rng) {
    if (tau < 0.0 || tau > 1.0) throw DataError("tau out of [0,1]");
    std::vector<Span> spans;
    for (size_t i = 0; i < sentence.tokens.size(); ++i) {
        LangKind kind = sentence.tokens[i].lang.kind;
        if (kind == LangKind::Univ || kind == LangKind::Mask) continue;
        if (rng.next_unit() < tau) spans.push_back({i, 1});
    }
    return spans;
}

std::vector<Span> select_phrases(const Sentence& sentence, double tau,
                                 const std::vector<int>& phrase_lengths,
                                 RngStream& rng) {
    if (tau < 0.0 || tau > 1.0) throw DataError("tau out of [0,1]");
    if (phrase_lengths.empty()) throw DataError("phrase_lengths must be non-empty");
    for (int len : phrase_lengths)
        if (len < 1) throw DataError("phrase lengths must be >= 1");
    std::vector<Span> spans;
    size_t n = sentence.tokens.size();
    size_t cursor = 0;
    while (cursor < n) {
        if (rng.next_unit() < tau) {
            size_t want =
                static_cast<size_t>(phrase_lengths[rng.next_below(phrase_lengths.size())]);
            size_t length = std::min(want, n - cursor);
            spans.push_back({cursor, length});
            cursor += length;
        } else {
            ++cursor;
        }
    }
    return spans;
}

std::vector<Span> select_by_pos(const Sentence& sentence, const std::string& tag) {
    std::vector<Span> spans;
    for (size_t i = 0; i < sentence.tokens.size(); ++i) {
        const Token& t = sentence.tokens[i];
        if (!t.pos)
            throw DataError("sentence '" + sentence.id + "': token " + std::to_string(i) +
                            " has no POS tag");
        if (*t.pos == tag) spans.push_back({i, 1});
    }
    return spans;
}

namespace {

void validate_spans(const Sentence& sentence, const std::vector<Span>& spans) {
    size_t prev_end = 0;
    for (const Span& span : spans) {
        if (span.length < 1 || span.start < prev_end ||
            span.start + span.length > sentence.tokens.size())
            throw DataError("invalid span set for sentence '" + sentence.id + "'");
        prev_end = span.start + span.length;
    }
}

}  // namespace

Sentence apply_replacement(const Sentence& sentence, const std::vector<Span>& spans,
                           const Translator& translator, RngStream& rng,
                           GenRecord gen) {
    validate_spans(sentence, spans);
    Sentence out;
    out.id = sentence.id;
    out.label = sentence.label;
    out.origin = Origin::Synthetic;
    out.gen = std::move(gen);
    size_t pos = 0;
    for (const Span& span : spans) {
        for (; pos < span.start; ++pos) out.tokens.push_back(sentence.tokens[pos]);
        std::vector<Token> slice(sentence.tokens.begin() + span.start,
                                 sentence.tokens.begin() + span.start + span.length);
        std::vector<Token> replaced = translate_tokens(translator, slice, rng);
        out.tokens.insert(out.tokens.end(), replaced.begin(), replaced.end());
        pos = span.start + span.length;
    }
    for (; pos < sentence.tokens.size(); ++pos) out.tokens.push_back(sentence.tokens[pos]);
    return out;
}

namespace {

std::string format_double(double v) { return nlohmann::json(v).dump(); }

std::string format_lengths(const std::vector<int>& lengths) {
    std::string out;
    for (size_t i = 0; i < lengths.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(lengths[i]);
    }
    return out;
}

void run_indexed(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t workers = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::mutex error_mutex;
    std::exception_ptr first_error;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

Corpus generate_corpus(const Corpus& source, const StrategyConfig& config,
                       const Translator& translator, size_t count, uint64_t seed,
                       int threads) {
    if (source.sentences.empty()) throw DataError("source corpus is empty");
    std::string pos_tag;
    if (config.kind == StrategyKind::Pos) {
        if (config.pos_tags.size() != 1)
            throw DataError("pos strategy needs exactly one tag per generation run");
        pos_tag = config.pos_tags[0];
        for (const Sentence& s : source.sentences)
            for (const Token& t : s.tokens)
                if (!t.pos)
                    throw DataError("pos strategy requires a fully tagged source; "
                                    "sentence '" + s.id + "' has untagged tokens");
    } else if (config.tau < 0.0 || config.tau > 1.0) {
        throw DataError("tau out of [0,1]");
    }

    std::vector<size_t> order(source.sentences.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    RngStream shuffle_rng(stable_hash(seed, "source-shuffle"));
    deterministic_shuffle(order, shuffle_rng);

    Corpus out;
    out.matrix_lang = source.matrix_lang;
    out.embedded_lang = translator.kind == Translator::Kind::ConstantMask
                            ? "GIB"
                            : translator.embedded_id;
    out.mask = translator.kind == Translator::Kind::ConstantMask ? translator.mask
                                                                 : source.mask;
    out.meta["generator"] = strategy_to_string(config.kind);
    out.meta["seed"] = std::to_string(seed);
    if (config.kind == StrategyKind::Pos)
        out.meta["pos"] = pos_tag;
    else
        out.meta["tau"] = format_double(config.tau);

    out.sentences.resize(count);
    run_indexed(count, threads, [&](size_t i) {
        const Sentence& src = source.sentences[order[i % order.size()]];
        uint64_t sentence_seed = stable_hash(seed, src.id, i);
        RngStream rng(sentence_seed);
        std::vector<Span> spans;
        GenRecord gen;
        gen.strategy = strategy_to_string(config.kind);
        gen.seed = sentence_seed;
        gen.src = src.id;
        switch (config.kind) {
            case StrategyKind::Word:
                spans = select_words(src, config.tau, rng);
                gen.params["tau"] = format_double(config.tau);
                break;
            case StrategyKind::Phrase:
                spans = select_phrases(src, config.tau, config.phrase_lengths, rng);
                gen.params["tau"] = format_double(config.tau);
                gen.params["lengths"] = format_lengths(config.phrase_lengths);
                break;
            case StrategyKind::Pos:
                spans = select_by_pos(src, pos_tag);
                gen.params["pos"] = pos_tag;
                break;
        }
        Sentence emitted = apply_replacement(src, spans, translator, rng, std::move(gen));
        emitted.id = "g" + std::to_string(i);
        out.sentences[i] = std::move(emitted);
    });
    return out;
}

Corpus union_pos_datasets(const std::vector<Corpus>& datasets) {
    if (datasets.empty()) throw DataError("nothing to union");
    Corpus out;
    out.matrix_lang = datasets[0].matrix_lang;
    out.embedded_lang = datasets[0].embedded_lang;
    out.mask = datasets[0].mask;
    std::unordered_set<std::string> seen;
    size_t next_id = 0;
    for (const Corpus& d : datasets) {
        if (d.matrix_lang != out.matrix_lang || d.embedded_lang != out.embedded_lang)
            throw DataError("union over mismatched language pairs: " + out.matrix_lang +
                            "-" + out.embedded_lang + " vs " + d.matrix_lang + "-" +
                            d.embedded_lang);
        for (const Sentence& s : d.sentences) {
            std::string key = label_to_string(s.label);
            for (const Token& t : s.tokens) {
                key += '\x1f';
                key += t.surface;
            }
            if (!seen.insert(std::move(key)).second) continue;
            Sentence kept = s;
            kept.id = "u" + std::to_string(next_id++);
            out.sentences.push_back(std::move(kept));
        }
    }
    return out;
}

}  // namespace forge
