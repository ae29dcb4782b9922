#include "forge/ngram.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "forge/error.hpp"

namespace forge {

using ojson = nlohmann::ordered_json;

namespace {

constexpr char kSep = '\x1f';

std::string join_context(const std::vector<std::string>& words, size_t from, size_t to) {
    std::string key;
    for (size_t i = from; i < to; ++i) {
        if (i > from) key += kSep;
        key += words[i];
    }
    return key;
}

int lang_rank(LangKind kind) {
    switch (kind) {
        case LangKind::Matrix: return 0;
        case LangKind::Embedded: return 1;
        case LangKind::Univ: return 2;
        case LangKind::Mask: return 3;
    }
    return 0;
}

const char* kind_to_string(LangKind kind) {
    switch (kind) {
        case LangKind::Matrix: return "mat";
        case LangKind::Embedded: return "emb";
        case LangKind::Univ: return "univ";
        case LangKind::Mask: return "mask";
    }
    return "mat";
}

LanguageTag kind_from_string(const std::string& s, const std::string& embedded_id) {
    if (s == "mat") return LanguageTag::matrix();
    if (s == "emb") return LanguageTag::embedded(embedded_id);
    if (s == "univ") return LanguageTag::univ();
    if (s == "mask") return LanguageTag::mask();
    throw DataError("bad language tag in model file: '" + s + "'");
}

}  // namespace

bool NgramModel::in_vocab(const std::string& word) const {
    return std::binary_search(vocab.begin(), vocab.end(), word);
}

NgramModel train_ngram(const Corpus& corpus, SentimentLabel label, int order,
                       double lambda) {
    if (order < 2 || order > 6) throw DataError("ngram order must be in [2,6]");
    if (!(lambda > 0.0)) throw DataError("lambda must be > 0");

    NgramModel model;
    model.order = order;
    model.lambda = lambda;
    model.label = label;
    model.matrix_lang = corpus.matrix_lang;
    model.embedded_lang = corpus.embedded_lang;
    model.mask = corpus.mask;

    std::vector<const Sentence*> slice;
    for (const Sentence& s : corpus.sentences)
        if (s.label == label) slice.push_back(&s);
    if (slice.empty())
        throw DataError(std::string("no sentence with label '") + label_to_string(label) +
                        "'");

    std::map<std::string, std::map<std::string, int>> tag_counts;
    for (const Sentence* s : slice) {
        for (const Token& t : s->tokens) {
            if (t.surface == model.bos || t.surface == model.eos ||
                t.surface == model.unk || t.surface.find(kSep) != std::string::npos)
                throw DataError("sentence '" + s->id + "': surface '" + t.surface +
                                "' collides with a reserved model symbol");
            ++tag_counts[t.surface][kind_to_string(t.lang.kind)];
        }
    }

    std::vector<std::string> vocab;
    vocab.reserve(tag_counts.size() + 1);
    for (const auto& [word, tags] : tag_counts) vocab.push_back(word);
    vocab.push_back(model.eos);
    std::sort(vocab.begin(), vocab.end());
    model.vocab = std::move(vocab);

    for (const auto& [word, tags] : tag_counts) {
        const std::string* best = nullptr;
        int best_count = -1, best_rank = 99;
        for (const auto& [tag, count] : tags) {
            LanguageTag lt = kind_from_string(tag, corpus.embedded_lang);
            int rank = lang_rank(lt.kind);
            if (count > best_count || (count == best_count && rank < best_rank)) {
                best = &tag;
                best_count = count;
                best_rank = rank;
            }
        }
        model.word_tags[word] = kind_from_string(*best, corpus.embedded_lang);
    }
    model.word_tags[model.eos] = LanguageTag::univ();

    model.counts.resize(order);
    model.context_totals.resize(order);
    for (const Sentence* s : slice) {
        for (int k = 1; k <= order; ++k) {
            std::vector<std::string> seq;
            seq.reserve(s->tokens.size() + k);
            for (int p = 0; p < k - 1; ++p) seq.push_back(model.bos);
            for (const Token& t : s->tokens) seq.push_back(t.surface);
            seq.push_back(model.eos);
            for (size_t i = static_cast<size_t>(k - 1); i < seq.size(); ++i) {
                std::string ctx = join_context(seq, i - (k - 1), i);
                ++model.counts[k - 1][ctx][seq[i]];
                ++model.context_totals[k - 1][ctx];
            }
        }
    }
    return model;
}

namespace {

// Maps a raw context onto the model: unseen words -> unk, then keep the last
// order-1 entries left-padded with bos.
std::vector<std::string> normalize_context(const NgramModel& model,
                                           const std::vector<std::string>& context) {
    size_t want = static_cast<size_t>(model.order - 1);
    std::vector<std::string> ctx;
    ctx.reserve(want);
    size_t from = context.size() > want ? context.size() - want : 0;
    for (size_t i = from; i < context.size(); ++i) {
        const std::string& w = context[i];
        ctx.push_back(w == model.bos || model.in_vocab(w) ? w : model.unk);
    }
    while (ctx.size() < want) ctx.insert(ctx.begin(), model.bos);
    return ctx;
}

struct GroundedContext {
    const std::map<std::string, int>* row;  // may be null (no observed extension)
    long long total;
};

// Highest-order context with nonzero count, falling back to the unigram.
GroundedContext ground(const NgramModel& model, const std::vector<std::string>& ctx) {
    for (int level = model.order; level >= 2; --level) {
        std::string key =
            join_context(ctx, ctx.size() - static_cast<size_t>(level - 1), ctx.size());
        auto total = model.context_totals[level - 1].find(key);
        if (total == model.context_totals[level - 1].end() || total->second <= 0)
            continue;
        auto row = model.counts[level - 1].find(key);
        return {row == model.counts[level - 1].end() ? nullptr : &row->second,
                total->second};
    }
    auto total = model.context_totals[0].find("");
    auto row = model.counts[0].find("");
    return {row == model.counts[0].end() ? nullptr : &row->second,
            total == model.context_totals[0].end() ? 0 : total->second};
}

double add_lambda(const GroundedContext& g, const NgramModel& model,
                  const std::string& word) {
    int count = 0;
    if (g.row) {
        auto it = g.row->find(word);
        if (it != g.row->end()) count = it->second;
    }
    return (count + model.lambda) /
           (static_cast<double>(g.total) +
            model.lambda * static_cast<double>(model.vocab.size()));
}

}  // namespace

double ngram_prob(const NgramModel& model, const std::vector<std::string>& context,
                  const std::string& word) {
    std::vector<std::string> ctx = normalize_context(model, context);
    GroundedContext g = ground(model, ctx);
    std::string w = model.in_vocab(word) ? word : model.unk;
    return add_lambda(g, model, w);
}

Sentence generate_sentence(const NgramModel& model, RngStream& rng, size_t max_len) {
    if (max_len < 1) throw DataError("max_len must be >= 1");
    Sentence s;
    s.label = model.label;
    s.origin = Origin::Synthetic;
    GenRecord gen;
    gen.strategy = "ngram";
    gen.params["order"] = std::to_string(model.order);
    gen.params["lambda"] = nlohmann::json(model.lambda).dump();
    gen.params["label"] = label_to_string(model.label);
    s.gen = std::move(gen);

    std::vector<std::string> ctx(static_cast<size_t>(model.order - 1), model.bos);
    while (s.tokens.size() < max_len) {
        GroundedContext g = ground(model, ctx);
        double u = rng.next_unit();
        double cum = 0.0;
        const std::string* picked = &model.vocab.back();
        for (const std::string& w : model.vocab) {
            cum += add_lambda(g, model, w);
            if (u < cum) {
                picked = &w;
                break;
            }
        }
        if (*picked == model.eos) break;
        auto tag = model.word_tags.find(*picked);
        s.tokens.push_back({*picked,
                            tag == model.word_tags.end() ? LanguageTag::matrix()
                                                         : tag->second,
                            std::nullopt});
        if (!ctx.empty()) {
            ctx.erase(ctx.begin());
            ctx.push_back(*picked);
        }
    }
    return s;
}

Corpus combine_generated(const std::vector<NgramModel>& models, size_t per_model_count,
                         uint64_t seed, size_t max_len) {
    if (models.empty()) throw DataError("no models given");
    for (const NgramModel& m : models)
        if (m.matrix_lang != models[0].matrix_lang ||
            m.embedded_lang != models[0].embedded_lang)
            throw DataError("models disagree on the language pair");

    std::vector<Sentence> generated;
    generated.reserve(models.size() * per_model_count);
    for (size_t m = 0; m < models.size(); ++m) {
        for (size_t j = 0; j < per_model_count; ++j) {
            uint64_t sentence_seed = stable_hash(seed, "ngram-gen", m, j);
            RngStream rng(sentence_seed);
            Sentence s = generate_sentence(models[m], rng, max_len);
            s.gen->seed = sentence_seed;
            generated.push_back(std::move(s));
        }
    }
    RngStream shuffle_rng(stable_hash(seed, "ngram-combine-shuffle"));
    deterministic_shuffle(generated, shuffle_rng);

    Corpus out;
    out.matrix_lang = models[0].matrix_lang;
    out.embedded_lang = models[0].embedded_lang;
    out.mask = models[0].mask;
    out.meta["generator"] = "ngram";
    out.meta["seed"] = std::to_string(seed);
    std::unordered_map<std::string, bool> seen;
    size_t next_id = 0;
    for (Sentence& s : generated) {
        if (s.tokens.empty()) continue;
        std::string key = label_to_string(s.label);
        for (const Token& t : s.tokens) {
            key += kSep;
            key += t.surface;
        }
        if (seen.emplace(std::move(key), true).second == false) continue;
        s.id = "n" + std::to_string(next_id++);
        out.sentences.push_back(std::move(s));
    }
    return out;
}

void save_model(const NgramModel& model, const std::string& path) {
    ojson j;
    j["format"] = "forge-ngram";
    j["version"] = 1;
    j["order"] = model.order;
    j["lambda"] = model.lambda;
    j["label"] = label_to_string(model.label);
    j["matrix"] = model.matrix_lang;
    j["embedded"] = model.embedded_lang;
    j["mask"] = model.mask;
    j["bos"] = model.bos;
    j["eos"] = model.eos;
    j["unk"] = model.unk;
    ojson vocab = ojson::array();
    for (const std::string& w : model.vocab) {
        auto tag = model.word_tags.find(w);
        vocab.push_back(ojson::array(
            {w, tag == model.word_tags.end() ? "mat" : kind_to_string(tag->second.kind)}));
    }
    j["vocab"] = std::move(vocab);
    ojson levels = ojson::array();
    for (size_t k = 0; k < model.counts.size(); ++k) {
        std::vector<std::string> keys;
        keys.reserve(model.counts[k].size());
        for (const auto& [ctx, row] : model.counts[k]) keys.push_back(ctx);
        std::sort(keys.begin(), keys.end());
        ojson level = ojson::array();
        for (const std::string& key : keys) {
            ojson words = ojson::array();
            for (const auto& [word, count] : model.counts[k].at(key))
                words.push_back(ojson::array({word, count}));
            ojson ctx_words = ojson::array();
            if (!key.empty()) {
                size_t start = 0;
                for (size_t i = 0; i <= key.size(); ++i) {
                    if (i == key.size() || key[i] == kSep) {
                        ctx_words.push_back(key.substr(start, i - start));
                        start = i + 1;
                    }
                }
            }
            level.push_back(ojson::array({std::move(ctx_words), std::move(words)}));
        }
        levels.push_back(std::move(level));
    }
    j["levels"] = std::move(levels);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << j.dump() << '\n';
}

NgramModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    ojson j;
    try {
        j = ojson::parse(in);
    } catch (const ojson::exception& e) {
        throw DataError("bad model file " + path + ": " + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "forge-ngram")
            throw DataError("not a forge-ngram model: " + path);
        NgramModel model;
        model.order = j.at("order").get<int>();
        model.lambda = j.at("lambda").get<double>();
        model.label = label_from_string(j.at("label").get<std::string>());
        model.matrix_lang = j.at("matrix").get<std::string>();
        model.embedded_lang = j.at("embedded").get<std::string>();
        model.mask = j.at("mask").get<std::string>();
        model.bos = j.at("bos").get<std::string>();
        model.eos = j.at("eos").get<std::string>();
        model.unk = j.at("unk").get<std::string>();
        for (const auto& entry : j.at("vocab")) {
            std::string word = entry.at(0).get<std::string>();
            model.word_tags[word] =
                kind_from_string(entry.at(1).get<std::string>(), model.embedded_lang);
            model.vocab.push_back(std::move(word));
        }
        const auto& levels = j.at("levels");
        model.counts.resize(levels.size());
        model.context_totals.resize(levels.size());
        for (size_t k = 0; k < levels.size(); ++k) {
            for (const auto& entry : levels[k]) {
                std::vector<std::string> ctx_words;
                for (const auto& w : entry.at(0)) ctx_words.push_back(w.get<std::string>());
                std::string key = join_context(ctx_words, 0, ctx_words.size());
                auto& row = model.counts[k][key];
                long long total = 0;
                for (const auto& wc : entry.at(1)) {
                    int count = wc.at(1).get<int>();
                    row[wc.at(0).get<std::string>()] = count;
                    total += count;
                }
                model.context_totals[k][key] = total;
            }
        }
        return model;
    } catch (const ojson::exception& e) {
        throw DataError("bad model file " + path + ": " + e.what());
    }
}

}  // namespace forge
