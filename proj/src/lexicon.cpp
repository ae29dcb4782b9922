#include "forge/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge {

Bitext read_bitext_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    Bitext pairs;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 2)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected src<TAB>tgt");
        BitextPair pair{split_ws(fields[0]), split_ws(fields[1])};
        if (pair.src.empty() || pair.tgt.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty side");
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

ProbTable ibm1_init(const Bitext& pairs) {
    if (pairs.empty()) throw DataError("empty parallel corpus");
    for (size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].src.empty() || pairs[i].tgt.empty())
            throw DataError("pair " + std::to_string(i) + " has an empty side");
    std::unordered_set<std::string> tgt_vocab;
    for (const BitextPair& p : pairs)
        for (const std::string& t : p.tgt) tgt_vocab.insert(t);
    double uniform = 1.0 / static_cast<double>(tgt_vocab.size());
    ProbTable table;
    for (const BitextPair& p : pairs)
        for (const std::string& s : p.src)
            for (const std::string& t : p.tgt) table[s][t] = uniform;
    return table;
}

void ibm1_iterate(ProbTable& table, const Bitext& pairs) {
    auto prob = [&table](const std::string& s, const std::string& t) {
        auto row = table.find(s);
        if (row == table.end()) return 0.0;
        auto cell = row->second.find(t);
        return cell == row->second.end() ? 0.0 : cell->second;
    };
    // totals accumulate in corpus order so the arithmetic never depends on
    // hash-table iteration order
    ProbTable counts;
    std::unordered_map<std::string, double> totals;
    for (const BitextPair& p : pairs) {
        for (const std::string& t : p.tgt) {
            double z = 0.0;
            for (const std::string& s : p.src) z += prob(s, t);
            if (z <= 0.0) continue;
            for (const std::string& s : p.src) {
                double fractional = prob(s, t) / z;
                counts[s][t] += fractional;
                totals[s] += fractional;
            }
        }
    }
    ProbTable next;
    for (const auto& [src, row] : counts) {
        auto& out = next[src];
        for (const auto& [tgt, c] : row) out[tgt] = c / totals[src];
    }
    table = std::move(next);
}

ProbTable ibm1_train(const Bitext& pairs, int iterations) {
    if (iterations < 1) throw DataError("iterations must be >= 1");
    ProbTable table = ibm1_init(pairs);
    for (int i = 0; i < iterations; ++i) ibm1_iterate(table, pairs);
    return table;
}

std::vector<std::vector<AlignmentLink>> align_from_table(const ProbTable& table,
                                                         const Bitext& pairs) {
    std::vector<std::vector<AlignmentLink>> all;
    all.reserve(pairs.size());
    for (const BitextPair& p : pairs) {
        std::vector<AlignmentLink> links;
        for (size_t i = 0; i < p.src.size(); ++i) {
            auto row = table.find(p.src[i]);
            size_t best_j = 0;
            double best = -1.0;
            for (size_t j = 0; j < p.tgt.size(); ++j) {
                double prob = 0.0;
                if (row != table.end()) {
                    auto cell = row->second.find(p.tgt[j]);
                    if (cell != row->second.end()) prob = cell->second;
                }
                if (prob > best) {  // strict: ties keep the smallest index
                    best = prob;
                    best_j = j;
                }
            }
            links.push_back({i, best_j});
        }
        all.push_back(std::move(links));
    }
    return all;
}

std::vector<std::vector<AlignmentLink>> ibm1_align(const Bitext& pairs, int iterations) {
    return align_from_table(ibm1_train(pairs, iterations), pairs);
}

void write_links(const std::vector<std::vector<AlignmentLink>>& links,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    for (const auto& pair_links : links) {
        for (size_t k = 0; k < pair_links.size(); ++k) {
            if (k) out << ' ';
            out << pair_links[k].src_index << '-' << pair_links[k].tgt_index;
        }
        out << '\n';
    }
}

std::vector<std::vector<AlignmentLink>> read_links(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::vector<std::vector<AlignmentLink>> all;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<AlignmentLink> links;
        for (const std::string& item : split_ws(line)) {
            size_t dash = item.find('-');
            if (dash == std::string::npos)
                throw DataError("line " + std::to_string(line_no) + ": bad link '" +
                                item + "'");
            try {
                links.push_back({std::stoul(item.substr(0, dash)),
                                 std::stoul(item.substr(dash + 1))});
            } catch (const std::exception&) {
                throw DataError("line " + std::to_string(line_no) + ": bad link '" +
                                item + "'");
            }
        }
        all.push_back(std::move(links));
    }
    return all;
}

void TranslationDictionary::add_counts(const std::string& src, const std::string& tgt,
                                       double count) {
    auto& row = entries_[ascii_lower(src)];
    for (WeightedTarget& wt : row) {
        if (wt.word == tgt) {
            wt.weight += count;
            return;
        }
    }
    row.push_back({tgt, count});
}

void TranslationDictionary::finalize() {
    for (auto& [src, row] : entries_) {
        double total = 0.0;
        for (const WeightedTarget& wt : row) total += wt.weight;
        if (total <= 0.0) throw DataError("dictionary entry '" + src + "' has no mass");
        for (WeightedTarget& wt : row) wt.weight /= total;
        std::sort(row.begin(), row.end(), [](const WeightedTarget& a, const WeightedTarget& b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            return a.word < b.word;
        });
    }
    finalized_ = true;
}

const std::vector<WeightedTarget>* TranslationDictionary::lookup(
    const std::string& word) const {
    auto it = entries_.find(ascii_lower(word));
    return it == entries_.end() ? nullptr : &it->second;
}

void TranslationDictionary::save_tsv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    std::map<std::string, const std::vector<WeightedTarget>*> sorted;
    for (const auto& [src, row] : entries_) sorted[src] = &row;
    for (const auto& [src, row] : sorted)
        for (const WeightedTarget& wt : *row)
            out << src << '\t' << wt.word << '\t' << nlohmann::json(wt.weight).dump()
                << '\n';
}

TranslationDictionary TranslationDictionary::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    TranslationDictionary dict;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected src<TAB>tgt<TAB>weight");
        double weight = 0.0;
        try {
            weight = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw DataError("line " + std::to_string(line_no) + ": bad weight");
        }
        if (weight <= 0.0)
            throw DataError("line " + std::to_string(line_no) + ": weight must be > 0");
        dict.add_counts(fields[0], fields[1], weight);
    }
    dict.finalize();
    return dict;
}

TranslationDictionary build_dictionary(
    const Bitext& pairs, const std::vector<std::vector<AlignmentLink>>& links) {
    if (links.size() != pairs.size())
        throw DataError("links / bitext pair count mismatch");
    TranslationDictionary dict;
    for (size_t p = 0; p < pairs.size(); ++p) {
        for (const AlignmentLink& link : links[p]) {
            if (link.src_index >= pairs[p].src.size() ||
                link.tgt_index >= pairs[p].tgt.size())
                throw DataError("pair " + std::to_string(p) + ": link out of range");
            dict.add_counts(pairs[p].src[link.src_index], pairs[p].tgt[link.tgt_index],
                            1.0);
        }
    }
    dict.finalize();
    return dict;
}

Translator Translator::dictionary(TranslationDictionary d, std::string embedded_id,
                                  OovPolicy policy) {
    Translator t;
    t.kind = Kind::Dictionary;
    t.dict = std::move(d);
    t.embedded_id = std::move(embedded_id);
    t.oov = policy;
    return t;
}

Translator Translator::constant_mask(std::string mask) {
    Translator t;
    t.kind = Kind::ConstantMask;
    t.mask = std::move(mask);
    return t;
}

Translator Translator::phrase_table(
    std::unordered_map<std::string, std::vector<std::string>> table,
    std::string embedded_id) {
    Translator t;
    t.kind = Kind::Table;
    t.table = std::move(table);
    t.embedded_id = std::move(embedded_id);
    return t;
}

std::unordered_map<std::string, std::vector<std::string>> read_phrase_table_tsv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::unordered_map<std::string, std::vector<std::string>> table;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_char(line, '\t');
        if (fields.size() != 2)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected src phrase<TAB>tgt phrase");
        std::vector<std::string> tgt = split_ws(fields[1]);
        if (tgt.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty target phrase");
        table[ascii_lower(fields[0])] = std::move(tgt);
    }
    return table;
}

namespace {

Token sample_candidate(const std::vector<WeightedTarget>& candidates,
                       const std::string& embedded_id, RngStream& rng) {
    double u = rng.next_unit();
    double cum = 0.0;
    for (const WeightedTarget& wt : candidates) {
        cum += wt.weight;
        if (u < cum) return {wt.word, LanguageTag::embedded(embedded_id), std::nullopt};
    }
    return {candidates.back().word, LanguageTag::embedded(embedded_id), std::nullopt};
}

}  // namespace

std::vector<Token> translate_tokens(const Translator& translator,
                                    const std::vector<Token>& tokens, RngStream& rng) {
    if (tokens.empty()) throw DataError("translate_tokens: empty token span");
    std::vector<Token> out;
    out.reserve(tokens.size());
    switch (translator.kind) {
        case Translator::Kind::ConstantMask:
            for (size_t i = 0; i < tokens.size(); ++i)
                out.push_back({translator.mask, LanguageTag::mask(), std::nullopt});
            break;
        case Translator::Kind::Dictionary:
            for (const Token& token : tokens) {
                const auto* candidates = translator.dict.lookup(token.surface);
                if (candidates) {
                    out.push_back(sample_candidate(*candidates, translator.embedded_id, rng));
                } else {
                    switch (translator.oov) {
                        case OovPolicy::KeepSource: out.push_back(token); break;
                        case OovPolicy::Drop: break;
                        case OovPolicy::Error:
                            throw DataError("no dictionary entry for '" + token.surface +
                                            "'");
                    }
                }
            }
            break;
        case Translator::Kind::Table: {
            std::string phrase;
            for (size_t i = 0; i < tokens.size(); ++i) {
                if (i) phrase += ' ';
                phrase += tokens[i].surface;
            }
            auto it = translator.table.find(ascii_lower(phrase));
            if (it == translator.table.end()) return tokens;  // miss: keep source
            for (const std::string& word : it->second)
                out.push_back({word, LanguageTag::embedded(translator.embedded_id),
                               std::nullopt});
            break;
        }
    }
    return out;
}

}  // namespace forge
