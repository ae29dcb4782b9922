// forge: synthetic code-mixed corpus toolkit.
//
// Every subcommand prints a JSON run report on stdout and writes data to
// files only. Exit codes: 0 success, 1 data error (the message names the
// offending line or sentence id), 2 usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/corpus.hpp"
#include "forge/curriculum.hpp"
#include "forge/error.hpp"
#include "forge/lexicon.hpp"
#include "forge/metrics.hpp"
#include "forge/ngram.hpp"
#include "forge/postag.hpp"
#include "forge/preprocess.hpp"
#include "forge/rng.hpp"
#include "forge/synthesis.hpp"
#include "forge/text.hpp"

namespace {

using ojson = nlohmann::ordered_json;

std::string g_log_level = "warn";  // off|error|warn|info|debug

int log_rank(const std::string& s) {
    if (s == "off") return 0;
    if (s == "error") return 1;
    if (s == "warn") return 2;
    if (s == "info") return 3;
    return 4;
}

void log_info(const std::string& msg) {
    if (log_rank(g_log_level) >= 3) std::cerr << "[forge] " << msg << "\n";
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw forge::DataError("cannot open file: " + path);
    uint64_t h = 14695981039346656037ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        h = forge::fnv1a64(buf, static_cast<size_t>(in.gcount()), h);
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv64:%016llx", static_cast<unsigned long long>(h));
    return hex;
}

// Accumulates the per-run report that every subcommand prints on stdout.
struct RunReport {
    std::string command;
    ojson config = ojson::object();
    ojson counts = ojson::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void print() const {
        ojson j;
        j["command"] = command;
        j["config"] = config;
        ojson in = ojson::object(), out = ojson::object();
        for (const std::string& p : inputs) in[p] = file_digest(p);
        for (const std::string& p : outputs) out[p] = file_digest(p);
        j["inputs"] = std::move(in);
        j["outputs"] = std::move(out);
        j["counts"] = counts;
        j["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started)
                .count();
        std::cout << j.dump(2) << "\n";
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    size_t colons = std::count(spec.begin(), spec.end(), ':');
    if (colons == 2) {
        std::vector<std::string> parts = forge::split_char(spec, ':');
        double start = std::stod(parts[0]);
        double end = std::stod(parts[1]);
        double step = std::stod(parts[2]);
        if (step <= 0.0) throw forge::DataError("grid step must be > 0");
        for (int i = 0;; ++i) {
            double v = start + i * step;
            if (v > end + 1e-9) break;
            grid.push_back(v);
        }
    } else {
        for (const std::string& item : forge::split_char(spec, ','))
            if (!item.empty()) grid.push_back(std::stod(item));
    }
    if (grid.empty()) throw forge::DataError("empty tau grid: '" + spec + "'");
    return grid;
}

std::vector<size_t> parse_sizes(const std::string& spec) {
    std::vector<size_t> sizes;
    for (const std::string& item : forge::split_char(spec, ','))
        if (!item.empty()) sizes.push_back(std::stoul(item));
    return sizes;
}

std::vector<int> parse_ints(const std::string& spec) {
    std::vector<int> out;
    for (const std::string& item : forge::split_char(spec, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

forge::OovPolicy parse_oov(const std::string& s) {
    if (s == "keep") return forge::OovPolicy::KeepSource;
    if (s == "drop") return forge::OovPolicy::Drop;
    if (s == "error") return forge::OovPolicy::Error;
    throw CLI::ValidationError("--oov", "must be keep|drop|error");
}

struct TranslatorOptions {
    std::string kind = "mask";
    std::string dict_path;
    std::string table_path;
    std::string oov = "keep";
    std::string embedded = "hi";
    std::string mask = "<GIB>";
};

void add_translator_flags(CLI::App* cmd, TranslatorOptions& opts) {
    cmd->add_option("--translator", opts.kind, "Translator: mask|dict|table")
        ->check(CLI::IsMember({"mask", "dict", "table"}));
    cmd->add_option("--dict", opts.dict_path, "Dictionary TSV (src<TAB>tgt<TAB>weight)");
    cmd->add_option("--table", opts.table_path,
                    "Phrase table TSV (src phrase<TAB>tgt phrase)");
    cmd->add_option("--oov", opts.oov, "Dictionary OOV policy: keep|drop|error");
    cmd->add_option("--embedded", opts.embedded, "Embedded language id for translations");
    cmd->add_option("--mask-string", opts.mask, "Mask token surface");
}

forge::Translator make_translator(const TranslatorOptions& opts, RunReport& report) {
    if (opts.kind == "mask") return forge::Translator::constant_mask(opts.mask);
    if (opts.kind == "dict") {
        if (opts.dict_path.empty())
            throw CLI::ValidationError("--dict", "required with --translator dict");
        report.inputs.push_back(opts.dict_path);
        return forge::Translator::dictionary(
            forge::TranslationDictionary::load_tsv(opts.dict_path), opts.embedded,
            parse_oov(opts.oov));
    }
    if (opts.table_path.empty())
        throw CLI::ValidationError("--table", "required with --translator table");
    report.inputs.push_back(opts.table_path);
    return forge::Translator::phrase_table(
        forge::read_phrase_table_tsv(opts.table_path), opts.embedded);
}

ojson cmi_report_json(const forge::CmiReport& report) {
    ojson j;
    j["mean"] = report.mean;
    j["stddev"] = report.stddev;
    j["histogram"] = report.histogram;
    ojson per = ojson::array();
    for (const auto& [id, cmi] : report.per_sentence) {
        ojson e;
        e["id"] = id;
        e["cmi"] = cmi;
        per.push_back(std::move(e));
    }
    j["per_sentence"] = std::move(per);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: synthetic code-mixed corpus toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    uint64_t seed = 0;
    int threads = 1;
    if (const char* env = std::getenv("FORGE_LOG")) g_log_level = env;
    app.add_option("--seed", seed, "Seed for every random choice (default 0)");
    app.add_option("--threads", threads, "Worker threads for per-sentence work")
        ->check(CLI::PositiveNumber);
    app.add_option("--log-level", g_log_level, "off|error|warn|info|debug")
        ->check(CLI::IsMember({"off", "error", "warn", "info", "debug"}));

    RunReport report;

    // ---- preprocess ----
    auto* cmd_pre = app.add_subcommand("preprocess",
                                       "Clean a raw TSV (id<TAB>text<TAB>label) into a "
                                       "tokenized, language-tagged jsonl corpus");
    struct {
        std::string in, emoji, out, matrix = "en", embedded = "hi", mask = "<GIB>";
    } pre;
    cmd_pre->add_option("--in", pre.in, "Raw TSV input")->required();
    cmd_pre->add_option("--emoji", pre.emoji, "Emoji map TSV (emoji<TAB>description)");
    cmd_pre->add_option("--out", pre.out, "Output corpus jsonl")->required();
    cmd_pre->add_option("--matrix", pre.matrix, "Matrix language id");
    cmd_pre->add_option("--embedded", pre.embedded, "Embedded language id");
    cmd_pre->add_option("--mask-string", pre.mask, "Mask token surface");
    cmd_pre->callback([&]() {
        report.command = "preprocess";
        report.config = {{"in", pre.in},       {"emoji", pre.emoji},
                         {"out", pre.out},     {"matrix", pre.matrix},
                         {"embedded", pre.embedded}, {"mask", pre.mask}};
        report.inputs.push_back(pre.in);
        forge::EmojiMap emoji;
        if (!pre.emoji.empty()) {
            emoji = forge::EmojiMap::load_tsv(pre.emoji);
            report.inputs.push_back(pre.emoji);
        }
        std::vector<forge::RawRow> rows = forge::read_raw_rows(pre.in);
        forge::TagConfig config{pre.matrix, pre.embedded, pre.mask, {{0x0900, 0x097F}}};
        forge::Corpus corpus = forge::preprocess_rows(rows, emoji, config);
        forge::write_corpus(corpus, pre.out);
        report.outputs.push_back(pre.out);
        report.counts["rows_in"] = rows.size();
        report.counts["sentences_out"] = corpus.sentences.size();
        report.counts["dropped"] = rows.size() - corpus.sentences.size();
        log_info("preprocess: kept " + std::to_string(corpus.sentences.size()) +
                 " sentences");
    });

    // ---- mine-neutral ----
    auto* cmd_mine = app.add_subcommand(
        "mine-neutral", "Keep candidates scored neutral above the confidence threshold");
    struct {
        std::string in, scores, out;
        double threshold = 0.85;
    } mine;
    cmd_mine->add_option("--in", mine.in, "Candidate corpus jsonl")->required();
    cmd_mine->add_option("--scores", mine.scores, "Scores TSV (id<TAB>label<TAB>confidence)")
        ->required();
    cmd_mine->add_option("--threshold", mine.threshold,
                         "Strict lower confidence bound (default 0.85)");
    cmd_mine->add_option("--out", mine.out, "Output corpus jsonl")->required();
    cmd_mine->callback([&]() {
        report.command = "mine-neutral";
        report.config = {{"in", mine.in},
                         {"scores", mine.scores},
                         {"threshold", mine.threshold},
                         {"out", mine.out}};
        report.inputs = {mine.in, mine.scores};
        forge::Corpus candidates = forge::read_corpus(mine.in, forge::CorpusFormat::Jsonl);
        std::vector<forge::ScoreRecord> scores = forge::read_scores_tsv(mine.scores);
        forge::Corpus kept = forge::mine_neutral(candidates, scores, mine.threshold);
        forge::write_corpus(kept, mine.out);
        report.outputs.push_back(mine.out);
        report.counts["candidates"] = candidates.sentences.size();
        report.counts["kept"] = kept.sentences.size();
    });

    // ---- cmi ----
    auto* cmd_cmi =
        app.add_subcommand("cmi", "Code-Mixing Index statistics for a corpus");
    struct {
        std::string in, out;
    } cmi;
    cmd_cmi->add_option("--in", cmi.in, "Corpus jsonl")->required();
    cmd_cmi->add_option("--report", cmi.out, "Write the full JSON report here");
    cmd_cmi->callback([&]() {
        report.command = "cmi";
        report.config = {{"in", cmi.in}, {"report", cmi.out}};
        report.inputs.push_back(cmi.in);
        forge::Corpus corpus = forge::read_corpus(cmi.in, forge::CorpusFormat::Jsonl);
        forge::CmiReport r = forge::corpus_cmi(corpus);
        if (!cmi.out.empty()) {
            std::ofstream out(cmi.out, std::ios::binary);
            if (!out) throw forge::DataError("cannot write file: " + cmi.out);
            out << cmi_report_json(r).dump(2) << "\n";
            report.outputs.push_back(cmi.out);
        }
        report.counts["sentences"] = r.per_sentence.size();
        report.counts["mean_cmi"] = r.mean;
        report.counts["stddev_cmi"] = r.stddev;
    });

    // ---- calibrate ----
    auto* cmd_cal = app.add_subcommand(
        "calibrate", "Sweep tau so synthetic CMI matches a natural-corpus target");
    struct {
        std::string source, strategy = "phrase", grid = "0:1:0.05", out, lengths = "1,2,3";
        double target = 0.0;
        size_t samples = 2000;
    } cal;
    TranslatorOptions cal_tr;
    cmd_cal->add_option("--source", cal.source, "Monolingual source corpus jsonl")
        ->required();
    cmd_cal->add_option("--target-cmi", cal.target, "Target mean CMI in [0,100]")
        ->required();
    cmd_cal->add_option("--strategy", cal.strategy, "word|phrase")
        ->check(CLI::IsMember({"word", "phrase"}));
    cmd_cal->add_option("--grid", cal.grid, "start:end:step or comma list (default 0:1:0.05)");
    cmd_cal->add_option("--samples", cal.samples, "Samples per grid point (default 2000)");
    cmd_cal->add_option("--phrase-lengths", cal.lengths, "Phrase lengths (default 1,2,3)");
    cmd_cal->add_option("--out", cal.out, "Write the calibration JSON here")->required();
    add_translator_flags(cmd_cal, cal_tr);
    cmd_cal->callback([&]() {
        report.command = "calibrate";
        report.config = {{"source", cal.source},   {"target_cmi", cal.target},
                         {"strategy", cal.strategy}, {"grid", cal.grid},
                         {"samples", cal.samples},  {"translator", cal_tr.kind},
                         {"seed", seed},            {"threads", threads},
                         {"out", cal.out}};
        report.inputs.push_back(cal.source);
        forge::Corpus source = forge::read_corpus(cal.source, forge::CorpusFormat::Jsonl);
        forge::Translator translator = make_translator(cal_tr, report);
        forge::StrategyConfig config;
        config.kind = forge::strategy_from_string(cal.strategy);
        config.phrase_lengths = parse_ints(cal.lengths);
        forge::CalibrationResult result = forge::calibrate_temperature(
            source, cal.target, config, translator, parse_grid(cal.grid), cal.samples,
            seed, threads);
        ojson j;
        j["tau_star"] = result.tau_star;
        j["target_cmi"] = result.target_cmi;
        j["samples_per_point"] = result.samples_per_point;
        j["seed"] = result.seed;
        ojson grid = ojson::array();
        for (const forge::CalibrationPoint& p : result.grid) {
            ojson e;
            e["tau"] = p.tau;
            e["mean_cmi"] = p.mean_cmi;
            e["distance"] = p.distance;
            grid.push_back(std::move(e));
        }
        j["grid"] = std::move(grid);
        std::ofstream out(cal.out, std::ios::binary);
        if (!out) throw forge::DataError("cannot write file: " + cal.out);
        out << j.dump(2) << "\n";
        report.outputs.push_back(cal.out);
        report.counts["grid_points"] = result.grid.size();
        report.counts["tau_star"] = result.tau_star;
    });

    // ---- align ----
    auto* cmd_align = app.add_subcommand(
        "align", "IBM-Model-1 word alignment over a TSV bitext (Pharaoh output)");
    struct {
        std::string bitext, out;
        int iters = 5;
    } al;
    cmd_align->add_option("--bitext", al.bitext, "Bitext TSV (src<TAB>tgt)")->required();
    cmd_align->add_option("--iters", al.iters, "EM iterations (default 5)")
        ->check(CLI::PositiveNumber);
    cmd_align->add_option("--out", al.out, "Pharaoh links output")->required();
    cmd_align->callback([&]() {
        report.command = "align";
        report.config = {{"bitext", al.bitext}, {"iters", al.iters}, {"out", al.out}};
        report.inputs.push_back(al.bitext);
        forge::Bitext bitext = forge::read_bitext_tsv(al.bitext);
        auto links = forge::ibm1_align(bitext, al.iters);
        forge::write_links(links, al.out);
        report.outputs.push_back(al.out);
        report.counts["pairs"] = bitext.size();
    });

    // ---- build-dict ----
    auto* cmd_dict = app.add_subcommand(
        "build-dict", "Weighted translation dictionary from a bitext plus links");
    struct {
        std::string bitext, links, out;
    } bd;
    cmd_dict->add_option("--bitext", bd.bitext, "Bitext TSV")->required();
    cmd_dict->add_option("--links", bd.links, "Pharaoh links file")->required();
    cmd_dict->add_option("--out", bd.out, "Dictionary TSV output")->required();
    cmd_dict->callback([&]() {
        report.command = "build-dict";
        report.config = {{"bitext", bd.bitext}, {"links", bd.links}, {"out", bd.out}};
        report.inputs = {bd.bitext, bd.links};
        forge::Bitext bitext = forge::read_bitext_tsv(bd.bitext);
        auto links = forge::read_links(bd.links);
        forge::TranslationDictionary dict = forge::build_dictionary(bitext, links);
        dict.save_tsv(bd.out);
        report.outputs.push_back(bd.out);
        report.counts["entries"] = dict.size();
    });

    // ---- tag ----
    auto* cmd_tag =
        app.add_subcommand("tag", "POS-tag a corpus from a tag file or the built-in "
                                  "lexicon+suffix tagger");
    struct {
        std::string in, out, tags, lexicon, suffixes, default_tag = "NN";
    } tg;
    cmd_tag->add_option("--in", tg.in, "Corpus jsonl")->required();
    cmd_tag->add_option("--out", tg.out, "Output corpus jsonl")->required();
    cmd_tag->add_option("--tags", tg.tags, "Authoritative tags: id<TAB>tag1 tag2 ...");
    cmd_tag->add_option("--lexicon", tg.lexicon, "Word->tag TSV");
    cmd_tag->add_option("--suffixes", tg.suffixes, "Suffix->tag TSV, ordered");
    cmd_tag->add_option("--default-tag", tg.default_tag, "Fallback tag (default NN)");
    cmd_tag->callback([&]() {
        report.command = "tag";
        if (tg.tags.empty() == tg.lexicon.empty())
            throw CLI::ValidationError("tag", "exactly one of --tags or --lexicon");
        report.config = {{"in", tg.in},
                         {"out", tg.out},
                         {"tags", tg.tags},
                         {"lexicon", tg.lexicon},
                         {"suffixes", tg.suffixes},
                         {"default_tag", tg.default_tag}};
        report.inputs.push_back(tg.in);
        forge::Corpus corpus = forge::read_corpus(tg.in, forge::CorpusFormat::Jsonl);
        forge::Corpus tagged;
        if (!tg.tags.empty()) {
            report.inputs.push_back(tg.tags);
            tagged = forge::load_tags(corpus, tg.tags);
        } else {
            report.inputs.push_back(tg.lexicon);
            if (!tg.suffixes.empty()) report.inputs.push_back(tg.suffixes);
            forge::TagLexicon lexicon =
                forge::TagLexicon::load(tg.lexicon, tg.suffixes, tg.default_tag);
            tagged = forge::tag_corpus(corpus, lexicon);
        }
        forge::write_corpus(tagged, tg.out);
        report.outputs.push_back(tg.out);
        report.counts["sentences"] = tagged.sentences.size();
    });

    // ---- generate ----
    auto* cmd_gen = app.add_subcommand(
        "generate", "Emit synthetic code-mixed sentences from a labeled source corpus");
    struct {
        std::string source, strategy = "word", out, pos, lengths = "1,2,3";
        double tau = 0.0;
        size_t count = 0;
        bool do_union = false;
    } gen;
    TranslatorOptions gen_tr;
    cmd_gen->add_option("--source", gen.source, "Source corpus jsonl")->required();
    cmd_gen->add_option("--strategy", gen.strategy, "word|phrase|pos")
        ->check(CLI::IsMember({"word", "phrase", "pos"}));
    cmd_gen->add_option("--tau", gen.tau, "Replacement probability (word/phrase)");
    cmd_gen->add_option("--pos", gen.pos, "POS tags, comma separated (pos strategy)");
    cmd_gen->add_flag("--union", gen.do_union,
                      "Union the per-tag datasets (dedupe, fresh ids)");
    cmd_gen->add_option("--phrase-lengths", gen.lengths, "Phrase lengths (default 1,2,3)");
    cmd_gen->add_option("--count", gen.count, "Sentences to emit (per POS tag)")
        ->required();
    cmd_gen->add_option("--out", gen.out, "Output corpus jsonl")->required();
    add_translator_flags(cmd_gen, gen_tr);
    cmd_gen->callback([&]() {
        report.command = "generate";
        report.config = {{"source", gen.source},     {"strategy", gen.strategy},
                         {"tau", gen.tau},           {"pos", gen.pos},
                         {"union", gen.do_union},    {"phrase_lengths", gen.lengths},
                         {"translator", gen_tr.kind}, {"oov", gen_tr.oov},
                         {"count", gen.count},       {"seed", seed},
                         {"threads", threads},       {"out", gen.out}};
        report.inputs.push_back(gen.source);
        forge::Corpus source = forge::read_corpus(gen.source, forge::CorpusFormat::Jsonl);
        forge::Translator translator = make_translator(gen_tr, report);
        forge::StrategyConfig config;
        config.kind = forge::strategy_from_string(gen.strategy);
        config.tau = gen.tau;
        config.phrase_lengths = parse_ints(gen.lengths);
        forge::Corpus result;
        if (config.kind == forge::StrategyKind::Pos) {
            std::vector<std::string> tags;
            for (const std::string& t : forge::split_char(gen.pos, ','))
                if (!t.empty()) tags.push_back(t);
            if (tags.empty())
                throw CLI::ValidationError("--pos", "required with --strategy pos");
            if (tags.size() > 1 && !gen.do_union)
                throw CLI::ValidationError("--pos",
                                           "multiple tags need --union (one dataset per "
                                           "tag, then combined)");
            std::vector<forge::Corpus> per_tag;
            for (const std::string& tag : tags) {
                config.pos_tags = {tag};
                per_tag.push_back(forge::generate_corpus(source, config, translator,
                                                         gen.count, seed, threads));
            }
            result = (per_tag.size() == 1 && !gen.do_union)
                         ? std::move(per_tag[0])
                         : forge::union_pos_datasets(per_tag);
        } else {
            result =
                forge::generate_corpus(source, config, translator, gen.count, seed, threads);
        }
        forge::write_corpus(result, gen.out);
        report.outputs.push_back(gen.out);
        report.counts["sentences"] = result.sentences.size();
        log_info("generate: wrote " + std::to_string(result.sentences.size()) +
                 " sentences");
    });

    // ---- ngram ----
    auto* cmd_ngram = app.add_subcommand("ngram", "Per-label n-gram language models");
    cmd_ngram->require_subcommand(1);
    auto* cmd_ntrain = cmd_ngram->add_subcommand("train", "Train one model");
    struct {
        std::string in, label, out;
        int order = 4;
        double lambda = 0.1;  // default not validated against any reference corpus
    } nt;
    cmd_ntrain->add_option("--in", nt.in, "Training corpus jsonl")->required();
    cmd_ntrain->add_option("--label", nt.label, "positive|negative|neutral")->required();
    cmd_ntrain->add_option("--order", nt.order, "N-gram order in [2,6] (default 4)");
    cmd_ntrain->add_option("--lambda", nt.lambda, "Add-lambda pseudo-count (default 0.1)");
    cmd_ntrain->add_option("--out", nt.out, "Model file")->required();
    cmd_ntrain->callback([&]() {
        report.command = "ngram train";
        report.config = {{"in", nt.in},       {"label", nt.label},
                         {"order", nt.order}, {"lambda", nt.lambda},
                         {"out", nt.out}};
        report.inputs.push_back(nt.in);
        forge::Corpus corpus = forge::read_corpus(nt.in, forge::CorpusFormat::Jsonl);
        forge::NgramModel model = forge::train_ngram(
            corpus, forge::label_from_string(nt.label), nt.order, nt.lambda);
        forge::save_model(model, nt.out);
        report.outputs.push_back(nt.out);
        report.counts["vocab"] = model.vocab.size();
    });
    auto* cmd_ngen = cmd_ngram->add_subcommand("generate", "Sample from trained models");
    struct {
        std::string models, out;
        size_t count = 250;  // per model; default not validated against any reference
        size_t max_len = 30;
    } ng;
    cmd_ngen->add_option("--models", ng.models, "Comma-separated model files")->required();
    cmd_ngen->add_option("--count", ng.count, "Sentences per model (default 250)");
    cmd_ngen->add_option("--max-len", ng.max_len, "Token cap per sentence (default 30)");
    cmd_ngen->add_option("--out", ng.out, "Output corpus jsonl")->required();
    cmd_ngen->callback([&]() {
        report.command = "ngram generate";
        report.config = {{"models", ng.models}, {"count", ng.count},
                         {"max_len", ng.max_len}, {"seed", seed},
                         {"out", ng.out}};
        std::vector<forge::NgramModel> models;
        for (const std::string& path : forge::split_char(ng.models, ',')) {
            if (path.empty()) continue;
            report.inputs.push_back(path);
            models.push_back(forge::load_model(path));
        }
        forge::Corpus corpus = forge::combine_generated(models, ng.count, seed, ng.max_len);
        forge::write_corpus(corpus, ng.out);
        report.outputs.push_back(ng.out);
        report.counts["sentences"] = corpus.sentences.size();
    });

    // ---- curriculum ----
    auto* cmd_cur = app.add_subcommand(
        "curriculum", "Staged SCM+NCM dataset files plus a training manifest");
    struct {
        std::string scm, ncm, stages = "30000,10000,3000,1000,0", out_dir;
        int epochs = 3;
        double learning_rate = 4e-6;
        int max_seq_len = 56;
    } cur;
    cmd_cur->add_option("--scm", cur.scm, "Synthetic corpus jsonl")->required();
    cmd_cur->add_option("--ncm", cur.ncm, "Natural corpus jsonl")->required();
    cmd_cur->add_option("--stages", cur.stages,
                        "SCM sentences per stage (default 30000,10000,3000,1000,0)");
    cmd_cur->add_option("--epochs", cur.epochs, "Epochs per stage (default 3)");
    cmd_cur->add_option("--out-dir", cur.out_dir, "Output directory")->required();
    cmd_cur->add_option("--learning-rate", cur.learning_rate,
                        "Advisory manifest value (default 4e-6)");
    cmd_cur->add_option("--max-seq-len", cur.max_seq_len,
                        "Advisory manifest value (default 56)");
    cmd_cur->callback([&]() {
        report.command = "curriculum";
        report.config = {{"scm", cur.scm},        {"ncm", cur.ncm},
                         {"stages", cur.stages},  {"epochs", cur.epochs},
                         {"seed", seed},          {"out_dir", cur.out_dir},
                         {"learning_rate", cur.learning_rate},
                         {"max_seq_len", cur.max_seq_len}};
        report.inputs = {cur.scm, cur.ncm};
        forge::Corpus scm = forge::read_corpus(cur.scm, forge::CorpusFormat::Jsonl);
        forge::Corpus ncm = forge::read_corpus(cur.ncm, forge::CorpusFormat::Jsonl);
        forge::CurriculumParams params;
        params.stage_sizes = parse_sizes(cur.stages);
        params.epochs = cur.epochs;
        params.seed = seed;
        params.out_dir = cur.out_dir;
        params.scm_source = cur.scm;
        params.ncm_source = cur.ncm;
        params.learning_rate = cur.learning_rate;
        params.max_sequence_length = cur.max_seq_len;
        forge::CurriculumManifest manifest = forge::build_schedule(scm, ncm, params);
        for (const forge::CurriculumStage& s : manifest.stages)
            report.outputs.push_back(cur.out_dir + "/" + s.file);
        report.outputs.push_back(cur.out_dir + "/manifest.json");
        report.counts["stages"] = manifest.stages.size();
    });

    // ---- stats ----
    auto* cmd_stats = app.add_subcommand("stats", "Corpus summary counts");
    struct {
        std::string in;
    } st;
    cmd_stats->add_option("--in", st.in, "Corpus jsonl")->required();
    cmd_stats->callback([&]() {
        report.command = "stats";
        report.config = {{"in", st.in}};
        report.inputs.push_back(st.in);
        forge::Corpus corpus = forge::read_corpus(st.in, forge::CorpusFormat::Jsonl);
        size_t tokens = 0;
        std::map<std::string, size_t> labels, langs, origins;
        for (const forge::Sentence& s : corpus.sentences) {
            ++labels[forge::label_to_string(s.label)];
            ++origins[s.origin == forge::Origin::Natural ? "natural" : "synthetic"];
            tokens += s.tokens.size();
            for (const forge::Token& t : s.tokens) {
                switch (t.lang.kind) {
                    case forge::LangKind::Matrix: ++langs["mat"]; break;
                    case forge::LangKind::Embedded: ++langs["emb"]; break;
                    case forge::LangKind::Univ: ++langs["univ"]; break;
                    case forge::LangKind::Mask: ++langs["mask"]; break;
                }
            }
        }
        report.counts["sentences"] = corpus.sentences.size();
        report.counts["tokens"] = tokens;
        report.counts["labels"] = ojson(labels);
        report.counts["origins"] = ojson(origins);
        report.counts["languages"] = ojson(langs);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    } catch (const forge::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    report.print();
    return 0;
}
