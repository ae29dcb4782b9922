#include "forge/curriculum.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "forge/error.hpp"
#include "forge/rng.hpp"

namespace forge {

using ojson = nlohmann::ordered_json;

CurriculumManifest build_schedule(const Corpus& scm, const Corpus& ncm,
                                  const CurriculumParams& params) {
    const std::vector<size_t>& sizes = params.stage_sizes;
    if (sizes.empty()) throw DataError("no stage sizes given");
    for (size_t k = 1; k < sizes.size(); ++k)
        if (sizes[k] > sizes[k - 1])
            throw DataError("stage sizes must be non-increasing");
    if (sizes.back() != 0) throw DataError("the final stage must use 0 SCM sentences");
    if (params.epochs < 1) throw DataError("epochs must be >= 1");
    size_t max_size = sizes.front();
    if (scm.sentences.size() < max_size)
        throw DataError("SCM corpus has " + std::to_string(scm.sentences.size()) +
                        " sentences but the largest stage needs " +
                        std::to_string(max_size));
    if (ncm.sentences.empty()) throw DataError("NCM corpus is empty");

    std::unordered_set<std::string> ncm_ids;
    for (const Sentence& s : ncm.sentences) ncm_ids.insert(s.id);
    for (const Sentence& s : scm.sentences)
        if (ncm_ids.count(s.id))
            throw DataError("SCM and NCM share sentence id '" + s.id + "'");

    // Stage files mix both corpora; this only works if the embedded tags
    // agree or the SCM carries none (the masked-corpus case).
    if (scm.embedded_lang != ncm.embedded_lang) {
        for (const Sentence& s : scm.sentences)
            for (const Token& t : s.tokens)
                if (t.lang.kind == LangKind::Embedded)
                    throw DataError("cannot mix embedded languages '" +
                                    scm.embedded_lang + "' and '" + ncm.embedded_lang +
                                    "' in one stage file");
    }

    std::filesystem::create_directories(params.out_dir);

    std::vector<size_t> scm_order(scm.sentences.size());
    for (size_t i = 0; i < scm_order.size(); ++i) scm_order[i] = i;
    RngStream scm_rng(stable_hash(params.seed, "scm-shuffle"));
    deterministic_shuffle(scm_order, scm_rng);

    CurriculumManifest manifest;
    manifest.seed = params.seed;
    manifest.scm_source = params.scm_source;
    manifest.ncm_source = params.ncm_source;
    manifest.learning_rate = params.learning_rate;
    manifest.max_sequence_length = params.max_sequence_length;

    for (size_t k = 0; k < sizes.size(); ++k) {
        Corpus stage;
        stage.matrix_lang = ncm.matrix_lang;
        stage.embedded_lang = ncm.embedded_lang;
        stage.mask = ncm.mask;
        stage.meta["stage"] = std::to_string(k);
        stage.sentences.reserve(sizes[k] + ncm.sentences.size());
        for (size_t i = 0; i < sizes[k]; ++i)
            stage.sentences.push_back(scm.sentences[scm_order[i]]);
        for (const Sentence& s : ncm.sentences) stage.sentences.push_back(s);
        RngStream stage_rng(stable_hash(params.seed, "stage-shuffle", k));
        deterministic_shuffle(stage.sentences, stage_rng);

        std::string file = "stage" + std::to_string(k) + ".jsonl";
        write_corpus(stage, (std::filesystem::path(params.out_dir) / file).string());
        manifest.stages.push_back(
            {k, sizes[k], ncm.sentences.size(), params.epochs, file});
    }

    std::ofstream out(std::filesystem::path(params.out_dir) / "manifest.json",
                      std::ios::binary);
    if (!out) throw DataError("cannot write manifest in " + params.out_dir);
    out << manifest_to_json(manifest);
    return manifest;
}

std::string manifest_to_json(const CurriculumManifest& manifest) {
    ojson j;
    ojson stages = ojson::array();
    for (const CurriculumStage& s : manifest.stages) {
        ojson js;
        js["index"] = s.index;
        js["scm_count"] = s.scm_count;
        js["ncm_count"] = s.ncm_count;
        js["epochs"] = s.epochs;
        js["file"] = s.file;
        stages.push_back(std::move(js));
    }
    j["stages"] = std::move(stages);
    j["seed"] = manifest.seed;
    j["scm_source"] = manifest.scm_source;
    j["ncm_source"] = manifest.ncm_source;
    ojson hyper;
    hyper["learning_rate"] = manifest.learning_rate;
    hyper["max_sequence_length"] = manifest.max_sequence_length;
    j["hyper"] = std::move(hyper);
    return j.dump(2) + "\n";
}

}  // namespace forge
