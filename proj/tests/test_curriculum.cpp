#include <doctest.h>

#include <set>

#include "forge/curriculum.hpp"
#include "forge/error.hpp"
#include "test_util.hpp"

using namespace forge;
using testutil::TempDir;
using testutil::sent;
using testutil::tok;

namespace {

Corpus tiny_corpus(const std::string& prefix, size_t n) {
    Corpus c;
    for (size_t i = 0; i < n; ++i)
        c.sentences.push_back(sent(prefix + std::to_string(i),
                                   {tok(prefix, LangKind::Matrix),
                                    tok("w" + std::to_string(i), LangKind::Matrix)},
                                   static_cast<SentimentLabel>(i % 3)));
    return c;
}

std::set<std::string> scm_ids_in(const Corpus& stage) {
    std::set<std::string> ids;
    for (const Sentence& s : stage.sentences)
        if (s.id.rfind("scm", 0) == 0) ids.insert(s.id);
    return ids;
}

}  // namespace

TEST_CASE("build_schedule: scaled stage sizes 300/100/30/10/0 with 30 NCM") {
    TempDir dir("curriculum");
    Corpus scm = tiny_corpus("scm", 300);
    Corpus ncm = tiny_corpus("ncm", 30);
    CurriculumParams params;
    params.stage_sizes = {300, 100, 30, 10, 0};
    params.epochs = 3;
    params.seed = 7;
    params.out_dir = dir.file("run");
    params.scm_source = "scm.jsonl";
    params.ncm_source = "ncm.jsonl";

    CurriculumManifest manifest = build_schedule(scm, ncm, params);
    REQUIRE(manifest.stages.size() == 5);
    const std::vector<size_t> expected_total = {330, 130, 60, 40, 30};
    std::vector<std::set<std::string>> stage_scm_ids;
    for (size_t k = 0; k < 5; ++k) {
        CHECK(manifest.stages[k].index == k);
        CHECK(manifest.stages[k].epochs == 3);
        CHECK(manifest.stages[k].ncm_count == 30);
        Corpus stage = read_corpus(dir.file("run/stage" + std::to_string(k) + ".jsonl"),
                                   CorpusFormat::Jsonl);
        CHECK(stage.sentences.size() == expected_total[k]);
        // no duplicate ids inside a stage, union = selected SCM + all NCM
        std::set<std::string> ids;
        size_t ncm_seen = 0;
        for (const Sentence& s : stage.sentences) {
            CHECK(ids.insert(s.id).second);
            if (s.id.rfind("ncm", 0) == 0) ++ncm_seen;
        }
        CHECK(ncm_seen == 30);
        stage_scm_ids.push_back(scm_ids_in(stage));
        CHECK(stage_scm_ids.back().size() == params.stage_sizes[k]);
    }
    // prefix nesting: later SCM selections are subsets of earlier ones
    for (size_t k = 1; k < 5; ++k)
        for (const std::string& id : stage_scm_ids[k])
            CHECK(stage_scm_ids[k - 1].count(id) == 1);
}

TEST_CASE("build_schedule is byte-deterministic") {
    Corpus scm = tiny_corpus("scm", 50);
    Corpus ncm = tiny_corpus("ncm", 10);
    CurriculumParams params;
    params.stage_sizes = {40, 10, 0};
    params.seed = 99;
    params.scm_source = "s";
    params.ncm_source = "n";

    TempDir d1("cur_a"), d2("cur_b");
    params.out_dir = d1.file("run");
    build_schedule(scm, ncm, params);
    params.out_dir = d2.file("run");
    build_schedule(scm, ncm, params);
    for (const std::string& name :
         {std::string("stage0.jsonl"), std::string("stage1.jsonl"),
          std::string("stage2.jsonl"), std::string("manifest.json")})
        CHECK(testutil::read_file(d1.file("run/" + name)) ==
              testutil::read_file(d2.file("run/" + name)));
}

TEST_CASE("build_schedule: the one-stage NCM-only baseline") {
    TempDir dir("cur_baseline");
    Corpus scm = tiny_corpus("scm", 5);
    Corpus ncm = tiny_corpus("ncm", 8);
    CurriculumParams params;
    params.stage_sizes = {0};
    params.out_dir = dir.file("run");
    CurriculumManifest manifest = build_schedule(scm, ncm, params);
    REQUIRE(manifest.stages.size() == 1);
    Corpus stage = read_corpus(dir.file("run/stage0.jsonl"), CorpusFormat::Jsonl);
    CHECK(stage.sentences.size() == 8);
    CHECK(scm_ids_in(stage).empty());
}

TEST_CASE("build_schedule: manifest JSON carries the advisory hyperparameters") {
    TempDir dir("cur_manifest");
    CurriculumParams params;
    params.stage_sizes = {2, 0};
    params.out_dir = dir.file("run");
    params.scm_source = "scm.jsonl";
    params.ncm_source = "ncm.jsonl";
    build_schedule(tiny_corpus("scm", 4), tiny_corpus("ncm", 3), params);
    std::string manifest = testutil::read_file(dir.file("run/manifest.json"));
    CHECK(manifest.find("\"learning_rate\": 4e-06") != std::string::npos);
    CHECK(manifest.find("\"max_sequence_length\": 56") != std::string::npos);
    CHECK(manifest.find("\"epochs\": 3") != std::string::npos);
    CHECK(manifest.find("\"scm_source\": \"scm.jsonl\"") != std::string::npos);
}

TEST_CASE("build_schedule: validation errors") {
    TempDir dir("cur_err");
    Corpus scm = tiny_corpus("scm", 20);
    Corpus ncm = tiny_corpus("ncm", 5);
    CurriculumParams params;
    params.out_dir = dir.file("run");

    params.stage_sizes = {10, 20, 0};  // increasing
    CHECK_THROWS_AS(build_schedule(scm, ncm, params), DataError);

    params.stage_sizes = {10, 5};  // last not zero
    CHECK_THROWS_AS(build_schedule(scm, ncm, params), DataError);

    params.stage_sizes = {100, 0};  // too few SCM sentences: no silent clamping
    CHECK_THROWS_WITH_AS(build_schedule(scm, ncm, params), doctest::Contains("100"),
                         DataError);

    params.stage_sizes = {10, 0};
    params.epochs = 0;
    CHECK_THROWS_AS(build_schedule(scm, ncm, params), DataError);
    params.epochs = 3;

    Corpus colliding = tiny_corpus("scm", 20);
    Corpus ncm2 = tiny_corpus("scm", 5);  // ids collide with scm
    CHECK_THROWS_WITH_AS(build_schedule(colliding, ncm2, params),
                         doctest::Contains("scm0"), DataError);

    // different embedded languages only mix when the SCM is mask-only
    Corpus scm_es = tiny_corpus("scm", 20);
    scm_es.embedded_lang = "es";
    scm_es.sentences[0].tokens[0].lang = LanguageTag::embedded("es");
    CHECK_THROWS_AS(build_schedule(scm_es, ncm, params), DataError);

    Corpus scm_gib = tiny_corpus("scm", 20);
    scm_gib.embedded_lang = "GIB";  // mask corpus, no embedded tags: fine
    CHECK_NOTHROW(build_schedule(scm_gib, ncm, params));
}
