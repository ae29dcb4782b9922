#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/corpus.hpp"

namespace forge {

struct CurriculumStage {
    size_t index = 0;
    size_t scm_count = 0;
    size_t ncm_count = 0;
    int epochs = 0;
    std::string file;
};

struct CurriculumManifest {
    std::vector<CurriculumStage> stages;
    uint64_t seed = 0;
    std::string scm_source;
    std::string ncm_source;
    double learning_rate = 4e-6;
    int max_sequence_length = 56;
};

struct CurriculumParams {
    // SCM sentences per stage; non-increasing, last entry 0.
    std::vector<size_t> stage_sizes = {30000, 10000, 3000, 1000, 0};
    int epochs = 3;
    uint64_t seed = 0;
    std::string out_dir;
    std::string scm_source;  // recorded in the manifest, not re-read
    std::string ncm_source;
    // advisory metadata for the downstream trainer
    double learning_rate = 4e-6;
    int max_sequence_length = 56;
};

// Shuffles the SCM once by seed; stage k's file holds the first
// stage_sizes[k] SCM sentences plus the whole NCM, shuffled by (seed, k), so
// stage selections nest (each stage's SCM ids are a prefix of the previous).
// Writes out_dir/stage<k>.jsonl and out_dir/manifest.json. Errors: sizes not
// non-increasing, last size nonzero, |scm| < max(sizes), or SCM/NCM id
// collisions.
CurriculumManifest build_schedule(const Corpus& scm, const Corpus& ncm,
                                  const CurriculumParams& params);

std::string manifest_to_json(const CurriculumManifest& manifest);

}  // namespace forge
