#pragma once

#include <array>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/synthesis.hpp"

namespace forge {

// Per-sentence and corpus-level Code-Mixing Index statistics.
struct CmiReport {
    std::vector<std::pair<std::string, double>> per_sentence;  // (id, cmi)
    double mean = 0.0;
    double stddev = 0.0;                  // population
    std::array<size_t, 20> histogram{};   // [0,100) in steps of 5, top-inclusive
};

// 100 * (1 - max_i(w_i) / (n - u)) if n > u, else 0, where w_i counts tokens
// per non-univ language, n is the token count and u the univ-token count.
// Mask tokens count as an embedded language of their own, so masked corpora
// score comparably to translated ones.
double sentence_cmi(const Sentence& sentence);

CmiReport corpus_cmi(const Corpus& corpus);  // error on an empty corpus

struct CalibrationPoint {
    double tau = 0.0;
    double mean_cmi = 0.0;
    double distance = 0.0;  // |mean_cmi - target|
};

struct CalibrationResult {
    double tau_star = 0.0;
    std::vector<CalibrationPoint> grid;
    double target_cmi = 0.0;
    size_t samples_per_point = 0;
    uint64_t seed = 0;
};

// Sweeps the tau grid, generating samples_per_point sentences per point with
// the given strategy (word or phrase kinds; each point re-seeded from
// (seed, tau)) and returns the point whose mean CMI is closest to the target.
// Ties go to the smallest tau. The full grid is reported so callers can apply
// their own selection policy.
CalibrationResult calibrate_temperature(const Corpus& source, double target_cmi,
                                        const StrategyConfig& config,
                                        const Translator& translator,
                                        const std::vector<double>& tau_grid,
                                        size_t samples_per_point, uint64_t seed,
                                        int threads = 1);

}  // namespace forge
