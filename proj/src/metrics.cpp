#include "forge/metrics.hpp"

#include <cmath>
#include <cstring>
#include <map>

#include "forge/error.hpp"

namespace forge {

double sentence_cmi(const Sentence& sentence) {
    size_t n = sentence.tokens.size();
    size_t u = 0;
    std::map<std::string, size_t> per_language;
    for (const Token& t : sentence.tokens) {
        switch (t.lang.kind) {
            case LangKind::Univ: ++u; break;
            case LangKind::Matrix: ++per_language["\x01m"]; break;
            case LangKind::Embedded: ++per_language["\x02" + t.lang.lang]; break;
            case LangKind::Mask: ++per_language["\x03k"]; break;
        }
    }
    if (n <= u) return 0.0;
    size_t max_w = 0;
    for (const auto& [lang, w] : per_language) max_w = std::max(max_w, w);
    return 100.0 * (1.0 - static_cast<double>(max_w) / static_cast<double>(n - u));
}

CmiReport corpus_cmi(const Corpus& corpus) {
    if (corpus.sentences.empty()) throw DataError("cannot compute CMI of an empty corpus");
    CmiReport report;
    report.per_sentence.reserve(corpus.sentences.size());
    double sum = 0.0;
    for (const Sentence& s : corpus.sentences) {
        double cmi = sentence_cmi(s);
        report.per_sentence.emplace_back(s.id, cmi);
        sum += cmi;
        size_t bucket = std::min<size_t>(19, static_cast<size_t>(cmi / 5.0));
        ++report.histogram[bucket];
    }
    report.mean = sum / static_cast<double>(report.per_sentence.size());
    double sq = 0.0;
    for (const auto& [id, cmi] : report.per_sentence)
        sq += (cmi - report.mean) * (cmi - report.mean);
    report.stddev = std::sqrt(sq / static_cast<double>(report.per_sentence.size()));
    return report;
}

CalibrationResult calibrate_temperature(const Corpus& source, double target_cmi,
                                        const StrategyConfig& config,
                                        const Translator& translator,
                                        const std::vector<double>& tau_grid,
                                        size_t samples_per_point, uint64_t seed,
                                        int threads) {
    if (target_cmi < 0.0 || target_cmi > 100.0)
        throw DataError("target CMI out of [0,100]");
    if (tau_grid.empty()) throw DataError("empty tau grid");
    if (samples_per_point == 0) throw DataError("samples_per_point must be >= 1");
    if (config.kind == StrategyKind::Pos)
        throw DataError("calibration applies to the word/phrase strategies only");
    for (double tau : tau_grid)
        if (tau < 0.0 || tau > 1.0) throw DataError("tau grid value out of [0,1]");

    CalibrationResult result;
    result.target_cmi = target_cmi;
    result.samples_per_point = samples_per_point;
    result.seed = seed;
    double best_distance = 0.0;
    bool have_best = false;
    for (double tau : tau_grid) {
        StrategyConfig point_config = config;
        point_config.tau = tau;
        uint64_t tau_bits;
        static_assert(sizeof(tau_bits) == sizeof(tau));
        std::memcpy(&tau_bits, &tau, sizeof(tau_bits));
        uint64_t point_seed = stable_hash(seed, "calibrate", tau_bits);
        Corpus sample = generate_corpus(source, point_config, translator,
                                        samples_per_point, point_seed, threads);
        double mean = corpus_cmi(sample).mean;
        CalibrationPoint point{tau, mean, std::fabs(mean - target_cmi)};
        result.grid.push_back(point);
        if (!have_best || point.distance < best_distance ||
            (point.distance == best_distance && tau < result.tau_star)) {
            best_distance = point.distance;
            result.tau_star = tau;
            have_best = true;
        }
    }
    return result;
}

}  // namespace forge
