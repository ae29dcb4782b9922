#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/error.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() /
               ("forge_" + name + "_" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string fixture(const std::string& name) {
    return std::string(FORGE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline forge::Token tok(const std::string& surface, forge::LangKind kind,
                        const std::string& embedded_id = "hi") {
    forge::LanguageTag tag;
    switch (kind) {
        case forge::LangKind::Matrix: tag = forge::LanguageTag::matrix(); break;
        case forge::LangKind::Embedded: tag = forge::LanguageTag::embedded(embedded_id); break;
        case forge::LangKind::Univ: tag = forge::LanguageTag::univ(); break;
        case forge::LangKind::Mask: tag = forge::LanguageTag::mask(); break;
    }
    return {surface, tag, std::nullopt};
}

inline forge::Sentence sent(const std::string& id, std::vector<forge::Token> tokens,
                            forge::SentimentLabel label = forge::SentimentLabel::Positive) {
    forge::Sentence s;
    s.id = id;
    s.tokens = std::move(tokens);
    s.label = label;
    return s;
}

}  // namespace testutil
