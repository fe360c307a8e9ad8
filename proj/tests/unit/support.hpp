#pragma once

// Shared fixtures for the test suites: an independent std::regex
// reference implementation of the marker pattern, deterministic corpus
// generators with planted ground truth, and brute-force recount oracles.
// Everything here must stay independent of the library code paths it is
// used to check (the generators build Documents directly; the regex
// oracle uses std::regex, not the hand-rolled scanner).

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <tuple>
#include <vector>

#include "xlcite/corpus.hpp"

namespace testsupport {

struct RegexMatch {
    std::size_t begin;
    std::size_t end;
    std::string token;

    bool operator==(const RegexMatch&) const = default;
};

// Independent reference implementation of \(\s*in\s+[a-zA-Z][a-z]+\s*\).
inline std::optional<RegexMatch> regex_scan(const std::string& text,
                                            bool case_insensitive_in = false) {
    static const std::regex pattern(R"(\(\s*in\s+([a-zA-Z][a-z]+)\s*\))");
    static const std::regex pattern_ci(R"(\(\s*[iI][nN]\s+([a-zA-Z][a-z]+)\s*\))");
    std::smatch m;
    if (!std::regex_search(text, m, case_insensitive_in ? pattern_ci : pattern))
        return std::nullopt;
    return RegexMatch{static_cast<std::size_t>(m.position(0)),
                      static_cast<std::size_t>(m.position(0) + m.length(0)),
                      m.str(1)};
}

// ------------------------------------------------------------ generators

struct PlantedRef {
    std::string doc_id;
    std::uint32_t ref_index;
    std::string language;  // ISO code of the planted marker
};

struct PlantedCorpus {
    std::vector<xlcite::Document> docs;
    std::vector<PlantedRef> truth;  // exactly the detectable references
    std::uint64_t total_refs = 0;
};

// Tokens the generator plants. Regular entries never contain '(' except
// a year "(1987)", which cannot match the pattern.
struct PlantSpec {
    // (marker token as written, expected ISO code)
    std::vector<std::pair<std::string, std::string>> languages = {
        {"Russian", "ru"},   {"russian", "ru"},  {"russain", "ru"},
        {"Chinese", "zh"},   {"Japanese", "ja"}, {"japanease", "ja"},
        {"German", "de"},    {"French", "fr"},   {"Ukrainian", "uk"},
        {"Polish", "pl"},    {"Italian", "it"},
    };
    // Decoys match the regex but must not be detected.
    std::vector<std::string> decoys = {"press", "preparation", "print",
                                       "klingon", "english", "English"};
    double marker_share = 0.10;
    double decoy_share = 0.05;
};

inline std::string plain_ref_text(std::mt19937_64& rng, std::uint32_t idx) {
    static const char* authors[] = {"A. Smith", "B. Jones",  "C. Miller",
                                    "D. Petrov", "E. Tanaka", "F. Nguyen"};
    static const char* words[] = {"spectral", "bounds",  "lattices", "operators",
                                  "graphs",   "entropy", "manifolds", "flows"};
    std::string s = authors[rng() % 6];
    s += ", On ";
    s += words[rng() % 8];
    s += " of ";
    s += words[rng() % 8];
    s += " " + std::to_string(idx) + ", J. Res. ";
    s += std::to_string(1 + rng() % 99);
    s += " (19" + std::to_string(70 + rng() % 30) + ") ";
    s += std::to_string(1 + rng() % 999) + "-" + std::to_string(1000 + rng() % 999);
    s += ".";
    return s;
}

inline PlantedCorpus gen_planted(std::size_t n_docs, std::size_t refs_per_doc,
                                 std::uint64_t seed, const PlantSpec& spec = {}) {
    PlantedCorpus corpus;
    std::mt19937_64 rng(seed);
    static const char* disciplines[] = {"math", "physics", "cs"};
    for (std::size_t d = 0; d < n_docs; ++d) {
        xlcite::Document doc;
        doc.doc_id = "doc" + std::to_string(d);
        doc.discipline = xlcite::Discipline::parse(disciplines[rng() % 3]);
        doc.year = 1992 + static_cast<int>(rng() % 28);
        for (std::size_t r = 0; r < refs_per_doc; ++r) {
            xlcite::ReferenceEntry entry;
            entry.ref_index = static_cast<std::uint32_t>(r);
            const double roll =
                static_cast<double>(rng() % 10000) / 10000.0;
            if (roll < spec.marker_share) {
                const auto& [token, code] = spec.languages[rng() % spec.languages.size()];
                entry.raw_text = plain_ref_text(rng, entry.ref_index) + " (in " + token + ")";
                corpus.truth.push_back({doc.doc_id, entry.ref_index, code});
            } else if (roll < spec.marker_share + spec.decoy_share) {
                const auto& token = spec.decoys[rng() % spec.decoys.size()];
                entry.raw_text = plain_ref_text(rng, entry.ref_index) + " (in " + token + ")";
            } else {
                entry.raw_text = plain_ref_text(rng, entry.ref_index);
            }
            doc.references.push_back(std::move(entry));
            ++corpus.total_refs;
        }
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

// ------------------------------------------------------------ tmp files

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("xlcite_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

}  // namespace testsupport
