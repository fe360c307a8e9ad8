#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xlcite/corpus.hpp"
#include "xlcite/marker.hpp"

// Corpus-level prevalence statistics: how common cross-lingual references
// are overall, per year and discipline, within documents that use them,
// and which languages co-occur.
namespace xlcite {

struct LangPrevalence {
    std::uint64_t refs = 0;
    std::uint64_t docs = 0;
};

struct PrevalenceReport {
    std::uint64_t total_docs = 0;
    std::uint64_t total_refs = 0;
    std::uint64_t xling_refs = 0;
    std::uint64_t xling_docs = 0;
    // docs citing exactly k distinct non-English languages -> count
    std::map<std::uint32_t, std::uint64_t> docs_by_language_count;
    std::map<std::string, LangPrevalence> per_language;

    double ref_ratio() const {
        return total_refs == 0 ? 0.0
                               : static_cast<double>(xling_refs) / static_cast<double>(total_refs);
    }
    double doc_ratio() const {
        return total_docs == 0 ? 0.0
                               : static_cast<double>(xling_docs) / static_cast<double>(total_docs);
    }

    // Ratio arithmetic over externally published counts.
    static PrevalenceReport from_counts(std::uint64_t xling_refs, std::uint64_t total_refs,
                                        std::uint64_t xling_docs, std::uint64_t total_docs);
};

PrevalenceReport prevalence_summary(std::span<const Document> docs,
                                    const DetectionSet& detections);

enum class GroupBy { year, discipline };

struct GroupRate {
    std::uint64_t docs = 0;
    std::uint64_t matching = 0;
    double rate() const {
        return docs == 0 ? 0.0 : static_cast<double>(matching) / static_cast<double>(docs);
    }
};

// Relative number of documents with at least one (matching) cross-lingual
// reference per group. Denominators are all documents of the group.
std::map<std::string, GroupRate> grouped_doc_rates(
    std::span<const Document> docs, const DetectionSet& detections, GroupBy group,
    const std::optional<std::string>& language_filter = std::nullopt);

struct CrossLinguality {
    std::string doc_id;
    double value = 0;  // cross-lingual refs / total refs of the doc
};

struct CrossLingualitySummary {
    // Only documents with at least one detected cross-lingual reference.
    std::vector<CrossLinguality> values;
    double mean = 0;
    double sd = 0;  // population standard deviation
    std::map<std::string, double> per_discipline_mean;
    std::uint64_t empty_ref_docs = 0;  // excluded: no references at all
};

CrossLingualitySummary cross_linguality(std::span<const Document> docs,
                                        const DetectionSet& detections);

struct LanguagePairCount {
    std::string a, b;  // a < b
    std::uint64_t docs = 0;
};

// Unordered language pairs co-cited within single documents, sorted by
// count descending, ties lexicographically.
std::vector<LanguagePairCount> language_pair_counts(const DetectionSet& detections);

}  // namespace xlcite
