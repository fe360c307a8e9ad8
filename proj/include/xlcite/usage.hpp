#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xlcite/corpus.hpp"
#include "xlcite/marker.hpp"

// Usage statistics: self-citation rates, geographic origin of
// cross-lingual citations, and extraction of the matched in-text
// citation context sets.
namespace xlcite {

struct SelfCitationRates {
    std::string scope;  // "cross_lingual" or "monolingual"
    std::uint64_t support = 0;      // refs with both ends resolved
    std::uint64_t strict_hits = 0;  // author-id intersection
    std::uint64_t loose_hits = 0;   // strict OR name-set overlap
    std::uint64_t excluded = 0;     // refs lacking metadata on either end

    double strict() const {
        return support == 0 ? 0.0 : static_cast<double>(strict_hits) / static_cast<double>(support);
    }
    double loose() const {
        return support == 0 ? 0.0 : static_cast<double>(loose_hits) / static_cast<double>(support);
    }
};

struct SelfCitationReport {
    SelfCitationRates cross_lingual;
    SelfCitationRates monolingual;
};

// True when the normalized name sets intersect (casefolded, diacritics
// stripped, reduced to "surname, first-initial" keys).
bool author_name_overlap(const std::vector<std::string>& a,
                         const std::vector<std::string>& b);

// Both scopes are drawn from the same citing documents (those with at
// least one detection), which controls for author-specific self-citation
// bias. Citing metadata is looked up by doc_id.
SelfCitationReport self_citation_rates(std::span<const Document> docs,
                                       const DetectionSet& detections,
                                       const MetadataStore& store);

struct GeoMatrix {
    std::vector<std::string> cited_languages;  // rows, sorted
    std::vector<std::string> origin_groups;    // columns, sorted
    std::vector<std::vector<std::uint64_t>> cells;
    std::uint64_t total = 0;
    std::uint64_t excluded_authors = 0;  // affiliation country not in map
    std::vector<std::string> unmapped_countries;  // distinct, sorted

    std::uint64_t at(const std::string& language, const std::string& group) const;
    std::vector<std::vector<double>> row_normalized() const;
};

// One increment per (cross-lingual citation, citing-author affiliation
// country) pair; multi-affiliation authors contribute one increment per
// listed country entry.
GeoMatrix geo_origin_matrix(std::span<const Document> docs,
                            const DetectionSet& detections,
                            const MetadataStore& store,
                            const TerritoryLanguageMap& map);

struct LangLocality {
    double locality = 0;   // row-normalized diagonal entry
    double en_origin = 0;  // row-normalized "en" column entry
};

struct LocalitySummary {
    double local_ratio = 0;        // diagonal mass / total
    double anglosphere_ratio = 0;  // "en" column mass / total
    std::map<std::string, LangLocality> per_language;
};

LocalitySummary locality_summary(const GeoMatrix& matrix);

struct ContextRecord {
    std::string doc_id;
    std::int64_t sentence_id = 0;
    std::uint32_t ref_index = 0;
    std::string sentence_text;
    Discipline discipline;
    int year = 0;

    bool operator==(const ContextRecord&) const = default;
};

struct ContextSets {
    // Sorted by (doc_id, sentence_id, ref_index); pairwise disjoint.
    std::vector<ContextRecord> x_ling;
    std::vector<ContextRecord> mono;
    std::vector<ContextRecord> mixed;
    std::uint64_t skipped_no_neighbor = 0;  // x-ling refs with no mono neighbor
    std::uint64_t x_pool_size = 0;   // before mixed separation / balancing
    std::uint64_t mono_pool_size = 0;
};

// x_ling: contexts of detected references. mono: contexts of each
// detection's adjacent monolingual reference (nearest by index distance,
// preceding on ties). Sentences citing into both pools move to mixed.
// The larger of x_ling/mono is then downsampled to the smaller by
// seeded stratified sampling over (discipline, year), keeping the larger
// pool's own strata proportions (largest-remainder allocation).
ContextSets extract_context_sets(std::span<const Document> docs,
                                 const DetectionSet& detections, std::uint64_t seed);

}  // namespace xlcite
