#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xlcite/corpus.hpp"
#include "xlcite/marker.hpp"

// Impact statistics: stratified comparison sets, preprint-vs-published
// reference diffs, citation-count comparison, and title-based metadata
// resolution with per-language failure rates.
namespace xlcite {

// Samples |target| document ids from the full corpus so the output's
// (year, discipline) histogram equals the target set's exactly. Sampling
// is uniform without replacement within each cell, deterministic per
// seed, and does not exclude target members. A cell with too few corpus
// documents is an error naming the cell.
std::set<std::string> stratified_random_set(std::span<const Document> corpus,
                                            const std::set<std::string>& target_ids,
                                            std::uint64_t seed);

struct RefPair {
    std::string pair_id;
    std::vector<std::string> pre_refs;
    std::vector<std::string> pub_refs;
};

// pairs.jsonl: {"pair_id","pre_refs":[...],"pub_refs":[...]}
std::vector<RefPair> load_pairs_jsonl(std::istream& in);

struct PairDiffStats {
    std::uint64_t pairs = 0;
    std::uint64_t increased = 0;
    std::uint64_t decreased = 0;
    std::int64_t delta_sum = 0;  // exact; mean_delta * pairs == delta_sum
    double mean_delta = 0;
    double sd_delta = 0;  // population

    static PairDiffStats from_aggregates(std::uint64_t pairs, std::uint64_t increased,
                                         std::uint64_t decreased, double mean,
                                         double sd);
};

// Detection runs independently on both sides of every pair; delta is
// (published count) - (preprint count).
PairDiffStats pair_diff_stats(std::span<const RefPair> pairs,
                              const LanguageRegistry& reg,
                              const DetectOptions& opts = {});

struct SetImpact {
    std::string name;
    std::uint64_t docs_with_records = 0;
    std::uint64_t published = 0;  // records with a published_version_id
    std::uint64_t unresolved = 0;
    std::uint64_t stat_docs = 0;  // docs entering mean/sd (filter applied)
    double mean_citations = 0;
    double sd_citations = 0;  // population

    double published_ratio() const {
        return docs_with_records == 0 ? 0.0
                                      : static_cast<double>(published) /
                                            static_cast<double>(docs_with_records);
    }
};

struct ImpactComparison {
    SetImpact a, b;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> filter;  // [lo, hi]
};

// "Published" means the record carries a published_version_id (preprints
// that never made it into a journal or proceedings lack one). The
// citation window, when given, applies to mean/sd and stat_docs only.
ImpactComparison citation_compare(
    const std::vector<std::string>& set_a, const std::vector<std::string>& set_b,
    const MetadataStore& store,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> filter = std::nullopt);

struct ResolveResult {
    std::optional<std::string> meta_id;
    bool ambiguous = false;  // several records share the normalized title
};

// Exact normalized-title matching against titles and alt_titles; no
// fuzzy fallback. Multi-matches resolve to nothing and are flagged.
ResolveResult resolve_reference(const ReferenceEntry& entry, const MetadataStore& store);

struct LangResolution {
    std::uint64_t attempted = 0;
    std::uint64_t resolved = 0;
    double failure_rate() const {
        return attempted == 0 ? 0.0
                              : 1.0 - static_cast<double>(resolved) /
                                          static_cast<double>(attempted);
    }
};

struct ResolutionReport {
    std::uint64_t refs_total = 0;
    std::uint64_t refs_resolved = 0;
    std::uint64_t ambiguous = 0;
    std::map<std::string, LangResolution> per_language;  // detected refs only

    double overall_rate() const {
        return refs_total == 0 ? 0.0
                               : static_cast<double>(refs_resolved) /
                                     static_cast<double>(refs_total);
    }
};

// A reference counts as resolved when it already carries a store id or
// when title matching finds exactly one record. Per-language rows cover
// the detected cross-lingual references only.
ResolutionReport resolution_rates(std::span<const Document> docs,
                                  const DetectionSet& detections,
                                  const MetadataStore& store);

}  // namespace xlcite
