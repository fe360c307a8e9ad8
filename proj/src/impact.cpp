#include "xlcite/impact.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <unordered_map>

#include <json.hpp>

#include "xlcite/rng.hpp"
#include "xlcite/script.hpp"
#include "xlcite/text.hpp"

namespace xlcite {

std::set<std::string> stratified_random_set(std::span<const Document> corpus,
                                            const std::set<std::string>& target_ids,
                                            std::uint64_t seed) {
    using Cell = std::pair<int, std::string>;  // (year, discipline)
    std::map<Cell, std::uint64_t> wanted;
    std::map<Cell, std::vector<std::string>> candidates;
    std::uint64_t targets_found = 0;
    for (const auto& doc : corpus) {
        const Cell cell{doc.year, doc.discipline.label};
        candidates[cell].push_back(doc.doc_id);
        if (target_ids.contains(doc.doc_id)) {
            ++wanted[cell];
            ++targets_found;
        }
    }
    if (targets_found != target_ids.size())
        throw ValidationError("stratified_random_set: target contains ids not in corpus");

    std::set<std::string> out;
    DetRng rng(seed);
    for (const auto& [cell, count] : wanted) {
        auto& pool = candidates[cell];
        if (pool.size() < count)
            throw ValidationError("stratified_random_set: cell (" +
                                  std::to_string(cell.first) + ", " + cell.second +
                                  ") has " + std::to_string(pool.size()) +
                                  " documents, needs " + std::to_string(count));
        std::sort(pool.begin(), pool.end());
        for (auto idx : rng.sample_indices(pool.size(), count))
            out.insert(pool[idx]);
    }
    return out;
}

std::vector<RefPair> load_pairs_jsonl(std::istream& in) {
    std::vector<RefPair> pairs;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        RefPair pair;
        pair.pair_id = j.at("pair_id").get<std::string>();
        for (const auto& r : j.at("pre_refs")) pair.pre_refs.push_back(r.get<std::string>());
        for (const auto& r : j.at("pub_refs")) pair.pub_refs.push_back(r.get<std::string>());
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

PairDiffStats PairDiffStats::from_aggregates(std::uint64_t pairs, std::uint64_t increased,
                                             std::uint64_t decreased, double mean,
                                             double sd) {
    PairDiffStats stats;
    stats.pairs = pairs;
    stats.increased = increased;
    stats.decreased = decreased;
    stats.mean_delta = mean;
    stats.sd_delta = sd;
    stats.delta_sum = static_cast<std::int64_t>(
        std::llround(mean * static_cast<double>(pairs)));
    return stats;
}

namespace {

std::uint64_t count_cross_lingual(const std::vector<std::string>& refs,
                                  const LanguageRegistry& reg,
                                  const DetectOptions& opts) {
    std::uint64_t n = 0;
    for (const auto& raw : refs) {
        auto match = scan_marker(raw, opts.case_insensitive_in);
        if (!match) continue;
        const NormalizationResult norm = reg.normalize(match->raw_token);
        if (norm.kind == TokenKind::language &&
            norm.code != LanguageRegistry::english_code)
            ++n;
    }
    return n;
}

}  // namespace

PairDiffStats pair_diff_stats(std::span<const RefPair> pairs,
                              const LanguageRegistry& reg, const DetectOptions& opts) {
    if (pairs.empty()) throw ValidationError("pair_diff_stats: empty pair list");
    PairDiffStats stats;
    stats.pairs = pairs.size();
    std::vector<double> deltas;
    deltas.reserve(pairs.size());
    for (const auto& pair : pairs) {
        const auto pre = count_cross_lingual(pair.pre_refs, reg, opts);
        const auto pub = count_cross_lingual(pair.pub_refs, reg, opts);
        const std::int64_t delta =
            static_cast<std::int64_t>(pub) - static_cast<std::int64_t>(pre);
        stats.delta_sum += delta;
        if (delta > 0) ++stats.increased;
        if (delta < 0) ++stats.decreased;
        deltas.push_back(static_cast<double>(delta));
    }
    stats.mean_delta =
        static_cast<double>(stats.delta_sum) / static_cast<double>(stats.pairs);
    double sq = 0;
    for (double d : deltas) {
        const double diff = d - stats.mean_delta;
        sq += diff * diff;
    }
    stats.sd_delta = std::sqrt(sq / static_cast<double>(stats.pairs));
    return stats;
}

namespace {

SetImpact impact_of(const std::string& name, const std::vector<std::string>& ids,
                    const MetadataStore& store,
                    const std::optional<std::pair<std::uint64_t, std::uint64_t>>& filter) {
    SetImpact impact;
    impact.name = name;
    std::vector<double> counts;
    for (const auto& id : ids) {
        const MetadataRecord* rec = store.find(id);
        if (!rec) {
            ++impact.unresolved;
            continue;
        }
        ++impact.docs_with_records;
        if (rec->published_version_id) ++impact.published;
        if (filter && (rec->citation_count < filter->first ||
                       rec->citation_count > filter->second))
            continue;
        counts.push_back(static_cast<double>(rec->citation_count));
    }
    impact.stat_docs = counts.size();
    if (!counts.empty()) {
        double sum = 0;
        for (double c : counts) sum += c;
        impact.mean_citations = sum / static_cast<double>(counts.size());
        double sq = 0;
        for (double c : counts) {
            const double d = c - impact.mean_citations;
            sq += d * d;
        }
        impact.sd_citations = std::sqrt(sq / static_cast<double>(counts.size()));
    }
    return impact;
}

}  // namespace

ImpactComparison citation_compare(
    const std::vector<std::string>& set_a, const std::vector<std::string>& set_b,
    const MetadataStore& store,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> filter) {
    ImpactComparison cmp;
    cmp.filter = filter;
    cmp.a = impact_of("a", set_a, store, filter);
    cmp.b = impact_of("b", set_b, store, filter);
    return cmp;
}

ResolveResult resolve_reference(const ReferenceEntry& entry, const MetadataStore& store) {
    ResolveResult result;
    const auto title = extract_title(entry);
    if (!title) return result;
    const std::string key = text::normalize_title(*title);
    if (key.empty()) return result;
    const auto* ids = store.find_title(key);
    if (!ids || ids->empty()) return result;
    if (ids->size() > 1) {
        result.ambiguous = true;
        return result;
    }
    result.meta_id = ids->front();
    return result;
}

ResolutionReport resolution_rates(std::span<const Document> docs,
                                  const DetectionSet& detections,
                                  const MetadataStore& store) {
    DetectionIndex index(detections);
    ResolutionReport report;
    for (const auto& doc : docs) {
        for (const auto& entry : doc.references) {
            ++report.refs_total;
            bool resolved = false;
            if (entry.cited_meta_id && store.find(*entry.cited_meta_id)) {
                resolved = true;
            } else {
                const ResolveResult r = resolve_reference(entry, store);
                resolved = r.meta_id.has_value();
                if (r.ambiguous) ++report.ambiguous;
            }
            if (resolved) ++report.refs_resolved;
            if (const auto* cit = index.find(doc.doc_id, entry.ref_index)) {
                auto& lang = report.per_language[cit->language];
                ++lang.attempted;
                if (resolved) ++lang.resolved;
            }
        }
    }
    return report;
}

}  // namespace xlcite
