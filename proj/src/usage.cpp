#include "xlcite/usage.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "xlcite/rng.hpp"
#include "xlcite/text.hpp"

namespace xlcite {

bool author_name_overlap(const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return false;
    std::unordered_set<std::string> keys;
    for (const auto& name : a) {
        auto key = text::normalize_name(name);
        if (!key.empty()) keys.insert(std::move(key));
    }
    for (const auto& name : b) {
        auto key = text::normalize_name(name);
        if (!key.empty() && keys.contains(key)) return true;
    }
    return false;
}

namespace {

bool author_id_overlap(const MetadataRecord& a, const MetadataRecord& b) {
    std::unordered_set<std::string> ids;
    for (const auto& author : a.authors)
        if (author.author_id) ids.insert(*author.author_id);
    if (ids.empty()) return false;
    for (const auto& author : b.authors)
        if (author.author_id && ids.contains(*author.author_id)) return true;
    return false;
}

std::vector<std::string> author_names(const MetadataRecord& rec) {
    std::vector<std::string> names;
    names.reserve(rec.authors.size());
    for (const auto& author : rec.authors) names.push_back(author.name);
    return names;
}

}  // namespace

SelfCitationReport self_citation_rates(std::span<const Document> docs,
                                       const DetectionSet& detections,
                                       const MetadataStore& store) {
    DetectionIndex index(detections);
    SelfCitationReport report;
    report.cross_lingual.scope = "cross_lingual";
    report.monolingual.scope = "monolingual";

    for (const auto& doc : docs) {
        if (index.of_doc(doc.doc_id).empty()) continue;  // cross-lingual set only
        const MetadataRecord* citing = store.find(doc.doc_id);
        for (const auto& entry : doc.references) {
            const bool is_xling = index.contains(doc.doc_id, entry.ref_index);
            SelfCitationRates& scope = is_xling ? report.cross_lingual : report.monolingual;
            const MetadataRecord* cited =
                entry.cited_meta_id ? store.find(*entry.cited_meta_id) : nullptr;
            if (!citing || !cited) {
                ++scope.excluded;
                continue;
            }
            ++scope.support;
            const bool strict = author_id_overlap(*citing, *cited);
            if (strict) ++scope.strict_hits;
            if (strict || author_name_overlap(author_names(*citing), author_names(*cited)))
                ++scope.loose_hits;
        }
    }
    return report;
}

std::uint64_t GeoMatrix::at(const std::string& language, const std::string& group) const {
    auto r = std::find(cited_languages.begin(), cited_languages.end(), language);
    auto c = std::find(origin_groups.begin(), origin_groups.end(), group);
    if (r == cited_languages.end() || c == origin_groups.end()) return 0;
    return cells[r - cited_languages.begin()][c - origin_groups.begin()];
}

std::vector<std::vector<double>> GeoMatrix::row_normalized() const {
    std::vector<std::vector<double>> out(cells.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        std::uint64_t row_sum = 0;
        for (auto v : cells[r]) row_sum += v;
        out[r].resize(cells[r].size(), 0.0);
        if (row_sum == 0) continue;
        for (std::size_t c = 0; c < cells[r].size(); ++c)
            out[r][c] = static_cast<double>(cells[r][c]) / static_cast<double>(row_sum);
    }
    return out;
}

GeoMatrix geo_origin_matrix(std::span<const Document> docs,
                            const DetectionSet& detections,
                            const MetadataStore& store,
                            const TerritoryLanguageMap& map) {
    DetectionIndex index(detections);
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    std::set<std::string> langs, groups, unmapped;
    std::uint64_t excluded = 0;

    for (const auto& doc : docs) {
        const auto doc_detections = index.of_doc(doc.doc_id);
        if (doc_detections.empty()) continue;
        const MetadataRecord* citing = store.find(doc.doc_id);
        if (!citing || citing->author_affiliation_countries.empty()) continue;
        for (const auto* cit : doc_detections) {
            for (const auto& aff : citing->author_affiliation_countries) {
                const std::string* group = map.language_of(aff.country);
                if (!group) {
                    ++excluded;
                    unmapped.insert(aff.country);
                    continue;
                }
                ++counts[{cit->language, *group}];
                langs.insert(cit->language);
                groups.insert(*group);
            }
        }
    }

    GeoMatrix m;
    m.cited_languages.assign(langs.begin(), langs.end());
    m.origin_groups.assign(groups.begin(), groups.end());
    m.unmapped_countries.assign(unmapped.begin(), unmapped.end());
    m.excluded_authors = excluded;
    m.cells.assign(m.cited_languages.size(),
                   std::vector<std::uint64_t>(m.origin_groups.size(), 0));
    for (const auto& [key, n] : counts) {
        const auto r = std::lower_bound(m.cited_languages.begin(), m.cited_languages.end(),
                                        key.first) - m.cited_languages.begin();
        const auto c = std::lower_bound(m.origin_groups.begin(), m.origin_groups.end(),
                                        key.second) - m.origin_groups.begin();
        m.cells[r][c] = n;
        m.total += n;
    }
    return m;
}

LocalitySummary locality_summary(const GeoMatrix& matrix) {
    if (matrix.total == 0)
        throw ValidationError("locality_summary: empty geographic matrix");
    LocalitySummary summary;
    std::uint64_t local = 0, anglo = 0;
    const auto rel = matrix.row_normalized();
    auto col_of = [&](const std::string& group) -> std::optional<std::size_t> {
        auto it = std::find(matrix.origin_groups.begin(), matrix.origin_groups.end(), group);
        if (it == matrix.origin_groups.end()) return std::nullopt;
        return static_cast<std::size_t>(it - matrix.origin_groups.begin());
    };
    const auto en_col = col_of("en");
    for (std::size_t r = 0; r < matrix.cited_languages.size(); ++r) {
        const std::string& lang = matrix.cited_languages[r];
        LangLocality ll;
        if (auto diag = col_of(lang)) {
            local += matrix.cells[r][*diag];
            ll.locality = rel[r][*diag];
        }
        if (en_col) {
            anglo += matrix.cells[r][*en_col];
            ll.en_origin = rel[r][*en_col];
        }
        summary.per_language[lang] = ll;
    }
    summary.local_ratio = static_cast<double>(local) / static_cast<double>(matrix.total);
    summary.anglosphere_ratio =
        static_cast<double>(anglo) / static_cast<double>(matrix.total);
    return summary;
}

namespace {

struct RecordKey {
    bool operator()(const ContextRecord& a, const ContextRecord& b) const {
        return std::tie(a.doc_id, a.sentence_id, a.ref_index) <
               std::tie(b.doc_id, b.sentence_id, b.ref_index);
    }
};

// Largest-remainder allocation of `target` draws across cell sizes,
// preserving the pool's own strata proportions.
std::map<std::pair<std::string, int>, std::size_t> allocate_targets(
    const std::map<std::pair<std::string, int>, std::vector<ContextRecord>>& cells,
    std::size_t pool_size, std::size_t target) {
    std::map<std::pair<std::string, int>, std::size_t> out;
    if (pool_size == 0 || target == 0) return out;
    struct Rem {
        std::pair<std::string, int> key;
        std::uint64_t remainder_num;  // (cell*target) % pool
    };
    std::vector<Rem> rems;
    std::size_t assigned = 0;
    for (const auto& [key, records] : cells) {
        const std::uint64_t num =
            static_cast<std::uint64_t>(records.size()) * static_cast<std::uint64_t>(target);
        const std::size_t base = static_cast<std::size_t>(num / pool_size);
        out[key] = base;
        assigned += base;
        rems.push_back({key, num % pool_size});
    }
    // Distribute the remaining draws by descending fractional part,
    // ties by cell key.
    std::sort(rems.begin(), rems.end(), [](const Rem& a, const Rem& b) {
        if (a.remainder_num != b.remainder_num) return a.remainder_num > b.remainder_num;
        return a.key < b.key;
    });
    std::size_t leftover = target - assigned;
    for (const auto& rem : rems) {
        if (leftover == 0) break;
        // Never allocate past the cell size.
        if (out[rem.key] < cells.at(rem.key).size()) {
            ++out[rem.key];
            --leftover;
        }
    }
    // Degenerate rounding corner: top up wherever capacity remains.
    for (auto& [key, k] : out) {
        if (leftover == 0) break;
        const std::size_t cap = cells.at(key).size();
        const std::size_t add = std::min(cap - k, leftover);
        k += add;
        leftover -= add;
    }
    return out;
}

std::vector<ContextRecord> downsample_stratified(std::vector<ContextRecord> pool,
                                                 std::size_t target, DetRng& rng) {
    if (pool.size() <= target) return pool;
    std::sort(pool.begin(), pool.end(), RecordKey{});
    std::map<std::pair<std::string, int>, std::vector<ContextRecord>> cells;
    for (auto& rec : pool)
        cells[{rec.discipline.label, rec.year}].push_back(std::move(rec));
    const auto targets = allocate_targets(cells, pool.size(), target);
    std::vector<ContextRecord> out;
    out.reserve(target);
    for (auto& [key, records] : cells) {
        const std::size_t k = targets.count(key) ? targets.at(key) : 0;
        if (k == 0) continue;
        auto picks = rng.sample_indices(records.size(), k);
        std::sort(picks.begin(), picks.end());
        for (auto idx : picks) out.push_back(std::move(records[idx]));
    }
    std::sort(out.begin(), out.end(), RecordKey{});
    return out;
}

}  // namespace

ContextSets extract_context_sets(std::span<const Document> docs,
                                 const DetectionSet& detections, std::uint64_t seed) {
    DetectionIndex index(detections);
    ContextSets sets;
    std::vector<ContextRecord> x_pool, mono_pool;

    for (const auto& doc : docs) {
        const auto doc_detections = index.of_doc(doc.doc_id);
        if (doc_detections.empty()) continue;
        std::unordered_set<std::uint32_t> detected;
        for (const auto* cit : doc_detections) detected.insert(cit->ref_index);

        // Monolingual candidates in reference order.
        std::vector<std::uint32_t> mono_refs;
        for (const auto& entry : doc.references)
            if (!detected.contains(entry.ref_index)) mono_refs.push_back(entry.ref_index);

        // Adjacent monolingual reference per detection: nearest by index
        // distance. Ascending candidate order resolves ties to the
        // preceding reference.
        std::set<std::uint32_t> adjacent;
        for (const auto* cit : doc_detections) {
            if (mono_refs.empty()) {
                ++sets.skipped_no_neighbor;
                continue;
            }
            std::uint32_t best = mono_refs.front();
            std::int64_t best_dist = -1;
            for (const auto m : mono_refs) {
                const std::int64_t dist = std::llabs(static_cast<std::int64_t>(m) -
                                                     static_cast<std::int64_t>(cit->ref_index));
                if (best_dist < 0 || dist < best_dist) {
                    best = m;
                    best_dist = dist;
                }
            }
            adjacent.insert(best);
        }

        auto record = [&](const InTextCitation& ctx) {
            return ContextRecord{doc.doc_id, ctx.sentence_id, ctx.ref_index,
                                 ctx.sentence_text, doc.discipline, doc.year};
        };
        std::vector<ContextRecord> doc_x, doc_mono;
        std::set<std::int64_t> x_sentences, mono_sentences;
        for (const auto& ctx : doc.contexts) {
            if (detected.contains(ctx.ref_index)) {
                doc_x.push_back(record(ctx));
                x_sentences.insert(ctx.sentence_id);
            } else if (adjacent.contains(ctx.ref_index)) {
                doc_mono.push_back(record(ctx));
                mono_sentences.insert(ctx.sentence_id);
            }
        }
        // Sentences citing into both pools migrate to mixed.
        auto shared = [&](const ContextRecord& rec) {
            return x_sentences.contains(rec.sentence_id) &&
                   mono_sentences.contains(rec.sentence_id);
        };
        for (auto& rec : doc_x)
            (shared(rec) ? sets.mixed : x_pool).push_back(std::move(rec));
        for (auto& rec : doc_mono)
            (shared(rec) ? sets.mixed : mono_pool).push_back(std::move(rec));
    }

    sets.x_pool_size = x_pool.size();
    sets.mono_pool_size = mono_pool.size();

    DetRng rng(seed);
    const std::size_t target = std::min(x_pool.size(), mono_pool.size());
    sets.x_ling = downsample_stratified(std::move(x_pool), target, rng);
    sets.mono = downsample_stratified(std::move(mono_pool), target, rng);
    std::sort(sets.mixed.begin(), sets.mixed.end(), RecordKey{});
    return sets;
}

}  // namespace xlcite
