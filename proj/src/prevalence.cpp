#include "xlcite/prevalence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace xlcite {

PrevalenceReport PrevalenceReport::from_counts(std::uint64_t xling_refs,
                                               std::uint64_t total_refs,
                                               std::uint64_t xling_docs,
                                               std::uint64_t total_docs) {
    PrevalenceReport r;
    r.xling_refs = xling_refs;
    r.total_refs = total_refs;
    r.xling_docs = xling_docs;
    r.total_docs = total_docs;
    return r;
}

PrevalenceReport prevalence_summary(std::span<const Document> docs,
                                    const DetectionSet& detections) {
    PrevalenceReport report;
    report.total_docs = docs.size();
    for (const auto& doc : docs) report.total_refs += doc.references.size();
    report.xling_refs = detections.citations.size();

    // Distinct languages per document and per-language tallies.
    std::unordered_map<std::string, std::set<std::string>> langs_by_doc;
    for (const auto& cit : detections.citations) {
        langs_by_doc[cit.doc_id].insert(cit.language);
        ++report.per_language[cit.language].refs;
    }
    report.xling_docs = langs_by_doc.size();
    for (const auto& [doc_id, langs] : langs_by_doc) {
        ++report.docs_by_language_count[static_cast<std::uint32_t>(langs.size())];
        for (const auto& lang : langs) ++report.per_language[lang].docs;
    }
    return report;
}

std::map<std::string, GroupRate> grouped_doc_rates(
    std::span<const Document> docs, const DetectionSet& detections, GroupBy group,
    const std::optional<std::string>& language_filter) {
    // Documents with a matching detection.
    std::unordered_set<std::string> matching_docs;
    for (const auto& cit : detections.citations) {
        if (language_filter && cit.language != *language_filter) continue;
        matching_docs.insert(cit.doc_id);
    }
    std::map<std::string, GroupRate> rates;
    for (const auto& doc : docs) {
        const std::string key = group == GroupBy::year ? std::to_string(doc.year)
                                                       : doc.discipline.label;
        auto& rate = rates[key];
        ++rate.docs;
        if (matching_docs.contains(doc.doc_id)) ++rate.matching;
    }
    return rates;
}

CrossLingualitySummary cross_linguality(std::span<const Document> docs,
                                        const DetectionSet& detections) {
    std::unordered_map<std::string, std::uint64_t> xling_by_doc;
    for (const auto& cit : detections.citations) ++xling_by_doc[cit.doc_id];

    CrossLingualitySummary summary;
    std::map<std::string, std::pair<double, std::uint64_t>> disc_sums;
    for (const auto& doc : docs) {
        auto it = xling_by_doc.find(doc.doc_id);
        if (doc.references.empty()) {
            if (it != xling_by_doc.end())
                throw ValidationError("document " + doc.doc_id +
                                      " has detections but no references");
            ++summary.empty_ref_docs;
            continue;
        }
        if (it == xling_by_doc.end()) continue;
        const double value = static_cast<double>(it->second) /
                             static_cast<double>(doc.references.size());
        summary.values.push_back({doc.doc_id, value});
        auto& [sum, count] = disc_sums[doc.discipline.label];
        sum += value;
        ++count;
    }
    const std::size_t n = summary.values.size();
    if (n > 0) {
        double sum = 0;
        for (const auto& v : summary.values) sum += v.value;
        summary.mean = sum / static_cast<double>(n);
        double sq = 0;
        for (const auto& v : summary.values) {
            const double d = v.value - summary.mean;
            sq += d * d;
        }
        summary.sd = std::sqrt(sq / static_cast<double>(n));
    }
    for (const auto& [label, sc] : disc_sums)
        summary.per_discipline_mean[label] = sc.first / static_cast<double>(sc.second);
    return summary;
}

std::vector<LanguagePairCount> language_pair_counts(const DetectionSet& detections) {
    std::unordered_map<std::string, std::set<std::string>> langs_by_doc;
    for (const auto& cit : detections.citations)
        langs_by_doc[cit.doc_id].insert(cit.language);

    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    for (const auto& [doc_id, langs] : langs_by_doc) {
        for (auto a = langs.begin(); a != langs.end(); ++a) {
            auto b = a;
            for (++b; b != langs.end(); ++b) ++counts[{*a, *b}];
        }
    }
    std::vector<LanguagePairCount> out;
    out.reserve(counts.size());
    for (const auto& [pair, n] : counts) out.push_back({pair.first, pair.second, n});
    std::sort(out.begin(), out.end(), [](const LanguagePairCount& x, const LanguagePairCount& y) {
        if (x.docs != y.docs) return x.docs > y.docs;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

}  // namespace xlcite
