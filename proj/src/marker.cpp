#include "xlcite/marker.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xlcite {

namespace {

// ECMAScript \s over bytes: space, \t, \n, \v, \f, \r.
inline bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

inline bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

}  // namespace

std::optional<MarkerMatch> scan_marker(std::string_view text, bool case_insensitive_in) {
    const std::size_t n = text.size();
    for (std::size_t open = text.find('('); open != std::string_view::npos;
         open = text.find('(', open + 1)) {
        std::size_t i = open + 1;
        while (i < n && is_ws(text[i])) ++i;
        if (i + 1 >= n) break;  // no room for "in" and the rest
        const char c0 = text[i];
        const char c1 = text[i + 1];
        const bool lit_in = case_insensitive_in
                                ? (c0 == 'i' || c0 == 'I') && (c1 == 'n' || c1 == 'N')
                                : c0 == 'i' && c1 == 'n';
        if (!lit_in) continue;
        i += 2;
        std::size_t ws = 0;
        while (i < n && is_ws(text[i])) ++i, ++ws;
        if (ws == 0 || i >= n) continue;
        if (!is_alpha(text[i])) continue;
        const std::size_t tok_begin = i++;
        std::size_t lower = 0;
        while (i < n && is_lower(text[i])) ++i, ++lower;
        if (lower == 0) continue;
        const std::size_t tok_end = i;
        while (i < n && is_ws(text[i])) ++i;
        if (i < n && text[i] == ')')
            return MarkerMatch{std::string(text.substr(tok_begin, tok_end - tok_begin)),
                               open, i + 1};
        // This '(' does not open a marker; keep scanning behind it.
    }
    return std::nullopt;
}

std::optional<CrossLingualCitation> detect_cross_lingual(const ReferenceEntry& entry,
                                                         const LanguageRegistry& reg,
                                                         const DetectOptions& opts) {
    auto match = scan_marker(entry.raw_text, opts.case_insensitive_in);
    if (!match) return std::nullopt;
    const NormalizationResult norm = reg.normalize(match->raw_token);
    if (norm.kind != TokenKind::language || norm.code == LanguageRegistry::english_code)
        return std::nullopt;
    CrossLingualCitation cit;
    cit.ref_index = entry.ref_index;
    cit.language = norm.code;
    cit.evidence = std::move(*match);
    return cit;
}

std::vector<CrossLingualCitation> detect_document(
    const Document& doc, const LanguageRegistry& reg, const DetectOptions& opts,
    std::map<std::string, std::uint64_t>* token_sink) {
    std::vector<CrossLingualCitation> out;
    for (const auto& entry : doc.references) {
        auto match = scan_marker(entry.raw_text, opts.case_insensitive_in);
        if (!match) continue;
        if (token_sink) ++(*token_sink)[match->raw_token];
        const NormalizationResult norm = reg.normalize(match->raw_token);
        if (norm.kind != TokenKind::language ||
            norm.code == LanguageRegistry::english_code)
            continue;
        CrossLingualCitation cit;
        cit.doc_id = doc.doc_id;
        cit.ref_index = entry.ref_index;
        cit.language = norm.code;
        cit.evidence = std::move(*match);
        out.push_back(std::move(cit));
    }
    return out;
}

void DetectionSet::merge(DetectionSet&& other) {
    citations.insert(citations.end(),
                     std::make_move_iterator(other.citations.begin()),
                     std::make_move_iterator(other.citations.end()));
    refs_scanned += other.refs_scanned;
    docs_scanned += other.docs_scanned;
    for (auto& [token, count] : other.token_counts) token_counts[token] += count;
}

bool DetectionSet::same_detections(const DetectionSet& other) const {
    if (citations.size() != other.citations.size()) return false;
    auto key = [](const CrossLingualCitation& c) {
        return std::tie(c.doc_id, c.ref_index, c.language, c.evidence.raw_token,
                        c.evidence.begin, c.evidence.end);
    };
    auto a = citations;
    auto b = other.citations;
    auto less = [&](const auto& x, const auto& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

DetectionSet detect_corpus_serial(std::span<const Document> docs,
                                  const LanguageRegistry& reg,
                                  const DetectOptions& opts) {
    DetectionSet set;
    for (const auto& doc : docs) {
        auto found = detect_document(doc, reg, opts, &set.token_counts);
        set.citations.insert(set.citations.end(),
                             std::make_move_iterator(found.begin()),
                             std::make_move_iterator(found.end()));
        set.refs_scanned += doc.references.size();
        ++set.docs_scanned;
    }
    return set;
}

DetectionSet detect_corpus(std::span<const Document> docs, const LanguageRegistry& reg,
                           const DetectOptions& opts) {
#ifndef _OPENMP
    return detect_corpus_serial(docs, reg, opts);
#else
    const std::size_t n = docs.size();
    int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    if (threads < 1) threads = 1;

    std::vector<std::vector<CrossLingualCitation>> per_doc(n);
    std::vector<std::map<std::string, std::uint64_t>> token_maps(threads);
    std::uint64_t refs = 0;

#pragma omp parallel num_threads(threads) reduction(+ : refs)
    {
        auto& tokens = token_maps[omp_get_thread_num()];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            per_doc[i] = detect_document(docs[i], reg, opts, &tokens);
            refs += docs[i].references.size();
        }
    }

    DetectionSet set;
    set.docs_scanned = n;
    set.refs_scanned = refs;
    for (auto& found : per_doc)
        set.citations.insert(set.citations.end(),
                             std::make_move_iterator(found.begin()),
                             std::make_move_iterator(found.end()));
    for (auto& tokens : token_maps)
        for (auto& [token, count] : tokens) set.token_counts[token] += count;
    return set;
#endif
}

DetectionSet detect_stream(DocumentStream& stream, const LanguageRegistry& reg,
                           const DetectOptions& opts) {
    DetectionSet acc;
    std::vector<Document> chunk;
    chunk.reserve(opts.chunk_docs);
    for (;;) {
        chunk.clear();
        while (chunk.size() < opts.chunk_docs) {
            auto doc = stream.next();
            if (!doc) break;
            chunk.push_back(std::move(*doc));
        }
        if (chunk.empty()) break;
        acc.merge(detect_corpus(chunk, reg, opts));
    }
    return acc;
}

DetectionIndex::DetectionIndex(const DetectionSet& set) {
    for (const auto& cit : set.citations) by_doc_[cit.doc_id].push_back(&cit);
    for (auto& [id, list] : by_doc_)
        std::sort(list.begin(), list.end(),
                  [](const CrossLingualCitation* a, const CrossLingualCitation* b) {
                      return a->ref_index < b->ref_index;
                  });
}

std::span<const CrossLingualCitation* const> DetectionIndex::of_doc(
    const std::string& doc_id) const {
    auto it = by_doc_.find(doc_id);
    if (it == by_doc_.end()) return {};
    return it->second;
}

const CrossLingualCitation* DetectionIndex::find(const std::string& doc_id,
                                                 std::uint32_t ref_index) const {
    for (const auto* cit : of_doc(doc_id))
        if (cit->ref_index == ref_index) return cit;
    return nullptr;
}

bool DetectionIndex::contains(const std::string& doc_id, std::uint32_t ref_index) const {
    return find(doc_id, ref_index) != nullptr;
}

void write_detections_jsonl(const DetectionSet& set, std::ostream& out) {
    for (const auto& cit : set.citations) {
        nlohmann::ordered_json j;
        j["doc_id"] = cit.doc_id;
        j["ref_index"] = cit.ref_index;
        j["language"] = cit.language;
        j["token"] = cit.evidence.raw_token;
        j["span"] = {cit.evidence.begin, cit.evidence.end};
        out << j.dump() << '\n';
    }
}

DetectionSet read_detections_jsonl(std::istream& in) {
    DetectionSet set;
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
        CrossLingualCitation cit;
        cit.doc_id = j.at("doc_id").get<std::string>();
        cit.ref_index = j.at("ref_index").get<std::uint32_t>();
        cit.language = j.at("language").get<std::string>();
        cit.evidence.raw_token = j.at("token").get<std::string>();
        cit.evidence.begin = j.at("span").at(0).get<std::size_t>();
        cit.evidence.end = j.at("span").at(1).get<std::size_t>();
        set.citations.push_back(std::move(cit));
    }
    return set;
}

void write_token_counts_csv(const DetectionSet& set, std::ostream& out) {
    out << "token,count\n";
    for (const auto& [token, count] : set.token_counts) {
        // tokens are [a-zA-Z][a-z]+ by construction, no escaping needed
        out << token << ',' << count << '\n';
    }
}

}  // namespace xlcite
