#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "xlcite/corpus.hpp"
#include "xlcite/registry.hpp"

// Detection of explicit "(in <Language>)" markers in raw reference
// strings. The scanner is a hand-rolled equivalent of the pattern
//
//     \(\s*in\s+[a-zA-Z][a-z]+\s*\)
//
// (leftmost match, ECMAScript \s semantics over bytes) so a corpus pass
// needs no regex machinery on the hot path. Tests hold it byte-identical
// to an independent std::regex implementation of the same pattern.
namespace xlcite {

struct MarkerMatch {
    std::string raw_token;   // the word following "in"
    std::size_t begin = 0;   // byte offset of '('
    std::size_t end = 0;     // byte offset one past ')'

    bool operator==(const MarkerMatch&) const = default;
};

struct CrossLingualCitation {
    std::string doc_id;
    std::uint32_t ref_index = 0;
    std::string language;  // ISO 639-1, never "en"
    MarkerMatch evidence;

    bool operator==(const CrossLingualCitation&) const = default;
};

struct DetectOptions {
    // Opt-in widening of the literal "in" to "(In ...)" etc. The token
    // character classes are unchanged.
    bool case_insensitive_in = false;
    // 0 = library default thread count for the parallel kernel.
    int threads = 0;
    // Documents per read-detect cycle when streaming.
    std::size_t chunk_docs = 2048;
};

std::optional<MarkerMatch> scan_marker(std::string_view raw_text,
                                       bool case_insensitive_in = false);

// Some iff the scanner matches, the token normalizes to a language, and
// that language is not English. Scan evidence is required: no marker, no
// detection. doc_id is left empty; detect_document fills it in.
std::optional<CrossLingualCitation> detect_cross_lingual(
    const ReferenceEntry& entry, const LanguageRegistry& reg,
    const DetectOptions& opts = {});

struct DetectionSet {
    // Sorted by (doc order encountered, ref_index); compared as a set.
    std::vector<CrossLingualCitation> citations;
    std::uint64_t refs_scanned = 0;
    std::uint64_t docs_scanned = 0;
    // Every pattern match feeds the inventory, including tokens that were
    // rejected as non-languages or unknowns; this is the curation table.
    std::map<std::string, std::uint64_t> token_counts;

    void merge(DetectionSet&& other);
    bool same_detections(const DetectionSet& other) const;  // order-independent
};

// token_sink, when given, receives the raw token of every scan match.
std::vector<CrossLingualCitation> detect_document(
    const Document& doc, const LanguageRegistry& reg, const DetectOptions& opts = {},
    std::map<std::string, std::uint64_t>* token_sink = nullptr);

// Serial reference implementation, kept as the ground truth the parallel
// kernel is tested against.
DetectionSet detect_corpus_serial(std::span<const Document> docs,
                                  const LanguageRegistry& reg,
                                  const DetectOptions& opts = {});

// OpenMP kernel. Results are identical to the serial pass for any thread
// count: per-document outputs are merged in document order and the token
// inventory is a commutative counter merge.
DetectionSet detect_corpus(std::span<const Document> docs,
                           const LanguageRegistry& reg,
                           const DetectOptions& opts = {});

// Chunked streaming variant: reads up to opts.chunk_docs documents,
// detects the chunk in parallel, merges, repeats.
DetectionSet detect_stream(DocumentStream& stream, const LanguageRegistry& reg,
                           const DetectOptions& opts = {});

// Per-document lookup over a DetectionSet.
class DetectionIndex {
public:
    explicit DetectionIndex(const DetectionSet& set);

    bool contains(const std::string& doc_id, std::uint32_t ref_index) const;
    // Detections of one document, ordered by ref_index; empty if none.
    std::span<const CrossLingualCitation* const> of_doc(const std::string& doc_id) const;
    const CrossLingualCitation* find(const std::string& doc_id,
                                     std::uint32_t ref_index) const;

private:
    std::unordered_map<std::string, std::vector<const CrossLingualCitation*>> by_doc_;
};

// detections.jsonl: {"doc_id","ref_index","language","token","span":[s,e]}
void write_detections_jsonl(const DetectionSet& set, std::ostream& out);
DetectionSet read_detections_jsonl(std::istream& in);

// tokens.csv: "token,count", sorted by token.
void write_token_counts_csv(const DetectionSet& set, std::ostream& out);

}  // namespace xlcite
