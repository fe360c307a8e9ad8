#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

// Corpus data model: citing documents with their reference sections and
// in-text citation sentences, a metadata store for cited/citing works,
// and the country -> language map used by the geographic analysis.
//
// Exchange formats are line oriented (JSONL for documents and metadata,
// CSV for the territory map) so corpora can be streamed.
namespace xlcite {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::uint64_t line_no = 0)
        : std::runtime_error(line_no ? "line " + std::to_string(line_no) + ": " + msg
                                     : msg),
          line(line_no) {}
    std::uint64_t line = 0;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DisciplineKind { math, physics, cs, other };

// Known disciplines keep their canonical label; anything else is carried
// through as `other` with the raw label preserved.
struct Discipline {
    DisciplineKind kind = DisciplineKind::other;
    std::string label;

    static Discipline parse(std::string_view raw);
    bool operator==(const Discipline&) const = default;
    auto operator<=>(const Discipline& o) const { return label <=> o.label; }
};

struct InTextCitation {
    std::int64_t sentence_id = 0;
    std::string sentence_text;
    std::uint32_t ref_index = 0;

    bool operator==(const InTextCitation&) const = default;
};

struct ReferenceEntry {
    std::uint32_t ref_index = 0;
    std::string raw_text;
    std::optional<std::string> title;
    std::optional<std::string> cited_meta_id;
    std::optional<int> year;

    bool operator==(const ReferenceEntry&) const = default;
};

struct Document {
    std::string doc_id;
    Discipline discipline;
    int year = 0;
    std::optional<int> month;
    std::vector<ReferenceEntry> references;
    std::vector<InTextCitation> contexts;

    bool operator==(const Document&) const = default;
};

struct AuthorRef {
    std::optional<std::string> author_id;
    std::string name;

    bool operator==(const AuthorRef&) const = default;
};

struct AffiliationCountry {
    std::uint32_t author_position = 0;
    std::string country;  // ISO 3166-1 alpha-2

    bool operator==(const AffiliationCountry&) const = default;
};

struct MetadataRecord {
    std::string meta_id;
    std::string title;
    std::vector<std::string> alt_titles;
    std::vector<AuthorRef> authors;
    std::vector<AffiliationCountry> author_affiliation_countries;
    std::optional<int> year;
    std::uint64_t citation_count = 0;
    std::optional<std::string> published_version_id;

    bool operator==(const MetadataRecord&) const = default;
};

enum class Severity {
    abort_on_error,  // first bad line throws
    skip_and_count,  // bad lines are skipped and counted
};

struct LoadStats {
    std::uint64_t lines = 0;
    std::uint64_t loaded = 0;
    std::uint64_t skipped = 0;
};

// Streaming JSONL reader; one Document per line, constant memory in the
// corpus size. Schema or invariant violations follow the severity policy.
class DocumentStream {
public:
    explicit DocumentStream(std::istream& in,
                            Severity severity = Severity::skip_and_count)
        : in_(in), severity_(severity) {}

    std::optional<Document> next();

    const LoadStats& stats() const { return stats_; }

private:
    std::istream& in_;
    Severity severity_;
    LoadStats stats_;
};

// Eager load; additionally enforces doc_id uniqueness across the corpus.
std::vector<Document> load_documents(std::istream& in,
                                     Severity severity = Severity::skip_and_count,
                                     LoadStats* stats = nullptr);

// Parses a single document JSON line (shared by the stream and tests).
Document parse_document_line(std::string_view line);

std::string document_to_jsonl(const Document& doc);
void write_documents_jsonl(std::span<const Document> docs, std::ostream& out);

class MetadataStore {
public:
    // Duplicate meta_id is always an error. Records whose
    // published_version_id points nowhere are loaded but counted.
    static MetadataStore load(std::istream& in,
                              Severity severity = Severity::skip_and_count,
                              LoadStats* stats = nullptr);

    void add(MetadataRecord record);
    void finalize();  // recount dangling published links

    const MetadataRecord* find(const std::string& meta_id) const;
    // Lookup by pre-normalized title key (text::normalize_title).
    const std::vector<std::string>* find_title(const std::string& normalized) const;

    std::size_t size() const { return records_.size(); }
    std::uint64_t dangling_published_count() const { return dangling_published_; }

    auto begin() const { return records_.begin(); }
    auto end() const { return records_.end(); }

private:
    std::unordered_map<std::string, MetadataRecord> records_;
    std::unordered_map<std::string, std::vector<std::string>> title_index_;
    std::uint64_t dangling_published_ = 0;
};

MetadataRecord parse_metadata_line(std::string_view line);
std::string metadata_to_jsonl(const MetadataRecord& rec);

struct TerritoryLanguageMap {
    std::map<std::string, std::string> entries;  // country -> language

    // CSV with header "country_code,language_code". Duplicate countries
    // and non-ISO-shaped codes are errors. An empty stream is an empty map.
    static TerritoryLanguageMap load_csv(std::istream& in);

    const std::string* language_of(const std::string& country) const {
        auto it = entries.find(country);
        return it == entries.end() ? nullptr : &it->second;
    }
};

struct ValidationReport {
    std::uint64_t docs = 0;
    std::uint64_t refs = 0;
    std::uint64_t contexts = 0;
    std::uint64_t refs_with_meta_id = 0;
    std::uint64_t dangling_meta_refs = 0;
    std::vector<std::string> missing_countries;  // distinct, sorted

    std::uint64_t countries_missing() const { return missing_countries.size(); }
    bool operator==(const ValidationReport&) const = default;
};

// Pure reporting pass over loaded inputs. "Missing countries" are the
// distinct affiliation countries in the store with no territory entry.
ValidationReport validate_corpus(std::span<const Document> docs,
                                 const MetadataStore& store,
                                 const TerritoryLanguageMap& map);

}  // namespace xlcite
