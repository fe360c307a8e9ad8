#include "xlcite/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "xlcite/csv.hpp"
#include "xlcite/text.hpp"
#include <json.hpp>

namespace xlcite {

using ordered_json = nlohmann::ordered_json;

Discipline Discipline::parse(std::string_view raw) {
    Discipline d;
    d.label = std::string(raw);
    if (raw == "math") d.kind = DisciplineKind::math;
    else if (raw == "physics") d.kind = DisciplineKind::physics;
    else if (raw == "cs") d.kind = DisciplineKind::cs;
    else d.kind = DisciplineKind::other;
    return d;
}

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key) {
    const auto& v = require(obj, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::int64_t require_int(const nlohmann::json& obj, const char* key) {
    const auto& v = require(obj, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::optional<int> optional_int(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_integer())
        throw ParseError(std::string("field '") + key + "' must be an integer");
    return static_cast<int>(it->get<std::int64_t>());
}

}  // namespace

Document parse_document_line(std::string_view line) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError("document line is not a JSON object");

    Document doc;
    doc.doc_id = require_string(obj, "doc_id");
    if (doc.doc_id.empty()) throw ParseError("doc_id is empty");
    doc.discipline = Discipline::parse(require_string(obj, "discipline"));
    doc.year = static_cast<int>(require_int(obj, "year"));
    doc.month = optional_int(obj, "month");
    if (doc.month && (*doc.month < 1 || *doc.month > 12))
        throw ParseError("month out of range for doc " + doc.doc_id);

    const auto& refs = require(obj, "references");
    if (!refs.is_array()) throw ParseError("references must be an array");
    doc.references.reserve(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
        const auto& r = refs[i];
        ReferenceEntry entry;
        entry.ref_index = static_cast<std::uint32_t>(require_int(r, "ref_index"));
        if (entry.ref_index != i)
            throw ParseError("references out of order in doc " + doc.doc_id);
        entry.raw_text = require_string(r, "raw_text");
        if (entry.raw_text.empty())
            throw ParseError("empty raw_text in doc " + doc.doc_id);
        entry.title = optional_string(r, "title");
        entry.cited_meta_id = optional_string(r, "cited_meta_id");
        entry.year = optional_int(r, "year");
        doc.references.push_back(std::move(entry));
    }

    if (auto it = obj.find("contexts"); it != obj.end()) {
        if (!it->is_array()) throw ParseError("contexts must be an array");
        doc.contexts.reserve(it->size());
        for (const auto& c : *it) {
            InTextCitation ctx;
            ctx.sentence_id = require_int(c, "sentence_id");
            ctx.sentence_text = require_string(c, "sentence_text");
            if (ctx.sentence_text.empty())
                throw ParseError("empty sentence_text in doc " + doc.doc_id);
            ctx.ref_index = static_cast<std::uint32_t>(require_int(c, "ref_index"));
            if (ctx.ref_index >= doc.references.size())
                throw ParseError("context ref_index out of range in doc " + doc.doc_id);
            doc.contexts.push_back(std::move(ctx));
        }
    }
    return doc;
}

std::optional<Document> DocumentStream::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++stats_.lines;
        if (line.empty()) continue;
        try {
            Document doc = parse_document_line(line);
            ++stats_.loaded;
            return doc;
        } catch (const ParseError& e) {
            if (severity_ == Severity::abort_on_error)
                throw ParseError(e.what(), stats_.lines);
            ++stats_.skipped;
        }
    }
    return std::nullopt;
}

std::vector<Document> load_documents(std::istream& in, Severity severity,
                                     LoadStats* stats) {
    DocumentStream stream(in, severity);
    std::vector<Document> docs;
    std::unordered_set<std::string> seen;
    while (auto doc = stream.next()) {
        if (!seen.insert(doc->doc_id).second) {
            if (severity == Severity::abort_on_error)
                throw ValidationError("duplicate doc_id " + doc->doc_id);
            continue;  // duplicate dropped; reflected in loaded vs size
        }
        docs.push_back(std::move(*doc));
    }
    if (stats) *stats = stream.stats();
    return docs;
}

namespace {

ordered_json reference_to_json(const ReferenceEntry& r) {
    ordered_json j;
    j["ref_index"] = r.ref_index;
    j["raw_text"] = r.raw_text;
    if (r.title) j["title"] = *r.title;
    if (r.cited_meta_id) j["cited_meta_id"] = *r.cited_meta_id;
    if (r.year) j["year"] = *r.year;
    return j;
}

}  // namespace

std::string document_to_jsonl(const Document& doc) {
    ordered_json j;
    j["doc_id"] = doc.doc_id;
    j["discipline"] = doc.discipline.label;
    j["year"] = doc.year;
    if (doc.month) j["month"] = *doc.month;
    j["references"] = ordered_json::array();
    for (const auto& r : doc.references) j["references"].push_back(reference_to_json(r));
    j["contexts"] = ordered_json::array();
    for (const auto& c : doc.contexts) {
        ordered_json cj;
        cj["sentence_id"] = c.sentence_id;
        cj["sentence_text"] = c.sentence_text;
        cj["ref_index"] = c.ref_index;
        j["contexts"].push_back(std::move(cj));
    }
    return j.dump();
}

void write_documents_jsonl(std::span<const Document> docs, std::ostream& out) {
    for (const auto& doc : docs) out << document_to_jsonl(doc) << '\n';
}

MetadataRecord parse_metadata_line(std::string_view line) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError("metadata line is not a JSON object");

    MetadataRecord rec;
    rec.meta_id = require_string(obj, "meta_id");
    if (rec.meta_id.empty()) throw ParseError("meta_id is empty");
    rec.title = require_string(obj, "title");
    if (auto it = obj.find("alt_titles"); it != obj.end()) {
        if (!it->is_array()) throw ParseError("alt_titles must be an array");
        for (const auto& t : *it) rec.alt_titles.push_back(t.get<std::string>());
    }
    if (auto it = obj.find("authors"); it != obj.end()) {
        if (!it->is_array()) throw ParseError("authors must be an array");
        for (const auto& a : *it) {
            AuthorRef author;
            author.author_id = optional_string(a, "author_id");
            author.name = require_string(a, "name");
            rec.authors.push_back(std::move(author));
        }
    }
    if (auto it = obj.find("author_affiliation_countries"); it != obj.end()) {
        if (!it->is_array())
            throw ParseError("author_affiliation_countries must be an array");
        for (const auto& a : *it) {
            AffiliationCountry aff;
            aff.author_position = static_cast<std::uint32_t>(require_int(a, "author_position"));
            if (aff.author_position >= rec.authors.size())
                throw ParseError("author_position out of range in record " + rec.meta_id);
            aff.country = require_string(a, "country");
            rec.author_affiliation_countries.push_back(std::move(aff));
        }
    }
    rec.year = optional_int(obj, "year");
    const auto& cc = require(obj, "citation_count");
    if (!cc.is_number_integer() || cc.get<std::int64_t>() < 0)
        throw ParseError("citation_count must be a non-negative integer");
    rec.citation_count = cc.get<std::uint64_t>();
    rec.published_version_id = optional_string(obj, "published_version_id");
    return rec;
}

std::string metadata_to_jsonl(const MetadataRecord& rec) {
    ordered_json j;
    j["meta_id"] = rec.meta_id;
    j["title"] = rec.title;
    j["alt_titles"] = rec.alt_titles;
    j["authors"] = ordered_json::array();
    for (const auto& a : rec.authors) {
        ordered_json aj;
        if (a.author_id) aj["author_id"] = *a.author_id;
        aj["name"] = a.name;
        j["authors"].push_back(std::move(aj));
    }
    j["author_affiliation_countries"] = ordered_json::array();
    for (const auto& a : rec.author_affiliation_countries) {
        ordered_json aj;
        aj["author_position"] = a.author_position;
        aj["country"] = a.country;
        j["author_affiliation_countries"].push_back(std::move(aj));
    }
    if (rec.year) j["year"] = *rec.year;
    j["citation_count"] = rec.citation_count;
    if (rec.published_version_id) j["published_version_id"] = *rec.published_version_id;
    return j.dump();
}

void MetadataStore::add(MetadataRecord record) {
    const std::string id = record.meta_id;
    std::vector<std::string> keys;
    keys.push_back(text::normalize_title(record.title));
    for (const auto& t : record.alt_titles) keys.push_back(text::normalize_title(t));
    auto [it, inserted] = records_.emplace(id, std::move(record));
    if (!inserted) throw ValidationError("duplicate meta_id " + id);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (auto& key : keys) {
        if (key.empty()) continue;
        title_index_[key].push_back(id);
    }
}

void MetadataStore::finalize() {
    dangling_published_ = 0;
    for (const auto& [id, rec] : records_) {
        if (rec.published_version_id && !records_.contains(*rec.published_version_id))
            ++dangling_published_;
    }
}

MetadataStore MetadataStore::load(std::istream& in, Severity severity,
                                  LoadStats* stats) {
    MetadataStore store;
    LoadStats local;
    std::string line;
    while (std::getline(in, line)) {
        ++local.lines;
        if (line.empty()) continue;
        try {
            store.add(parse_metadata_line(line));
            ++local.loaded;
        } catch (const ValidationError&) {
            throw;  // duplicate ids abort regardless of severity
        } catch (const ParseError& e) {
            if (severity == Severity::abort_on_error)
                throw ParseError(e.what(), local.lines);
            ++local.skipped;
        }
    }
    store.finalize();
    if (stats) *stats = local;
    return store;
}

const MetadataRecord* MetadataStore::find(const std::string& meta_id) const {
    auto it = records_.find(meta_id);
    return it == records_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* MetadataStore::find_title(
    const std::string& normalized) const {
    auto it = title_index_.find(normalized);
    return it == title_index_.end() ? nullptr : &it->second;
}

namespace {

bool iso_country_shaped(const std::string& s) {
    return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z';
}

bool iso_language_shaped(const std::string& s) {
    return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

}  // namespace

TerritoryLanguageMap TerritoryLanguageMap::load_csv(std::istream& in) {
    TerritoryLanguageMap map;
    auto records = csv::read(in);
    if (records.empty()) return map;
    const auto& header = records[0];
    if (header.size() != 2 || header[0] != "country_code" || header[1] != "language_code")
        throw ParseError("territory CSV must start with header country_code,language_code");
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() != 2) throw ParseError("territory row needs two columns", i + 1);
        const std::string& country = row[0];
        const std::string& language = row[1];
        if (!iso_country_shaped(country))
            throw ValidationError("not an ISO 3166-1 alpha-2 country code: " + country);
        if (!iso_language_shaped(language))
            throw ValidationError("not an ISO 639-1 language code: " + language);
        if (!map.entries.emplace(country, language).second)
            throw ValidationError("duplicate country " + country);
    }
    return map;
}

ValidationReport validate_corpus(std::span<const Document> docs,
                                 const MetadataStore& store,
                                 const TerritoryLanguageMap& map) {
    ValidationReport report;
    for (const auto& doc : docs) {
        ++report.docs;
        report.refs += doc.references.size();
        report.contexts += doc.contexts.size();
        for (const auto& ref : doc.references) {
            if (!ref.cited_meta_id) continue;
            ++report.refs_with_meta_id;
            if (!store.find(*ref.cited_meta_id)) ++report.dangling_meta_refs;
        }
    }
    std::set<std::string> missing;
    for (const auto& [id, rec] : store) {
        for (const auto& aff : rec.author_affiliation_countries) {
            if (!map.language_of(aff.country)) missing.insert(aff.country);
        }
    }
    report.missing_countries.assign(missing.begin(), missing.end());
    return report;
}

}  // namespace xlcite
