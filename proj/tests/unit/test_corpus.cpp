#include <doctest.h>

#include <random>
#include <sstream>

#include "support.hpp"
#include "xlcite/corpus.hpp"

using namespace xlcite;

namespace {

const char* kDocLine =
    R"({"doc_id":"d1","discipline":"math","year":2005,"month":3,)"
    R"("references":[{"ref_index":0,"raw_text":"A, B, 2001.","title":"T0"},)"
    R"({"ref_index":1,"raw_text":"C (in Russian).","cited_meta_id":"m7","year":1999}],)"
    R"("contexts":[{"sentence_id":4,"sentence_text":"See [1].","ref_index":1}]})";

}  // namespace

TEST_CASE("one well-formed line yields one document") {
    std::istringstream in(std::string(kDocLine) + "\n");
    DocumentStream stream(in, Severity::abort_on_error);
    auto doc = stream.next();
    REQUIRE(doc);
    CHECK(doc->doc_id == "d1");
    CHECK(doc->discipline.kind == DisciplineKind::math);
    CHECK(doc->year == 2005);
    CHECK(doc->month == 3);
    REQUIRE(doc->references.size() == 2);
    CHECK(doc->references[0].title == "T0");
    CHECK(doc->references[1].cited_meta_id == "m7");
    CHECK(doc->references[1].year == 1999);
    REQUIRE(doc->contexts.size() == 1);
    CHECK(doc->contexts[0].sentence_id == 4);
    CHECK(!stream.next());
}

TEST_CASE("empty stream yields empty sequence") {
    std::istringstream in("");
    DocumentStream stream(in);
    CHECK(!stream.next());
    CHECK(stream.stats().lines == 0);
}

TEST_CASE("unknown discipline maps to other with label kept") {
    std::istringstream in(
        R"({"doc_id":"d","discipline":"biology","year":2000,"references":[]})");
    auto doc = DocumentStream(in, Severity::abort_on_error).next();
    REQUIRE(doc);
    CHECK(doc->discipline.kind == DisciplineKind::other);
    CHECK(doc->discipline.label == "biology");
}

TEST_CASE("references out of order is a validation error naming the doc") {
    const std::string line =
        R"({"doc_id":"dx","discipline":"cs","year":2000,)"
        R"("references":[{"ref_index":1,"raw_text":"a"},{"ref_index":0,"raw_text":"b"}]})";
    std::istringstream in(line);
    DocumentStream stream(in, Severity::abort_on_error);
    try {
        stream.next();
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("dx") != std::string::npos);
    }
}

TEST_CASE("skip severity counts bad lines instead of throwing") {
    std::string data = std::string(kDocLine) + "\nnot json\n" + kDocLine + "\n";
    // second good line gets a distinct id
    data.replace(data.rfind("\"d1\""), 4, "\"d2\"");
    std::istringstream in(data);
    LoadStats stats;
    auto docs = load_documents(in, Severity::skip_and_count, &stats);
    CHECK(docs.size() == 2);
    CHECK(stats.skipped == 1);
    CHECK(stats.lines == 3);
}

TEST_CASE("duplicate doc ids rejected by eager load") {
    std::string data = std::string(kDocLine) + "\n" + kDocLine + "\n";
    std::istringstream in(data);
    CHECK_THROWS_AS(load_documents(in, Severity::abort_on_error), ValidationError);
}

TEST_CASE("context ref_index must point at a real reference") {
    std::istringstream in(
        R"({"doc_id":"d","discipline":"cs","year":2000,"references":[],)"
        R"("contexts":[{"sentence_id":0,"sentence_text":"s","ref_index":0}]})");
    DocumentStream stream(in, Severity::abort_on_error);
    CHECK_THROWS_AS(stream.next(), ParseError);
}

TEST_CASE("metadata store basics") {
    std::istringstream in(
        R"({"meta_id":"m1","title":"One","citation_count":0})"
        "\n"
        R"({"meta_id":"m2","title":"Two","alt_titles":["Zwei"],"citation_count":3,"published_version_id":"gone"})"
        "\n");
    LoadStats stats;
    auto store = MetadataStore::load(in, Severity::abort_on_error, &stats);
    CHECK(store.size() == 2);
    CHECK(store.find("m1"));
    CHECK(!store.find("m3"));
    CHECK(store.dangling_published_count() == 1);
    const auto* ids = store.find_title("zwei");
    REQUIRE(ids);
    CHECK(ids->front() == "m2");
}

TEST_CASE("duplicate meta_id is an error even in skip mode") {
    std::istringstream in(
        R"({"meta_id":"m1","title":"One","citation_count":0})"
        "\n"
        R"({"meta_id":"m1","title":"Again","citation_count":0})"
        "\n");
    CHECK_THROWS_AS(MetadataStore::load(in, Severity::skip_and_count), ValidationError);
}

TEST_CASE("negative citation counts rejected") {
    std::istringstream in(R"({"meta_id":"m1","title":"One","citation_count":-2})");
    CHECK_THROWS_AS(MetadataStore::load(in, Severity::abort_on_error), ParseError);
}

TEST_CASE("territory map load") {
    SUBCASE("single row") {
        std::istringstream in("country_code,language_code\nRU,ru\n");
        auto map = TerritoryLanguageMap::load_csv(in);
        REQUIRE(map.language_of("RU"));
        CHECK(*map.language_of("RU") == "ru");
    }
    SUBCASE("duplicate country is an error") {
        std::istringstream in("country_code,language_code\nUS,en\nUS,es\n");
        CHECK_THROWS_AS(TerritoryLanguageMap::load_csv(in), ValidationError);
    }
    SUBCASE("empty file is an empty map") {
        std::istringstream in("");
        CHECK(TerritoryLanguageMap::load_csv(in).entries.empty());
    }
    SUBCASE("non-ISO codes rejected") {
        std::istringstream bad1("country_code,language_code\nUSA,en\n");
        CHECK_THROWS_AS(TerritoryLanguageMap::load_csv(bad1), ValidationError);
        std::istringstream bad2("country_code,language_code\nUS,EN\n");
        CHECK_THROWS_AS(TerritoryLanguageMap::load_csv(bad2), ValidationError);
    }
}

namespace {

// Independent one-pass recount used as the validate_corpus oracle.
ValidationReport brute_force_report(const std::vector<Document>& docs,
                                    const MetadataStore& store,
                                    const TerritoryLanguageMap& map) {
    ValidationReport r;
    r.docs = docs.size();
    for (const auto& d : docs) {
        r.refs += d.references.size();
        r.contexts += d.contexts.size();
        for (const auto& ref : d.references)
            if (ref.cited_meta_id) {
                ++r.refs_with_meta_id;
                if (store.find(*ref.cited_meta_id) == nullptr) ++r.dangling_meta_refs;
            }
    }
    std::set<std::string> missing;
    for (const auto& [id, rec] : store)
        for (const auto& aff : rec.author_affiliation_countries)
            if (!map.entries.count(aff.country)) missing.insert(aff.country);
    r.missing_countries.assign(missing.begin(), missing.end());
    return r;
}

}  // namespace

TEST_CASE("validate_corpus equals a brute-force recount on a random fixture") {
    std::mt19937_64 rng(11);
    std::vector<Document> docs;
    MetadataStore store;
    for (int m = 0; m < 40; ++m) {
        MetadataRecord rec;
        rec.meta_id = "m" + std::to_string(m);
        rec.title = "title " + std::to_string(m);
        if (m % 3 == 0)
            rec.author_affiliation_countries.push_back(
                {0, m % 6 == 0 ? "RU" : "XQ"});  // XQ unmapped
        if (m % 3 == 0) rec.authors.push_back({std::nullopt, "A. Person"});
        store.add(std::move(rec));
    }
    store.finalize();
    for (int d = 0; d < 10; ++d) {
        Document doc;
        doc.doc_id = "d" + std::to_string(d);
        doc.discipline = Discipline::parse("math");
        doc.year = 2000 + d;
        for (int r = 0; r < 10; ++r) {
            ReferenceEntry e;
            e.ref_index = r;
            e.raw_text = "ref text " + std::to_string(r);
            if (rng() % 10 < 4) e.cited_meta_id = "m" + std::to_string(rng() % 50);
            doc.references.push_back(std::move(e));
        }
        for (int c = 0; c < d % 4; ++c)
            doc.contexts.push_back({c, "sentence", static_cast<std::uint32_t>(c % 10)});
        docs.push_back(std::move(doc));
    }
    TerritoryLanguageMap map;
    map.entries["RU"] = "ru";

    const auto got = validate_corpus(docs, store, map);
    const auto want = brute_force_report(docs, store, map);
    CHECK(got == want);
    CHECK(got.docs == 10);
    CHECK(got.refs == 100);
}

TEST_CASE("validate_corpus on empty corpus is all zero") {
    MetadataStore store;
    TerritoryLanguageMap map;
    const auto report = validate_corpus({}, store, map);
    CHECK(report.docs == 0);
    CHECK(report.refs == 0);
    CHECK(report.contexts == 0);
    CHECK(report.refs_with_meta_id == 0);
    CHECK(report.dangling_meta_refs == 0);
    CHECK(report.countries_missing() == 0);
}

TEST_CASE("one dangling meta ref counted") {
    Document doc;
    doc.doc_id = "d";
    doc.discipline = Discipline::parse("cs");
    doc.year = 2001;
    ReferenceEntry e;
    e.ref_index = 0;
    e.raw_text = "x";
    e.cited_meta_id = "absent";
    doc.references.push_back(e);
    std::vector<Document> docs{doc};
    MetadataStore store;
    TerritoryLanguageMap map;
    const auto report = validate_corpus(docs, store, map);
    CHECK(report.refs_with_meta_id == 1);
    CHECK(report.dangling_meta_refs == 1);
}

TEST_CASE("jsonl round trip preserves documents") {
    auto corpus = testsupport::gen_planted(25, 8, 99);
    // add月 months and contexts to exercise optional fields
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
        if (i % 2) corpus.docs[i].month = 1 + static_cast<int>(i % 12);
        if (!corpus.docs[i].references.empty())
            corpus.docs[i].contexts.push_back({0, "Sentence citing [0].", 0});
    }
    std::ostringstream out;
    write_documents_jsonl(corpus.docs, out);
    std::istringstream in(out.str());
    auto reloaded = load_documents(in, Severity::abort_on_error);
    CHECK(reloaded == corpus.docs);
}

TEST_CASE("streaming load equals eager load") {
    auto corpus = testsupport::gen_planted(30, 5, 123);
    std::ostringstream out;
    write_documents_jsonl(corpus.docs, out);

    std::istringstream in1(out.str());
    auto eager = load_documents(in1, Severity::abort_on_error);

    std::istringstream in2(out.str());
    DocumentStream stream(in2, Severity::abort_on_error);
    std::vector<Document> streamed;
    while (auto doc = stream.next()) streamed.push_back(std::move(*doc));

    CHECK(streamed == eager);
}

TEST_CASE("metadata jsonl round trip") {
    MetadataRecord rec;
    rec.meta_id = "m1";
    rec.title = "Title, with commas";
    rec.alt_titles = {"Alt 1", "замена"};
    rec.authors = {{std::string("a1"), "A. Ivanov"}, {std::nullopt, "B. Chen"}};
    rec.author_affiliation_countries = {{0, "RU"}, {1, "CN"}};
    rec.year = 1999;
    rec.citation_count = 12;
    rec.published_version_id = "m2";
    const auto line = metadata_to_jsonl(rec);
    CHECK(parse_metadata_line(line) == rec);
}
