// xlcite: detects explicit "(in <Language>)" markers in scholarly
// reference sections and computes prevalence, usage, and impact
// statistics over the corpus. All outputs are plain CSV/JSONL/SVG files
// under the chosen output directory, byte deterministic for a given
// input and seed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlcite/classify.hpp"
#include "xlcite/corpus.hpp"
#include "xlcite/csv.hpp"
#include "xlcite/impact.hpp"
#include "xlcite/marker.hpp"
#include "xlcite/prevalence.hpp"
#include "xlcite/registry.hpp"
#include "xlcite/script.hpp"
#include "xlcite/svg.hpp"
#include "xlcite/usage.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using namespace xlcite;

namespace {

// Exit codes: 0 success, 1 input error, 2 validation threshold exceeded.
struct ThresholdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string docs_path;
    std::string metadata_path;
    std::string territory_path;
    std::string registry_path;
    std::string detections_path;
    std::string labels_path;
    std::string lexicon_path;
    std::string pairs_path;
    std::string target_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    bool case_insensitive = false;
    bool per_discipline = false;
    std::string validation = "skip";
    std::string scheme = "three_class";
    std::string pair_label = "automated";
    std::vector<std::uint64_t> cite_window;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file: " + path);
    return in;
}

Severity severity_of(const CommonOpts& o) {
    if (o.validation == "abort") return Severity::abort_on_error;
    if (o.validation == "skip") return Severity::skip_and_count;
    throw ValidationError("unknown --validation mode: " + o.validation);
}

void check_threshold(const char* what, const LoadStats& stats) {
    if (stats.lines == 0) return;
    const double share = static_cast<double>(stats.skipped) /
                         static_cast<double>(stats.lines);
    if (share > 0.01)
        throw ThresholdError(std::string(what) + ": skipped " +
                             std::to_string(stats.skipped) + " of " +
                             std::to_string(stats.lines) +
                             " lines (>1%), rejecting corpus");
}

std::vector<Document> load_docs(const CommonOpts& o) {
    auto in = open_input(o.docs_path);
    LoadStats stats;
    auto docs = load_documents(in, severity_of(o), &stats);
    std::cerr << "loaded " << docs.size() << " documents (" << stats.skipped
              << " lines skipped)\n";
    check_threshold("documents", stats);
    return docs;
}

MetadataStore load_store(const CommonOpts& o) {
    auto in = open_input(o.metadata_path);
    LoadStats stats;
    auto store = MetadataStore::load(in, severity_of(o), &stats);
    std::cerr << "loaded " << store.size() << " metadata records ("
              << stats.skipped << " lines skipped, "
              << store.dangling_published_count() << " dangling published links)\n";
    check_threshold("metadata", stats);
    return store;
}

TerritoryLanguageMap load_territory(const CommonOpts& o) {
    auto in = open_input(o.territory_path);
    return TerritoryLanguageMap::load_csv(in);
}

LanguageRegistry load_registry(const CommonOpts& o) {
    if (o.registry_path.empty()) return LanguageRegistry::builtin();
    auto in = open_input(o.registry_path);
    return LanguageRegistry::from_csv(in);
}

DetectOptions detect_options(const CommonOpts& o) {
    DetectOptions d;
    d.case_insensitive_in = o.case_insensitive;
    d.threads = o.threads;
    return d;
}

DetectionSet obtain_detections(const CommonOpts& o, std::span<const Document> docs,
                               const LanguageRegistry& reg) {
    if (!o.detections_path.empty()) {
        auto in = open_input(o.detections_path);
        return read_detections_jsonl(in);
    }
    return detect_corpus(docs, reg, detect_options(o));
}

fs::path ensure_out_dir(const CommonOpts& o) {
    if (o.out_dir.empty()) throw ValidationError("--out is required");
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    return out;
}

// ---------------------------------------------------------------- emitters

void emit_detections(const DetectionSet& set, const fs::path& dir) {
    auto jsonl = open_output(dir / "detections.jsonl");
    write_detections_jsonl(set, jsonl);
    auto tokens = open_output(dir / "tokens.csv");
    write_token_counts_csv(set, tokens);
}

void emit_prevalence(std::span<const Document> docs, const DetectionSet& set,
                     const fs::path& dir) {
    const PrevalenceReport report = prevalence_summary(docs, set);
    const CrossLingualitySummary xl = cross_linguality(docs, set);

    csv::Table summary;
    summary.header = {"kind", "key", "refs", "docs", "value"};
    summary.rows.push_back({"total", "", std::to_string(report.total_refs),
                            std::to_string(report.total_docs), ""});
    summary.rows.push_back({"cross_lingual", "", std::to_string(report.xling_refs),
                            std::to_string(report.xling_docs), ""});
    summary.rows.push_back({"ref_ratio", "", "", "", csv::fmt_general(report.ref_ratio(), 6)});
    summary.rows.push_back({"doc_ratio", "", "", "", csv::fmt_general(report.doc_ratio(), 6)});
    summary.rows.push_back({"xlinguality_mean", "", "", "", csv::fmt_general(xl.mean, 6)});
    summary.rows.push_back({"xlinguality_sd", "", "", "", csv::fmt_general(xl.sd, 6)});
    for (const auto& [discipline, mean] : xl.per_discipline_mean)
        summary.rows.push_back({"xlinguality_mean", discipline, "", "",
                                csv::fmt_general(mean, 6)});
    summary.rows.push_back({"empty_ref_docs", "", "", std::to_string(xl.empty_ref_docs), ""});
    {
        // Languages by reference count (descending), then code.
        std::vector<std::pair<std::string, LangPrevalence>> langs(
            report.per_language.begin(), report.per_language.end());
        std::sort(langs.begin(), langs.end(), [](const auto& a, const auto& b) {
            if (a.second.refs != b.second.refs) return a.second.refs > b.second.refs;
            return a.first < b.first;
        });
        for (const auto& [code, lp] : langs)
            summary.rows.push_back({"language", code, std::to_string(lp.refs),
                                    std::to_string(lp.docs), ""});
    }
    for (const auto& [k, n] : report.docs_by_language_count)
        summary.rows.push_back({"languages_per_doc", std::to_string(k), "",
                                std::to_string(n), ""});
    csv::write_file(summary, dir / "prevalence.csv");

    auto emit_rates = [&](GroupBy group, const char* key_name, const fs::path& path) {
        const auto rates = grouped_doc_rates(docs, set, group);
        csv::Table table;
        table.header = {key_name, "docs", "matching", "rate"};
        for (const auto& [key, rate] : rates)
            table.rows.push_back({key, std::to_string(rate.docs),
                                  std::to_string(rate.matching),
                                  csv::fmt_general(rate.rate(), 6)});
        csv::write_file(table, path);
    };
    emit_rates(GroupBy::year, "year", dir / "rates_by_year.csv");
    emit_rates(GroupBy::discipline, "discipline", dir / "rates_by_discipline.csv");

    {
        // 50 bins of width 0.02 over [0,1]; 1.0 lands in the last bin.
        std::vector<std::uint64_t> bins(50, 0);
        for (const auto& v : xl.values) {
            auto bin = static_cast<std::size_t>(v.value / 0.02);
            if (bin >= bins.size()) bin = bins.size() - 1;
            ++bins[bin];
        }
        csv::Table hist;
        hist.header = {"bin_lo", "bin_hi", "count"};
        for (std::size_t b = 0; b < bins.size(); ++b)
            hist.rows.push_back({csv::fmt_fixed(0.02 * static_cast<double>(b), 2),
                                 csv::fmt_fixed(0.02 * static_cast<double>(b + 1), 2),
                                 std::to_string(bins[b])});
        csv::write_file(hist, dir / "xlinguality_hist.csv");
    }
    {
        csv::Table pairs;
        pairs.header = {"language_a", "language_b", "docs"};
        for (const auto& pc : language_pair_counts(set))
            pairs.rows.push_back({pc.a, pc.b, std::to_string(pc.docs)});
        csv::write_file(pairs, dir / "pairs.csv");
    }
}

void emit_contexts_jsonl(const std::vector<ContextRecord>& records,
                         const std::string& set_name, const fs::path& path) {
    auto out = open_output(path);
    for (const auto& rec : records) {
        nlohmann::ordered_json j;
        j["doc_id"] = rec.doc_id;
        j["sentence_id"] = rec.sentence_id;
        j["sentence_text"] = rec.sentence_text;
        j["ref_index"] = rec.ref_index;
        j["set"] = set_name;
        out << j.dump() << '\n';
    }
}

ContextSets emit_usage(std::span<const Document> docs, const DetectionSet& set,
                       const MetadataStore& store, const TerritoryLanguageMap& territory,
                       std::uint64_t seed, const fs::path& dir) {
    const SelfCitationReport selfcite = self_citation_rates(docs, set, store);
    {
        csv::Table table;
        table.header = {"scope", "support", "excluded", "strict_hits", "loose_hits",
                        "strict_rate", "loose_rate"};
        for (const auto* rates : {&selfcite.cross_lingual, &selfcite.monolingual})
            table.rows.push_back({rates->scope, std::to_string(rates->support),
                                  std::to_string(rates->excluded),
                                  std::to_string(rates->strict_hits),
                                  std::to_string(rates->loose_hits),
                                  csv::fmt_general(rates->strict(), 6),
                                  csv::fmt_general(rates->loose(), 6)});
        csv::write_file(table, dir / "selfcite.csv");
    }

    const GeoMatrix geo = geo_origin_matrix(docs, set, store, territory);
    {
        csv::Table abs_table;
        abs_table.header = {"language"};
        for (const auto& g : geo.origin_groups) abs_table.header.push_back(g);
        csv::Table rel_table;
        rel_table.header = abs_table.header;
        const auto rel = geo.row_normalized();
        for (std::size_t r = 0; r < geo.cited_languages.size(); ++r) {
            std::vector<std::string> arow{geo.cited_languages[r]};
            std::vector<std::string> rrow{geo.cited_languages[r]};
            for (std::size_t c = 0; c < geo.origin_groups.size(); ++c) {
                arow.push_back(std::to_string(geo.cells[r][c]));
                rrow.push_back(csv::fmt_general(rel[r][c], 9));
            }
            abs_table.rows.push_back(std::move(arow));
            rel_table.rows.push_back(std::move(rrow));
        }
        csv::write_file(abs_table, dir / "geo_abs.csv");
        csv::write_file(rel_table, dir / "geo_rel.csv");
        if (!geo.cited_languages.empty()) {
            emit_heatmap_svg(geo, dir / "geo_abs.svg", HeatmapMode::absolute);
            emit_heatmap_svg(geo, dir / "geo_rel.svg", HeatmapMode::relative);
        }
    }

    ContextSets contexts = extract_context_sets(docs, set, seed);
    emit_contexts_jsonl(contexts.x_ling, "x_ling", dir / "contexts_xling.jsonl");
    emit_contexts_jsonl(contexts.mono, "mono", dir / "contexts_mono.jsonl");
    emit_contexts_jsonl(contexts.mixed, "mixed", dir / "contexts_mixed.jsonl");
    std::cerr << "context sets: x_ling " << contexts.x_ling.size() << ", mono "
              << contexts.mono.size() << ", mixed " << contexts.mixed.size()
              << " (pools " << contexts.x_pool_size << "/" << contexts.mono_pool_size
              << ", " << contexts.skipped_no_neighbor << " without neighbor)\n";
    return contexts;
}

void emit_distribution(const LabelDistribution& dist, const fs::path& path) {
    csv::Table table;
    table.header = {"set", "label", "count", "pct"};
    for (const auto& set : dist.sets)
        for (const auto& row : set.rows)
            table.rows.push_back({set.set_name, row.label, std::to_string(row.count),
                                  csv::fmt_fixed(row.pct, 1)});
    csv::write_file(table, path);
}

void emit_distribution_by_discipline(const LabelDistribution& dist, const fs::path& path) {
    csv::Table table;
    table.header = {"discipline", "set", "label", "count", "pct"};
    for (const auto& [discipline, sets] : dist.per_discipline)
        for (const auto& set : sets)
            for (const auto& row : set.rows)
                table.rows.push_back({discipline, set.set_name, row.label,
                                      std::to_string(row.count),
                                      csv::fmt_fixed(row.pct, 1)});
    csv::write_file(table, path);
}

void emit_classify(const ContextSets& contexts, const LabelStore& labels,
                   const CommonOpts& o, const fs::path& dir) {
    const LabelDistribution intent =
        label_distribution(contexts, labels, Task::intent, o.per_discipline);
    emit_distribution(intent, dir / "intent_distribution.csv");
    if (o.per_discipline)
        emit_distribution_by_discipline(intent, dir / "intent_by_discipline.csv");
    const LabelDistribution sentiment =
        label_distribution(contexts, labels, Task::sentiment, o.per_discipline);
    emit_distribution(sentiment, dir / "sentiment_distribution.csv");
    if (o.per_discipline)
        emit_distribution_by_discipline(sentiment, dir / "sentiment_by_discipline.csv");
}

LabelStore obtain_labels(const ContextSets& contexts, const CommonOpts& o) {
    const SentimentScheme scheme = o.scheme == "two_class"
                                       ? SentimentScheme::two_class
                                       : SentimentScheme::three_class;
    if (!o.labels_path.empty()) {
        auto in = open_input(o.labels_path);
        return LabelStore::import_csv(in, scheme);
    }
    CueLexicon lexicon = CueLexicon::builtin();
    if (!o.lexicon_path.empty()) {
        auto in = open_input(o.lexicon_path);
        lexicon = CueLexicon::from_csv(in);
    }
    return LabelStore::from_classifier(contexts, lexicon.classifier(), scheme);
}

void emit_resolution(const ResolutionReport& report, const fs::path& path) {
    csv::Table table;
    table.header = {"language", "attempted", "resolved", "failure_rate"};
    table.rows.push_back({"ALL", std::to_string(report.refs_total),
                          std::to_string(report.refs_resolved),
                          csv::fmt_general(1.0 - report.overall_rate(), 6)});
    for (const auto& [lang, res] : report.per_language)
        table.rows.push_back({lang, std::to_string(res.attempted),
                              std::to_string(res.resolved),
                              csv::fmt_general(res.failure_rate(), 6)});
    csv::write_file(table, path);
}

void append_impact_rows(csv::Table& table, const ImpactComparison& cmp,
                        const std::string& name_a, const std::string& name_b) {
    auto row = [&](const SetImpact& s, const std::string& name) {
        std::string lo = cmp.filter ? std::to_string(cmp.filter->first) : "";
        std::string hi = cmp.filter ? std::to_string(cmp.filter->second) : "";
        table.rows.push_back({name, lo, hi, std::to_string(s.docs_with_records),
                              std::to_string(s.published),
                              csv::fmt_general(s.published_ratio(), 6),
                              std::to_string(s.stat_docs),
                              csv::fmt_general(s.mean_citations, 6),
                              csv::fmt_general(s.sd_citations, 6)});
    };
    row(cmp.a, name_a);
    row(cmp.b, name_b);
}

void emit_impact(std::span<const Document> docs, const DetectionSet& set,
                 const MetadataStore& store, std::uint64_t seed,
                 const std::optional<std::pair<std::uint64_t, std::uint64_t>>& window,
                 const fs::path& dir) {
    // Cross-lingual set vs a stratified random comparison set.
    std::set<std::string> xling_ids;
    for (const auto& cit : set.citations) xling_ids.insert(cit.doc_id);
    const std::set<std::string> random_ids = stratified_random_set(docs, xling_ids, seed);
    const std::vector<std::string> a(xling_ids.begin(), xling_ids.end());
    const std::vector<std::string> b(random_ids.begin(), random_ids.end());

    csv::Table table;
    table.header = {"set", "filter_lo", "filter_hi", "docs_with_records", "published",
                    "published_ratio", "stat_docs", "mean_citations", "sd_citations"};
    append_impact_rows(table, citation_compare(a, b, store), "cross_lingual", "random");
    if (window)
        append_impact_rows(table, citation_compare(a, b, store, window), "cross_lingual",
                           "random");
    csv::write_file(table, dir / "impact.csv");

    emit_resolution(resolution_rates(docs, set, store), dir / "resolution.csv");

    csv::Table sample;
    sample.header = {"doc_id"};
    for (const auto& id : random_ids) sample.rows.push_back({id});
    csv::write_file(sample, dir / "sample.csv");
}

void emit_pairdiff(const std::vector<std::pair<std::string, PairDiffStats>>& rows,
                   const fs::path& path) {
    csv::Table table;
    table.header = {"evaluation", "pairs", "increased", "decreased", "mean", "sd"};
    for (const auto& [label, stats] : rows)
        table.rows.push_back({label, std::to_string(stats.pairs),
                              std::to_string(stats.increased),
                              std::to_string(stats.decreased),
                              csv::fmt_fixed(stats.mean_delta, 2),
                              csv::fmt_fixed(stats.sd_delta, 3)});
    csv::write_file(table, path);
}

void emit_validation(const ValidationReport& report, std::uint64_t dangling_published,
                     const fs::path& path) {
    csv::Table table;
    table.header = {"metric", "value"};
    table.rows.push_back({"docs", std::to_string(report.docs)});
    table.rows.push_back({"refs", std::to_string(report.refs)});
    table.rows.push_back({"contexts", std::to_string(report.contexts)});
    table.rows.push_back({"refs_with_meta_id", std::to_string(report.refs_with_meta_id)});
    table.rows.push_back({"dangling_meta_refs", std::to_string(report.dangling_meta_refs)});
    table.rows.push_back({"countries_missing", std::to_string(report.countries_missing())});
    table.rows.push_back({"dangling_published_links", std::to_string(dangling_published)});
    csv::write_file(table, path);
}

// ---------------------------------------------------------------- commands

int run_detect(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const DetectionSet set = detect_corpus(docs, reg, detect_options(o));
    emit_detections(set, dir);
    std::cerr << "detected " << set.citations.size() << " cross-lingual references in "
              << set.refs_scanned << " entries of " << set.docs_scanned << " documents\n";
    return 0;
}

int run_stats_prevalence(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const DetectionSet set = obtain_detections(o, docs, reg);
    emit_prevalence(docs, set, dir);
    return 0;
}

int run_stats_usage(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const auto store = load_store(o);
    const auto territory = load_territory(o);
    const DetectionSet set = obtain_detections(o, docs, reg);
    emit_usage(docs, set, store, territory, o.seed, dir);
    return 0;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> window_of(const CommonOpts& o) {
    if (o.cite_window.empty()) return std::nullopt;
    if (o.cite_window.size() != 2 || o.cite_window[0] > o.cite_window[1])
        throw ValidationError("--cite-window needs LO HI with LO <= HI");
    return std::make_pair(o.cite_window[0], o.cite_window[1]);
}

int run_stats_impact(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const auto store = load_store(o);
    const DetectionSet set = obtain_detections(o, docs, reg);
    emit_impact(docs, set, store, o.seed, window_of(o), dir);
    return 0;
}

std::set<std::string> read_target_ids(const std::string& path) {
    auto in = open_input(path);
    std::set<std::string> ids;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line == "doc_id") {
            first = false;
            continue;
        }
        first = false;
        if (!line.empty()) ids.insert(line);
    }
    return ids;
}

int run_sample(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto docs = load_docs(o);
    std::set<std::string> target;
    if (!o.target_path.empty()) {
        target = read_target_ids(o.target_path);
    } else {
        const auto reg = load_registry(o);
        const DetectionSet set = obtain_detections(o, docs, reg);
        for (const auto& cit : set.citations) target.insert(cit.doc_id);
    }
    const auto sample = stratified_random_set(docs, target, o.seed);
    csv::Table table;
    table.header = {"doc_id"};
    for (const auto& id : sample) table.rows.push_back({id});
    csv::write_file(table, dir / "sample.csv");
    std::cerr << "sampled " << sample.size() << " documents\n";
    return 0;
}

int run_resolve(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const auto store = load_store(o);
    const DetectionSet set = obtain_detections(o, docs, reg);
    emit_resolution(resolution_rates(docs, set, store), dir / "resolution.csv");
    return 0;
}

int run_diff_pairs(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    auto in = open_input(o.pairs_path);
    const auto pairs = load_pairs_jsonl(in);
    const PairDiffStats stats = pair_diff_stats(pairs, reg, detect_options(o));
    emit_pairdiff({{o.pair_label, stats}}, dir / "pairdiff.csv");
    return 0;
}

int run_classify(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const DetectionSet set = obtain_detections(o, docs, reg);
    const ContextSets contexts = extract_context_sets(docs, set, o.seed);
    emit_contexts_jsonl(contexts.x_ling, "x_ling", dir / "contexts_xling.jsonl");
    emit_contexts_jsonl(contexts.mono, "mono", dir / "contexts_mono.jsonl");
    emit_contexts_jsonl(contexts.mixed, "mixed", dir / "contexts_mixed.jsonl");
    emit_classify(contexts, obtain_labels(contexts, o), o, dir);
    return 0;
}

int run_report(const CommonOpts& o) {
    const auto dir = ensure_out_dir(o);
    const auto reg = load_registry(o);
    const auto docs = load_docs(o);
    const auto store = load_store(o);
    const auto territory = load_territory(o);

    emit_validation(validate_corpus(docs, store, territory),
                    store.dangling_published_count(), dir / "validation.csv");

    const DetectionSet set = detect_corpus(docs, reg, detect_options(o));
    emit_detections(set, dir);
    emit_prevalence(docs, set, dir);
    const ContextSets contexts = emit_usage(docs, set, store, territory, o.seed, dir);
    emit_classify(contexts, obtain_labels(contexts, o), o, dir);
    emit_impact(docs, set, store, o.seed, window_of(o), dir);
    if (!o.pairs_path.empty()) {
        auto in = open_input(o.pairs_path);
        const auto pairs = load_pairs_jsonl(in);
        emit_pairdiff({{o.pair_label, pair_diff_stats(pairs, reg, detect_options(o))}},
                      dir / "pairdiff.csv");
    }
    std::cerr << "report complete: " << set.citations.size()
              << " cross-lingual references\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-lingual citation mining toolkit"};
    app.require_subcommand(1);
    CommonOpts o;
    int rc = 0;

    auto add_common = [&](CLI::App* cmd, bool docs = true) {
        if (docs) cmd->add_option("--docs", o.docs_path, "documents.jsonl")->required();
        cmd->add_option("--registry", o.registry_path,
                        "registry.csv (default: built-in registry)");
        cmd->add_option("--out", o.out_dir, "output directory")->required();
        cmd->add_option("--threads", o.threads, "detection threads (0 = auto)");
        cmd->add_flag("--marker-case-insensitive", o.case_insensitive,
                      "also match markers written as (In ...)");
        cmd->add_option("--validation", o.validation, "abort|skip (default skip)");
    };

    auto* detect = app.add_subcommand("detect", "scan reference entries for markers");
    add_common(detect);
    detect->callback([&] { rc = run_detect(o); });

    auto* stats = app.add_subcommand("stats", "compute statistics");
    stats->require_subcommand(1);

    auto* prevalence = stats->add_subcommand("prevalence", "prevalence statistics");
    add_common(prevalence);
    prevalence->add_option("--detections", o.detections_path, "reuse detections.jsonl");
    prevalence->callback([&] { rc = run_stats_prevalence(o); });

    auto* usage = stats->add_subcommand("usage", "self-citation, geography, contexts");
    add_common(usage);
    usage->add_option("--metadata", o.metadata_path, "metadata.jsonl")->required();
    usage->add_option("--territory", o.territory_path, "territory.csv")->required();
    usage->add_option("--detections", o.detections_path, "reuse detections.jsonl");
    usage->add_option("--seed", o.seed, "sampling seed (default 0)");
    usage->callback([&] { rc = run_stats_usage(o); });

    auto* impact = stats->add_subcommand("impact", "impact statistics");
    add_common(impact);
    impact->add_option("--metadata", o.metadata_path, "metadata.jsonl")->required();
    impact->add_option("--detections", o.detections_path, "reuse detections.jsonl");
    impact->add_option("--seed", o.seed, "sampling seed (default 0)");
    impact->add_option("--cite-window", o.cite_window, "citation count window LO HI")
        ->expected(2);
    impact->callback([&] { rc = run_stats_impact(o); });

    auto* sample = app.add_subcommand("sample", "draw a stratified random document set");
    add_common(sample);
    sample->add_option("--target", o.target_path,
                       "file of target doc ids (default: detected documents)");
    sample->add_option("--detections", o.detections_path, "reuse detections.jsonl");
    sample->add_option("--seed", o.seed, "sampling seed (default 0)");
    sample->callback([&] { rc = run_sample(o); });

    auto* resolve = app.add_subcommand("resolve", "title-based reference resolution rates");
    add_common(resolve);
    resolve->add_option("--metadata", o.metadata_path, "metadata.jsonl")->required();
    resolve->add_option("--detections", o.detections_path, "reuse detections.jsonl");
    resolve->callback([&] { rc = run_resolve(o); });

    auto* diff = app.add_subcommand("diff-pairs", "preprint/published reference diffs");
    add_common(diff, /*docs=*/false);
    diff->add_option("--pairs", o.pairs_path, "pairs.jsonl")->required();
    diff->add_option("--label", o.pair_label, "evaluation label (default automated)");
    diff->callback([&] { rc = run_diff_pairs(o); });

    auto* classify = app.add_subcommand("classify", "label context sets");
    add_common(classify);
    classify->add_option("--detections", o.detections_path, "reuse detections.jsonl");
    classify->add_option("--labels", o.labels_path, "imported labels.csv");
    classify->add_option("--lexicon", o.lexicon_path, "cue lexicon csv");
    classify->add_option("--scheme", o.scheme, "three_class|two_class (sentiment)");
    classify->add_option("--seed", o.seed, "sampling seed (default 0)");
    classify->add_flag("--per-discipline", o.per_discipline, "per-discipline breakdown");
    classify->callback([&] { rc = run_classify(o); });

    auto* report = app.add_subcommand("report", "full pipeline into one directory");
    add_common(report);
    report->add_option("--metadata", o.metadata_path, "metadata.jsonl")->required();
    report->add_option("--territory", o.territory_path, "territory.csv")->required();
    report->add_option("--labels", o.labels_path, "imported labels.csv");
    report->add_option("--lexicon", o.lexicon_path, "cue lexicon csv");
    report->add_option("--scheme", o.scheme, "three_class|two_class (sentiment)");
    report->add_option("--pairs", o.pairs_path, "pairs.jsonl");
    report->add_option("--seed", o.seed, "sampling seed (default 0)");
    report->add_option("--cite-window", o.cite_window, "citation count window LO HI")
        ->expected(2);
    report->add_flag("--per-discipline", o.per_discipline, "per-discipline breakdown");
    report->callback([&] { rc = run_report(o); });

    try {
        app.parse(argc, argv);
        return rc;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 1;
    } catch (const ThresholdError& e) {
        std::cerr << "validation threshold: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
