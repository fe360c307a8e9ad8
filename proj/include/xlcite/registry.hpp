#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace xlcite {

enum class TokenKind {
    language,      // canonical name or registered misspelling
    non_language,  // stoplisted bibliographic token ("press", ...)
    unknown,       // not in the registry; safe default
};

struct NormalizationResult {
    TokenKind kind = TokenKind::unknown;
    std::string code;  // ISO 639-1, set only for kind == language

    bool operator==(const NormalizationResult&) const = default;
};

struct CoverageReport {
    std::uint64_t languages_covered = 0;
    std::uint64_t languages_total = 0;
    std::uint64_t covered_journals = 0;
    std::uint64_t total_journals = 0;
    std::vector<std::string> uncovered_languages;  // sorted

    double journal_share() const {
        return total_journals == 0
                   ? 0.0
                   : static_cast<double>(covered_journals) / static_cast<double>(total_journals);
    }
};

// Canonical language registry. Maps lowercased English language names
// (and registered misspellings) to ISO 639-1 codes and rejects known
// non-language tokens. Editable: ships as a CSV of kind,token,code rows
// so curation does not require code changes.
class LanguageRegistry {
public:
    static constexpr std::string_view english_code = "en";

    // Seed registry: the 44 language codes observed in scholarly marker
    // usage, a handful of known misspellings, and a stoplist of common
    // bibliographic "(in ...)" phrases.
    static LanguageRegistry builtin();

    // CSV rows "canonical,russian,ru" / "misspelling,russain,ru" /
    // "stop,press,". An optional "kind,token,code" header is skipped.
    static LanguageRegistry from_csv(std::istream& in);

    void add_canonical(std::string_view token, std::string_view code);
    void add_misspelling(std::string_view token, std::string_view code);
    void add_stop(std::string_view token);

    // Case-insensitive, deterministic. Language beats Unknown only via
    // an exact registry hit; anything unlisted stays Unknown.
    NormalizationResult normalize(std::string_view raw_token) const;

    bool has_code(std::string_view code) const;
    const std::set<std::string>& codes() const { return codes_; }

    // Canonical tokens mapping to `code` (inverse lookup).
    std::vector<std::string> tokens_for(std::string_view code) const;

    // Share of journals published in covered languages.
    CoverageReport coverage(const std::map<std::string, std::uint64_t>& journal_counts) const;

private:
    std::unordered_map<std::string, std::string> canonical_;
    std::unordered_map<std::string, std::string> misspellings_;
    std::unordered_set<std::string> stoplist_;
    std::set<std::string> codes_;

    void check_token_free(const std::string& token, bool adding_stop) const;
};

}  // namespace xlcite
