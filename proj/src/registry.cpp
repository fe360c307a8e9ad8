#include "xlcite/registry.hpp"

#include <algorithm>
#include <istream>

#include "xlcite/corpus.hpp"
#include "xlcite/csv.hpp"
#include "xlcite/text.hpp"

namespace xlcite {

namespace {

bool iso_code_shaped(std::string_view code) {
    if (code.size() != 2) return false;
    for (char c : code)
        if (c < 'a' || c > 'z') return false;
    return true;
}

struct Seed {
    const char* token;
    const char* code;
};

constexpr Seed kCanonical[] = {
    {"belarusian", "be"}, {"bulgarian", "bg"},  {"catalan", "ca"},
    {"czech", "cs"},      {"danish", "da"},     {"german", "de"},
    {"greek", "el"},      {"english", "en"},    {"esperanto", "eo"},
    {"spanish", "es"},    {"estonian", "et"},   {"persian", "fa"},
    {"finnish", "fi"},    {"french", "fr"},     {"hebrew", "he"},
    {"hindi", "hi"},      {"croatian", "hr"},   {"hungarian", "hu"},
    {"armenian", "hy"},   {"indonesian", "id"}, {"icelandic", "is"},
    {"italian", "it"},    {"japanese", "ja"},   {"georgian", "ka"},
    {"korean", "ko"},     {"latin", "la"},      {"latvian", "lv"},
    {"macedonian", "mk"}, {"marathi", "mr"},    {"dutch", "nl"},
    {"norwegian", "no"},  {"polish", "pl"},     {"portuguese", "pt"},
    {"romanian", "ro"},   {"russian", "ru"},    {"sanskrit", "sa"},
    {"slovak", "sk"},     {"slovenian", "sl"},  {"serbian", "sr"},
    {"swedish", "sv"},    {"turkish", "tr"},    {"ukrainian", "uk"},
    {"vietnamese", "vi"}, {"chinese", "zh"},
    // alternate names
    {"farsi", "fa"},      {"slovene", "sl"},
};

constexpr Seed kMisspellings[] = {
    {"japanease", "ja"}, {"russain", "ru"},  {"portugese", "pt"},
    {"ukranian", "uk"},  {"chineese", "zh"}, {"rumanian", "ro"},
};

constexpr const char* kStoplist[] = {
    "press", "preparation", "print", "submission", "review",
    "progress", "revision", "proceedings", "preprint",
};

}  // namespace

void LanguageRegistry::check_token_free(const std::string& token, bool adding_stop) const {
    if (adding_stop) {
        if (canonical_.contains(token) || misspellings_.contains(token))
            throw ValidationError("registry token '" + token +
                                  "' is both a language name and stoplisted");
    } else if (stoplist_.contains(token)) {
        throw ValidationError("registry token '" + token +
                              "' is both a language name and stoplisted");
    }
}

void LanguageRegistry::add_canonical(std::string_view token, std::string_view code) {
    if (!iso_code_shaped(code))
        throw ValidationError("not an ISO 639-1 code: " + std::string(code));
    const std::string key = text::lower_ascii(token);
    if (key.empty()) throw ValidationError("empty registry token");
    check_token_free(key, false);
    canonical_[key] = std::string(code);
    codes_.insert(std::string(code));
}

void LanguageRegistry::add_misspelling(std::string_view token, std::string_view code) {
    if (!iso_code_shaped(code))
        throw ValidationError("not an ISO 639-1 code: " + std::string(code));
    const std::string key = text::lower_ascii(token);
    if (key.empty()) throw ValidationError("empty registry token");
    check_token_free(key, false);
    misspellings_[key] = std::string(code);
    codes_.insert(std::string(code));
}

void LanguageRegistry::add_stop(std::string_view token) {
    const std::string key = text::lower_ascii(token);
    if (key.empty()) throw ValidationError("empty registry token");
    check_token_free(key, true);
    stoplist_.insert(key);
}

LanguageRegistry LanguageRegistry::builtin() {
    LanguageRegistry reg;
    for (const auto& s : kCanonical) reg.add_canonical(s.token, s.code);
    for (const auto& s : kMisspellings) reg.add_misspelling(s.token, s.code);
    for (const char* s : kStoplist) reg.add_stop(s);
    return reg;
}

LanguageRegistry LanguageRegistry::from_csv(std::istream& in) {
    LanguageRegistry reg;
    const auto records = csv::read(in);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& row = records[i];
        if (i == 0 && row.size() >= 2 && row[0] == "kind" && row[1] == "token")
            continue;  // header
        if (row.size() < 2) throw ParseError("registry row needs kind,token[,code]", i + 1);
        const std::string& kind = row[0];
        const std::string& token = row[1];
        const std::string code = row.size() > 2 ? row[2] : "";
        if (kind == "canonical") reg.add_canonical(token, code);
        else if (kind == "misspelling") reg.add_misspelling(token, code);
        else if (kind == "stop") reg.add_stop(token);
        else throw ParseError("unknown registry row kind '" + kind + "'", i + 1);
    }
    return reg;
}

NormalizationResult LanguageRegistry::normalize(std::string_view raw_token) const {
    const std::string key = text::lower_ascii(raw_token);
    if (stoplist_.contains(key)) return {TokenKind::non_language, ""};
    if (auto it = canonical_.find(key); it != canonical_.end())
        return {TokenKind::language, it->second};
    if (auto it = misspellings_.find(key); it != misspellings_.end())
        return {TokenKind::language, it->second};
    return {TokenKind::unknown, ""};
}

bool LanguageRegistry::has_code(std::string_view code) const {
    return codes_.contains(std::string(code));
}

std::vector<std::string> LanguageRegistry::tokens_for(std::string_view code) const {
    std::vector<std::string> tokens;
    for (const auto& [token, c] : canonical_)
        if (c == code) tokens.push_back(token);
    std::sort(tokens.begin(), tokens.end());
    return tokens;
}

CoverageReport LanguageRegistry::coverage(
    const std::map<std::string, std::uint64_t>& journal_counts) const {
    if (journal_counts.empty())
        throw ValidationError("coverage: empty journal count table");
    CoverageReport report;
    report.languages_total = journal_counts.size();
    for (const auto& [code, count] : journal_counts) {
        report.total_journals += count;
        if (codes_.contains(code)) {
            ++report.languages_covered;
            report.covered_journals += count;
        } else {
            report.uncovered_languages.push_back(code);
        }
    }
    return report;
}

}  // namespace xlcite
