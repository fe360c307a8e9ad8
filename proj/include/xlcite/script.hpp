#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xlcite/corpus.hpp"
#include "xlcite/marker.hpp"
#include "xlcite/registry.hpp"

// Script-based language identification of cited titles. Non-Latin
// scripts identify a title's language reliably; Latin-script titles do
// not (statistical identifiers confuse them heavily), so Latin guesses
// are always flagged unreliable and a plugin hook exists for callers who
// bring their own short-text identifier.
namespace xlcite {

enum class ScriptClass {
    latin,
    cyrillic,
    han,       // Han without any Kana
    japanese,  // any Kana present (Han+Kana or Kana alone)
    hangul,
    greek,
    arabic,
    hebrew,
    mixed,   // no script reaches the majority threshold
    other,   // majority script outside the named set
    empty,   // no letters at all
};

std::string_view script_class_name(ScriptClass c);

struct LanguageGuess {
    std::optional<std::string> code;
    ScriptClass script = ScriptClass::empty;
    bool reliable = false;      // definitionally false for latin/mixed/other/empty
    bool script_level = false;  // code stands for a script, not one language

    bool operator==(const LanguageGuess&) const = default;
};

// Optional plugin: title -> (ISO 639-1 code, confidence in [0,1]).
using ShortTextIdentifier =
    std::function<std::optional<std::pair<std::string, double>>(std::string_view)>;

// Majority script of the letter codepoints decides; any Kana forces
// japanese; less than `majority_threshold` of the letters in one script
// yields mixed. Digits and punctuation never count.
ScriptClass classify_script(std::string_view tex, double majority_threshold = 0.8);

// Built-in mapping: cyrillic->ru and arabic->fa are script-level stand-ins
// (same-script languages are not separable without an external
// identifier); japanese->ja, hangul->ko, greek->el, hebrew->he, han->zh.
// A plugin may refine Latin and script-level guesses; the reliability
// flag stays tied to the script either way.
LanguageGuess identify_title_language(std::string_view title,
                                      const ShortTextIdentifier& plugin = {},
                                      double majority_threshold = 0.8);

// Deterministic title extraction: the explicit title field if present,
// else the first quoted span with at least 8 letters, else the longest
// period/comma-delimited segment that does not look like an author list,
// a year, or a page range.
std::optional<std::string> extract_title(const ReferenceEntry& entry);

struct UnmarkedRow {
    std::uint64_t marked = 0;
    std::uint64_t unmarked = 0;
    // unmarked/marked; undefined when marked == 0.
    std::optional<double> ratio() const {
        if (marked == 0) return std::nullopt;
        return static_cast<double>(unmarked) / static_cast<double>(marked);
    }
};

struct UnmarkedReport {
    std::map<std::string, UnmarkedRow> per_language;

    static UnmarkedReport from_counts(
        const std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>& counts);
    // True when every language with a defined ratio stays below `bound`.
    bool all_below(double bound) const;
};

// Estimates how many cross-lingual citations carry no marker: references
// outside the detection set whose extracted title identifies reliably as
// a non-English language count as unmarked for that language.
UnmarkedReport unmarked_rate(const DetectionSet& detections,
                             std::span<const Document> docs,
                             const LanguageRegistry& reg,
                             const ShortTextIdentifier& plugin = {});

struct LabeledTitle {
    std::string title;
    std::string gold_code;
};

struct LanguageEval {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::uint64_t support = 0;
};

struct IdentifierEval {
    std::map<std::string, LanguageEval> per_language;
};

// Per-language precision/recall/F1 of `plugin` against gold labels.
// Gold codes outside the registry are an error.
IdentifierEval evaluate_identifier(std::span<const LabeledTitle> labeled,
                                   const ShortTextIdentifier& plugin,
                                   const LanguageRegistry& reg);

}  // namespace xlcite
