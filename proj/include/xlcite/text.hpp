#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 and text normalization layer shared by the detection,
// identification, and resolution code. Everything here is deterministic
// and locale-independent.
namespace xlcite::text {

// Codepoint-level script bucket. `none` marks codepoints that are not
// letters (digits, punctuation, symbols, whitespace).
enum class Script {
    latin,
    cyrillic,
    greek,
    arabic,
    hebrew,
    han,
    kana,
    hangul,
    other,
    none,
};

// Decodes the codepoint starting at byte offset `i` and advances `i`.
// Invalid sequences yield U+FFFD and advance by one byte.
char32_t decode_next(std::string_view s, std::size_t& i);

std::vector<char32_t> decode(std::string_view s);

void encode_utf8(char32_t cp, std::string& out);

Script letter_script(char32_t cp);

inline bool is_letter(char32_t cp) { return letter_script(cp) != Script::none; }

bool is_digit(char32_t cp);

// Number of letter codepoints in `s` (any script).
std::size_t count_letters(std::string_view s);

// ASCII-only lowercasing; bytes outside A-Z pass through.
std::string lower_ascii(std::string_view s);

// Case folds `cp` and strips Latin diacritics, appending the result to
// `out` as UTF-8. Covers ASCII, Latin-1/Ext-A/Ext-Additional, basic
// Cyrillic and Greek. Ligatures expand (ß -> "ss", Œ -> "oe").
// Codepoints without a folding rule are appended unchanged.
void fold_append(char32_t cp, std::string& out);

std::string fold(std::string_view s);

// Key used for exact title matching: case folded, diacritics stripped,
// every non-letter/non-digit run collapsed to a single space, trimmed.
std::string normalize_title(std::string_view s);

// Reduces an author name to a "surname, first-initial" key, e.g.
// "A. Ivanov", "Ivanov, Aleksei" and "ivanov, a." all map to "ivanov, a".
// Single-token names map to "token," (no initial).
std::string normalize_name(std::string_view s);

}  // namespace xlcite::text
