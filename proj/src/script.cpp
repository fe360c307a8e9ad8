#include "xlcite/script.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "xlcite/text.hpp"

namespace xlcite {

using text::Script;

std::string_view script_class_name(ScriptClass c) {
    switch (c) {
        case ScriptClass::latin: return "latin";
        case ScriptClass::cyrillic: return "cyrillic";
        case ScriptClass::han: return "han";
        case ScriptClass::japanese: return "japanese";
        case ScriptClass::hangul: return "hangul";
        case ScriptClass::greek: return "greek";
        case ScriptClass::arabic: return "arabic";
        case ScriptClass::hebrew: return "hebrew";
        case ScriptClass::mixed: return "mixed";
        case ScriptClass::other: return "other";
        case ScriptClass::empty: return "empty";
    }
    return "?";
}

ScriptClass classify_script(std::string_view tex, double majority_threshold) {
    // Counts per text::Script bucket (excluding `none`).
    std::array<std::uint64_t, 9> counts{};
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i < tex.size()) {
        const char32_t cp = text::decode_next(tex, i);
        const Script s = text::letter_script(cp);
        if (s == Script::none) continue;
        ++counts[static_cast<std::size_t>(s)];
        ++total;
    }
    if (total == 0) return ScriptClass::empty;
    // Kana is definitive for Japanese regardless of the Han share.
    if (counts[static_cast<std::size_t>(Script::kana)] > 0) return ScriptClass::japanese;

    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k)
        if (counts[k] > counts[best]) best = k;
    const double share = static_cast<double>(counts[best]) / static_cast<double>(total);
    if (share < majority_threshold) return ScriptClass::mixed;
    switch (static_cast<Script>(best)) {
        case Script::latin: return ScriptClass::latin;
        case Script::cyrillic: return ScriptClass::cyrillic;
        case Script::greek: return ScriptClass::greek;
        case Script::arabic: return ScriptClass::arabic;
        case Script::hebrew: return ScriptClass::hebrew;
        case Script::han: return ScriptClass::han;
        case Script::hangul: return ScriptClass::hangul;
        case Script::other: return ScriptClass::other;
        default: return ScriptClass::mixed;  // unreachable
    }
}

LanguageGuess identify_title_language(std::string_view title,
                                      const ShortTextIdentifier& plugin,
                                      double majority_threshold) {
    LanguageGuess guess;
    guess.script = classify_script(title, majority_threshold);
    switch (guess.script) {
        case ScriptClass::cyrillic:
            guess.code = "ru";
            guess.script_level = true;
            break;
        case ScriptClass::arabic:
            guess.code = "fa";
            guess.script_level = true;
            break;
        case ScriptClass::japanese: guess.code = "ja"; break;
        case ScriptClass::hangul: guess.code = "ko"; break;
        case ScriptClass::greek: guess.code = "el"; break;
        case ScriptClass::hebrew: guess.code = "he"; break;
        case ScriptClass::han: guess.code = "zh"; break;
        default: break;
    }
    guess.reliable = guess.script != ScriptClass::latin &&
                     guess.script != ScriptClass::mixed &&
                     guess.script != ScriptClass::other &&
                     guess.script != ScriptClass::empty;
    if (plugin && (guess.script == ScriptClass::latin || guess.script_level)) {
        if (auto refined = plugin(title)) {
            guess.code = refined->first;
            guess.script_level = false;
        }
    }
    return guess;
}

namespace {

struct QuoteSpan {
    std::size_t content_begin;
    std::size_t content_end;
};

// Quoted spans in opening order. Straight single quotes only open after
// a boundary and close before one, so apostrophes do not pair.
std::vector<QuoteSpan> quoted_spans(std::string_view s) {
    std::vector<QuoteSpan> spans;
    const auto cps = text::decode(s);
    // Recompute byte offsets per codepoint.
    std::vector<std::size_t> offsets;
    offsets.reserve(cps.size() + 1);
    {
        std::size_t i = 0, k = 0;
        while (i < s.size()) {
            offsets.push_back(i);
            text::decode_next(s, i);
            ++k;
        }
        offsets.push_back(s.size());
    }
    auto boundary_before = [&](std::size_t k) {
        if (k == 0) return true;
        const char32_t p = cps[k - 1];
        return !(text::is_letter(p) || text::is_digit(p));
    };
    auto boundary_after = [&](std::size_t k) {
        if (k + 1 >= cps.size()) return true;
        const char32_t nx = cps[k + 1];
        return !(text::is_letter(nx) || text::is_digit(nx));
    };
    for (std::size_t k = 0; k < cps.size(); ++k) {
        char32_t close1 = 0, close2 = 0;
        bool need_boundaries = false;
        switch (cps[k]) {
            case U'"': close1 = U'"'; break;
            case U'“': close1 = U'”'; break;  // “ ”
            case U'«': close1 = U'»'; break;  // « »
            case U'\'':
                close1 = U'\'';
                need_boundaries = true;
                break;
            case U'‘':  // ‘ ’
                close1 = U'’';
                close2 = U'’';
                need_boundaries = true;
                break;
            default: continue;
        }
        if (need_boundaries && !boundary_before(k)) continue;
        for (std::size_t m = k + 1; m < cps.size(); ++m) {
            if (cps[m] != close1 && (close2 == 0 || cps[m] != close2)) continue;
            if (need_boundaries && !boundary_after(m)) continue;
            spans.push_back({offsets[k + 1], offsets[m]});
            k = m;  // resume after the closing quote
            break;
        }
    }
    return spans;
}

std::string_view trim_ascii(std::string_view s) {
    std::size_t b = 0, e = s.size();
    auto sp = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
    };
    while (b < e && sp(s[b])) ++b;
    while (e > b && sp(s[e - 1])) --e;
    return s.substr(b, e - b);
}

bool looks_like_year(std::string_view seg) {
    seg = trim_ascii(seg);
    if (seg.size() < 4 || seg.size() > 5) return false;
    if (!(seg.substr(0, 2) == "19" || seg.substr(0, 2) == "20")) return false;
    if (!(seg[2] >= '0' && seg[2] <= '9') || !(seg[3] >= '0' && seg[3] <= '9'))
        return false;
    return seg.size() == 4 || (seg[4] >= 'a' && seg[4] <= 'z');
}

bool looks_like_pages(std::string_view seg) {
    const std::string low = text::lower_ascii(std::string(seg));
    // "pp. 12", "p. 345"
    for (std::size_t i = 0; i + 1 < low.size(); ++i) {
        if (low[i] != 'p') continue;
        std::size_t j = i + 1;
        if (j < low.size() && low[j] == 'p') ++j;
        if (j < low.size() && low[j] == '.') ++j;
        while (j < low.size() && low[j] == ' ') ++j;
        if (j < low.size() && low[j] >= '0' && low[j] <= '9') return true;
    }
    // digit range "123-456" (also en/em dash)
    std::size_t i = 0;
    bool digits_before = false;
    while (i < low.size()) {
        std::size_t start = i;
        const char32_t cp = text::decode_next(low, i);
        if (cp >= '0' && cp <= '9') {
            digits_before = true;
            continue;
        }
        if (digits_before && (cp == '-' || cp == 0x2013 || cp == 0x2014)) {
            std::size_t j = i;
            while (j < low.size() && low[j] == ' ') ++j;
            if (j < low.size() && low[j] >= '0' && low[j] <= '9') return true;
        }
        if (cp != ' ') digits_before = false;
        (void)start;
    }
    // "vol. 7"
    if (low.find("vol.") != std::string::npos || low.find("vol ") != std::string::npos) {
        for (char c : low)
            if (c >= '0' && c <= '9') return true;
    }
    return false;
}

bool looks_like_author_list(std::string_view seg) {
    // Whitespace tokens; a segment dominated by initials and connector
    // words is treated as an author list.
    std::size_t tokens = 0, authorish = 0;
    std::size_t b = 0;
    const std::string s(trim_ascii(seg));
    while (b < s.size()) {
        while (b < s.size() && s[b] == ' ') ++b;
        std::size_t e = b;
        while (e < s.size() && s[e] != ' ') ++e;
        if (e == b) break;
        std::string_view tok(s.data() + b, e - b);
        b = e;
        ++tokens;
        const std::string low = text::lower_ascii(std::string(tok));
        if (low == "and" || low == "et" || low == "al" || low == "al.") {
            ++authorish;
            continue;
        }
        // "X." / "X" single-letter initials
        const std::size_t letters = text::count_letters(tok);
        if (letters <= 1 && tok.size() <= 2) ++authorish;
    }
    return tokens > 0 && authorish * 2 >= tokens;
}

}  // namespace

std::optional<std::string> extract_title(const ReferenceEntry& entry) {
    if (entry.title && !entry.title->empty()) return entry.title;
    const std::string_view raw = entry.raw_text;
    if (raw.empty()) return std::nullopt;

    for (const auto& span : quoted_spans(raw)) {
        std::string_view content = raw.substr(span.content_begin,
                                              span.content_end - span.content_begin);
        if (text::count_letters(content) >= 8)
            return std::string(trim_ascii(content));
    }

    // Fall back to period/comma segments.
    std::string_view best;
    std::size_t best_letters = 0;
    std::size_t seg_begin = 0;
    for (std::size_t i = 0; i <= raw.size(); ++i) {
        if (i != raw.size() && raw[i] != '.' && raw[i] != ',') continue;
        std::string_view seg = raw.substr(seg_begin, i - seg_begin);
        seg_begin = i + 1;
        seg = trim_ascii(seg);
        if (seg.empty()) continue;
        const std::size_t letters = text::count_letters(seg);
        if (letters < 8) continue;
        if (looks_like_year(seg) || looks_like_pages(seg) || looks_like_author_list(seg))
            continue;
        if (letters > best_letters) {
            best = seg;
            best_letters = letters;
        }
    }
    if (best_letters == 0) return std::nullopt;
    return std::string(best);
}

UnmarkedReport UnmarkedReport::from_counts(
    const std::map<std::string, std::pair<std::uint64_t, std::uint64_t>>& counts) {
    UnmarkedReport report;
    for (const auto& [lang, mc] : counts)
        report.per_language[lang] = UnmarkedRow{mc.first, mc.second};
    return report;
}

bool UnmarkedReport::all_below(double bound) const {
    for (const auto& [lang, row] : per_language) {
        if (auto r = row.ratio(); r && *r >= bound) return false;
    }
    return true;
}

UnmarkedReport unmarked_rate(const DetectionSet& detections,
                             std::span<const Document> docs,
                             const LanguageRegistry& reg,
                             const ShortTextIdentifier& plugin) {
    (void)reg;
    UnmarkedReport report;
    for (const auto& cit : detections.citations)
        ++report.per_language[cit.language].marked;
    DetectionIndex index(detections);
    for (const auto& doc : docs) {
        for (const auto& entry : doc.references) {
            if (index.contains(doc.doc_id, entry.ref_index)) continue;
            auto title = extract_title(entry);
            if (!title) continue;
            const LanguageGuess guess = identify_title_language(*title, plugin);
            if (!guess.reliable || !guess.code ||
                *guess.code == LanguageRegistry::english_code)
                continue;
            ++report.per_language[*guess.code].unmarked;
        }
    }
    return report;
}

IdentifierEval evaluate_identifier(std::span<const LabeledTitle> labeled,
                                   const ShortTextIdentifier& plugin,
                                   const LanguageRegistry& reg) {
    if (labeled.empty()) throw ValidationError("evaluate_identifier: empty sample");
    std::map<std::string, std::uint64_t> tp, fp, fn, support;
    for (const auto& item : labeled) {
        if (!reg.has_code(item.gold_code))
            throw ValidationError("gold code outside registry: " + item.gold_code);
        ++support[item.gold_code];
        std::optional<std::string> predicted;
        if (plugin) {
            if (auto res = plugin(item.title)) predicted = res->first;
        }
        if (predicted && *predicted == item.gold_code) {
            ++tp[item.gold_code];
        } else {
            ++fn[item.gold_code];
            if (predicted) ++fp[*predicted];
        }
    }
    IdentifierEval eval;
    std::unordered_set<std::string> langs;
    for (const auto& [l, n] : support) langs.insert(l);
    for (const auto& [l, n] : fp) langs.insert(l);
    for (const auto& lang : langs) {
        LanguageEval e;
        const double tpv = static_cast<double>(tp[lang]);
        const double fpv = static_cast<double>(fp[lang]);
        const double fnv = static_cast<double>(fn[lang]);
        e.precision = tpv + fpv > 0 ? tpv / (tpv + fpv) : 0.0;
        e.recall = tpv + fnv > 0 ? tpv / (tpv + fnv) : 0.0;
        e.f1 = e.precision + e.recall > 0
                   ? 2 * e.precision * e.recall / (e.precision + e.recall)
                   : 0.0;
        e.support = support[lang];
        eval.per_language[lang] = e;
    }
    return eval;
}

}  // namespace xlcite
