#include "xlcite/classify.hpp"

#include <algorithm>
#include <istream>

#include "xlcite/csv.hpp"
#include "xlcite/text.hpp"

namespace xlcite {

std::string_view intent_name(IntentLabel l) {
    switch (l) {
        case IntentLabel::background: return "Background";
        case IntentLabel::method: return "Method";
        case IntentLabel::result: return "Result";
    }
    return "?";
}

std::string_view sentiment_name(SentimentLabel l) {
    switch (l) {
        case SentimentLabel::neutral: return "Neutral";
        case SentimentLabel::positive: return "Positive";
        case SentimentLabel::negative: return "Negative";
    }
    return "?";
}

std::optional<IntentLabel> parse_intent(std::string_view s) {
    if (s == "Background") return IntentLabel::background;
    if (s == "Method") return IntentLabel::method;
    if (s == "Result") return IntentLabel::result;
    return std::nullopt;
}

std::optional<SentimentLabel> parse_sentiment(std::string_view s) {
    if (s == "Neutral") return SentimentLabel::neutral;
    if (s == "Positive") return SentimentLabel::positive;
    if (s == "Negative") return SentimentLabel::negative;
    return std::nullopt;
}

std::string_view task_name(Task t) {
    return t == Task::intent ? "intent" : "sentiment";
}

std::optional<Task> parse_task(std::string_view s) {
    if (s == "intent") return Task::intent;
    if (s == "sentiment") return Task::sentiment;
    return std::nullopt;
}

void CueLexicon::add(Task task, std::string_view label, std::string_view cue) {
    if (task == Task::intent && !parse_intent(label))
        throw ValidationError("unknown intent label '" + std::string(label) + "'");
    if (task == Task::sentiment && !parse_sentiment(label))
        throw ValidationError("unknown sentiment label '" + std::string(label) + "'");
    CueRule rule;
    rule.task = task;
    rule.label = std::string(label);
    const std::string folded = text::lower_ascii(cue);
    std::size_t pos = 0;
    const std::string sep = " ... ";
    for (;;) {
        const auto hit = folded.find(sep, pos);
        if (hit == std::string::npos) {
            rule.parts.push_back(folded.substr(pos));
            break;
        }
        rule.parts.push_back(folded.substr(pos, hit - pos));
        pos = hit + sep.size();
    }
    rules_.push_back(std::move(rule));
}

CueLexicon CueLexicon::builtin() {
    CueLexicon lex;
    lex.add(Task::intent, "Result", "outperform");
    lex.add(Task::intent, "Result", "agree with");
    lex.add(Task::intent, "Result", "consistent with");
    lex.add(Task::intent, "Result", "results");
    lex.add(Task::intent, "Result", "accuracy of");
    lex.add(Task::intent, "Method", "use the method");
    lex.add(Task::intent, "Method", "following");
    lex.add(Task::intent, "Method", "adopt");
    lex.add(Task::intent, "Method", "based on the approach");
    lex.add(Task::intent, "Method", "we apply");
    lex.add(Task::sentiment, "Positive", "state of the art");
    lex.add(Task::sentiment, "Positive", "seminal");
    lex.add(Task::sentiment, "Positive", "successfully");
    lex.add(Task::sentiment, "Positive", "elegant");
    lex.add(Task::sentiment, "Negative", "fails");
    lex.add(Task::sentiment, "Negative", "however, ... does not");
    lex.add(Task::sentiment, "Negative", "limitation of");
    return lex;
}

CueLexicon CueLexicon::from_csv(std::istream& in) {
    CueLexicon lex;
    const auto records = csv::read(in);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& row = records[i];
        if (i == 0 && row.size() >= 3 && row[0] == "task" && row[1] == "label") continue;
        if (row.size() != 3) throw ParseError("lexicon row needs task,label,cue", i + 1);
        const auto task = parse_task(row[0]);
        if (!task) throw ParseError("unknown task '" + row[0] + "'", i + 1);
        lex.add(*task, row[1], row[2]);
    }
    return lex;
}

namespace {

bool rule_matches(const CueRule& rule, const std::string& folded_sentence) {
    std::size_t pos = 0;
    for (const auto& part : rule.parts) {
        const auto hit = folded_sentence.find(part, pos);
        if (hit == std::string::npos) return false;
        pos = hit + part.size();
    }
    return true;
}

}  // namespace

IntentLabel CueLexicon::classify_intent(std::string_view sentence) const {
    const std::string folded = text::lower_ascii(sentence);
    for (const auto& rule : rules_) {
        if (rule.task != Task::intent) continue;
        if (rule_matches(rule, folded)) return *parse_intent(rule.label);
    }
    return IntentLabel::background;
}

SentimentLabel CueLexicon::classify_sentiment(std::string_view sentence) const {
    const std::string folded = text::lower_ascii(sentence);
    for (const auto& rule : rules_) {
        if (rule.task != Task::sentiment) continue;
        if (rule_matches(rule, folded)) return *parse_sentiment(rule.label);
    }
    return SentimentLabel::neutral;
}

ContextClassifier CueLexicon::classifier() const {
    // The lexicon outlives the classifier in every call path; copy it to
    // keep the closures self-contained anyway.
    CueLexicon copy = *this;
    ContextClassifier c;
    c.intent = [copy](std::string_view s) { return copy.classify_intent(s); };
    c.sentiment = [copy](std::string_view s) { return copy.classify_sentiment(s); };
    return c;
}

std::string classify_context(const InTextCitation& ctx, Task task,
                             const ContextClassifier& classifier) {
    if (ctx.sentence_text.empty())
        throw ClassifyError("empty sentence text", ctx.sentence_id);
    try {
        if (task == Task::intent) {
            if (!classifier.intent)
                throw std::runtime_error("no intent classifier configured");
            return std::string(intent_name(classifier.intent(ctx.sentence_text)));
        }
        if (!classifier.sentiment)
            throw std::runtime_error("no sentiment classifier configured");
        return std::string(sentiment_name(classifier.sentiment(ctx.sentence_text)));
    } catch (const ClassifyError&) {
        throw;
    } catch (const std::exception& e) {
        throw ClassifyError(e.what(), ctx.sentence_id);
    }
}

void LabelStore::add(Task task, const LabelKey& key, std::string_view label) {
    if (task == Task::intent) {
        if (!parse_intent(label))
            throw ValidationError("unknown intent label '" + std::string(label) + "'");
        if (!intent_.emplace(key, std::string(label)).second)
            throw ValidationError("duplicate intent label for doc " + std::get<0>(key));
    } else {
        const auto parsed = parse_sentiment(label);
        if (!parsed)
            throw ValidationError("unknown sentiment label '" + std::string(label) + "'");
        if (scheme_ == SentimentScheme::two_class && *parsed == SentimentLabel::negative)
            throw ValidationError("Negative label rejected by two-class scheme");
        if (!sentiment_.emplace(key, std::string(label)).second)
            throw ValidationError("duplicate sentiment label for doc " + std::get<0>(key));
    }
}

const std::string* LabelStore::find(Task task, const LabelKey& key) const {
    const auto& store = task == Task::intent ? intent_ : sentiment_;
    auto it = store.find(key);
    return it == store.end() ? nullptr : &it->second;
}

std::size_t LabelStore::size(Task task) const {
    return task == Task::intent ? intent_.size() : sentiment_.size();
}

LabelStore LabelStore::import_csv(std::istream& in, SentimentScheme scheme) {
    LabelStore store(scheme);
    const auto records = csv::read(in);
    if (records.empty()) return store;
    const auto& header = records[0];
    const std::vector<std::string> expected = {"doc_id", "sentence_id", "ref_index",
                                               "task", "label"};
    if (header != expected)
        throw ParseError("labels CSV must start with header doc_id,sentence_id,ref_index,task,label");
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() != 5) throw ParseError("labels row needs 5 columns", i + 1);
        const auto task = parse_task(row[3]);
        if (!task) throw ParseError("unknown task '" + row[3] + "'", i + 1);
        LabelKey key{row[0], std::stoll(row[1]),
                     static_cast<std::uint32_t>(std::stoul(row[2]))};
        store.add(*task, key, row[4]);
    }
    return store;
}

LabelStore LabelStore::from_classifier(const ContextSets& sets,
                                       const ContextClassifier& classifier,
                                       SentimentScheme scheme) {
    LabelStore store(scheme);
    auto label_all = [&](const std::vector<ContextRecord>& records) {
        for (const auto& rec : records) {
            const LabelKey key{rec.doc_id, rec.sentence_id, rec.ref_index};
            InTextCitation ctx{rec.sentence_id, rec.sentence_text, rec.ref_index};
            if (classifier.intent)
                store.add(Task::intent, key, classify_context(ctx, Task::intent, classifier));
            if (classifier.sentiment)
                store.add(Task::sentiment, key,
                          classify_context(ctx, Task::sentiment, classifier));
        }
    };
    label_all(sets.x_ling);
    label_all(sets.mono);
    label_all(sets.mixed);
    return store;
}

namespace {

std::vector<std::string> labels_for(Task task, SentimentScheme scheme) {
    if (task == Task::intent) return {"Background", "Method", "Result"};
    if (scheme == SentimentScheme::two_class) return {"Neutral", "Positive"};
    return {"Neutral", "Positive", "Negative"};
}

SetDistribution distribution_of(const std::string& name,
                                const std::vector<const ContextRecord*>& records,
                                const LabelStore& labels, Task task) {
    SetDistribution dist;
    dist.set_name = name;
    std::map<std::string, std::uint64_t> counts;
    for (const auto* rec : records) {
        const LabelKey key{rec->doc_id, rec->sentence_id, rec->ref_index};
        if (const std::string* label = labels.find(task, key)) {
            ++counts[*label];
            ++dist.labeled;
        } else {
            ++dist.excluded;
        }
    }
    for (const auto& label : labels_for(task, labels.scheme())) {
        DistributionRow row;
        row.label = label;
        row.count = counts.count(label) ? counts.at(label) : 0;
        row.pct = dist.labeled == 0 ? 0.0
                                    : 100.0 * static_cast<double>(row.count) /
                                          static_cast<double>(dist.labeled);
        dist.rows.push_back(std::move(row));
    }
    return dist;
}

}  // namespace

LabelDistribution label_distribution(const ContextSets& sets, const LabelStore& labels,
                                     Task task, bool per_discipline) {
    LabelDistribution dist;
    dist.task = task;
    auto ptrs = [](const std::vector<ContextRecord>& v) {
        std::vector<const ContextRecord*> out;
        out.reserve(v.size());
        for (const auto& r : v) out.push_back(&r);
        return out;
    };
    dist.sets.push_back(distribution_of("x_ling", ptrs(sets.x_ling), labels, task));
    dist.sets.push_back(distribution_of("mono", ptrs(sets.mono), labels, task));
    dist.sets.push_back(distribution_of("mixed", ptrs(sets.mixed), labels, task));

    if (per_discipline) {
        std::map<std::string, std::map<std::string, std::vector<const ContextRecord*>>> split;
        auto add = [&](const std::vector<ContextRecord>& records, const std::string& set) {
            for (const auto& rec : records)
                split[rec.discipline.label][set].push_back(&rec);
        };
        add(sets.x_ling, "x_ling");
        add(sets.mono, "mono");
        add(sets.mixed, "mixed");
        for (const auto& [discipline, by_set] : split) {
            auto& out = dist.per_discipline[discipline];
            for (const auto& set_name : {"x_ling", "mono", "mixed"}) {
                auto it = by_set.find(set_name);
                out.push_back(distribution_of(
                    set_name, it == by_set.end() ? std::vector<const ContextRecord*>{} : it->second,
                    labels, task));
            }
        }
    }
    return dist;
}

}  // namespace xlcite
