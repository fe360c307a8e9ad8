#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "xlcite/corpus.hpp"
#include "xlcite/usage.hpp"

// Citation intent (Background/Method/Result) and sentiment
// (Neutral/Positive/Negative) labeling of the context sets. Real labels
// normally arrive from externally trained classifiers via import_labels;
// the cue-lexicon baseline keeps the pipeline runnable end to end
// without one.
namespace xlcite {

enum class Task { intent, sentiment };

enum class IntentLabel { background, method, result };
enum class SentimentLabel { neutral, positive, negative };

enum class SentimentScheme {
    three_class,
    two_class,  // Negative disallowed
};

std::string_view intent_name(IntentLabel l);
std::string_view sentiment_name(SentimentLabel l);
std::optional<IntentLabel> parse_intent(std::string_view s);
std::optional<SentimentLabel> parse_sentiment(std::string_view s);
std::string_view task_name(Task t);
std::optional<Task> parse_task(std::string_view s);

struct ClassifyError : std::runtime_error {
    ClassifyError(const std::string& msg, std::int64_t sentence)
        : std::runtime_error("sentence " + std::to_string(sentence) + ": " + msg),
          sentence_id(sentence) {}
    std::int64_t sentence_id;
};

// Pure functions of the sentence text.
struct ContextClassifier {
    std::function<IntentLabel(std::string_view)> intent;
    std::function<SentimentLabel(std::string_view)> sentiment;
};

struct CueRule {
    Task task;
    std::string label;
    // "a ... b" cues split on the ellipsis: parts must appear in order.
    std::vector<std::string> parts;
};

// Ordered cue list, first match wins, casefolded substring matching.
// Intent falls back to Background, sentiment to Neutral.
class CueLexicon {
public:
    static CueLexicon builtin();
    // CSV rows "task,label,cue"; optional header skipped.
    static CueLexicon from_csv(std::istream& in);

    void add(Task task, std::string_view label, std::string_view cue);

    IntentLabel classify_intent(std::string_view sentence) const;
    SentimentLabel classify_sentiment(std::string_view sentence) const;
    ContextClassifier classifier() const;

    const std::vector<CueRule>& rules() const { return rules_; }

private:
    std::vector<CueRule> rules_;
};

// Applies the classifier to one in-text citation, wrapping failures with
// the sentence id. Returns the label's canonical string.
std::string classify_context(const InTextCitation& ctx, Task task,
                             const ContextClassifier& classifier);

using LabelKey = std::tuple<std::string, std::int64_t, std::uint32_t>;  // doc, sentence, ref

// Imported labels joinable onto ContextSets by (doc_id, sentence_id,
// ref_index). Unknown labels and duplicate keys are errors; a two-class
// sentiment store rejects Negative at import time.
class LabelStore {
public:
    explicit LabelStore(SentimentScheme scheme = SentimentScheme::three_class)
        : scheme_(scheme) {}

    // CSV with header "doc_id,sentence_id,ref_index,task,label".
    static LabelStore import_csv(std::istream& in,
                                 SentimentScheme scheme = SentimentScheme::three_class);

    void add(Task task, const LabelKey& key, std::string_view label);
    const std::string* find(Task task, const LabelKey& key) const;
    std::size_t size(Task task) const;
    SentimentScheme scheme() const { return scheme_; }

    // Convenience: label every context of the given sets with a classifier.
    static LabelStore from_classifier(const ContextSets& sets,
                                      const ContextClassifier& classifier,
                                      SentimentScheme scheme = SentimentScheme::three_class);

private:
    std::map<LabelKey, std::string> intent_;
    std::map<LabelKey, std::string> sentiment_;
    SentimentScheme scheme_;
};

struct DistributionRow {
    std::string label;
    std::uint64_t count = 0;
    double pct = 0;  // of labeled contexts in the set
};

struct SetDistribution {
    std::string set_name;  // x_ling / mono / mixed
    std::vector<DistributionRow> rows;
    std::uint64_t labeled = 0;
    std::uint64_t excluded = 0;  // contexts without a label for the task
};

struct LabelDistribution {
    Task task = Task::intent;
    std::vector<SetDistribution> sets;
    // discipline -> per-set distributions, present when requested
    std::map<std::string, std::vector<SetDistribution>> per_discipline;
};

LabelDistribution label_distribution(const ContextSets& sets, const LabelStore& labels,
                                     Task task, bool per_discipline = false);

}  // namespace xlcite
