#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cds/app/engine.hpp"
#include "cds/classifier/labels.hpp"
#include "cds/core/rng.hpp"
#include "cds/eval/recall.hpp"
#include "cds/models/table_model.hpp"

namespace cds::fixtures {

inline constexpr std::size_t kFactCount = 10;
inline constexpr std::size_t kShotEntities = 5;
// Position of the fact token in every fixture response.
inline constexpr std::size_t kFactPosition = 3;

const std::vector<std::string>& facts();
const std::vector<std::string>& fillers();
std::string fact_question(std::size_t entity);

// Ten entities with one fact each. Responses look like
//   The answer is <Fact> , <filler> ... <filler> . </s>
// The aligned model puts 0.3 on the correct fact, 0.4 on one wrong fact and
// 0.1 on three others; the pretrained model is one-hot on the correct fact.
// The aligned model never emits STOP before the final period.
struct FactFixture {
  std::shared_ptr<TableModel> aligned;
  std::shared_ptr<TableModel> pretrained;
  std::vector<QARecord> records;
  EngineSettings settings;
};

FactFixture make_fact_fixture();

// Yes exactly when the tentative token sits at the fact position.
std::shared_ptr<CriticalTokenClassifier> oracle_router();

// Random bigram tables over a shared 8-token vocabulary ("</s>" is STOP).
// Without `aligned_stop_mass` the aligned model never puts mass on STOP.
struct RandomPair {
  std::shared_ptr<TableModel> aligned;
  std::shared_ptr<TableModel> pretrained;
  PrefixTriple prefixes;
};

RandomPair make_random_pair(std::uint64_t seed, bool aligned_stop_mass);

// Answers where exactly the tokens containing a digit are critical.
std::vector<CriticalTokenInstance> digit_separable_instances(std::size_t count, std::uint64_t seed);

// "YNY" -> {Yes, No, Yes}.
std::vector<DecisionLabel> labels_from(std::string_view pattern);

// Character-offset oracle: a token is Yes iff one of its characters lies in
// some occurrence of some span.
std::vector<DecisionLabel> offset_oracle(const std::string& answer, const std::vector<std::string>& spans);

struct SpanCase {
  std::string answer;
  std::vector<std::string> spans;
};

// Random answer over a small word list with irregular spacing, and up to
// three spans cut from it.
SpanCase random_span_case(Rng& rng);

// Ten (gold, predicted) label rows of ten tokens each. Hand count over all
// 100 tokens: TP 8, FN 5, FP 4, TN 83. Switch positions: 10, 6 predicted Yes.
const std::vector<std::pair<std::string, std::string>>& pinned_metric_rows();

// Writes a runnable demo: models, classifiers, QA set, configs, documents
// and a scripted generator under `dir`.
void write_demo_files(const std::filesystem::path& dir);

}  // namespace cds::fixtures
