#include "fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cds/classifier/classifier_io.hpp"
#include "cds/classifier/dataset.hpp"
#include "cds/classifier/heuristic.hpp"
#include "cds/core/rng.hpp"
#include "cds/models/model_io.hpp"

namespace cds::fixtures {

namespace {

using nlohmann::json;

const std::vector<std::string> kPromptWords = {"Question:", "Which", "city", "belongs", "to", "Answer:",
                                               "The",       "answer", "is",  ",",       "."};

std::string entity(std::size_t k) { return "entity" + std::to_string(k) + "?"; }

Vocabulary fact_vocabulary() {
  std::vector<std::string> tokens = {"</s>"};
  for (const auto& w : kPromptWords) tokens.push_back(w);
  for (std::size_t k = 0; k < kFactCount + kShotEntities; ++k) tokens.push_back(entity(k));
  for (const auto& f : facts()) tokens.push_back(f);
  for (const auto& f : fillers()) tokens.push_back(f);
  return Vocabulary::from_strings(tokens, {"</s>"});
}

TokenDistribution one_hot(const Vocabulary& v, const std::string& token) {
  return TokenDistribution::one_hot(v.size(), v.id(token));
}

TokenDistribution weighted(const Vocabulary& v, const std::vector<std::pair<std::string, double>>& mass) {
  std::vector<double> p(v.size(), 0.0);
  for (const auto& [token, w] : mass) p[v.id(token)] += w;
  return TokenDistribution::normalized(std::move(p));
}

TokenSequence ids(const Vocabulary& v, const std::vector<std::string>& tokens) {
  TokenSequence out;
  for (const auto& t : tokens) out.push_back(v.id(t));
  return out;
}

// Entries shared by both models: the fixed answer frame and the period.
void add_frame(TableModel& m, const Vocabulary& v) {
  m.set(ids(v, {"Answer:"}), one_hot(v, "The"));
  m.set(ids(v, {"Answer:", "The"}), one_hot(v, "answer"));
  m.set(ids(v, {"The", "answer"}), one_hot(v, "is"));
  m.set(ids(v, {"."}), one_hot(v, "</s>"));
  for (const auto& f : facts()) m.set(ids(v, {f}), one_hot(v, ","));
}

std::size_t fact_of(std::size_t entity_index) { return entity_index % kFactCount; }

}  // namespace

const std::vector<std::string>& facts() {
  static const std::vector<std::string> f = {"Paris", "Lima",  "Oslo",  "Cairo", "Quito",
                                             "Hanoi", "Dakar", "Seoul", "Accra", "Sofia"};
  return f;
}

const std::vector<std::string>& fillers() {
  static const std::vector<std::string> f = {"quite",   "really", "indeed", "surely",
                                             "clearly", "simply", "truly",  "plainly"};
  return f;
}

std::string fact_question(std::size_t k) { return "Which city belongs to " + entity(k); }

FactFixture make_fact_fixture() {
  const Vocabulary v = fact_vocabulary();
  auto aligned = std::make_shared<TableModel>(v, one_hot(v, "."));
  auto pretrained = std::make_shared<TableModel>(v, one_hot(v, "."));
  add_frame(*aligned, v);
  add_frame(*pretrained, v);

  const auto& f = facts();
  for (std::size_t k = 0; k < kFactCount + kShotEntities; ++k) {
    const TokenSequence key = ids(v, {entity(k), "Answer:", "The", "answer", "is"});
    const std::size_t c = fact_of(k);
    aligned->set(key, weighted(v, {{f[c], 0.3},
                                   {f[(c + 1) % kFactCount], 0.4},
                                   {f[(c + 2) % kFactCount], 0.1},
                                   {f[(c + 3) % kFactCount], 0.1},
                                   {f[(c + 4) % kFactCount], 0.1}}));
    pretrained->set(key, one_hot(v, f[c]));
  }

  std::vector<std::pair<std::string, double>> start;
  for (const auto& w : fillers()) start.emplace_back(w, 1.0);
  aligned->set(ids(v, {","}), weighted(v, start));
  pretrained->set(ids(v, {","}), one_hot(v, fillers().front()));
  for (const auto& w : fillers()) {
    std::vector<std::pair<std::string, double>> next = {{".", 0.1}};
    for (const auto& u : fillers()) {
      if (u != w) next.emplace_back(u, 0.9 / static_cast<double>(fillers().size() - 1));
    }
    aligned->set(ids(v, {w}), weighted(v, next));
    pretrained->set(ids(v, {w}), weighted(v, {{".", 0.6}, {fillers()[1], 0.4}}));
  }

  FactFixture fx;
  fx.aligned = aligned;
  fx.pretrained = pretrained;
  for (std::size_t k = 0; k < kFactCount; ++k) fx.records.push_back({fact_question(k), {f[fact_of(k)]}});
  for (std::size_t k = kFactCount; k < kFactCount + kShotEntities; ++k) {
    fx.settings.fewshot.shots.push_back({fact_question(k), "The answer is " + f[fact_of(k)] + " ."});
  }
  return fx;
}

std::shared_ptr<CriticalTokenClassifier> oracle_router() {
  return std::make_shared<FunctionClassifier>([](std::string_view, std::span<const std::string> partial) {
    return partial.size() == kFactPosition + 1 ? DecisionLabel::Yes : DecisionLabel::No;
  });
}

RandomPair make_random_pair(std::uint64_t seed, bool aligned_stop_mass) {
  const Vocabulary v = Vocabulary::from_strings({"</s>", "t1", "t2", "t3", "t4", "t5", "t6", "t7"}, {"</s>"});
  Rng rng(seed);
  auto random_dist = [&](bool allow_stop) {
    std::vector<double> p(v.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double u = rng.uniform();
      // Sparse rows make ties and zero-mass tokens show up.
      p[i] = u < 0.2 ? 0.0 : u;
    }
    p[0] = allow_stop ? p[0] * 0.3 : 0.0;
    p[1] += 1e-3;
    return TokenDistribution::normalized(std::move(p));
  };
  auto aligned = std::make_shared<TableModel>(v, random_dist(aligned_stop_mass));
  auto pretrained = std::make_shared<TableModel>(v, random_dist(true));
  for (TokenId t = 0; t < v.size(); ++t) {
    aligned->set({t}, random_dist(aligned_stop_mass));
    pretrained->set({t}, random_dist(true));
  }
  RandomPair pair{aligned, pretrained, {}};
  for (int i = 0; i < 3; ++i) {
    const TokenId t = static_cast<TokenId>(1 + rng.index(v.size() - 1));
    pair.prefixes.aligned.push_back(t);
  }
  pair.prefixes.pretrained = pair.prefixes.aligned;
  pair.prefixes.pretrained.push_back(static_cast<TokenId>(1 + rng.index(v.size() - 1)));
  pair.prefixes.question = "q" + std::to_string(seed);
  return pair;
}

std::vector<CriticalTokenInstance> digit_separable_instances(std::size_t count, std::uint64_t seed) {
  static const std::vector<std::string> words = {"the",  "war",   "ended", "in",   "a",     "treaty", "signed",
                                                 "by",   "both",  "sides", "after", "years", "of",    "talks",
                                                 "was", "built", "around", "and",  "its",   "height"};
  Rng rng(seed);
  std::vector<CriticalTokenInstance> out;
  for (std::size_t n = 0; n < count; ++n) {
    CriticalTokenInstance inst;
    inst.question = "question " + std::to_string(n);
    const std::size_t len = 6 + rng.index(8);
    for (std::size_t i = 0; i < len; ++i) {
      if (rng.uniform() < 0.2) {
        inst.tokens.push_back(std::to_string(1000 + rng.index(1100)));
        inst.labels.push_back(DecisionLabel::Yes);
      } else {
        inst.tokens.push_back(words[rng.index(words.size())]);
        inst.labels.push_back(DecisionLabel::No);
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

void write_demo_files(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const FactFixture fx = make_fact_fixture();
  save_json(dir / "aligned.json", to_json(*fx.aligned));
  save_json(dir / "pretrained.json", to_json(*fx.pretrained));
  save_json(dir / "heuristic.json", to_json(HeuristicClassifier{}));
  save_json(dir / "always_no.json", json{{"format", kClassifierFormat}, {"kind", "constant"}, {"mode", "CT"},
                                         {"label", "No"}});
  {
    std::ofstream qa(dir / "qa.jsonl");
    for (const auto& r : fx.records) qa << json{{"question", r.question}, {"answers", r.gold_aliases}}.dump() << '\n';
  }
  std::ofstream(dir / "empty.jsonl");

  json shots = json::array();
  for (const auto& s : fx.settings.fewshot.shots) shots.push_back({{"question", s.question}, {"answer", s.answer}});
  const json config = {{"format", "cds-config/1"},
                       {"strategy", "ModelCDS"},
                       {"gamma", "llama2"},
                       {"max_tokens", 64},
                       {"seed", 0},
                       {"shots", 5},
                       {"stop_tokens", {"</s>"}},
                       {"models", {{"aligned", {{"path", "aligned.json"}}}, {"pretrained", {{"path", "pretrained.json"}}}}},
                       {"classifier", {{"path", "heuristic.json"}}},
                       {"prompts", {{"preset", "mistral"}, {"fewshot", {{"shots", shots}}}}},
                       {"eval",
                        {{"dataset", "qa.jsonl"},
                         {"dataset_name", "facts"},
                         {"output_dir", "out"},
                         {"parallel", 2},
                         {"bootstrap_iterations", 200},
                         {"context_charge", 10}}},
                       {"dataset_generation",
                        {{"generator", {{"script", "generator_script.json"}}}, {"questions_per_document", 2}}}};
  std::ofstream(dir / "config.json") << config.dump(2) << '\n';

  json missing = config;
  missing["models"]["aligned"]["path"] = "does_not_exist.json";
  std::ofstream(dir / "config_missing_model.json") << missing.dump(2) << '\n';
  json empty = config;
  empty["eval"]["dataset"] = "empty.jsonl";
  std::ofstream(dir / "config_empty_dataset.json") << empty.dump(2) << '\n';

  // Two documents; the second one's extraction is not JSON.
  const std::vector<std::string> docs = {"Paris is the capital of France and hosted the 1900 Olympics.",
                                         "Lima was founded in 1535 by Francisco Pizarro."};
  {
    std::ofstream d(dir / "documents.jsonl");
    for (const auto& t : docs) d << json{{"text", t}}.dump() << '\n';
  }
  const cds::DatasetPrompts prompts;
  auto fill = [](std::string text, const std::string& key, const std::string& value) {
    const auto pos = text.find(key);
    return pos == std::string::npos ? text : text.replace(pos, key.size(), value);
  };
  json responses = json::object();
  const std::vector<std::vector<std::pair<std::string, std::string>>> qa = {
      {{"Which city hosted the 1900 Olympics?", "Paris hosted the 1900 Summer Olympics."},
       {"What country is Paris the capital of?", "Paris is the capital of France."}},
      {{"When was Lima founded?", "Lima was founded in 1535."},
       {"Who founded Lima?", "Lima was founded by Francisco Pizarro."}}};
  const std::vector<std::vector<std::string>> spans = {{"[\"Paris\", \"1900\"]", "[\"France\"]"},
                                                       {"[\"1535\"]", "not json at all"}};
  for (std::size_t d = 0; d < docs.size(); ++d) {
    responses[fill(prompts.question, "{document}", docs[d])] = "1. " + qa[d][0].first + "\n2. " + qa[d][1].first;
    for (std::size_t i = 0; i < 2; ++i) {
      responses[fill(prompts.answer, "{question}", qa[d][i].first)] = qa[d][i].second;
      responses[fill(fill(prompts.extraction, "{question}", qa[d][i].first), "{answer}", qa[d][i].second)] =
          spans[d][i];
    }
  }
  std::ofstream(dir / "generator_script.json") << json{{"responses", responses}}.dump(2) << '\n';

  std::ofstream train(dir / "classifier_train.jsonl");
  write_instances_jsonl(train, digit_separable_instances(200, 1));
  std::ofstream test(dir / "classifier_test.jsonl");
  write_instances_jsonl(test, digit_separable_instances(100, 2));
}

std::vector<DecisionLabel> labels_from(std::string_view pattern) {
  std::vector<DecisionLabel> out;
  for (char c : pattern) out.push_back(c == 'Y' ? DecisionLabel::Yes : DecisionLabel::No);
  return out;
}

std::vector<DecisionLabel> offset_oracle(const std::string& answer, const std::vector<std::string>& spans) {
  std::vector<bool> covered(answer.size(), false);
  for (const auto& s : spans) {
    if (s.empty()) continue;
    for (std::size_t start = 0; start + s.size() <= answer.size(); ++start) {
      if (answer.compare(start, s.size(), s) == 0) {
        for (std::size_t k = start; k < start + s.size(); ++k) covered[k] = true;
      }
    }
  }
  std::vector<DecisionLabel> out;
  std::size_t i = 0;
  while (i < answer.size()) {
    while (i < answer.size() && std::isspace(static_cast<unsigned char>(answer[i]))) ++i;
    if (i >= answer.size()) break;
    bool yes = false;
    for (; i < answer.size() && !std::isspace(static_cast<unsigned char>(answer[i])); ++i) yes = yes || covered[i];
    out.push_back(yes ? DecisionLabel::Yes : DecisionLabel::No);
  }
  return out;
}

SpanCase random_span_case(Rng& rng) {
  static const std::vector<std::string> words = {"ab", "b", "abc", "c.", "1900", "x,y", "bab", "a"};
  SpanCase c;
  const std::size_t len = 1 + rng.index(12);
  for (std::size_t i = 0; i < len; ++i) {
    if (i) c.answer += rng.uniform() < 0.2 ? "  " : " ";
    c.answer += words[rng.index(words.size())];
  }
  const std::size_t ns = rng.index(4);
  for (std::size_t s = 0; s < ns; ++s) {
    const std::size_t a = rng.index(c.answer.size());
    const std::size_t b = a + 1 + rng.index(std::min<std::size_t>(6, c.answer.size() - a));
    c.spans.push_back(c.answer.substr(a, b - a));
  }
  return c;
}

const std::vector<std::pair<std::string, std::string>>& pinned_metric_rows() {
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"NNYYNNNNNN", "NNYNNNNNNN"}, {"YNNNNNNNNN", "YNNNNNNNNN"}, {"NNNNNNNNNN", "NNNNNYNNNN"},
      {"NNYNNYNNNN", "NNYNNNNNNN"}, {"YYNNNNNNNN", "NYNNNNNNNN"}, {"NNNNNNNNYY", "NNNNNNNNYY"},
      {"NNNNNNNNNN", "NNNNNNNNNN"}, {"NNNYNNNNNN", "NNNNYNNNNN"}, {"NYNYNYNNNN", "NYNYNNNNNY"},
      {"NNNNNNNNNN", "YNNNNNNNNN"}};
  return rows;
}

}  // namespace cds::fixtures
