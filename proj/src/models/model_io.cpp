#include "cds/models/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace cds {

using nlohmann::json;

namespace {

json sparse(const TokenDistribution& dist, const Vocabulary& vocab) {
  json out = json::object();
  auto probs = dist.probs();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) out[vocab.token(static_cast<TokenId>(i))] = probs[i];
  }
  return out;
}

TokenDistribution dense(const json& doc, const Vocabulary& vocab) {
  if (!doc.is_object()) throw std::invalid_argument("model file: distribution must be an object");
  std::vector<double> probs(vocab.size(), 0.0);
  for (const auto& [token, p] : doc.items()) probs[vocab.id(token)] = p.get<double>();
  return TokenDistribution(std::move(probs));
}

json sequence_to_json(const TokenSequence& seq, const Vocabulary& vocab) {
  json out = json::array();
  for (TokenId id : seq) {
    if (id == NGramModel::kBeginOfSequence) {
      out.push_back(nullptr);
    } else {
      out.push_back(vocab.token(id));
    }
  }
  return out;
}

TokenSequence sequence_from_json(const json& doc, const Vocabulary& vocab) {
  TokenSequence out;
  for (const auto& item : doc) {
    out.push_back(item.is_null() ? NGramModel::kBeginOfSequence : vocab.id(item.get<std::string>()));
  }
  return out;
}

void check_format(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kModelFormat) {
    throw std::invalid_argument("model file: expected \"format\": \"" + std::string(kModelFormat) + "\"");
  }
}

}  // namespace

json vocabulary_to_json(const Vocabulary& vocab) {
  json stops = json::array();
  for (TokenId id : vocab.stop_ids()) stops.push_back(vocab.token(id));
  json out{{"tokens", vocab.tokens()}, {"stop", std::move(stops)}};
  if (auto unk = vocab.unknown_id()) out["unknown"] = vocab.token(*unk);
  return out;
}

Vocabulary vocabulary_from_json(const json& doc) {
  auto tokens = doc.at("tokens").get<std::vector<std::string>>();
  auto stops = doc.at("stop").get<std::vector<std::string>>();
  std::optional<std::string> unk;
  if (doc.contains("unknown") && !doc.at("unknown").is_null()) unk = doc.at("unknown").get<std::string>();
  return Vocabulary::from_strings(std::move(tokens), stops, unk);
}

json to_json(const TableModel& model) {
  const auto& vocab = model.vocabulary();
  json entries = json::array();
  for (const auto& [suffix, dist] : model.entries()) {
    entries.push_back({{"suffix", sequence_to_json(suffix, vocab)}, {"next", sparse(dist, vocab)}});
  }
  return json{{"format", kModelFormat},
              {"kind", "table"},
              {"vocabulary", vocabulary_to_json(vocab)},
              {"fallback", sparse(model.fallback(), vocab)},
              {"entries", std::move(entries)}};
}

json to_json(const NGramModel& model) {
  const auto& vocab = model.vocabulary();
  json counts = json::array();
  for (const auto& [context, row] : model.counts()) {
    json next = json::object();
    for (const auto& [id, count] : row) next[vocab.token(id)] = count;
    counts.push_back({{"context", sequence_to_json(context, vocab)}, {"next", std::move(next)}});
  }
  return json{{"format", kModelFormat},   {"kind", "ngram"},          {"vocabulary", vocabulary_to_json(vocab)},
              {"order", model.order()},   {"smoothing", model.smoothing()}, {"counts", std::move(counts)}};
}

std::unique_ptr<LanguageModel> model_from_json(const json& doc) {
  check_format(doc);
  try {
    auto vocab = vocabulary_from_json(doc.at("vocabulary"));
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "table") {
      auto model = std::make_unique<TableModel>(vocab, dense(doc.at("fallback"), vocab));
      for (const auto& entry : doc.at("entries")) {
        model->set(sequence_from_json(entry.at("suffix"), vocab), dense(entry.at("next"), vocab));
      }
      return model;
    }
    if (kind == "ngram") {
      NGramModel::Counts counts;
      for (const auto& row : doc.at("counts")) {
        auto& target = counts[sequence_from_json(row.at("context"), vocab)];
        for (const auto& [token, count] : row.at("next").items()) target[vocab.id(token)] = count.get<std::uint64_t>();
      }
      return std::make_unique<NGramModel>(vocab, doc.at("order").get<int>(), doc.at("smoothing").get<double>(),
                                          std::move(counts));
    }
    throw std::invalid_argument("model file: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model file: ") + e.what());
  }
}

std::unique_ptr<LanguageModel> load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("model file " + path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

void save_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(1) << '\n';
}

}  // namespace cds
