#include "cds/app/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "cds/app/prompts.hpp"
#include "cds/classifier/classifier_io.hpp"
#include "cds/classifier/remote_classifier.hpp"
#include "cds/models/model_io.hpp"

namespace cds {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

fs::path existing_path(const json& value, const fs::path& base, std::string_view where) {
  if (!value.is_string()) throw ConfigError(std::string(where) + ": path must be a string");
  fs::path p = value.get<std::string>();
  if (p.is_relative()) p = base / p;
  if (!fs::exists(p)) throw ConfigError(std::string(where) + ": file not found: " + p.string());
  return p;
}

ComponentSource parse_component(const json& obj, const fs::path& base, std::string_view where) {
  check_keys(obj, where, {"path", "endpoint", "mode"});
  ComponentSource src;
  if (obj.contains("path")) src.path = existing_path(obj["path"], base, where);
  if (obj.contains("endpoint")) {
    try {
      src.endpoint = Endpoint::parse(obj["endpoint"].get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(std::string(where) + ": " + e.what());
    }
  }
  if (src.path.has_value() == src.endpoint.has_value()) {
    throw ConfigError(std::string(where) + ": give exactly one of 'path' and 'endpoint'");
  }
  if (obj.contains("mode")) {
    try {
      src.mode = parse_classifier_mode(obj["mode"].get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(std::string(where) + ": " + e.what());
    }
  }
  return src;
}

GeneratorSource parse_generator(const json& obj, const fs::path& base, std::string_view where) {
  check_keys(obj, where, {"script", "model", "max_tokens"});
  GeneratorSource g;
  if (obj.contains("script")) g.script = existing_path(obj["script"], base, where);
  if (obj.contains("model")) g.model = parse_component(obj["model"], base, std::string(where) + ".model");
  if (g.script.has_value() == g.model.has_value()) {
    throw ConfigError(std::string(where) + ": give exactly one of 'script' and 'model'");
  }
  g.max_tokens = get_or<std::size_t>(obj, "max_tokens", g.max_tokens);
  return g;
}

double parse_gamma(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "llama2") return kGammaLlama2;
    if (s == "mistral") return kGammaMistral;
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError("gamma must be a number, \"llama2\", \"mistral\" or \"inf\"");
}

void parse_prompts(const json& obj, EngineSettings& engine) {
  check_keys(obj, "prompts", {"preset", "system_prompt", "aligned_template", "fewshot"});
  if (obj.contains("preset")) {
    const auto name = obj["preset"].get<std::string>();
    auto preset = system_prompt_preset(name);
    if (!preset) throw ConfigError("prompts: unknown preset '" + name + "'");
    engine.system_prompt = *preset;
  }
  engine.system_prompt = get_or<std::string>(obj, "system_prompt", engine.system_prompt);
  engine.aligned_template = get_or<std::string>(obj, "aligned_template", engine.aligned_template);
  if (obj.contains("fewshot")) {
    const json& fs_obj = obj["fewshot"];
    check_keys(fs_obj, "prompts.fewshot", {"shots", "shot_template", "query_template"});
    for (const auto& shot : fs_obj.value("shots", json::array())) {
      check_keys(shot, "prompts.fewshot.shots", {"question", "answer"});
      engine.fewshot.shots.push_back({shot.at("question").get<std::string>(), shot.at("answer").get<std::string>()});
    }
    engine.fewshot.format.shot = get_or<std::string>(fs_obj, "shot_template", engine.fewshot.format.shot);
    engine.fewshot.format.query = get_or<std::string>(fs_obj, "query_template", engine.fewshot.format.query);
    try {
      engine.fewshot.validate();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("prompts.fewshot: ") + e.what());
    }
  }
}

class OwningModelGenerator final : public TextGenerator {
 public:
  OwningModelGenerator(std::shared_ptr<const LanguageModel> model, std::size_t max_tokens)
      : model_(std::move(model)), inner_(*model_, max_tokens) {}
  std::string complete(std::string_view prompt) const override { return inner_.complete(prompt); }

 private:
  std::shared_ptr<const LanguageModel> model_;
  ModelTextGenerator inner_;
};

}  // namespace

RunConfig parse_run_config(const json& doc, const fs::path& base_dir) {
  try {
    check_keys(doc, "config",
               {"format", "strategy", "temperature", "gamma", "lambda_mix", "max_tokens", "seed", "shots",
                "allow_vocabulary_bridge", "stop_tokens", "models", "classifier", "remote", "prompts", "eval",
                "dataset_generation"});
    if (doc.value("format", "") != kConfigFormat) {
      throw ConfigError("config: expected \"format\": \"" + std::string(kConfigFormat) + "\"");
    }
    RunConfig cfg;
    StrategyConfig& s = cfg.strategy;
    if (doc.contains("strategy")) s.strategy = parse_strategy(doc["strategy"].get<std::string>());
    s.temperature = get_or<double>(doc, "temperature", s.temperature);
    if (doc.contains("gamma")) s.gamma = parse_gamma(doc["gamma"]);
    s.lambda_mix = get_or<double>(doc, "lambda_mix", s.lambda_mix);
    s.max_tokens = get_or<std::size_t>(doc, "max_tokens", s.max_tokens);
    s.seed = get_or<std::uint64_t>(doc, "seed", s.seed);
    s.allow_vocabulary_bridge = get_or<bool>(doc, "allow_vocabulary_bridge", s.allow_vocabulary_bridge);
    cfg.engine.stop_tokens = get_or<std::vector<std::string>>(doc, "stop_tokens", {});

    if (doc.contains("models")) {
      const json& models = doc["models"];
      check_keys(models, "models", {"aligned", "pretrained"});
      if (models.contains("aligned")) cfg.aligned = parse_component(models["aligned"], base_dir, "models.aligned");
      if (models.contains("pretrained")) {
        cfg.pretrained = parse_component(models["pretrained"], base_dir, "models.pretrained");
      }
    }
    if (doc.contains("classifier")) cfg.classifier = parse_component(doc["classifier"], base_dir, "classifier");
    if (doc.contains("remote")) {
      const json& r = doc["remote"];
      check_keys(r, "remote", {"top_k", "retries", "timeout_ms"});
      cfg.remote.top_k = get_or<int>(r, "top_k", cfg.remote.top_k);
      cfg.remote.retries = get_or<int>(r, "retries", cfg.remote.retries);
      cfg.remote.timeout = std::chrono::milliseconds(get_or<long>(r, "timeout_ms", cfg.remote.timeout.count()));
    }
    if (doc.contains("prompts")) parse_prompts(doc["prompts"], cfg.engine);
    s.shots = get_or<std::size_t>(doc, "shots", std::min(kDefaultPretrainedShots, cfg.engine.fewshot.shots.size()));
    if (s.shots > cfg.engine.fewshot.shots.size()) {
      throw ConfigError("shots = " + std::to_string(s.shots) + " but only " +
                        std::to_string(cfg.engine.fewshot.shots.size()) + " few-shot examples are configured");
    }

    if (doc.contains("eval")) {
      const json& e = doc["eval"];
      check_keys(e, "eval",
                 {"dataset", "dataset_name", "output_dir", "parallel", "bootstrap_iterations", "context_charge"});
      if (e.contains("dataset")) cfg.dataset = existing_path(e["dataset"], base_dir, "eval.dataset");
      cfg.dataset_name = get_or<std::string>(e, "dataset_name", cfg.dataset_name);
      cfg.output_dir = get_or<std::string>(e, "output_dir", cfg.output_dir.string());
      cfg.parallel = get_or<std::size_t>(e, "parallel", cfg.parallel);
      cfg.bootstrap_iterations = get_or<std::size_t>(e, "bootstrap_iterations", cfg.bootstrap_iterations);
      cfg.context_charge = get_or<double>(e, "context_charge", cfg.context_charge);
    }
    if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;

    if (doc.contains("dataset_generation")) {
      const json& g = doc["dataset_generation"];
      check_keys(g, "dataset_generation",
                 {"generator", "extractor", "question_prompt", "answer_prompt", "extraction_prompt",
                  "questions_per_document"});
      if (g.contains("generator")) cfg.generator = parse_generator(g["generator"], base_dir, "generator");
      if (g.contains("extractor")) cfg.extractor = parse_generator(g["extractor"], base_dir, "extractor");
      auto& p = cfg.dataset_prompts;
      p.question = get_or<std::string>(g, "question_prompt", p.question);
      p.answer = get_or<std::string>(g, "answer_prompt", p.answer);
      p.extraction = get_or<std::string>(g, "extraction_prompt", p.extraction);
      p.questions_per_document = get_or<std::size_t>(g, "questions_per_document", p.questions_per_document);
    }

    try {
      s.validate();
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str(), nullptr, true, true);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_run_config(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

std::shared_ptr<const LanguageModel> load_language_model(const ComponentSource& source,
                                                         const RemoteOptions& options) {
  if (source.path) return load_model(*source.path);
  return std::make_shared<RemoteModel>(*source.endpoint, options);
}

std::shared_ptr<const CriticalTokenClassifier> load_critical_classifier(const ComponentSource& source,
                                                                        const RemoteOptions& options) {
  if (source.path) return load_classifier(*source.path);
  return std::make_shared<RemoteClassifier>(*source.endpoint, source.mode, options);
}

std::unique_ptr<TextGenerator> load_generator(const GeneratorSource& source, const RemoteOptions& options) {
  if (source.script) {
    std::ifstream in(*source.script);
    json doc;
    try {
      doc = json::parse(in);
      check_keys(doc, "generator script", {"responses", "fallback"});
      std::map<std::string, std::string, std::less<>> responses;
      const json scripted = doc.value("responses", json::object());
      for (const auto& [prompt, text] : scripted.items()) {
        responses.emplace(prompt, text.get<std::string>());
      }
      std::optional<std::string> fallback;
      if (doc.contains("fallback")) fallback = doc["fallback"].get<std::string>();
      return std::make_unique<ScriptedGenerator>(std::move(responses), std::move(fallback));
    } catch (const json::exception& e) {
      throw ConfigError(source.script->string() + ": " + e.what());
    }
  }
  return std::make_unique<OwningModelGenerator>(load_language_model(*source.model, options), source.max_tokens);
}

CdsEngine build_engine(const RunConfig& config, Strategy strategy) {
  const std::string name(to_string(strategy));
  std::shared_ptr<const LanguageModel> aligned;
  std::shared_ptr<const LanguageModel> pretrained;
  std::shared_ptr<const CriticalTokenClassifier> classifier;
  try {
    if (uses_aligned(strategy)) {
      if (!config.aligned) throw ConfigError(name + " needs models.aligned");
      aligned = load_language_model(*config.aligned, config.remote);
    }
    if (uses_pretrained(strategy)) {
      if (!config.pretrained) throw ConfigError(name + " needs models.pretrained");
      pretrained = load_language_model(*config.pretrained, config.remote);
    }
    if (uses_classifier(strategy)) {
      if (!config.classifier) throw ConfigError(name + " needs a classifier");
      classifier = load_critical_classifier(*config.classifier, config.remote);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return CdsEngine(std::move(aligned), std::move(pretrained), std::move(classifier), config.engine);
}

}  // namespace cds
