#include "cds/app/commands.hpp"

#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cds/app/config.hpp"
#include "cds/classifier/classifier_io.hpp"
#include "cds/classifier/feature_classifier.hpp"
#include "cds/classifier/labels.hpp"
#include "cds/classifier/metrics.hpp"
#include "cds/core/text.hpp"
#include "cds/decoding/cost.hpp"
#include "cds/eval/experiment.hpp"
#include "cds/models/model_io.hpp"
#include "cds/models/remote_model.hpp"
#include "cds/models/wire.hpp"

namespace cds {

namespace fs = std::filesystem;

namespace {

// Runs `body`, mapping exceptions to exit codes and a one-line diagnostic.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const GenerationError& e) {
    err << "generation failed after " << e.partial().tokens.size() << " tokens: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string file_label(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return s;
}

}  // namespace

std::vector<Strategy> parse_strategy_list(std::string_view text) {
  if (ascii_lower(normalize_whitespace(text)) == "all") {
    return std::vector<Strategy>(std::begin(kAllStrategies), std::end(kAllStrategies));
  }
  std::vector<Strategy> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = normalize_whitespace(item);
    if (!item.empty()) out.push_back(parse_strategy(item));
  }
  if (out.empty()) throw std::invalid_argument("no strategy given");
  return out;
}

std::vector<std::size_t> parse_shot_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  auto number = [](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v > kDefaultPretrainedShots) {
      throw std::invalid_argument("shot count '" + s + "' is not in 0..5");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    item = normalize_whitespace(item);
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    const std::size_t lo = number(normalize_whitespace(item.substr(0, dash)));
    const std::size_t hi = number(normalize_whitespace(item.substr(dash + 1)));
    if (lo > hi) throw std::invalid_argument("empty shot range '" + item + "'");
    for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
  }
  if (out.empty()) throw std::invalid_argument("no shot count given");
  return out;
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig config = load_run_config(options.config);
    StrategyConfig sc = config.strategy;
    if (options.strategy) sc.strategy = *options.strategy;
    if (options.seed) sc.seed = *options.seed;
    if (options.shots) sc.shots = *options.shots;
    try {
      sc.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const CdsEngine engine = build_engine(config, sc.strategy);
    const GenerationResult result = engine.run(options.prompt, sc);
    out << engine.response_text(result, sc.strategy) << '\n';
    if (options.trace) {
      auto trace = open_output(*options.trace);
      write_trace_jsonl(trace, result, engine.output_vocabulary(sc.strategy), config.context_charge);
    }
    return int{kExitOk};
  });
}

int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig config = load_run_config(options.config);
    if (!config.dataset) throw ConfigError("eval.dataset is not set");
    const std::vector<QARecord> dataset = load_qa_jsonl(*config.dataset);
    if (dataset.empty()) throw std::invalid_argument("dataset " + config.dataset->string() + " is empty");

    const fs::path out_dir = options.out_dir.value_or(config.output_dir);
    fs::create_directories(out_dir);
    const std::vector<Strategy> strategies =
        options.strategies.empty() ? std::vector<Strategy>{config.strategy.strategy} : options.strategies;
    const bool sweep = !options.shots.empty();
    const std::vector<std::size_t> shot_counts = sweep ? options.shots : std::vector<std::size_t>{config.strategy.shots};

    std::vector<EvalReport> reports;
    bool all_failed = false;
    for (Strategy strategy : strategies) {
      const CdsEngine engine = build_engine(config, strategy);
      for (std::size_t shots : shot_counts) {
        StrategyConfig sc = config.strategy;
        sc.strategy = strategy;
        sc.shots = shots;
        if (options.seed) sc.seed = *options.seed;
        try {
          sc.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        if (uses_pretrained(strategy) && shots > config.engine.fewshot.shots.size()) {
          throw ConfigError("shots = " + std::to_string(shots) + " but only " +
                            std::to_string(config.engine.fewshot.shots.size()) + " few-shot examples are configured");
        }
        std::string label(to_string(strategy));
        if (sweep) label += "[shots=" + std::to_string(shots) + "]";

        std::vector<std::optional<GenerationResult>> traces(options.trace ? dataset.size() : 0);
        const StrategyRunner runner = [&](const QARecord& record, std::size_t index) {
          StrategyConfig item_cfg = sc;
          item_cfg.seed = sc.seed + index;
          GenerationResult result = engine.run(record.question, item_cfg);
          RunOutput output{engine.response_text(result, strategy), result.trace};
          if (options.trace) traces[index] = std::move(result);
          return output;
        };
        ExperimentConfig ec;
        ec.strategy = label;
        ec.dataset = config.dataset_name;
        ec.parallel = options.parallel.value_or(config.parallel);
        ec.bootstrap_iterations = config.bootstrap_iterations;
        ec.bootstrap_seed = sc.seed;
        ec.context_charge = config.context_charge;
        EvalReport report = run_experiment(dataset, runner, ec);

        const std::string stem = file_label(config.dataset_name + "_" + label);
        {
          auto items = open_output(out_dir / (stem + ".items.jsonl"));
          write_items_jsonl(items, report);
          auto summary = open_output(out_dir / (stem + ".summary.json"));
          summary << summary_json(report).dump(1) << '\n';
        }
        if (options.trace) {
          auto trace_out = open_output(out_dir / (stem + ".traces.jsonl"));
          const Vocabulary& vocab = engine.output_vocabulary(strategy);
          for (std::size_t i = 0; i < traces.size(); ++i) {
            trace_out << nlohmann::json{{"item", i}}.dump() << '\n';
            if (traces[i]) write_trace_jsonl(trace_out, *traces[i], vocab, config.context_charge);
          }
        }
        out << label << ": accuracy " << report.accuracy << " (n=" << report.n << ", errors=" << report.errors;
        if (report.bootstrap_stddev) out << ", stddev=" << *report.bootstrap_stddev;
        out << ", critical_fraction=" << report.critical_fraction << ")\n";
        if (report.n == 0) {
          all_failed = true;
          for (const auto& item : report.items) {
            if (item.error) {
              err << label << ": " << *item.error << '\n';
              break;
            }
          }
        }
        reports.push_back(std::move(report));
      }
    }
    auto csv = open_output(out_dir / "summary.csv");
    write_summary_csv(csv, reports);
    return all_failed ? int{kExitRuntime} : int{kExitOk};
  });
}

int cmd_dataset(const DatasetOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig config = load_run_config(options.config);
    if (!config.generator) throw ConfigError("dataset_generation.generator is not set");
    const auto generator = load_generator(*config.generator, config.remote);
    const auto extractor = config.extractor ? load_generator(*config.extractor, config.remote) : nullptr;

    std::ifstream in(options.documents);
    if (!in) throw std::invalid_argument("cannot open documents " + options.documents.string());
    std::vector<std::string> documents;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (normalize_whitespace(line).empty()) continue;
      try {
        documents.push_back(nlohmann::json::parse(line).at("text").get<std::string>());
      } catch (const std::exception& e) {
        throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
      }
    }

    const DatasetResult result =
        generate_dataset(documents, *generator, extractor ? *extractor : *generator, config.dataset_prompts);
    auto file = open_output(options.out);
    write_instances_jsonl(file, result.instances);
    if (documents.empty()) err << "warning: no documents in " << options.documents.string() << '\n';
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    out << "documents: " << result.documents << "\ninstances: " << result.instances.size()
        << "\nskipped: " << result.skipped << '\n';
    return int{kExitOk};
  });
}

int cmd_classifier_train(const ClassifierTrainOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream in(options.train);
    if (!in) throw std::invalid_argument("cannot open training set " + options.train.string());
    const auto train = read_instances_jsonl(in);
    FeatureTrainingConfig tc;
    tc.mode = options.mode;
    tc.window = options.window;
    tc.epochs = options.epochs;
    tc.learning_rate = options.learning_rate;
    tc.seed = options.seed;
    const TrainedClassifier trained = train_feature_classifier(train, tc);
    if (options.out.has_parent_path()) fs::create_directories(options.out.parent_path());
    save_json(options.out, to_json(trained.classifier));
    out << "mode: " << to_string(options.mode) << "\nloss: " << trained.losses.front() << " -> "
        << trained.losses.back() << "\nwrote " << options.out.string() << '\n';
    return int{kExitOk};
  });
}

int cmd_classifier_eval(const ClassifierEvalOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto classifier = load_classifier(options.classifier);
    std::ifstream in(options.test);
    if (!in) throw std::invalid_argument("cannot open test set " + options.test.string());
    const auto test = read_instances_jsonl(in);
    if (test.empty()) throw std::invalid_argument("test set " + options.test.string() + " is empty");
    const ClassifierMetrics metrics = evaluate_classifier(*classifier, test);
    out << format_metrics_table(metrics, to_string(classifier->mode()));
    return int{kExitOk};
  });
}

}  // namespace cds
