#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cds/app/commands.hpp"

namespace {

// CLI11 reports usage errors with its own codes; every one of them is an
// input error here.
int usage_error(const CLI::App& app, const CLI::Error& e) {
  if (e.get_exit_code() == 0) {
    std::cout << app.help();
    return cds::kExitOk;
  }
  std::cerr << e.what() << '\n';
  return cds::kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative decoding between an aligned and a pretrained model"};
  app.require_subcommand(1);

  std::string config;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::string shots;
  std::string trace;
  std::string out_path;
  std::optional<std::size_t> parallel;

  auto* generate = app.add_subcommand("generate", "Generate one response");
  std::string prompt;
  generate->add_option("prompt", prompt, "Question text")->required();
  generate->add_option("--config", config, "Run config")->required();
  generate->add_option("--strategy", strategy, "Strategy name");
  generate->add_option("--seed", seed, "Sampling seed");
  generate->add_option("--shots", shots, "Few-shot examples for the pretrained prefix (0-5)");
  generate->add_option("--trace", trace, "Write the step trace as JSONL");

  auto* eval = app.add_subcommand("eval", "Evaluate answer recall over a QA dataset");
  bool eval_trace = false;
  eval->add_option("--config", config, "Run config")->required();
  eval->add_option("--strategy", strategy, "Strategy list or 'all'");
  eval->add_option("--seed", seed, "Base seed; item i uses seed + i");
  eval->add_option("--shots", shots, "Shot counts, e.g. 0-5");
  eval->add_option("--out", out_path, "Output directory");
  eval->add_option("--parallel", parallel, "Worker threads (0 = all processors)");
  eval->add_flag("--trace", eval_trace, "Write per-item traces");

  auto* dataset = app.add_subcommand("dataset", "Build a critical-token dataset from documents");
  std::string documents;
  dataset->add_option("--config", config, "Run config with dataset_generation")->required();
  dataset->add_option("documents", documents, "JSONL documents {\"text\": ...}")->required();
  dataset->add_option("--out", out_path, "Output JSONL")->required();

  auto* classifier = app.add_subcommand("classifier", "Train or evaluate a critical-token classifier");
  classifier->require_subcommand(1);
  auto* train = classifier->add_subcommand("train", "Train a feature classifier");
  cds::ClassifierTrainOptions train_opts;
  std::string train_path;
  std::string mode = "CT";
  train->add_option("train", train_path, "Training JSONL")->required();
  train->add_option("--out", out_path, "Classifier file")->required();
  train->add_option("--mode", mode, "CT or NT");
  train->add_option("--window", train_opts.window, "Left context window");
  train->add_option("--epochs", train_opts.epochs, "Training epochs");
  train->add_option("--learning-rate", train_opts.learning_rate, "Initial step size");
  train->add_option("--seed", train_opts.seed, "Initialization seed");

  auto* ceval = classifier->add_subcommand("eval", "Print All/Switch Yes-F1 and accuracy");
  std::string classifier_path;
  std::string test_path;
  ceval->add_option("classifier", classifier_path, "Classifier file")->required();
  ceval->add_option("test", test_path, "Test JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    return usage_error(app, e);
  }

  try {
    if (*generate) {
      cds::GenerateOptions o;
      o.config = config;
      o.prompt = prompt;
      if (!strategy.empty()) o.strategy = cds::parse_strategy(strategy);
      o.seed = seed;
      if (!shots.empty()) {
        const auto list = cds::parse_shot_list(shots);
        if (list.size() != 1) throw std::invalid_argument("generate takes a single shot count");
        o.shots = list.front();
      }
      if (!trace.empty()) o.trace = trace;
      return cds::cmd_generate(o, std::cout, std::cerr);
    }
    if (*eval) {
      cds::EvalOptions o;
      o.config = config;
      if (!strategy.empty()) o.strategies = cds::parse_strategy_list(strategy);
      if (!shots.empty()) o.shots = cds::parse_shot_list(shots);
      o.seed = seed;
      if (!out_path.empty()) o.out_dir = out_path;
      o.parallel = parallel;
      o.trace = eval_trace;
      return cds::cmd_eval(o, std::cout, std::cerr);
    }
    if (*dataset) {
      return cds::cmd_dataset({config, documents, out_path}, std::cout, std::cerr);
    }
    if (*train) {
      train_opts.train = train_path;
      train_opts.out = out_path;
      train_opts.mode = cds::parse_classifier_mode(mode);
      return cds::cmd_classifier_train(train_opts, std::cout, std::cerr);
    }
    return cds::cmd_classifier_eval({classifier_path, test_path}, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return cds::kExitInput;
  }
}
