#include "cds/eval/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cds/eval/bootstrap.hpp"

namespace cds {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << v;
  return os.str();
}

}  // namespace

EvalReport run_experiment(std::span<const QARecord> dataset, const StrategyRunner& runner,
                          const ExperimentConfig& config) {
  if (dataset.empty()) throw std::invalid_argument("run_experiment: empty dataset");

  std::vector<ItemResult> items(dataset.size());
  std::vector<std::size_t> steps(dataset.size(), 0);
  std::vector<std::size_t> yes(dataset.size(), 0);

  auto run_one = [&](std::size_t i) {
    ItemResult& item = items[i];
    item.question = dataset[i].question;
    try {
      RunOutput out = runner(dataset[i], i);
      item.response = std::move(out.response);
      item.correct = answer_recall(item.response, dataset[i]);
      if (out.trace) {
        item.cost = cost_report(*out.trace, config.context_charge);
        steps[i] = out.trace->steps.size();
        yes[i] = out.trace->yes_decisions();
      }
    } catch (const std::exception& e) {
      item.error = e.what();
    }
  };

  std::size_t workers = config.parallel == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.parallel;
  workers = std::min(workers, dataset.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < dataset.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < dataset.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  EvalReport report;
  report.strategy = config.strategy;
  report.dataset = config.dataset;
  std::size_t total_steps = 0;
  std::size_t total_yes = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].error) {
      ++report.errors;
      continue;
    }
    report.per_item.push_back(items[i].correct);
    correct += items[i].correct ? 1 : 0;
    total_steps += steps[i];
    total_yes += yes[i];
    if (items[i].cost) report.cost_total += items[i].cost->total;
  }
  report.n = report.per_item.size();
  if (report.n > 0) {
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.n);
    if (config.bootstrap_iterations >= kMinBootstrapIterations) {
      Rng rng(config.bootstrap_seed);
      report.bootstrap_stddev = bootstrap_stddev(report.per_item, config.bootstrap_iterations, rng);
    }
  }
  if (total_steps > 0) report.critical_fraction = static_cast<double>(total_yes) / static_cast<double>(total_steps);
  report.items = std::move(items);
  return report;
}

void write_items_jsonl(std::ostream& out, const EvalReport& report) {
  for (std::size_t i = 0; i < report.items.size(); ++i) {
    const auto& item = report.items[i];
    nlohmann::json line = {{"index", i}, {"question", item.question}, {"response", item.response}};
    if (item.error) {
      line["error"] = *item.error;
    } else {
      line["correct"] = item.correct;
    }
    if (item.cost) line["cost"] = to_json(*item.cost);
    out << line.dump() << '\n';
  }
}

nlohmann::json summary_json(const EvalReport& report) {
  nlohmann::json doc = {{"strategy", report.strategy},
                        {"dataset", report.dataset},
                        {"accuracy", report.accuracy},
                        {"n", report.n},
                        {"errors", report.errors},
                        {"critical_fraction", report.critical_fraction},
                        {"cost_total", report.cost_total}};
  doc["stddev"] = report.bootstrap_stddev ? nlohmann::json(*report.bootstrap_stddev) : nlohmann::json(nullptr);
  return doc;
}

void write_summary_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "strategy,dataset,accuracy,stddev,critical_fraction,cost_total\n";
  for (const auto& r : reports) {
    out << csv_field(r.strategy) << ',' << csv_field(r.dataset) << ',' << fixed(r.accuracy) << ','
        << (r.bootstrap_stddev ? fixed(*r.bootstrap_stddev) : "") << ',' << fixed(r.critical_fraction) << ','
        << fixed(r.cost_total) << '\n';
  }
}

}  // namespace cds
