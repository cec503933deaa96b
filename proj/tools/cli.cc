// Copyright 2026 The embcompress Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "embcompress/bench.hpp"
#include "embcompress/eval.hpp"
#include "embcompress/reducers.hpp"
#include "embcompress/report.hpp"
#include "embcompress/store.hpp"

namespace embcompress::cli {
namespace {

namespace fs = std::filesystem;

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Reducer flags shared by fit, eval-* and bench.
struct ReducerFlags {
  std::string method = "pca";
  Index dim = 0;
  std::uint64_t seed = 0;
  std::string kernel = "rbf";
  double gamma = 0.0;
  unsigned degree = 3;
  double coef0 = 1.0;
  double jitter = 0.0;
  bool standardize = false;
  double ae_lr = 1e-3;
  Index ae_batch = 256;
  Index ae_epochs = 100;

  ReducerConfig ToConfig() const {
    ReducerConfig cfg;
    cfg.method = ParseMethod(method);
    cfg.target_dim = dim;
    cfg.seed = seed;
    cfg.kernel.kind = ParseKernelKind(kernel);
    cfg.kernel.gamma = gamma;
    cfg.kernel.degree = degree;
    cfg.kernel.coef0 = coef0;
    cfg.kpca_jitter = jitter;
    cfg.standardize = standardize;
    cfg.ae.learning_rate = ae_lr;
    cfg.ae.batch_size = ae_batch;
    cfg.ae.epochs = ae_epochs;
    return cfg;
  }
};

void AddReducerOptions(CLI::App* app, ReducerFlags& f, bool need_method) {
  auto* method = app->add_option("--method", f.method,
                                 "pca | svd | kpca | grp | autoencoder");
  auto* dim = app->add_option("--dim", f.dim, "target dimension k");
  if (need_method) {
    method->required();
    dim->required();
  }
  app->add_option("--seed", f.seed, "seed for grp and autoencoder")
      ->capture_default_str();
  app->add_option("--kernel", f.kernel, "kpca kernel: linear | rbf | poly | sigmoid")
      ->capture_default_str();
  app->add_option("--gamma", f.gamma, "kernel gamma; 0 means 1/d")
      ->capture_default_str();
  app->add_option("--degree", f.degree, "poly kernel degree")
      ->capture_default_str();
  app->add_option("--coef0", f.coef0, "poly/sigmoid kernel offset")
      ->capture_default_str();
  app->add_option("--kpca-jitter", f.jitter, "added to the kpca kernel diagonal")
      ->capture_default_str();
  app->add_flag("--standardize", f.standardize,
                "pca: scale centred columns to unit variance");
  app->add_option("--ae-lr", f.ae_lr, "autoencoder Adam learning rate")
      ->capture_default_str();
  app->add_option("--ae-batch", f.ae_batch, "autoencoder batch size")
      ->capture_default_str();
  app->add_option("--ae-epochs", f.ae_epochs, "autoencoder epochs")
      ->capture_default_str();
}

// How eval-* obtains its model: identity baseline, a saved model, or a fit.
struct ModelFlags {
  bool baseline = false;
  std::string model_path;
  std::string setting = "inductive";
  ReducerFlags reducer;
};

void AddModelOptions(CLI::App* app, ModelFlags& f) {
  auto* baseline = app->add_flag("--baseline", f.baseline,
                                 "evaluate untransformed embeddings");
  auto* model = app->add_option("--model", f.model_path, "saved PRJ1 model");
  baseline->excludes(model);
  app->add_option("--setting", f.setting,
                  "inductive | transductive, when fitting with --method")
      ->capture_default_str();
  AddReducerOptions(app, f.reducer, false);
}

struct OutputFlags {
  std::string out;
  std::string jsonl;
};

void AddOutputOptions(CLI::App* app, OutputFlags& f) {
  app->add_option("--out", f.out, "report CSV path (default: stdout)");
  app->add_option("--jsonl", f.jsonl, "also write a JSON-lines report");
}

void EmitReport(const EvalReport& report, const OutputFlags& f,
                std::ostream& out) {
  if (f.out.empty()) {
    WriteReportCsv(report, out);
  } else {
    SaveReportCsv(report, f.out);
  }
  if (!f.jsonl.empty()) SaveReportJsonl(report, f.jsonl);
}

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Evaluates one task under the model chosen by `flags`.
EvalReport EvaluateOne(const ModelFlags& flags, const TaskInputs& task,
                       const EmbeddingMatrix& fit_train,
                       const EmbeddingMatrix& fit_test, Index input_dim) {
  std::optional<ProjectionModel> model;
  ReportRow row;
  double fit_seconds = 0.0;
  std::string setting = "none";
  std::uint64_t seed = 0;
  if (!flags.model_path.empty()) {
    model = LoadModel(flags.model_path);
  } else if (!flags.baseline) {
    if (flags.reducer.dim <= 0) {
      throw PreconditionError(
          "choose --baseline, --model, or --method with --dim");
    }
    const ReducerConfig cfg = flags.reducer.ToConfig();
    const Setting s = ParseSetting(flags.setting);
    const auto start = Clock::now();
    model = FitForSetting(cfg, fit_train, fit_test, s);
    fit_seconds = SecondsSince(start);
    setting = std::string(SettingName(s));
    seed = cfg.seed;
  }
  row = RunTask(model ? &*model : nullptr, task);
  row.method = model ? std::string(MethodName(model->method())) : "baseline";
  row.dim = model ? model->output_dim() : input_dim;
  row.setting = setting;
  row.seed = seed;
  row.fit_seconds = fit_seconds;
  EvalReport report;
  report.rows.push_back(std::move(row));
  return report;
}

// ---- subcommand state ----------------------------------------------------

struct FitFlags {
  ReducerFlags reducer;
  std::string train;
  std::vector<std::string> extra;
  std::string out;
};

struct TransformFlags {
  std::string model;
  std::string input;
  std::string out;
  unsigned threads = 1;
};

struct StsFlags {
  ModelFlags model;
  OutputFlags output;
  std::string train, test_a, test_b, pairs;
};

struct ClsFlags {
  ModelFlags model;
  OutputFlags output;
  std::string train, test, train_labels, test_labels;
  double l2 = 1e-4;
};

struct NliFlags {
  ModelFlags model;
  OutputFlags output;
  std::string train, test, train_pairs, test_pairs;
  double l2 = 1e-4;
};

struct SweepFlags {
  std::string config;
  OutputFlags output;
};

struct BenchFlags {
  std::vector<std::string> methods{"pca", "svd", "kpca", "grp", "autoencoder"};
  ReducerFlags reducer;
  std::string train, test;
  Index n = 5000, d = 768, test_n = 1500;
  Index repeats = 3, warmup = 1;
  unsigned threads = 1;
  std::string out;
};

struct SynthFlags {
  SynthSpec spec;
  std::string out, pairs;
};

struct PlotFlags {
  std::string input, out, task, title;
};

// ---- runners -------------------------------------------------------------

int RunFit(const FitFlags& f, std::ostream& out) {
  const ReducerConfig cfg = f.reducer.ToConfig();
  EmbeddingMatrix x = LoadEmbeddings(f.train);
  for (const std::string& path : f.extra) {
    x = EmbeddingMatrix::Concat(x, LoadEmbeddings(path));
  }
  const auto start = Clock::now();
  const ProjectionModel model = Fit(cfg, x);
  const double seconds = SecondsSince(start);
  if (!f.out.empty()) SaveModel(model, f.out);
  out << "fitted " << MethodName(model.method()) << " " << model.input_dim()
      << " -> " << model.output_dim() << " on " << x.rows() << " rows in "
      << seconds << " s\n";
  return kExitOk;
}

int RunTransform(const TransformFlags& f, std::ostream& out) {
  const ProjectionModel model = LoadModel(f.model);
  const EmbeddingMatrix x = LoadEmbeddings(f.input);
  const auto start = Clock::now();
  const EmbeddingMatrix z = Transform(model, x, {f.threads});
  const double seconds = SecondsSince(start);
  SaveEmbeddings(z, f.out);
  out << "transformed " << z.rows() << " rows " << x.dim() << " -> "
      << z.dim() << " in " << seconds << " s\n";
  return kExitOk;
}

int RunEvalSts(const StsFlags& f, std::ostream& out) {
  StsTask task;
  task.test_a = LoadEmbeddings(f.test_a);
  if (!f.test_b.empty()) task.test_b = LoadEmbeddings(f.test_b);
  task.pairs = LoadPairs(f.pairs, LabelKind::kSimilarity);
  task.train = f.train.empty() ? EmbeddingMatrix::Empty(task.test_a.dim())
                               : LoadEmbeddings(f.train);
  const bool fitting = f.model.model_path.empty() && !f.model.baseline;
  if (fitting && f.train.empty() &&
      ParseSetting(f.model.setting) == Setting::kInductive) {
    throw PreconditionError("inductive fitting needs --train");
  }
  EmitReport(EvaluateOne(f.model, task, task.train, task.TestRows(),
                         task.test_a.dim()),
             f.output, out);
  return kExitOk;
}

std::pair<LabeledDataset, LabeledDataset> LoadLabelPair(
    const std::string& train_path, const std::string& test_path) {
  LabeledDataset train = LoadLabels(train_path);
  LabeledDataset test = LoadLabels(test_path, train.class_names);
  const int classes = std::max(train.n_classes, test.n_classes);
  train.n_classes = classes;
  test.n_classes = classes;
  return {std::move(train), std::move(test)};
}

int RunEvalCls(const ClsFlags& f, std::ostream& out) {
  ClassificationTask task;
  task.train = LoadEmbeddings(f.train);
  task.test = LoadEmbeddings(f.test);
  std::tie(task.train_labels, task.test_labels) =
      LoadLabelPair(f.train_labels, f.test_labels);
  task.probe.l2 = f.l2;
  EmitReport(
      EvaluateOne(f.model, task, task.train, task.test, task.train.dim()),
      f.output, out);
  return kExitOk;
}

int RunEvalNli(const NliFlags& f, std::ostream& out) {
  EntailmentTask task;
  task.train = LoadEmbeddings(f.train);
  task.test = LoadEmbeddings(f.test);
  task.train_pairs = LoadPairs(f.train_pairs, LabelKind::kEntailment);
  task.test_pairs = LoadPairs(f.test_pairs, LabelKind::kEntailment);
  task.probe.l2 = f.l2;
  EmitReport(
      EvaluateOne(f.model, task, task.train, task.test, task.train.dim()),
      f.output, out);
  return kExitOk;
}

// ---- sweep config --------------------------------------------------------

class ConfigReader {
 public:
  ConfigReader(std::map<std::string, std::string> values, fs::path base)
      : values_(std::move(values)), base_(std::move(base)) {}

  std::optional<std::string> Get(const std::string& key) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string Require(const std::string& key) {
    auto v = Get(key);
    if (!v) throw PreconditionError("config is missing \"" + key + "\"");
    return *v;
  }

  std::optional<fs::path> Path(const std::string& key) {
    auto v = Get(key);
    if (!v) return std::nullopt;
    fs::path p(*v);
    return p.is_absolute() ? p : base_ / p;
  }

  fs::path RequirePath(const std::string& key) {
    auto p = Path(key);
    if (!p) throw PreconditionError("config is missing \"" + key + "\"");
    return *p;
  }

  template <typename T>
  T Number(const std::string& key, T fallback) {
    auto v = Get(key);
    if (!v) return fallback;
    return ParseNumber<T>(key, *v);
  }

  template <typename T>
  static T ParseNumber(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
      throw PreconditionError("config \"" + key + "\": bad number \"" + text +
                              "\"");
    }
    return value;
  }

  void RejectUnknown() const {
    for (const auto& [key, value] : values_) {
      if (!used_.count(key)) {
        throw PreconditionError("unknown config key \"" + key + "\"");
      }
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
  fs::path base_;
};

struct SweepJob {
  SweepSpec spec;
  TaskInputs task;
};

SweepJob ReadSweepConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  ConfigReader cfg(ParseFlatConfig(in), path.parent_path());

  SweepJob job{{}, StsTask{}};
  const std::string task = cfg.Require("task");
  ProbeOptions probe;
  probe.l2 = cfg.Number<double>("l2", probe.l2);
  if (task == "sts") {
    StsTask t;
    t.test_a = LoadEmbeddings(cfg.RequirePath("test"));
    if (auto p = cfg.Path("test_b")) t.test_b = LoadEmbeddings(*p);
    t.pairs = LoadPairs(cfg.RequirePath("pairs"), LabelKind::kSimilarity);
    auto train = cfg.Path("train");
    t.train = train ? LoadEmbeddings(*train)
                    : EmbeddingMatrix::Empty(t.test_a.dim());
    job.task = std::move(t);
  } else if (task == "cls") {
    ClassificationTask t;
    t.train = LoadEmbeddings(cfg.RequirePath("train"));
    t.test = LoadEmbeddings(cfg.RequirePath("test"));
    std::tie(t.train_labels, t.test_labels) =
        LoadLabelPair(cfg.RequirePath("train_labels").string(),
                      cfg.RequirePath("test_labels").string());
    t.probe = probe;
    job.task = std::move(t);
  } else if (task == "nli") {
    EntailmentTask t;
    t.train = LoadEmbeddings(cfg.RequirePath("train"));
    t.test = LoadEmbeddings(cfg.RequirePath("test"));
    t.train_pairs =
        LoadPairs(cfg.RequirePath("train_pairs"), LabelKind::kEntailment);
    t.test_pairs =
        LoadPairs(cfg.RequirePath("test_pairs"), LabelKind::kEntailment);
    t.probe = probe;
    job.task = std::move(t);
  } else {
    throw PreconditionError("config \"task\" must be sts, cls or nli");
  }

  SweepSpec& spec = job.spec;
  for (const std::string& m : SplitList(cfg.Require("methods"))) {
    spec.methods.push_back(ParseMethod(m));
  }
  const Index input_dim = std::visit(
      [](const auto& t) -> Index {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, StsTask>) {
          return t.test_a.dim();
        } else {
          return t.train.dim();
        }
      },
      job.task);
  if (auto dims = cfg.Get("dims")) {
    for (const std::string& d : SplitList(*dims)) {
      spec.dims.push_back(ConfigReader::ParseNumber<Index>("dims", d));
    }
  } else {
    spec.dims = DefaultSweepDims(input_dim);
  }
  if (auto settings = cfg.Get("settings")) {
    for (const std::string& s : SplitList(*settings)) {
      spec.settings.push_back(ParseSetting(s));
    }
  } else {
    spec.settings = {Setting::kInductive, Setting::kTransductive};
  }
  if (auto seeds = cfg.Get("seeds")) {
    for (const std::string& s : SplitList(*seeds)) {
      spec.seeds.push_back(ConfigReader::ParseNumber<std::uint64_t>("seeds", s));
    }
  } else {
    spec.seeds = {0};
  }

  ReducerConfig& base = spec.base;
  if (auto k = cfg.Get("kernel")) base.kernel.kind = ParseKernelKind(*k);
  base.kernel.gamma = cfg.Number<double>("gamma", base.kernel.gamma);
  base.kernel.degree = cfg.Number<std::uint32_t>("degree", base.kernel.degree);
  base.kernel.coef0 = cfg.Number<double>("coef0", base.kernel.coef0);
  base.kpca_jitter = cfg.Number<double>("kpca_jitter", base.kpca_jitter);
  if (auto s = cfg.Get("standardize")) {
    if (*s != "true" && *s != "false") {
      throw PreconditionError("config \"standardize\" must be true or false");
    }
    base.standardize = *s == "true";
  }
  base.ae.learning_rate =
      cfg.Number<double>("ae_learning_rate", base.ae.learning_rate);
  base.ae.batch_size = cfg.Number<Index>("ae_batch_size", base.ae.batch_size);
  base.ae.epochs = cfg.Number<Index>("ae_epochs", base.ae.epochs);
  cfg.RejectUnknown();
  spec.Validate(input_dim);
  return job;
}

int RunSweep(const SweepFlags& f, std::ostream& out) {
  const SweepJob job = ReadSweepConfig(f.config);
  EmitReport(Sweep(job.spec, job.task), f.output, out);
  return kExitOk;
}

// ---- bench / synth / plot ------------------------------------------------

int RunBench(const BenchFlags& f, std::ostream& out) {
  EmbeddingMatrix train, test;
  if (f.train.empty()) {
    train = SynthesizeCorpus({f.n, f.d, std::min<Index>(50, f.d), 0.05,
                              f.reducer.seed})
                .embeddings;
    test = SynthesizeCorpus({f.test_n, f.d, std::min<Index>(50, f.d), 0.05,
                             f.reducer.seed + 1})
               .embeddings;
  } else {
    train = LoadEmbeddings(f.train);
    test = f.test.empty() ? train : LoadEmbeddings(f.test);
  }
  ReducerFlags reducer = f.reducer;
  if (reducer.dim <= 0) reducer.dim = std::min<Index>(300, train.dim());
  std::vector<TimingResult> results;
  for (const std::string& m : f.methods) {
    reducer.method = m;
    const BenchTiming t = TimePhases(reducer.ToConfig(), train, test,
                                     f.repeats, f.warmup, {f.threads});
    results.push_back(t.fit);
    results.push_back(t.transform);
  }
  if (f.out.empty()) {
    WriteBenchCsv(results, out);
  } else {
    std::ofstream file(f.out);
    if (!file) throw IoError("cannot open " + f.out);
    WriteBenchCsv(results, file);
    if (!file) throw IoError("write failed: " + f.out);
  }
  return kExitOk;
}

int RunSynth(const SynthFlags& f, std::ostream& out) {
  const SynthCorpus corpus = SynthesizeCorpus(f.spec);
  SaveEmbeddings(corpus.embeddings, f.out);
  SavePairs(corpus.pairs, f.pairs);
  out << "wrote " << corpus.embeddings.rows() << " x "
      << corpus.embeddings.dim() << " embeddings and "
      << corpus.pairs.records.size() << " pairs\n";
  return kExitOk;
}

int RunPlot(const PlotFlags& f, std::ostream& out) {
  const EvalReport report = LoadReportCsv(f.input);
  const std::string svg = RenderSvg(report, f.task, f.title);
  if (f.out.empty()) {
    out << svg;
  } else {
    std::ofstream file(f.out);
    if (!file) throw IoError("cannot open " + f.out);
    file << svg;
    if (!file) throw IoError("write failed: " + f.out);
  }
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> ParseFlatConfig(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(line_no) +
                              ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key.empty()) {
      throw PreconditionError("config line " + std::to_string(line_no) +
                              ": empty key");
    }
    if (!values.emplace(key, value).second) {
      throw PreconditionError("config line " + std::to_string(line_no) +
                              ": duplicate key \"" + key + "\"");
    }
  }
  return values;
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"embcompress: dimensionality reduction for sentence embeddings",
               "embcompress"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");
  std::function<int()> action;

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit a reducer and save a PRJ1 model");
  AddReducerOptions(fit_cmd, fit.reducer, true);
  fit_cmd->add_option("--train", fit.train, "training embeddings")->required();
  fit_cmd->add_option("--extra", fit.extra,
                      "extra unlabelled rows appended before fitting");
  fit_cmd->add_option("--out", fit.out, "model output path");
  fit_cmd->callback([&] { action = [&] { return RunFit(fit, out); }; });

  TransformFlags transform;
  auto* tr_cmd = app.add_subcommand("transform", "project embeddings with a model");
  tr_cmd->add_option("--model", transform.model, "PRJ1 model")->required();
  tr_cmd->add_option("--input", transform.input, "input embeddings")->required();
  tr_cmd->add_option("--out", transform.out, "output EMB1 path")->required();
  tr_cmd->add_option("--threads", transform.threads, "worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  tr_cmd->callback(
      [&] { action = [&] { return RunTransform(transform, out); }; });

  StsFlags sts;
  auto* sts_cmd = app.add_subcommand("eval-sts", "Spearman on a similarity task");
  AddModelOptions(sts_cmd, sts.model);
  AddOutputOptions(sts_cmd, sts.output);
  sts_cmd->add_option("--train", sts.train, "training sentences for fitting");
  sts_cmd->add_option("--test-a", sts.test_a, "first-side test embeddings")
      ->required();
  sts_cmd->add_option("--test-b", sts.test_b,
                      "second-side test embeddings (default: --test-a)");
  sts_cmd->add_option("--pairs", sts.pairs, "test pairs TSV")->required();
  sts_cmd->callback([&] { action = [&] { return RunEvalSts(sts, out); }; });

  ClsFlags cls;
  auto* cls_cmd =
      app.add_subcommand("eval-cls", "probe accuracy on a classification task");
  AddModelOptions(cls_cmd, cls.model);
  AddOutputOptions(cls_cmd, cls.output);
  cls_cmd->add_option("--train", cls.train, "training embeddings")->required();
  cls_cmd->add_option("--test", cls.test, "test embeddings")->required();
  cls_cmd->add_option("--train-labels", cls.train_labels, "index<TAB>label")
      ->required();
  cls_cmd->add_option("--test-labels", cls.test_labels, "index<TAB>label")
      ->required();
  cls_cmd->add_option("--l2", cls.l2, "probe L2 strength")->capture_default_str();
  cls_cmd->callback([&] { action = [&] { return RunEvalCls(cls, out); }; });

  NliFlags nli;
  auto* nli_cmd =
      app.add_subcommand("eval-nli", "probe accuracy on an entailment task");
  AddModelOptions(nli_cmd, nli.model);
  AddOutputOptions(nli_cmd, nli.output);
  nli_cmd->add_option("--train", nli.train, "training sentence embeddings")
      ->required();
  nli_cmd->add_option("--test", nli.test, "test sentence embeddings")
      ->required();
  nli_cmd->add_option("--train-pairs", nli.train_pairs, "premise/hypothesis pairs")
      ->required();
  nli_cmd->add_option("--test-pairs", nli.test_pairs, "premise/hypothesis pairs")
      ->required();
  nli_cmd->add_option("--l2", nli.l2, "probe L2 strength")->capture_default_str();
  nli_cmd->callback([&] { action = [&] { return RunEvalNli(nli, out); }; });

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "evaluate a grid of methods, dims, settings and seeds");
  sweep_cmd->add_option("--config", sweep.config, "key = value config file")
      ->required();
  AddOutputOptions(sweep_cmd, sweep.output);
  sweep_cmd->footer(
      "Config keys: task (sts|cls|nli), methods, dims, settings, seeds,\n"
      "train, test, test_b, pairs, train_labels, test_labels, train_pairs,\n"
      "test_pairs, kernel, gamma, degree, coef0, kpca_jitter, standardize,\n"
      "ae_learning_rate, ae_batch_size, ae_epochs, l2. Lists are\n"
      "comma-separated; '#' starts a comment; relative paths are resolved\n"
      "against the config file's directory.");
  sweep_cmd->callback([&] { action = [&] { return RunSweep(sweep, out); }; });

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "median fit and transform times");
  bench_cmd->add_option("--methods", bench.methods, "methods to time")
      ->delimiter(',')
      ->capture_default_str();
  AddReducerOptions(bench_cmd, bench.reducer, false);
  bench_cmd->get_option("--method")->description("unused; see --methods");
  bench_cmd->add_option("--train", bench.train,
                        "training embeddings (default: synthetic)");
  bench_cmd->add_option("--test", bench.test,
                        "embeddings to transform (default: --train)");
  bench_cmd->add_option("--n", bench.n, "synthetic training rows")
      ->capture_default_str();
  bench_cmd->add_option("--d", bench.d, "synthetic dimension")
      ->capture_default_str();
  bench_cmd->add_option("--test-n", bench.test_n, "synthetic test rows")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "timed repeats")
      ->capture_default_str();
  bench_cmd->add_option("--warmup", bench.warmup, "discarded warmup runs")
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads,
                        "transform threads (1 = single-threaded)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.out, "bench CSV path (default: stdout)");
  bench_cmd->callback([&] { action = [&] { return RunBench(bench, out); }; });

  SynthFlags synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "write a synthetic corpus with gold pairs");
  synth_cmd->add_option("--n", synth.spec.n, "rows (even)")->capture_default_str();
  synth_cmd->add_option("--d", synth.spec.dim, "dimension")->capture_default_str();
  synth_cmd->add_option("--intrinsic", synth.spec.intrinsic, "latent rank")
      ->capture_default_str();
  synth_cmd->add_option("--sigma", synth.spec.noise_sigma, "isotropic noise")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed, "seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "EMB1 output")->required();
  synth_cmd->add_option("--pairs", synth.pairs, "pairs TSV output")->required();
  synth_cmd->callback([&] { action = [&] { return RunSynth(synth, out); }; });

  PlotFlags plot;
  auto* plot_cmd = app.add_subcommand("plot", "render a report CSV as an SVG chart");
  plot_cmd->add_option("--input", plot.input, "report CSV")->required();
  plot_cmd->add_option("--out", plot.out, "SVG path (default: stdout)");
  plot_cmd->add_option("--task", plot.task, "task to plot (default: first)");
  plot_cmd->add_option("--title", plot.title, "chart title");
  plot_cmd->callback([&] { action = [&] { return RunPlot(plot, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace embcompress::cli
