#include "msp/app/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "msp/app/pipeline.hpp"
#include "msp/core/error.hpp"
#include "msp/io/dataset.hpp"
#include "msp/io/text_file.hpp"
#include "msp/multiscale/multiscale.hpp"
#include "msp/nn/checkpoint.hpp"
#include "msp/train/metrics.hpp"
#include "msp/train/trainer.hpp"

namespace msp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned jobs = 1;
  std::string config;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(i) for i in [0, n) on `jobs` threads; the first exception (by index) is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct ManifestRow {
  std::string id;
  fs::path graph;
  double target = 0.0;
  Split split = Split::kNone;
};

std::string manifest_text(const std::vector<ManifestRow>& rows) {
  std::string out = "id,graph,target,split\n";
  for (const auto& r : rows) {
    out += r.id + "," + r.graph.filename().string() + "," + fmt(r.target) + "," + std::string(split_name(r.split)) + "\n";
  }
  return out;
}

std::map<std::string, std::size_t> header_columns(const std::vector<std::string>& header) {
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  return col;
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path, std::map<std::string, std::size_t>& col) {
  const std::string text = read_text_file(path);
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (header) {
      col = header_columns(cells);
      header = false;
    } else {
      rows.push_back(std::move(cells));
    }
  }
  if (header) fail(ErrorCode::kMissingColumn, path.string() + " has no header");
  return rows;
}

std::size_t need(const std::map<std::string, std::size_t>& col, const std::string& name, const fs::path& path) {
  auto it = col.find(name);
  if (it == col.end()) fail(ErrorCode::kMissingColumn, path.string() + " lacks column '" + name + "'");
  return it->second;
}

const std::string& cell(const std::vector<std::string>& row, std::size_t i) {
  if (i >= row.size()) fail(ErrorCode::kMalformedRecord, "CSV row has too few cells");
  return row[i];
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kMalformedRecord, "'" + s + "' is not a number");
  }
}

std::vector<ManifestRow> read_manifest(const fs::path& path) {
  std::map<std::string, std::size_t> col;
  const auto rows = read_csv_rows(path, col);
  const auto ci = need(col, "id", path), cg = need(col, "graph", path), ct = need(col, "target", path),
             cs = need(col, "split", path);
  std::vector<ManifestRow> out;
  for (const auto& r : rows) {
    ManifestRow m;
    m.id = cell(r, ci);
    m.graph = path.parent_path() / cell(r, cg);
    m.target = parse_double(cell(r, ct));
    if (!parse_split(cell(r, cs), m.split)) fail(ErrorCode::kMalformedRecord, "bad split tag for " + m.id);
    out.push_back(std::move(m));
  }
  return out;
}

std::map<std::string, Split> read_split_file(const fs::path& path) {
  std::map<std::string, Split> out;
  const std::string text = read_text_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    Split s;
    if (tab == std::string::npos || !parse_split(line.substr(tab + 1), s)) {
      fail(ErrorCode::kMalformedRecord, "split file line '" + line + "' is not id<TAB>split");
    }
    out[line.substr(0, tab)] = s;
  }
  return out;
}

MultiScaleGraph load_graph(const fs::path& path) { return read_graph(read_text_file(path)); }

void write_output(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_text_file(path, content);
}

// ---------------------------------------------------------------- preprocess

int cmd_preprocess(const Globals& g, const fs::path& index_path, const fs::path& out_dir,
                   const PreprocessOptions& opts) {
  const DatasetIndex index = load_dataset_index(index_path);
  fs::create_directories(out_dir);
  const std::size_t n = index.records.size();
  std::vector<std::optional<PreprocessResult>> results(n);
  std::vector<std::string> failures(n);
  parallel_for(n, g.jobs, [&](std::size_t i) {
    try {
      results[i] = preprocess_record(index.records[i], opts);
      const auto violations = validate(results[i]->graph);
      if (!violations.empty()) fail(ErrorCode::kMalformedRecord, "built graph is invalid: " + violations.front());
    } catch (const Error& e) {
      results[i].reset();
      failures[i] = std::string(error_code_name(e.code())) + ": " + e.what();
    }
  });

  std::vector<ManifestRow> manifest;
  json report = {{"accepted", 0}, {"rejected", json::array()}, {"warnings", json::object()}};
  std::string rejected = "line,id,reason\n";
  for (const auto& r : index.rejected) {
    rejected += std::to_string(r.line) + "," + r.id + "," + r.reason + "\n";
    report["rejected"].push_back({{"line", r.line}, {"id", r.id}, {"reason", r.reason}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const DatasetRecord& rec = index.records[i];
    if (!results[i]) {
      rejected += "," + rec.id + "," + failures[i] + "\n";
      report["rejected"].push_back({{"id", rec.id}, {"reason", failures[i]}});
      continue;
    }
    const fs::path file = out_dir / (rec.id + ".graph.json");
    write_text_file(file, write_graph(results[i]->graph));
    manifest.push_back({rec.id, file, rec.target, rec.split});
    if (!results[i]->warnings.empty()) report["warnings"][rec.id] = results[i]->warnings;
  }
  report["accepted"] = manifest.size();
  write_text_file(out_dir / "manifest.csv", manifest_text(manifest));
  write_text_file(out_dir / "rejected.csv", rejected);
  write_text_file(out_dir / "report.json", report.dump(2) + "\n");
  std::cout << json{{"accepted", manifest.size()}, {"rejected", report["rejected"].size()}}.dump() << "\n";
  return 0;
}

// ------------------------------------------------------------------- segment

int cmd_segment(const Globals& g, const std::vector<fs::path>& inputs, const fs::path& out_dir,
                const ErsOptions& ers, bool fan_out) {
  fs::create_directories(out_dir);
  std::vector<std::size_t> counts(inputs.size());
  parallel_for(inputs.size(), g.jobs, [&](std::size_t i) {
    MultiScaleGraph graph = load_graph(inputs[i]);
    attach_superpixels(graph, ers, fan_out);
    std::string labels;
    for (int l : graph.superpixels->labels) labels += std::to_string(l) + "\n";
    std::string stem = inputs[i].filename().string();
    if (const auto dot = stem.find(".graph.json"); dot != std::string::npos) stem = stem.substr(0, dot);
    write_text_file(out_dir / inputs[i].filename(), write_graph(graph));
    write_text_file(out_dir / (stem + ".labels.txt"), labels);
    counts[i] = graph.superpixels->graph.node_count();
  });
  json out = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out.push_back({{"graph", inputs[i].filename().string()}, {"superpixels", counts[i]}});
  }
  std::cout << out.dump() << "\n";
  return 0;
}

// --------------------------------------------------------------------- train

std::vector<Sample> load_samples(const std::vector<ManifestRow>& rows, const TrainConfig& cfg, unsigned jobs) {
  std::vector<Sample> out(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    out[i].id = rows[i].id;
    out[i].target = rows[i].target;
    out[i].graph = load_graph(rows[i].graph);
    if (cfg.mode != SurfaceMode::kFull && !out[i].graph.superpixels) {
      ErsOptions ers;
      ers.k = cfg.k_superpixels;
      ers.lambda = cfg.lambda_balance;
      attach_superpixels(out[i].graph, ers, cfg.fan_out);
    }
  });
  return out;
}

int cmd_train(const Globals& g, TrainConfig cfg, const fs::path& manifest_path, const fs::path& split_path,
              const fs::path& checkpoint, const fs::path& history) {
  auto rows = read_manifest(manifest_path);
  if (!split_path.empty()) {
    const auto splits = read_split_file(split_path);
    for (auto& r : rows) {
      auto it = splits.find(r.id);
      r.split = it == splits.end() ? Split::kNone : it->second;
    }
  }
  std::vector<ManifestRow> train_rows, val_rows;
  for (const auto& r : rows) {
    if (r.split == Split::kTrain) train_rows.push_back(r);
    if (r.split == Split::kVal) val_rows.push_back(r);
  }
  if (train_rows.empty()) fail(ErrorCode::kEmptySplit, "no training records in the manifest");
  if (val_rows.empty()) fail(ErrorCode::kEmptySplit, "no validation records in the manifest");
  validate_train_config(cfg);
  const auto train_set = load_samples(train_rows, cfg, g.jobs);
  const auto val_set = load_samples(val_rows, cfg, g.jobs);
  const TrainResult result = train(cfg, train_set, val_set);
  write_output(checkpoint, nn::write_checkpoint(result.params));
  write_output(history, history_csv(result.history));
  const auto& last = result.history.back();
  std::cout << json{{"epochs", result.history.size()},
                    {"parameter_count", nn::count_parameters(result.params)},
                    {"train_metric", last.train_metric},
                    {"val_metric", last.val_metric}}
                   .dump()
            << "\n";
  return 0;
}

// ------------------------------------------------------------------- predict

int cmd_predict(const Globals& g, const fs::path& checkpoint, const fs::path& manifest_path,
                const std::vector<fs::path>& graphs, const fs::path& out_path) {
  const nn::ModelParams params = nn::read_checkpoint(read_text_file(checkpoint));
  std::vector<ManifestRow> rows;
  if (!manifest_path.empty()) rows = read_manifest(manifest_path);
  for (const auto& p : graphs) rows.push_back({"", p, 0.0, Split::kNone});
  if (rows.empty()) fail(ErrorCode::kInvalidArgument, "predict needs --manifest or --graph");

  TrainConfig cfg;
  cfg.mode = params.config.mode;
  auto samples = load_samples(rows, cfg, g.jobs);
  for (auto& s : samples) {
    if (s.id.empty()) s.id = s.graph.protein_id;
  }
  const Matrix out = predict(params, samples, g.jobs);
  std::string csv = "id,prediction\n";
  const auto classes = argmax_rows(out);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string value =
        params.config.task == nn::Task::kAffinity ? fmt(out(i, 0)) : std::to_string(classes[i]);
    csv += samples[i].id + "," + value + "\n";
  }
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_output(out_path, csv);
  }
  return 0;
}

// ------------------------------------------------------------------ evaluate

std::map<std::string, double> read_id_values(const fs::path& path, const std::string& column) {
  std::map<std::string, std::size_t> col;
  const auto rows = read_csv_rows(path, col);
  const auto ci = need(col, "id", path), cv = need(col, column, path);
  std::map<std::string, double> out;
  for (const auto& r : rows) {
    if (!out.emplace(cell(r, ci), parse_double(cell(r, cv))).second) {
      fail(ErrorCode::kDuplicateId, "id '" + cell(r, ci) + "' repeats in " + path.string());
    }
  }
  return out;
}

int cmd_evaluate(const fs::path& preds_path, const fs::path& targets_path, const std::string& task,
                 const fs::path& out_json, const fs::path& out_csv) {
  const auto preds = read_id_values(preds_path, "prediction");
  const auto targets = read_id_values(targets_path, "target");
  std::vector<double> p, t;
  for (const auto& [id, v] : preds) {
    auto it = targets.find(id);
    if (it == targets.end()) fail(ErrorCode::kLengthMismatch, "no target for prediction '" + id + "'");
    p.push_back(v);
    t.push_back(it->second);
  }
  json report = {{"n", p.size()}, {"task", task}};
  std::string csv;
  if (task == "affinity") {
    const RegressionReport r = evaluate_regression(p, t);
    report["rmse"] = r.rmse;
    report["pearson"] = r.pearson ? json(*r.pearson) : json(nullptr);
    report["spearman"] = r.spearman ? json(*r.spearman) : json(nullptr);
    csv = "n,rmse,pearson,spearman\n" + std::to_string(p.size()) + "," + fmt(r.rmse) + "," +
          (r.pearson ? fmt(*r.pearson) : "nan") + "," + (r.spearman ? fmt(*r.spearman) : "nan") + "\n";
  } else if (task == "reaction") {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < p.size(); ++i) hits += p[i] == t[i] ? 1 : 0;
    if (p.empty()) fail(ErrorCode::kLengthMismatch, "no predictions to evaluate");
    const double acc = static_cast<double>(hits) / static_cast<double>(p.size());
    report["accuracy"] = acc;
    csv = "n,accuracy\n" + std::to_string(p.size()) + "," + fmt(acc) + "\n";
  } else {
    fail(ErrorCode::kInvalidArgument, "task must be affinity or reaction");
  }
  if (!out_json.empty()) write_output(out_json, report.dump(2) + "\n");
  if (!out_csv.empty()) write_output(out_csv, csv);
  std::cout << report.dump() << "\n";
  return 0;
}

// ------------------------------------------------------------------- inspect

json layer_stats(const FeatureGraph& g) {
  return {{"nodes", g.node_count()},
          {"edges", g.edge_count()},
          {"node_features", g.node_features.cols()},
          {"edge_features", g.edge_features.cols()}};
}

int cmd_inspect(const fs::path& checkpoint, const fs::path& graph_path) {
  json out = json::object();
  if (!checkpoint.empty()) {
    const nn::ModelParams p = nn::read_checkpoint(read_text_file(checkpoint));
    out["parameter_count"] = nn::count_parameters(p);
    out["tensors"] = p.named_tensors().size();
    out["config"] = nn::encoder_config_to_json(p.config);
  }
  if (!graph_path.empty()) {
    const MultiScaleGraph g = load_graph(graph_path);
    json gj = {{"protein_id", g.protein_id},
               {"structure", layer_stats(g.structure)},
               {"surface", layer_stats(g.surface)},
               {"cross_edges", g.cross_edges.size()}};
    std::vector<std::size_t> fan_in(g.structure.node_count(), 0);
    for (const auto& [s, b] : g.cross_edges) {
      if (b < fan_in.size()) ++fan_in[b];
    }
    if (!fan_in.empty()) {
      auto sorted = fan_in;
      std::sort(sorted.begin(), sorted.end());
      gj["fan_in"] = {{"min", sorted.front()}, {"median", sorted[sorted.size() / 2]}, {"max", sorted.back()}};
    }
    if (g.superpixels) {
      json sp = layer_stats(g.superpixels->graph);
      std::vector<std::size_t> sizes(g.superpixels->graph.node_count(), 0);
      for (int l : g.superpixels->labels) {
        if (l >= 0 && static_cast<std::size_t>(l) < sizes.size()) ++sizes[static_cast<std::size_t>(l)];
      }
      sp["sizes"] = sizes;
      sp["cross_edges"] = g.superpixels->cross_edges.size();
      gj["superpixels"] = std::move(sp);
    }
    if (g.ligand) gj["ligand"] = layer_stats(*g.ligand);
    gj["violations"] = validate(g);
    out["graph"] = std::move(gj);
  }
  if (out.empty()) fail(ErrorCode::kInvalidArgument, "inspect needs --checkpoint or --graph");
  std::cout << out.dump(2) << "\n";
  return 0;
}

void report_error(const char* code, int exit_code, const std::string& message) {
  std::cerr << json{{"error", code}, {"exit_code", exit_code}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Multi-scale protein graph toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (overrides the config file)")->each([&](const std::string&) {
    g.seed_set = true;
  });
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "Flat key=value config file")->check(CLI::ExistingFile);

  // preprocess
  auto* pre = app.add_subcommand("preprocess", "Dataset index -> graph files and rejection report");
  fs::path pre_index, pre_out;
  PreprocessOptions pre_opts;
  pre->add_option("--index", pre_index, "Dataset CSV")->required();
  pre->add_option("--out-dir", pre_out, "Output directory")->required();
  pre->add_option("--target-faces", pre_opts.target_faces, "Decimate meshes to about this many faces");
  pre->add_option("--cutoff", pre_opts.cutoff, "C-alpha distance cutoff")->check(CLI::PositiveNumber);

  // segment
  auto* seg = app.add_subcommand("segment", "Graph files -> superpixel labels and graphs");
  std::vector<fs::path> seg_in;
  fs::path seg_out;
  ErsOptions ers;
  bool fan_out = false;
  std::string similarity = "product";
  seg->add_option("--in", seg_in, "Graph files")->required()->check(CLI::ExistingFile);
  seg->add_option("--out-dir", seg_out, "Output directory")->required();
  seg->add_option("--k", ers.k, "Number of superpixels")->check(CLI::PositiveNumber);
  seg->add_option("--lambda", ers.lambda, "Balancing weight")->check(CLI::NonNegativeNumber);
  seg->add_option("--similarity", similarity, "product | gaussian")->check(CLI::IsMember({"product", "gaussian"}));
  seg->add_option("--sigma", ers.similarity.sigma, "Gaussian bandwidth")->check(CLI::PositiveNumber);
  seg->add_flag("--fan-out", fan_out, "Cross edges to every member residue");

  // train
  auto* tr = app.add_subcommand("train", "Manifest + config -> checkpoint and history CSV");
  fs::path tr_manifest, tr_split, tr_ckpt, tr_hist;
  std::vector<std::string> overrides;
  tr->add_option("--manifest", tr_manifest, "manifest.csv from preprocess")->required()->check(CLI::ExistingFile);
  tr->add_option("--split-file", tr_split, "id<TAB>split file overriding the manifest")->check(CLI::ExistingFile);
  tr->add_option("--checkpoint", tr_ckpt, "Checkpoint output")->required();
  tr->add_option("--history", tr_hist, "History CSV output")->required();
  tr->add_option("--set", overrides, "key=value config override (repeatable)");
  int epochs = 0;
  std::string task, mode;
  tr->add_option("--epochs", epochs, "Epoch count")->check(CLI::PositiveNumber);
  tr->add_option("--task", task, "affinity | reaction")->check(CLI::IsMember({"affinity", "reaction"}));
  tr->add_option("--mode", mode, "full | superpixel | summary")->check(CLI::IsMember({"full", "superpixel", "summary"}));

  // predict
  auto* pr = app.add_subcommand("predict", "Checkpoint + graphs -> predictions CSV");
  fs::path pr_ckpt, pr_manifest, pr_out;
  std::vector<fs::path> pr_graphs;
  pr->add_option("--checkpoint", pr_ckpt, "Checkpoint file")->required()->check(CLI::ExistingFile);
  pr->add_option("--manifest", pr_manifest, "manifest.csv")->check(CLI::ExistingFile);
  pr->add_option("--graph", pr_graphs, "Graph files")->check(CLI::ExistingFile);
  pr->add_option("--out", pr_out, "Predictions CSV (stdout when omitted)");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Predictions + targets -> metrics");
  fs::path ev_pred, ev_targets, ev_json, ev_csv;
  std::string ev_task = "affinity";
  ev->add_option("--predictions", ev_pred, "CSV with id,prediction")->required()->check(CLI::ExistingFile);
  ev->add_option("--targets", ev_targets, "CSV with id,target")->required()->check(CLI::ExistingFile);
  ev->add_option("--task", ev_task, "affinity | reaction")->check(CLI::IsMember({"affinity", "reaction"}));
  ev->add_option("--out-json", ev_json, "Report JSON output");
  ev->add_option("--out-csv", ev_csv, "Report CSV output");

  // inspect
  auto* in = app.add_subcommand("inspect", "Checkpoint or graph statistics");
  fs::path in_ckpt, in_graph;
  in->add_option("--checkpoint", in_ckpt, "Checkpoint file")->check(CLI::ExistingFile);
  in->add_option("--graph", in_graph, "Graph file")->check(CLI::ExistingFile);

  for (auto* sub : {pre, seg, tr, pr, ev, in}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", 1, e.what());
    return 1;
  }

  try {
    TrainConfig cfg;
    if (!g.config.empty()) apply_config_text(cfg, read_text_file(g.config));
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail(ErrorCode::kInvalidArgument, "--set expects key=value, got '" + kv + "'");
      set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (epochs > 0) cfg.epochs = epochs;
    if (!task.empty()) set_config_value(cfg, "task", task);
    if (!mode.empty()) set_config_value(cfg, "mode", mode);
    if (g.seed_set) cfg.seed = g.seed;
    if (!g.seed_set) g.seed = cfg.seed;

    if (*pre) {
      if (!g.config.empty() && !pre->count("--cutoff")) pre_opts.cutoff = cfg.cutoff;
      return cmd_preprocess(g, pre_index, pre_out, pre_opts);
    }
    if (*seg) {
      if (!g.config.empty()) {
        if (!seg->count("--k")) ers.k = cfg.k_superpixels;
        if (!seg->count("--lambda")) ers.lambda = cfg.lambda_balance;
        if (!seg->count("--fan-out")) fan_out = cfg.fan_out;
      }
      ers.similarity.kind = similarity == "gaussian" ? SimilarityKind::kGaussian : SimilarityKind::kProduct;
      return cmd_segment(g, seg_in, seg_out, ers, fan_out);
    }
    if (*tr) return cmd_train(g, cfg, tr_manifest, tr_split, tr_ckpt, tr_hist);
    if (*pr) return cmd_predict(g, pr_ckpt, pr_manifest, pr_graphs, pr_out);
    if (*ev) return cmd_evaluate(ev_pred, ev_targets, ev_task, ev_json, ev_csv);
    if (*in) return cmd_inspect(in_ckpt, in_graph);
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::kInvalidArgument ? 1 : 2;
    report_error(std::string(error_code_name(e.code())).c_str(), code, e.what());
    return code;
  } catch (const std::exception& e) {
    report_error("InternalError", 3, e.what());
    return 3;
  }
  return 3;
}

}  // namespace msp
