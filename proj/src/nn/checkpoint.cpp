#include "msp/nn/checkpoint.hpp"

#include <map>

#include "msp/core/error.hpp"

namespace msp::nn {
namespace {

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kLeakyRelu: return "leaky_relu";
    case Activation::kIdentity: return "identity";
  }
  return "relu";
}

Activation parse_activation(const std::string& s) {
  if (s == "relu") return Activation::kRelu;
  if (s == "leaky_relu") return Activation::kLeakyRelu;
  if (s == "identity") return Activation::kIdentity;
  fail(ErrorCode::kMalformedRecord, "unknown activation '" + s + "'");
}

}  // namespace

nlohmann::json encoder_config_to_json(const EncoderConfig& cfg) {
  return {
      {"hidden_surface", cfg.hidden_surface},
      {"hidden_structure", cfg.hidden_structure},
      {"hidden_ligand", cfg.hidden_ligand},
      {"steps_surface", cfg.steps_surface},
      {"steps_structure", cfg.steps_structure},
      {"steps_ligand", cfg.steps_ligand},
      {"mlp_hidden", cfg.mlp_hidden},
      {"activation", activation_name(cfg.activation)},
      {"dropout_message", cfg.dropout_message},
      {"dropout_mlp", cfg.dropout_mlp},
      {"mode", surface_mode_name(cfg.mode)},
      {"task", task_name(cfg.task)},
      {"num_classes", cfg.num_classes},
  };
}

EncoderConfig encoder_config_from_json(const nlohmann::json& j) {
  try {
    EncoderConfig cfg;
    cfg.hidden_surface = j.at("hidden_surface").get<std::size_t>();
    cfg.hidden_structure = j.at("hidden_structure").get<std::size_t>();
    cfg.hidden_ligand = j.at("hidden_ligand").get<std::size_t>();
    cfg.steps_surface = j.at("steps_surface").get<int>();
    cfg.steps_structure = j.at("steps_structure").get<int>();
    cfg.steps_ligand = j.at("steps_ligand").get<int>();
    cfg.mlp_hidden = j.at("mlp_hidden").get<std::size_t>();
    cfg.activation = parse_activation(j.at("activation").get<std::string>());
    cfg.dropout_message = j.at("dropout_message").get<double>();
    cfg.dropout_mlp = j.at("dropout_mlp").get<double>();
    if (!parse_surface_mode(j.at("mode").get<std::string>(), cfg.mode)) {
      fail(ErrorCode::kMalformedRecord, "unknown surface mode in checkpoint");
    }
    if (!parse_task(j.at("task").get<std::string>(), cfg.task)) {
      fail(ErrorCode::kMalformedRecord, "unknown task in checkpoint");
    }
    cfg.num_classes = j.at("num_classes").get<std::size_t>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformedRecord, std::string("bad encoder config: ") + e.what());
  }
}

std::string write_checkpoint(const ModelParams& p) {
  nlohmann::json tensors = nlohmann::json::array();
  for (const auto& [name, t] : p.named_tensors()) {
    tensors.push_back({{"name", name}, {"rows", t.rows()}, {"cols", t.cols()}, {"values", t.value().data()}});
  }
  nlohmann::json doc = {
      {"format", "msp-checkpoint"},
      {"version", kCheckpointVersion},
      {"config", encoder_config_to_json(p.config)},
      {"parameter_count", count_parameters(p)},
      {"tensors", std::move(tensors)},
  };
  return doc.dump() + "\n";
}

ModelParams read_checkpoint(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformedRecord, std::string("checkpoint is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "msp-checkpoint") {
    fail(ErrorCode::kMalformedRecord, "not a checkpoint file");
  }
  if (doc.value("version", -1) != kCheckpointVersion) {
    fail(ErrorCode::kSchemaVersionMismatch, "unsupported checkpoint version");
  }
  ModelParams p = constant_params(encoder_config_from_json(doc.at("config")), 0.0);

  std::map<std::string, const nlohmann::json*> by_name;
  for (const auto& t : doc.at("tensors")) by_name[t.at("name").get<std::string>()] = &t;
  for (auto& [name, t] : p.named_tensors()) {
    auto it = by_name.find(name);
    if (it == by_name.end()) fail(ErrorCode::kMalformedRecord, "checkpoint lacks tensor " + name);
    const auto& j = *it->second;
    try {
      if (j.at("rows").get<std::size_t>() != t.rows() || j.at("cols").get<std::size_t>() != t.cols()) {
        fail(ErrorCode::kShapeMismatch, "tensor " + name + " has the wrong shape");
      }
      auto values = j.at("values").get<std::vector<double>>();
      if (values.size() != t.rows() * t.cols()) fail(ErrorCode::kShapeMismatch, "tensor " + name + " size");
      // named_tensors() hands out handles sharing the underlying nodes.
      Tensor handle = t;
      handle.mutable_value().data() = std::move(values);
      check_finite(handle.value(), "checkpoint");
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kMalformedRecord, "tensor " + name + ": " + e.what());
    }
  }
  return p;
}

}  // namespace msp::nn
