#include <charconv>
#include <sstream>

#include "msp/core/error.hpp"
#include "msp/train/trainer.hpp"

namespace msp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  fail(ErrorCode::kInvalidArgument, "bad value '" + std::string(value) + "' for " + std::string(key));
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void set_config_value(TrainConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "hidden_surface") cfg.hidden_surface = parse_number<std::size_t>(key, value);
  else if (key == "hidden_structure") cfg.hidden_structure = parse_number<std::size_t>(key, value);
  else if (key == "hidden_ligand") cfg.hidden_ligand = parse_number<std::size_t>(key, value);
  else if (key == "steps_surface") cfg.steps_surface = parse_number<int>(key, value);
  else if (key == "steps_structure") cfg.steps_structure = parse_number<int>(key, value);
  else if (key == "steps_ligand") cfg.steps_ligand = parse_number<int>(key, value);
  else if (key == "mlp_hidden") cfg.mlp_hidden = parse_number<std::size_t>(key, value);
  else if (key == "lr") cfg.lr = parse_number<double>(key, value);
  else if (key == "lr_decay") cfg.lr_decay = parse_number<double>(key, value);
  else if (key == "plateau_threshold") cfg.plateau_threshold = parse_number<double>(key, value);
  else if (key == "patience") cfg.patience = parse_number<int>(key, value);
  else if (key == "clip_norm") cfg.clip_norm = parse_number<double>(key, value);
  else if (key == "dropout") cfg.dropout = parse_number<double>(key, value);
  else if (key == "dropout_mlp") cfg.dropout_mlp = parse_number<double>(key, value);
  else if (key == "epochs") cfg.epochs = parse_number<int>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "k_superpixels") cfg.k_superpixels = parse_number<std::size_t>(key, value);
  else if (key == "lambda_balance") cfg.lambda_balance = parse_number<double>(key, value);
  else if (key == "cutoff") cfg.cutoff = parse_number<double>(key, value);
  else if (key == "batch_size") cfg.batch_size = parse_number<std::size_t>(key, value);
  else if (key == "num_classes") cfg.num_classes = parse_number<std::size_t>(key, value);
  else if (key == "fan_out") cfg.fan_out = parse_bool(key, value);
  else if (key == "activation") {
    if (value != "auto" && value != "relu" && value != "leaky_relu") bad_value(key, value);
    cfg.activation = std::string(value);
  } else if (key == "task") {
    if (!nn::parse_task(value, cfg.task)) bad_value(key, value);
  } else if (key == "mode") {
    if (!parse_surface_mode(value, cfg.mode)) bad_value(key, value);
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(TrainConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kInvalidArgument, "config line " + std::to_string(line_no) + " is not key=value");
    }
    set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

std::string format_train_config(const TrainConfig& cfg) {
  std::ostringstream os;
  os << "hidden_surface=" << cfg.hidden_surface << "\n"
     << "hidden_structure=" << cfg.hidden_structure << "\n"
     << "hidden_ligand=" << cfg.hidden_ligand << "\n"
     << "steps_surface=" << cfg.steps_surface << "\n"
     << "steps_structure=" << cfg.steps_structure << "\n"
     << "steps_ligand=" << cfg.steps_ligand << "\n"
     << "mlp_hidden=" << cfg.mlp_hidden << "\n"
     << "lr=" << fmt(cfg.lr) << "\n"
     << "lr_decay=" << fmt(cfg.lr_decay) << "\n"
     << "plateau_threshold=" << fmt(cfg.plateau_threshold) << "\n"
     << "patience=" << cfg.patience << "\n"
     << "clip_norm=" << fmt(cfg.clip_norm) << "\n"
     << "dropout=" << fmt(cfg.dropout) << "\n"
     << "dropout_mlp=" << fmt(cfg.dropout_mlp) << "\n"
     << "epochs=" << cfg.epochs << "\n"
     << "seed=" << cfg.seed << "\n"
     << "k_superpixels=" << cfg.k_superpixels << "\n"
     << "lambda_balance=" << fmt(cfg.lambda_balance) << "\n"
     << "cutoff=" << fmt(cfg.cutoff) << "\n"
     << "task=" << nn::task_name(cfg.task) << "\n"
     << "mode=" << surface_mode_name(cfg.mode) << "\n"
     << "fan_out=" << (cfg.fan_out ? "true" : "false") << "\n"
     << "batch_size=" << cfg.batch_size << "\n"
     << "num_classes=" << cfg.num_classes << "\n"
     << "activation=" << cfg.activation << "\n";
  return os.str();
}

void validate_train_config(const TrainConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::kInvalidArgument, std::string("config: ") + what);
  };
  require(cfg.hidden_surface > 0 && cfg.hidden_structure > 0 && cfg.hidden_ligand > 0, "hidden sizes must be positive");
  require(cfg.steps_surface > 0 && cfg.steps_structure > 0 && cfg.steps_ligand > 0, "step counts must be positive");
  require(cfg.mlp_hidden > 0, "mlp_hidden must be positive");
  require(cfg.lr > 0.0, "lr must be positive");
  require(cfg.lr_decay > 0.0 && cfg.lr_decay <= 1.0, "lr_decay must lie in (0, 1]");
  require(cfg.plateau_threshold >= 0.0, "plateau_threshold must be non-negative");
  require(cfg.patience > 0, "patience must be positive");
  require(cfg.clip_norm > 0.0, "clip_norm must be positive");
  require(cfg.dropout >= 0.0 && cfg.dropout < 1.0, "dropout must lie in [0, 1)");
  require(cfg.dropout_mlp >= 0.0 && cfg.dropout_mlp < 1.0, "dropout_mlp must lie in [0, 1)");
  require(cfg.epochs > 0, "epochs must be positive");
  require(cfg.k_superpixels > 0, "k_superpixels must be positive");
  require(cfg.lambda_balance >= 0.0, "lambda_balance must be non-negative");
  require(cfg.cutoff > 0.0, "cutoff must be positive");
  require(cfg.batch_size > 0, "batch_size must be positive");
  require(cfg.num_classes > 1 || cfg.task == nn::Task::kAffinity, "num_classes must exceed 1");
}

nn::EncoderConfig encoder_config(const TrainConfig& cfg) {
  nn::EncoderConfig e;
  e.hidden_surface = cfg.hidden_surface;
  e.hidden_structure = cfg.hidden_structure;
  e.hidden_ligand = cfg.hidden_ligand;
  e.steps_surface = cfg.steps_surface;
  e.steps_structure = cfg.steps_structure;
  e.steps_ligand = cfg.steps_ligand;
  e.mlp_hidden = cfg.mlp_hidden;
  e.dropout_message = cfg.dropout;
  e.dropout_mlp = cfg.dropout_mlp;
  e.mode = cfg.mode;
  e.task = cfg.task;
  e.num_classes = cfg.num_classes;
  if (cfg.activation == "relu") {
    e.activation = nn::Activation::kRelu;
  } else if (cfg.activation == "leaky_relu") {
    e.activation = nn::Activation::kLeakyRelu;
  } else {
    e.activation = cfg.task == nn::Task::kAffinity ? nn::Activation::kRelu : nn::Activation::kLeakyRelu;
  }
  return e;
}

}  // namespace msp
