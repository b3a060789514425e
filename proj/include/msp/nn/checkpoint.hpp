#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "msp/nn/model.hpp"

namespace msp::nn {

inline constexpr int kCheckpointVersion = 1;

nlohmann::json encoder_config_to_json(const EncoderConfig& cfg);
EncoderConfig encoder_config_from_json(const nlohmann::json& j);

// JSON document holding the encoder config and every named tensor.
std::string write_checkpoint(const ModelParams& p);
ModelParams read_checkpoint(std::string_view text);

}  // namespace msp::nn
