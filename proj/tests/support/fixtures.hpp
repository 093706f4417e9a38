#pragma once

#include <json.hpp>

#include <string>

namespace tsynth::testing {

std::string data_path(const std::string &name);
nlohmann::json load_json(const std::string &name);

} // namespace tsynth::testing
