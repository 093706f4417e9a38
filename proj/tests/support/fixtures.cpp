#include "fixtures.hpp"

#include <fstream>
#include <stdexcept>

namespace tsynth::testing {

std::string data_path(const std::string &name) {
  return std::string(TSYNTH_DATA_DIR) + "/" + name;
}

nlohmann::json load_json(const std::string &name) {
  std::ifstream in(data_path(name));
  if (!in)
    throw std::runtime_error("missing test data " + name);
  return nlohmann::json::parse(in);
}

} // namespace tsynth::testing
