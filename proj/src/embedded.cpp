#include <sstream>

#include "embedded_data.hpp"
#include "ontolint/engine.hpp"

namespace ontolint {

const std::vector<std::string>& default_prefix_registry() {
  static const std::vector<std::string> registry = [] {
    std::vector<std::string> out;
    std::istringstream lines{std::string(embedded::prefix_registry)};
    std::string line;
    while (std::getline(lines, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      out.push_back(line);
    }
    return out;
  }();
  return registry;
}

}  // namespace ontolint
