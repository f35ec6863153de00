#pragma once
// Edit distance and the all-pairs proximity scan behind the term
// differentiation and namespace typo tests. The scan has a serial
// reference implementation and an OpenMP one; both must agree and the
// benchmark tool compares them.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ontolint {

// Classic insert/delete/substitute distance, unit cost, over Unicode code
// points (malformed bytes count as single symbols).
std::size_t levenshtein(std::string_view a, std::string_view b);

// A pair of items with distance <= the scan bound; i < j always.
struct ClosePair {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t distance = 0;

  auto operator<=>(const ClosePair&) const = default;
};

// All unordered pairs with levenshtein(items[i], items[j]) <= max_distance,
// sorted by (i, j).
std::vector<ClosePair> close_pairs_serial(const std::vector<std::string>& items,
                                          std::size_t max_distance);

// Same contract, parallel inner loop when OpenMP is enabled.
std::vector<ClosePair> close_pairs(const std::vector<std::string>& items,
                                   std::size_t max_distance);

}  // namespace ontolint
