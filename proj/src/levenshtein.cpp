#include "ontolint/levenshtein.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ontolint {
namespace {

// Lenient UTF-8 decode: a malformed byte stands for itself.
std::vector<char32_t> codepoints(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if ((b0 & 0xE0) == 0xC0)
      len = 2, cp = b0 & 0x1F;
    else if ((b0 & 0xF0) == 0xE0)
      len = 3, cp = b0 & 0x0F;
    else if ((b0 & 0xF8) == 0xF0)
      len = 4, cp = b0 & 0x07;
    if (len > 1 && i + len <= s.size()) {
      bool ok = true;
      char32_t acc = cp;
      for (std::size_t k = 1; k < len; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
          ok = false;
          break;
        }
        acc = (acc << 6) | (b & 0x3F);
      }
      if (ok) {
        out.push_back(acc);
        i += len;
        continue;
      }
    }
    out.push_back(b0);
    ++i;
  }
  return out;
}

std::size_t distance(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

std::size_t len_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  return distance(codepoints(a), codepoints(b));
}

std::vector<ClosePair> close_pairs_serial(const std::vector<std::string>& items,
                                          std::size_t max_distance) {
  std::vector<std::vector<char32_t>> cps;
  cps.reserve(items.size());
  for (const auto& s : items) cps.push_back(codepoints(s));

  std::vector<ClosePair> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (len_diff(cps[i].size(), cps[j].size()) > max_distance) continue;
      std::size_t d = distance(cps[i], cps[j]);
      if (d <= max_distance) out.push_back({i, j, d});
    }
  }
  return out;
}

std::vector<ClosePair> close_pairs(const std::vector<std::string>& items,
                                   std::size_t max_distance) {
#ifndef _OPENMP
  return close_pairs_serial(items, max_distance);
#else
  std::vector<std::vector<char32_t>> cps;
  cps.reserve(items.size());
  for (const auto& s : items) cps.push_back(codepoints(s));

  const std::size_t n = items.size();
  std::vector<std::vector<ClosePair>> buckets;
  #pragma omp parallel
  {
    #pragma omp single
    buckets.resize(static_cast<std::size_t>(omp_get_num_threads()));

    auto& local = buckets[static_cast<std::size_t>(omp_get_thread_num())];
    #pragma omp for schedule(dynamic, 16)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
      auto i = static_cast<std::size_t>(ii);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (len_diff(cps[i].size(), cps[j].size()) > max_distance) continue;
        std::size_t d = distance(cps[i], cps[j]);
        if (d <= max_distance) local.push_back({i, j, d});
      }
    }
  }

  std::vector<ClosePair> out;
  for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
#endif
}

}  // namespace ontolint
