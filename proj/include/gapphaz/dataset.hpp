#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace gapphaz {

/// One failure-time record. A censored record's `time` is its censoring time.
struct Record {
  double time = 0.0;
  bool observed = true;

  friend bool operator==(const Record&, const Record&) = default;
};

/// Failure/censoring records with an optional common censoring horizon tau.
/// When tau is set, censored records carry time == tau.
struct Dataset {
  std::vector<Record> records;
  std::optional<double> tau;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }

  std::size_t observed_count() const noexcept {
    std::size_t n0 = 0;
    for (const auto& r : records) n0 += r.observed ? 1 : 0;
    return n0;
  }

  std::size_t censored_count() const noexcept { return size() - observed_count(); }
};

}  // namespace gapphaz
