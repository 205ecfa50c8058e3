#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lshmine {

/// Outcome of one FI_q query against a level index. Indices refer to
/// positions in the level the index was built from.
struct QueryResult {
  /// Partners whose union with the query reaches the support threshold.
  std::vector<std::size_t> partners;
  /// Compatible partners that were verified against the database, in
  /// inspection order (a superset of `partners`).
  std::vector<std::size_t> inspected;
  /// Bucket hits summed over all tables, self excluded.
  std::size_t collisions = 0;
  /// Bit positions read while verifying candidates (n per inspection).
  std::uint64_t verification_reads = 0;
  /// The inspection budget ran out before any similar partner was found.
  bool early_exit = false;
};

}  // namespace lshmine
