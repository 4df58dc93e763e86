// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace darkcat::cli {

using Cell = std::variant<double, std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

/// Doubles are written with 17 significant digits so output round-trips.
void write_csv(std::ostream& out, const Table& table);

/// Runs job(i) for i in [0, n) on up to `threads` workers and concatenates
/// the returned rows in index order. The lowest-index exception is rethrown.
std::vector<Row> parallel_rows(std::size_t n, int threads, const std::function<std::vector<Row>(std::size_t)>& job);

}  // namespace darkcat::cli
