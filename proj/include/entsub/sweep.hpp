#pragma once

#include <optional>
#include <string>

#include "entsub/json_io.hpp"

namespace entsub {
namespace sweep {

/// One experiment cell of a sweep grid.
struct Cell {
    int index = 0;
    std::string kind; // find-product | count-product | find-low-rank | certify | verdict
    SpaceSpec space;
    std::optional<int64_t> s;
    std::optional<int64_t> n;
    std::optional<int64_t> copies;
    std::optional<int64_t> rank;
    uint64_t seed = 0;
    int64_t trials = 0;
    bool product_inputs = false;
    SearchConfig cfg;
};

/// Expands the grid spec {"cells": [...]} into concrete cells. List-valued
/// fields (s, n, copies, seeds) expand cartesian, s slowest then n then
/// copies then seed; cell indices follow that order.
std::vector<Cell> expand(const json& spec);

/// Runs one cell and returns its flat record (the CSV row as JSON).
json run_cell(const Cell& cell);

const std::vector<std::string>& columns();
std::string csv_header();
std::string csv_row(const json& record);

struct SweepOutcome {
    std::vector<json> records; // ordered by cell index
    int computed = 0;
    int resumed = 0;
};

/// Runs every cell not already present in the existing output (resume by
/// cell index), returning all records in cell order.
SweepOutcome run_sweep(const json& spec, const std::optional<std::string>& existing_output,
                       const std::string& format);

std::string render(const SweepOutcome& outcome, const std::string& format);

} // namespace sweep
} // namespace entsub
