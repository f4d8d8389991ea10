#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "condlab/montecarlo.hpp"

namespace condlab::csv {

// kValidation writes every ValidationRow column; kEstimate stops after p99
// (no bound, margin or verdict).
enum class Table { kValidation, kEstimate };

const std::vector<std::string>& columns(Table table);

// Floats are written with 17 significant digits so rows round-trip exactly;
// infinities are written as "inf". Lines end with '\n'.
void write_rows(std::ostream& out, const std::vector<mc::ValidationRow>& rows,
                Table table = Table::kValidation);

// Reads either table layout (detected from the header). Estimate tables
// leave the bound fields at their defaults.
std::vector<mc::ValidationRow> read_rows(std::istream& in);

std::string format_double(double v);

}  // namespace condlab::csv
