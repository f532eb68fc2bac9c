#pragma once

#include <string>
#include <vector>

#include "rsrepair/json_io.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

/// Powers of the primitive element ("0", "1", "ξ", "ξ^3") when the tower has
/// a log table, else the B-coordinates "(c0,c1,...)". ascii writes xi for ξ.
std::string format_elem(const Tower& tower, Elem x, bool ascii = false);

/// "g_i" in general; for linear checks beta (x - z) the factored form, e.g.
/// "g_2 = ξ(x-ξ)".
std::string check_label(const RepairScheme& scheme, std::size_t i, bool ascii = false);

/// Rows are checks, columns are evaluation points in code order, and a final
/// rank row. Zero entries print as "·" (ascii "."), the erased column header
/// is marked with "*". Throws CapExceeded for more than max_columns points.
std::string render_table_text(const RepairScheme& scheme, bool ascii = false, std::size_t max_columns = 256);

/// Same table as JSON: points, rows of formatted cells, ranks.
Json render_table_json(const RepairScheme& scheme);

}  // namespace rsrepair
