#pragma once

#include <ostream>
#include <string>

#include "ptbilayer/sweep.hpp"

namespace ptbilayer {

enum class TableFormat { kCsv, kJson };

TableFormat parse_table_format(std::string_view name);  // csv | json

/// Header row, then one line per row; numbers with 17 significant digits,
/// NaN as "nan". LF line endings. Metadata is not part of the CSV body.
void write_csv(const ResultTable& table, std::ostream& os);

/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}; NaN as null.
void write_json(const ResultTable& table, std::ostream& os);

/// Metadata alone as a JSON object.
void write_metadata_json(const ResultTable& table, std::ostream& os);

void write_table(const ResultTable& table, TableFormat format, std::ostream& os);

}  // namespace ptbilayer
