// Copyright 2026 The Squareplus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqp {

// Text encoding of reals. Data columns use enough significant digits to
// round-trip exactly: 17 for double, 9 for float.
std::string format_real(double v);
std::string format_real(float v);

/// Shortest text that parses back to the same double. Used for labels such
/// as "squareplus(b=4)" and CSV column names.
std::string format_shortest(double v);

/// Strict parse of a whole token ("inf", "-inf" and "nan" accepted).
/// Throws UsageError on trailing garbage or an empty token.
double parse_real(std::string_view text);

/// A header row plus data rows of unquoted comma-separated fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws UsageError when missing.
  std::size_t column(std::string_view name) const;
};

/// Parses LF- (or CRLF-) terminated CSV with a header line. Every row must
/// have as many fields as the header. Quoting is not supported.
CsvTable parse_csv(std::string_view text);

/// Writes fields joined by ',' and terminated by '\n'.
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace sqp
