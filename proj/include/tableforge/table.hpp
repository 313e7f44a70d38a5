#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tableforge/errors.hpp"

namespace tableforge {

// One cell of the tag dialect: a value plus the column/row headers it is
// announced with. ToTTo-style tables carry these directly because the
// header lists are not derivable from a rectangular grid.
struct TaggedCell {
  std::string value;
  std::vector<std::string> col_headers;
  std::vector<std::string> row_headers;
};

// Canonical in-memory table, prior to any serialization. Immutable by
// convention once built; all serializers take it by const reference.
struct Table {
  std::optional<std::string> page_title;
  std::optional<std::string> section_title;
  std::optional<std::string> caption;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // row-major
  // (row, col), 0-based, header excluded.
  std::vector<std::pair<std::size_t, std::size_t>> highlighted;
  std::vector<TaggedCell> tagged_cells;  // used by the tagged dialect only
  bool row_ids_present = false;

  // Throws InvalidTable if a row width differs from the header or a
  // highlighted coordinate is out of range.
  void validate() const;
};

enum class DialectKind { kFlat, kTitled, kTagged, kJson, kMarkdown };

std::string_view dialect_kind_name(DialectKind kind);
DialectKind dialect_kind_from_name(std::string_view name);

// Dialect selector plus per-dataset flags. Unknown option keys are
// rejected at use time, not at construction, so specs stay cheap to copy.
struct SerializationDialect {
  DialectKind kind = DialectKind::kFlat;
  std::map<std::string, bool> options;

  bool option(const std::string& key, bool fallback) const;
  // Throws UnknownDialectOption if an option key is not valid for `kind`.
  void validate() const;
};

struct InvalidTable : Error {
  using Error::Error;
};
struct EmptyHeader : Error {
  EmptyHeader() : Error("table header is empty") {}
};
struct DialectMismatch : Error {
  using Error::Error;
};
struct UnknownDialectOption : Error {
  using Error::Error;
};
struct MissingTitle : Error {
  using Error::Error;
};
struct HighlightOutOfRange : Error {
  using Error::Error;
};
struct NoDelimiterRow : Error {
  using Error::Error;
};
struct RowTooLong : Error {
  explicit RowTooLong(std::size_t row_index);
  std::size_t row_index;
};

// Pipe linearization with [TAB]/[SEP] markers.
//
// Options (all boolean):
//   include_caption      prefix "[TLE] The table caption is about <c>. "
//                        when the table has a caption          (default false)
//   col_prefix           emit "col:" after "[TAB]"             (default true)
//   header_trailing_pipe close the header segment with " |"    (default true)
//   bare_columns         emit the minimal "col : a | b" form
//                        with "row i : ..." lines, no markers  (default false)
//
// The three flag combinations shipped in the dataset registry reproduce the
// three flat variants that appear in the wild (question-answering tables,
// caption-led fact-verification tables, and bare column headers).
std::string serialize_flat(const Table& table, const SerializationDialect& dialect);

// Wikipedia-titled linearization followed by the highlighted-cells block.
// `highlighted_values` render in the given order as "[v1], [v2], ...".
// Option highlight_block (default true) controls whether the block is
// appended at all.
std::string serialize_titled(const Table& table, const std::vector<std::string>& highlighted_values);
std::string serialize_titled(const Table& table);  // resolves table.highlighted

// Resolves highlighted coordinates to cell values, in coordinate order.
std::vector<std::string> highlighted_values(const Table& table);

// Angle-bracket tag dialect. Every field is optional; a table with no
// tagged cells renders as "<table> </table>".
std::string serialize_tagged(const Table& table);

// {"columns": [...], "data": [[...], ...]} with cells emitted as JSON
// numbers when the cell text is itself a valid JSON number literal.
std::string serialize_json(const Table& table);

// Markdown pipe table, no surrounding spaces: |a|b| / |---|---| / |1|2|.
std::string render_markdown(const Table& table);

// Parses a markdown pipe table: header from line 1, a dash delimiter row on
// line 2, data rows after. Cells are trimmed; short rows are padded with
// empty cells; long rows raise RowTooLong.
Table parse_markdown_table(std::string_view text);

// Dispatch on dialect.kind. Markdown maps to render_markdown.
std::string serialize_table(const Table& table, const SerializationDialect& dialect);

// True when `text` matches the JSON number grammar exactly.
bool is_json_number(std::string_view text);

}  // namespace tableforge
