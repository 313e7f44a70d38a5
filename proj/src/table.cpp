#include "tableforge/table.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tableforge {
namespace {

const std::map<DialectKind, std::vector<std::string>> kAllowedOptions = {
    {DialectKind::kFlat, {"include_caption", "col_prefix", "header_trailing_pipe", "bare_columns"}},
    {DialectKind::kTitled, {"highlight_block"}},
    {DialectKind::kTagged, {}},
    {DialectKind::kJson, {}},
    {DialectKind::kMarkdown, {}},
};

std::string escape_pipes(const std::string& cell) {
  if (cell.find('|') == std::string::npos) return cell;
  std::string out;
  out.reserve(cell.size() + 4);
  for (char c : cell) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

// "| a | b | c |", with the trailing " |" optional for the header quirk.
std::string pipe_segment(const std::vector<std::string>& cells, bool trailing_pipe) {
  std::string out = "|";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out += ' ';
    out += escape_pipes(cells[i]);
    if (i + 1 < cells.size() || trailing_pipe) out += " |";
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits one markdown row on unescaped pipes; cells come back trimmed with
// "\|" unescaped.
std::vector<std::string> split_markdown_row(std::string_view line) {
  line = trim(line);
  if (!line.empty() && line.front() == '|') line.remove_prefix(1);
  if (!line.empty() && line.back() == '|' && (line.size() < 2 || line[line.size() - 2] != '\\'))
    line.remove_suffix(1);
  std::vector<std::string> cells;
  std::string cur;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '\\' && i + 1 < line.size() && line[i + 1] == '|') {
      cur += '|';
      ++i;
    } else if (c == '|') {
      cells.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.emplace_back(trim(cur));
  return cells;
}

bool is_delimiter_row(const std::vector<std::string>& cells) {
  if (cells.empty()) return false;
  for (const auto& cell : cells) {
    if (cell.find('-') == std::string::npos) return false;
    for (char c : cell)
      if (c != '-' && c != ':') return false;
  }
  return true;
}

}  // namespace

RowTooLong::RowTooLong(std::size_t index)
    : Error("markdown row " + std::to_string(index) + " has more cells than the header"),
      row_index(index) {}

void Table::validate() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != header.size())
      throw InvalidTable("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                         " cells, header has " + std::to_string(header.size()));
  }
  for (const auto& [r, c] : highlighted) {
    if (r >= rows.size() || c >= header.size())
      throw InvalidTable("highlighted cell (" + std::to_string(r) + "," + std::to_string(c) +
                         ") out of range");
  }
}

std::string_view dialect_kind_name(DialectKind kind) {
  switch (kind) {
    case DialectKind::kFlat: return "flat";
    case DialectKind::kTitled: return "titled";
    case DialectKind::kTagged: return "tagged";
    case DialectKind::kJson: return "json";
    case DialectKind::kMarkdown: return "markdown";
  }
  return "flat";
}

DialectKind dialect_kind_from_name(std::string_view name) {
  if (name == "flat") return DialectKind::kFlat;
  if (name == "titled") return DialectKind::kTitled;
  if (name == "tagged") return DialectKind::kTagged;
  if (name == "json") return DialectKind::kJson;
  if (name == "markdown") return DialectKind::kMarkdown;
  throw Error("unknown dialect kind: " + std::string(name));
}

bool SerializationDialect::option(const std::string& key, bool fallback) const {
  auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

void SerializationDialect::validate() const {
  const auto& allowed = kAllowedOptions.at(kind);
  for (const auto& [key, _] : options) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw UnknownDialectOption("option \"" + key + "\" is not valid for dialect " +
                                 std::string(dialect_kind_name(kind)));
  }
}

std::string serialize_flat(const Table& table, const SerializationDialect& dialect) {
  if (dialect.kind != DialectKind::kFlat)
    throw DialectMismatch("serialize_flat called with dialect " +
                          std::string(dialect_kind_name(dialect.kind)));
  dialect.validate();
  if (table.header.empty()) throw EmptyHeader();
  table.validate();

  if (dialect.option("bare_columns", false)) {
    std::string out = "col : ";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (i) out += " | ";
      out += escape_pipes(table.header[i]);
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      out += "\nrow " + std::to_string(r + 1) + " : ";
      for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
        if (i) out += " | ";
        out += escape_pipes(table.rows[r][i]);
      }
    }
    return out;
  }

  std::string out;
  if (dialect.option("include_caption", false) && table.caption)
    out += "[TLE] The table caption is about " + *table.caption + ". ";
  out += "[TAB]";
  if (dialect.option("col_prefix", true)) out += " col:";
  out += ' ';
  out += pipe_segment(table.header, dialect.option("header_trailing_pipe", true));
  for (const auto& row : table.rows) {
    out += " [SEP] ";
    out += pipe_segment(row, /*trailing_pipe=*/true);
  }
  return out;
}

std::vector<std::string> highlighted_values(const Table& table) {
  std::vector<std::string> values;
  values.reserve(table.highlighted.size());
  for (const auto& [r, c] : table.highlighted) {
    if (r >= table.rows.size() || c >= table.rows[r].size())
      throw HighlightOutOfRange("highlighted cell (" + std::to_string(r) + "," +
                                std::to_string(c) + ") out of range");
    values.push_back(table.rows[r][c]);
  }
  return values;
}

std::string serialize_titled(const Table& table, const std::vector<std::string>& values) {
  if (!table.page_title || !table.section_title)
    throw MissingTitle("titled dialect requires page_title and section_title");
  if (table.header.empty()) throw EmptyHeader();
  table.validate();

  std::string out = "[TLE] The Wikipedia page title of this table is " + *table.page_title +
                    ". The Wikipedia section title of this table is " + *table.section_title +
                    ". [TAB] ";
  out += pipe_segment(table.header, /*trailing_pipe=*/true);
  for (const auto& row : table.rows) {
    out += " [SEP] ";
    out += pipe_segment(row, /*trailing_pipe=*/true);
  }
  out += "\n\nThe highlighted cells of the table are: [HIGHLIGHTED_BEGIN] ";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += "[" + values[i] + "]";
    out += (i + 1 < values.size()) ? ", " : " ";
  }
  out += "[HIGHLIGHTED_END]";
  return out;
}

std::string serialize_titled(const Table& table) {
  return serialize_titled(table, highlighted_values(table));
}

std::string serialize_tagged(const Table& table) {
  std::vector<std::string> tokens;
  auto tag_pair = [&tokens](const char* open, const std::string& value, const char* close) {
    tokens.push_back(open);
    tokens.push_back(value);
    tokens.push_back(close);
  };
  if (table.page_title) tag_pair("<page_title>", *table.page_title, "</page_title>");
  if (table.section_title) tag_pair("<section_title>", *table.section_title, "</section_title>");
  tokens.push_back("<table>");
  for (const auto& cell : table.tagged_cells) {
    tokens.push_back("<cell>");
    tokens.push_back(cell.value);
    for (const auto& h : cell.col_headers) tag_pair("<col_header>", h, "</col_header>");
    for (const auto& h : cell.row_headers) tag_pair("<row_header>", h, "</row_header>");
    tokens.push_back("</cell>");
  }
  tokens.push_back("</table>");

  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

bool is_json_number(std::string_view text) {
  // JSON number grammar: -?(0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?
  std::size_t i = 0;
  auto digits = [&](bool at_least_one) {
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    return !at_least_one || i > start;
  };
  if (i < text.size() && text[i] == '-') ++i;
  if (i >= text.size()) return false;
  if (text[i] == '0') {
    ++i;
  } else if (text[i] >= '1' && text[i] <= '9') {
    digits(true);
  } else {
    return false;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    if (!digits(true)) return false;
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    if (!digits(true)) return false;
  }
  return i == text.size();
}

std::string serialize_json(const Table& table) {
  if (table.header.empty()) throw EmptyHeader();
  table.validate();

  auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
  std::string out = "{\"columns\": [";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ", ";
    out += quote(table.header[i]);
  }
  out += "], \"data\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (r) out += ", ";
    out += '[';
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c) out += ", ";
      const std::string& cell = table.rows[r][c];
      out += is_json_number(cell) ? cell : quote(cell);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

std::string render_markdown(const Table& table) {
  if (table.header.empty()) throw EmptyHeader();
  table.validate();

  auto line = [](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& cell : cells) {
      out += escape_pipes(cell);
      out += '|';
    }
    return out;
  };
  std::string out = line(table.header);
  out += "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += "---|";
  for (const auto& row : table.rows) {
    out += '\n';
    out += line(row);
  }
  return out;
}

Table parse_markdown_table(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.size() < 2) throw NoDelimiterRow("expected a header row and a delimiter row");

  Table table;
  table.header = split_markdown_row(lines[0]);
  if (!is_delimiter_row(split_markdown_row(lines[1])))
    throw NoDelimiterRow("line 2 is not a ---- delimiter row");

  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto cells = split_markdown_row(lines[i]);
    if (cells.size() > table.header.size()) throw RowTooLong(i - 2);
    cells.resize(table.header.size());  // pad short rows with empty cells
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string serialize_table(const Table& table, const SerializationDialect& dialect) {
  switch (dialect.kind) {
    case DialectKind::kFlat: return serialize_flat(table, dialect);
    case DialectKind::kTitled:
      dialect.validate();
      if (dialect.option("highlight_block", true)) return serialize_titled(table);
      {
        // Titled without the highlight block: reuse the flat body.
        std::string with = serialize_titled(table, {});
        return with.substr(0, with.rfind("\n\n"));
      }
    case DialectKind::kTagged: return serialize_tagged(table);
    case DialectKind::kJson: return serialize_json(table);
    case DialectKind::kMarkdown: return render_markdown(table);
  }
  throw Error("unreachable dialect kind");
}

}  // namespace tableforge
