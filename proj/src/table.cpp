//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/table.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "chemaug/error.h"
#include "chemaug/smiles.h"

namespace chemaug {

bool read_csv_record(std::istream &in, std::vector<std::string> &fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof())
    return false;

  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c == '\r') {
      if (in.peek() == '\n')
        in.get();
      break;
    } else {
      field += c;
    }
  }
  if (!any)
    return false;
  fields.push_back(std::move(field));
  return true;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c: out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool blank(const std::vector<std::string> &fields) {
  return fields.size() == 1 && trim(fields[0]).empty();
}

}  // namespace

MoleculeTable load_molecule_table(std::istream &in, TaskType task_type,
                                  const TableOptions &options) {
  std::vector<std::string> header;
  if (!read_csv_record(in, header) || blank(header))
    throw Error(ErrorCode::kEmptyTable, "no header row");
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF"))
    header[0].erase(0, 3);

  int smiles_col = -1, id_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name(trim(header[c]));
    if (smiles_col < 0 && lower(name) == "smiles")
      smiles_col = static_cast<int>(c);
    if (!options.id_column.empty() && name == options.id_column)
      id_col = static_cast<int>(c);
  }
  if (smiles_col < 0)
    throw Error(ErrorCode::kMissingSmilesColumn,
                "header has no 'smiles' column");
  if (!options.id_column.empty() && id_col < 0)
    throw Error(ErrorCode::kInvalidArgument,
                "id column '" + options.id_column + "' not in header");

  MoleculeTable table;
  table.task_type = task_type;
  std::vector<int> task_cols;
  if (options.task_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (static_cast<int>(c) == smiles_col || static_cast<int>(c) == id_col)
        continue;
      task_cols.push_back(static_cast<int>(c));
      table.task_names.emplace_back(trim(header[c]));
    }
  } else {
    for (const std::string &want: options.task_columns) {
      auto it = std::find_if(header.begin(), header.end(),
                             [&](const std::string &h) {
                               return trim(h) == want;
                             });
      if (it == header.end())
        throw Error(ErrorCode::kInvalidArgument,
                    "task column '" + want + "' not in header");
      task_cols.push_back(static_cast<int>(it - header.begin()));
      table.task_names.push_back(want);
    }
  }

  std::unordered_set<std::string> ids;
  std::vector<std::string> fields;
  std::size_t row = 0;
  for (; read_csv_record(in, fields); ++row) {
    if (blank(fields)) {
      --row;
      continue;
    }
    fields.resize(std::max(fields.size(), header.size()));
    const std::string smiles(trim(fields[smiles_col]));

    MoleculeRecord rec;
    rec.id = id_col >= 0 ? std::string(trim(fields[id_col]))
                         : std::to_string(row);
    rec.smiles = smiles;
    try {
      rec.mol = parse_smiles(smiles);
    } catch (const Error &e) {
      table.dropped.push_back({ row, smiles, e.what() });
      continue;
    }

    rec.labels.reserve(task_cols.size());
    for (int c: task_cols) {
      const std::string_view cell = trim(fields[c]);
      if (cell.empty()) {
        rec.labels.emplace_back(std::nullopt);
        continue;
      }
      double v = 0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw Error(ErrorCode::kBadNumber,
                    "row " + std::to_string(row) + ", column '" + header[c]
                        + "': '" + std::string(cell) + "'");
      rec.labels.emplace_back(v);
    }

    if (!ids.insert(rec.id).second)
      throw Error(ErrorCode::kInvalidArgument, "duplicate id '" + rec.id + "'");
    table.records.push_back(std::move(rec));
  }
  if (row == 0)
    throw Error(ErrorCode::kEmptyTable, "no data rows");
  return table;
}

}  // namespace chemaug
