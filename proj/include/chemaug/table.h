//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_TABLE_H_
#define CHEMAUG_TABLE_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemaug/molecule.h"

namespace chemaug {

enum class TaskType { kClassification, kRegression };

struct MoleculeRecord {
  std::string id;
  std::string smiles;
  std::vector<std::optional<double>> labels;
  MoleculeGraph mol;
};

struct DroppedRow {
  std::size_t row;  // 0-based data row
  std::string smiles;
  std::string reason;
};

struct MoleculeTable {
  std::vector<MoleculeRecord> records;
  std::vector<std::string> task_names;
  TaskType task_type = TaskType::kRegression;
  std::vector<DroppedRow> dropped;
};

struct TableOptions {
  // Column holding record ids; when empty, ids are the 0-based data row
  // numbers of the input, so dropped rows leave gaps.
  std::string id_column;
  // Label columns; when empty, every column other than smiles/id.
  std::vector<std::string> task_columns;
};

// One RFC-4180 record; handles quoted fields with embedded separators,
// doubled quotes and line breaks. Returns false at end of input.
bool read_csv_record(std::istream &in, std::vector<std::string> &fields);

/// Reads a comma-separated table with a header row and one column named
/// "smiles" (case-insensitive). Empty label cells become absent labels;
/// rows whose SMILES does not parse are dropped and listed in `dropped`.
/// Throws kMissingSmilesColumn, kEmptyTable, or kBadNumber.
MoleculeTable load_molecule_table(std::istream &in, TaskType task_type,
                                  const TableOptions &options = {});

}  // namespace chemaug

#endif  // CHEMAUG_TABLE_H_
