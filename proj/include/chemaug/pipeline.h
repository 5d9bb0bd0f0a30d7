//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_PIPELINE_H_
#define CHEMAUG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chemaug/crystal.h"
#include "chemaug/fingerprint.h"
#include "chemaug/molgraph.h"
#include "chemaug/split.h"
#include "chemaug/table.h"

namespace chemaug {

struct CrystalEntry {
  std::string id;
  CrystalStructure structure;
  std::vector<std::optional<double>> labels;
};

struct CrystalRecord {
  std::string id;
  std::string parent_id;
  Provenance provenance = Provenance::kOriginal;
  CrystalStructure structure;
  LabelVector labels;
};

struct FingerprintRow {
  std::string id;
  std::string parent_id;
  Provenance provenance = Provenance::kOriginal;
  ConcatFingerprint fp;  // a single segment for plain fingerprints
  LabelVector labels;
};

struct DatasetRecord {
  Partition partition = Partition::kTrain;
  std::variant<MolGraphRecord, CrystalRecord, FingerprintRow> payload;

  const std::string &id() const;
  const std::string &parent_id() const;
  Provenance provenance() const;
};

struct AugmentedDataset {
  std::vector<DatasetRecord> records;
};

enum class MoleculeStrategy {
  kAtomMask,
  kBondDelete,
  kSubstructure,
  kFpBreak,
  kFpConcat,
};

std::string_view to_string(MoleculeStrategy s);
// Throws kUnknownStrategy.
MoleculeStrategy parse_molecule_strategy(std::string_view name);
std::vector<MoleculeStrategy> parse_molecule_strategies(std::string_view list);

enum class SubstructureMode { kOne, kAll };

struct AugmentConfig {
  std::vector<CrystalStrategy> crystal_strategies =
      default_crystal_strategies();
  CrystalAugmentOptions crystal;

  std::vector<MoleculeStrategy> molecule_strategies;
  double mask_ratio = 0.1;
  double bond_ratio = 0.1;
  SubstructureMode substructure_mode = SubstructureMode::kOne;
  int max_depth = 2;

  // Emit fingerprint rows instead of graph records. Implied by the fp_*
  // strategies.
  bool fingerprints = false;
  FingerprintOptions fp;
  double similarity = 0.6;  // S
  int k = 4;                // K
  int n_concat = 4;
};

// Throws kInconsistentConfig for fp and graph strategies in one run or
// both fp strategies together.
void check_config(const AugmentConfig &config);

/// Originals of every partition in input order, each followed (train only)
/// by its augmented records. Augmented ids are "<parent>__<strategy>", with
/// an index suffix when one strategy yields several records.
AugmentedDataset augment_crystal_set(const std::vector<CrystalEntry> &entries,
                                     const SplitPlan &plan,
                                     const AugmentConfig &config,
                                     std::uint64_t seed);
AugmentedDataset augment_molecule_set(const MoleculeTable &table,
                                      const SplitPlan &plan,
                                      const AugmentConfig &config,
                                      std::uint64_t seed);

struct ExportOptions {
  double cutoff = 8.0;
  int max_neighbors = 12;
  double gaussian_step = 0.2;
  double gaussian_width = 0.2;
};

// Graph records as JSON lines; fingerprint rows as tab-separated lines.
// Returns the number of lines. Throws kIoError.
std::size_t export_jsonl(const AugmentedDataset &ds, std::ostream &out,
                         const ExportOptions &options = {});
std::size_t export_jsonl(const AugmentedDataset &ds,
                         const std::filesystem::path &destination,
                         const ExportOptions &options = {});
std::size_t export_fingerprints(const AugmentedDataset &ds, std::ostream &out);
std::size_t export_fingerprints(const AugmentedDataset &ds,
                                const std::filesystem::path &destination);

// One JSON object without trailing newline.
std::string record_json(const DatasetRecord &rec,
                        const ExportOptions &options = {});
std::string fingerprint_line(const DatasetRecord &rec);

struct SmokeGraph {
  std::vector<int> atom_type;
  std::vector<std::pair<int, int>> edges;
  bool directed = false;  // crystal neighbor lists are per source node
};

SmokeGraph smoke_graph(const MolGraphRecord &rec);
SmokeGraph smoke_graph(const CrystalGraph &graph);

/// h0 = unit vector from FNV-1a(atom_type, component); a = mean of neighbor
/// h0 (zero if isolated); readout = sum over nodes of h0 + a.
/// Throws kMalformedRecord.
std::vector<double> smoke_forward(const SmokeGraph &graph, int dim = 16);

// Worker count from CHEMAUG_THREADS (default: hardware concurrency).
int worker_count();

}  // namespace chemaug

#endif  // CHEMAUG_PIPELINE_H_
