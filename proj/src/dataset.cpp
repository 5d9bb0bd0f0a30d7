//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <thread>

#include "chemaug/error.h"
#include "chemaug/pipeline.h"
#include "parallel.h"

namespace chemaug {

const std::string &DatasetRecord::id() const {
  return std::visit([](const auto &r) -> const std::string & { return r.id; },
                    payload);
}

const std::string &DatasetRecord::parent_id() const {
  return std::visit(
      [](const auto &r) -> const std::string & { return r.parent_id; },
      payload);
}

Provenance DatasetRecord::provenance() const {
  return std::visit([](const auto &r) { return r.provenance; }, payload);
}

int worker_count() {
  if (const char *env = std::getenv("CHEMAUG_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<int>(std::min<long>(v, 256));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

constexpr std::pair<MoleculeStrategy, std::string_view> kMoleculeNames[] = {
  { MoleculeStrategy::kAtomMask, "atom_mask" },
  { MoleculeStrategy::kBondDelete, "bond_delete" },
  { MoleculeStrategy::kSubstructure, "substructure" },
  { MoleculeStrategy::kFpBreak, "fp_break" },
  { MoleculeStrategy::kFpConcat, "fp_concat" },
};

bool is_fp(MoleculeStrategy s) {
  return s == MoleculeStrategy::kFpBreak || s == MoleculeStrategy::kFpConcat;
}

Provenance provenance_of(CrystalStrategy s) {
  switch (s) {
  case CrystalStrategy::kPerturb:
    return Provenance::kPerturb;
  case CrystalStrategy::kRotate:
    return Provenance::kRotate;
  case CrystalStrategy::kSwapAxes:
    return Provenance::kSwapAxes;
  case CrystalStrategy::kTranslate:
    return Provenance::kTranslate;
  case CrystalStrategy::kSupercell:
    return Provenance::kSupercell;
  }
  return Provenance::kOriginal;
}

std::string child_id(std::string_view parent, std::string_view strategy) {
  std::string id(parent);
  id += "__";
  id += strategy;
  return id;
}

std::string child_id(std::string_view parent, std::string_view strategy,
                     int index) {
  return child_id(parent, strategy) + "_" + std::to_string(index);
}

template <class Record>
AugmentedDataset flatten(std::vector<std::vector<Record>> &&parts) {
  AugmentedDataset ds;
  std::size_t total = 0;
  for (const auto &p: parts)
    total += p.size();
  ds.records.reserve(total);
  for (auto &p: parts)
    for (auto &r: p)
      ds.records.push_back(std::move(r));
  return ds;
}

}  // namespace

std::string_view to_string(MoleculeStrategy s) {
  for (auto [m, name]: kMoleculeNames)
    if (m == s)
      return name;
  return "unknown";
}

MoleculeStrategy parse_molecule_strategy(std::string_view name) {
  for (auto [m, known]: kMoleculeNames)
    if (known == name)
      return m;
  throw Error(ErrorCode::kUnknownStrategy,
              "unknown molecule strategy '" + std::string(name) + "'");
}

std::vector<MoleculeStrategy> parse_molecule_strategies(std::string_view list) {
  std::vector<MoleculeStrategy> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos)
      comma = list.size();
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ')
      item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ')
      item.remove_suffix(1);
    if (!item.empty())
      out.push_back(parse_molecule_strategy(item));
    pos = comma + 1;
  }
  return out;
}

void check_config(const AugmentConfig &config) {
  const auto &ms = config.molecule_strategies;
  const bool any_fp = std::any_of(ms.begin(), ms.end(), is_fp);
  const bool any_graph = std::any_of(ms.begin(), ms.end(),
                                     [](auto s) { return !is_fp(s); });
  if (any_fp && any_graph)
    throw Error(ErrorCode::kInconsistentConfig,
                "fingerprint and graph strategies cannot be combined");
  if (config.fingerprints && any_graph)
    throw Error(ErrorCode::kInconsistentConfig,
                "graph strategies requested for fingerprint output");
  if (std::count(ms.begin(), ms.end(), MoleculeStrategy::kFpBreak) > 0
      && std::count(ms.begin(), ms.end(), MoleculeStrategy::kFpConcat) > 0)
    throw Error(ErrorCode::kInconsistentConfig,
                "fp_break and fp_concat produce rows of different widths");
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (ms[i] == ms[j])
        throw Error(ErrorCode::kInconsistentConfig,
                    "strategy '" + std::string(to_string(ms[i]))
                        + "' listed twice");
  const auto &cs = config.crystal_strategies;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (cs[i] == cs[j])
        throw Error(ErrorCode::kInconsistentConfig,
                    "strategy '" + std::string(to_string(cs[i]))
                        + "' listed twice");
  if (config.k < 1 || config.n_concat < 0 || config.max_depth < 1)
    throw Error(ErrorCode::kInconsistentConfig,
                "K, concatenation count and depth must be positive");
}

AugmentedDataset augment_crystal_set(const std::vector<CrystalEntry> &entries,
                                     const SplitPlan &plan,
                                     const AugmentConfig &config,
                                     std::uint64_t seed) {
  check_config(config);
  const int n = static_cast<int>(entries.size());
  const std::vector<Partition> part = plan.assignment(n);

  std::vector<std::vector<DatasetRecord>> out(n);
  internal::parallel_for(n, [&](std::size_t i) {
    const CrystalEntry &e = entries[i];
    const LabelVector labels = mask_labels(e.labels);
    CrystalRecord original { e.id, "", Provenance::kOriginal, e.structure,
                             labels };
    out[i].push_back({ part[i], std::move(original) });
    if (part[i] != Partition::kTrain || config.crystal_strategies.empty())
      return;
    for (auto &[strategy, s]: augment_crystal(e.structure, e.id,
                                              config.crystal_strategies, seed,
                                              config.crystal)) {
      CrystalRecord rec { child_id(e.id, to_string(strategy)), e.id,
                          provenance_of(strategy), std::move(s), labels };
      out[i].push_back({ Partition::kTrain, std::move(rec) });
    }
  });
  return flatten(std::move(out));
}

namespace {

void molecule_graph_records(const MoleculeRecord &m, Partition partition,
                            const AugmentConfig &config, std::uint64_t seed,
                            std::vector<DatasetRecord> &out) {
  MolGraphRecord original = build_graph_record(m.mol, mask_labels(m.labels));
  original.id = m.id;
  out.push_back({ partition, original });
  if (partition != Partition::kTrain)
    return;

  std::optional<FragmentTree> tree;
  for (MoleculeStrategy s: config.molecule_strategies) {
    const std::string_view name = to_string(s);
    RngState rng(derive_seed(seed, m.id, name));
    switch (s) {
    case MoleculeStrategy::kAtomMask:
    case MoleculeStrategy::kBondDelete: {
      MolGraphRecord rec = s == MoleculeStrategy::kAtomMask
                               ? mask_atoms(original, config.mask_ratio, rng)
                               : delete_bonds(original, config.bond_ratio, rng);
      rec.id = child_id(m.id, name);
      rec.parent_id = m.id;
      out.push_back({ Partition::kTrain, std::move(rec) });
      break;
    }
    case MoleculeStrategy::kSubstructure: {
      if (!tree)
        tree = brics_fragments(m.mol, config.max_depth);
      // no fragments: the original record already covers the fallback
      if (tree->num_fragments() == 0)
        break;
      if (config.substructure_mode == SubstructureMode::kOne) {
        MolGraphRecord rec = remove_substructure(original, *tree, rng);
        rec.id = child_id(m.id, name);
        rec.parent_id = m.id;
        out.push_back({ Partition::kTrain, std::move(rec) });
      } else {
        int k = 0;
        for (MolGraphRecord &rec: all_substructures(original, *tree)) {
          rec.id = child_id(m.id, name, ++k);
          rec.parent_id = m.id;
          out.push_back({ Partition::kTrain, std::move(rec) });
        }
      }
      break;
    }
    default:
      break;
    }
  }
}

void molecule_fp_rows(const MoleculeRecord &m, Partition partition,
                      const AugmentConfig &config, std::uint64_t seed,
                      std::vector<DatasetRecord> &out) {
  const LabelVector labels = mask_labels(m.labels);
  const auto &ms = config.molecule_strategies;
  const bool concat =
      std::find(ms.begin(), ms.end(), MoleculeStrategy::kFpConcat) != ms.end();
  const bool brk =
      std::find(ms.begin(), ms.end(), MoleculeStrategy::kFpBreak) != ms.end();

  auto row = [&](std::string id, Provenance p, ConcatFingerprint fp) {
    FingerprintRow r;
    r.id = std::move(id);
    if (p != Provenance::kOriginal)
      r.parent_id = m.id;
    r.provenance = p;
    r.fp = std::move(fp);
    r.labels = labels;
    out.push_back({ partition, std::move(r) });
  };
  auto single = [](BitFingerprint fp) {
    ConcatFingerprint c;
    c.segments.push_back(std::move(fp));
    return c;
  };

  if (concat) {
    if (partition != Partition::kTrain) {
      row(m.id, Provenance::kOriginal, replicated_fp(m.mol, config.fp, config.k));
      return;
    }
    RngState rng(derive_seed(seed, m.id, "fp_concat"));
    auto entries = fp_concat(m.mol, labels, rng, config.fp, config.k,
                             config.n_concat, config.max_depth);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i == 0)
        row(m.id, Provenance::kOriginal, std::move(entries[i].first));
      else
        row(child_id(m.id, "fp_concat", static_cast<int>(i)),
            Provenance::kFpConcat, std::move(entries[i].first));
    }
    return;
  }
  if (brk && partition == Partition::kTrain) {
    auto entries = fp_break(m.mol, labels, config.fp, config.similarity,
                            config.max_depth);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i == 0)
        row(m.id, Provenance::kOriginal, single(std::move(entries[i].first)));
      else
        row(child_id(m.id, "fp_break", static_cast<int>(i)),
            Provenance::kFpBreak, single(std::move(entries[i].first)));
    }
    return;
  }
  row(m.id, Provenance::kOriginal, single(fingerprint(m.mol, config.fp)));
}

}  // namespace

AugmentedDataset augment_molecule_set(const MoleculeTable &table,
                                      const SplitPlan &plan,
                                      const AugmentConfig &config,
                                      std::uint64_t seed) {
  check_config(config);
  const auto &ms = config.molecule_strategies;
  const bool fps =
      config.fingerprints || std::any_of(ms.begin(), ms.end(), is_fp);
  const int n = static_cast<int>(table.records.size());
  const std::vector<Partition> part = plan.assignment(n);

  std::vector<std::vector<DatasetRecord>> out(n);
  internal::parallel_for(n, [&](std::size_t i) {
    if (fps)
      molecule_fp_rows(table.records[i], part[i], config, seed, out[i]);
    else
      molecule_graph_records(table.records[i], part[i], config, seed, out[i]);
  });
  return flatten(std::move(out));
}

}  // namespace chemaug
