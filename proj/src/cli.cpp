//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/cli.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chemaug/cif.h"
#include "chemaug/error.h"
#include "chemaug/hash.h"
#include "chemaug/pipeline.h"
#include "parallel.h"

namespace chemaug {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

// A data error tied to an input or output file.
class FileError: public std::runtime_error {
public:
  FileError(const std::string &file, const std::string &what)
      : std::runtime_error(file + ": " + what) { }
};

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  std::uint64_t seed = 0;
  std::string method;
  std::string strategies;
  bool strategies_given = false;
  double mask_ratio = 0.1;
  double bond_ratio = 0.1;
  std::string fp_kind = "ecfp";
  int nbits = 2048;
  int radius = 2;
  int max_path = 7;
  double similarity = 0.6;
  int k = 4;
  int n_concat = 4;
  double cutoff = 8.0;
  int max_neighbors = 12;
  double gaussian_step = 0.2;
  double gaussian_width = 0.2;
  int kfold = 3;
  int fold = 0;
  double max_dist = 0.5;
  double translate_fraction = 0.25;
  std::vector<int> supercell_scale { 2, 2, 2 };
  std::string substructure_mode = "one";
  int max_depth = 2;
  std::string id_column;
  std::string task_type = "regression";
};

// ---- inputs ----

struct Inputs {
  std::optional<std::string> table_path;
  std::optional<MoleculeTable> table;
  std::optional<std::string> crystal_path;
  std::vector<CrystalEntry> crystals;
  std::optional<std::string> plan_path;
  std::vector<SplitPlan> plans;
  int plan_n = 0;
};

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw FileError(p.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Fn>
auto with_file(const std::string &file, Fn &&fn) {
  try {
    return fn();
  } catch (const Error &e) {
    throw FileError(file, e.what());
  }
}

void load_crystal_labels(const fs::path &csv, std::vector<CrystalEntry> &out) {
  std::ifstream in(csv, std::ios::binary);
  if (!in)
    throw FileError(csv.string(), "cannot open for reading");
  std::vector<std::string> header, fields;
  if (!read_csv_record(in, header))
    throw FileError(csv.string(), to_string(ErrorCode::kEmptyTable).data());
  const auto id_it = std::find(header.begin(), header.end(), "id");
  if (id_it == header.end())
    throw FileError(csv.string(), "labels table needs an 'id' column");
  const std::size_t id_col = id_it - header.begin();
  const std::size_t n_tasks = header.size() - 1;

  std::map<std::string, std::vector<std::optional<double>>> by_id;
  std::size_t row = 0;
  while (read_csv_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty())
      continue;
    fields.resize(header.size());
    std::vector<std::optional<double>> labels;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == id_col)
        continue;
      if (fields[c].empty()) {
        labels.emplace_back();
        continue;
      }
      double v = 0;
      const auto [ptr, ec] = std::from_chars(
          fields[c].data(), fields[c].data() + fields[c].size(), v);
      if (ec != std::errc() || ptr != fields[c].data() + fields[c].size())
        throw FileError(csv.string(), "BadNumber at row " + std::to_string(row)
                                          + ", column '" + header[c] + "'");
      labels.emplace_back(v);
    }
    by_id[fields[id_col]] = std::move(labels);
    ++row;
  }
  for (CrystalEntry &e: out) {
    auto it = by_id.find(e.id);
    e.labels = it != by_id.end()
                   ? it->second
                   : std::vector<std::optional<double>>(n_tasks);
  }
}

std::vector<CrystalEntry> load_crystal_dir(const fs::path &dir) {
  std::vector<fs::path> files;
  for (const auto &entry: fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cif")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw FileError(dir.string(), "no .cif files");

  std::vector<CrystalEntry> out(files.size());
  internal::parallel_for(files.size(), [&](std::size_t i) {
    const std::string text = read_file(files[i]);
    out[i].id = files[i].stem().string();
    out[i].structure = with_file(files[i].string(), [&] {
      return parse_cif(text);
    });
  });
  if (fs::exists(dir / "labels.csv"))
    load_crystal_labels(dir / "labels.csv", out);
  return out;
}

Inputs load_inputs(const Options &opt, bool need_data = true) {
  Inputs in;
  for (const std::string &path: opt.inputs) {
    const fs::path p(path);
    if (!fs::exists(p))
      throw FileError(path, "no such file or directory");
    if (fs::is_directory(p) || p.extension() == ".cif") {
      if (in.crystal_path || in.table_path)
        throw FileError(path, "more than one data input");
      in.crystal_path = path;
      if (fs::is_directory(p)) {
        in.crystals = load_crystal_dir(p);
      } else {
        CrystalEntry e;
        e.id = p.stem().string();
        e.structure = with_file(path, [&] { return parse_cif(read_file(p)); });
        in.crystals.push_back(std::move(e));
      }
    } else if (p.extension() == ".json") {
      if (in.plan_path)
        throw FileError(path, "more than one split plan");
      in.plan_path = path;
      in.plans = with_file(path, [&] {
        return plans_from_json(read_file(p), &in.plan_n);
      });
    } else {
      if (in.crystal_path || in.table_path)
        throw FileError(path, "more than one data input");
      in.table_path = path;
      std::ifstream f(p, std::ios::binary);
      if (!f)
        throw FileError(path, "cannot open for reading");
      TableOptions topt;
      topt.id_column = opt.id_column;
      const TaskType type = opt.task_type == "classification"
                                ? TaskType::kClassification
                                : TaskType::kRegression;
      in.table = with_file(path, [&] {
        return load_molecule_table(f, type, topt);
      });
    }
  }
  if (need_data && !in.crystal_path && !in.table_path)
    throw CLI::ValidationError("--input", "needs a CSV table or CIF input");
  return in;
}

int data_size(const Inputs &in) {
  return in.table ? static_cast<int>(in.table->records.size())
                  : static_cast<int>(in.crystals.size());
}

SplitPlan select_plan(const Inputs &in, const Options &opt) {
  const int n = data_size(in);
  if (in.plan_path) {
    if (in.plan_n != n)
      throw FileError(*in.plan_path,
                      "plan is for " + std::to_string(in.plan_n)
                          + " records, input has " + std::to_string(n));
    if (opt.fold < 0 || opt.fold >= static_cast<int>(in.plans.size()))
      throw CLI::ValidationError("--fold", "no such fold in the plan");
    SplitPlan plan = in.plans[opt.fold];
    with_file(*in.plan_path, [&] { return plan.assignment(n); });
    return plan;
  }
  if (in.table)
    return scaffold_split(*in.table);
  return random_split(n, opt.seed);
}

// ---- outputs ----

struct OutputFile {
  fs::path path;
  std::size_t lines = 0;
};

ordered_json describe_outputs(const std::vector<OutputFile> &files,
                              const fs::path &base) {
  ordered_json list = ordered_json::array();
  for (const OutputFile &f: files) {
    const std::string bytes = read_file(f.path);
    ordered_json j;
    j["path"] = fs::relative(f.path, base).generic_string();
    j["bytes"] = bytes.size();
    j["lines"] = std::count(bytes.begin(), bytes.end(), '\n');
    j["fnv1a64"] = hex_u64(fnv1a64(bytes));
    list.push_back(std::move(j));
  }
  return list;
}

void write_text(const fs::path &p, const std::string &text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush())
    throw FileError(p.string(), "write failed");
}

fs::path manifest_path_for_file(const fs::path &out) {
  return out.parent_path() / (out.stem().string() + ".manifest.json");
}

void write_manifest(const fs::path &manifest, const std::string &command,
                    const Options &opt, const ordered_json &config,
                    const ordered_json &counts,
                    const std::vector<OutputFile> &files) {
  ordered_json m;
  m["command"] = command;
  m["inputs"] = opt.inputs;
  m["config"] = config;
  m["counts"] = counts;
  m["outputs"] = describe_outputs(files, manifest.parent_path().empty()
                                             ? fs::path(".")
                                             : manifest.parent_path());
  write_text(manifest, m.dump(2) + "\n");
}

void ensure_parent(const fs::path &p) {
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
}

// ---- config ----

AugmentConfig make_config(const Options &opt, bool crystal) {
  AugmentConfig c;
  if (crystal) {
    c.crystal_strategies = opt.strategies_given
                               ? parse_crystal_strategies(opt.strategies)
                               : default_crystal_strategies();
  } else {
    c.crystal_strategies.clear();
    c.molecule_strategies = parse_molecule_strategies(
        opt.strategies_given ? std::string_view(opt.strategies)
                             : std::string_view(
                                 "atom_mask,bond_delete,substructure"));
  }
  c.crystal.max_dist = opt.max_dist;
  c.crystal.translate_fraction = opt.translate_fraction;
  if (opt.supercell_scale.size() != 3)
    throw CLI::ValidationError("--supercell", "needs three integers");
  c.crystal.supercell_scale = { opt.supercell_scale[0], opt.supercell_scale[1],
                                opt.supercell_scale[2] };
  c.mask_ratio = opt.mask_ratio;
  c.bond_ratio = opt.bond_ratio;
  c.substructure_mode = opt.substructure_mode == "all" ? SubstructureMode::kAll
                                                       : SubstructureMode::kOne;
  c.max_depth = opt.max_depth;
  c.fp.kind = parse_fingerprint_kind(opt.fp_kind);
  c.fp.nbits = opt.nbits;
  c.fp.radius = opt.radius;
  c.fp.max_path = opt.max_path;
  c.similarity = opt.similarity;
  c.k = opt.k;
  c.n_concat = opt.n_concat;
  return c;
}

ordered_json config_json(const Options &opt, const AugmentConfig *c,
                         const SplitPlan *plan) {
  ordered_json j;
  j["seed"] = opt.seed;
  if (plan != nullptr) {
    j["split_method"] = to_string(plan->method);
    j["fold"] = plan->fold;
  }
  if (c != nullptr) {
    ordered_json cs = ordered_json::array();
    for (auto s: c->crystal_strategies)
      cs.push_back(to_string(s));
    ordered_json ms = ordered_json::array();
    for (auto s: c->molecule_strategies)
      ms.push_back(to_string(s));
    j["crystal_strategies"] = cs;
    j["molecule_strategies"] = ms;
    j["max_dist"] = c->crystal.max_dist;
    j["translate_fraction"] = c->crystal.translate_fraction;
    j["supercell"] = c->crystal.supercell_scale;
    j["mask_ratio"] = c->mask_ratio;
    j["bond_ratio"] = c->bond_ratio;
    j["substructure_mode"] =
        c->substructure_mode == SubstructureMode::kAll ? "all" : "one";
    j["max_depth"] = c->max_depth;
    j["fp_kind"] = to_string(c->fp.kind);
    j["nbits"] = c->fp.nbits;
    j["radius"] = c->fp.radius;
    j["max_path"] = c->fp.max_path;
    j["S"] = c->similarity;
    j["K"] = c->k;
    j["n_concat"] = c->n_concat;
  }
  j["cutoff"] = opt.cutoff;
  j["max_neighbors"] = opt.max_neighbors;
  j["gaussian_step"] = opt.gaussian_step;
  j["gaussian_width"] = opt.gaussian_width;
  return j;
}

ordered_json dataset_counts(const AugmentedDataset &ds, const Inputs &in) {
  std::size_t train = 0, valid = 0, test = 0, augmented = 0;
  for (const DatasetRecord &r: ds.records) {
    if (r.provenance() != Provenance::kOriginal)
      ++augmented;
    switch (r.partition) {
    case Partition::kTrain:
      ++train;
      break;
    case Partition::kValid:
      ++valid;
      break;
    case Partition::kTest:
      ++test;
      break;
    }
  }
  ordered_json j;
  j["inputs"] = data_size(in);
  if (in.table)
    j["dropped"] = in.table->dropped.size();
  j["records"] = ds.records.size();
  j["augmented"] = augmented;
  j["train"] = train;
  j["valid"] = valid;
  j["test"] = test;
  return j;
}

// ---- subcommands ----

int cmd_split(const Options &opt, std::ostream &out) {
  const Inputs in = load_inputs(opt);
  const int n = data_size(in);
  std::string method = opt.method;
  if (method.empty())
    method = in.table ? "scaffold" : "random";
  std::vector<SplitPlan> plans;
  switch (parse_split_method(method)) {
  case SplitMethod::kRandom:
    plans.push_back(random_split(n, opt.seed));
    break;
  case SplitMethod::kScaffold:
    if (!in.table)
      throw CLI::ValidationError("--method", "scaffold split needs molecules");
    plans.push_back(scaffold_split(*in.table));
    plans.back().seed = opt.seed;
    break;
  case SplitMethod::kKfold:
    plans = kfold(n, opt.kfold, opt.seed);
    break;
  }

  const fs::path dest(opt.out);
  ensure_parent(dest);
  write_text(dest, plans_to_json(plans, n));

  ordered_json config;
  config["seed"] = opt.seed;
  config["method"] = to_string(plans.front().method);
  if (plans.front().method == SplitMethod::kKfold)
    config["kfold"] = opt.kfold;
  ordered_json counts;
  counts["inputs"] = n;
  if (in.table)
    counts["dropped"] = in.table->dropped.size();
  counts["plans"] = plans.size();
  counts["train"] = plans.front().train.size();
  counts["valid"] = plans.front().valid.size();
  counts["test"] = plans.front().test.size();
  write_manifest(manifest_path_for_file(dest), "split", opt, config, counts,
                 { { dest } });
  out << "split: " << n << " records -> " << plans.front().train.size() << "/"
      << plans.front().valid.size() << "/" << plans.front().test.size()
      << " (train/valid/test)\n";
  return kExitOk;
}

int cmd_augment_crystal(const Options &opt, std::ostream &out) {
  const Inputs in = load_inputs(opt);
  if (!in.crystal_path)
    throw CLI::ValidationError("--input", "augment-crystal needs CIF input");
  const SplitPlan plan = select_plan(in, opt);
  const AugmentConfig config = make_config(opt, true);
  check_config(config);
  const std::vector<Partition> part = plan.assignment(data_size(in));

  const fs::path dir(opt.out);
  fs::create_directories(dir);
  std::vector<std::vector<OutputFile>> written(in.crystals.size());
  internal::parallel_for(in.crystals.size(), [&](std::size_t i) {
    if (part[i] != Partition::kTrain || config.crystal_strategies.empty())
      return;
    const CrystalEntry &e = in.crystals[i];
    for (const auto &[strategy, s]:
         augment_crystal(e.structure, e.id, config.crystal_strategies,
                         opt.seed, config.crystal)) {
      const std::string name = e.id + "__" + std::string(to_string(strategy));
      const fs::path p = dir / (name + ".cif");
      write_text(p, write_cif(s, name));
      written[i].push_back({ p });
    }
  });
  std::vector<OutputFile> files;
  for (auto &w: written)
    files.insert(files.end(), w.begin(), w.end());

  ordered_json counts;
  counts["inputs"] = data_size(in);
  counts["train"] = plan.train.size();
  counts["valid"] = plan.valid.size();
  counts["test"] = plan.test.size();
  counts["augmented_files"] = files.size();
  counts["augmented_train_total"] = plan.train.size() + files.size();
  write_manifest(dir / "manifest.json", "augment-crystal", opt,
                 config_json(opt, &config, &plan), counts, files);
  out << "augment-crystal: wrote " << files.size() << " CIF files to "
      << dir.generic_string() << "\n";
  return kExitOk;
}

ExportOptions export_options(const Options &opt) {
  return { opt.cutoff, opt.max_neighbors, opt.gaussian_step,
           opt.gaussian_width };
}

int write_dataset(const std::string &command, const Options &opt,
                  const Inputs &in, const SplitPlan &plan,
                  const AugmentConfig &config, bool fingerprints,
                  std::ostream &out) {
  const AugmentedDataset ds =
      in.table ? augment_molecule_set(*in.table, plan, config, opt.seed)
               : augment_crystal_set(in.crystals, plan, config, opt.seed);
  const fs::path dest(opt.out);
  ensure_parent(dest);
  const std::size_t lines = fingerprints
                                ? export_fingerprints(ds, dest)
                                : export_jsonl(ds, dest, export_options(opt));
  write_manifest(manifest_path_for_file(dest), command, opt,
                 config_json(opt, &config, &plan), dataset_counts(ds, in),
                 { { dest, lines } });
  out << command << ": wrote " << lines << " records to "
      << dest.generic_string() << "\n";
  return kExitOk;
}

int cmd_augment_molecule(const Options &opt, std::ostream &out) {
  const Inputs in = load_inputs(opt);
  if (!in.table)
    throw CLI::ValidationError("--input", "augment-molecule needs a CSV table");
  const SplitPlan plan = select_plan(in, opt);
  AugmentConfig config = make_config(opt, false);
  check_config(config);
  const auto &ms = config.molecule_strategies;
  const bool fps = std::any_of(ms.begin(), ms.end(), [](auto s) {
    return s == MoleculeStrategy::kFpBreak || s == MoleculeStrategy::kFpConcat;
  });
  return write_dataset("augment-molecule", opt, in, plan, config, fps, out);
}

int cmd_fingerprint(const Options &opt, std::ostream &out) {
  const Inputs in = load_inputs(opt);
  if (!in.table)
    throw CLI::ValidationError("--input", "fingerprint needs a CSV table");
  const SplitPlan plan = select_plan(in, opt);
  Options plain = opt;
  plain.strategies = "";
  plain.strategies_given = true;
  AugmentConfig config = make_config(plain, false);
  config.fingerprints = true;
  return write_dataset("fingerprint", opt, in, plan, config, true, out);
}

int cmd_export(const Options &opt, std::ostream &out) {
  const Inputs in = load_inputs(opt);
  const SplitPlan plan = select_plan(in, opt);
  const AugmentConfig config = make_config(opt, in.crystal_path.has_value());
  const auto &ms = config.molecule_strategies;
  if (std::any_of(ms.begin(), ms.end(), [](auto s) {
        return s == MoleculeStrategy::kFpBreak
               || s == MoleculeStrategy::kFpConcat;
      }))
    throw CLI::ValidationError("--strategies",
                               "export writes graphs; use augment-molecule "
                               "for fingerprint strategies");
  return write_dataset("export", opt, in, plan, config, false, out);
}

int cmd_check(const Options &opt, std::ostream &out) {
  const Inputs in = load_inputs(opt, false);
  ordered_json report;
  report["inputs"] = opt.inputs;
  if (in.table) {
    report["molecules"] = in.table->records.size();
    report["tasks"] = in.table->task_names;
    ordered_json dropped = ordered_json::array();
    for (const DroppedRow &d: in.table->dropped)
      dropped.push_back({ { "row", d.row },
                          { "smiles", d.smiles },
                          { "reason", d.reason } });
    report["dropped"] = dropped;
  }
  if (in.crystal_path) {
    std::size_t sites = 0;
    for (const CrystalEntry &e: in.crystals) {
      with_file(e.id, [&] {
        validate(e.structure);
        return 0;
      });
      sites += e.structure.sites.size();
    }
    report["crystals"] = in.crystals.size();
    report["sites"] = sites;
  }
  if (in.plan_path) {
    report["plans"] = in.plans.size();
    if (in.table || in.crystal_path) {
      const int n = data_size(in);
      if (in.plan_n != n)
        throw FileError(*in.plan_path, "plan is for "
                                           + std::to_string(in.plan_n)
                                           + " records, input has "
                                           + std::to_string(n));
    }
    for (const SplitPlan &p: in.plans)
      with_file(*in.plan_path, [&] { return p.assignment(in.plan_n); });
  }
  const std::string text = report.dump(2) + "\n";
  if (!opt.out.empty()) {
    const fs::path dest(opt.out);
    ensure_parent(dest);
    write_text(dest, text);
    ordered_json counts;
    counts["inputs"] = opt.inputs.size();
    write_manifest(manifest_path_for_file(dest), "check", opt,
                   config_json(opt, nullptr, nullptr), counts, { { dest } });
  }
  out << text;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app { "chemaug: augmentation toolkit for crystals and molecules" };
  app.name("chemaug");
  app.require_subcommand(1, 1);
  Options opt;

  auto add_common = [&](CLI::App *sub, bool out_required) {
    sub->add_option("--input", opt.inputs,
                    "CSV table, CIF file or directory, or split plan JSON")
        ->required()
        ->allow_extra_args(false);
    auto *o = sub->add_option("--out", opt.out, "output file or directory");
    if (out_required)
      o->required();
    sub->add_option("--seed", opt.seed, "64-bit seed");
    sub->add_option("--id-column", opt.id_column, "CSV column with record ids");
    sub->add_option("--task-type", opt.task_type)
        ->check(CLI::IsMember({ "classification", "regression" }));
    sub->add_option("--fold", opt.fold, "plan index in a k-fold plan file");
  };
  auto add_strategies = [&](CLI::App *sub) {
    sub->add_option("--strategies", opt.strategies,
                    "comma-separated strategy list")
        ->each([&](const std::string &) { opt.strategies_given = true; });
  };
  auto add_crystal = [&](CLI::App *sub) {
    sub->add_option("--max-dist", opt.max_dist, "displacement bound (A)");
    sub->add_option("--translate-fraction", opt.translate_fraction);
    sub->add_option("--supercell", opt.supercell_scale, "three integers")
        ->expected(3)
        ->delimiter(',');
  };
  auto add_graph = [&](CLI::App *sub) {
    sub->add_option("--cutoff", opt.cutoff, "neighbor cutoff (A)");
    sub->add_option("--max-neighbors", opt.max_neighbors);
    sub->add_option("--gaussian-step", opt.gaussian_step);
    sub->add_option("--gaussian-width", opt.gaussian_width);
  };
  auto add_molecule = [&](CLI::App *sub) {
    sub->add_option("--mask-ratio", opt.mask_ratio);
    sub->add_option("--bond-ratio", opt.bond_ratio);
    sub->add_option("--substructure-mode", opt.substructure_mode)
        ->check(CLI::IsMember({ "one", "all" }));
    sub->add_option("--max-depth", opt.max_depth);
  };
  auto add_fp = [&](CLI::App *sub) {
    sub->add_option("--fp-kind", opt.fp_kind)
        ->check(CLI::IsMember({ "ecfp", "rdkfp" }));
    sub->add_option("--nbits", opt.nbits);
    sub->add_option("--radius", opt.radius);
    sub->add_option("--max-path", opt.max_path);
  };

  auto *split = app.add_subcommand("split", "write a split plan");
  add_common(split, true);
  split->add_option("--method", opt.method)
      ->check(CLI::IsMember({ "random", "scaffold", "kfold" }));
  split->add_option("--kfold", opt.kfold, "number of folds");

  auto *aug_c = app.add_subcommand("augment-crystal",
                                   "write augmented CIFs for the train set");
  add_common(aug_c, true);
  add_strategies(aug_c);
  add_crystal(aug_c);

  auto *aug_m = app.add_subcommand(
      "augment-molecule", "graph or fingerprint augmentation of a table");
  add_common(aug_m, true);
  add_strategies(aug_m);
  add_molecule(aug_m);
  add_fp(aug_m);
  add_graph(aug_m);
  aug_m->add_option("--S", opt.similarity, "fp_break similarity threshold");
  aug_m->add_option("--K", opt.k, "segments per concatenation");
  aug_m->add_option("--n-concat", opt.n_concat);

  auto *fp = app.add_subcommand("fingerprint", "fingerprint dump");
  add_common(fp, true);
  add_fp(fp);

  auto *exp = app.add_subcommand("export", "model-ready JSON lines");
  add_common(exp, true);
  add_strategies(exp);
  add_crystal(exp);
  add_molecule(exp);
  add_graph(exp);

  auto *check = app.add_subcommand("check", "validate inputs");
  add_common(check, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "chemaug: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (split->parsed())
      return cmd_split(opt, out);
    if (aug_c->parsed())
      return cmd_augment_crystal(opt, out);
    if (aug_m->parsed())
      return cmd_augment_molecule(opt, out);
    if (fp->parsed())
      return cmd_fingerprint(opt, out);
    if (exp->parsed())
      return cmd_export(opt, out);
    if (check->parsed())
      return cmd_check(opt, out);
  } catch (const CLI::ParseError &e) {
    err << "chemaug: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FileError &e) {
    err << "chemaug: error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const Error &e) {
    switch (e.code()) {
    case ErrorCode::kUnknownStrategy:
    case ErrorCode::kInconsistentConfig:
    case ErrorCode::kBadK:
    case ErrorCode::kBadScale:
    case ErrorCode::kInvalidArgument:
      err << "chemaug: " << e.what() << "\n";
      return kExitUsage;
    default:
      err << "chemaug: error: " << e.what() << "\n";
      return kExitDataError;
    }
  } catch (const fs::filesystem_error &e) {
    err << "chemaug: error: " << e.what() << "\n";
    return kExitDataError;
  }
  err << "chemaug: no subcommand\n";
  return kExitUsage;
}

int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
    args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace chemaug
