//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <unistd.h>

#include <json.hpp>

#include "chemaug/cif.h"
#include "chemaug/cli.h"
#include "chemaug/hash.h"
#include "test_support.h"

using namespace chemaug;
using namespace chemaug::testing;
namespace fs = std::filesystem;

namespace {

class Cli: public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path()
           / ("chemaug_cli_" + std::to_string(::getpid()) + "_"
              + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "cifs");

    std::ofstream csv(dir_ / "mols.csv");
    csv << "smiles,active\n";
    int r = 0;
    for (const std::string &s: corpus_smiles())
      csv << s << "," << (r++ % 4 == 0 ? "1" : "0") << "\n";
    csv << "C1CC,1\n";  // dropped: unclosed ring

    RngState rng(12);
    std::ofstream labels(dir_ / "cifs" / "labels.csv");
    labels << "id,energy\n";
    for (int i = 0; i < 12; ++i) {
      const std::string id = "s" + std::to_string(10 + i);
      std::ofstream(dir_ / "cifs" / (id + ".cif"))
          << write_cif(random_structure(rng, 4), id);
      labels << id << "," << -1.0 - 0.1 * i << "\n";
    }
  }

  void TearDown() override { fs::remove_all(dir_); }

  int run_cli(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::string path(const std::string &rel) const {
    return (dir_ / rel).string();
  }

  static std::size_t count_lines(const fs::path &p) {
    const std::string text = read_file(p);
    return std::count(text.begin(), text.end(), '\n');
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}), kExitUsage);
  EXPECT_EQ(run_cli({ "frobnicate" }), kExitUsage);
  EXPECT_EQ(run_cli({ "split" }), kExitUsage);
  EXPECT_EQ(run_cli({ "--help" }), kExitOk);
  EXPECT_EQ(run_cli({ "augment-molecule", "--input", path("mols.csv"),
                      "--out", path("o.jsonl"), "--strategies", "twist" }),
            kExitUsage);
  EXPECT_EQ(run_cli({ "augment-molecule", "--input", path("mols.csv"),
                      "--out", path("o.tsv"), "--strategies",
                      "fp_break,fp_concat" }),
            kExitUsage);
}

TEST_F(Cli, DataErrors) {
  EXPECT_EQ(run_cli({ "check", "--input", path("missing.csv") }),
            kExitDataError);
  EXPECT_NE(err_.str().find("missing.csv"), std::string::npos);
  std::ofstream(dir_ / "bad.cif") << "data_x\n_cell_length_a 3\n";
  EXPECT_EQ(run_cli({ "check", "--input", path("bad.cif") }), kExitDataError);
  EXPECT_NE(err_.str().find("MissingCellParameter"), std::string::npos);
}

TEST_F(Cli, CheckReportsDroppedRows) {
  ASSERT_EQ(run_cli({ "check", "--input", path("mols.csv") }), kExitOk);
  const auto report = nlohmann::json::parse(out_.str());
  EXPECT_EQ(report["molecules"], 200);
  ASSERT_EQ(report["dropped"].size(), 1U);
  EXPECT_EQ(report["dropped"][0]["row"], 200);
  ASSERT_EQ(run_cli({ "check", "--input", path("cifs") }), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out_.str())["crystals"], 12);
}

TEST_F(Cli, SplitWritesPlanAndManifest) {
  ASSERT_EQ(run_cli({ "split", "--input", path("mols.csv"), "--out",
                      path("plan.json") }),
            kExitOk)
      << err_.str();
  const auto plan = nlohmann::json::parse(read_file(dir_ / "plan.json"));
  EXPECT_EQ(plan["method"], "scaffold_8_1_1");
  EXPECT_EQ(plan["n"], 200);
  const auto manifest =
      nlohmann::json::parse(read_file(dir_ / "plan.manifest.json"));
  EXPECT_EQ(manifest["command"], "split");
  ASSERT_EQ(manifest["outputs"].size(), 1U);
  EXPECT_EQ(manifest["outputs"][0]["path"], "plan.json");
  EXPECT_EQ(manifest["outputs"][0]["fnv1a64"],
            hex_u64(fnv1a64(read_file(dir_ / "plan.json"))));

  ASSERT_EQ(run_cli({ "split", "--input", path("cifs"), "--out",
                      path("kf.json"), "--method", "kfold", "--kfold", "3" }),
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(read_file(dir_ / "kf.json"))["plans"].size(),
            3U);
}

TEST_F(Cli, AugmentMoleculeGraphsAndFingerprints) {
  ASSERT_EQ(run_cli({ "augment-molecule", "--input", path("mols.csv"),
                      "--out", path("aug.jsonl"), "--seed", "5" }),
            kExitOk)
      << err_.str();
  const auto m = nlohmann::json::parse(read_file(dir_ / "aug.manifest.json"));
  EXPECT_EQ(count_lines(dir_ / "aug.jsonl"), m["counts"]["records"]);
  EXPECT_EQ(m["config"]["molecule_strategies"].size(), 3U);

  ASSERT_EQ(run_cli({ "augment-molecule", "--input", path("mols.csv"),
                      "--out", path("cat.tsv"), "--strategies", "fp_concat" }),
            kExitOk)
      << err_.str();
  std::ifstream in(dir_ / "cat.tsv");
  std::string line;
  while (std::getline(in, line)) {
    const auto f = split_tabs(line);
    ASSERT_EQ(f.size(), 9U);
    EXPECT_EQ(f[2], "8192");
  }
}

TEST_F(Cli, AugmentCrystalWritesCifs) {
  ASSERT_EQ(run_cli({ "split", "--input", path("cifs"), "--out",
                      path("plan.json"), "--seed", "3" }),
            kExitOk);
  ASSERT_EQ(run_cli({ "augment-crystal", "--input", path("cifs"), "--input",
                      path("plan.json"), "--out", path("aug"), "--seed", "3" }),
            kExitOk)
      << err_.str();
  const auto m = nlohmann::json::parse(read_file(dir_ / "aug" / "manifest.json"));
  const int train = m["counts"]["train"];
  EXPECT_EQ(train, 7);  // 12 -> test 3, valid 2
  EXPECT_EQ(m["outputs"].size(), 3U * train);
  for (const auto &o: m["outputs"]) {
    const fs::path p = dir_ / "aug" / o["path"].get<std::string>();
    const CrystalStructure s = parse_cif(read_file(p));
    EXPECT_GT(s.num_sites(), 0);
  }
}

TEST_F(Cli, ExportAndFingerprint) {
  ASSERT_EQ(run_cli({ "export", "--input", path("cifs"), "--out",
                      path("graphs.jsonl"), "--cutoff", "6",
                      "--max-neighbors", "8" }),
            kExitOk)
      << err_.str();
  std::ifstream in(dir_ / "graphs.jsonl");
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["kind"], "crystal");
    EXPECT_EQ(j["y_mask"][0], 1);
    ++n;
  }
  EXPECT_EQ(n, 12 + 3 * 7);  // 12 -> 7 train

  ASSERT_EQ(run_cli({ "fingerprint", "--input", path("mols.csv"), "--out",
                      path("fp.tsv"), "--fp-kind", "rdkfp", "--nbits", "1024" }),
            kExitOk)
      << err_.str();
  EXPECT_EQ(count_lines(dir_ / "fp.tsv"), 200U);
  EXPECT_EQ(run_cli({ "export", "--input", path("mols.csv"), "--out",
                      path("x.jsonl"), "--strategies", "fp_break" }),
            kExitUsage);
}

TEST_F(Cli, PlanSizeMismatchIsDataError) {
  ASSERT_EQ(run_cli({ "split", "--input", path("cifs"), "--out",
                      path("plan.json") }),
            kExitOk);
  EXPECT_EQ(run_cli({ "export", "--input", path("mols.csv"), "--input",
                      path("plan.json"), "--out", path("x.jsonl") }),
            kExitDataError);
}
