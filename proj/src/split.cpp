//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/split.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "chemaug/error.h"
#include "chemaug/molgraph.h"
#include "chemaug/rng.h"

namespace chemaug {

std::string_view to_string(SplitMethod method) {
  switch (method) {
  case SplitMethod::kRandom:
    return "random_4_1_then_4_1";
  case SplitMethod::kScaffold:
    return "scaffold_8_1_1";
  case SplitMethod::kKfold:
    return "kfold";
  }
  return "unknown";
}

SplitMethod parse_split_method(std::string_view name) {
  if (name == "random" || name == "random_4_1_then_4_1")
    return SplitMethod::kRandom;
  if (name == "scaffold" || name == "scaffold_8_1_1")
    return SplitMethod::kScaffold;
  if (name == "kfold")
    return SplitMethod::kKfold;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown split method '" + std::string(name) + "'");
}

std::string_view to_string(Partition p) {
  switch (p) {
  case Partition::kTrain:
    return "train";
  case Partition::kValid:
    return "valid";
  case Partition::kTest:
    return "test";
  }
  return "unknown";
}

std::vector<Partition> SplitPlan::assignment(int n) const {
  std::vector<int> seen(n, 0);
  std::vector<Partition> out(n, Partition::kTrain);
  auto mark = [&](const std::vector<int> &list, Partition p) {
    for (int i: list) {
      if (i < 0 || i >= n || seen[i]++ > 0)
        throw Error(ErrorCode::kInconsistentConfig,
                    "split plan index " + std::to_string(i)
                        + " out of range or repeated");
      out[i] = p;
    }
  };
  mark(train, Partition::kTrain);
  mark(valid, Partition::kValid);
  mark(test, Partition::kTest);
  if (static_cast<int>(size()) != n)
    throw Error(ErrorCode::kInconsistentConfig,
                "split plan covers " + std::to_string(size()) + " of "
                    + std::to_string(n) + " records");
  return out;
}

namespace {

std::vector<int> permutation(int n, RngState &rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(static_cast<std::size_t>(i) + 1)]);
  return perm;
}

std::vector<int> sorted_slice(const std::vector<int> &v, std::size_t from,
                              std::size_t to) {
  std::vector<int> out(v.begin() + from, v.begin() + to);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SplitPlan random_split(int n, std::uint64_t seed) {
  if (n < 5)
    throw Error(ErrorCode::kTooFewRecords,
                "random split needs at least 5 records, got "
                    + std::to_string(n));
  // integer ceil(n / 5) avoids floating-point edge cases
  const int n_test = (n + 4) / 5;
  const int rest = n - n_test;
  const int n_valid = (rest + 4) / 5;

  RngState rng(derive_seed(seed, "", "random_split"));
  const std::vector<int> perm = permutation(n, rng);
  SplitPlan plan;
  plan.seed = seed;
  plan.method = SplitMethod::kRandom;
  plan.test = sorted_slice(perm, 0, n_test);
  plan.valid = sorted_slice(perm, n_test, n_test + n_valid);
  plan.train = sorted_slice(perm, n_test + n_valid, n);
  return plan;
}

SplitPlan scaffold_split(std::span<const std::string> keys,
                         const std::array<double, 3> &fractions) {
  if (keys.empty())
    throw Error(ErrorCode::kEmptyTable, "scaffold split of an empty table");
  for (double f: fractions)
    if (!(f > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "split fractions must be > 0");
  if (std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) > 1e-9)
    throw Error(ErrorCode::kInvalidArgument, "split fractions must sum to 1");

  std::map<std::string_view, std::vector<int>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i)
    groups[keys[i]].push_back(static_cast<int>(i));
  std::vector<const std::pair<const std::string_view, std::vector<int>> *>
      order;
  for (const auto &g: groups)
    order.push_back(&g);
  // map order already sorts keys; stable sort keeps that for equal sizes
  std::stable_sort(order.begin(), order.end(), [](auto *a, auto *b) {
    return a->second.size() > b->second.size();
  });

  const double n = static_cast<double>(keys.size());
  SplitPlan plan;
  plan.method = SplitMethod::kScaffold;
  for (const auto *g: order) {
    std::vector<int> *dst;
    if (plan.train.size() < fractions[0] * n)
      dst = &plan.train;
    else if (plan.valid.size() < fractions[1] * n)
      dst = &plan.valid;
    else
      dst = &plan.test;
    dst->insert(dst->end(), g->second.begin(), g->second.end());
  }
  for (auto *list: { &plan.train, &plan.valid, &plan.test })
    std::sort(list->begin(), list->end());
  return plan;
}

SplitPlan scaffold_split(const MoleculeTable &table,
                         const std::array<double, 3> &fractions) {
  std::vector<std::string> keys;
  keys.reserve(table.records.size());
  for (const MoleculeRecord &r: table.records)
    keys.push_back(scaffold_key(r.mol));
  return scaffold_split(keys, fractions);
}

std::vector<SplitPlan> kfold(int n, int k, std::uint64_t seed) {
  if (k < 2 || n < k)
    throw Error(ErrorCode::kBadK, "k-fold needs k >= 2 and n >= k, got k = "
                                      + std::to_string(k)
                                      + ", n = " + std::to_string(n));
  RngState rng(derive_seed(seed, "", "kfold"));
  const std::vector<int> perm = permutation(n, rng);
  std::vector<std::vector<int>> folds(k);
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f] = sorted_slice(perm, pos, pos + size);
    pos += size;
  }
  std::vector<SplitPlan> plans(k);
  for (int i = 0; i < k; ++i) {
    SplitPlan &p = plans[i];
    p.seed = seed;
    p.method = SplitMethod::kKfold;
    p.fold = i;
    p.test = folds[i];
    p.valid = folds[(i + 1) % k];
    for (int f = 0; f < k; ++f)
      if (f != i && f != (i + 1) % k)
        p.train.insert(p.train.end(), folds[f].begin(), folds[f].end());
    std::sort(p.train.begin(), p.train.end());
  }
  return plans;
}

std::string plans_to_json(std::span<const SplitPlan> plans, int n) {
  nlohmann::ordered_json doc;
  doc["method"] = plans.empty() ? "random_4_1_then_4_1"
                                : std::string(to_string(plans.front().method));
  doc["seed"] = plans.empty() ? 0 : plans.front().seed;
  doc["n"] = n;
  doc["plans"] = nlohmann::ordered_json::array();
  for (const SplitPlan &p: plans) {
    nlohmann::ordered_json j;
    j["fold"] = p.fold;
    j["train"] = p.train;
    j["valid"] = p.valid;
    j["test"] = p.test;
    doc["plans"].push_back(std::move(j));
  }
  return doc.dump() + "\n";
}

std::vector<SplitPlan> plans_from_json(std::string_view text, int *n) {
  try {
    const auto doc = nlohmann::json::parse(text);
    const SplitMethod method =
        parse_split_method(doc.at("method").get<std::string>());
    const auto seed = doc.at("seed").get<std::uint64_t>();
    std::vector<SplitPlan> plans;
    for (const auto &j: doc.at("plans")) {
      SplitPlan p;
      p.method = method;
      p.seed = seed;
      p.fold = j.at("fold").get<int>();
      p.train = j.at("train").get<std::vector<int>>();
      p.valid = j.at("valid").get<std::vector<int>>();
      p.test = j.at("test").get<std::vector<int>>();
      plans.push_back(std::move(p));
    }
    if (n != nullptr)
      *n = doc.at("n").get<int>();
    return plans;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("split plan: ") + e.what());
  }
}

}  // namespace chemaug
