//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "chemaug/error.h"
#include "chemaug/hash.h"
#include "chemaug/pipeline.h"
#include "parallel.h"

namespace chemaug {

namespace {

using ordered_json = nlohmann::ordered_json;

void put_common(ordered_json &j, const DatasetRecord &rec, const char *kind) {
  j["id"] = rec.id();
  if (rec.parent_id().empty())
    j["parent_id"] = nullptr;
  else
    j["parent_id"] = rec.parent_id();
  j["provenance"] = to_string(rec.provenance());
  j["partition"] = to_string(rec.partition);
  j["kind"] = kind;
}

void put_labels(ordered_json &j, const LabelVector &labels) {
  j["y"] = labels.values;
  j["y_mask"] = labels.mask;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string record_json(const DatasetRecord &rec,
                        const ExportOptions &options) {
  ordered_json j;
  if (const auto *m = std::get_if<MolGraphRecord>(&rec.payload)) {
    put_common(j, rec, "molecule");
    ordered_json nodes = ordered_json::array();
    for (const GraphNode &n: m->nodes)
      nodes.push_back({ { "t", n.atom_type },
                        { "c", n.chirality },
                        { "m", n.masked ? 1 : 0 } });
    j["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const GraphEdge &e: m->edges)
      edges.push_back({ e.i, e.j, e.bond_type, e.direction });
    j["edges"] = std::move(edges);
    put_labels(j, m->labels);
  } else if (const auto *c = std::get_if<CrystalRecord>(&rec.payload)) {
    put_common(j, rec, "crystal");
    const CrystalGraph g =
        build_crystal_graph(c->structure, options.cutoff, options.max_neighbors,
                            options.gaussian_step, options.gaussian_width);
    ordered_json nodes = ordered_json::array();
    for (int z: g.node_z)
      nodes.push_back({ { "t", z }, { "c", 0 }, { "m", 0 } });
    j["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const NeighborEdge &e: g.edges)
      edges.push_back({ e.i, e.j, e.image[0], e.image[1], e.image[2],
                        e.distance });
    j["edges"] = std::move(edges);
    j["gauss"] = { { "start", g.gauss.start },
                   { "stop", g.gauss.stop },
                   { "step", g.gauss.step },
                   { "width", g.gauss.width } };
    put_labels(j, c->labels);
  } else {
    throw Error(ErrorCode::kMalformedRecord,
                "fingerprint row '" + rec.id() + "' has no graph form");
  }
  return j.dump();
}

std::string fingerprint_line(const DatasetRecord &rec) {
  const auto *f = std::get_if<FingerprintRow>(&rec.payload);
  if (f == nullptr)
    throw Error(ErrorCode::kMalformedRecord,
                "record '" + rec.id() + "' is not a fingerprint row");
  std::string line = f->id;
  line += '\t';
  line += f->fp.segments.empty() ? "ecfp"
                                 : to_string(f->fp.segments.front().kind());
  line += '\t';
  line += std::to_string(f->fp.nbits());
  line += '\t';
  line += f->fp.hex();
  line += '\t';
  for (std::size_t i = 0; i < f->labels.values.size(); ++i) {
    if (i > 0)
      line += ',';
    line += format_double(f->labels.values[i]);
  }
  line += '\t';
  for (std::size_t i = 0; i < f->labels.mask.size(); ++i) {
    if (i > 0)
      line += ',';
    line += f->labels.mask[i] ? '1' : '0';
  }
  line += '\t';
  line += f->parent_id;
  line += '\t';
  line += to_string(f->provenance);
  line += '\t';
  line += to_string(rec.partition);
  return line;
}

namespace {

template <class Format>
std::size_t write_lines(const AugmentedDataset &ds, std::ostream &out,
                        Format &&format) {
  // bounded chunks keep memory flat on large sets
  constexpr std::size_t kChunk = 4096;
  std::vector<std::string> lines;
  for (std::size_t base = 0; base < ds.records.size(); base += kChunk) {
    const std::size_t count = std::min(kChunk, ds.records.size() - base);
    lines.assign(count, {});
    internal::parallel_for(count, [&](std::size_t i) {
      lines[i] = format(ds.records[base + i]);
    });
    for (const std::string &l: lines) {
      out << l << '\n';
    }
    if (!out)
      throw Error(ErrorCode::kIoError, "write failed");
  }
  out.flush();
  if (!out)
    throw Error(ErrorCode::kIoError, "write failed");
  return ds.records.size();
}

std::ofstream open_output(const std::filesystem::path &destination) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::kIoError,
                "cannot open '" + destination.string() + "' for writing");
  return out;
}

}  // namespace

std::size_t export_jsonl(const AugmentedDataset &ds, std::ostream &out,
                         const ExportOptions &options) {
  return write_lines(ds, out, [&](const DatasetRecord &r) {
    return record_json(r, options);
  });
}

std::size_t export_jsonl(const AugmentedDataset &ds,
                         const std::filesystem::path &destination,
                         const ExportOptions &options) {
  std::ofstream out = open_output(destination);
  return export_jsonl(ds, out, options);
}

std::size_t export_fingerprints(const AugmentedDataset &ds, std::ostream &out) {
  return write_lines(ds, out, fingerprint_line);
}

std::size_t export_fingerprints(const AugmentedDataset &ds,
                                const std::filesystem::path &destination) {
  std::ofstream out = open_output(destination);
  return export_fingerprints(ds, out);
}

// ---- smoke forward ----

SmokeGraph smoke_graph(const MolGraphRecord &rec) {
  SmokeGraph g;
  for (const GraphNode &n: rec.nodes)
    g.atom_type.push_back(n.atom_type);
  for (const GraphEdge &e: rec.edges)
    g.edges.emplace_back(e.i, e.j);
  return g;
}

SmokeGraph smoke_graph(const CrystalGraph &graph) {
  SmokeGraph g;
  g.atom_type = graph.node_z;
  for (const NeighborEdge &e: graph.edges)
    g.edges.emplace_back(e.i, e.j);
  g.directed = true;
  return g;
}

std::vector<double> smoke_forward(const SmokeGraph &graph, int dim) {
  if (dim < 1)
    throw Error(ErrorCode::kMalformedRecord, "dim must be >= 1");
  const int n = static_cast<int>(graph.atom_type.size());
  for (const auto &[i, j]: graph.edges)
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw Error(ErrorCode::kMalformedRecord,
                  "edge (" + std::to_string(i) + ", " + std::to_string(j)
                      + ") outside " + std::to_string(n) + " nodes");

  std::vector<double> h0(static_cast<std::size_t>(n) * dim);
  for (int v = 0; v < n; ++v) {
    double norm = 0.0;
    for (int c = 0; c < dim; ++c) {
      const std::uint64_t bits =
          Fnv1a().update_i32(graph.atom_type[v]).update_i32(c).digest();
      const double x = static_cast<double>(bits >> 11) * 0x1.0p-52 - 1.0;
      h0[v * dim + c] = x;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (int c = 0; c < dim; ++c)
        h0[v * dim + c] /= norm;
  }

  std::vector<double> agg(h0.size(), 0.0);
  std::vector<int> count(n, 0);
  auto add = [&](int v, int u) {
    for (int c = 0; c < dim; ++c)
      agg[v * dim + c] += h0[u * dim + c];
    ++count[v];
  };
  for (const auto &[i, j]: graph.edges) {
    add(i, j);
    if (!graph.directed)
      add(j, i);
  }

  std::vector<double> readout(dim, 0.0);
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < dim; ++c) {
      const double a = count[v] > 0 ? agg[v * dim + c] / count[v] : 0.0;
      readout[c] += h0[v * dim + c] + a;
    }
  return readout;
}

}  // namespace chemaug
