//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chemaug/brics.h"
#include "chemaug/cif.h"
#include "chemaug/cli.h"
#include "chemaug/crystal.h"
#include "chemaug/error.h"
#include "chemaug/fingerprint.h"
#include "chemaug/molgraph.h"
#include "chemaug/smiles.h"
#include "chemaug/split.h"

namespace py = pybind11;
using namespace chemaug;

namespace {

BitFingerprint fp_of(const std::string &smiles, const std::string &kind,
                     int nbits, int radius, int max_path) {
  FingerprintOptions opt;
  opt.kind = parse_fingerprint_kind(kind);
  opt.nbits = nbits;
  opt.radius = radius;
  opt.max_path = max_path;
  return fingerprint(parse_smiles(smiles), opt);
}

py::tuple plan_tuple(const SplitPlan &p) {
  return py::make_tuple(p.train, p.valid, p.test);
}

}  // namespace

PYBIND11_MODULE(_chemaug, m) {
  m.doc() = "Core bindings of the chemaug toolkit.";

  static py::exception<Error> error(m, "ChemaugError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object inst = py::handle(error.ptr())(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("offset") = e.offset() ? py::cast(*e.offset()) : py::none();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  m.def(
      "canonical_smiles",
      [](const std::string &smiles) { return write_smiles(parse_smiles(smiles)); },
      py::arg("smiles"));

  m.def(
      "molecule_counts",
      [](const std::string &smiles) {
        const MoleculeGraph mol = parse_smiles(smiles);
        int h = 0;
        for (const Atom &a: mol.atoms)
          h += a.explicit_h;
        return py::dict(py::arg("atoms") = mol.num_atoms(),
                        py::arg("bonds") = mol.bonds.size(),
                        py::arg("hydrogens") = h);
      },
      py::arg("smiles"));

  m.def(
      "fingerprint",
      [](const std::string &smiles, const std::string &kind, int nbits,
         int radius, int max_path) {
        const BitFingerprint fp = fp_of(smiles, kind, nbits, radius, max_path);
        return py::make_tuple(fp.hex(), fp.on_bits());
      },
      py::arg("smiles"), py::arg("kind") = "ecfp", py::arg("nbits") = 2048,
      py::arg("radius") = 2, py::arg("max_path") = 7,
      "Returns (hex, on_bits).");

  m.def(
      "tanimoto",
      [](const std::string &a, const std::string &b, const std::string &kind,
         int nbits) {
        return tanimoto(fp_of(a, kind, nbits, 2, 7), fp_of(b, kind, nbits, 2, 7));
      },
      py::arg("a"), py::arg("b"), py::arg("kind") = "ecfp",
      py::arg("nbits") = 2048);

  m.def(
      "brics_bonds",
      [](const std::string &smiles) {
        const MoleculeGraph mol = parse_smiles(smiles);
        std::vector<py::tuple> out;
        for (const BricsBond &b: brics_bonds(mol)) {
          const Bond &bond = mol.bonds[b.bond];
          out.push_back(py::make_tuple(bond.begin, bond.end, b.links[0],
                                       b.links[1]));
        }
        return out;
      },
      py::arg("smiles"), "Returns (begin, end, link_begin, link_end) tuples.");

  m.def("scaffold",
        [](const std::string &smiles) { return scaffold_key(parse_smiles(smiles)); },
        py::arg("smiles"));

  m.def("random_split",
        [](int n, std::uint64_t seed) { return plan_tuple(random_split(n, seed)); },
        py::arg("n"), py::arg("seed") = 0);

  m.def(
      "scaffold_split",
      [](const std::vector<std::string> &smiles) {
        std::vector<std::string> keys;
        for (const std::string &s: smiles)
          keys.push_back(scaffold_key(parse_smiles(s)));
        return plan_tuple(scaffold_split(keys));
      },
      py::arg("smiles"));

  m.def(
      "kfold",
      [](int n, int k, std::uint64_t seed) {
        std::vector<py::tuple> out;
        for (const SplitPlan &p: kfold(n, k, seed))
          out.push_back(plan_tuple(p));
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("seed") = 0);

  m.def(
      "neighbor_list",
      [](const std::string &cif, double cutoff, int max_neighbors) {
        std::vector<py::tuple> out;
        for (const NeighborEdge &e:
             neighbor_list(parse_cif(cif), cutoff, max_neighbors))
          out.push_back(py::make_tuple(e.i, e.j, e.image, e.distance));
        return out;
      },
      py::arg("cif"), py::arg("cutoff") = 8.0, py::arg("max_neighbors") = 12,
      "Returns (i, j, image, distance) tuples.");

  m.def(
      "agni_fingerprint",
      [](const std::string &cif, double cutoff) {
        return agni_fingerprint(parse_cif(cif), cutoff);
      },
      py::arg("cif"), py::arg("cutoff") = 8.0);

  m.def(
      "augment_crystal",
      [](const std::string &cif, const std::string &id,
         const std::string &strategies, std::uint64_t seed) {
        const auto list = strategies.empty() ? default_crystal_strategies()
                                             : parse_crystal_strategies(strategies);
        std::vector<py::tuple> out;
        for (const auto &[strategy, s]:
             augment_crystal(parse_cif(cif), id, list, seed))
          out.push_back(py::make_tuple(std::string(to_string(strategy)),
                                       write_cif(s, id)));
        return out;
      },
      py::arg("cif"), py::arg("id"), py::arg("strategies") = "",
      py::arg("seed") = 0, "Returns (strategy, cif_text) tuples.");

  m.def(
      "run_cli",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        int rc;
        {
          py::gil_scoped_release release;
          rc = run(args, out, err);
        }
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in process.");
}
