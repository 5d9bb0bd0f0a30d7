#
# chemaug - data augmentation toolkit for chemical structures
# SPDX-License-Identifier: Apache-2.0
#
import pathlib

import pytest

import chemaug

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"

NACL = """data_nacl
_cell_length_a 5.64
_cell_length_b 5.64
_cell_length_c 5.64
_cell_angle_alpha 90
_cell_angle_beta 90
_cell_angle_gamma 90
_symmetry_space_group_name_H-M 'P 1'
loop_
_atom_site_label
_atom_site_type_symbol
_atom_site_fract_x
_atom_site_fract_y
_atom_site_fract_z
Na1 Na 0.0 0.0 0.0
Na2 Na 0.5 0.5 0.0
Na3 Na 0.5 0.0 0.5
Na4 Na 0.0 0.5 0.5
Cl1 Cl 0.5 0.0 0.0
Cl2 Cl 0.0 0.5 0.0
Cl3 Cl 0.0 0.0 0.5
Cl4 Cl 0.5 0.5 0.5
"""


def test_canonical_smiles_is_order_independent():
    assert chemaug.canonical_smiles("OCC") == chemaug.canonical_smiles("CCO")
    assert chemaug.molecule_counts("c1ccccc1") == {
        "atoms": 6, "bonds": 6, "hydrogens": 6}


def test_parse_error_carries_code_and_offset():
    with pytest.raises(chemaug.ChemaugError) as info:
        chemaug.canonical_smiles("C1CC")
    assert info.value.code == "UnclosedRing"
    assert isinstance(info.value.offset, int)


def test_fingerprints_match_golden_file():
    rows = [line.split("\t") for line in
            (DATA / "oracle_fingerprints.tsv").read_text().splitlines()
            if line and not line.startswith("#")]
    for smiles, ecfp_hex, path_hex in rows[:25]:
        assert chemaug.fingerprint(smiles)[0] == ecfp_hex
        assert chemaug.fingerprint(smiles, kind="rdkfp")[0] == path_hex


def test_tanimoto_range():
    assert chemaug.tanimoto("CCO", "CCO") == 1.0
    t = chemaug.tanimoto("CCO", "c1ccccc1O")
    assert 0.0 <= t < 1.0


def test_brics_and_scaffold():
    assert chemaug.brics_bonds("CCOC(C)=O") == [(1, 2, 4, 3), (2, 3, 3, 1)]
    assert chemaug.brics_bonds("c1ccccc1") == []
    assert chemaug.scaffold("CCc1ccccc1") == "c1ccccc1"
    assert chemaug.scaffold("CCO") == ""


def test_splits():
    train, valid, test = chemaug.random_split(26709, seed=0)
    assert (len(train), len(valid), len(test)) == (17093, 4274, 5342)
    assert chemaug.random_split(100, seed=3) == chemaug.random_split(100, seed=3)
    folds = chemaug.kfold(10, 5, seed=1)
    assert sorted(i for _, _, t in folds for i in t) == list(range(10))
    tr, va, te = chemaug.scaffold_split(["c1ccccc1C"] * 8 + ["C1CC1"] + ["C1CCC1"])
    assert len(tr) + len(va) + len(te) == 10


def test_crystal_operations():
    edges = chemaug.neighbor_list(NACL, cutoff=3.5)
    assert len(edges) == 48
    assert all(abs(d - 2.82) < 1e-9 for _, _, _, d in edges)
    assert len(chemaug.agni_fingerprint(NACL)) == 32
    out = chemaug.augment_crystal(NACL, "nacl", seed=7)
    assert [s for s, _ in out] == ["perturb", "rotate", "swap_axes"]
    assert out == chemaug.augment_crystal(NACL, "nacl", seed=7)
    with pytest.raises(chemaug.ChemaugError):
        chemaug.augment_crystal(NACL, "nacl", strategies="melt")


def test_cli_in_process(tmp_path):
    rc, _, err = chemaug.run_cli(["no-such-command"])
    assert rc == 2
    csv = tmp_path / "mols.csv"
    csv.write_text("smiles,y\n" + "".join(
        f"{s},{i % 2}\n" for i, s in enumerate(
            ["CCO", "c1ccccc1", "CCN", "CC(=O)O", "c1ccncc1", "CCCC"])))
    rc, out, err = chemaug.run_cli(
        ["split", "--input", str(csv), "--out", str(tmp_path / "plan.json")])
    assert rc == 0, err
    assert (tmp_path / "plan.json").exists()
