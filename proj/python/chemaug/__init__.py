#
# chemaug - data augmentation toolkit for chemical structures
# SPDX-License-Identifier: Apache-2.0
#
"""Data augmentation for molecular and crystalline datasets."""

from ._chemaug import (
    ChemaugError,
    agni_fingerprint,
    augment_crystal,
    brics_bonds,
    canonical_smiles,
    fingerprint,
    kfold,
    molecule_counts,
    neighbor_list,
    random_split,
    run_cli,
    scaffold,
    scaffold_split,
    tanimoto,
)

__all__ = [
    "ChemaugError",
    "agni_fingerprint",
    "augment_crystal",
    "brics_bonds",
    "canonical_smiles",
    "fingerprint",
    "kfold",
    "molecule_counts",
    "neighbor_list",
    "random_split",
    "run_cli",
    "scaffold",
    "scaffold_split",
    "tanimoto",
]
__version__ = "0.1.0"
