"""Builds tests/data/corpus.smi: hand-picked molecules plus core x substituent
combinations, each accepted by RDKit, deduplicated by RDKit canonical form."""
import sys
from rdkit import Chem

cores = ["c1ccc({})cc1", "c1ccc({})nc1", "C1CCN({})CC1", "c1cc({})sc1",
         "O=C1CCC({})CC1", "c1ccc2cc({})ccc2c1", "C1CC1{}", "c1cnc({})nc1"]
subs = ["C", "CC(=O)O", "OC", "N", "C(=O)NC", "S(=O)(=O)C", "CCN(C)C",
        "OCC(=O)OC", "C(F)(F)F", "c9ccccc9", "C(=O)c9ccco9", "NC(=O)C", "CCO",
        "Cl", "C#N", "OCCCN8CCOCC8", "C(=O)N8CCCC8", "[C@@H](C)N"]


def main(base_path, out_path, target=200):
    seen, out = set(), []

    def add(smi):
        m = Chem.MolFromSmiles(smi)
        if m is None:
            return
        key = Chem.MolToSmiles(m)
        if key in seen:
            return
        seen.add(key)
        out.append(smi)

    for line in open(base_path):
        if line.strip():
            add(line.strip())
    for s in subs:
        for c in cores:
            if len(out) >= target:
                break
            add(c.format(s))
    with open(out_path, "w") as f:
        f.write("\n".join(out) + "\n")
    print(len(out), "molecules")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
