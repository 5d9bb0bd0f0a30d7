//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/fingerprint.h"

#include <algorithm>
#include <bit>

#include "chemaug/brics.h"
#include "chemaug/error.h"
#include "chemaug/hash.h"

namespace chemaug {

std::string_view to_string(FingerprintKind kind) {
  return kind == FingerprintKind::kEcfp ? "ecfp" : "rdkfp";
}

FingerprintKind parse_fingerprint_kind(std::string_view name) {
  if (name == "ecfp")
    return FingerprintKind::kEcfp;
  if (name == "rdkfp")
    return FingerprintKind::kRdkfp;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown fingerprint kind '" + std::string(name) + "'");
}

BitFingerprint::BitFingerprint(FingerprintKind kind, int nbits)
    : kind_(kind), nbits_(nbits) {
  if (nbits < 8 || !std::has_single_bit(static_cast<unsigned>(nbits)))
    throw Error(ErrorCode::kInvalidArgument,
                "nbits must be a power of two >= 8, got "
                    + std::to_string(nbits));
  words_.assign((nbits + 63) / 64, 0);
}

int BitFingerprint::popcount() const noexcept {
  int n = 0;
  for (std::uint64_t w: words_)
    n += std::popcount(w);
  return n;
}

std::vector<int> BitFingerprint::on_bits() const {
  std::vector<int> out;
  for (int i = 0; i < nbits_; ++i)
    if (test(i))
      out.push_back(i);
  return out;
}

std::string BitFingerprint::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(nbits_ / 4);
  for (int byte = 0; byte < nbits_ / 8; ++byte) {
    const unsigned v = (words_[byte >> 3] >> (8 * (byte & 7))) & 0xffU;
    out += kDigits[v >> 4];
    out += kDigits[v & 15];
  }
  return out;
}

namespace {

std::int32_t bond_code(BondOrder order) {
  return static_cast<std::int32_t>(order) + 1;
}

void set_code(BitFingerprint &fp, std::uint64_t code) {
  fp.set(static_cast<int>(code & static_cast<std::uint64_t>(fp.nbits() - 1)));
}

}  // namespace

BitFingerprint ecfp(const MoleculeGraph &mol, int radius, int nbits) {
  if (radius < 0)
    throw Error(ErrorCode::kInvalidArgument, "radius must be >= 0");
  BitFingerprint fp(FingerprintKind::kEcfp, nbits);
  const Adjacency adj = adjacency(mol);
  const RingInfo rings = ring_info(mol, adj);
  const int n = mol.num_atoms();

  std::vector<std::uint64_t> code(n);
  for (int a = 0; a < n; ++a) {
    const Atom &atom = mol.atoms[a];
    code[a] = Fnv1a()
                  .update_i32(atom.element)
                  .update_i32(static_cast<std::int32_t>(adj[a].size()))
                  .update_i32(atom.formal_charge)
                  .update_i32(atom.explicit_h)
                  .update_i32(rings.atom_in_ring[a] ? 1 : 0)
                  .update_i32(atom.aromatic ? 1 : 0)
                  .digest();
    set_code(fp, code[a]);
  }

  std::vector<std::uint64_t> next(n);
  std::vector<std::pair<std::int32_t, std::uint64_t>> env;
  for (int round = 1; round <= radius; ++round) {
    for (int a = 0; a < n; ++a) {
      env.clear();
      for (const Neighbor &nb: adj[a])
        env.emplace_back(bond_code(mol.bonds[nb.bond].order), code[nb.atom]);
      std::sort(env.begin(), env.end());
      Fnv1a h;
      h.update_i32(round).update_u64(code[a]);
      for (const auto &[b, c]: env)
        h.update_i32(b).update_u64(c);
      next[a] = h.digest();
      set_code(fp, next[a]);
    }
    code.swap(next);
  }
  return fp;
}

BitFingerprint rdkfp(const MoleculeGraph &mol, int max_path, int nbits) {
  if (max_path < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_path must be >= 1");
  BitFingerprint fp(FingerprintKind::kRdkfp, nbits);
  const Adjacency adj = adjacency(mol);
  const int n = mol.num_atoms();

  std::vector<bool> on_path(n, false);
  std::vector<std::int32_t> seq;  // Z0, b1, Z1, ..., bL, ZL
  std::vector<std::int32_t> rev;

  auto emit = [&] {
    rev.assign(seq.rbegin(), seq.rend());
    const auto &canon = std::lexicographical_compare(rev.begin(), rev.end(),
                                                     seq.begin(), seq.end())
                            ? rev
                            : seq;
    Fnv1a h;
    for (std::int32_t v: canon)
      h.update_i32(v);
    set_code(fp, h.digest());
  };

  auto extend = [&](auto &&self, int start, int atom, int length) -> void {
    for (const Neighbor &nb: adj[atom]) {
      if (on_path[nb.atom])
        continue;
      on_path[nb.atom] = true;
      seq.push_back(bond_code(mol.bonds[nb.bond].order));
      seq.push_back(mol.atoms[nb.atom].element);
      // each path is seen from both ends; keep the one starting lower
      if (start < nb.atom)
        emit();
      if (length + 1 < max_path)
        self(self, start, nb.atom, length + 1);
      seq.resize(seq.size() - 2);
      on_path[nb.atom] = false;
    }
  };

  for (int s = 0; s < n; ++s) {
    on_path[s] = true;
    seq.assign(1, mol.atoms[s].element);
    extend(extend, s, s, 0);
    on_path[s] = false;
  }
  return fp;
}

BitFingerprint fingerprint(const MoleculeGraph &mol,
                           const FingerprintOptions &options) {
  return options.kind == FingerprintKind::kEcfp
             ? ecfp(mol, options.radius, options.nbits)
             : rdkfp(mol, options.max_path, options.nbits);
}

double tanimoto(const BitFingerprint &a, const BitFingerprint &b) {
  if (a.kind() != b.kind())
    throw Error(ErrorCode::kKindMismatch, std::string(to_string(a.kind()))
                                              + " vs "
                                              + std::string(to_string(b.kind())));
  if (a.nbits() != b.nbits())
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(a.nbits()) + " vs " + std::to_string(b.nbits()));
  int both = 0, either = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    both += std::popcount(a.words()[w] & b.words()[w]);
    either += std::popcount(a.words()[w] | b.words()[w]);
  }
  return either == 0 ? 0.0 : static_cast<double>(both) / either;
}

int ConcatFingerprint::nbits() const noexcept {
  int n = 0;
  for (const auto &s: segments)
    n += s.nbits();
  return n;
}

std::string ConcatFingerprint::hex() const {
  std::string out;
  for (const auto &s: segments)
    out += s.hex();
  return out;
}

std::vector<std::pair<BitFingerprint, LabelVector>>
fp_break(const MoleculeGraph &mol, const LabelVector &labels,
         const FingerprintOptions &options, double threshold, int max_depth) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "threshold must be in [0, 1]");
  std::vector<std::pair<BitFingerprint, LabelVector>> out;
  out.emplace_back(fingerprint(mol, options), labels);
  const FragmentTree tree = brics_fragments(mol, max_depth);
  for (int i = 1; i < static_cast<int>(tree.nodes.size()); ++i) {
    BitFingerprint fp = fingerprint(tree.nodes[i].mol, options);
    if (tanimoto(fp, out.front().first) >= threshold)
      out.emplace_back(std::move(fp), labels);
  }
  return out;
}

ConcatFingerprint replicated_fp(const MoleculeGraph &mol,
                                const FingerprintOptions &options, int k) {
  if (k < 1)
    throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  ConcatFingerprint out;
  out.segments.assign(k, fingerprint(mol, options));
  out.replicated = true;
  return out;
}

std::vector<std::pair<ConcatFingerprint, LabelVector>>
fp_concat(const MoleculeGraph &mol, const LabelVector &labels, RngState &rng,
          const FingerprintOptions &options, int k, int n_concat,
          int max_depth) {
  if (k < 1)
    throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  if (n_concat < 0)
    throw Error(ErrorCode::kInvalidArgument, "concatenation count must be >= 0");
  std::vector<BitFingerprint> pool { fingerprint(mol, options) };
  const FragmentTree tree = brics_fragments(mol, max_depth);
  for (int i = 1; i < static_cast<int>(tree.nodes.size()); ++i)
    pool.push_back(fingerprint(tree.nodes[i].mol, options));

  std::vector<std::pair<ConcatFingerprint, LabelVector>> out;
  ConcatFingerprint rep;
  rep.segments.assign(k, pool.front());
  rep.replicated = true;
  out.emplace_back(std::move(rep), labels);
  for (int c = 0; c < n_concat; ++c) {
    ConcatFingerprint cat;
    cat.segments.reserve(k);
    for (int d = 0; d < k; ++d)
      cat.segments.push_back(pool[rng.below(pool.size())]);
    out.emplace_back(std::move(cat), labels);
  }
  return out;
}

}  // namespace chemaug
