//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_PATTERN_H_
#define CHEMAUG_PATTERN_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chemaug/molecule.h"

namespace chemaug {

/// A tree-shaped substructure query rooted at one atom. The grammar is the
/// SMARTS subset needed for rule-table environments (see docs/patterns.md):
///
///   atoms    bare  C N O S P F Cl Br I B *  and aromatic  c n o s p b
///            [...] with primitives  *  #n  symbol  a  A  Dn  R  R0  Hn
///                  +n -n  $(pattern)  combined by ! & , ;
///   bonds    - = # : ~ @ combined by ! & , ;  (default: single or aromatic)
///   branches ( ... )
///
/// Ring closures are not part of the grammar.
class SubstructurePattern {
public:
  struct Node;

  SubstructurePattern() = default;
  SubstructurePattern(std::shared_ptr<const Node> root, std::string text)
      : root_(std::move(root)), text_(std::move(text)) { }

  const Node *root() const noexcept { return root_.get(); }
  const std::string &text() const noexcept { return text_; }

private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Precomputed per-molecule data for repeated matching.
class MatchContext {
public:
  explicit MatchContext(const MoleculeGraph &mol);

  const MoleculeGraph &mol() const noexcept { return *mol_; }
  const Adjacency &adj() const noexcept { return adj_; }
  const RingInfo &rings() const noexcept { return rings_; }
  int total_h(int atom) const noexcept { return total_h_[atom]; }

private:
  const MoleculeGraph *mol_;
  Adjacency adj_;
  RingInfo rings_;
  std::vector<int> total_h_;
};

// Throws Error(kPatternSyntaxError) with the offset of the bad character.
SubstructurePattern compile_pattern(std::string_view text);

// Throws Error(kIndexOutOfRange) when root is not an atom of mol.
bool match_pattern(const SubstructurePattern &pattern,
                   const MoleculeGraph &mol, int root);
bool match_pattern(const SubstructurePattern &pattern,
                   const MatchContext &context, int root);

}  // namespace chemaug

#endif  // CHEMAUG_PATTERN_H_
