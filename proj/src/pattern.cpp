//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/pattern.h"

#include <cctype>
#include <functional>
#include <string>

#include "chemaug/elements.h"
#include "chemaug/error.h"

namespace chemaug {

namespace {

enum class Op { kPrimitive, kNot, kAnd, kOr };

struct AtomPrimitive {
  enum class Kind {
    kAny,
    kElement,  // element + aromaticity
    kAtomicNumber,
    kAromatic,
    kAliphatic,
    kDegree,
    kInRing,
    kNotInRing,
    kHCount,
    kCharge,
    kRecursive,
  };
  Kind kind = Kind::kAny;
  int value = 0;
  bool aromatic = false;
  std::shared_ptr<const SubstructurePattern::Node> recursive;
};

struct BondPrimitive {
  enum class Kind { kAny, kSingle, kDouble, kTriple, kAromatic, kRing };
  Kind kind = Kind::kAny;
};

template <class Prim>
struct Expr {
  Op op = Op::kPrimitive;
  Prim prim;
  std::vector<Expr> args;
};

using AtomExpr = Expr<AtomPrimitive>;
using BondExpr = Expr<BondPrimitive>;

}  // namespace

struct SubstructurePattern::Node {
  AtomExpr atom;
  struct Child {
    bool has_bond = false;
    BondExpr bond;
    std::shared_ptr<const Node> node;
  };
  std::vector<Child> children;
};

namespace {

using Node = SubstructurePattern::Node;

template <class Prim>
Expr<Prim> combine(Op op, std::vector<Expr<Prim>> args) {
  if (args.size() == 1)
    return std::move(args.front());
  Expr<Prim> e;
  e.op = op;
  e.args = std::move(args);
  return e;
}

class PatternParser {
public:
  explicit PatternParser(std::string_view text): text_(text) { }

  std::shared_ptr<const Node> parse() {
    if (text_.empty())
      fail("empty pattern");
    auto root = node();
    if (pos_ != text_.size())
      fail("unexpected trailing text");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string &message) const {
    throw Error(ErrorCode::kPatternSyntaxError, message, pos_);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  static bool bond_start(char c) {
    switch (c) {
    case '-':
    case '=':
    case '#':
    case ':':
    case '~':
    case '@':
    case '!':
      return true;
    default:
      return false;
    }
  }

  bool atom_start() const {
    const char c = peek();
    return c == '[' || c == '*' || std::isalpha(static_cast<unsigned char>(c));
  }

  std::shared_ptr<const Node> node() {
    auto n = std::make_shared<Node>();
    n->atom = atom();
    while (peek() == '(') {
      ++pos_;
      n->children.push_back(child());
      if (peek() != ')')
        fail("expected ')'");
      ++pos_;
    }
    if (bond_start(peek()) || atom_start())
      n->children.push_back(child());
    return n;
  }

  Node::Child child() {
    Node::Child c;
    if (bond_start(peek())) {
      c.has_bond = true;
      c.bond = bond_or();
    }
    if (!atom_start())
      fail("expected an atom");
    c.node = node();
    return c;
  }

  // ---- atoms ----

  AtomExpr atom() {
    if (peek() == '[') {
      ++pos_;
      AtomExpr e = atom_low_and();
      if (peek() != ']')
        fail("expected ']'");
      ++pos_;
      return e;
    }
    AtomExpr e;
    const char c = peek();
    if (c == '*') {
      ++pos_;
      return e;
    }
    static constexpr std::pair<std::string_view, int> kBare[] = {
      { "Cl", 17 }, { "Br", 35 }, { "B", 5 }, { "C", 6 },  { "N", 7 },
      { "O", 8 },   { "S", 16 },  { "P", 15 }, { "F", 9 }, { "I", 53 },
      { "b", 5 },   { "c", 6 },   { "n", 7 },  { "o", 8 }, { "s", 16 },
      { "p", 15 },
    };
    for (auto [sym, z]: kBare) {
      if (text_.substr(pos_, sym.size()) == sym) {
        pos_ += sym.size();
        e.prim.kind = AtomPrimitive::Kind::kElement;
        e.prim.value = z;
        e.prim.aromatic = std::islower(static_cast<unsigned char>(sym[0]));
        return e;
      }
    }
    fail("unknown atom symbol");
  }

  AtomExpr atom_low_and() {
    std::vector<AtomExpr> parts { atom_or() };
    while (peek() == ';') {
      ++pos_;
      parts.push_back(atom_or());
    }
    return combine(Op::kAnd, std::move(parts));
  }

  AtomExpr atom_or() {
    std::vector<AtomExpr> parts { atom_high_and() };
    while (peek() == ',') {
      ++pos_;
      parts.push_back(atom_high_and());
    }
    return combine(Op::kOr, std::move(parts));
  }

  AtomExpr atom_high_and() {
    std::vector<AtomExpr> parts { atom_unary() };
    for (;;) {
      if (peek() == '&') {
        ++pos_;
        parts.push_back(atom_unary());
      } else if (!at_end() && peek() != ']' && peek() != ';'
                 && peek() != ',' && peek() != ')') {
        parts.push_back(atom_unary());
      } else {
        break;
      }
    }
    return combine(Op::kAnd, std::move(parts));
  }

  AtomExpr atom_unary() {
    if (peek() == '!') {
      ++pos_;
      AtomExpr e;
      e.op = Op::kNot;
      e.args.push_back(atom_unary());
      return e;
    }
    AtomExpr e;
    e.prim = atom_primitive();
    return e;
  }

  int read_number(int fallback) {
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      return fallback;
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      v = v * 10 + (text_[pos_++] - '0');
    return v;
  }

  AtomPrimitive atom_primitive() {
    using Kind = AtomPrimitive::Kind;
    AtomPrimitive p;
    const char c = peek();
    if (at_end())
      fail("unterminated atom expression");

    if (c == '*') {
      ++pos_;
      return p;
    }
    if (c == '#') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail("'#' needs an atomic number");
      p.kind = Kind::kAtomicNumber;
      p.value = read_number(0);
      return p;
    }
    if (c == '$') {
      ++pos_;
      if (peek() != '(')
        fail("expected '(' after '$'");
      ++pos_;
      p.kind = Kind::kRecursive;
      p.recursive = node();
      if (peek() != ')')
        fail("expected ')' closing recursive pattern");
      ++pos_;
      return p;
    }
    if (c == '+' || c == '-') {
      ++pos_;
      int mag = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        mag = read_number(1);
      } else {
        while (peek() == c) {
          ++mag;
          ++pos_;
        }
      }
      p.kind = Kind::kCharge;
      p.value = c == '+' ? mag : -mag;
      return p;
    }

    // two-letter element symbols win over one-letter primitives
    if (std::isupper(static_cast<unsigned char>(c)) && pos_ + 1 < text_.size()
        && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
      if (auto z = element_from_symbol(text_.substr(pos_, 2))) {
        pos_ += 2;
        p.kind = Kind::kElement;
        p.value = *z;
        return p;
      }
    }

    switch (c) {
    case 'D':
      ++pos_;
      p.kind = Kind::kDegree;
      p.value = read_number(1);
      return p;
    case 'R':
      ++pos_;
      p.kind = read_number(-1) == 0 ? Kind::kNotInRing : Kind::kInRing;
      return p;
    case 'H':
      ++pos_;
      p.kind = Kind::kHCount;
      p.value = read_number(1);
      return p;
    case 'a':
      ++pos_;
      p.kind = Kind::kAromatic;
      return p;
    case 'A':
      ++pos_;
      p.kind = Kind::kAliphatic;
      return p;
    default:
      break;
    }

    if (std::islower(static_cast<unsigned char>(c))) {
      static constexpr std::pair<std::string_view, int> kAromatic[] = {
        { "se", 34 }, { "as", 33 }, { "te", 52 }, { "b", 5 },
        { "c", 6 },   { "n", 7 },   { "o", 8 },   { "p", 15 },
        { "s", 16 },
      };
      for (auto [sym, z]: kAromatic) {
        if (text_.substr(pos_, sym.size()) == sym) {
          pos_ += sym.size();
          p.kind = Kind::kElement;
          p.value = z;
          p.aromatic = true;
          return p;
        }
      }
      fail("unknown aromatic symbol");
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (auto z = element_from_symbol(text_.substr(pos_, 1))) {
        ++pos_;
        p.kind = Kind::kElement;
        p.value = *z;
        return p;
      }
    }
    fail("unknown atom primitive");
  }

  // ---- bonds ----

  BondExpr bond_or() {
    // ';' binds loosest, so parse it as the outer level
    std::vector<BondExpr> parts { bond_comma() };
    while (peek() == ';') {
      ++pos_;
      parts.push_back(bond_comma());
    }
    return combine(Op::kAnd, std::move(parts));
  }

  BondExpr bond_comma() {
    std::vector<BondExpr> parts { bond_high_and() };
    while (peek() == ',') {
      ++pos_;
      parts.push_back(bond_high_and());
    }
    return combine(Op::kOr, std::move(parts));
  }

  BondExpr bond_high_and() {
    std::vector<BondExpr> parts { bond_unary() };
    for (;;) {
      if (peek() == '&') {
        ++pos_;
        parts.push_back(bond_unary());
      } else if (bond_start(peek())) {
        parts.push_back(bond_unary());
      } else {
        break;
      }
    }
    return combine(Op::kAnd, std::move(parts));
  }

  BondExpr bond_unary() {
    if (peek() == '!') {
      ++pos_;
      BondExpr e;
      e.op = Op::kNot;
      e.args.push_back(bond_unary());
      return e;
    }
    using Kind = BondPrimitive::Kind;
    BondExpr e;
    switch (peek()) {
    case '-':
      e.prim.kind = Kind::kSingle;
      break;
    case '=':
      e.prim.kind = Kind::kDouble;
      break;
    case '#':
      e.prim.kind = Kind::kTriple;
      break;
    case ':':
      e.prim.kind = Kind::kAromatic;
      break;
    case '~':
      e.prim.kind = Kind::kAny;
      break;
    case '@':
      e.prim.kind = Kind::kRing;
      break;
    default:
      fail("expected a bond primitive");
    }
    ++pos_;
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---- matching ----

class Matcher {
public:
  explicit Matcher(const MatchContext &ctx)
      : ctx_(ctx), used_(ctx.mol().atoms.size(), false) { }

  bool match_root(const Node &node, int atom) {
    return embed(node, atom, [] { return true; });
  }

private:
  using Continuation = std::function<bool()>;

  bool embed(const Node &node, int atom, const Continuation &next) {
    if (!atom_ok(node.atom, atom))
      return false;
    used_[atom] = true;
    const bool ok = embed_children(node, 0, atom, next);
    used_[atom] = false;
    return ok;
  }

  bool embed_children(const Node &node, std::size_t k, int atom,
                      const Continuation &next) {
    if (k == node.children.size())
      return next();
    const Node::Child &child = node.children[k];
    for (const Neighbor &nb: ctx_.adj()[atom]) {
      if (used_[nb.atom])
        continue;
      if (!bond_ok(child, nb.bond))
        continue;
      const bool ok = embed(*child.node, nb.atom, [&] {
        return embed_children(node, k + 1, atom, next);
      });
      if (ok)
        return true;
    }
    return false;
  }

  bool bond_ok(const Node::Child &child, int bond) const {
    const BondOrder order = ctx_.mol().bonds[bond].order;
    if (!child.has_bond)
      return order == BondOrder::kSingle || order == BondOrder::kAromatic;
    return eval_bond(child.bond, bond);
  }

  bool eval_bond(const BondExpr &e, int bond) const {
    switch (e.op) {
    case Op::kNot:
      return !eval_bond(e.args.front(), bond);
    case Op::kAnd:
      for (const auto &a: e.args)
        if (!eval_bond(a, bond))
          return false;
      return true;
    case Op::kOr:
      for (const auto &a: e.args)
        if (eval_bond(a, bond))
          return true;
      return false;
    case Op::kPrimitive:
      break;
    }
    const BondOrder order = ctx_.mol().bonds[bond].order;
    using Kind = BondPrimitive::Kind;
    switch (e.prim.kind) {
    case Kind::kAny:
      return true;
    case Kind::kSingle:
      return order == BondOrder::kSingle;
    case Kind::kDouble:
      return order == BondOrder::kDouble;
    case Kind::kTriple:
      return order == BondOrder::kTriple;
    case Kind::kAromatic:
      return order == BondOrder::kAromatic;
    case Kind::kRing:
      return ctx_.rings().bond_in_ring[bond];
    }
    return false;
  }

  bool atom_ok(const AtomExpr &e, int atom) const {
    switch (e.op) {
    case Op::kNot:
      return !atom_ok(e.args.front(), atom);
    case Op::kAnd:
      for (const auto &a: e.args)
        if (!atom_ok(a, atom))
          return false;
      return true;
    case Op::kOr:
      for (const auto &a: e.args)
        if (atom_ok(a, atom))
          return true;
      return false;
    case Op::kPrimitive:
      break;
    }
    const Atom &a = ctx_.mol().atoms[atom];
    const AtomPrimitive &p = e.prim;
    using Kind = AtomPrimitive::Kind;
    switch (p.kind) {
    case Kind::kAny:
      return true;
    case Kind::kElement:
      return a.element == p.value && a.aromatic == p.aromatic;
    case Kind::kAtomicNumber:
      return a.element == p.value;
    case Kind::kAromatic:
      return a.aromatic;
    case Kind::kAliphatic:
      return !a.aromatic;
    case Kind::kDegree:
      return static_cast<int>(ctx_.adj()[atom].size()) == p.value;
    case Kind::kInRing:
      return ctx_.rings().atom_in_ring[atom];
    case Kind::kNotInRing:
      return !ctx_.rings().atom_in_ring[atom];
    case Kind::kHCount:
      return ctx_.total_h(atom) == p.value;
    case Kind::kCharge:
      return a.formal_charge == p.value;
    case Kind::kRecursive:
      return Matcher(ctx_).match_root(*p.recursive, atom);
    }
    return false;
  }

  const MatchContext &ctx_;
  std::vector<bool> used_;
};

}  // namespace

MatchContext::MatchContext(const MoleculeGraph &mol)
    : mol_(&mol), adj_(adjacency(mol)), rings_(ring_info(mol, adj_)),
      total_h_(mol.atoms.size(), 0) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    total_h_[i] = mol.atoms[i].explicit_h;
    for (const Neighbor &nb: adj_[i])
      if (mol.atoms[nb.atom].element == 1)
        ++total_h_[i];
  }
}

SubstructurePattern compile_pattern(std::string_view text) {
  return SubstructurePattern(PatternParser(text).parse(), std::string(text));
}

bool match_pattern(const SubstructurePattern &pattern,
                   const MoleculeGraph &mol, int root) {
  if (root < 0 || root >= mol.num_atoms())
    throw Error(ErrorCode::kIndexOutOfRange,
                "root atom " + std::to_string(root) + " not in molecule");
  return match_pattern(pattern, MatchContext(mol), root);
}

bool match_pattern(const SubstructurePattern &pattern,
                   const MatchContext &context, int root) {
  if (root < 0 || root >= context.mol().num_atoms())
    throw Error(ErrorCode::kIndexOutOfRange,
                "root atom " + std::to_string(root) + " not in molecule");
  if (pattern.root() == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "empty pattern");
  return Matcher(context).match_root(*pattern.root(), root);
}

}  // namespace chemaug
