//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/cif.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "chemaug/elements.h"
#include "chemaug/error.h"

namespace chemaug {

// ---- lattice helpers ----

namespace {

// cos/sin of an angle in degrees, exact at the right angles that dominate
// real cells.
double cos_deg(double deg) {
  if (deg == 90.0)
    return 0.0;
  if (deg == 60.0)
    return 0.5;
  if (deg == 120.0)
    return -0.5;
  return std::cos(deg * std::numbers::pi / 180.0);
}

double sin_deg(double deg) {
  if (deg == 90.0)
    return 1.0;
  return std::sin(deg * std::numbers::pi / 180.0);
}

double angle_deg(const Eigen::Vector3d &u, const Eigen::Vector3d &v) {
  // atan2 form stays accurate near 0 and 180 degrees
  return std::atan2(u.cross(v).norm(), u.dot(v)) * 180.0 / std::numbers::pi;
}

}  // namespace

Eigen::Matrix3d lattice_from_parameters(const CellParameters &p) {
  const double ca = cos_deg(p.alpha), cb = cos_deg(p.beta),
               cg = cos_deg(p.gamma), sg = sin_deg(p.gamma);
  const double cx = p.c * cb;
  const double cy = p.c * (ca - cb * cg) / sg;
  const double cz2 = p.c * p.c - cx * cx - cy * cy;
  if (!(cz2 > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "cell angles do not form a cell");
  Eigen::Matrix3d m;
  m << p.a, 0.0, 0.0,        //
      p.b * cg, p.b * sg, 0.0,  //
      cx, cy, std::sqrt(cz2);
  return m;
}

CellParameters parameters_from_lattice(const Eigen::Matrix3d &lattice) {
  const Eigen::Vector3d a = lattice.row(0), b = lattice.row(1),
                        c = lattice.row(2);
  return { a.norm(),          b.norm(),          c.norm(),
           angle_deg(b, c),   angle_deg(a, c),   angle_deg(a, b) };
}

double wrap_unit(double x) noexcept {
  double w = x - std::floor(x);
  if (w >= 1.0)
    w = 0.0;
  return w;
}

Eigen::Vector3d wrap_unit(const Eigen::Vector3d &frac) noexcept {
  return { wrap_unit(frac.x()), wrap_unit(frac.y()), wrap_unit(frac.z()) };
}

void validate(const CrystalStructure &s) {
  if (!(s.lattice.determinant() > 0.0))
    throw Error(ErrorCode::kInvalidArgument,
                "lattice determinant must be positive");
  if (s.sites.empty())
    throw Error(ErrorCode::kInvalidArgument, "structure has no sites");
  for (const Site &site: s.sites)
    for (int k = 0; k < 3; ++k)
      if (!(site.frac[k] >= 0.0 && site.frac[k] < 1.0))
        throw Error(ErrorCode::kInvalidArgument,
                    "fractional coordinate outside [0, 1)");
}

// ---- parsing ----

namespace {

struct Token {
  std::string text;
  std::size_t offset;
  bool quoted;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto at_line_start = [&](std::size_t p) {
    return p == 0 || text[p - 1] == '\n' || text[p - 1] == '\r';
  };
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n')
        ++i;
      continue;
    }
    if (c == ';' && at_line_start(i)) {
      const std::size_t start = i++;
      std::string value;
      while (i < n && !(text[i] == ';' && at_line_start(i)))
        value += text[i++];
      if (i >= n)
        throw Error(ErrorCode::kBadNumber, "unterminated text field", start);
      ++i;
      tokens.push_back({ value, start, true });
      continue;
    }
    if (c == '\'' || c == '"') {
      const std::size_t start = i++;
      std::string value;
      while (i < n
             && !(text[i] == c
                  && (i + 1 >= n
                      || std::isspace(static_cast<unsigned char>(text[i + 1])))))
        value += text[i++];
      if (i >= n)
        throw Error(ErrorCode::kBadNumber, "unterminated quoted value", start);
      ++i;
      tokens.push_back({ value, start, true });
      continue;
    }
    const std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    tokens.push_back({ std::string(text.substr(start, i - start)), start,
                       false });
  }
  return tokens;
}

std::string lower(std::string s) {
  for (char &c: s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_tag(const Token &t) { return !t.quoted && t.text.starts_with('_'); }

bool is_keyword(const Token &t, std::string_view kw) {
  return !t.quoted && lower(t.text).starts_with(kw);
}

struct Loop {
  std::vector<std::string> tags;
  std::vector<Token> values;

  int column(std::string_view tag) const {
    for (std::size_t i = 0; i < tags.size(); ++i)
      if (tags[i] == tag)
        return static_cast<int>(i);
    return -1;
  }
  std::size_t rows() const { return values.size() / tags.size(); }
  const Token &at(std::size_t row, int col) const {
    return values[row * tags.size() + col];
  }
};

struct Block {
  std::map<std::string, Token> items;
  std::vector<Loop> loops;

  const Loop *loop_with(std::string_view tag) const {
    for (const Loop &l: loops)
      if (l.column(tag) >= 0)
        return &l;
    return nullptr;
  }
};

Block read_block(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  Block block;
  bool in_block = false;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token &t = tokens[i];
    if (is_keyword(t, "data_")) {
      if (in_block)
        throw Error(ErrorCode::kUnsupportedFeature,
                    "more than one data block", t.offset);
      in_block = true;
      ++i;
      continue;
    }
    if (is_keyword(t, "loop_")) {
      Loop loop;
      ++i;
      while (i < tokens.size() && is_tag(tokens[i]))
        loop.tags.push_back(lower(tokens[i++].text));
      while (i < tokens.size() && !is_tag(tokens[i])
             && !is_keyword(tokens[i], "loop_")
             && !is_keyword(tokens[i], "data_"))
        loop.values.push_back(tokens[i++]);
      if (loop.tags.empty())
        throw Error(ErrorCode::kBadNumber, "loop_ without tags", t.offset);
      if (loop.values.size() % loop.tags.size() != 0)
        throw Error(ErrorCode::kBadNumber,
                    "loop starting with " + loop.tags.front()
                        + " has a ragged value list",
                    t.offset);
      block.loops.push_back(std::move(loop));
      continue;
    }
    if (is_tag(t)) {
      if (i + 1 >= tokens.size() || is_tag(tokens[i + 1]))
        throw Error(ErrorCode::kBadNumber, t.text + " has no value", t.offset);
      block.items.emplace(lower(t.text), tokens[i + 1]);
      i += 2;
      continue;
    }
    // stray value; unknown content is ignored
    ++i;
  }
  return block;
}

double parse_number(const Token &t, std::string_view tag) {
  std::string_view s = t.text;
  if (auto paren = s.find('('); paren != std::string_view::npos)
    s = s.substr(0, paren);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::kBadNumber,
                std::string(tag) + " = '" + t.text + "'", t.offset);
  return v;
}

double cell_value(const Block &block, std::string_view tag) {
  auto it = block.items.find(std::string(tag));
  if (it == block.items.end())
    throw Error(ErrorCode::kMissingCellParameter, std::string(tag));
  return parse_number(it->second, tag);
}

int element_of(const Token &t) {
  std::string s = t.text;
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
    throw Error(ErrorCode::kUnknownElement, "species '" + s + "'", t.offset);
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (s.size() > 1 && std::islower(static_cast<unsigned char>(s[1])))
    if (auto z = element_from_symbol(s.substr(0, 2)); z && *z > 0)
      return *z;
  if (auto z = element_from_symbol(s.substr(0, 1)); z && *z > 0)
    return *z;
  throw Error(ErrorCode::kUnknownElement, "species '" + t.text + "'",
              t.offset);
}

struct SymOp {
  Eigen::Matrix3d rot = Eigen::Matrix3d::Zero();
  Eigen::Vector3d shift = Eigen::Vector3d::Zero();
};

SymOp parse_symop(const Token &t) {
  SymOp op;
  std::vector<std::string> parts(1);
  for (char c: t.text) {
    if (c == ',')
      parts.emplace_back();
    else if (!std::isspace(static_cast<unsigned char>(c)))
      parts.back() += c;
  }
  if (parts.size() != 3)
    throw Error(ErrorCode::kBadNumber,
                "symmetry operator '" + t.text + "'", t.offset);

  for (int row = 0; row < 3; ++row) {
    const std::string &p = parts[row];
    std::size_t i = 0;
    bool any = false;
    while (i < p.size()) {
      double sign = 1.0;
      while (i < p.size() && (p[i] == '+' || p[i] == '-')) {
        if (p[i] == '-')
          sign = -sign;
        ++i;
      }
      if (i >= p.size())
        break;
      double number = 1.0;
      bool has_number = false;
      if (std::isdigit(static_cast<unsigned char>(p[i])) || p[i] == '.') {
        const std::size_t start = i;
        while (i < p.size()
               && (std::isdigit(static_cast<unsigned char>(p[i]))
                   || p[i] == '.'))
          ++i;
        double num = 0.0;
        std::from_chars(p.data() + start, p.data() + i, num);
        if (i < p.size() && p[i] == '/') {
          const std::size_t ds = ++i;
          while (i < p.size() && std::isdigit(static_cast<unsigned char>(p[i])))
            ++i;
          double den = 0.0;
          std::from_chars(p.data() + ds, p.data() + i, den);
          if (den == 0.0)
            throw Error(ErrorCode::kBadNumber,
                        "symmetry operator '" + t.text + "'", t.offset);
          num /= den;
        }
        number = num;
        has_number = true;
        if (i < p.size() && p[i] == '*')
          ++i;
      }
      if (i < p.size() && std::isalpha(static_cast<unsigned char>(p[i]))) {
        const char v = static_cast<char>(
            std::tolower(static_cast<unsigned char>(p[i])));
        if (v < 'x' || v > 'z')
          throw Error(ErrorCode::kBadNumber,
                      "symmetry operator '" + t.text + "'", t.offset);
        op.rot(row, v - 'x') += sign * number;
        ++i;
      } else if (has_number) {
        op.shift[row] += sign * number;
      } else {
        throw Error(ErrorCode::kBadNumber,
                    "symmetry operator '" + t.text + "'", t.offset);
      }
      any = true;
    }
    if (!any)
      throw Error(ErrorCode::kBadNumber,
                  "symmetry operator '" + t.text + "'", t.offset);
  }
  return op;
}

}  // namespace

CrystalStructure parse_cif(std::string_view text) {
  const Block block = read_block(text);

  CellParameters cell {};
  cell.a = cell_value(block, "_cell_length_a");
  cell.b = cell_value(block, "_cell_length_b");
  cell.c = cell_value(block, "_cell_length_c");
  cell.alpha = cell_value(block, "_cell_angle_alpha");
  cell.beta = cell_value(block, "_cell_angle_beta");
  cell.gamma = cell_value(block, "_cell_angle_gamma");
  if (!(cell.a > 0 && cell.b > 0 && cell.c > 0))
    throw Error(ErrorCode::kBadNumber, "cell lengths must be positive");

  CrystalStructure s;
  s.lattice = lattice_from_parameters(cell);

  const Loop *atoms = block.loop_with("_atom_site_fract_x");
  if (atoms == nullptr)
    throw Error(ErrorCode::kMissingAtomLoop, "_atom_site_fract_x");
  const int cx = atoms->column("_atom_site_fract_x");
  const int cy = atoms->column("_atom_site_fract_y");
  const int cz = atoms->column("_atom_site_fract_z");
  if (cy < 0)
    throw Error(ErrorCode::kMissingAtomLoop, "_atom_site_fract_y");
  if (cz < 0)
    throw Error(ErrorCode::kMissingAtomLoop, "_atom_site_fract_z");
  int species = atoms->column("_atom_site_type_symbol");
  if (species < 0)
    species = atoms->column("_atom_site_label");
  if (species < 0)
    throw Error(ErrorCode::kMissingAtomLoop, "_atom_site_type_symbol");
  const int occ = atoms->column("_atom_site_occupancy");

  std::vector<SymOp> ops;
  for (const char *tag: { "_symmetry_equiv_pos_as_xyz",
                          "_space_group_symop_operation_xyz" }) {
    if (const Loop *l = block.loop_with(tag)) {
      const int col = l->column(tag);
      for (std::size_t r = 0; r < l->rows(); ++r)
        ops.push_back(parse_symop(l->at(r, col)));
      break;
    }
    if (auto it = block.items.find(tag); it != block.items.end()) {
      ops.push_back(parse_symop(it->second));
      break;
    }
  }
  if (ops.empty()) {
    SymOp identity;
    identity.rot = Eigen::Matrix3d::Identity();
    ops.push_back(identity);
  }

  constexpr double kMergeTolerance = 1e-3;  // Angstrom
  for (std::size_t r = 0; r < atoms->rows(); ++r) {
    const int element = element_of(atoms->at(r, species));
    if (occ >= 0) {
      const Token &t = atoms->at(r, occ);
      if (t.text != "?" && t.text != ".") {
        const double o = parse_number(t, "_atom_site_occupancy");
        if (std::abs(o - 1.0) > 1e-3)
          throw Error(ErrorCode::kPartialOccupancyUnsupported,
                      "occupancy " + t.text, t.offset);
      }
    }
    const Eigen::Vector3d f(parse_number(atoms->at(r, cx), "_atom_site_fract_x"),
                            parse_number(atoms->at(r, cy), "_atom_site_fract_y"),
                            parse_number(atoms->at(r, cz), "_atom_site_fract_z"));
    for (const SymOp &op: ops) {
      const Eigen::Vector3d g = wrap_unit(Eigen::Vector3d(op.rot * f + op.shift));
      bool duplicate = false;
      for (const Site &existing: s.sites) {
        if (existing.element != element)
          continue;
        Eigen::Vector3d d = g - existing.frac;
        for (int k = 0; k < 3; ++k)
          d[k] -= std::round(d[k]);
        if ((d.transpose() * s.lattice).norm() < kMergeTolerance) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate)
        s.sites.push_back({ element, g });
    }
  }
  if (s.sites.empty())
    throw Error(ErrorCode::kMissingAtomLoop, "atom site loop has no rows");
  return s;
}

// ---- writing ----

namespace {

void append_fixed(std::string &out, double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  out += buf;
}

std::string coordinate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "1.000000" || s == "-0.000000")
    s = "0.000000";
  return s;
}

}  // namespace

std::string write_cif(const CrystalStructure &s, std::string_view block_name) {
  const CellParameters p = parameters_from_lattice(s.lattice);
  std::string out;
  out += "data_";
  out += block_name;
  out += '\n';
  const std::pair<const char *, double> cell[] = {
    { "_cell_length_a    ", p.a },     { "_cell_length_b    ", p.b },
    { "_cell_length_c    ", p.c },     { "_cell_angle_alpha ", p.alpha },
    { "_cell_angle_beta  ", p.beta },  { "_cell_angle_gamma ", p.gamma },
  };
  for (auto [tag, v]: cell) {
    out += tag;
    append_fixed(out, v, 8);
    out += '\n';
  }
  out += "_symmetry_space_group_name_H-M 'P 1'\n"
         "_symmetry_Int_Tables_number 1\n"
         "loop_\n"
         " _symmetry_equiv_pos_site_id\n"
         " _symmetry_equiv_pos_as_xyz\n"
         "  1 'x, y, z'\n"
         "loop_\n"
         " _atom_site_label\n"
         " _atom_site_type_symbol\n"
         " _atom_site_fract_x\n"
         " _atom_site_fract_y\n"
         " _atom_site_fract_z\n"
         " _atom_site_occupancy\n";

  std::map<int, int> counts;
  for (const Site &site: s.sites) {
    const std::string sym(element_symbol(site.element));
    out += "  ";
    out += sym;
    out += std::to_string(++counts[site.element]);
    out += ' ';
    out += sym;
    for (int k = 0; k < 3; ++k) {
      out += ' ';
      out += coordinate(site.frac[k]);
    }
    out += " 1\n";
  }
  return out;
}

}  // namespace chemaug
