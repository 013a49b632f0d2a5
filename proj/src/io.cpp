#include "superfan/io.hpp"

#include <fstream>
#include <sstream>

#include "superfan/errors.hpp"

namespace superfan {

namespace {

struct Tokenizer {
  std::string line;
  size_t pos = 0;
  int lineno = 0;

  bool next_token(std::string& out) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) return false;
    size_t start = pos;
    if (line[pos] == '[') {
      int depth = 0;
      while (pos < line.size()) {
        if (line[pos] == '[') ++depth;
        if (line[pos] == ']') {
          --depth;
          if (depth == 0) {
            ++pos;
            break;
          }
        }
        ++pos;
      }
      if (depth != 0) throw ParseError(lineno, "unbalanced brackets");
    } else {
      while (pos < line.size() && line[pos] != ' ') ++pos;
    }
    out = line.substr(start, pos - start);
    return true;
  }
};

Int parse_int(const std::string& s, int lineno) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw ParseError(lineno, "malformed integer '" + s + "'");
  }
}

Rat parse_rat(const std::string& s, int lineno) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ParseError(lineno, "zero denominator");
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError(lineno, "malformed rational '" + s + "'");
  }
}

// "[a,b,c]" -> integer vector
VecZ parse_vec(const std::string& s, int lineno) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError(lineno, "expected bracketed vector, got '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<Int> entries;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      entries.push_back(parse_int(cur, lineno));
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) entries.push_back(parse_int(cur, lineno));
  VecZ v(static_cast<Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Index>(i)) = entries[i];
  return v;
}

VecQ parse_qvec(const std::string& s, int lineno) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError(lineno, "expected bracketed vector, got '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<Rat> entries;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      entries.push_back(parse_rat(cur, lineno));
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) entries.push_back(parse_rat(cur, lineno));
  VecQ v(static_cast<Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Index>(i)) = entries[i];
  return v;
}

MatZ parse_row_list(Tokenizer& tok, Index rank) {
  std::vector<VecZ> rows;
  std::string t;
  while (tok.next_token(t)) {
    VecZ v = parse_vec(t, tok.lineno);
    if (v.size() != rank) throw ParseError(tok.lineno, "vector length differs from rank");
    rows.push_back(v);
  }
  return from_rows(rows, rank);
}

std::string fmt_vec(const Eigen::Ref<const VecZ>& v) {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v(i);
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string format_rat(const Rat& r) {
  std::ostringstream os;
  os << r.get_num() << "/" << r.get_den();
  return os.str();
}

FanFile parse_fan_file(std::istream& in) {
  FanFile out;
  RawFan& raw = out.raw;
  bool have_header = false, have_rank = false;
  std::vector<std::pair<std::string, VecQ>> comps;
  MorphismBlock* open_block = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    Tokenizer tok{line, 0, lineno};
    std::string key;
    if (!tok.next_token(key)) continue;
    if (!have_header) {
      std::string kind, version;
      if (key != "superfan" || !tok.next_token(kind) || kind != "fan" ||
          !tok.next_token(version) || version != "1")
        throw ParseError(lineno, "expected header 'superfan fan 1'");
      have_header = true;
      continue;
    }
    if (open_block) {
      if (key == "dst") {
        if (!tok.next_token(open_block->dst_path)) throw ParseError(lineno, "dst needs a path");
      } else if (key == "a") {
        std::string t;
        if (!tok.next_token(t)) throw ParseError(lineno, "a needs a value");
        open_block->a = parse_rat(t, lineno);
      } else if (key == "matrix") {
        std::vector<VecZ> rows;
        std::string t;
        while (tok.next_token(t)) rows.push_back(parse_vec(t, lineno));
        open_block->matrix = from_rows(rows, rows.empty() ? 0 : rows[0].size());
      } else if (key == "end") {
        open_block = nullptr;
      } else {
        throw ParseError(lineno, "unknown key '" + key + "' inside morphism block");
      }
      continue;
    }
    if (key == "rank") {
      std::string t;
      if (!tok.next_token(t)) throw ParseError(lineno, "rank needs a value");
      raw.rank = static_cast<Index>(parse_int(t, lineno).get_si());
      have_rank = true;
    } else if (key == "transcendentals") {
      std::string t;
      while (tok.next_token(t)) raw.symbols.push_back(t);
    } else if (key == "c") {
      std::string sym, t;
      if (!tok.next_token(sym) || !tok.next_token(t))
        throw ParseError(lineno, "c needs a symbol and a vector");
      VecQ v = parse_qvec(t, lineno);
      if (!have_rank || v.size() != raw.rank)
        throw ParseError(lineno, "c vector length differs from rank");
      comps.push_back({sym, v});
    } else if (key == "cone") {
      std::string t;
      if (!tok.next_token(t)) throw ParseError(lineno, "cone needs an id");
      int id = static_cast<int>(parse_int(t, lineno).get_si());
      if (!have_rank) throw ParseError(lineno, "cone before rank");
      raw.cones.push_back({id, parse_row_list(tok, raw.rank)});
    } else if (key == "decoration") {
      std::string t;
      if (!tok.next_token(t)) throw ParseError(lineno, "decoration needs a cone id");
      int id = static_cast<int>(parse_int(t, lineno).get_si());
      if (!have_rank) throw ParseError(lineno, "decoration before rank");
      MatZ rows = parse_row_list(tok, raw.rank);
      if (rows.rows() == 0) throw ParseError(lineno, "empty decoration");
      raw.decorations[id] = rows;
    } else if (key == "morphism") {
      MorphismBlock b;
      if (!tok.next_token(b.label)) throw ParseError(lineno, "morphism needs a label");
      out.morphisms.push_back(std::move(b));
      open_block = &out.morphisms.back();
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header 'superfan fan 1'");
  if (open_block) throw ParseError(lineno, "unterminated morphism block");
  // symbols default to the ones used by c lines
  std::vector<std::string> syms;
  MatQ m(static_cast<Index>(comps.size()), raw.rank);
  for (size_t i = 0; i < comps.size(); ++i) {
    syms.push_back(comps[i].first);
    m.row(static_cast<Index>(i)) = comps[i].second.transpose();
  }
  raw.symbols = syms;
  raw.components = m;
  return out;
}

FanFile parse_fan_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_fan_file(in);
}

std::pair<std::optional<DecoratedFan>, ValidationReport> build_fan(const RawFan& raw,
                                                                   std::map<int, Index>* id_map) {
  ValidationReport rep;
  std::vector<Cone> cones;
  std::vector<int> ids;
  for (const auto& [id, rays] : raw.cones) {
    for (int seen : ids)
      if (seen == id) rep.problems.push_back("duplicate cone id " + std::to_string(id));
    cones.push_back(Cone::from_rays(raw.rank, rays));
    ids.push_back(id);
  }
  for (const auto& [id, rows] : raw.decorations) {
    bool known = false;
    for (int seen : ids)
      if (seen == id) known = true;
    if (!known) rep.problems.push_back("decoration for unknown cone id " + std::to_string(id));
  }
  if (!rep.ok()) return {std::nullopt, rep};
  rep = validate_fan(raw.rank, cones);
  if (!rep.ok()) return {std::nullopt, rep};
  // fill missing decorations by localizing from a containing decorated cone
  std::vector<MatZ> decorations(cones.size());
  std::vector<bool> have(cones.size(), false);
  for (size_t i = 0; i < cones.size(); ++i) {
    auto it = raw.decorations.find(ids[i]);
    if (it != raw.decorations.end()) {
      decorations[i] = it->second;
      have[i] = true;
    }
  }
  for (size_t i = 0; i < cones.size(); ++i) {
    if (have[i]) continue;
    bool filled = false;
    for (size_t j = 0; j < cones.size() && !filled; ++j) {
      if (i == j || !have[j] || !cones[j].has_face(cones[i])) continue;
      AffineSemigroup s(cones[i]);
      decorations[i] = minimalize(decorations[j], s).gens;
      filled = true;
    }
    if (!filled) {
      rep.problems.push_back("cone id " + std::to_string(ids[i]) +
                             ": no decoration given and no decorated cone contains it");
    }
  }
  if (!rep.ok()) return {std::nullopt, rep};
  auto [fan, brep] = DecoratedFan::build({raw.rank, raw.cparam()}, cones, decorations);
  if (!fan) return {std::nullopt, brep};
  if (id_map) {
    for (size_t i = 0; i < cones.size(); ++i) (*id_map)[ids[i]] = fan->index_of(cones[i]);
  }
  return {std::move(fan), ValidationReport{}};
}

DecoratedFan load_fan(const std::string& path, std::map<int, Index>* id_map) {
  FanFile f = parse_fan_file_path(path);
  auto [fan, rep] = build_fan(f.raw, id_map);
  if (!fan) throw ValidationError("invalid fan '" + path + "':\n" + rep.str());
  return std::move(*fan);
}

std::string print_fan_file(const DecoratedFan& x, const std::vector<MorphismBlock>& morphisms) {
  std::ostringstream os;
  os << "superfan fan 1\n";
  os << "rank " << x.rank() << "\n";
  const CParam& c = x.torus().c;
  if (c.terms() > 0) {
    os << "transcendentals";
    for (const std::string& s : c.symbols()) os << " " << s;
    os << "\n";
    for (Index t = 0; t < c.terms(); ++t) {
      os << "c " << c.symbols()[static_cast<size_t>(t)] << " [";
      for (Index j = 0; j < c.rank(); ++j) {
        if (j) os << ",";
        os << format_rat(c.components()(t, j));
      }
      os << "]\n";
    }
  }
  for (Index i = 0; i < x.size(); ++i) {
    os << "cone " << i;
    for (Index r = 0; r < x.cone(i).rays().rows(); ++r)
      os << " " << fmt_vec(x.cone(i).rays().row(r).transpose());
    os << "\n";
  }
  for (Index i = 0; i < x.size(); ++i) {
    os << "decoration " << i;
    for (Index r = 0; r < x.decoration(i).rows(); ++r)
      os << " " << fmt_vec(x.decoration(i).row(r).transpose());
    os << "\n";
  }
  for (const MorphismBlock& b : morphisms) {
    os << "morphism " << b.label << "\n";
    if (!b.dst_path.empty()) os << "dst " << b.dst_path << "\n";
    os << "a " << format_rat(b.a) << "\n";
    os << "matrix";
    for (Index r = 0; r < b.matrix.rows(); ++r) os << " " << fmt_vec(b.matrix.row(r).transpose());
    os << "\n";
    os << "end\n";
  }
  return os.str();
}

MorphismFile parse_morphism_file(std::istream& in) {
  MorphismFile out;
  bool have_header = false, have_a = false;
  std::string line;
  int lineno = 0;
  std::vector<VecZ> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    Tokenizer tok{line, 0, lineno};
    std::string key;
    if (!tok.next_token(key)) continue;
    if (!have_header) {
      std::string kind, version;
      if (key != "superfan" || !tok.next_token(kind) || kind != "morphism" ||
          !tok.next_token(version) || version != "1")
        throw ParseError(lineno, "expected header 'superfan morphism 1'");
      have_header = true;
      continue;
    }
    if (key == "src") {
      if (!tok.next_token(out.src_path)) throw ParseError(lineno, "src needs a path");
    } else if (key == "dst") {
      if (!tok.next_token(out.dst_path)) throw ParseError(lineno, "dst needs a path");
    } else if (key == "a") {
      std::string t;
      if (!tok.next_token(t)) throw ParseError(lineno, "a needs a value");
      out.a = parse_rat(t, lineno);
      have_a = true;
    } else if (key == "matrix") {
      std::string t;
      while (tok.next_token(t)) rows.push_back(parse_vec(t, lineno));
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header 'superfan morphism 1'");
  if (out.src_path.empty() || out.dst_path.empty())
    throw ParseError(lineno, "morphism file needs src and dst paths");
  if (!have_a) throw ParseError(lineno, "morphism file needs a scalar line 'a p/q'");
  out.matrix = from_rows(rows, rows.empty() ? 0 : rows[0].size());
  return out;
}

MorphismFile parse_morphism_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_morphism_file(in);
}

MonomialData parse_monomial_file(std::istream& in) {
  bool have_header = false, have_rank = false;
  Index rank = 0;
  std::vector<std::pair<std::string, VecQ>> comps;
  std::vector<VecZ> arows, brows;
  bool have_b = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    Tokenizer tok{line, 0, lineno};
    std::string key;
    if (!tok.next_token(key)) continue;
    if (!have_header) {
      std::string kind, version;
      if (key != "superfan" || !tok.next_token(kind) || kind != "monomial" ||
          !tok.next_token(version) || version != "1")
        throw ParseError(lineno, "expected header 'superfan monomial 1'");
      have_header = true;
      continue;
    }
    if (key == "rank") {
      std::string t;
      if (!tok.next_token(t)) throw ParseError(lineno, "rank needs a value");
      rank = static_cast<Index>(parse_int(t, lineno).get_si());
      have_rank = true;
    } else if (key == "c") {
      std::string sym, t;
      if (!tok.next_token(sym) || !tok.next_token(t))
        throw ParseError(lineno, "c needs a symbol and a vector");
      VecQ v = parse_qvec(t, lineno);
      if (!have_rank || v.size() != rank)
        throw ParseError(lineno, "c vector length differs from rank");
      comps.push_back({sym, v});
    } else if (key == "A") {
      std::string t;
      while (tok.next_token(t)) arows.push_back(parse_vec(t, lineno));
    } else if (key == "B") {
      have_b = true;
      std::string t;
      while (tok.next_token(t)) brows.push_back(parse_vec(t, lineno));
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header 'superfan monomial 1'");
  if (!have_rank) throw ParseError(lineno, "missing rank");
  std::vector<std::string> syms;
  MatQ m(static_cast<Index>(comps.size()), rank);
  for (size_t i = 0; i < comps.size(); ++i) {
    syms.push_back(comps[i].first);
    m.row(static_cast<Index>(i)) = comps[i].second.transpose();
  }
  CParam c(rank, syms, m);
  MatZ A = from_rows(arows, rank);
  if (!have_b) return make_monomial_data_same(rank, c, A);
  // extra B rows are those beyond A' (the A'-block is implied)
  auto [prime, second] = split_by_c(A, c);
  std::vector<VecZ> extra;
  for (const VecZ& b : brows) {
    bool is_prime = false;
    for (Index i : prime)
      if (exact_eq(VecZ(A.row(i).transpose()), b)) is_prime = true;
    if (!is_prime) extra.push_back(b);
  }
  return make_monomial_data(rank, c, A, from_rows(extra, rank));
}

MonomialData parse_monomial_file_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_monomial_file(in);
}

std::string print_monomial_file(const MonomialData& d) {
  std::ostringstream os;
  os << "superfan monomial 1\n";
  os << "rank " << d.mrank << "\n";
  for (Index t = 0; t < d.c.terms(); ++t) {
    os << "c " << d.c.symbols()[static_cast<size_t>(t)] << " [";
    for (Index j = 0; j < d.mrank; ++j) {
      if (j) os << ",";
      os << format_rat(d.c.components()(t, j));
    }
    os << "]\n";
  }
  os << "A";
  for (Index i = 0; i < d.A.rows(); ++i) os << " " << fmt_vec(d.A.row(i).transpose());
  os << "\n";
  os << "B";
  for (Index i = 0; i < d.B.rows(); ++i) os << " " << fmt_vec(d.B.row(i).transpose());
  os << "\n";
  return os.str();
}

std::string format_supertorus(const SupertorusDatum& t, const MatZ* basis) {
  std::ostringstream os;
  os << "T{rank " << t.rank;
  if (basis && basis->rows() > 0) {
    os << ", basis";
    for (Index i = 0; i < basis->rows(); ++i) os << " " << fmt_vec(basis->row(i).transpose());
  }
  if (t.c.terms() == 0) {
    os << ", even}";
    return os.str();
  }
  for (Index k = 0; k < t.c.terms(); ++k) {
    os << ", c[" << t.c.symbols()[static_cast<size_t>(k)] << "]=[";
    for (Index j = 0; j < t.rank; ++j) {
      if (j) os << ",";
      os << format_rat(t.c.components()(k, j));
    }
    os << "]";
  }
  os << "}";
  return os.str();
}

}  // namespace superfan
