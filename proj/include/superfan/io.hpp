#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "superfan/category.hpp"
#include "superfan/embedding.hpp"

namespace superfan {

// Raw parse of a fan file: cones by user-visible id, decorations optional on
// non-maximal cones.
struct RawFan {
  Index rank = 0;
  std::vector<std::string> symbols;
  MatQ components;                        // one row per symbol
  std::vector<std::pair<int, MatZ>> cones;  // (id, ray rows)
  std::map<int, MatZ> decorations;
  CParam cparam() const { return CParam(rank, symbols, components); }
};

struct MorphismBlock {
  std::string label;
  std::string dst_path;
  MatZ matrix;
  Rat a = 0;
};

struct FanFile {
  RawFan raw;
  std::vector<MorphismBlock> morphisms;
};

FanFile parse_fan_file(std::istream& in);
FanFile parse_fan_file_path(const std::string& path);

// Build a validated fan; missing face decorations are filled by localization
// from a containing decorated cone. `id_map` (optional) receives user id ->
// canonical index.
std::pair<std::optional<DecoratedFan>, ValidationReport> build_fan(
    const RawFan& raw, std::map<int, Index>* id_map = nullptr);
DecoratedFan load_fan(const std::string& path, std::map<int, Index>* id_map = nullptr);

std::string print_fan_file(const DecoratedFan& x,
                           const std::vector<MorphismBlock>& morphisms = {});

// Morphism file: source/target fan paths plus (matrix, a).
struct MorphismFile {
  std::string src_path, dst_path;
  MatZ matrix;
  Rat a = 0;
};

MorphismFile parse_morphism_file(std::istream& in);
MorphismFile parse_morphism_file_path(const std::string& path);

// Monomial-data file for the affine embedding commands.
MonomialData parse_monomial_file(std::istream& in);
MonomialData parse_monomial_file_path(const std::string& path);
std::string print_monomial_file(const MonomialData& d);

std::string format_rat(const Rat& r);           // "p/q"
std::string format_supertorus(const SupertorusDatum& t, const MatZ* basis = nullptr);

}  // namespace superfan
