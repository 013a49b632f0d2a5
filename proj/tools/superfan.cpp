#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "superfan/errors.hpp"
#include "superfan/io.hpp"

using namespace superfan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;
constexpr int kExitFiberProduct = 3;

int default_box() {
  if (const char* env = std::getenv("SUPERFAN_BOX")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 4;
}

int cmd_validate(const std::string& path) {
  FanFile f = parse_fan_file_path(path);
  auto [fan, rep] = build_fan(f.raw);
  if (!fan) {
    for (const std::string& p : rep.problems) std::cout << "invalid: " << p << "\n";
    return kExitInvalid;
  }
  std::cout << "valid: " << fan->size() << " cones, rank " << fan->rank() << "\n";
  return kExitOk;
}

void print_orbit(const DecoratedFan& fan, Index idx, int user_id) {
  OrbitReport rep = orbit_stabilizer(fan, idx);
  std::cout << "orbit cone " << user_id << ":\n";
  std::cout << "  branch = "
            << (rep.branch == OrbitBranch::even_stabilizer_super_orbit
                    ? "even-stabilizer-super-orbit"
                    : "super-stabilizer-even-orbit")
            << "\n";
  std::cout << "  stab = " << format_supertorus(rep.stabilizer, &rep.stabilizer_basis) << "\n";
  std::cout << "  orbit = " << format_supertorus(rep.orbit) << "\n";
}

void print_closure(const DecoratedFan& fan, Index idx, int user_id) {
  auto closure = orbit_closure(fan, idx);
  std::cout << "closure cone " << user_id << ":\n";
  if (std::holds_alternative<Fan>(closure)) {
    const Fan& f = std::get<Fan>(closure);
    std::cout << "  ordinary toric variety, rank " << f.rank << ", " << f.cones.size()
              << " cones\n";
    for (const Cone& c : f.cones) std::cout << "  cone " << to_string(c.rays()) << "\n";
  } else {
    const DecoratedFan& f = std::get<DecoratedFan>(closure);
    std::cout << "  decorated fan, rank " << f.rank() << ", " << f.size() << " cones\n";
    std::ostringstream os;
    os << print_fan_file(f);
    std::istringstream is(os.str());
    std::string line;
    while (std::getline(is, line)) std::cout << "  | " << line << "\n";
  }
}

int cmd_report(const std::string& path, bool split, bool smooth, bool cspace, bool degree,
               std::vector<int> ds_ids, std::vector<int> orbit_ids, std::vector<int> closure_ids,
               int k_max) {
  std::map<int, Index> id_map;
  DecoratedFan fan = load_fan(path, &id_map);
  auto lookup = [&](int user_id) -> Index {
    auto it = id_map.find(user_id);
    if (it == id_map.end()) throw ValidationError("no cone with id " + std::to_string(user_id));
    return it->second;
  };
  if (split) std::cout << "split = " << (is_split(fan) ? "yes" : "no") << "\n";
  if (smooth) std::cout << "smooth = " << (is_smooth(fan) ? "yes" : "no") << "\n";
  if (cspace) {
    Subspace s = admissible_c_space(fan);
    std::cout << "cspace dim = " << s.dim() << "\n";
    MatZ b = s.integer_basis();
    for (Index i = 0; i < b.rows(); ++i)
      std::cout << "cspace basis " << to_string(VecZ(b.row(i).transpose())) << "\n";
  }
  if (degree) {
    auto d = fermionic_degree(fan);
    if (d)
      std::cout << "degree = O(" << *d << ")\n";
    else
      std::cout << "degree = not applicable\n";
  }
  for (int id : ds_ids) {
    Index idx = lookup(id);
    DSInvariant inv = ds_invariant(fan, idx, k_max);
    std::cout << "ds cone " << id << ":\n";
    std::cout << "  semigroup gens = " << to_string(inv.semigroup_generators) << "\n";
    std::cout << "  ideal gens = " << to_string(inv.ideal_generators) << "\n";
    if (!inv.finite.has_value()) {
      std::cout << "  quotient = inconclusive at k_max\n";
    } else if (!*inv.finite) {
      std::cout << "  quotient = infinite dimensional\n";
    } else {
      std::cout << "  quotient dim = " << inv.quotient_basis.size() << "\n";
      for (const VecZ& b : inv.quotient_basis)
        std::cout << "  quotient basis " << to_string(b) << "\n";
    }
  }
  for (int id : orbit_ids) print_orbit(fan, lookup(id), id);
  for (int id : closure_ids) print_closure(fan, lookup(id), id);
  return kExitOk;
}

int cmd_ideal(const std::string& path, int box) {
  MonomialData data = parse_monomial_file_path(path);
  BinomialSample sample = binomials_in_box(data, box);
  for (const SuperBinomial& b : sample.binomials) {
    if (!verify_vanishing(data, b))
      throw std::logic_error("emitted binomial fails verification: " + b.str());
    std::cout << b.str() << "\n";
  }
  std::cout << "+ (xi_i xi_j)\n";
  return kExitOk;
}

int cmd_fiber_product(const std::string& path1, const std::string& path2,
                      const std::string& out_path) {
  MorphismFile m1 = parse_morphism_file_path(path1);
  MorphismFile m2 = parse_morphism_file_path(path2);
  DecoratedFan src1 = load_fan(m1.src_path);
  DecoratedFan src2 = load_fan(m2.src_path);
  DecoratedFan dst1 = load_fan(m1.dst_path);
  DecoratedFan dst2 = load_fan(m2.dst_path);
  if (!(dst1 == dst2)) {
    std::cout << "error: the morphisms target different objects\n";
    return kExitInvalid;
  }
  DecoratedFanMorphism f1 = validate_morphism(src1, dst1, m1.matrix, m1.a);
  DecoratedFanMorphism f2 = validate_morphism(src2, dst1, m2.matrix, m2.a);
  FiberProductResult fp = fiber_product(f1, f2);
  std::vector<MorphismBlock> blocks;
  blocks.push_back({"proj1", m1.src_path, fp.proj1.phi, fp.proj1.a});
  blocks.push_back({"proj2", m2.src_path, fp.proj2.phi, fp.proj2.a});
  std::string text = print_fan_file(fp.product, blocks);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const std::string& path) {
  FanFile f = parse_fan_file_path(path);
  std::vector<Cone> cones;
  for (const auto& [id, rays] : f.raw.cones) cones.push_back(Cone::from_rays(f.raw.rank, rays));
  SupertorusDatum torus{f.raw.rank, f.raw.cparam()};
  std::vector<DecoratedFan> fans;
  try {
    fans = enumerate_split_decorations(torus, cones);
  } catch (const std::invalid_argument& e) {
    std::cout << "not applicable: " << e.what() << "\n";
    return kExitInvalid;
  }
  std::cout << "count = " << fans.size() << "\n";
  for (size_t i = 0; i < fans.size(); ++i) {
    std::cout << "fan " << i << ":";
    for (Index c = 0; c < fans[i].size(); ++c)
      std::cout << " " << to_string(fans[i].decoration(c));
    auto d = fermionic_degree(fans[i]);
    if (d) std::cout << "  degree O(" << *d << ")";
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decorated polyhedral fans for toric supervarieties with one odd dimension"};
  app.require_subcommand(1);

  std::string path, path2, out_path;
  bool flag_split = false, flag_smooth = false, flag_cspace = false, flag_degree = false;
  std::vector<int> ds_ids, orbit_ids, closure_ids;
  int box = default_box();
  int k_max = 64;

  auto* validate = app.add_subcommand("validate", "check fan and decoration axioms");
  validate->add_option("file", path)->required();

  auto* report = app.add_subcommand("report", "invariants of a validated fan");
  report->add_option("file", path)->required();
  report->add_flag("--split", flag_split);
  report->add_flag("--smooth", flag_smooth);
  report->add_flag("--cspace", flag_cspace);
  report->add_flag("--degree", flag_degree);
  report->add_option("--ds", ds_ids, "DS invariant at a cone id");
  report->add_option("--orbit", orbit_ids, "orbit/stabilizer at a cone id");
  report->add_option("--closure", closure_ids, "orbit closure at a cone id");
  report->add_option("--kmax", k_max, "finiteness search cap");

  auto* ideal = app.add_subcommand("ideal", "binomials of the super toric ideal");
  ideal->add_option("file", path)->required();
  ideal->add_option("--box", box, "sup-norm bound for kernel vectors");

  auto* fp = app.add_subcommand("fiber-product", "pullback of two morphism files");
  fp->add_option("file1", path)->required();
  fp->add_option("file2", path2)->required();
  fp->add_option("--out", out_path, "output fan file ('-' for stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "all c-admissible split decorations");
  enumerate->add_option("file", path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (report->parsed())
      return cmd_report(path, flag_split, flag_smooth, flag_cspace, flag_degree, ds_ids,
                        orbit_ids, closure_ids, k_max);
    if (ideal->parsed()) return cmd_ideal(path, box);
    if (fp->parsed()) return cmd_fiber_product(path, path2, out_path);
    if (enumerate->parsed()) return cmd_enumerate(path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const FiberProductError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitFiberProduct;
  } catch (const MorphismError& e) {
    std::cerr << "invalid morphism: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
