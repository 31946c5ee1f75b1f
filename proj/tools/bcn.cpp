// bcn: command line front end for the combinatorial Burnside group engine.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bcn/burnside.hpp"
#include "bcn/catalog.hpp"
#include "bcn/reproduce.hpp"
#include "bcn/serialize.hpp"

namespace fs = std::filesystem;
using namespace bcn;

namespace {

constexpr const char* kCacheVersion = "bcn-cache-2";

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string group;
  std::size_t n = 2;
  std::string flavor = "bc";
  std::string format = "text";
  std::string tier = "desk";
  std::string cache;
  unsigned threads = 1;
};

GroupLimits limits_for(const Config& c) {
  GroupLimits l;
  if (c.tier == "desk") l.max_order = 1000;
  return l;
}

void check_tier(const Config& c, std::size_t n) {
  if (c.tier == "desk" && n > 4) throw ResourceError("n = " + std::to_string(n) + " is above the desk tier (n <= 4); use --tier stretch");
  if (c.tier == "stretch") std::cerr << "warning: stretch tier, this can take a long time and a lot of memory\n";
}

GroupPtr load_group(const Config& c) {
  if (c.group.empty()) throw ParseError("--group is required");
  return resolve_group(c.group, limits_for(c));
}

// one file per key; the header carries the cache version and the key itself
std::string cache_file(const Config& c, const std::string& key) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::string stem;
  for (char ch : key) stem += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  if (stem.size() > 60) stem.resize(60);
  std::ostringstream os;
  os << stem << "-" << std::hex << h << ".json";
  return (fs::path(c.cache) / os.str()).string();
}

std::optional<Json> cache_get(const Config& c, const std::string& key) {
  if (c.cache.empty()) return std::nullopt;
  std::ifstream in(cache_file(c, key));
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (j.value("version", "") != kCacheVersion || j.value("key", "") != key) return std::nullopt;
    return j.at("result");
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void cache_put(const Config& c, const std::string& key, const Json& result) {
  if (c.cache.empty()) return;
  fs::create_directories(c.cache);
  std::string path = cache_file(c, key);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << Json{{"version", kCacheVersion}, {"key", key}, {"result", result}}.dump(1) << "\n";
  }
  fs::rename(tmp, path);
}

template <class F>
Json cached(const Config& c, const std::string& key, F&& compute) {
  if (auto hit = cache_get(c, key)) return *hit;
  Json r = compute();
  cache_put(c, key, r);
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// a formal sum file is either a bare term list or an object with "class"
Json sum_part(const Json& j) {
  if (j.is_object() && j.contains("class")) return j.at("class");
  return j;
}

Flavor flavor_of(const std::string& f) {
  if (f == "bc") return Flavor::BC;
  if (f == "bcprime" || f == "bc'") return Flavor::BCPrime;
  throw ParseError("unknown flavor " + f);
}

Json result_json(const Config& c, std::size_t n, const std::string& flavor, const AbelianInvariants& a) {
  Json j = invariants_json(a);
  j["group"] = c.group;
  j["n"] = n;
  j["flavor"] = flavor;
  j["summands"] = Json::array();
  return j;
}

void print_invariants(const Json& j) {
  std::cout << j.at("primary_display").get<std::string>() << "\n";
  std::cout << "  invariant factors: " << j.at("chain_display").get<std::string>() << "\n";
}

std::string order_text(const std::optional<Int>& o) { return o ? o->get_str() : "infinite"; }

int cmd_compute(const Config& c) {
  check_tier(c, c.n);
  Flavor f = flavor_of(c.flavor);
  const std::string key = "compute|" + c.group + "|" + std::to_string(c.n) + "|" + flavor_name(f);
  Json r = cached(c, key, [&] {
    Burnside b(load_group(c), c.threads);
    AbelianInvariants a = f == Flavor::BC ? b.bc(c.n) : b.bc_prime_total(c.n);
    return result_json(c, c.n, flavor_name(f), a);
  });
  if (c.format == "json")
    std::cout << r.dump(2) << "\n";
  else
    print_invariants(r);
  return 0;
}

int cmd_decompose(const Config& c) {
  check_tier(c, c.n);
  const std::string key = "decompose|" + c.group + "|" + std::to_string(c.n);
  Json r = cached(c, key, [&] {
    Burnside b(load_group(c), c.threads);
    DecompositionReport d = b.bc_prime(c.n);
    Json j = result_json(c, c.n, flavor_name(Flavor::BCPrime), d.total);
    for (const auto& s : d.summands) {
      const PairClass& p = b.context().pair_class(s.pair_class);
      const auto& g = *b.group();
      Json e = invariants_json(s.invariants);
      e["class"] = s.pair_class;
      e["H"] = cycles_of(g, p.h.generators());
      e["Y"] = cycles_of(g, p.y.generators());
      e["h_order"] = s.h_order;
      e["orbit_size"] = p.orbit_size;
      j["summands"].push_back(e);
    }
    return j;
  });
  if (c.format == "json") {
    std::cout << r.dump(2) << "\n";
    return 0;
  }
  std::cout << "BC'_" << c.n << "(" << c.group << ") = " << r.at("primary_display").get<std::string>() << "\n";
  for (const auto& s : r.at("summands")) {
    if (s.at("free_rank").get<std::size_t>() == 0 && s.at("torsion").empty()) continue;
    std::cout << "  [<" << s.at("H").get<std::vector<std::string>>().front();
    for (std::size_t i = 1; i < s.at("H").size(); ++i) std::cout << "," << s.at("H")[i].get<std::string>();
    std::cout << ">, <";
    for (std::size_t i = 0; i < s.at("Y").size(); ++i) std::cout << (i ? "," : "") << s.at("Y")[i].get<std::string>();
    std::cout << ">]  |H| = " << s.at("h_order") << "  " << s.at("primary_display").get<std::string>() << "\n";
  }
  return 0;
}

int cmd_verify(const Config& c, bool corrupt) {
  check_tier(c, c.n);
  Burnside b(load_group(c), c.threads);
  VerificationReport r = b.verify_main(c.n, corrupt);
  Json j{{"group", c.group},
         {"n", c.n},
         {"generators", r.generators},
         {"psi_relations_mapped", r.psi_relations_mapped},
         {"phi_relations_mapped", r.phi_relations_mapped},
         {"inverse_formal", r.inverse_formal},
         {"inverse_mod_relations", r.inverse_mod_relations},
         {"surjective", r.surjective},
         {"invariants_equal", r.invariants_equal},
         {"decomposition_consistent", r.decomposition_consistent},
         {"iso", r.iso()},
         {"bc", invariants_json(r.bc)},
         {"bc_prime", invariants_json(r.bc_prime)}};
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    auto yn = [](bool v) { return v ? "yes" : "no"; };
    std::cout << "BC_" << c.n << "(" << c.group << ")  = " << r.bc.primary_display() << "\n"
              << "BC'_" << c.n << "(" << c.group << ") = " << r.bc_prime.primary_display() << "\n"
              << "generators: " << r.generators << "\n"
              << "Psi maps BC relations into BC' relations: " << yn(r.psi_relations_mapped) << "\n"
              << "Phi maps BC' relations into BC relations: " << yn(r.phi_relations_mapped) << "\n"
              << "Phi Psi = Psi Phi = Id on generators: " << yn(r.inverse_formal) << "\n"
              << "  modulo relations: " << yn(r.inverse_mod_relations) << "\n"
              << "Psi onto BC': " << yn(r.surjective) << "\n"
              << "invariants equal: " << yn(r.invariants_equal) << "\n"
              << "sum of class summands equals BC': " << yn(r.decomposition_consistent) << "\n"
              << "iso: " << yn(r.iso()) << "\n";
  }
  if (!r.iso() || !r.decomposition_consistent) throw VerificationFailed("verification failed");
  return 0;
}

void print_sum(const Config& c, const SymbolContext& ctx, const FormalSum& x, Json extra) {
  if (c.format == "json") {
    extra["sum"] = sum_json(ctx, x);
    std::cout << extra.dump(2) << "\n";
    return;
  }
  std::cout << sum_text(ctx, x) << "\n";
  for (auto& [k, v] : extra.items()) std::cout << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

int cmd_restrict(const Config& c, const std::string& sub, const std::string& input) {
  check_tier(c, c.n);
  Burnside big(load_group(c), c.threads);
  GroupPtr small = resolve_group(sub, limits_for(c));
  Burnside little(small, c.threads);
  FormalSum x = sum_from_json(big.context(), sum_part(read_json_file(input)));
  for (const auto& [s, k] : x.terms())
    if (symbol_length(s) > c.n) throw ParseError("input has a symbol longer than n");
  FormalSum y = restrict_sum(big.context(), little.context(), x);
  Json extra{{"order in BC_n(G)", order_text(big.class_order(c.n, x))}, {"order in BC_n(G')", order_text(little.class_order(c.n, y))}};
  print_sum(c, little.context(), y, extra);
  return 0;
}

int cmd_product(const Config& c, const std::string& in1, const std::string& in2, std::size_t n2, bool prime) {
  check_tier(c, c.n + n2);
  Burnside b(load_group(c), c.threads);
  FormalSum x = sum_from_json(b.context(), sum_part(read_json_file(in1)));
  FormalSum y = sum_from_json(b.context(), sum_part(read_json_file(in2)));
  FormalSum z = prime ? product_prime_abelian(b.context(), x, y) : product(b.context(), x, y);
  Json extra = Json::object();
  if (c.n + n2 >= 1) {
    if (prime) {
      const Presentation& p = b.presentation(c.n + n2, Flavor::BCPrime);
      extra["order in BC'_n"] = order_text(b.cokernel(c.n + n2, Flavor::BCPrime).order(p.vector_of(z)));
    } else {
      extra["order in BC_n"] = order_text(b.class_order(c.n + n2, z));
    }
  }
  print_sum(c, b.context(), z, extra);
  return 0;
}

int cmd_filtration(const Config& c, std::size_t r) {
  check_tier(c, c.n);
  Burnside b(load_group(c), c.threads);
  AbelianInvariants f = b.filtration(c.n, r);
  AbelianInvariants img = b.filtration_image(c.n, r);
  Json j = result_json(c, c.n, "filtration", f);
  j["r"] = r;
  j["image_of_BC_r"] = invariants_json(img);
  j["surjective"] = img == f;
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "BC_{" << c.n << "," << r << "}(" << c.group << ") = " << f.primary_display() << "\n"
              << "  image of BC_" << r << ": " << img.primary_display() << (img == f ? " (onto)" : " (not onto)") << "\n";
  }
  return 0;
}

int cmd_cd(const Config& c, const std::string& coeff, unsigned long p) {
  Coefficients k = coeff == "Z" ? Coefficients::Z : coeff == "Q" ? Coefficients::Q : Coefficients::Fp;
  if (coeff != "Z" && coeff != "Q" && coeff != "F") throw ParseError("coefficients must be Z, Q or F");
  if (k == Coefficients::Fp && p < 2) throw ParseError("F coefficients need --p");
  const std::string key = "cd|" + c.group + "|" + coeff + "|" + std::to_string(p);
  Json r = cached(c, key, [&] {
    Burnside b(load_group(c), c.threads);
    if (c.tier == "desk" && b.vanishing_bound() > 64) throw ResourceError("vanishing bound above 64; use --tier stretch");
    CdReport rep = b.cd(k, p);
    Json j{{"group", c.group}, {"coefficients", coeff}, {"cd", rep.cd}, {"bound", rep.bound},
           {"largest_abelian_order", rep.largest_abelian_order}, {"conjectured_bound", rep.conjectured_bound}};
    if (k == Coefficients::Fp) j["p"] = p;
    j["values"] = Json::array();
    for (const auto& v : rep.values) j["values"].push_back(invariants_json(v));
    return j;
  });
  if (c.format == "json") {
    std::cout << r.dump(2) << "\n";
    return 0;
  }
  std::cout << "cd(" << c.group << ", " << coeff << (coeff == "F" ? std::to_string(p) : "") << ") = " << r.at("cd") << "\n";
  std::size_t m = 1;
  for (const auto& v : r.at("values")) std::cout << "  BC_" << m++ << " = " << v.at("primary_display").get<std::string>() << "\n";
  std::cout << "  BC_m = 0 for m >= " << r.at("bound") << "\n";
  std::cout << "  conjectured bound (reported only): " << r.at("conjectured_bound").get<double>() << " (|H_max| = "
            << r.at("largest_abelian_order") << ")\n";
  return 0;
}

int cmd_class_order(const Config& c, const std::string& input, const std::string& shipped) {
  check_tier(c, c.n);
  Burnside b(load_group(c), c.threads);
  FormalSum x;
  if (!shipped.empty()) {
    x = load_class(b, shipped + ".json").value;
  } else {
    x = sum_from_json(b.context(), sum_part(read_json_file(input)));
  }
  auto o = b.class_order(c.n, x);
  if (c.format == "json")
    std::cout << Json{{"group", c.group}, {"n", c.n}, {"order", order_text(o)}, {"sum", sum_json(b.context(), x)}}.dump(2) << "\n";
  else
    std::cout << sum_text(b.context(), x) << "\n  order: " << order_text(o) << "\n";
  return 0;
}

int cmd_basis(const Config& c, const std::string& sub) {
  GroupPtr g = load_group(c);
  Subgroup h = subgroup_from_cycles(g, split_generator_list(sub));
  if (!h.is_abelian()) throw ParseError("subgroup is not abelian");
  StructurePtr st = AbelianStructure::of(h);
  Json j = basis_json(*st);
  if (c.format == "json") {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "H = " << h.to_string() << ", order " << h.order() << "\n";
  for (std::size_t i = 0; i < st->rank(); ++i)
    std::cout << "  e" << i + 1 << " = " << j["basis"][i].get<std::string>() << "  order " << st->invariant_factors()[i] << "\n";
  std::cout << "a character [c1,...,cr] sends e_i to exp(2 pi i c_i / d_i)\n";
  return 0;
}

int cmd_examples(Config c, const std::string& which) {
  if (which == "list" || which.empty()) {
    std::cout << "d6\n";
    return 0;
  }
  if (which != "d6") throw ParseError("unknown example " + which);
  c.group = "D6";
  Burnside b(load_group(c), c.threads);
  std::cout << "G = D6 = C2 x S3, order " << b.group()->order() << "\n";
  DecompositionReport d = b.bc_prime(2);
  std::cout << "BC_2(G) = " << b.bc(2).primary_display() << "\n";
  for (const auto& s : d.summands)
    if (!s.invariants.is_trivial()) std::cout << "  B_2([" << s.label << "]) = " << s.invariants.primary_display() << "\n";
  ShippedClass sc = load_class(b, "d6_class.json");
  std::cout << "class: " << sum_text(b.context(), sc.value) << "\n";
  std::cout << "  order: " << order_text(b.class_order(2, sc.value)) << "\n";
  FormalSum img = psi(b.context(), sc.value);
  std::cout << "  Psi image: " << sum_text(b.context(), img) << "\n";
  const Presentation& pp = b.presentation(2, Flavor::BCPrime);
  auto diff = b.cokernel(2, Flavor::BCPrime).order(pp.vector_of(img - sc.psi_image));
  std::cout << "  listed image: " << sum_text(b.context(), sc.psi_image) << "\n";
  std::cout << "  difference has order " << order_text(diff) << " in BC'_2\n";
  std::cout << "BC_3(G) = " << b.bc(3).primary_display() << "\n";
  return 0;
}

int cmd_reproduce(const Config& c, const std::string& table, std::size_t max_sym, const std::vector<unsigned long>& primes) {
  ReproduceOptions o;
  o.tier = c.tier;
  o.max_sym = max_sym;
  o.primes = primes;
  o.threads = c.threads;
  if (c.tier == "stretch") std::cerr << "warning: stretch tier, S7/S8/He5 take a long time\n";
  std::vector<Cell> cells = reproduce(table, o);
  bool ok = true;
  Json out = Json::array();
  for (const auto& cell : cells) {
    if (!cell.skipped && !cell.pass) ok = false;
    if (c.format == "json") {
      out.push_back({{"table", cell.table}, {"kind", cell.kind}, {"label", cell.label}, {"expected", cell.expected},
                     {"actual", cell.actual}, {"pass", cell.pass}, {"skipped", cell.skipped}, {"note", cell.note},
                     {"seconds", cell.seconds}});
      continue;
    }
    std::cout << (cell.skipped ? "SKIP" : cell.pass ? "PASS" : "FAIL") << "  " << cell.label << "\n";
    std::cout << "      expected " << cell.expected << "\n";
    if (!cell.skipped) std::cout << "      got      " << cell.actual << "\n";
    if (!cell.note.empty()) std::cout << "      (" << cell.note << ")\n";
  }
  if (c.format == "json") std::cout << out.dump(2) << "\n";
  if (!ok) throw VerificationFailed("some cells failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial Burnside groups BC_n(G)"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* s, bool need_n) {
    s->add_option("-g,--group", c.group, "catalog name (S4, D6, He3, ASL23, C2xS3, E(2,3), ...) or generators \"(1,2,3),(1,2)\"");
    s->add_option("--gens", c.group, "generators in cycle notation, e.g. \"(1,2,3),(1,2)\"");
    if (need_n) s->add_option("-n,--n", c.n, "degree n")->check(CLI::Range(1, 64));
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--tier", c.tier, "desk (|G| <= 1000, n <= 4) or stretch")->check(CLI::IsMember({"desk", "stretch"}));
    s->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
    s->add_option("--cache", c.cache, "cache directory");
  };

  auto* compute = app.add_subcommand("compute", "invariants of BC_n(G) or BC'_n(G)");
  common(compute, true);
  compute->add_option("--flavor", c.flavor, "bc or bcprime");

  auto* decompose = app.add_subcommand("decompose", "BC'_n(G) as a sum over pair classes [H,Y]");
  common(decompose, true);

  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "check Psi: BC_n -> BC'_n is an isomorphism");
  common(verify, true);
  verify->add_flag("--corrupt-psi", corrupt, "drop one summand of Psi (negative control)");

  std::string sub, input, input2, shipped;
  auto* restrict_cmd = app.add_subcommand("restrict", "restriction BC_n(G) -> BC_n(G')");
  common(restrict_cmd, true);
  restrict_cmd->add_option("--subgroup", sub, "generators of G' inside G")->required();
  restrict_cmd->add_option("-i,--input", input, "formal sum file (json)")->required();

  std::size_t n2 = 1;
  bool prime = false;
  auto* product_cmd = app.add_subcommand("product", "product BC_n x BC_n' -> BC_{n+n'}");
  common(product_cmd, true);
  product_cmd->add_option("--n2", n2, "degree of the second factor");
  product_cmd->add_option("-i,--input", input, "first factor")->required();
  product_cmd->add_option("--input2", input2, "second factor")->required();
  product_cmd->add_flag("--prime", prime, "primed product for abelian G");

  std::size_t r = 1;
  auto* filtration = app.add_subcommand("filtration", "BC_{n,r}(G)");
  common(filtration, true);
  filtration->add_option("-r,--r", r, "number of distinct characters")->required();

  std::string coeff = "Z";
  unsigned long p = 0;
  auto* cd = app.add_subcommand("cd", "combinatorial dimension");
  common(cd, false);
  cd->add_option("--coefficients", coeff, "Z, Q or F (with --p)");
  cd->add_option("--p", p, "prime for F coefficients");

  auto* class_order = app.add_subcommand("class-order", "order of a class in BC_n(G)");
  common(class_order, true);
  auto* in_opt = class_order->add_option("-i,--input", input, "formal sum file (json)");
  auto* sh_opt = class_order->add_option("--shipped", shipped, "name of a class shipped with the tool (d6_class)");
  in_opt->excludes(sh_opt);

  auto* basis = app.add_subcommand("basis", "invariant-factor basis of an abelian subgroup, for writing characters");
  common(basis, false);
  basis->add_option("--subgroup", sub, "generators of H")->required();

  std::string which;
  auto* examples = app.add_subcommand("examples", "worked examples (d6)");
  common(examples, false);
  examples->add_option("name", which, "example name, or list");

  std::string table;
  std::size_t max_sym = 0;
  std::vector<unsigned long> primes;
  auto* repro = app.add_subcommand("reproduce", "recompute a table of expected values");
  common(repro, false);
  repro->add_option("table", table, "sym, dihedral, heisenberg, cremona, d6 or all")->required();
  repro->add_option("--max-n", max_sym, "sym: largest symmetric group S_k");
  repro->add_option("--p", primes, "dihedral: primes p for D_p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) return cmd_compute(c);
    if (*decompose) return cmd_decompose(c);
    if (*verify) return cmd_verify(c, corrupt);
    if (*restrict_cmd) return cmd_restrict(c, sub, input);
    if (*product_cmd) return cmd_product(c, input, input2, n2, prime);
    if (*filtration) return cmd_filtration(c, r);
    if (*cd) return cmd_cd(c, coeff, p);
    if (*class_order) {
      if (input.empty() && shipped.empty()) throw ParseError("class-order needs --input or --shipped");
      return cmd_class_order(c, input, shipped);
    }
    if (*basis) return cmd_basis(c, sub);
    if (*examples) return cmd_examples(c, which);
    if (*repro) return cmd_reproduce(c, table, max_sym, primes);
  } catch (const VerificationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
