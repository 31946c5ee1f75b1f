// One PASS/FAIL line per acceptance criterion; indented lines are details.
// --known-failures 5,... : exit 0 iff exactly these criteria fail.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../common/properties.hpp"
#include "bcn/reproduce.hpp"
#include "bcn/serialize.hpp"

using namespace bcn;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
  void fail(const std::string& why) {
    pass = false;
    details.push_back("FAILED: " + why);
  }
  void note(const std::string& s) { details.push_back(s); }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

void table_cells(Outcome& o, const std::string& table, unsigned threads, std::set<std::string> skip_ok = {}) {
  ReproduceOptions opt;
  opt.threads = threads;
  for (const auto& c : reproduce(table, opt)) {
    std::string line = c.label + ": want " + c.expected + ", got " + (c.skipped ? "-" : c.actual);
    if (!c.note.empty()) line += " (" + c.note + ")";
    line += " " + fmt_seconds(c.seconds);
    if (c.skipped) {
      o.note("skip " + line);
      if (c.note != "stretch tier" && !skip_ok.count(c.kind)) o.fail("not run: " + c.label);
      continue;
    }
    if (c.pass)
      o.note("ok   " + line);
    else
      o.fail(line);
  }
}

// groups of order <= 60 from the catalog families
std::vector<std::string> theorem_groups() {
  std::vector<std::string> out{"S2", "S3", "S4", "A4", "A5", "He3"};
  for (int n = 1; n <= 30; ++n) out.push_back("C" + std::to_string(n));
  for (int n = 2; n <= 30; ++n) out.push_back("D" + std::to_string(n));
  for (const char* s : {"E(2,2)", "E(2,3)", "E(2,4)", "E(2,5)", "E(3,2)", "E(3,3)", "E(5,2)", "C2xC4", "C2xC6", "C4xC4",
                        "C2xC8", "C3xC6", "C2xS3", "C3xS3", "C2xD4", "C2xA4", "S3xS3", "C4xS3", "C5xS3", "C2xD5", "C2xS4"})
    out.push_back(s);
  return out;
}

Outcome criterion1(unsigned threads) {
  Outcome o;
  table_cells(o, "sym", threads);
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto s3 = catalog_group("S3");
  auto c3 = catalog_group("C3");
  Burnside bs(s3), bc3(c3);
  auto a = bs.bc(2), b = bc3.bc(2);
  o.note("BC_2(S3) = " + a.primary_display() + ", BC_2(C3) = " + b.primary_display());
  if (!(a == AbelianInvariants::parse("Z/2"))) o.fail("BC_2(S3)");
  if (!(b == AbelianInvariants::parse("Z"))) o.fail("BC_2(C3)");
  // the generator of BC_2(S3) restricted to <(1,2,3)>
  const auto& ctx = bs.context();
  const Presentation& p = bs.presentation(2, Flavor::BC);
  const Cokernel& ck = bs.cokernel(2, Flavor::BC);
  std::optional<FormalSum> gen;
  for (std::uint32_t i = 0; i < p.generators.size() && !gen; ++i) {
    auto ord = ck.order(SparseVector{{i, Int(1)}});
    if (ord && *ord == 2) gen = FormalSum(p.generators[i]);
  }
  if (!gen) {
    o.fail("no generator of order 2 in BC_2(S3)");
    return o;
  }
  SymbolContext to(parse_group({"(1,2,3)"}));
  FormalSum r = restrict_sum(ctx, to, *gen);
  auto ord = bc3.class_order(2, r);
  o.note("res(" + sum_text(ctx, *gen) + ") = " + sum_text(to, r) + ", order " + (ord ? ord->get_str() : "infinite") +
         " in BC_2(C3); the image misses the generator of Z, so restriction is not onto");
  if (!ord || *ord != 1) o.fail("restriction is not 0 in BC_2(C3)");
  return o;
}

Outcome criterion3(unsigned threads) {
  Outcome o;
  table_cells(o, "dihedral", threads);
  table_cells(o, "heisenberg", threads);
  return o;
}

Outcome criterion4(unsigned threads) {
  Outcome o;
  table_cells(o, "cremona", threads);
  return o;
}

Outcome criterion5(unsigned threads) {
  Outcome o;
  table_cells(o, "d6", threads);
  return o;
}

Outcome criterion6(unsigned threads) {
  Outcome o;
  for (const auto& name : theorem_groups()) {
    auto t0 = std::chrono::steady_clock::now();
    Burnside b(catalog_group(name), threads);
    std::string line = name + ":";
    bool ok = true;
    for (std::size_t n = 1; n <= 3; ++n) {
      auto r = b.verify_main(n);
      bool good = r.iso() && r.inverse_formal && r.decomposition_consistent;
      ok = ok && good;
      line += " n=" + std::to_string(n) + " " + r.bc.primary_display() + (good ? "" : " [iso broken]");
    }
    line += " " + fmt_seconds(since(t0));
    if (ok)
      o.note(line);
    else
      o.fail(line);
  }
  // negative control: a corrupted Psi must be caught
  Burnside he(catalog_group("He3"), threads);
  auto bad = he.verify_main(2, true);
  o.note(std::string("corrupted Psi on He3, n=2: relations mapped = ") + (bad.psi_relations_mapped ? "yes" : "no"));
  if (bad.psi_relations_mapped || bad.iso()) o.fail("negative control not detected");
  return o;
}

Outcome criterion7(unsigned threads) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t groups = 0, bad = 0;
  for (const auto& name : props::abelian_names(64)) {
    props::Lattice l(props::whole(name));
    ++groups;
    std::size_t w = props::weisner(l), inv = props::lattice_inverse(l), dm = 0;
    if (l.t.lattice().back().order() <= 36) dm = props::double_moebius(l);
    if (w + inv + dm) {
      ++bad;
      o.fail(name + ": weisner " + std::to_string(w) + ", inverse " + std::to_string(inv) + ", double " + std::to_string(dm));
    }
  }
  o.note("Weisner sums and lattice Psi o Phi on " + std::to_string(groups) + " abelian groups of order <= 64, double Moebius up to 36 " +
         fmt_seconds(since(t0)));

  t0 = std::chrono::steady_clock::now();
  std::size_t gens = 0;
  for (const auto& name : theorem_groups()) {
    Burnside b(catalog_group(name), threads);
    for (std::size_t n = 1; n <= 3; ++n) {
      gens += b.presentation(n, Flavor::BC).generators.size();
      if (auto k = props::psi_phi_identity(b, n)) o.fail(name + " n=" + std::to_string(n) + ": Psi o Phi != Id on " + std::to_string(k));
    }
  }
  o.note("Psi o Phi = Phi o Psi = Id on " + std::to_string(gens) + " generators " + fmt_seconds(since(t0)));

  t0 = std::chrono::steady_clock::now();
  std::size_t tested = 0;
  for (const auto& name : theorem_groups()) {
    auto g = catalog_group(name);
    if (g->order() > 24) continue;
    Burnside b(g, threads);
    for (std::size_t n = 1; n <= 3; ++n)
      if (auto k = props::eqn_i_vanishing(b, n, &tested)) o.fail(name + " n=" + std::to_string(n) + ": " + std::to_string(k) + " zero-sum symbols survive");
  }
  o.note("zero-sum symbols vanish: " + std::to_string(tested) + " symbols over groups of order <= 24 " + fmt_seconds(since(t0)));

  t0 = std::chrono::steady_clock::now();
  for (const char* name : {"C6", "C2xC4"}) {
    Burnside b(catalog_group(name), threads);
    auto r = props::abelian_product(b, 1, 1);
    o.note(std::string(name) + ": product shortcut vs diagonal restriction on " + std::to_string(r.pairs) + " pairs, " +
           std::to_string(r.formal_equal) + " formally equal");
    if (r.bad) o.fail(std::string(name) + ": " + std::to_string(r.bad) + " products differ");
  }
  o.note("products " + fmt_seconds(since(t0)));

  t0 = std::chrono::steady_clock::now();
  std::size_t cases = 0;
  for (const char* name : {"C2", "C3", "C4", "E(2,2)", "S3", "D4", "A4", "C5", "D5", "C6", "D6", "S4"}) {
    Burnside b(catalog_group(name), threads);
    for (std::size_t n = 1; n <= 4; ++n) {
      ++cases;
      if (auto k = props::filtration_vanishing(b, n)) o.fail(std::string(name) + " n=" + std::to_string(n) + ": BC_{n,r} != 0 below n - l(G)");
      for (std::size_t r = 1; r <= n; ++r)
        if (auto k = props::filtration_surjective(b, n, r))
          o.fail(std::string(name) + " n=" + std::to_string(n) + " r=" + std::to_string(r) + ": BC_r -> BC_{n,r} not onto");
    }
  }
  o.note("filtration vanishing and surjectivity on " + std::to_string(cases) + " (G, n) " + fmt_seconds(since(t0)));
  (void)bad;
  return o;
}

Outcome criterion8(unsigned threads) {
  Outcome o;
  for (auto [name, want] : std::vector<std::pair<std::string, std::size_t>>{{"C2", 1}, {"A5", 2}, {"PSL27", 3}, {"A6", 3}}) {
    auto t0 = std::chrono::steady_clock::now();
    Burnside b(catalog_group(name), threads);
    auto r = b.cd();
    std::ostringstream os;
    os << "cd(" << name << ") = " << r.cd << " (want " << want << "), BC_m computed for m < " << r.bound
       << ", conjectured bound log2 " << r.largest_abelian_order << " = " << r.conjectured_bound << " (reported only) "
       << fmt_seconds(since(t0));
    if (r.cd == want)
      o.note(os.str());
    else
      o.fail(os.str());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string known;
  std::vector<int> only;
  unsigned threads = 1;
  bool quiet = false;
  app.add_option("--known-failures", known, "comma separated criteria expected to fail");
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--threads", threads);
  app.add_flag("--quiet", quiet, "no detail lines");
  CLI11_PARSE(app, argc, argv);

  std::set<int> expected_fail;
  std::stringstream ks(known);
  for (std::string t; std::getline(ks, t, ',');)
    if (!t.empty()) expected_fail.insert(std::stoi(t));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"symmetric group table", [&] { return criterion1(threads); }},
      {"BC_2(S3), BC_2(C3) and restriction to C3", [&] { return criterion2(); }},
      {"dihedral and Heisenberg groups", [&] { return criterion3(threads); }},
      {"primitive plane Cremona groups", [&] { return criterion4(threads); }},
      {"D6 class", [&] { return criterion5(threads); }},
      {"structure theorem on groups of order <= 60, n <= 3", [&] { return criterion6(threads); }},
      {"property suites", [&] { return criterion7(threads); }},
      {"combinatorial dimension", [&] { return criterion8(threads); }},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int k = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!quiet)
      for (const auto& d : o.details) std::cout << "  " << d << "\n";
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << criteria[i].first << " (" << fmt_seconds(since(t0)) << ")"
              << (!o.pass && expected_fail.count(k) ? " [known failure]" : "") << std::endl;
    if (!o.pass) failed.insert(k);
  }
  std::set<int> want;
  for (int k : expected_fail)
    if (only.empty() || std::find(only.begin(), only.end(), k) != only.end()) want.insert(k);
  return failed == want ? 0 : 1;
}
