#include "bcn/reproduce.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <sstream>

#include "bcn/catalog.hpp"
#include "bcn/serialize.hpp"

namespace bcn {

namespace {

struct Row {
  std::string tier, table, kind, group;
  std::size_t n = 0;
  std::vector<std::string> fields;
  std::string rest;  // remainder of the line after n
};

std::vector<Row> parse_table(std::string_view text) {
  std::vector<Row> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Row r;
    if (!(ls >> r.tier >> r.table >> r.kind >> r.group >> r.n)) throw std::logic_error("bad expected-table line: " + line);
    std::getline(ls, r.rest);
    r.rest.erase(0, r.rest.find_first_not_of(' '));
    std::istringstream fs(r.rest);
    std::string f;
    while (fs >> f) r.fields.push_back(f);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string bc_label(const std::string& g, std::size_t n) { return "BC_" + std::to_string(n) + "(" + g + ")"; }

unsigned long symmetric_degree(const std::string& g) {
  if (g.size() > 1 && g[0] == 'S') return std::stoul(g.substr(1));
  return 0;
}

class Runner {
 public:
  explicit Runner(const ReproduceOptions& o) : opt_(o) {}

  Burnside& burnside(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return *it->second;
    auto b = std::make_unique<Burnside>(catalog_group(name), opt_.threads);
    return *cache_.emplace(name, std::move(b)).first->second;
  }

  DecompositionReport& decomposition(const std::string& name, std::size_t n) {
    auto key = std::make_pair(name, n);
    auto it = decos_.find(key);
    if (it != decos_.end()) return it->second;
    return decos_.emplace(key, burnside(name).bc_prime(n)).first->second;
  }

  void run(const Row& r, std::vector<Cell>& out) {
    Cell c;
    c.table = r.table;
    c.kind = r.kind;
    if (r.tier == "stretch" && opt_.tier != "stretch") {
      c.label = bc_label(r.group, r.n);
      c.expected = r.rest;
      c.skipped = true;
      c.note = "stretch tier";
      out.push_back(std::move(c));
      return;
    }
    if (r.table == "sym" && opt_.max_sym && symmetric_degree(r.group) > opt_.max_sym) return;
    auto t0 = std::chrono::steady_clock::now();
    try {
      if (r.kind == "bc") {
        c.label = bc_label(r.group, r.n);
        AbelianInvariants want = AbelianInvariants::parse(r.rest);
        AbelianInvariants got = burnside(r.group).bc(r.n);
        c.expected = want.primary_display();
        c.actual = got.primary_display();
        c.pass = want == got;
      } else if (r.kind == "formula") {
        unsigned long p = std::stoul(r.group.substr(1));
        c.label = bc_label(r.group, r.n);
        AbelianInvariants want = dihedral_formula(p);
        AbelianInvariants got = burnside(r.group).bc(r.n);
        c.expected = want.primary_display();
        c.actual = got.primary_display();
        c.pass = want == got;
        c.note = "closed form at p = " + std::to_string(p);
      } else if (r.kind == "summand") {
        Burnside& b = burnside(r.group);
        Subgroup h = subgroup_from_cycles(b.group(), split(r.fields.at(0), ';'));
        Subgroup y = subgroup_from_cycles(b.group(), split(r.fields.at(1), ';'));
        auto loc = b.context().pairs().locate(h, y);
        if (!loc) throw std::invalid_argument("trivial H in summand row");
        std::string value;
        for (std::size_t i = 2; i < r.fields.size(); ++i) value += (i > 2 ? " " : "") + r.fields[i];
        AbelianInvariants want = AbelianInvariants::parse(value);
        const Summand& s = decomposition(r.group, r.n).summands.at(loc->pair_class);
        c.label = "B_" + std::to_string(r.n) + "([" + h.to_string() + ", " + y.to_string() + "]) in " + r.group;
        c.expected = want.primary_display();
        c.actual = s.invariants.primary_display();
        c.pass = want == s.invariants;
      } else if (r.kind == "vanish") {
        Burnside& b = burnside(r.group);
        const std::size_t bound = b.vanishing_bound();
        c.label = "BC_m(" + r.group + ") for " + std::to_string(r.n) + " <= m < " + std::to_string(bound);
        c.expected = "0";
        c.pass = true;
        std::string nonzero;
        for (std::size_t m = r.n; m < bound; ++m) {
          Presentation p = build_presentation(b.context(), m, Flavor::BC, opt_.threads);
          AbelianInvariants inv = Cokernel(p.relations, opt_.threads).invariants();
          if (!inv.is_trivial()) {
            c.pass = false;
            nonzero += (nonzero.empty() ? "" : ", ") + bc_label(r.group, m) + " = " + inv.primary_display();
          }
        }
        c.actual = nonzero.empty() ? "0" : nonzero;
        c.note = "BC_m = 0 for m >= " + std::to_string(bound) + " by the vanishing bound";
      } else if (r.kind == "split") {
        Burnside& b = burnside(r.group);
        const auto want_small = std::stoul(r.fields.at(0));
        const auto want_large = std::stoul(r.fields.at(1));
        const unsigned long p = std::stoul(r.group.substr(2));
        auto bn = [&](const std::string& name) {
          GroupPtr a = catalog_group(name);
          Presentation pr = tuple_presentation(AbelianStructure::of(Subgroup::whole(a)), r.n);
          return Cokernel(pr.relations).invariants();
        };
        // every pair class has |H| = p or p^2; the C_p classes carry no
        // conjugation, the (Z/p)^2 classes share one twisted value
        AbelianInvariants small = bn("C" + std::to_string(p));
        std::size_t n_small = 0, n_large = 0, other = 0;
        std::optional<AbelianInvariants> large;
        bool large_equal = true;
        const DecompositionReport& d = decomposition(r.group, r.n);
        for (const auto& s : d.summands) {
          if (s.h_order == p && s.invariants == small) {
            ++n_small;
          } else if (s.h_order == p * p) {
            ++n_large;
            if (!large) large = s.invariants;
            large_equal = large_equal && *large == s.invariants;
          } else {
            ++other;
          }
        }
        (void)b;
        std::vector<AbelianInvariants> parts(n_small, small);
        if (large) parts.insert(parts.end(), n_large, *large);
        const bool sums = AbelianInvariants::direct_sum(parts) == d.total;
        c.label = "pair classes of BC'_" + std::to_string(r.n) + "(" + r.group + ")";
        c.expected = std::to_string(want_small) + " x B_n([Z/" + std::to_string(p) + "]) + " + std::to_string(want_large) +
                     " x B_n([(Z/" + std::to_string(p) + ")^2])";
        c.actual = std::to_string(n_small) + " x [" + small.primary_display() + "] + " + std::to_string(n_large) + " x [" +
                   (large ? large->primary_display() : "-") + "]" + (large_equal ? "" : " (unequal)") +
                   (other ? " + " + std::to_string(other) + " other" : "");
        c.pass = n_small == want_small && n_large == want_large && other == 0 && large_equal && sums;
      } else if (r.kind == "order") {
        Burnside& b = burnside(r.group);
        ShippedClass sc = load_class(b, r.fields.at(0) + ".json");
        auto ord = b.class_order(r.n, sc.value);
        c.label = "order of the shipped class in " + bc_label(r.group, r.n);
        c.expected = r.fields.at(1);
        c.actual = ord ? ord->get_str() : "infinite";
        c.pass = c.expected == c.actual;
      } else if (r.kind == "psi") {
        Burnside& b = burnside(r.group);
        ShippedClass sc = load_class(b, r.fields.at(0) + ".json");
        FormalSum img = psi(b.context(), sc.value);
        const Presentation& pp = b.presentation(r.n, Flavor::BCPrime);
        const Cokernel& cp = b.cokernel(r.n, Flavor::BCPrime);
        SparseVector diff = pp.vector_of(img - sc.psi_image);
        auto ord = cp.order(diff);
        c.label = "Psi of the shipped class in BC'_" + std::to_string(r.n) + "(" + r.group + ")";
        c.expected = sum_text(b.context(), sc.psi_image);
        c.actual = sum_text(b.context(), img);
        c.pass = cp.contains(diff);
        c.note = std::string("formal equality ") + (img == sc.psi_image ? "yes" : "no") + "; difference has order " +
                 (ord ? ord->get_str() : "infinite") + " in BC'";
      } else {
        throw std::logic_error("unknown row kind " + r.kind);
      }
    } catch (const ResourceError& e) {
      c.skipped = true;
      c.note = std::string("resource cap: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(c));
  }

 private:
  const ReproduceOptions& opt_;
  std::map<std::string, std::unique_ptr<Burnside>> cache_;
  std::map<std::pair<std::string, std::size_t>, DecompositionReport> decos_;
};

}  // namespace

std::vector<std::string> reproduce_tables() { return {"sym", "dihedral", "heisenberg", "cremona", "d6"}; }

AbelianInvariants dihedral_formula(unsigned long p) {
  if (p < 5) throw std::invalid_argument("the dihedral closed form needs p >= 5");
  std::vector<Int> orders((p - 3) / 2, Int(2));
  orders.push_back(Int(static_cast<unsigned long>((p * p - 1) / 12)));
  return AbelianInvariants::from_cyclic_orders((p - 5) * (p - 7) / 24, orders);
}

ShippedClass load_class(Burnside& b, std::string_view file) {
  Json j = Json::parse(embedded_file(file));
  ShippedClass sc;
  sc.group = b.group();
  sc.n = j.at("n").get<std::size_t>();
  sc.value = sum_from_json(b.context(), j.at("class"));
  if (j.contains("psi_image")) sc.psi_image = sum_from_json(b.context(), j.at("psi_image"));
  return sc;
}

std::vector<Cell> reproduce(const std::string& table, const ReproduceOptions& options) {
  auto tables = reproduce_tables();
  if (table != "all" && std::find(tables.begin(), tables.end(), table) == tables.end())
    throw ParseError("unknown table \"" + table + "\"");
  std::vector<Row> rows = parse_table(embedded_file("expected.txt"));
  if (!options.primes.empty()) {
    std::vector<Row> kept;
    for (auto& r : rows)
      if (!(r.table == "dihedral" && r.kind == "formula")) kept.push_back(std::move(r));
    for (unsigned long p : options.primes) {
      Row r;
      r.tier = "desk";
      r.table = "dihedral";
      r.kind = "formula";
      r.group = "D" + std::to_string(p);
      r.n = 2;
      kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }
  Runner run(options);
  std::vector<Cell> out;
  for (const auto& r : rows)
    if (table == "all" || r.table == table) run.run(r, out);
  return out;
}

}  // namespace bcn
