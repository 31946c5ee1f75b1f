#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bcn/burnside.hpp"

namespace bcn {

/// Data files compiled into the library (data/ directory), by file name.
std::string_view embedded_file(std::string_view name);
std::vector<std::string> embedded_files();

struct Cell {
  std::string table;
  std::string kind;
  std::string label;     // e.g. "BC_2(S5)"
  std::string expected;
  std::string actual;
  bool pass = false;
  bool skipped = false;  // above the resource tier or filtered out
  std::string note;
  double seconds = 0;
};

struct ReproduceOptions {
  std::string tier = "desk";  // desk | stretch
  std::size_t max_sym = 0;    // sym table: largest symmetric degree, 0 = no limit
  std::vector<unsigned long> primes;  // dihedral table: overrides the listed primes
  unsigned threads = 1;
};

std::vector<std::string> reproduce_tables();
/// Runs every cell of one table ("sym", "dihedral", "heisenberg", "cremona",
/// "d6", or "all").
std::vector<Cell> reproduce(const std::string& table, const ReproduceOptions& options = {});

/// Z^{(p-5)(p-7)/24} x (Z/2)^{(p-3)/2} x Z/((p^2-1)/12)
AbelianInvariants dihedral_formula(unsigned long p);

/// The class shipped in data/d6_class.json and its listed Psi-image.
struct ShippedClass {
  GroupPtr group;
  std::size_t n = 0;
  FormalSum value;
  FormalSum psi_image;
};
ShippedClass load_class(Burnside& b, std::string_view file);

}  // namespace bcn
