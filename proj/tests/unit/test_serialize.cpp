#include "helpers.hpp"

#include "bcn/reproduce.hpp"
#include "bcn/serialize.hpp"

using namespace bcn;

TEST_CASE("symbol json round trip") {
  for (const char* name : {"S4", "D6", "He3", "C2xC4"}) {
    SymbolContext ctx(catalog_group(name));
    auto p = enumerate_generators(ctx, 2, Flavor::BC);
    for (const auto& s : p.generators) {
      Json j = symbol_json(ctx, s);
      auto back = symbol_from_json(ctx, Json::parse(j.dump()));
      REQUIRE(back);
      CHECK(*back == s);
    }
    FormalSum x;
    for (std::size_t i = 0; i < p.generators.size(); i += 3) x.add(p.generators[i], static_cast<std::int64_t>(i) - 5);
    CHECK(sum_from_json(ctx, Json::parse(sum_json(ctx, x).dump())) == x);
    CHECK_FALSE(sum_text(ctx, x).empty());
  }
  SymbolContext c2(catalog_group("C2"));
  Json u = symbol_json(c2, unit_symbol());
  CHECK(u.at("unit") == true);
  CHECK(symbol_from_json(c2, u) == unit_symbol());
}

TEST_CASE("symbol json validation") {
  auto g = catalog_group("S3");
  SymbolContext ctx(g);
  auto ok = Json::parse(R"j({"H": ["(1,2,3)"], "Y": ["(1,2,3)"], "beta": [[1], [1]]})j");
  auto s = symbol_from_json(ctx, ok);
  REQUIRE(s);
  CHECK(s->beta.size() == 2);
  // not abelian
  CHECK_THROWS_AS(symbol_from_json(ctx, Json::parse(R"j({"H": ["(1,2,3)", "(1,2)"], "Y": ["(1,2,3)", "(1,2)"], "beta": [[1]]})j")), ParseError);
  // Y does not centralize H
  CHECK_THROWS_AS(symbol_from_json(ctx, Json::parse(R"j({"H": ["(1,2,3)"], "Y": ["(1,2,3)", "(1,2)"], "beta": [[1]]})j")), ParseError);
  // trivial character
  CHECK_THROWS_AS(symbol_from_json(ctx, Json::parse(R"j({"H": ["(1,2,3)"], "Y": ["(1,2,3)"], "beta": [[0]]})j")), ParseError);
  // not in the group
  CHECK_THROWS_AS(symbol_from_json(ctx, Json::parse(R"j({"H": ["(1,2,3,4)"], "Y": ["(1,2,3,4)"], "beta": [[1]]})j")), ParseError);
  // H not inside Y
  CHECK_THROWS_AS(symbol_from_json(ctx, Json::parse(R"j({"H": ["(1,2,3)"], "Y": ["(1,2)"], "beta": [[1]]})j")), ParseError);
  // does not generate the dual
  auto e = catalog_group("E(2,2)");
  SymbolContext ectx(e);
  CHECK_THROWS_AS(symbol_from_json(ectx, Json::parse(R"j({"H": ["(1,2)", "(3,4)"], "Y": ["(1,2)", "(3,4)"], "beta": [[1, 0]]})j")), ParseError);
}

TEST_CASE("basis json") {
  auto g = catalog_group("C6");
  auto st = AbelianStructure::of(Subgroup::whole(g));
  Json j = basis_json(*st);
  CHECK(j.at("invariant_factors") == Json::array({6}));
  CHECK(j.at("basis").size() == 1);
}

TEST_CASE("invariants json") {
  for (const char* s : {"0", "Z", "Z/2 x Z", "(Z/2)^31 x (Z/4)^3 x Z/8", "Z^26", "(Z/2)^2 x Z/3 x Z/4"}) {
    auto a = AbelianInvariants::parse(s);
    Json j = invariants_json(a);
    CHECK(j.at("primary_display") == a.primary_display());
    CHECK(invariants_from_json(Json::parse(j.dump())) == a);
  }
  AbelianInvariants big;
  big.torsion.push_back(Int("123456789012345678901234567890"));
  CHECK(invariants_from_json(invariants_json(big)) == big);
}

TEST_CASE("embedded data") {
  auto files = embedded_files();
  CHECK(std::find(files.begin(), files.end(), "d6_class.json") != files.end());
  CHECK(std::find(files.begin(), files.end(), "expected.txt") != files.end());
  CHECK_FALSE(embedded_file("expected.txt").empty());
  CHECK_THROWS(embedded_file("missing.txt"));
}

TEST_CASE("dihedral formula") {
  CHECK(dihedral_formula(5) == AbelianInvariants::parse("(Z/2)^2"));
  CHECK(dihedral_formula(7) == AbelianInvariants::parse("(Z/2)^2 x Z/4"));
  CHECK(dihedral_formula(11) == AbelianInvariants::from_cyclic_orders(1, {2, 2, 2, 2, 10}));
  CHECK(dihedral_formula(13) == AbelianInvariants::from_cyclic_orders(2, {2, 2, 2, 2, 2, 14}));
}
