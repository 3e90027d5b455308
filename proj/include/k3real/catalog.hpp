#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "k3real/json_io.hpp"
#include "k3real/lattice.hpp"
#include "k3real/models.hpp"

#ifndef K3REAL_DATA_DIR
#define K3REAL_DATA_DIR "data"
#endif

namespace k3real {

// $K3REAL_DATA_DIR if set, else the directory fixed at build time.
inline std::string data_dir() {
  if (const char* env = std::getenv("K3REAL_DATA_DIR"); env && *env) return env;
  return K3REAL_DATA_DIR;
}

inline std::string data_path(const std::string& file) { return data_dir() + "/" + file; }

struct CatalogModel {
  ModelSpec spec;
  HomInvariants expected;
  RealScheme scheme;
  DivType divtype = DivType::I;
  std::optional<std::int64_t> r;
};

struct InvalidModel {
  ModelSpec spec;
  std::string violation;
};

struct ModelCatalog {
  std::vector<CatalogModel> models;
  std::vector<InvalidModel> invalid;

  const CatalogModel& find(const std::string& name) const {
    for (const auto& m : models)
      if (m.spec.name == name) return m;
    throw DomainError("no catalog model named " + name);
  }
};

inline ModelCatalog load_model_catalog(const std::string& path = data_path("catalog.json")) {
  using namespace json_io;
  const Json j = read_file(path);
  ModelCatalog cat;
  for (const auto& e : field(j, "models")) {
    CatalogModel m;
    m.spec = model_spec_from_json(e);
    m.expected = hom_invariants_from_json(field(e, "expected"));
    const Json& c = field(e, "class");
    m.scheme = parse_viro(field(c, "scheme").get<std::string>());
    m.divtype = parse_divtype(field(c, "divtype").get<std::string>());
    if (c.contains("r") && !c.at("r").is_null()) m.r = c.at("r").get<std::int64_t>();
    cat.models.push_back(std::move(m));
  }
  for (const auto& e : field(j, "invalid"))
    cat.invalid.push_back({model_spec_from_json(e), field(e, "violation").get<std::string>()});
  return cat;
}

namespace detail {

inline IntLattice diagonal_lattice(const std::vector<long long>& d, std::string label) {
  std::vector<Integer> entries(d.begin(), d.end());
  return IntLattice(IntMatrix::diagonal(entries), std::move(label));
}

inline std::string diag_label(const std::vector<long long>& d) {
  std::string s;
  for (auto x : d) s += (s.empty() ? "<" : "+<") + std::to_string(x) + ">";
  return s;
}

}  // namespace detail

// Even nondegenerate lattices of rank <= 4 and |det| <= 64: named root and
// hyperbolic lattices, every binary form [[2a, b], [b, 2c]] with |a|, |b|, |c| <= 4,
// and diagonal forms with entries in {+-2, +-4, +-6}.
inline std::vector<IntLattice> lattice_catalog() {
  std::vector<IntLattice> out;
  auto keep = [&out](IntLattice l) {
    const Integer d = abs(determinant(l));
    if (l.rank() <= 4 && d != 0 && d <= 64 && is_even(l)) out.push_back(std::move(l));
  };
  const IntLattice u = make_standard("U");
  keep(u);
  keep(scaled(u, 2));
  keep(scaled(u, 4));
  keep(direct_sum(u, make_standard("A1_minus")));
  keep(direct_sum(u, u));
  const IntMatrix a2{{2, -1}, {-1, 2}};
  const IntMatrix a3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  const IntMatrix a4{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  const IntMatrix d4{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
  for (const auto& [g, name] : {std::pair{a2, "A2"}, {a3, "A3"}, {a4, "A4"}, {d4, "D4"}}) {
    keep(IntLattice(g, name));
    keep(IntLattice(scaled(IntLattice(g), -1).gram(), std::string(name) + "(-1)"));
  }
  keep(direct_sum(u, IntLattice(scaled(IntLattice(a2), -1).gram())));
  keep(direct_sum(IntLattice(a2), IntLattice(scaled(IntLattice(a2), -1).gram())));

  for (long long a = -4; a <= 4; ++a)
    for (long long b = -4; b <= 4; ++b)
      for (long long c = -4; c <= 4; ++c) {
        if (a == 0 && c == 0 && b == 0) continue;
        keep(IntLattice(IntMatrix{{2 * a, b}, {b, 2 * c}}, "[[" + std::to_string(2 * a) + "," + std::to_string(b) +
                                                               "],[" + std::to_string(b) + "," +
                                                               std::to_string(2 * c) + "]]"));
      }
  const long long entries[] = {-6, -4, -2, 2, 4, 6};
  for (auto x : entries) keep(detail::diagonal_lattice({x}, detail::diag_label({x})));
  for (auto x : entries)
    for (auto y : entries)
      for (auto z : entries) {
        if (!(x <= y && y <= z)) continue;
        keep(detail::diagonal_lattice({x, y, z}, detail::diag_label({x, y, z})));
        for (auto w : entries)
          if (z <= w) keep(detail::diagonal_lattice({x, y, z, w}, detail::diag_label({x, y, z, w})));
      }
  return out;
}

}  // namespace k3real
