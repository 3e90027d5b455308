#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "k3real/classifier.hpp"
#include "k3real/finite_form.hpp"
#include "k3real/involution.hpp"
#include "k3real/lattice.hpp"
#include "k3real/models.hpp"
#include "k3real/scheme.hpp"

namespace k3real {

using Json = nlohmann::json;

// Raised for well-formed JSON with the wrong shape.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace json_io {

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline Integer to_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw FormatError("expected an integer, got " + j.dump());
}

inline Json from_integer(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(x.convert_to<long long>());
  return Json(x.str());
}

inline IntVector to_vector(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(to_integer(x));
  return v;
}

inline Json from_vector(const IntVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(from_integer(x));
  return j;
}

inline IntMatrix to_matrix(const Json& j) {
  if (!j.is_array()) throw FormatError("expected a matrix, got " + j.dump());
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const IntVector row = to_vector(j[i]);
    if (row.size() != cols) throw FormatError("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
  }
  return m;
}

inline Json from_matrix(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(from_vector(m.row(i)));
  return j;
}

inline Rational to_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw FormatError("expected a rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

// {"gram": [[...]], "label": "..."}
inline IntLattice lattice_from_json(const Json& j) {
  std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string();
  return IntLattice(to_matrix(field(j, "gram")), std::move(label));
}

inline Json to_json(const IntLattice& l) {
  Json j{{"gram", from_matrix(l.gram())}};
  if (!l.label().empty()) j["label"] = l.label();
  return j;
}

// {"matrix": [[...]]}
inline LatticeInvolution involution_from_json(const Json& j) {
  return LatticeInvolution(to_matrix(field(j, "matrix")));
}

// {"basis": [[...]]}: a matrix whose columns are the basis vectors.
inline Sublattice sublattice_from_json(const IntLattice& ambient, const Json& j) {
  return Sublattice(ambient, to_matrix(field(j, "basis")));
}

inline Json to_json(const Sublattice& s) { return Json{{"basis", from_matrix(s.basis())}}; }

// {"orders": [...], "q": ["p/q", ...], "b": [["p/q", ...], ...]}
inline FiniteQuadraticForm form_from_json(const Json& j) {
  std::vector<std::int64_t> orders;
  for (const auto& o : field(j, "orders")) orders.push_back(to_int64(to_integer(o)));
  std::vector<Rational> q;
  for (const auto& x : field(j, "q")) q.push_back(to_rational(x));
  std::vector<std::vector<Rational>> b;
  for (const auto& row : field(j, "b")) {
    b.emplace_back();
    for (const auto& x : row) b.back().push_back(to_rational(x));
  }
  return FiniteQuadraticForm(std::move(orders), q, b);
}

inline Json to_json(const FiniteQuadraticForm& f) {
  Json orders = Json::array(), q = Json::array(), b = Json::array();
  for (std::size_t i = 0; i < f.generator_count(); ++i) {
    orders.push_back(f.orders()[i]);
    q.push_back(to_string(f.q(i)));
    Json row = Json::array();
    for (std::size_t k = 0; k < f.generator_count(); ++k) row.push_back(to_string(f.b(i, k)));
    b.push_back(row);
  }
  return Json{{"orders", orders}, {"q", q}, {"b", b}};
}

// {"domain": [[...]], "image": [[...]]}: generator coordinates in each form.
inline SubgroupAntiIsometry anti_isometry_from_json(const Json& j) {
  SubgroupAntiIsometry g;
  for (const auto& x : field(j, "domain")) {
    g.domain_generators.emplace_back();
    for (const auto& c : x) g.domain_generators.back().push_back(to_int64(to_integer(c)));
  }
  for (const auto& x : field(j, "image")) {
    g.image_generators.emplace_back();
    for (const auto& c : x) g.image_generators.back().push_back(to_int64(to_integer(c)));
  }
  return g;
}

// {"lattice": {...}, "h": [...], "sigma": [[[...], [...]], ...], "phi": [[...]]}
inline MarkedInvolution marked_involution_from_json(const Json& j) {
  MarkedInvolution mi{lattice_from_json(field(j, "lattice")), to_vector(field(j, "h")), {},
                      LatticeInvolution(to_matrix(field(j, "phi")))};
  for (const auto& pair : field(j, "sigma")) {
    if (!pair.is_array() || pair.size() != 2) throw FormatError("each sigma entry must be a pair of vectors");
    mi.sigma.emplace_back(to_vector(pair[0]), to_vector(pair[1]));
  }
  return mi;
}

inline Json to_json(const MarkedInvolution& mi) {
  Json sigma = Json::array();
  for (const auto& [a, b] : mi.sigma) sigma.push_back(Json::array({from_vector(a), from_vector(b)}));
  return Json{{"lattice", to_json(mi.lattice)},
              {"h", from_vector(mi.h)},
              {"sigma", sigma},
              {"phi", from_matrix(mi.phi.matrix())}};
}

inline Json to_json(const HomInvariants& inv) {
  Json j{{"m", inv.m}, {"a", inv.a}, {"t", inv.t}, {"delta", inv.delta}};
  j["r"] = inv.r ? Json(*inv.r) : Json(nullptr);
  return j;
}

inline HomInvariants hom_invariants_from_json(const Json& j) {
  HomInvariants inv;
  inv.m = field(j, "m").get<std::size_t>();
  inv.a = field(j, "a").get<std::size_t>();
  inv.t = field(j, "t").get<std::size_t>();
  inv.delta = field(j, "delta").get<int>();
  if (j.contains("r") && !j.at("r").is_null()) inv.r = j.at("r").get<std::size_t>();
  return inv;
}

// Each oval is the array of its children; a scheme is the array of its roots.
inline Json oval_to_json(const Oval& o) {
  Json j = Json::array();
  for (const auto& c : o.children) j.push_back(oval_to_json(c));
  return j;
}

inline Json to_json(const RealScheme& s) {
  Json j = Json::array();
  for (const auto& o : s.roots()) j.push_back(oval_to_json(o));
  return j;
}

inline Oval oval_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("an oval must be an array of ovals");
  Oval o;
  for (const auto& c : j) o.children.push_back(oval_from_json(c));
  return o;
}

inline RealScheme scheme_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("a scheme must be an array of ovals");
  std::vector<Oval> roots;
  for (const auto& c : j) roots.push_back(oval_from_json(c));
  return RealScheme(std::move(roots));
}

inline Json to_json(const RigidIsotopyClass& c, Notation n = Notation::unicode) {
  Json j{{"m", c.m}, {"scheme", render_viro(c.scheme, n)}, {"divtype", to_string(c.divtype)}};
  j["r"] = c.r ? Json(*c.r) : Json(nullptr);
  return j;
}

inline Json classes_to_json(const std::vector<RigidIsotopyClass>& classes, Notation n = Notation::unicode) {
  Json j = Json::array();
  for (const auto& c : classes) j.push_back(to_json(c, n));
  return j;
}

inline std::string classes_to_csv(const std::vector<RigidIsotopyClass>& classes, Notation n = Notation::unicode) {
  std::ostringstream os;
  os << "m,scheme,divtype,r\n";
  for (const auto& c : classes) {
    os << c.m << ",\"" << render_viro(c.scheme, n) << "\"," << to_string(c.divtype) << ',';
    if (c.r) os << *c.r;
    os << '\n';
  }
  return os.str();
}

// {"figure1": [{"scheme", "r_set", "m_max"}], "figure2": [{"scheme", "m_max"}]}
inline Json to_json(const FigureTables& t, Notation n = Notation::unicode) {
  auto text = [n](const std::string& s) { return n == Notation::unicode ? s : render_viro(parse_viro(s), n); };
  Json f1 = Json::array(), f2 = Json::array();
  for (const auto& e : t.figure1) f1.push_back({{"scheme", text(e.scheme)}, {"r_set", e.r_set}, {"m_max", e.m_max}});
  for (const auto& e : t.figure2) f2.push_back({{"scheme", text(e.scheme)}, {"m_max", e.m_max}});
  return Json{{"figure1", f1}, {"figure2", f2}};
}

// Scheme texts are re-rendered canonically; extra keys are ignored.
inline FigureTables figures_from_json(const Json& j) {
  FigureTables t;
  for (const auto& e : field(j, "figure1")) {
    Figure1Entry f{render_viro(parse_viro(field(e, "scheme").get<std::string>())),
                   field(e, "r_set").get<std::vector<std::int64_t>>(), field(e, "m_max").get<std::int64_t>()};
    std::sort(f.r_set.begin(), f.r_set.end());
    t.figure1.push_back(std::move(f));
  }
  for (const auto& e : field(j, "figure2"))
    t.figure2.push_back({render_viro(parse_viro(field(e, "scheme").get<std::string>())),
                         field(e, "m_max").get<std::int64_t>()});
  return t;
}

inline std::vector<Placement> placements_from_json(const Json& j) {
  std::vector<Placement> out;
  for (const auto& p : j) out.push_back({field(p, "block").get<std::size_t>(), to_vector(field(p, "vector"))});
  return out;
}

// {"name", "blocks": [{"lattice", "action"}], "h": [placement], "sigma": [[[placement], [placement]]]}
inline ModelSpec model_spec_from_json(const Json& j) {
  ModelSpec spec;
  spec.name = j.value("name", std::string());
  for (const auto& b : field(j, "blocks"))
    spec.blocks.push_back({field(b, "lattice").get<std::string>(),
                           parse_block_action(field(b, "action").get<std::string>())});
  spec.h = placements_from_json(field(j, "h"));
  for (const auto& pair : field(j, "sigma")) {
    if (!pair.is_array() || pair.size() != 2) throw FormatError("each sigma entry must be a pair");
    spec.sigma.emplace_back(placements_from_json(pair[0]), placements_from_json(pair[1]));
  }
  return spec;
}

}  // namespace json_io
}  // namespace k3real
