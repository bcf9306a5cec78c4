#include "symred/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include "symred/errors.hpp"

namespace symred {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field: ") + key);
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t index_of(const Json& j, const char* what, std::size_t size) {
  if (!j.is_number_unsigned()) bad(std::string(what) + " must be a non-negative integer");
  const auto v = j.get<std::size_t>();
  if (v >= size) bad(std::string(what) + " is out of range");
  return v;
}

std::vector<double> coeff_list(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(number(e, what));
  return out;
}

Json poly_vec_to_json(const std::vector<Vec3>& p) {
  Json a = Json::array();
  for (const Vec3& c : p) a.push_back(to_json(c));
  return a;
}

std::vector<Vec3> poly_vec_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a nonempty array");
  std::vector<Vec3> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(vec3_from_json(e));
  return out;
}

// Loader-side factory calls: a value the factories refuse is malformed input,
// not a domain boundary reached by a computation.
template <typename F>
auto as_input(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace

Json to_json(const GroupElement2& g) {
  return Json::array({g.a, g.b.x(), g.b.y(), g.b.z()});
}

GroupElement2 group_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) bad("group element must be a 4-array");
  const double a = number(j[0], "group entry");
  const Vec3 b(number(j[1], "group entry"), number(j[2], "group entry"),
               number(j[3], "group entry"));
  // check before construction: the constructor renormalizes silently
  if (std::abs(a * a + b.squaredNorm() - 1.0) > 1e-9)
    bad("group element must be a unit quaternion");
  return GroupElement2{a, b};
}

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("vector must be a 3-array");
  return Vec3(number(j[0], "vector entry"), number(j[1], "vector entry"),
              number(j[2], "vector entry"));
}

Json to_json(const Curve& c) {
  Json j;
  std::visit(
      [&](const auto& cc) {
        using T = std::decay_t<decltype(cc)>;
        if constexpr (std::is_same_v<T, LinearCurve>) {
          j = Json{{"family", "Linear"},
                   {"x", to_json(cc.x)},
                   {"v", to_json(cc.v)},
                   {"l", cc.l}};
        } else if constexpr (std::is_same_v<T, CircularCurve>) {
          j = Json{{"family", "Circular"},
                   {"x", to_json(cc.x)},
                   {"n", to_json(cc.n)},
                   {"r", to_json(cc.r)},
                   {"tau", cc.tau}};
        } else {
          j = Json{{"family", "LieAlgGen"},
                   {"x", to_json(cc.x)},
                   {"v", to_json(cc.v)},
                   {"s", to_json(cc.s)},
                   {"l", cc.l}};
        }
      },
      c);
  return j;
}

Curve curve_from_json(const Json& j) {
  const Json& fam = field(j, "family");
  if (!fam.is_string()) bad("curve family must be a string");
  const std::string tag = fam.get<std::string>();
  if (tag == "Linear")
    return as_input([&] {
      return Curve{make_linear(vec3_from_json(field(j, "x")), vec3_from_json(field(j, "v")),
                               number(field(j, "l"), "l"))};
    });
  if (tag == "Circular")
    return as_input([&] {
      return Curve{make_circular(vec3_from_json(field(j, "x")), vec3_from_json(field(j, "n")),
                                 vec3_from_json(field(j, "r")),
                                 number(field(j, "tau"), "tau"))};
    });
  if (tag == "LieAlgGen")
    return as_input([&] {
      return Curve{make_lag(vec3_from_json(field(j, "x")), vec3_from_json(field(j, "v")),
                            vec3_from_json(field(j, "s")), number(field(j, "l"), "l"))};
    });
  bad("unknown curve family: " + tag);
}

Json to_json(const Symmetry& sym) {
  switch (sym.tag) {
    case SymTag::Homogeneous:
      return Json{{"tag", "Homogeneous"}};
    case SymTag::SemiHomogeneous:
      return Json{{"tag", "SemiHomogeneous"}, {"w1", to_json(sym.w1)}, {"w2", to_json(sym.w2)}};
    case SymTag::SphericallySymmetric:
      return Json{{"tag", "SphericallySymmetric"}};
    case SymTag::HomogeneousIsotropic:
      return Json{{"tag", "HomogeneousIsotropic"}};
  }
  bad("unknown symmetry tag");
}

Symmetry symmetry_from_json(const Json& j) {
  const Json& t = field(j, "tag");
  if (!t.is_string()) bad("symmetry tag must be a string");
  const std::string tag = t.get<std::string>();
  if (tag == "Homogeneous") return make_symmetry(SymTag::Homogeneous);
  if (tag == "SphericallySymmetric") return make_symmetry(SymTag::SphericallySymmetric);
  if (tag == "HomogeneousIsotropic") return make_symmetry(SymTag::HomogeneousIsotropic);
  if (tag == "SemiHomogeneous")
    return as_input([&] {
      return make_semi_homogeneous(vec3_from_json(field(j, "w1")),
                                   vec3_from_json(field(j, "w2")));
    });
  bad("unknown symmetry tag: " + tag);
}

Json to_json(const InvariantConnection& w) {
  Json j;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IsotropicConn>) {
          j = Json{{"family", "Isotropic"}, {"c", c.c}};
        } else if constexpr (std::is_same_v<T, SphericalConn>) {
          j = Json{{"family", "Spherical"}, {"f", c.f}, {"g", c.g}, {"h", c.h}};
        } else if constexpr (std::is_same_v<T, HomogeneousConn>) {
          Json rows = Json::array();
          for (int i = 0; i < 3; ++i)
            rows.push_back(Json::array({c.psi(i, 0), c.psi(i, 1), c.psi(i, 2)}));
          j = Json{{"family", "Homogeneous"}, {"psi", rows}};
        } else {
          j = Json{{"family", "SemiHomogeneous"},
                   {"w1", to_json(c.w1)},
                   {"w2", to_json(c.w2)},
                   {"A1", poly_vec_to_json(c.A1)},
                   {"A2", poly_vec_to_json(c.A2)},
                   {"b", poly_vec_to_json(c.b)}};
        }
      },
      w);
  return j;
}

InvariantConnection connection_from_json(const Json& j) {
  const Json& fam = field(j, "family");
  if (!fam.is_string()) bad("connection family must be a string");
  const std::string tag = fam.get<std::string>();
  InvariantConnection w;
  if (tag == "Isotropic") {
    w = IsotropicConn{number(field(j, "c"), "c")};
  } else if (tag == "Spherical") {
    w = SphericalConn{coeff_list(field(j, "f"), "f"), coeff_list(field(j, "g"), "g"),
                      coeff_list(field(j, "h"), "h")};
  } else if (tag == "Homogeneous") {
    const Json& rows = field(j, "psi");
    if (!rows.is_array() || rows.size() != 3) bad("psi must be a 3x3 matrix");
    HomogeneousConn h;
    for (int i = 0; i < 3; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 3) bad("psi must be a 3x3 matrix");
      for (int k = 0; k < 3; ++k) h.psi(i, k) = number(rows[i][k], "psi entry");
    }
    w = h;
  } else if (tag == "SemiHomogeneous") {
    SemiHomogeneousConn c;
    c.w1 = vec3_from_json(field(j, "w1"));
    c.w2 = vec3_from_json(field(j, "w2"));
    c.A1 = poly_vec_from_json(field(j, "A1"), "A1");
    c.A2 = poly_vec_from_json(field(j, "A2"), "A2");
    c.b = poly_vec_from_json(field(j, "b"), "b");
    w = c;
  } else {
    bad("unknown connection family: " + tag);
  }
  as_input([&] {
    validate_connection(w);
    return 0;
  });
  return w;
}

Json to_json(const FreqModule& m) {
  Json values = Json::array();
  for (const auto& v : m.values) {
    if (v)
      values.push_back(*v);
    else
      values.push_back(nullptr);
  }
  return Json{{"labels", m.labels}, {"values", values}};
}

FreqModule module_from_json(const Json& j) {
  const Json& labels = field(j, "labels");
  if (!labels.is_array()) bad("labels must be an array");
  std::vector<std::string> ls;
  for (const Json& l : labels) {
    if (!l.is_string()) bad("labels must be strings");
    ls.push_back(l.get<std::string>());
  }
  std::vector<std::optional<double>> vs;
  if (j.contains("values")) {
    const Json& values = j.at("values");
    if (!values.is_array() || values.size() != ls.size())
      bad("values must be an array matching labels");
    for (const Json& v : values) {
      if (v.is_null())
        vs.emplace_back(std::nullopt);
      else
        vs.emplace_back(number(v, "value"));
    }
  }
  return as_input([&] { return make_module(std::move(ls), std::move(vs)); });
}

Json to_json(const FreqModule& m, const BohrElement& psi) {
  if (psi.vals.size() != m.size()) bad("element size does not match the module");
  Json j = Json::object();
  for (std::size_t i = 0; i < m.size(); ++i)
    j[m.labels[i]] = Json::array({psi.vals[i].real(), psi.vals[i].imag()});
  return j;
}

BohrElement bohr_from_json(const FreqModule& m, const Json& j) {
  if (!j.is_object()) bad("element must be an object keyed by label");
  if (j.size() != m.size()) bad("element labels do not match the module");
  BohrElement psi;
  psi.vals.reserve(m.size());
  for (const std::string& label : m.labels) {
    if (!j.contains(label)) bad("element is missing label: " + label);
    const Json& z = j.at(label);
    if (!z.is_array() || z.size() != 2) bad("element values must be [re, im] pairs");
    psi.vals.emplace_back(number(z[0], "re"), number(z[1], "im"));
  }
  return psi;
}

Json to_json(const FreqTuple& t) {
  Json j = Json::array();
  for (const Freq& f : t.freqs) j.push_back(f);
  return j;
}

FreqTuple freq_tuple_from_json(const Json& j) {
  if (!j.is_array()) bad("tuple must be an integer matrix");
  std::vector<Freq> freqs;
  for (const Json& row : j) {
    if (!row.is_array()) bad("tuple rows must be integer arrays");
    Freq f;
    for (const Json& e : row) {
      if (!e.is_number_integer()) bad("tuple entries must be integers");
      f.push_back(e.get<long long>());
    }
    freqs.push_back(std::move(f));
  }
  return as_input([&] { return make_freq_tuple(std::move(freqs)); });
}

Json to_json(const GenHom& h) {
  Json curves = Json::array();
  for (const Curve& c : h.fam.curves) curves.push_back(to_json(c));
  Json splits = Json::array();
  for (const SplitRecord& s : h.fam.splits)
    splits.push_back(Json{{"whole", s.whole}, {"first", s.first}, {"second", s.second}});
  Json inverses = Json::array();
  for (const InversePair& p : h.fam.inverses)
    inverses.push_back(Json{{"fwd", p.fwd}, {"bwd", p.bwd}});
  Json table = Json::object();
  for (std::size_t i = 0; i < h.table.size(); ++i)
    table[std::to_string(i)] = to_json(h.table[i]);
  return Json{{"sym", to_json(h.sym)},
              {"family", Json{{"curves", curves}, {"splits", splits}, {"inverses", inverses}}},
              {"table", table}};
}

GenHom genhom_from_json(const Json& j) {
  GenHom h;
  h.sym = symmetry_from_json(field(j, "sym"));
  const Json& fam = field(j, "family");
  const Json& curves = field(fam, "curves");
  if (!curves.is_array()) bad("curves must be an array");
  for (const Json& c : curves) h.fam.curves.push_back(curve_from_json(c));
  const std::size_t n = h.fam.curves.size();
  for (const Json& s : field(fam, "splits")) {
    h.fam.splits.push_back(SplitRecord{index_of(field(s, "whole"), "whole", n),
                                       index_of(field(s, "first"), "first", n),
                                       index_of(field(s, "second"), "second", n)});
  }
  for (const Json& p : field(fam, "inverses")) {
    h.fam.inverses.push_back(
        InversePair{index_of(field(p, "fwd"), "fwd", n), index_of(field(p, "bwd"), "bwd", n)});
  }
  const Json& table = field(j, "table");
  if (!table.is_object() || table.size() != n)
    bad("table must assign one value to every curve id");
  h.table.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string key = std::to_string(i);
    if (!table.contains(key)) bad("table is missing curve id " + key);
    h.table[i] = group_from_json(table.at(key));
  }
  return h;
}

namespace {

const char* kind_name(TypeKind k) {
  switch (k) {
    case TypeKind::T1: return "T1";
    case TypeKind::T2: return "T2";
    case TypeKind::T3: return "T3";
    case TypeKind::T4: return "T4";
  }
  return "T4";
}

TypeKind kind_from_name(const std::string& s) {
  if (s == "T1") return TypeKind::T1;
  if (s == "T2") return TypeKind::T2;
  if (s == "T3") return TypeKind::T3;
  if (s == "T4") return TypeKind::T4;
  bad("unknown factor kind: " + s);
}

}  // namespace

Json to_json(const LagFactorSpec& spec) {
  Json factors = Json::array();
  for (const TypeTag& t : spec.factors)
    factors.push_back(Json{{"kind", kind_name(t.kind)}, {"axis", to_json(t.axis)}});
  return Json{{"module", to_json(spec.module)}, {"factors", factors}};
}

LagFactorSpec lag_spec_from_json(const Json& j) {
  LagFactorSpec spec;
  spec.module = module_from_json(field(j, "module"));
  const Json& factors = field(j, "factors");
  if (!factors.is_array()) bad("factors must be an array");
  for (const Json& f : factors) {
    const Json& kind = field(f, "kind");
    if (!kind.is_string()) bad("factor kind must be a string");
    TypeTag tag;
    tag.kind = kind_from_name(kind.get<std::string>());
    tag.axis = vec3_from_json(field(f, "axis"));
    if (std::abs(tag.axis.norm() - 1.0) > 1e-9) bad("factor axis must be a unit vector");
    spec.factors.push_back(tag);
  }
  return spec;
}

Json to_json(const FreeIndex& idx) {
  Json segments = Json::array();
  for (const Curve& c : idx.segments) segments.push_back(to_json(c));
  return Json{{"sym", to_json(idx.sym)}, {"segments", segments}};
}

FreeIndex free_index_from_json(const Json& j) {
  FreeIndex idx;
  idx.sym = symmetry_from_json(field(j, "sym"));
  const Json& segments = field(j, "segments");
  if (!segments.is_array()) bad("segments must be an array");
  for (const Json& c : segments) idx.segments.push_back(curve_from_json(c));
  return idx;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return Json::parse(in);  // parse_error propagates to the input-error handler
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace symred
