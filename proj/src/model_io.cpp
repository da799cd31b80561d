#include "cbeam/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cbeam/errors.hpp"

namespace cbeam {
namespace {

using nlohmann::json;

// A JSON value together with its key path, so every complaint can say where it is.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError((path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Node at(const char* key) const {
    require_object();
    if (!j_->contains(key)) child_path_fail(key, "missing required key");
    return Node((*j_)[key], child(key));
  }

  std::optional<Node> get(const char* key) const {
    require_object();
    if (!j_->contains(key)) return std::nullopt;
    return Node((*j_)[key], child(key));
  }

  void allow(std::initializer_list<const char*> keys) const {
    require_object();
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) child_path_fail(it.key(), "unknown key");
    }
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

  int integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<int>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  Vec3d vec3() const {
    const auto v = items();
    if (v.size() != 3) fail("expected an array of three numbers");
    return {v[0].number(), v[1].number(), v[2].number()};
  }

  std::vector<Vec3d> vec3_list() const {
    std::vector<Vec3d> out;
    for (const Node& n : items()) out.push_back(n.vec3());
    return out;
  }

 private:
  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  [[noreturn]] void child_path_fail(const std::string& key, const std::string& what) const {
    throw SchemaError(child(key) + ": " + what);
  }

  const json* j_;
  std::string path_;
};

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("<root>: invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

// Library validation errors become schema errors pinned to the node that produced them.
template <typename F>
auto checked(const Node& node, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

std::pair<double, double> angle_pair(const Node& n) {
  const auto v = n.items();
  if (v.size() != 2) n.fail("expected [angle0, angle1]");
  return {v[0].number(), v[1].number()};
}

Curve parse_curve(const Node& n) {
  const std::string kind = n.at("kind").str();
  return checked(n, [&]() -> Curve {
    if (kind == "line") {
      n.allow({"kind", "start", "end"});
      return Curve(ParamCurve::line(n.at("start").vec3(), n.at("end").vec3()));
    }
    if (kind == "arc") {
      n.allow({"kind", "center", "radius", "basis", "angle"});
      const Node basis = n.at("basis");
      const auto b = basis.items();
      if (b.size() != 2) basis.fail("expected two in-plane directions [e1, e2]");
      const auto [a0, a1] = angle_pair(n.at("angle"));
      return Curve(ParamCurve::arc(n.at("center").vec3(), n.at("radius").number(), b[0].vec3(), b[1].vec3(), a0, a1));
    }
    if (kind == "helix") {
      n.allow({"kind", "radius", "pitch", "angle", "origin"});
      const auto [a0, a1] = angle_pair(n.at("angle"));
      const Vec3d origin = n.has("origin") ? n.at("origin").vec3() : Vec3d::Zero();
      return Curve(ParamCurve::helix(n.at("radius").number(), n.at("pitch").number(), a0, a1, origin));
    }
    if (kind == "hermite") {
      n.allow({"kind", "points", "tangents"});
      return Curve(ParamCurve::hermite(n.at("points").vec3_list(), n.at("tangents").vec3_list()));
    }
    if (kind == "spline") {
      n.allow({"kind", "points", "start_tangent", "end_tangent"});
      return Curve(ParamCurve::hermite_clamped(n.at("points").vec3_list(), n.at("start_tangent").vec3(),
                                               n.at("end_tangent").vec3()));
    }
    n.at("kind").fail("unknown curve kind '" + kind + "' (line, arc, helix, hermite, spline)");
  });
}

Material parse_material(const Node& n) {
  n.allow({"E", "nu", "G"});
  const double E = n.at("E").number();
  if (n.has("nu") == n.has("G")) n.fail("give exactly one of \"nu\" and \"G\"");
  return checked(n, [&] {
    return n.has("nu") ? Material::from_E_nu(E, n.at("nu").number()) : Material::from_E_G(E, n.at("G").number());
  });
}

CrossSection parse_section(const Node& n) {
  const std::string shape = n.at("shape").str();
  return checked(n, [&]() -> CrossSection {
    if (shape == "rect") {
      n.allow({"shape", "w", "h", "director"});
      RectShape r{n.at("w").number(), n.at("h").number(), std::nullopt};
      if (n.has("director")) r.director = n.at("director").vec3();
      return section_from_shape(r);
    }
    if (shape == "circle") {
      n.allow({"shape", "d"});
      return section_from_shape(CircleShape{n.at("d").number()});
    }
    if (shape == "unit_depth") {
      n.allow({"shape", "t"});
      return section_from_shape(UnitDepthRectShape{n.at("t").number()});
    }
    if (shape == "custom") {
      n.allow({"shape", "area", "J", "I", "I1", "I2", "director"});
      CrossSection s{n.at("area").number(), IsotropicInertia{0.0}, n.at("J").number()};
      if (n.has("I")) {
        if (n.has("I1") || n.has("I2") || n.has("director")) n.fail("give either \"I\" or \"I1\", \"I2\", \"director\"");
        s.inertia = IsotropicInertia{n.at("I").number()};
      } else {
        const Vec3d d = n.at("director").vec3();
        if (d.norm() == 0) n.at("director").fail("zero director");
        s.inertia = OrientedInertia{n.at("I1").number(), n.at("I2").number(), d.normalized()};
      }
      const bool positive = std::visit(
          [](const auto& in) {
            using T = std::decay_t<decltype(in)>;
            if constexpr (std::is_same_v<T, IsotropicInertia>) return in.I > 0;
            else return in.I1 > 0 && in.I2 > 0;
          },
          s.inertia);
      if (!(s.area > 0 && s.polar > 0 && positive)) n.fail("area, J and inertias must be positive");
      return s;
    }
    n.at("shape").fail("unknown section shape '" + shape + "' (rect, circle, unit_depth, custom)");
  });
}

Condition parse_condition(const Node& n) {
  const std::string s = n.str();
  if (s == "essential") return Condition::Essential;
  if (s == "natural") return Condition::Natural;
  n.fail("expected \"essential\" or \"natural\"");
}

BoundaryCondition preset(const Node& n) {
  const std::string s = n.str();
  if (s == "clamped") return BoundaryCondition::clamped();
  if (s == "pinned") return BoundaryCondition::pinned();
  if (s == "free") return BoundaryCondition::free();
  n.fail("unknown preset '" + s + "' (clamped, pinned, free)");
}

BoundaryCondition parse_bc(const Node& n) {
  if (n.raw().is_string()) return preset(n);
  n.allow({"preset", "stretch", "shear", "bend", "twist", "guided"});
  BoundaryCondition bc = n.has("preset") ? preset(n.at("preset")) : BoundaryCondition::free();
  auto scalar_row = [&](const char* key, ScalarRow& row) {
    if (auto r = n.get(key)) {
      r->allow({"type", "value"});
      row.condition = parse_condition(r->at("type"));
      row.value = r->has("value") ? r->at("value").number() : 0.0;
    }
  };
  auto vector_row = [&](const char* key, VectorRow& row) {
    if (auto r = n.get(key)) {
      r->allow({"type", "value"});
      row.condition = parse_condition(r->at("type"));
      row.value = r->has("value") ? r->at("value").vec3() : Vec3d::Zero();
    }
  };
  scalar_row("stretch", bc.stretch);
  vector_row("shear", bc.shear);
  vector_row("bend", bc.bend);
  scalar_row("twist", bc.twist);
  if (auto g = n.get("guided")) {
    bc.guided = g->vec3_list();
    for (std::size_t i = 0; i < bc.guided.size(); ++i)
      if (bc.guided[i].norm() == 0) g->items()[i].fail("zero direction");
  }
  return bc;
}

PointLoad parse_point_load(const Node& n) {
  n.allow({"force", "moment"});
  PointLoad p;
  if (n.has("force")) p.force = n.at("force").vec3();
  if (n.has("moment")) p.moment = n.at("moment").vec3();
  return p;
}

// Constant vector or a piecewise linear table {"s": [...], "values": [[fx,fy,fz], ...]}.
std::function<Vec3d(double)> parse_body(const Node& n) {
  if (n.raw().is_array()) {
    const Vec3d f = n.vec3();
    return [f](double) { return f; };
  }
  n.allow({"s", "values"});
  std::vector<double> s;
  for (const Node& v : n.at("s").items()) s.push_back(v.number());
  const std::vector<Vec3d> f = n.at("values").vec3_list();
  if (s.empty()) n.at("s").fail("empty table");
  if (s.size() != f.size()) n.at("values").fail("needs one entry per value of \"s\"");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1])) n.at("s").fail("arc lengths must be strictly increasing");
  return [s, f](double x) -> Vec3d {
    if (x <= s.front()) return f.front();
    if (x >= s.back()) return f.back();
    const std::size_t k = std::upper_bound(s.begin(), s.end(), x) - s.begin();
    const double w = (x - s[k - 1]) / (s[k] - s[k - 1]);
    return (1 - w) * f[k - 1] + w * f[k];
  };
}

FormulationKind parse_formulation(const Node& n) {
  const auto f = formulation_from_string(n.str());
  if (!f) n.fail("unknown formulation '" + n.str() + "' (timoshenko_p2p1, timoshenko_h3p2, euler_bernoulli_h3)");
  return *f;
}

QuadraturePolicy parse_policy(const Node& n) {
  const auto p = policy_from_string(n.str());
  if (!p) n.fail("expected \"full\" or \"reduced\"");
  return *p;
}

}  // namespace

ModelSpec parse_model(std::string_view text) {
  const json doc = parse_text(text);
  const Node root(doc, "");
  root.allow({"curve", "material", "section", "formulation", "elements", "quadrature", "bcs", "loads"});

  ModelSpec spec{BeamModel(parse_curve(root.at("curve")), parse_material(root.at("material")),
                           parse_section(root.at("section")))};
  spec.formulation = parse_formulation(root.at("formulation"));
  spec.elements = root.at("elements").integer();
  if (spec.elements < 1) root.at("elements").fail("must be at least 1");
  if (auto q = root.get("quadrature")) spec.policy = parse_policy(*q);

  const Node bcs = root.at("bcs");
  bcs.allow({"start", "end"});
  spec.model.start = parse_bc(bcs.at("start"));
  spec.model.end = parse_bc(bcs.at("end"));

  if (auto loads = root.get("loads")) {
    loads->allow({"body", "start", "end"});
    if (auto b = loads->get("body")) spec.model.loads.body = parse_body(*b);
    if (auto s = loads->get("start")) spec.model.loads.start = parse_point_load(*s);
    if (auto e = loads->get("end")) spec.model.loads.end = parse_point_load(*e);
  }
  return spec;
}

ModelSpec load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

StudyFile parse_study(std::string_view text) {
  const json doc = parse_text(text);
  const Node root(doc, "");
  root.allow({"benchmark", "formulations", "quadrature", "elements", "thickness", "material", "load", "length",
              "radius", "locking"});
  StudyFile out;
  StudySpec& st = out.study;

  const Node b = root.at("benchmark");
  const auto bench = benchmark_from_string(b.str());
  if (!bench) b.fail("expected \"straight\" or \"quarter_arc\"");
  st.setup.benchmark = *bench;

  for (const Node& f : root.at("formulations").items()) st.formulations.push_back(parse_formulation(f));
  if (st.formulations.empty()) root.at("formulations").fail("empty list");
  for (const Node& q : root.at("quadrature").items()) st.policies.push_back(parse_policy(q));
  if (st.policies.empty()) root.at("quadrature").fail("empty list");

  const Node el = root.at("elements");
  for (const Node& n : el.items()) {
    const int v = n.integer();
    if (v < 1) n.fail("element counts must be at least 1");
    if (!st.elements.empty() && v <= st.elements.back()) n.fail("element counts must be strictly increasing");
    st.elements.push_back(v);
  }
  if (st.elements.empty()) el.fail("empty list");

  const Node th = root.at("thickness");
  for (const Node& n : th.items()) {
    const double v = n.number();
    if (!(v > 0)) n.fail("thickness must be positive");
    st.thickness.push_back(v);
  }
  if (st.thickness.empty()) th.fail("empty list");

  if (auto m = root.get("material")) {
    const Material mat = parse_material(*m);
    st.setup.E = mat.E;
    st.setup.nu = mat.nu;
  }
  if (auto p = root.get("load")) st.setup.P = p->number();
  if (auto l = root.get("length")) {
    st.setup.length = l->number();
    if (!(st.setup.length > 0)) l->fail("must be positive");
  }
  if (auto r = root.get("radius")) {
    st.setup.radius = r->number();
    if (!(st.setup.radius > 0)) r->fail("must be positive");
  }
  if (auto k = root.get("locking")) out.locking = k->boolean();
  checked(root, [&] { validate(st); });
  return out;
}

StudyFile load_study(const std::filesystem::path& path) { return parse_study(read_file(path)); }

}  // namespace cbeam
