#include "cbeam/postprocess.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cbeam/errors.hpp"

namespace cbeam {

FieldSample evaluate(const SolvedModel& sol, double s) {
  const double L = sol.model.curve.length();
  if (!(s >= -1e-12 * L && s <= L * (1 + 1e-12)))
    throw DomainError("evaluate: s = " + std::to_string(s) + " outside [0, " + std::to_string(L) + "]");
  s = std::clamp(s, 0.0, L);
  const Discretization& disc = sol.disc;
  const Formulation& f = disc.formulation;
  const Element el = disc.mesh.element(disc.mesh.locate(s));
  const auto dofs = disc.dofs.element_dofs(el.index);
  const auto& c = sol.fields.coefficients;
  const int off = disc.dofs.angle_offset();

  FieldSample out;
  out.frame = eval_frame(sol.model.curve, s);
  const ShapeValues mid = shape_eval(f.midline, el, s, f.euler_bernoulli() ? 2 : 1);
  const ShapeValues ang = shape_eval(f.angle, el, s, 1);
  Vec3r u = Vec3r::Zero(), du = Vec3r::Zero(), ddu = Vec3r::Zero();
  for (int b = 0; b < mid.value.size(); ++b) {
    const Vec3r cb(c[dofs[3 * b]], c[dofs[3 * b + 1]], c[dofs[3 * b + 2]]);
    u += Real(mid.value[b]) * cb;
    du += Real(mid.d1[b]) * cb;
    if (f.euler_bernoulli()) ddu += Real(mid.d2[b]) * cb;
  }
  out.u = u;
  out.du = du;
  if (!f.euler_bernoulli()) {
    Vec3r th = Vec3r::Zero(), dth = Vec3r::Zero();
    for (int b = 0; b < ang.value.size(); ++b) {
      const Vec3r cb(c[dofs[off + 3 * b]], c[dofs[off + 3 * b + 1]], c[dofs[off + 3 * b + 2]]);
      th += Real(ang.value[b]) * cb;
      dth += Real(ang.d1[b]) * cb;
    }
    out.theta = th;
    out.dtheta = dth;
  } else {
    Real tt = 0, dtt = 0;
    for (int b = 0; b < ang.value.size(); ++b) {
      tt += Real(ang.value[b]) * c[dofs[off + b]];
      dtt += Real(ang.d1[b]) * c[dofs[off + b]];
    }
    const Vec3r t = out.frame.t.cast<Real>();
    const Vec3r k = out.frame.kappa.cast<Real>();
    out.theta = t.cross(du) + t * tt;
    out.dtheta = k.cross(du) + t.cross(ddu) + k * tt + t * dtt;
  }
  return out;
}

namespace {

struct Stiffness {
  Real EA, GA, GJ;
  Mat3<Real> EI;
};

Stiffness stiffness(const SolvedModel& sol, const Vec3d& t) {
  const Material& mat = sol.model.material;
  const CrossSection& sec = sol.model.section;
  return {Real(mat.E) * Real(sec.area), Real(mat.G) * Real(sec.area), Real(mat.G) * Real(sec.polar),
          Real(mat.E) * inertia_tensor(sec, t).cast<Real>()};
}

Resultants to_double(double s, const Vec3r& N, const Vec3r& S, const Vec3r& M, const Vec3r& T) {
  return {s, N.cast<double>(), S.cast<double>(), M.cast<double>(), T.cast<double>()};
}

}  // namespace

Resultants resultants(const SolvedModel& sol, double s) {
  const FieldSample fs = evaluate(sol, s);
  const Vec3r t = fs.frame.t.cast<Real>();
  const Stiffness k = stiffness(sol, fs.frame.t);
  Vec3r S = Vec3r::Zero();
  if (!sol.disc.formulation.euler_bernoulli()) S = k.GA * (normal_projector(t) * fs.du - fs.theta.cross(t));
  return to_double(fs.frame.s, k.EA * t * t.dot(fs.du), S, k.EI * fs.dtheta, k.GJ * t * t.dot(fs.dtheta));
}

Resultants resultants_curvature_form(const SolvedModel& sol, double s) {
  const FieldSample fs = evaluate(sol, s);
  const Vec3r t = fs.frame.t.cast<Real>();
  const Vec3r kap = fs.frame.kappa.cast<Real>();
  const Mat3<Real> Q = normal_projector(t);
  const Stiffness k = stiffness(sol, fs.frame.t);

  // Separate u and theta into tangential and normal-plane parts and differentiate
  // each part with t' = kappa.
  const Real ut = t.dot(fs.u);
  const Real dut = kap.dot(fs.u) + t.dot(fs.du);
  const Vec3r Qu = fs.u - t * ut;
  const Vec3r dQu = fs.du - kap * ut - t * dut;
  const Real tht = t.dot(fs.theta);
  const Real dtht = kap.dot(fs.theta) + t.dot(fs.dtheta);
  const Vec3r Qth = fs.theta - t * tht;
  const Vec3r dQth = fs.dtheta - kap * tht - t * dtht;

  Vec3r S = Vec3r::Zero();
  if (!sol.disc.formulation.euler_bernoulli()) S = k.GA * (Q * dQu - Qth.cross(t) + ut * kap);
  return to_double(fs.frame.s, k.EA * (dut - Qu.dot(kap)) * t, S, k.EI * (dQth + tht * kap),
                   k.GJ * (dtht - Qth.dot(kap)) * t);
}

Vec3d shear_angle(const SolvedModel& sol, double s) {
  if (sol.disc.formulation.euler_bernoulli()) {
    if (!(s >= 0.0 && s <= sol.model.curve.length())) throw DomainError("shear_angle: s outside [0, L]");
    return Vec3d::Zero();
  }
  const FieldSample fs = evaluate(sol, s);
  const Vec3r t = fs.frame.t.cast<Real>();
  const Mat3<Real> Q = normal_projector(t);
  // (t x a) x t = a for a in the normal plane, and (Q theta) x t = -(t x Q theta)
  return (t.cross(Q * fs.du) - Q * fs.theta).cast<double>();
}

Eigen::VectorXd interpolate(const Curve& curve, const Discretization& disc, const FieldFunctions& f) {
  const DofMap& dm = disc.dofs;
  const Formulation& form = disc.formulation;
  const bool hermite = form.midline == ScalarSpace::H3;
  const bool eb = form.euler_bernoulli();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dm.num_dofs());

  auto angles = [&](double s, auto&& put) {
    const Vec3d th = f.theta(s);
    if (eb) {
      put(0, eval_frame(curve, s).t.dot(th));
    } else {
      for (int c = 0; c < 3; ++c) put(c, th[c]);
    }
  };

  for (int i = 0; i < disc.mesh.num_nodes(); ++i) {
    const double s = disc.mesh.nodes()[i];
    const Vec3d u = f.u(s);
    for (int c = 0; c < 3; ++c) out[dm.node_dof(Field::Midline, i, c)] = u[c];
    if (hermite) {
      const Vec3d du = f.du(s);
      for (int c = 0; c < 3; ++c) out[dm.node_dof(Field::Midline, i, c, 1)] = du[c];
    }
    angles(s, [&](int c, double v) { out[dm.node_dof(Field::Angle, i, c)] = v; });
  }

  const int ncomp = form.angle_components;
  for (int e = 0; e < disc.mesh.num_elements(); ++e) {
    const Element el = disc.mesh.element(e);
    const double s = 0.5 * (el.s0 + el.s1);
    const auto dofs = dm.element_dofs(e);
    if (form.midline == ScalarSpace::P2) {
      const Vec3d u = f.u(s);
      for (int c = 0; c < 3; ++c) out[dofs[3 + c]] = u[c];
    }
    if (form.angle == ScalarSpace::P2)
      angles(s, [&](int c, double v) { out[dofs[dm.angle_offset() + ncomp + c]] = v; });
  }
  return out;
}

std::vector<double> sample_points(const SolvedModel& sol, SampleLocation where, int count) {
  std::vector<double> out;
  const Mesh1D& mesh = sol.disc.mesh;
  switch (where) {
    case SampleLocation::QuadraturePoints: {
      const int nq = quadrature(sol.disc.formulation, sol.disc.policy).stretch_shear;
      for (int e = 0; e < mesh.num_elements(); ++e) {
        const QuadratureRule rule = element_rule(mesh.element(e), nq);
        out.insert(out.end(), rule.points.begin(), rule.points.end());
      }
      break;
    }
    case SampleLocation::ElementEnds:
      out.assign(mesh.nodes().begin(), mesh.nodes().end());
      break;
    case SampleLocation::Uniform: {
      if (count < 2) throw ValidationError("sample_points: need at least 2 uniform samples");
      const double L = sol.model.curve.length();
      for (int i = 0; i < count; ++i) out.push_back(i == count - 1 ? L : L * i / (count - 1));
      break;
    }
  }
  return out;
}

Reactions reactions(const SolvedModel& sol) {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> r = sol.system.K * sol.fields.coefficients - sol.system.rhs;
  // Compliant rows are part of the stiffness.
  for (std::size_t k = 0; k < sol.system.constraints.size(); ++k) {
    const ConstraintRow& row = sol.system.constraints[k];
    if (row.compliance > 0)
      for (auto [j, c] : row.coefficients) r[j] += Real(c) * sol.fields.multipliers[Eigen::Index(k)];
  }
  const DofMap& dm = sol.disc.dofs;
  const bool eb = sol.disc.formulation.euler_bernoulli();
  auto at = [&](int node, double s) {
    EndReaction out;
    for (int c = 0; c < 3; ++c) out.force[c] = double(r[dm.node_dof(Field::Midline, node, c)]);
    if (!eb) {
      for (int c = 0; c < 3; ++c) out.moment[c] = double(r[dm.node_dof(Field::Angle, node, c)]);
    } else {
      const Vec3r t = eval_frame(sol.model.curve, s).t.cast<Real>();
      Vec3r rd;
      for (int c = 0; c < 3; ++c) rd[c] = r[dm.node_dof(Field::Midline, node, c, 1)];
      out.moment = (t.cross(rd) + t * r[dm.node_dof(Field::Angle, node, 0)]).cast<double>();
    }
    return out;
  };
  return {at(0, 0.0), at(sol.disc.mesh.num_nodes() - 1, sol.model.curve.length())};
}

EndReaction applied_load(const SolvedModel& sol) {
  const BeamModel& m = sol.model;
  EndReaction total;
  if (m.loads.body) {
    for (int e = 0; e < sol.disc.mesh.num_elements(); ++e) {
      const QuadratureRule rule = element_rule(sol.disc.mesh.element(e), 8);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const Vec3d f = m.section.area * rule.weights[q] * m.loads.body(rule.points[q]);
        total.force += f;
        total.moment += eval_frame(m.curve, rule.points[q]).x.cross(f);
      }
    }
  }
  for (bool at_end : {false, true}) {
    const PointLoad pl = end_load(m, at_end);
    const Vec3d x = eval_frame(m.curve, at_end ? m.curve.length() : 0.0).x;
    total.force += pl.force;
    total.moment += pl.moment + x.cross(pl.force);
  }
  return total;
}

double strain_energy(const SolvedModel& sol) {
  const auto& u = sol.fields.coefficients;
  Real e = Real(0.5) * u.dot(sol.system.K * u);
  for (std::size_t k = 0; k < sol.system.constraints.size(); ++k) {
    const Real mu = sol.fields.multipliers[Eigen::Index(k)];
    e += Real(0.5) * Real(sol.system.constraints[k].compliance) * mu * mu;
  }
  return double(e);
}

Vec3d tip_displacement(const SolvedModel& sol) {
  const int node = sol.disc.mesh.num_nodes() - 1;
  Vec3d u;
  for (int c = 0; c < 3; ++c) u[c] = double(sol.fields.coefficients[sol.disc.dofs.node_dof(Field::Midline, node, c)]);
  return u;
}

std::vector<CenterlineRow> centerline(const SolvedModel& sol, const std::vector<double>& s) {
  std::vector<CenterlineRow> rows;
  rows.reserve(s.size());
  for (double si : s) {
    const FieldSample fs = evaluate(sol, si);
    rows.push_back({fs.frame.s, fs.frame.x, fs.u.cast<double>(), fs.theta.cast<double>()});
  }
  return rows;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_lines(const std::filesystem::path& path, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void append(std::vector<double>& row, const Vec3d& v) { row.insert(row.end(), v.data(), v.data() + 3); }

}  // namespace

void write_centerline_csv(const std::filesystem::path& path, const std::vector<CenterlineRow>& rows) {
  std::vector<std::vector<double>> data;
  for (const auto& r : rows) {
    std::vector<double> row{r.s};
    append(row, r.x);
    append(row, r.u);
    append(row, r.theta);
    data.push_back(std::move(row));
  }
  write_lines(path, "s,x,y,z,ux,uy,uz,thx,thy,thz", data);
}

void write_resultants_csv(const std::filesystem::path& path, const std::vector<Resultants>& rows) {
  std::vector<std::vector<double>> data;
  for (const auto& r : rows) {
    std::vector<double> row{r.s};
    append(row, r.N);
    append(row, r.S);
    append(row, r.M);
    append(row, r.T);
    data.push_back(std::move(row));
  }
  write_lines(path, "s,Nx,Ny,Nz,Sx,Sy,Sz,Mx,My,Mz,Tx,Ty,Tz", data);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != table.header.size())
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": wrong column count");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cbeam
