#include "exeuler/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exeuler/errors.hpp"

namespace exeuler {

using json = nlohmann::ordered_json;

FlowState Scenario::initial_state() const {
  FlowState st;
  st.body.h = {0.0, 0.0};
  st.body.hdot = ell0;
  st.body.theta = 0.0;
  st.body.r = r0;
  st.body.m = m;
  st.body.J = J;
  st.particles = vortices;
  st.gamma_bound = gamma_bound;
  st.time = 0.0;
  return st;
}

IntegratorConfig Scenario::integrator() const {
  IntegratorConfig c;
  c.dt = dt;
  c.blob = BlobParameter{blob_delta};
  c.fixed_body = fixed_body;
  return c;
}

namespace {

json shape_to_json(const BodyShape& s) {
  json j;
  if (s.is_disk()) {
    j["kind"] = "disk";
    j["radius"] = s.as_disk().radius;
  } else if (s.is_ellipse()) {
    j["kind"] = "ellipse";
    j["semi_axes"] = {s.as_ellipse().semi_major, s.as_ellipse().semi_minor};
  } else {
    j["kind"] = "polyline";
    json pts = json::array();
    for (const Vec2& p : s.as_polyline().points) pts.push_back({p.x, p.y});
    j["points"] = pts;
  }
  return j;
}

BodyShape shape_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disk") return BodyShape::disk(j.at("radius").get<double>());
  if (kind == "ellipse") {
    const auto& ax = j.at("semi_axes");
    return BodyShape::ellipse(ax.at(0).get<double>(), ax.at(1).get<double>());
  }
  if (kind == "polyline") {
    std::vector<Vec2> pts;
    for (const auto& p : j.at("points")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return BodyShape::polyline(std::move(pts));
  }
  raise(ErrorCode::InputError, "scenario: unknown shape kind '" + kind + "'");
}

}  // namespace

std::string Scenario::to_json() const {
  json j;
  j["name"] = name;
  j["shape"] = shape_to_json(shape);
  j["m"] = m;
  j["J"] = J;
  j["fixed_body"] = fixed_body;
  j["ell0"] = {ell0.x, ell0.y};
  j["r0"] = r0;
  json vs = json::array();
  for (const VortexParticle& v : vortices) {
    json e;
    e["pos"] = {v.pos.x, v.pos.y};
    e["gamma"] = v.gamma;
    e["blob_delta"] = blob_delta;
    vs.push_back(e);
  }
  j["vortices"] = vs;
  j["gamma_bound"] = gamma_bound;
  j["dt"] = dt;
  j["T"] = T;
  j["dump_every"] = dump_every;
  if (grid) {
    j["grid"] = {{"r_outer", grid->grid.r_outer},
                 {"n_r", grid->grid.n_r},
                 {"n_t", grid->grid.n_t},
                 {"mask_radius", grid->mask_radius}};
    j["field_dumps"] = field_dumps;
  }
  return j.dump(2) + "\n";
}

Scenario Scenario::from_json(const std::string& doc) {
  json j;
  try {
    j = json::parse(doc);
  } catch (const std::exception& e) {
    raise(ErrorCode::InputError, std::string("scenario: invalid JSON: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.value("name", "unnamed");
    s.shape = shape_from_json(j.at("shape"));
    s.fixed_body = j.value("fixed_body", false);
    s.m = s.fixed_body ? 1.0 : j.at("m").get<double>();
    s.J = s.fixed_body ? 1.0 : j.at("J").get<double>();
    if (!s.fixed_body && (!(s.m > 0.0) || !(s.J > 0.0)))
      raise(ErrorCode::InputError, "scenario: m and J must be positive");
    const auto& e0 = j.at("ell0");
    s.ell0 = {e0.at(0).get<double>(), e0.at(1).get<double>()};
    s.r0 = j.at("r0").get<double>();
    double delta = -1.0;
    for (const auto& v : j.value("vortices", json::array())) {
      VortexParticle p;
      const auto& pos = v.at("pos");
      p.pos = {pos.at(0).get<double>(), pos.at(1).get<double>()};
      p.gamma = v.at("gamma").get<double>();
      const double d = v.value("blob_delta", 0.0);
      if (d < 0.0) raise(ErrorCode::InputError, "scenario: blob_delta must be >= 0");
      if (delta < 0.0) delta = d;
      if (d != delta)
        raise(ErrorCode::InputError, "scenario: all vortices must share one blob_delta");
      s.vortices.push_back(p);
    }
    s.blob_delta = std::max(0.0, delta);
    s.gamma_bound = j.value("gamma_bound", 0.0);
    s.dt = j.at("dt").get<double>();
    if (!(s.dt > 0.0)) raise(ErrorCode::InputError, "scenario: dt must be positive");
    s.T = j.at("T").get<double>();
    if (s.T < 0.0) raise(ErrorCode::InputError, "scenario: T must be >= 0");
    s.dump_every = j.value("dump_every", 100L);
    if (s.dump_every < 1) raise(ErrorCode::InputError, "scenario: dump_every must be >= 1");
    if (j.contains("grid")) {
      DiagnosticsGridConfig g;
      const auto& gj = j["grid"];
      g.grid.r_outer = gj.value("r_outer", 20.0);
      g.grid.n_r = gj.value("n_r", 400);
      g.grid.n_t = gj.value("n_t", 512);
      g.mask_radius = gj.value("mask_radius", 0.15);
      g.grid.validate();
      s.grid = g;
      s.field_dumps = j.value("field_dumps", false);
    }
    return s;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorCode::InputError, std::string("scenario: ") + e.what());
  }
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::InputError, "scenario: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace exeuler
