#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "exeuler/diagnostics.hpp"
#include "exeuler/dynamics.hpp"
#include "exeuler/errors.hpp"

using namespace exeuler;

TEST_SUITE_BEGIN("diagnostics");

TEST_CASE("quiescent energy is zero; rigid terms add up") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 2.0;
  st.body.J = 0.5;
  DiagnosticsGridConfig cfg;
  cfg.grid = {30.0, 600, 256};
  CHECK(energy_E0(model, st, {}, cfg) == doctest::Approx(0.0));

  st.body.hdot = {1.0, 0.0};
  st.body.r = 0.3;
  // fluid part of a unit disk at unit speed is the added mass value pi
  const double e = energy_E0(model, st, {}, cfg);
  const double rigid = st.body.m * 1.0 + st.body.J * 0.09;
  CHECK(e - rigid == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("nonzero bound circulation is rejected as unbounded energy") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  st.gamma_bound = 0.5;
  DiagnosticsGridConfig cfg;
  try {
    (void)energy_E0(model, st, {}, cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundedEnergy);
  }
}

TEST_CASE("impulse vanishes for the quiescent body") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  const Impulse p = impulse(model, st);
  CHECK(p.linear.norm() == 0.0);
  CHECK(p.angular == 0.0);
}

TEST_CASE("isolated opposite pair carries impulse of magnitude Gamma*D") {
  // a pair far from a small disk is effectively free space
  const BodyModel model(BodyShape::disk(0.05));
  FlowState st;
  st.body.m = 1.0;
  st.body.J = 1.0;
  const double gamma = 1.3, D = 1.6;
  st.particles = {{{40.0, D / 2}, gamma}, {{40.0, -D / 2}, -gamma}};
  const Impulse p0 = impulse(model, st);
  CHECK(p0.linear.norm() == doctest::Approx(gamma * D).epsilon(1e-4));

  IntegratorConfig cfg;
  cfg.dt = 2e-3;
  FlowState s = st;
  for (int i = 0; i < 500; ++i) s = step(model, s, cfg);
  const Impulse p1 = impulse(model, s);
  CHECK(std::abs(p1.linear.x - p0.linear.x) < 1e-8);
  CHECK(std::abs(p1.linear.y - p0.linear.y) < 1e-8);
}

TEST_CASE("coupled impulse is conserved to integrator precision") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = M_PI;
  st.body.J = 1.0;
  st.body.hdot = {0.05, -0.02};
  st.gamma_bound = 0.2;
  st.particles = {{{2.5, 0.3}, 1.5}, {{-1.8, 2.2}, 0.9}};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  const Impulse p0 = impulse(model, st);
  for (int i = 0; i < 1000; ++i) st = step(model, st, cfg);
  const Impulse p1 = impulse(model, st);
  CHECK(std::abs(p1.linear.x - p0.linear.x) < 1e-11);
  CHECK(std::abs(p1.linear.y - p0.linear.y) < 1e-11);
  CHECK(std::abs(p1.angular - p0.angular) < 1e-11);
}

TEST_CASE("envelope closed form") {
  EnvelopeParams p;
  p.K1 = 2.0;
  p.K2 = 0.4;
  p.K3 = 0.3;
  p.E1_0 = 4.0;
  p.E3_0 = 0.8;
  const double Es0 = 5.0;
  CHECK(envelope(p, 0.0, Es0) == doctest::Approx(p.K1 * Es0));
  // E3_0 <= 1: the ln+ term contributes nothing
  EnvelopeParams q = p;
  q.E3_0 = 0.2;
  CHECK(envelope(p, 1.3, Es0) == doctest::Approx(envelope(q, 1.3, Es0)));
  // monotone in t and in each parameter
  CHECK(envelope(p, 2.0, Es0) > envelope(p, 1.0, Es0));
  EnvelopeParams r = p;
  r.E1_0 *= 2.0;
  CHECK(envelope(r, 1.0, Es0) > envelope(p, 1.0, Es0));
  r = p;
  r.E3_0 = 9.0;
  CHECK(envelope(r, 1.0, Es0) > envelope(p, 1.0, Es0));
  for (auto bump : {0, 1, 2}) {
    EnvelopeParams s = p;
    (bump == 0 ? s.K1 : bump == 1 ? s.K2 : s.K3) *= 1.5;
    CHECK(envelope(s, 1.0, Es0) > envelope(p, 1.0, Es0));
  }
}

TEST_CASE("check_envelope accepts bounded records and rejects escapes") {
  EnvelopeParams p;
  p.E1_0 = 1.0;
  p.E3_0 = 1.0;
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i <= 10; ++i) {
    DiagnosticsRecord r;
    r.time = 0.1 * i;
    r.es_proxy = 1.0 + 0.01 * i;  // grows much slower than the envelope
    recs.push_back(r);
  }
  const EnvelopeReport rep = check_envelope(recs, p);
  CHECK(rep.inside);
  CHECK(rep.min_margin > 0.0);

  recs[5].es_proxy = 1e9;
  CHECK_THROWS_AS((void)check_envelope(recs, p), Error);
}

TEST_CASE("omega surrogate is exactly constant along a run") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = M_PI;
  st.body.J = 1.0;
  st.particles = {{{2.5, 0.4}, 1.1}, {{-2.0, 0.8}, -0.7}};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  const double s0 = omega_inf_surrogate(st, cfg.blob);
  for (int i = 0; i < 50; ++i) st = step(model, st, cfg);
  CHECK(omega_inf_surrogate(st, cfg.blob) == s0);
}

TEST_CASE("ndjson records are stable and parseable") {
  DiagnosticsRecord r;
  r.time = 0.125;
  r.circulation_total = 1.5;
  r.impulse = {0.25, -0.5, 2.0};
  r.omega_inf_surrogate = 3.0;
  r.envelope_value = 7.0;
  const std::string s = record_to_ndjson(r);
  CHECK(s == record_to_ndjson(r));
  const auto j = nlohmann::json::parse(s);
  CHECK(j.at("time").get<double>() == 0.125);
  CHECK(j.at("e0_grid").is_null());
  CHECK(j.at("impulse").size() == 3);
  CHECK(record_to_csv_header().substr(0, 5) == "time,");
}

TEST_CASE("field dumps carry a little-endian f64 sidecar") {
  const AnnularGrid g{8.0, 16, 16};
  GridField f = GridField::zeros(g, 2);
  f.at(3, 4, 1) = 42.0;
  const std::string prefix = std::filesystem::temp_directory_path() / "exeuler_dump_test";
  write_field_dump(prefix, f);
  std::ifstream bin(prefix + ".bin", std::ios::binary | std::ios::ate);
  CHECK(static_cast<size_t>(bin.tellg()) == f.v.size() * sizeof(double));
  std::ifstream side(prefix + ".json");
  nlohmann::json j;
  side >> j;
  CHECK(j.at("dtype") == "f64");
  CHECK(j.at("endianness") == "little");
  CHECK(j.at("fields").size() == 2);
  CHECK(j.at("grid").at("n_r") == 16);
}

TEST_CASE("records during a gridded run populate proxies and stay enveloped") {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = M_PI;
  st.body.J = 1.0;
  st.particles = {{{3.0, 0.6}, 1.5}, {{3.0, -0.6}, -1.5}};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  DiagnosticsGridConfig gcfg;
  gcfg.grid = {12.0, 96, 128};

  DiagnosticsRecord r0 = make_record(model, st, cfg.blob, &gcfg, nullptr);
  REQUIRE(r0.es_proxy.has_value());
  REQUIRE(r0.e0_grid.has_value());
  EnvelopeContext env;
  env.params.E1_0 = *r0.e1_proxy;
  env.params.E3_0 = *r0.es_proxy;
  env.Es0 = *r0.es_proxy;

  std::vector<DiagnosticsRecord> recs{r0};
  for (int i = 0; i < 200; ++i) {
    st = step(model, st, cfg);
    if (i % 50 == 0) recs.push_back(make_record(model, st, cfg.blob, &gcfg, &env));
  }
  const EnvelopeReport rep = check_envelope(recs, env.params);
  CHECK(rep.inside);
  CHECK(rep.min_margin > 0.0);
  for (const auto& rec : recs) CHECK(rec.circulation_total == recs[0].circulation_total);
}

TEST_SUITE_END();
