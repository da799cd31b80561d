#include <filesystem>
#include <string>

#include "doctest.h"

#include "cbeam/errors.hpp"
#include "cbeam/model_io.hpp"
#include "cbeam/postprocess.hpp"

using namespace cbeam;
namespace fs = std::filesystem;

namespace {

const std::string kValid = R"({
  "curve": {"kind": "arc", "center": [0, 0, 0], "radius": 2, "basis": [[1, 0, 0], [0, 1, 0]], "angle": [0, 1.5]},
  "material": {"E": 1e6, "nu": 0.25},
  "section": {"shape": "rect", "w": 0.1, "h": 0.2, "director": [0, 0, 1]},
  "formulation": "euler_bernoulli_h3",
  "elements": 6,
  "quadrature": "full",
  "bcs": {"start": "clamped",
          "end": {"preset": "free", "twist": {"type": "essential", "value": 0.01}}},
  "loads": {"body": {"s": [0, 3], "values": [[0, 0, -1], [0, 0, 1]]},
            "end": {"force": [0, 0, 0.5]}}
})";

// Replace the first occurrence of `from` in the valid document.
std::string mutate(const std::string& from, const std::string& to) {
  std::string s = kValid;
  const auto k = s.find(from);
  REQUIRE(k != std::string::npos);
  s.replace(k, from.size(), to);
  return s;
}

std::string schema_message(const std::string& text) {
  try {
    parse_model(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("valid model document") {
  const ModelSpec m = parse_model(kValid);
  CHECK(m.formulation == FormulationKind::EulerBernoulliH3);
  CHECK(m.elements == 6);
  CHECK(m.policy == QuadraturePolicy::Full);
  CHECK(m.model.curve.length() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(m.model.material.G == doctest::Approx(1e6 / 2.5).epsilon(1e-15));
  CHECK(m.model.end.twist.condition == Condition::Essential);
  CHECK(m.model.end.twist.value == 0.01);
  CHECK(m.model.start.stretch.condition == Condition::Essential);
  // piecewise linear body load, clamped outside the table
  CHECK(m.model.loads.body(1.5) == Vec3d(0, 0, 0));
  CHECK(m.model.loads.body(-1.0) == Vec3d(0, 0, -1));
  CHECK(m.model.loads.end.force == Vec3d(0, 0, 0.5));
  CHECK(m.discretization().mesh.num_elements() == 6);
}

TEST_CASE("schema errors name the offending key") {
  const std::string no_bcs = mutate(R"("bcs": {"start": "clamped",
          "end": {"preset": "free", "twist": {"type": "essential", "value": 0.01}}},)",
                                    "");
  CHECK(schema_message(no_bcs).find("bcs") != std::string::npos);
  CHECK(schema_message(mutate(R"("elements": 6)", R"("elements": 6, "colour": "red")")).find("colour") !=
        std::string::npos);
  CHECK(schema_message(mutate(R"("type": "essential")", R"("type": "fixed")")).find("bcs.end.twist.type") !=
        std::string::npos);
  CHECK(schema_message(mutate(R"("nu": 0.25)", R"("nu": 0.25, "G": 4e5)")).find("material") != std::string::npos);
  CHECK(schema_message(mutate(R"("nu": 0.25)", R"("nu": 0.7)")).find("material") != std::string::npos);
  CHECK(schema_message(mutate(R"("elements": 6)", R"("elements": 0)")).find("elements") != std::string::npos);
  CHECK(schema_message(mutate(R"("kind": "arc")", R"("kind": "ellipse")")).find("curve.kind") != std::string::npos);
  CHECK(schema_message(mutate(R"("formulation": "euler_bernoulli_h3")", R"("formulation": "p3")")).find("formulation") !=
        std::string::npos);
  CHECK(schema_message(mutate(R"("s": [0, 3])", R"("s": [3, 0])")).find("loads.body.s") != std::string::npos);
  CHECK(schema_message(mutate(R"("radius": 2)", R"("radius": -2)")).find("curve") != std::string::npos);
  CHECK(schema_message("{ not json").find("invalid JSON") != std::string::npos);
  CHECK(schema_message(R"([1, 2])") != "");
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), IoError);
  CHECK_THROWS_AS(load_study("/nonexistent/study.json"), IoError);
}

TEST_CASE("study documents") {
  const std::string base = R"({"benchmark": "straight", "formulations": ["timoshenko_p2p1"],
    "quadrature": ["reduced"], "elements": ELEMENTS, "thickness": [0.1], "locking": true})";
  auto with = [&](const std::string& el) {
    std::string s = base;
    s.replace(s.find("ELEMENTS"), 8, el);
    return s;
  };
  const StudyFile ok = parse_study(with("[1, 2, 4]"));
  CHECK(ok.locking);
  CHECK(ok.study.elements == std::vector<int>{1, 2, 4});
  CHECK(ok.study.setup.E == 1e6);
  CHECK_THROWS_AS(parse_study(with("[]")), SchemaError);
  CHECK_THROWS_AS(parse_study(with("[1, 4, 2]")), SchemaError);
  CHECK_THROWS_AS(parse_study(with("[0, 1]")), SchemaError);
  CHECK_THROWS_AS(parse_study(with("[1.5]")), SchemaError);
}

TEST_CASE("shipped data files parse") {
  const fs::path data = CBEAM_DATA_DIR;
  int models = 0, studies = 0;
  for (const auto& e : fs::directory_iterator(data / "models")) {
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_model(e.path()));
    ++models;
  }
  for (const auto& e : fs::directory_iterator(data / "studies")) {
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_study(e.path()));
    ++studies;
  }
  CHECK(models >= 7);
  CHECK(studies >= 3);

  // The straight model reproduces the analytic tip deflection to the shear-correction error.
  const ModelSpec s = load_model(data / "models" / "straight_cantilever.json");
  const double tip = tip_displacement(solve_model(s.model, s.discretization()))[1];
  CHECK(tip == doctest::Approx(-4.000275).epsilon(1e-5));
}
