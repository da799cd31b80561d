#pragma once

#include <filesystem>
#include <string_view>

#include "cbeam/benchmarks.hpp"
#include "cbeam/discretization.hpp"
#include "cbeam/model.hpp"

namespace cbeam {

/// A model file: the physical model plus the discretization to solve it with.
struct ModelSpec {
  BeamModel model;
  FormulationKind formulation = FormulationKind::TimoshenkoH3P2;
  int elements = 8;
  QuadraturePolicy policy = QuadraturePolicy::Reduced;

  Discretization discretization() const {
    return Discretization::uniform(model.curve.length(), formulation, elements, policy);
  }
};

/// Parse a model document. Schema violations throw SchemaError naming the key
/// path (e.g. "bcs.start.twist.type"); invalid values throw SchemaError as well.
ModelSpec parse_model(std::string_view json_text);
ModelSpec load_model(const std::filesystem::path& path);

/// Study document: {"benchmark", "formulations", "quadrature", "elements",
/// "thickness", "material", optional "load", "length", "radius", "locking"}.
struct StudyFile {
  StudySpec study;
  bool locking = false;  // also run the full/reduced comparison
};

StudyFile parse_study(std::string_view json_text);
StudyFile load_study(const std::filesystem::path& path);

}  // namespace cbeam
