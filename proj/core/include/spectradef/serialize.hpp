#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "spectradef/deformation.hpp"
#include "spectradef/model.hpp"

namespace spectradef {

using Json = nlohmann::json;

/// {"re": "p/q", "im": "p/q"}
Json to_json(const Scalar& s);
/// Accepts the object form, an integer, or a "p/q" string. Floating-point
/// values raise UnsupportedScalar; other shapes raise InvalidSpec.
Scalar scalar_from_json(const Json& j);

Json to_json(const Matrix& m);
Json to_json(const Model& model, const Form& f);
Json to_json(const Model& model, const VectorForm& v);
Json to_json(const Model& model, const VectorSeries& s);
Json to_json(const Model& model, const FormSeries& s);
Json to_json(const Model& model, const MCState& state);

Form form_from_json(const Model& model, const Json& j);

/// Reads the model file format. Throws InvalidSpec / UnsupportedScalar.
ModelSpec spec_from_json(const Json& j);
Json to_json(const ModelSpec& spec);

ModelSpec load_spec(const std::string& path);

}  // namespace spectradef
