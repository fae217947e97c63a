#include "spectradef/serialize.hpp"

#include <fstream>
#include <set>

#include "spectradef/error.hpp"

namespace spectradef {

namespace {

Rational rational_from_json(const Json& j, const char* what) {
  if (j.is_number_float()) {
    throw Error(ErrorCode::UnsupportedScalar, std::string(what) + ": floating-point values are not exact");
  }
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::InvalidSpec, std::string(what) + ": expected a rational");
}

const Json& require_key(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::InvalidSpec, std::string(where) + " needs \"" + key + "\"");
  }
  return j.at(key);
}

std::vector<std::string> names_from_json(const Json& j, const char* where) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidSpec, std::string(where) + " must be a list of names");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorCode::InvalidSpec, std::string(where) + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Bidegree bidegree_from_key(const std::string& key) {
  const auto comma = key.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(key);
    std::size_t used = 0;
    const int p = std::stoi(key.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(key);
    const std::string rest = key.substr(comma + 1);
    const int q = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(key);
    return {p, q};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidSpec, "basis key '" + key + "' is not of the form \"p,q\"");
  }
}

}  // namespace

Json to_json(const Scalar& s) {
  return Json{{"re", rational_to_string(s.re())}, {"im", rational_to_string(s.im())}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key != "re" && key != "im") throw Error(ErrorCode::InvalidSpec, "scalar has unknown key '" + key + "'");
    }
    const Rational re = j.contains("re") ? rational_from_json(j.at("re"), "re") : Rational(0);
    const Rational im = j.contains("im") ? rational_from_json(j.at("im"), "im") : Rational(0);
    return Scalar(re, im);
  }
  return Scalar(rational_from_json(j, "scalar"));
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Model& model, const Form& f) {
  Json out = Json::array();
  for (const auto& [mono, c] : f.terms()) {
    out.push_back({{"coeff", to_json(c)}, {"monomial", model.monomial_names(mono)}});
  }
  return out;
}

Json to_json(const Model& model, const VectorForm& v) {
  Json out = Json::array();
  for (std::size_t a = 0; a < v.frame_size(); ++a) {
    for (const auto& [mono, c] : v.component(a).terms()) {
      out.push_back({{"coeff", to_json(c)}, {"frame", a + 1}, {"monomial", model.monomial_names(mono)}});
    }
  }
  return out;
}

namespace {

template <class T>
Json series_json(const Model& model, const Series<T>& s) {
  Json coeffs = Json::object();
  for (const auto& [idx, v] : s.terms()) coeffs[to_string(idx)] = to_json(model, v);
  return Json{{"coefficients", coeffs}, {"order", s.order()}, {"variables", s.variables()}};
}

}  // namespace

Json to_json(const Model& model, const VectorSeries& s) { return series_json(model, s); }
Json to_json(const Model& model, const FormSeries& s) { return series_json(model, s); }

Json to_json(const Model& model, const MCState& state) {
  Json directions = Json::array();
  for (const auto& d : state.directions) directions.push_back(to_json(model, d));
  Json records = Json::array();
  for (const auto& rec : state.records) {
    Json obs = Json::array();
    for (const auto& o : rec.obstructions) {
      Json coords = Json::array();
      for (const auto& c : o.coordinates) coords.push_back(to_json(c));
      obs.push_back({{"index", to_string(o.index)},
                     {"representative", to_json(model, o.representative)},
                     {"harmonic", to_json(model, o.harmonic)},
                     {"coordinates", coords}});
    }
    records.push_back({{"order", rec.order},
                       {"status", rec.status == OrderStatus::Solved ? "solved" : "obstructed"},
                       {"obstructions", obs}});
  }
  return Json{{"method", state.method}, {"order", state.order},   {"solved_through", state.solved_through()},
              {"directions", directions}, {"phi", to_json(model, state.phi)}, {"records", records},
              {"notes", state.notes}};
}

Form form_from_json(const Model& model, const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidSpec, "a form is a list of terms");
  Form out;
  for (const auto& term : j) {
    const Scalar c = scalar_from_json(require_key(term, "coeff", "form term"));
    const auto names = names_from_json(require_key(term, "monomial", "form term"), "monomial");
    out.add(model.monomial_from_names(names), c);
  }
  return out;
}

ModelSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "model file must hold a JSON object");
  ModelSpec spec;
  spec.name = j.value("name", std::string("unnamed"));
  spec.holo_generators = names_from_json(require_key(j, "holo_generators", "model"), "holo_generators");
  spec.antiholo_generators = names_from_json(require_key(j, "antiholo_generators", "model"), "antiholo_generators");

  if (j.contains("d")) {
    const Json& d = j.at("d");
    if (!d.is_object()) throw Error(ErrorCode::InvalidSpec, "\"d\" must map generators to term lists");
    for (const auto& [gen, terms] : d.items()) {
      if (!terms.is_array()) throw Error(ErrorCode::InvalidSpec, "rule for '" + gen + "' must be a list");
      auto& rule = spec.d_rules[gen];
      for (const auto& t : terms) {
        rule.push_back({scalar_from_json(require_key(t, "coeff", "rule term")),
                        names_from_json(require_key(t, "monomial", "rule term"), "monomial")});
      }
    }
  }

  if (j.contains("basis") && !j.at("basis").is_null()) {
    const Json& b = j.at("basis");
    if (!b.is_object()) throw Error(ErrorCode::InvalidSpec, "\"basis\" must map \"p,q\" to monomial lists");
    std::map<Bidegree, std::vector<std::vector<std::string>>> basis;
    for (const auto& [key, list] : b.items()) {
      if (!list.is_array()) throw Error(ErrorCode::InvalidSpec, "basis entry '" + key + "' must be a list");
      auto& slot = basis[bidegree_from_key(key)];
      for (const auto& m : list) slot.push_back(names_from_json(m, "basis monomial"));
    }
    spec.admissible_basis = std::move(basis);
  }

  if (j.contains("brackets")) {
    const Json& br = j.at("brackets");
    if (!br.is_array()) throw Error(ErrorCode::InvalidSpec, "\"brackets\" must be a list");
    for (const auto& e : br) {
      BracketOverride ov;
      ov.left = require_key(e, "left", "bracket").get<std::string>();
      ov.right = require_key(e, "right", "bracket").get<std::string>();
      const Json& value = require_key(e, "value", "bracket");
      if (!value.is_array()) throw Error(ErrorCode::InvalidSpec, "bracket value must be a list");
      for (const auto& t : value) {
        const Json& frame = require_key(t, "frame", "bracket term");
        if (!frame.is_string()) throw Error(ErrorCode::InvalidSpec, "bracket frame must be a generator name");
        ov.value.emplace_back(scalar_from_json(require_key(t, "coeff", "bracket term")), frame.get<std::string>());
      }
      spec.frame_overrides.push_back(std::move(ov));
    }
  }

  if (j.contains("notes")) {
    const Json& notes = j.at("notes");
    if (!notes.is_object()) throw Error(ErrorCode::InvalidSpec, "\"notes\" must be an object of strings");
    for (const auto& [key, value] : notes.items()) {
      if (!value.is_string()) throw Error(ErrorCode::InvalidSpec, "note '" + key + "' must be a string");
      spec.notes[key] = value.get<std::string>();
    }
  }

  static const std::set<std::string> known = {"name",  "holo_generators", "antiholo_generators", "d",
                                              "basis", "brackets",        "notes"};
  for (const auto& [key, value] : j.items()) {
    if (known.count(key) != 0) continue;
    if (!value.is_string()) throw Error(ErrorCode::InvalidSpec, "unknown key '" + key + "'");
    spec.notes[key] = value.get<std::string>();
  }
  return spec;
}

Json to_json(const ModelSpec& spec) {
  Json out;
  out["name"] = spec.name;
  out["holo_generators"] = spec.holo_generators;
  out["antiholo_generators"] = spec.antiholo_generators;
  Json d = Json::object();
  for (const auto& [gen, terms] : spec.d_rules) {
    Json list = Json::array();
    for (const auto& t : terms) list.push_back({{"coeff", to_json(t.coeff)}, {"monomial", t.monomial}});
    d[gen] = list;
  }
  out["d"] = d;
  if (spec.admissible_basis) {
    Json b = Json::object();
    for (const auto& [bideg, list] : *spec.admissible_basis) b[to_string(bideg)] = list;
    out["basis"] = b;
  }
  if (!spec.frame_overrides.empty()) {
    Json br = Json::array();
    for (const auto& ov : spec.frame_overrides) {
      Json value = Json::array();
      for (const auto& [c, frame] : ov.value) value.push_back({{"coeff", to_json(c)}, {"frame", frame}});
      br.push_back({{"left", ov.left}, {"right", ov.right}, {"value", value}});
    }
    out["brackets"] = br;
  }
  if (!spec.notes.empty()) out["notes"] = spec.notes;
  return out;
}

ModelSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidSpec, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, "'" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("malformed model file: ") + e.what());
  }
}

}  // namespace spectradef
