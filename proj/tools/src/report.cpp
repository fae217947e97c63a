#include "spectradef_cli/report.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace spectradef::cli {

namespace {

bool is_scalar_object(const Json& j) {
  return j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im");
}

bool is_term(const Json& j) { return j.is_object() && j.contains("coeff") && j.contains("monomial"); }

bool is_form(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), is_term);
}

std::string scalar_text(const Json& j) { return to_string(scalar_from_json(j)); }

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::optional<std::string> inline_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return std::string("none");
  if (j.is_primitive()) return j.dump();
  if (is_scalar_object(j)) return scalar_text(j);
  if (is_form(j)) return form_text(j);
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (j[k].is_array() || (j[k].is_object() && !is_scalar_object(j[k]))) return std::nullopt;
      if (k > 0) out += ", ";
      out += *inline_text(j[k]);
    }
    return out + "]";
  }
  if (j.is_object() && j.size() <= 4 && !j.contains("cells") &&
      std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); })) {
    std::string out = "{";
    for (const auto& [key, value] : j.items()) out += (out.size() > 1 ? ", " : "") + key + ": " + *inline_text(value);
    return out + "}";
  }
  return std::nullopt;
}

void render_grid(const Json& table, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  int max_p = 0;
  int max_q = 0;
  std::map<std::pair<int, int>, std::string> cells;
  for (const auto& [key, value] : table.at("cells").items()) {
    const auto comma = key.find(',');
    const int p = std::stoi(key.substr(0, comma));
    const int q = std::stoi(key.substr(comma + 1));
    max_p = std::max(max_p, p);
    max_q = std::max(max_q, q);
    cells[{p, q}] = value.dump();
  }
  std::size_t width = 3;
  for (const auto& [pq, s] : cells) width = std::max(width, s.size());
  for (int q = 0; q <= max_q; ++q) width = std::max(width, ("q=" + std::to_string(q)).size());

  const std::string label = table.value("label", std::string("grid"));
  const std::size_t head = std::max<std::size_t>(label.size(), ("p=" + std::to_string(max_p)).size());
  out << pad << label << std::string(head - label.size(), ' ');
  for (int q = 0; q <= max_q; ++q) out << "  " << pad_left("q=" + std::to_string(q), width);
  out << "\n";
  for (int p = 0; p <= max_p; ++p) {
    const std::string row = "p=" + std::to_string(p);
    out << pad << row << std::string(head - row.size(), ' ');
    for (int q = 0; q <= max_q; ++q) {
      auto it = cells.find({p, q});
      out << "  " << pad_left(it == cells.end() ? "." : it->second, width);
    }
    out << "\n";
  }
}

void render_block(const Json& j, int indent, std::ostringstream& out);

void render_entry(const std::string& prefix, const Json& value, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (value.is_object() && value.contains("cells")) {
    out << pad << prefix << "\n";
    render_grid(value, indent + 2, out);
    // Remaining keys of a grid object (besides its cells) follow the grid.
    for (const auto& [key, v] : value.items()) {
      if (key == "cells" || key == "label") continue;
      render_entry(key + ":", v, indent + 2, out);
    }
    return;
  }
  if (auto text = inline_text(value)) {
    out << pad << prefix << " " << *text << "\n";
    return;
  }
  out << pad << prefix << "\n";
  render_block(value, indent + 2, out);
}

void render_block(const Json& j, int indent, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render_entry(key + ":", value, indent, out);
  } else if (j.is_array()) {
    for (const auto& value : j) render_entry("-", value, indent, out);
  } else {
    out << std::string(static_cast<std::size_t>(indent), ' ') << *inline_text(j) << "\n";
  }
}

Json cells_json(const std::map<Bidegree, std::size_t>& dims) {
  Json cells = Json::object();
  for (const auto& [b, d] : dims) cells[to_string(b)] = d;
  return cells;
}

Json evidence_json(const std::vector<std::tuple<int, int, int, std::size_t>>& list) {
  Json out = Json::array();
  for (const auto& [r, p, q, rank] : list) out.push_back({{"r", r}, {"p", p}, {"q", q}, {"rank", rank}});
  return out;
}

}  // namespace

std::string form_text(const Json& terms) {
  if (!terms.is_array() || terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    std::string coeff = scalar_text(t.at("coeff"));
    bool negative = false;
    const bool compound = coeff.find_first_of("+-", 1) != std::string::npos;
    if (!compound && coeff.front() == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    std::string mono;
    for (const auto& name : t.at("monomial")) mono += (mono.empty() ? "" : "^") + name.get<std::string>();
    if (mono.empty()) mono = "1";
    if (t.contains("frame")) mono += "@theta" + std::to_string(t.at("frame").get<int>());

    std::string term;
    if (compound) {
      term = "(" + coeff + ")*" + mono;
    } else if (coeff == "1") {
      term = mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
    first = false;
  }
  return out;
}

std::string emit_report(const Json& results, Format format) {
  if (format == Format::Json) return results.dump(2) + "\n";
  std::ostringstream out;
  render_block(results, 0, out);
  return out.str();
}

Json model_summary(const Model& model) {
  std::map<Bidegree, std::size_t> dims;
  for (int p = 0; p <= model.n(); ++p) {
    for (int q = 0; q <= model.m(); ++q) dims[{p, q}] = model.dim({p, q});
  }
  return Json{{"name", model.name()},
              {"n", model.n()},
              {"m", model.m()},
              {"frame_flat", model.frame_flat()},
              {"admissible_basis", model.has_admissible_basis()},
              {"dimensions", Json{{"label", "A"}, {"cells", cells_json(dims)}}}};
}

Json page_table_json(const SpectralSequence& ss, int r) {
  return Json{{"label", "E_" + std::to_string(r)}, {"r", r}, {"cells", cells_json(ss.table(r))}};
}

Json page_entry_json(const SpectralSequence& ss, int r, int p, int q) {
  const Model& model = ss.model();
  const auto entry = ss.page(r, p, q);
  Json reps = Json::array();
  for (const auto& f : entry->representatives) reps.push_back(to_json(model, f));
  Json witnesses = Json::array();
  for (const auto& list : entry->witnesses) {
    Json w = Json::array();
    for (const auto& f : list) w.push_back(to_json(model, f));
    witnesses.push_back(std::move(w));
  }
  Json out{{"r", r},
           {"p", p},
           {"q", q},
           {"dim", entry->dim},
           {"representatives", reps},
           {"witnesses", witnesses},
           {"d_target", to_string(Bidegree{p + r, q - r + 1})},
           {"d_matrix", to_json(entry->d_matrix)}};
  out["stabilization"] = model.in_range({p, q}) ? Json(ss.stabilization(p, q)) : Json(nullptr);
  return out;
}

Json degeneration_json(const DegenerationReport& report) {
  Json ranks = Json::array();
  for (const auto& [r, rank] : report.ranks) ranks.push_back({{"r", r}, {"rank", rank}});
  return Json{{"p", report.p},
              {"q", report.q},
              {"verdict", report.verdict},
              {"differentials_vanish", report.differentials_vanish},
              {"lifts_exist", report.lifts_exist},
              {"filtration_identity", report.filtration_identity},
              {"ranks", ranks}};
}

Json filtration_json(const FiltrationReport& report) {
  return Json{{"p", report.p},
              {"q", report.q},
              {"verdict", report.verdict},
              {"differentials_vanish", report.differentials_vanish},
              {"filtration_identity", report.filtration_identity},
              {"nonzero", evidence_json(report.nonzero)}};
}

Json flag_json(const HypothesisFlag& flag) {
  return Json{{"name", flag.name}, {"holds", flag.holds}, {"evidence", evidence_json(flag.evidence)}};
}

Json kodaira_json(const Model& model, const KodairaReport& report) {
  Json hyps = Json::array();
  for (const auto& h : report.hypotheses) hyps.push_back(flag_json(h));
  Json out{{"p", report.p},
           {"q", report.q},
           {"hypotheses", hyps},
           {"all_hold", report.all_hold},
           {"conclusion", report.conclusion}};
  if (!report.kernel || !report.kernel_domain) {
    out["kernel"] = nullptr;
    return out;
  }
  const ContractionMap map = mu(model, report.p, report.q, *report.kernel_domain);
  Json classes = Json::array();
  Json images = Json::array();
  for (const auto& v : report.kernel->basis_vectors()) {
    VectorForm sigma = model.zero_vector();
    Form image;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      sigma += map.domain_classes[k] * v[k];
      if (!map.omega_images.empty()) image += map.omega_images[k] * v[k];
    }
    classes.push_back(to_json(model, sigma));
    if (!map.omega_images.empty()) images.push_back(to_json(model, image));
  }
  Json domain = Json::array();
  for (const auto& c : map.domain_classes) domain.push_back(to_json(model, c));
  out["kernel"] = Json{{"domain", to_string(*report.kernel_domain)},
                       {"domain_dim", map.domain_classes.size()},
                       {"domain_classes", domain},
                       {"dim", report.kernel->dim()},
                       {"coordinates", to_json(report.kernel->basis())},
                       {"classes", classes}};
  if (!map.omega_images.empty()) out["kernel"]["omega_images"] = images;
  return out;
}

Json cy_json(const CYReport& report) {
  Json flags = Json::array();
  for (const auto& f : report.flags) flags.push_back(flag_json(f));
  return Json{{"verdict", to_string(report.verdict)},
              {"theorem_route", report.theorem_route},
              {"corollary_route", report.corollary_route},
              {"flags", flags},
              {"failing", report.failing}};
}

Json quotient_grid(const SpectralSequence& ss, const std::string& label, bool bott_chern) {
  const Model& model = ss.model();
  std::map<Bidegree, std::size_t> dims;
  for (int p = 0; p <= model.n(); ++p) {
    for (int q = 0; q <= model.m(); ++q) {
      dims[{p, q}] = bott_chern ? ss.bott_chern(p, q).dim() : ss.aeppli(p, q).dim();
    }
  }
  return Json{{"label", label}, {"cells", cells_json(dims)}};
}

Json popovici_json(const SpectralSequence& ss) {
  const int n = ss.model().n();
  const PopoviciMaps maps = ss.popovici();
  const auto describe = [](const Matrix& m) {
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"rank", reduce(m).rank}, {"zero", m.is_zero()},
                {"matrix", to_json(m)}};
  };
  Json out{{"a1", describe(maps.a1)}, {"a2", describe(maps.a2)}};
  if (n >= 1) {
    const bool deg = ss.degeneration(n - 1, 1).verdict;
    out["degeneration_n-1_1"] = deg;
    out["a1_implication_holds"] = !maps.a1.is_zero() || deg;
  }
  if (n >= 2) {
    const bool filt = ss.filtration_condition(n - 2, 2).verdict;
    out["filtration_n-2_2"] = filt;
    out["a2_implication_holds"] = !maps.a2.is_zero() || filt;
  }
  return out;
}

Json obstruction_json(const Model& model, const ObstructionClass& c) {
  Json coords = Json::array();
  for (const auto& s : c.coordinates) coords.push_back(to_json(s));
  return Json{{"index", to_string(c.index)},
              {"representative", to_json(model, c.representative)},
              {"harmonic", to_json(model, c.harmonic)},
              {"coordinates", coords},
              {"zero", c.is_zero()}};
}

}  // namespace spectradef::cli
