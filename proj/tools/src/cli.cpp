#include "spectradef_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "spectradef/builtins.hpp"
#include "spectradef/error.hpp"
#include "spectradef_cli/report.hpp"

namespace spectradef::cli {

namespace {

struct RunConfig {
  std::string manifold;
  long k = 1;
  int n = 2;
  std::string input;
  std::string format = "text";
  std::string output;
  bool verify = false;

  int r = 1;
  int p = 0;
  int q = 0;
  int order = 1;
  std::size_t class_index = 0;
  std::vector<std::size_t> directions;
  std::string method = "kuranishi";
  bool dump = false;
};

/// Presence of the optional flags, filled after parsing.
struct Seen {
  bool manifold = false, k = false, n = false, input = false;
  bool r = false, p = false, q = false;
};

[[noreturn]] void bad_argument(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

ModelSpec source_spec(const RunConfig& cfg, const Seen& seen) {
  if (seen.manifold == seen.input) bad_argument("give exactly one of --manifold or --input");
  if (seen.k && cfg.manifold != "nakamura") bad_argument("--k applies to --manifold nakamura only");
  if (seen.n && cfg.manifold != "abelian") bad_argument("--n applies to --manifold abelian only");
  if (seen.input) return load_spec(cfg.input);
  if (cfg.manifold == "iwasawa") return iwasawa_spec();
  if (cfg.manifold == "nakamura") return nakamura_spec(cfg.k);
  return abelian_spec(cfg.n);
}

/// Both of --p/--q, or neither.
bool bidegree_given(const Seen& seen) {
  if (seen.p != seen.q) bad_argument("--p and --q must be given together");
  return seen.p;
}

void require_order(int order) {
  if (order < 1) bad_argument("--order must be at least 1");
}

/// 1 + the largest r with a nonzero d_r anywhere.
int degenerates_at(const SpectralSequence& ss) {
  int last = 0;
  for (int p = 0; p <= ss.model().n(); ++p) {
    for (int q = 0; q <= ss.model().m(); ++q) {
      for (const auto& [r, rank] : ss.degeneration(p, q).ranks) {
        if (rank != 0) last = std::max(last, r);
      }
    }
  }
  return last + 1;
}

Json all_pages(const SpectralSequence& ss) {
  Json pages = Json::array();
  for (int r = 1; r <= ss.stabilization_index(); ++r) pages.push_back(page_table_json(ss, r));
  return pages;
}

/// Highest degree k <= limit with residual terms only above it.
bool residual_zero_through(const VectorSeries& residual, int limit) {
  return std::none_of(residual.terms().begin(), residual.terms().end(),
                      [&](const auto& term) { return total_degree(term.first) <= limit; });
}

Json state_verdict(const Model& model, const MCState& state) {
  const int through = state.solved_through();
  const bool clean = residual_zero_through(mc_residual(model, state), through);
  if (!clean) throw Error(ErrorCode::EquivalenceViolation, "Maurer-Cartan residual is nonzero on solved orders");
  int vanishing_from = 1;
  for (const auto& [idx, value] : state.phi.terms()) vanishing_from = std::max(vanishing_from, total_degree(idx) + 1);
  Json out{{"state", to_json(model, state)},
           {"solved_through", through},
           {"residual_zero", clean},
           {"phi_vanishes_from_order", vanishing_from}};
  if (state.solved()) {
    out["verdict"] = state.method == "parallelisable" ? "UNOBSTRUCTED" : "SOLVED";
    out["obstructed_at"] = nullptr;
  } else {
    out["verdict"] = "OBSTRUCTED";
    out["obstructed_at"] = through + 1;
  }
  return out;
}

MCState make_state(const Model& model, const RunConfig& cfg) {
  if (cfg.method == "parallelisable") {
    if (!cfg.directions.empty()) bad_argument("--directions applies to the kuranishi method only");
    return parallelisable_mc(model, cfg.order);
  }
  return kuranishi(model, cfg.order, cfg.directions);
}

Json cmd_pages(const SpectralSequence& ss, const RunConfig& cfg, const Seen& seen) {
  if (cfg.r < 1) bad_argument("--r must be at least 1");
  Json out{{"stabilization_index", ss.stabilization_index()}};
  if (bidegree_given(seen)) {
    out["entry"] = page_entry_json(ss, cfg.r, cfg.p, cfg.q);
  } else if (seen.r) {
    out["pages"] = Json::array({page_table_json(ss, cfg.r)});
  } else {
    out["pages"] = all_pages(ss);
  }
  return out;
}

Json cmd_degeneration(const SpectralSequence& ss, const RunConfig& cfg, const Seen& seen) {
  const auto both = [&](int p, int q) {
    return Json{{"degeneration", degeneration_json(ss.degeneration(p, q))},
                {"filtration", filtration_json(ss.filtration_condition(p, q))}};
  };
  if (bidegree_given(seen)) return both(cfg.p, cfg.q);
  Json cells = Json::object();
  for (int p = 0; p <= ss.model().n(); ++p) {
    for (int q = 0; q <= ss.model().m(); ++q) cells[to_string(Bidegree{p, q})] = both(p, q);
  }
  return Json{{"bidegrees", cells}, {"degenerates_at", degenerates_at(ss)}};
}

Json cmd_bott_chern(const SpectralSequence& ss, const RunConfig& cfg, const Seen& seen) {
  Json out{{"bott_chern", quotient_grid(ss, "H_BC", true)}, {"aeppli", quotient_grid(ss, "H_A", false)}};
  if (bidegree_given(seen)) {
    const Bidegree b{cfg.p, cfg.q};
    const auto reps = [&](const Quotient& quot) {
      Json list = Json::array();
      for (const auto& v : quot.representatives()) list.push_back(to_json(ss.model(), ss.model().from_vector(v, b)));
      return list;
    };
    out["representatives"] = Json{{"bidegree", to_string(b)},
                                  {"bott_chern", reps(ss.bott_chern(cfg.p, cfg.q))},
                                  {"aeppli", reps(ss.aeppli(cfg.p, cfg.q))}};
  }
  return out;
}

Json cmd_obstruction(const SpectralSequence& ss, const RunConfig& cfg, int& status) {
  const Model& model = ss.model();
  require_order(cfg.order);
  const MCState state = kuranishi(model, cfg.order, cfg.directions);
  const int n = std::min(cfg.order, state.solved_through());
  const auto classes = obstruction_class(model, state, n);

  Json list = Json::array();
  bool any_nonzero = false;
  bool all_in_ker = true;
  for (const auto& c : classes) {
    Json j = obstruction_json(model, c);
    const bool in_ker = in_ker_mu(model, cfg.p, cfg.q, c.representative);
    j["in_ker_mu"] = in_ker;
    any_nonzero = any_nonzero || !c.is_zero();
    all_in_ker = all_in_ker && in_ker;
    list.push_back(std::move(j));
  }
  const KodairaReport kodaira = check_refined_kodaira(ss, cfg.p, cfg.q);
  const bool consistent = !kodaira.all_hold || all_in_ker;
  if (!consistent) status = kInternalError;
  return Json{{"examined_order", n + 1},
              {"solved_through", state.solved_through()},
              {"classes", list},
              {"any_nonzero", any_nonzero},
              {"all_in_ker_mu", all_in_ker},
              {"kodaira", kodaira_json(model, kodaira)},
              {"consistent", consistent}};
}

Json cmd_extend(const SpectralSequence& ss, const RunConfig& cfg) {
  const Model& model = ss.model();
  require_order(cfg.order);
  const auto entry = ss.page(1, cfg.p, cfg.q);
  if (cfg.class_index >= entry->representatives.size()) {
    bad_argument("--class " + std::to_string(cfg.class_index) + " out of range; E_1^{" +
                 to_string(Bidegree{cfg.p, cfg.q}) + "} has dimension " + std::to_string(entry->dim));
  }
  const Form& alpha0 = entry->representatives[cfg.class_index];
  const MCState state = make_state(model, cfg);
  const ExtensionResult result = extend_form(ss, alpha0, state, cfg.order);
  return Json{{"alpha0", to_json(model, alpha0)},
              {"method", state.method},
              {"solved_through", state.solved_through()},
              {"phi", to_json(model, state.phi)},
              {"alpha", to_json(model, result.alpha)},
              {"d_exp_zero", result.d_exp.is_zero()},
              {"twisted_zero", result.twisted.is_zero()}};
}

Json cmd_report(const SpectralSequence& ss) {
  const Model& model = ss.model();
  const int n = model.n();
  Json degeneration = Json::object();
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= model.m(); ++q) {
      degeneration[to_string(Bidegree{p, q})] = Json{{"degeneration", ss.degeneration(p, q).verdict},
                                                     {"filtration", ss.filtration_condition(p, q).verdict}};
    }
  }
  Json de_rham = Json::array();
  for (int k = 0; k <= n + model.m(); ++k) de_rham.push_back(ss.de_rham(k));

  Json out{{"model", model_summary(model)},
           {"stabilization_index", ss.stabilization_index()},
           {"pages", all_pages(ss)},
           {"degeneration", degeneration},
           {"degenerates_at", degenerates_at(ss)},
           {"de_rham", de_rham},
           {"bott_chern", quotient_grid(ss, "H_BC", true)},
           {"aeppli", quotient_grid(ss, "H_A", false)},
           {"popovici", popovici_json(ss)},
           {"cy_check", cy_json(check_cy(ss))}};
  if (n >= 1) out["kodaira"] = kodaira_json(model, check_refined_kodaira(ss, n, 1));

  if (model.frame_flat()) {
    const MCState state = kuranishi(model, 2);
    std::size_t nonzero = 0;
    if (state.solved_through() >= 1) {
      for (const auto& c : obstruction_class(model, state, 1)) nonzero += c.is_zero() ? 0 : 1;
    }
    out["kuranishi"] = Json{{"available", true},
                            {"directions", state.directions.size()},
                            {"order", 2},
                            {"solved_through", state.solved_through()},
                            {"nonzero_order2_classes", nonzero}};
  } else {
    out["kuranishi"] = Json{{"available", false}, {"reason", "frame is not holomorphic"}};
  }
  return out;
}

Json cmd_validate(const Model& model) {
  bool canonical = true;
  try {
    omega_form(model);
  } catch (const Error&) {
    canonical = false;
  }
  return Json{{"valid", true},
              {"model", model_summary(model)},
              {"trivial_canonical", canonical},
              {"lint_warnings", model.lint_warnings()}};
}

void add_source_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--manifold", cfg.manifold, "Built-in model")
      ->check(CLI::IsMember({"iwasawa", "nakamura", "abelian"}));
  sub->add_option("--k", cfg.k, "Nakamura family parameter (nonzero)");
  sub->add_option("--n", cfg.n, "Complex dimension of the abelian model");
  sub->add_option("--input", cfg.input, "Model file (JSON)");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--output", cfg.output, "Write results to this file");
  sub->add_flag("--verify", cfg.verify, "Run well-definedness checks");
}

int exit_for(const Error& e) {
  switch (severity_of(e.code())) {
    case ErrorSeverity::Input:
      return kInputError;
    case ErrorSeverity::Hypothesis:
      return kHypothesisFailure;
    case ErrorSeverity::Internal:
      return kInternalError;
  }
  return kInternalError;
}

}  // namespace

unsigned thread_cap() {
  if (const char* env = std::getenv("SPECTRA_DEF_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Frolicher spectral sequence and deformation toolkit", "spectradef"};
  app.require_subcommand(1, 1);

  struct Command {
    CLI::App* app;
    std::string name;
  };
  std::vector<Command> commands;
  const auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_source_options(sub, cfg);
    commands.push_back({sub, name});
    return sub;
  };
  const auto add_bidegree = [&](CLI::App* sub, bool required) {
    sub->add_option("--p", cfg.p, "Holomorphic degree")->required(required);
    sub->add_option("--q", cfg.q, "Antiholomorphic degree")->required(required);
  };
  const auto add_directions = [&](CLI::App* sub) {
    sub->add_option("--directions", cfg.directions, "Harmonic direction indices (0-based)")->delimiter(',');
  };

  CLI::App* pages = add("pages", "E_r tables or one entry");
  pages->add_option("--r", cfg.r, "Page index");
  add_bidegree(pages, false);
  add_bidegree(add("degeneration", "Degeneration and filtration conditions"), false);
  add_bidegree(add("kodaira", "Refined Kodaira hypotheses and ker mu"), true);
  add("cy-check", "Unobstructedness criterion for trivial canonical bundle");
  add_bidegree(add("bott-chern", "Bott-Chern and Aeppli dimensions"), false);
  add("popovici", "The maps A1 and A2");
  CLI::App* kur = add("kuranishi", "Kuranishi iteration");
  kur->add_option("--order", cfg.order, "Truncation order")->required();
  add_directions(kur);
  add("parallelisable", "Exact Maurer-Cartan solution")->add_option("--order", cfg.order, "Order")->required();
  CLI::App* obs = add("obstruction", "Obstruction classes against ker mu");
  obs->add_option("--order", cfg.order, "Truncation order")->required();
  add_bidegree(obs, true);
  add_directions(obs);
  CLI::App* ext = add("extend", "Extend a Dolbeault class along a deformation");
  add_bidegree(ext, true);
  ext->add_option("--order", cfg.order, "Truncation order")->required();
  ext->add_option("--class", cfg.class_index, "Index of the E_1 representative")->required();
  ext->add_option("--method", cfg.method, "Deformation source")
      ->check(CLI::IsMember({"kuranishi", "parallelisable"}));
  add_directions(ext);
  add("report", "Full bundle");
  add("validate", "Build the model only")->add_flag("--dump", cfg.dump, "Print the model file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto chosen = std::find_if(commands.begin(), commands.end(), [](const Command& c) { return c.app->parsed(); });
  CLI::App* sub = chosen->app;
  const std::string& name = chosen->name;
  const auto given = [&](const char* flag) {
    try {
      return sub->get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  const Seen seen{given("--manifold"), given("--k"), given("--n"), given("--input"),
                  given("--r"),        given("--p"), given("--q")};

  int status = kOk;
  try {
    const ModelSpec spec = source_spec(cfg, seen);
    const Model model = build_model(spec);

    std::string text;
    if (name == "validate" && cfg.dump) {
      text = to_json(spec).dump(2) + "\n";
    } else {
      const SpectralSequence ss(model, SpectralOptions{cfg.verify, thread_cap()});
      Json result;
      if (name == "pages") {
        result = cmd_pages(ss, cfg, seen);
      } else if (name == "degeneration") {
        result = cmd_degeneration(ss, cfg, seen);
      } else if (name == "kodaira") {
        result = kodaira_json(model, check_refined_kodaira(ss, cfg.p, cfg.q));
        if (cfg.verify && result["kernel"] != nullptr) mu(model, cfg.p, cfg.q, MuDomain::Automatic, true);
      } else if (name == "cy-check") {
        result = cy_json(check_cy(ss));
      } else if (name == "bott-chern") {
        result = cmd_bott_chern(ss, cfg, seen);
      } else if (name == "popovici") {
        result = popovici_json(ss);
      } else if (name == "kuranishi") {
        require_order(cfg.order);
        result = state_verdict(model, kuranishi(model, cfg.order, cfg.directions));
      } else if (name == "parallelisable") {
        require_order(cfg.order);
        result = state_verdict(model, parallelisable_mc(model, cfg.order));
      } else if (name == "obstruction") {
        result = cmd_obstruction(ss, cfg, status);
      } else if (name == "extend") {
        result = cmd_extend(ss, cfg);
      } else if (name == "report") {
        result = cmd_report(ss);
      } else {
        result = cmd_validate(model);
      }
      result["command"] = name;
      result["model_name"] = model.name();
      text = emit_report(result, cfg.format == "json" ? Format::Json : Format::Text);
    }

    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) bad_argument("cannot write '" + cfg.output + "'");
      file << text;
    }
    if (status == kInternalError) err << "error: obstruction classes violate the refined Kodaira conclusion\n";
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace spectradef::cli
