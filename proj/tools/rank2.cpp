// Command-line front end: analyze, trace and symmetries on model or JSON input.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rank2/error.hpp"
#include "rank2/exact/parse.hpp"
#include "rank2/extremals/extremals.hpp"
#include "rank2/models/models.hpp"
#include "rank2/symmetry/symmetry.hpp"

using namespace rank2;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kSchema = "report-v1";

// Exit codes: 1 for malformed input, 2 for geometric preconditions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::size_t n = 6, k = 3, step = 3, prolong = 0;
  std::string input;
  std::optional<std::size_t> samples, depth_cap, degree;
  std::optional<std::uint64_t> seed;
  double T = 0.5;
  std::size_t steps = 500;
  std::size_t trajectories = 1;
  std::size_t stride = 0;
  std::size_t max_degree = 8;
  std::string out;
};

struct Problem {
  Distribution d;
  Point q;
  json source;
  std::size_t samples = 5;
  std::uint64_t seed = 1;
  std::size_t depth_cap = 0;
  std::optional<std::size_t> degree;
};

json to_json(const Rational& r) { return to_string(r); }

json to_json(std::span<const Rational> p) {
  json a = json::array();
  for (const auto& v : p) a.push_back(to_string(v));
  return a;
}

json frame_json(const Distribution& d) {
  json fields = json::array();
  for (const auto& x : d.frame()) {
    json comps = json::array();
    for (const auto& c : x.components()) comps.push_back(to_string(c));
    fields.push_back(comps);
  }
  return fields;
}

json symbol_json(const GradedSymbol& m) {
  json brackets = json::array();
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      json value = json::array();
      for (std::size_t c = 0; c < m.size(); ++c)
        if (m.bracket(a, b)[c] != 0) value.push_back({{"index", c}, {"coefficient", to_string(m.bracket(a, b)[c])}});
      if (!value.empty()) brackets.push_back({{"a", a}, {"b", b}, {"value", value}});
    }
  return {{"weights", m.weights}, {"labels", m.labels}, {"dims", m.dims()}, {"brackets", brackets}};
}

Rational rational_entry(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("point entries must be integers or rational strings");
}

Distribution model_distribution(const Options& o, json& source) {
  Distribution d;
  if (o.model == "monge") {
    d = monge_model(o.n);
    source = {{"family", "monge"}, {"n", o.n}};
  } else if (o.model == "cartan-jet") {
    d = cartan_jet(o.k);
    source = {{"family", "cartan_jet"}, {"k", o.k}};
  } else if (o.model == "free") {
    d = flat_from_symbol(free_nilpotent_symbol(int(o.step)));
    source = {{"family", "flat_from_symbol"}, {"symbol", "free"}, {"step", o.step}};
  } else {
    throw InputError("unknown model '" + o.model + "' (expected monge, cartan-jet or free)");
  }
  for (std::size_t i = 0; i < o.prolong; ++i) d = prolong(d);
  source["prolongations"] = o.prolong;
  if (o.prolong > 0) source["chart"] = "affine fiber chart X1 + u X2";
  return d;
}

Problem load_problem(const Options& o) {
  Problem pr;
  json options = json::object();
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw InputError("cannot open input file '" + o.input + "'");
    json spec;
    try {
      spec = json::parse(in);
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed JSON input: ") + e.what());
    }
    if (!spec.contains("coordinates") || !spec.contains("fields"))
      throw InputError("input needs 'coordinates' and 'fields'");
    std::vector<std::string> coords;
    try {
      coords = spec.at("coordinates").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw InputError("'coordinates' must be a list of names");
    }
    Chart chart(coords);
    std::vector<VectorField> frame;
    const json& fields = spec.at("fields");
    if (!fields.is_array() || fields.size() != 2) throw InputError("input must have exactly 2 fields");
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (!fields[f].is_array() || fields[f].size() != coords.size())
        throw InputError("field " + std::to_string(f + 1) + " needs one component per coordinate");
      std::vector<RatFunc> comps;
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!fields[f][i].is_string()) throw InputError("field components must be expression strings");
        try {
          comps.push_back(parse_expression(fields[f][i].get<std::string>(), chart.ring()));
        } catch (const ParseError& e) {
          throw InputError("field " + std::to_string(f + 1) + ", component " + coords[i] + ": " + e.what() +
                           "\n  " + fields[f][i].get<std::string>() + "\n  " + std::string(e.position(), ' ') + "^");
        } catch (const UnknownVariable& e) {
          throw InputError("field " + std::to_string(f + 1) + ", component " + coords[i] + ": " + e.what());
        }
      }
      frame.emplace_back(chart, std::move(comps));
    }
    pr.d = Distribution(chart, frame);
    pr.q = chart.origin();
    if (spec.contains("point")) {
      const json& p = spec.at("point");
      if (!p.is_array() || p.size() != coords.size()) throw InputError("'point' needs one entry per coordinate");
      pr.q.clear();
      try {
        for (const auto& v : p) pr.q.push_back(rational_entry(v));
      } catch (const ParseError& e) {
        throw InputError(std::string("point: ") + e.what());
      }
    }
    if (spec.contains("options")) options = spec.at("options");
    pr.source = {{"coordinates", coords}, {"fields", spec.at("fields")}};
  } else if (!o.model.empty()) {
    pr.d = model_distribution(o, pr.source);
    // The affine prolongation chart is singular along u = 0, so prolonged
    // models are analyzed at the all-ones point.
    pr.q = o.prolong > 0 ? Point(pr.d.dim(), Rational(1)) : pr.d.chart().origin();
  } else {
    throw InputError("give --model or --input");
  }
  auto option = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    if (!options.contains(key)) return fallback;
    try {
      return options.at(key).get<T>();
    } catch (const json::exception&) {
      throw InputError(std::string("option '") + key + "' has the wrong type");
    }
  };
  pr.samples = o.samples.value_or(option("samples", std::size_t(5)));
  pr.seed = o.seed.value_or(option("seed", std::uint64_t(1)));
  pr.depth_cap = o.depth_cap.value_or(option("depth_cap", std::size_t(0)));
  if (o.degree) pr.degree = o.degree;
  else if (options.contains("degree")) pr.degree = option("degree", std::size_t(0));
  pr.d.check_point(pr.q);
  return pr;
}

json provenance(const Problem& pr) {
  return {{"tool_version", kToolVersion},
          {"seed", pr.seed},
          {"samples", pr.samples},
          {"point", to_json(pr.q)},
          {"convention", kConeConvention},
          {"genericity", "class values are maxima over seeded random fiber samples (Zariski-generic, not certified)"}};
}

json class_json(const ClassReport& r, std::size_t n) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"q", to_json(s.sample.q)},
                       {"p", to_json(s.sample.p)},
                       {"nu", s.nu},
                       {"trace", s.trace},
                       {"generic", s.generic}});
  const CorankClaim claim = corank_claim(n, r.m);
  return {{"samples", samples},
          {"m", r.m},
          {"maximal", r.maximal},
          {"seed", r.seed},
          {"convention", r.convention},
          {"corank_bound", claim.bound},
          {"corank_one", claim.corank_one}};
}

json symmetry_json(const Distribution& d, std::size_t degree, bool with_basis) {
  const SymmetryBasis b = symmetry_basis(d, degree);
  json out = {{"degree", b.degree}, {"dim", b.dim}, {"previous_dim", b.previous_dim}, {"stabilized", b.stabilized}};
  if (with_basis) {
    json basis = json::array();
    for (const auto& y : b.basis) {
      json comps = json::array();
      for (const auto& c : y.components()) comps.push_back(to_string(c));
      basis.push_back(comps);
    }
    out["basis"] = basis;
    out["bracket_closed"] = bracket_close_check(b);
  }
  return out;
}

json cmd_analyze(const Problem& pr) {
  const Distribution& d = pr.d;
  const std::size_t n = d.dim();
  json r = {{"schema", kSchema}, {"command", "analyze"}, {"input", pr.source}};
  r["dimension"] = n;
  r["rank"] = d.rank();
  const FlagReport weak = weak_flag(d, pr.q, n + 1);
  r["growth"] = weak.dims;
  r["bracket_generating"] = !weak.dims.empty() && weak.dims.back() == n;
  r["strong_growth"] = strong_flag(d, pr.q, n + 1).dims;
  const std::size_t cube = cube_dim(d, pr.q);
  r["cube"] = cube;
  r["goursat"] = is_goursat(d, pr.q);
  const EquiregularVerdict eq = equiregular_check(d, pr.q, 3, pr.seed);
  json eq_points = json::array();
  for (const auto& p : eq.points) eq_points.push_back(to_json(p));
  r["equiregular"] = {{"equiregular", eq.equiregular}, {"points", eq_points}, {"growth", eq.growth}};
  r["tanaka_symbol"] = nullptr;
  if (eq.equiregular && r["bracket_generating"].get<bool>())
    r["tanaka_symbol"] = symbol_json(tanaka_symbol(d, pr.q, 3, pr.seed));

  r["class"] = nullptr;
  r["deprolongation"] = nullptr;
  r["corank_bound"] = nullptr;
  if (d.rank() == 2 && cube == 5) {
    r["class"] = class_json(class_at_point(d, pr.q, pr.samples, pr.seed, pr.depth_cap), n);
    r["corank_bound"] = r["class"]["corank_bound"];
  } else if (d.rank() == 2 && cube == 4) {
    const Deprolongation dp = deprolong(d, pr.q);
    const DeprolongationDegree deg = deprolongation_degree(d, pr.q, n);
    json dep = {{"rectified", dp.rectified},
                {"note", dp.note},
                {"growth", dp.growth},
                {"cube", dp.cube},
                {"degree", deg.degree},
                {"terminal", to_string(deg.terminal)},
                {"growth_chain", deg.growth},
                {"model", nullptr}};
    if (dp.model)
      dep["model"] = {{"coordinates", dp.model->chart().coords()},
                      {"fields", frame_json(*dp.model)},
                      {"point", to_json(dp.point)}};
    r["deprolongation"] = dep;
  }
  r["symmetry"] = nullptr;
  if (pr.degree) r["symmetry"] = symmetry_json(d, *pr.degree, false);
  r["provenance"] = provenance(pr);
  return r;
}

json cmd_trace(const Problem& pr, const Options& o) {
  const Distribution& d = pr.d;
  const std::size_t cube = cube_dim(d, pr.q);
  if (d.rank() != 2 || cube != 5)
    throw PreconditionError("trace needs dim D^3 = 5 at the base point; found " + std::to_string(cube));
  ConeFlag flag(d);
  const std::size_t stride = o.stride > 0 ? o.stride : std::max<std::size_t>(1, o.steps / 10);
  json runs = json::array();
  for (const auto& s : fiber_samples(d, pr.q, o.trajectories, pr.seed)) {
    const Trajectory t = integrate_char(flag, s, o.T, o.steps);
    const NuReport nu = nu_along(flag, t, s, stride);
    json residuals = json::array();
    for (const auto& r : t.residuals) residuals.push_back({r[0], r[1], r[2]});
    runs.push_back({{"start", {{"q", to_json(s.q)}, {"p", to_json(s.p)}}},
                    {"times", t.times},
                    {"states", t.states},
                    {"residuals", residuals},
                    {"max_residual", t.max_residual},
                    {"status", to_string(t.status)},
                    {"nu", {{"indices", nu.indices},
                            {"values", nu.nu},
                            {"marginal", nu.marginal},
                            {"any_marginal", nu.any_marginal},
                            {"exact_nu0", nu.exact_nu0}}},
                    {"corank_bound", nu.corank_bound},
                    {"corank_one", nu.corank_one}});
  }
  json r = {{"schema", kSchema}, {"command", "trace"}, {"input", pr.source}};
  r["dimension"] = d.dim();
  r["T"] = o.T;
  r["steps"] = o.steps;
  r["stride"] = stride;
  r["rank_threshold"] = 1e-8;
  r["trajectories"] = runs;
  r["provenance"] = provenance(pr);
  return r;
}

json cmd_symmetries(const Problem& pr, const Options& o) {
  json r = {{"schema", kSchema}, {"command", "symmetries"}, {"input", pr.source}};
  r["dimension"] = pr.d.dim();
  json dims = json::array();
  json result;
  if (pr.degree) {
    result = symmetry_json(pr.d, *pr.degree, true);
    dims.push_back(result["dim"]);
  } else {
    // Raise the degree until two consecutive bounds give the same dimension.
    for (std::size_t deg = 0; deg <= o.max_degree; ++deg) {
      const SymmetryBasis b = symmetry_basis(pr.d, deg);
      dims.push_back(b.dim);
      if (b.stabilized || deg == o.max_degree) {
        result = symmetry_json(pr.d, deg, true);
        break;
      }
    }
  }
  r["symmetry"] = result;
  r["dims_by_degree"] = dims;
  r["provenance"] = provenance(pr);
  return r;
}

std::string summary(const json& r) {
  std::ostringstream s;
  s << r["command"].get<std::string>() << ": dimension " << r["dimension"] << "\n";
  if (r["command"] == "analyze") {
    s << "  growth " << r["growth"].dump() << ", cube " << r["cube"] << ", goursat " << r["goursat"] << "\n";
    if (!r["class"].is_null())
      s << "  class m = " << r["class"]["m"] << ", maximal " << r["class"]["maximal"] << ", corank bound "
        << r["corank_bound"] << "\n";
    if (!r["deprolongation"].is_null())
      s << "  deprolongation degree " << r["deprolongation"]["degree"] << ", terminal "
        << r["deprolongation"]["terminal"].get<std::string>() << "\n";
  } else if (r["command"] == "trace") {
    for (const auto& t : r["trajectories"])
      s << "  nu " << t["nu"]["values"].dump() << ", corank bound " << t["corank_bound"] << ", status "
        << t["status"].get<std::string>() << "\n";
  } else {
    s << "  dim " << r["symmetry"]["dim"] << " at degree " << r["symmetry"]["degree"] << ", stabilized "
      << r["symmetry"]["stabilized"] << "\n";
  }
  return s.str();
}

void emit(const json& r, const Options& o) {
  const std::string text = r.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write '" + o.out + "'");
  f << text;
  std::cout << summary(r);
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "Model family: monge, cartan-jet, free");
  cmd->add_option("--n", o.n, "Dimension of the Monge model");
  cmd->add_option("--k", o.k, "Jet order of the Cartan model");
  cmd->add_option("--step", o.step, "Step of the free nilpotent symbol");
  cmd->add_option("--prolong", o.prolong, "Number of Cartan prolongations applied to the model");
  cmd->add_option("--input", o.input, "JSON input file");
  cmd->add_option("--samples", o.samples, "Fiber samples per base point");
  cmd->add_option("--seed", o.seed, "Seed for every generic choice");
  cmd->add_option("--depth-cap", o.depth_cap, "Cone flag round cap (0 = dimension)");
  cmd->add_option("--out", o.out, "Write the JSON report here and print a summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of rank-2 distributions"};
  app.require_subcommand(1);
  Options o;
  CLI::App* analyze = app.add_subcommand("analyze", "Growth, cube, symbol, class or deprolongation report");
  add_input_options(analyze, o);
  analyze->add_option("--degree", o.degree, "Also solve for polynomial symmetries of this degree");
  CLI::App* trace = app.add_subcommand("trace", "Integrate abnormal extremals and track the class");
  add_input_options(trace, o);
  trace->add_option("--T", o.T, "Integration time");
  trace->add_option("--steps", o.steps, "RK4 steps");
  trace->add_option("--trajectories", o.trajectories, "Number of seeded starting covectors");
  trace->add_option("--stride", o.stride, "Class evaluated every stride-th state (0 = steps/10)");
  CLI::App* sym = app.add_subcommand("symmetries", "Polynomial infinitesimal symmetries");
  add_input_options(sym, o);
  sym->add_option("--degree", o.degree, "Degree bound (default: raise until stabilized)");
  sym->add_option("--max-degree", o.max_degree, "Largest degree tried when stabilizing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const Problem pr = load_problem(o);
    json report;
    if (*analyze) report = cmd_analyze(pr);
    else if (*trace) report = cmd_trace(pr, o);
    else report = cmd_symmetries(pr, o);
    emit(report, o);
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const PoleError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
