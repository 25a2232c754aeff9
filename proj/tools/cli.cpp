#include "cli.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/io.hpp"
#include "isoproj/rng.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace isoproj::cli {

namespace {

struct Options {
  std::string backend = "float";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out;
  std::string input;
  std::string subspace;
  std::string f = "norm2";
  std::string nu;
  std::string hyperplane;
  std::string embed_kind = "auto";
  int threads = 1;
  bool timing = false;
  bool isotropic = false;
  int face_dim = -1;
  // experiment
  std::string config;
  std::string kind = "b1-projection";
  int n = 4;
  std::vector<int> d{2};
  int m = 0;
  int trials = 10;
  bool symmetric = true;
  std::string summary;
};

// Input errors and precondition failures found before any computation
// starts map to exit code 1; everything thrown later maps to 2.
struct Phase {
  bool computing = false;
};

const char* schema_help =
    "inputs:\n"
    "  polytope   {\"vertices\": [[x1,..,xn], ...]} or {\"inequalities\": {\"A\": [[..]], \"b\": [..]}}\n"
    "             exact scalars may be written as \"p/q\" strings\n"
    "  --subspace coords:i,j,...  |  file:<path> ({\"basis\": [[..], ..]})  |  random:<d>\n"
    "  --f        norm2  |  const  |  {\"c\": c, \"b\": [..], \"A\": [[..]]}\n"
    "  --nu       [v1,..,vn]  |  axis:<i>\n"
    "  --hyperplane {\"normal\": [..], \"offset\": c}  |  axis:<i>[=c]\n";

Json inline_or_file(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return read_json_file(spec.substr(5));
  try {
    return Json::parse(spec);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("cannot parse \"" + spec + "\" as JSON");
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer \"" + item + "\" in list");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

template <class T>
Subspace<T> parse_subspace(const std::string& spec, int n, std::uint64_t seed) {
  if (spec.rfind("coords:", 0) == 0) {
    auto axes = parse_int_list(spec.substr(7));
    for (int a : axes)
      if (a < 0 || a >= n) throw InputError("coordinate axis out of range");
    return Subspace<T>::coordinate(n, axes);
  }
  if (spec.rfind("file:", 0) == 0) {
    auto s = subspace_from_json<T>(read_json_file(spec.substr(5)));
    if (s.ambient_dim() != n) throw InputError("subspace and polytope dimensions differ");
    return s;
  }
  if (spec.rfind("random:", 0) == 0) {
    auto d = parse_int_list(spec.substr(7));
    if (d.size() != 1 || d[0] < 1 || d[0] > n - 1) throw InputError("random:<d> needs 1 <= d <= n - 1");
    std::mt19937_64 rng(stream_seed(seed, 0));
    return random_subspace<T>(n, d[0], rng);
  }
  throw InputError("subspace spec must be coords:..., file:... or random:...");
}

template <class T>
QuadraticForm<T> parse_form(const std::string& spec, int n) {
  if (spec == "norm2") return QuadraticForm<T>::squared_norm(n);
  if (spec == "const") return QuadraticForm<T>::one(n);
  return quadratic_form_from_json<T>(inline_or_file(spec), n);
}

// axis:<i> or axis:<i>=<c>
std::pair<int, std::string> parse_axis(const std::string& spec, int n) {
  std::string rest = spec.substr(5);
  std::string value = "0";
  auto eq = rest.find('=');
  if (eq != std::string::npos) {
    value = rest.substr(eq + 1);
    rest = rest.substr(0, eq);
  }
  auto ax = parse_int_list(rest);
  if (ax.size() != 1 || ax[0] < 0 || ax[0] >= n) throw InputError("axis out of range");
  return {ax[0], value};
}

template <class T>
Vec<T> parse_direction(const std::string& spec, int n) {
  if (spec.empty()) throw InputError("--nu is required");
  Vec<T> v;
  if (spec.rfind("axis:", 0) == 0) {
    v = Vec<T>::Zero(n);
    v(parse_axis(spec, n).first) = T(1);
  } else {
    v = vector_from_json<T>(inline_or_file(spec));
  }
  if (v.size() != n) throw InputError("direction has the wrong length");
  return v;
}

template <class T>
AffineHyperplane<T> parse_hyperplane(const std::string& spec, int n) {
  if (spec.empty()) throw InputError("--hyperplane is required");
  AffineHyperplane<T> h;
  if (spec.rfind("axis:", 0) == 0) {
    auto [axis, value] = parse_axis(spec, n);
    h.normal = Vec<T>::Zero(n);
    h.normal(axis) = T(1);
    h.offset = scalar_from_json<T>(Json(value));
  } else {
    h = hyperplane_from_json<T>(inline_or_file(spec));
  }
  if (h.normal.size() != n) throw InputError("hyperplane normal has the wrong length");
  return h;
}

template <class T>
Polytope<T> load_polytope(const Options& o) {
  if (o.input.empty()) throw InputError("--input is required");
  return polytope_from_json<T>(read_json_file(o.input));
}

Json tiling_json(const TilingReport& r) {
  return Json{{"pairs_checked", r.pairs_checked}, {"overlapping_pairs", r.overlapping_pairs}, {"volume_sum", r.volume_sum},
              {"oracle_volume", r.oracle_volume}, {"residual", r.residual}, {"exact_match", r.exact_match},
              {"injective", r.injective}};
}

template <class T>
Json run_geometry(const std::string& cmd, const Options& o, Phase& phase) {
  const Polytope<T> p = load_polytope<T>(o);
  const int n = p.ambient_dim();

  if (cmd == "hull") {
    phase.computing = true;
    return polytope_to_json(p);
  }
  if (cmd == "faces") {
    if (o.face_dim < -1 || o.face_dim > p.dim()) throw InputError("--dim out of range");
    phase.computing = true;
    Json j;
    j["dim"] = p.dim();
    j["f_vector"] = p.lattice().f_vector();
    Json faces = Json::array();
    for (int k = 0; k < p.dim(); ++k) {
      if (o.face_dim >= 0 && k != o.face_dim) continue;
      for (const auto& f : p.lattice().faces[static_cast<std::size_t>(k)])
        faces.push_back({{"dim", k}, {"vertices", f.vertices.indices()}, {"facets", f.facets.indices()}});
    }
    j["faces"] = faces;
    j["euler"] = p.lattice().satisfies_euler();
    return j;
  }
  if (cmd == "volume") {
    phase.computing = true;
    return Json{{"dim", p.dim()}, {"volume", measure_to_json(volume(p))}};
  }
  if (cmd == "lk") {
    phase.computing = true;
    auto rep = inertia(p);
    Json j;
    j["L"] = rep.L;
    const Json full = inertia_to_json(rep);
    for (const auto& [key, value] : full.items())
      if (key != "L") j[key] = value;
    return j;
  }
  if (cmd == "embed") {
    std::string kind = o.embed_kind;
    if (kind != "auto" && kind != "b1" && kind != "simplex") throw InputError("--kind must be auto, b1 or simplex");
    phase.computing = true;
    if (kind == "auto") kind = is_origin_symmetric(p) ? "b1" : "simplex";
    Embedding<T> e = kind == "b1" ? embed_as_b1_projection(p) : embed_as_simplex_projection(p);
    const int big = e.subspace.ambient_dim();
    Polytope<T> model = kind == "b1" ? cross_polytope<T>(big) : standard_simplex<T>(big - 1);
    // d = dim of the model is a bijective projection with no shadow boundary.
    double lproj;
    if (e.subspace.dim() < model.dim()) {
      lproj = projection_inertia(shadow_faces(model, e.subspace, generic_direction(model, e.subspace, o.seed))).L;
    } else {
      lproj = inertia(projected_hull(model, e.subspace)).L;
    }
    const double lk = inertia(p).L;
    Json j;
    j["kind"] = kind;
    j["n"] = big;
    j["subspace"] = subspace_to_json(e.subspace);
    j["map"] = matrix_to_json<T>(e.map);
    j["offset"] = vector_to_json<T>(e.offset);
    j["L_K"] = lk;
    j["L_projection"] = lproj;
    j["relative_error"] = std::fabs(lproj - lk) / lk;
    return j;
  }
  if (cmd == "shadow" || cmd == "project-integrate") {
    if (o.subspace.empty()) throw InputError("--subspace is required");
    auto e = parse_subspace<T>(o.subspace, n, o.seed);
    QuadraticForm<T> f;
    if (cmd == "project-integrate") f = parse_form<T>(o.f, n);
    phase.computing = true;
    auto dec = shadow_faces(p, e, generic_direction(p, e, o.seed));
    if (cmd == "shadow") {
      Json j = shadow_to_json(dec);
      TilingOptions topts;
      topts.seed = o.seed;
      j["tiling"] = tiling_json(verify_tiling(dec, topts));
      return j;
    }
    auto integral = integrate_over_projection(dec, f);
    auto vol = dec.projected_volume();
    Json j;
    j["subspace"] = subspace_to_json(e);
    j["f"] = quadratic_form_to_json(f);
    j["integral"] = measure_to_json(integral);
    j["volume"] = measure_to_json(vol);
    j["mean"] = integral.value() / vol.value();
    j["L"] = projection_inertia(dec).L;
    j["shadow_faces"] = dec.faces.size();
    return j;
  }
  if (cmd == "steiner") {
    auto nu = parse_direction<T>(o.nu, n);
    phase.computing = true;
    Polytope<T> body = o.isotropic ? isotropic_copy(p) : p;
    auto res = steiner_symmetrize(body, nu);
    try {
      auto checks = steiner_inertia_checks(res, 8, o.seed);
      Json j = steiner_to_json(res, &checks);
      j["isotropic_input"] = true;
      return j;
    } catch (const GeometryError& ex) {
      if (ex.code() != ErrorCode::NotIsotropicInput) throw;
      Json j = steiner_to_json<T>(res, nullptr);
      j["isotropic_input"] = false;
      return j;
    }
  }
  if (cmd == "section") {
    auto h = parse_hyperplane<T>(o.hyperplane, n);
    phase.computing = true;
    auto s = hyperplane_section(p, h);
    Json j;
    j["hyperplane"] = hyperplane_to_json(h);
    j["section"] = polytope_to_json(s);
    j["volume"] = measure_to_json(volume(s));
    return j;
  }
  throw std::logic_error("unhandled subcommand " + cmd);
}

ExperimentConfig experiment_config(const Options& o, const CLI::App& sub) {
  ExperimentConfig cfg;
  if (!o.config.empty()) cfg = config_from_json(read_json_file(o.config));
  auto given = [&](const char* name) { return sub.count(name) > 0 || o.config.empty(); };
  if (given("--kind")) {
    auto k = parse_kind(o.kind);
    if (!k) throw InputError("unknown experiment kind \"" + o.kind + "\"");
    cfg.kind = *k;
  }
  if (given("--n")) cfg.n = o.n;
  if (given("--d")) cfg.d_values = o.d;
  if (given("--m")) cfg.m = o.m;
  if (given("--trials")) cfg.trials = o.trials;
  if (given("--symmetric")) cfg.symmetric = o.symmetric;
  if (given("--seed")) cfg.seed = o.seed;
  if (given("--backend")) cfg.backend = parse_backend(o.backend);
  if (given("--tol")) cfg.tolerance = o.tol;
  if (given("--threads")) cfg.threads = o.threads;
  if (given("--timing")) cfg.timing = o.timing;
  validate(cfg);
  return cfg;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) out << text;
  else write_text_file(o.out, text);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projections, sections and isotropy constants of polytopes"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--backend", o.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    s->add_option("--tol", o.tol, "float tolerance")->check(CLI::PositiveNumber);
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--out", o.out, "output file (default stdout)");
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    s->add_flag("--timing", o.timing, "record per-trial runtimes");
  };
  std::map<std::string, CLI::App*> subs;
  auto geometry = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    add_common(s);
    s->add_option("--input", o.input, "polytope JSON")->required();
    subs[name] = s;
    return s;
  };
  geometry("hull", "vertices, facets and f-vector");
  geometry("faces", "face lattice")->add_option("--dim", o.face_dim, "only faces of this dimension");
  geometry("volume", "volume in the affine hull");
  geometry("lk", "isotropy constant and inertia data");
  geometry("embed", "identify K with a projection of B_1^n or of the simplex")
      ->add_option("--kind", o.embed_kind, "auto, b1 or simplex");
  geometry("shadow", "shadow faces tiling a projection")->add_option("--subspace", o.subspace, "subspace spec")->required();
  auto* pi = geometry("project-integrate", "integrate a quadratic over a projection");
  pi->add_option("--subspace", o.subspace, "subspace spec")->required();
  pi->add_option("--f", o.f, "quadratic form spec");
  auto* st = geometry("steiner", "Steiner symmetrization");
  st->add_option("--nu", o.nu, "direction")->required();
  st->add_flag("--isotropic", o.isotropic, "move the input to isotropic position first");
  geometry("section", "hyperplane section")->add_option("--hyperplane", o.hyperplane, "hyperplane spec")->required();

  auto* ex = app.add_subcommand("experiment", "random projection experiment (CSV records)");
  add_common(ex);
  ex->add_option("--config", o.config, "experiment config JSON; flags override it");
  ex->add_option("--kind", o.kind, "b1-projection, simplex-projection or sphere-projection");
  ex->add_option("--n", o.n, "ambient dimension");
  ex->add_option("--d", o.d, "projection dimensions")->delimiter(',');
  ex->add_option("--m", o.m, "sphere points");
  ex->add_option("--trials", o.trials, "trials per d");
  ex->add_flag("--symmetric,!--no-symmetric", o.symmetric, "symmetric sphere polytopes (default on)");
  ex->add_option("--summary", o.summary, "summary JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << '\n' << schema_help;
    return Ok;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg, dummy;
    app.exit(e, dummy, msg);
    err << msg.str() << schema_help;
    return ValidationFailure;
  }

  Phase phase;
  try {
    if (ex->parsed()) {
      ExperimentConfig cfg = experiment_config(o, *ex);
      phase.computing = true;
      auto result = run_projection_experiment(cfg);
      const std::string csv = records_csv(result.records);
      const std::string summary = summary_json(result);
      if (!o.summary.empty()) write_text_file(o.summary, summary);
      if (o.out.empty()) {
        out << csv;
      } else {
        write_text_file(o.out, csv);
        if (o.summary.empty()) out << summary;
      }
      for (const auto& e : result.errors) err << "trial " << e.trial << ": " << e.message << '\n';
      return Ok;
    }
    std::string cmd;
    for (const auto& [name, s] : subs)
      if (s->parsed()) cmd = name;
    const Backend backend = parse_backend(o.backend);
    ToleranceScope scope(o.tol);
    Json j = backend == Backend::Exact ? run_geometry<Rational>(cmd, o, phase) : run_geometry<double>(cmd, o, phase);
    emit(o, j.dump(2) + "\n", out);
    return Ok;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n' << schema_help;
    return phase.computing ? ComputationFailure : ValidationFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n' << schema_help;
    return phase.computing ? ComputationFailure : ValidationFailure;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::PreconditionViolated:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::DimensionUnsupported:
      case ErrorCode::EmptyInput:
        return ValidationFailure;
      default:
        return phase.computing ? ComputationFailure : ValidationFailure;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ComputationFailure;
  }
}

}  // namespace isoproj::cli
