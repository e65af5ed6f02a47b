#include "cli/cli.hpp"

#include "topvol/bounds.hpp"
#include "topvol/census.hpp"
#include "topvol/cfrac.hpp"
#include "topvol/dilog.hpp"
#include "topvol/error.hpp"
#include "topvol/gluing.hpp"
#include "topvol/lens.hpp"
#include "topvol/voldiff.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef TOPVOL_DEFAULT_CENSUS_DIR
#define TOPVOL_DEFAULT_CENSUS_DIR "data/census"
#endif
#ifndef TOPVOL_INSTALLED_CENSUS_DIR
#define TOPVOL_INSTALLED_CENSUS_DIR TOPVOL_DEFAULT_CENSUS_DIR
#endif

namespace topvol::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kAsymptoticWarning = "asymptotic regime not guaranteed";

struct Output {
  Json result = Json::object();
  std::vector<std::string> warnings;
};

struct Context {
  int digits = Precision::kDefaultDigits;
  bool json = false;
  std::string data_dir;

  Precision precision() const { return Precision(digits); }
  std::string num(const Real& x) const { return x.significant(digits); }
  std::string num(const Complex& z) const { return z.significant(digits); }

  std::filesystem::path census_dir() const {
    if (!data_dir.empty()) return data_dir;
    if (const char* env = std::getenv("TOPVOL_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return default_census_dir();
  }
};

std::string rational(const mpq_class& q) { return q.get_str(); }

Json estimate_json(const DeltaVolEstimate& e, const Context& ctx) {
  return Json{{"c2", rational(e.c2)},
              {"c4", rational(e.c4)},
              {"quadratic_form", e.quadratic_form.get_str()},
              {"delta_vol", ctx.num(evaluate(e, ctx.precision()))},
              {"filled_volume", ctx.num(filled_volume_estimate(e, ctx.precision()))}};
}

Json realisations_json(const std::vector<Realisation>& rs) {
  Json out = Json::array();
  for (const Realisation& r : rs) out.push_back(r.to_string());
  return out;
}

Json entry_json(const CensusEntry& e) {
  return Json{{"manifold", e.manifold},
              {"volume", e.volume},
              {"family", std::string(to_string(e.family))},
              {"realisations", realisations_json(e.realisations)}};
}

std::optional<Json> homology_json(const std::optional<Homology>& h) {
  if (!h) return std::nullopt;
  return Json(h->text);
}

Complex parse_seed(const std::string& text, const Precision& precision) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("seed '" + text + "' must be written RE,IM");
  return Complex::parse(text.substr(0, comma), text.substr(comma + 1), precision);
}

Json solution_json(const ShapeSolution& s, const std::string& label, const Context& ctx) {
  Json shapes = Json::array();
  for (const TetShape& t : s.shapes) shapes.push_back(ctx.num(t.value()));
  return Json{{"label", label},
              {"shapes", shapes},
              {"residual", s.residual.significant(6)},
              {"iterations", s.iterations},
              {"volume", ctx.num(s.volume)}};
}

// Plain-text rendering: one "key: value" line per scalar, space-joined
// scalar arrays, one line per object in an array and dotted keys for nested
// objects.
std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

void render_text(const Json& value, const std::string& prefix, std::ostream& out) {
  for (const auto& [key, v] : value.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) {
      render_text(v, name, out);
    } else if (v.is_array()) {
      const bool objects = !v.empty() && v.front().is_object();
      if (!objects) {
        std::string line;
        for (const Json& item : v) line += (line.empty() ? "" : " ") + scalar_text(item);
        out << name << ":" << (line.empty() ? "" : " " + line) << "\n";
        continue;
      }
      for (const Json& item : v) {
        std::string line;
        for (const auto& [k, field] : item.items()) {
          std::string text;
          if (field.is_array()) {
            for (const Json& x : field) text += (text.empty() ? "" : ",") + scalar_text(x);
          } else if (field.is_object()) {
            text = field.dump();
          } else {
            text = scalar_text(field);
          }
          line += (line.empty() ? "" : " ") + k + "=" + text;
        }
        out << name << ": " << line << "\n";
      }
    } else {
      out << name << ": " << scalar_text(v) << "\n";
    }
  }
}

std::string join(const std::vector<std::string>& args) {
  std::string out;
  for (const std::string& a : args) out += (out.empty() ? "" : " ") + a;
  return out;
}

}  // namespace

std::filesystem::path default_census_dir() {
  // The build tree's copy wins; an installed binary falls back to the shared data directory.
  const std::filesystem::path build_tree = TOPVOL_DEFAULT_CENSUS_DIR;
  std::error_code ec;
  if (std::filesystem::exists(build_tree / "SHA256SUMS", ec)) return build_tree;
  return TOPVOL_INSTALLED_CENSUS_DIR;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  CLI::App app{"Topological volume toolkit: hyperbolic volumes, Dehn filling estimates, bounds and the census",
               "topvol"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", ctx.json, "Emit a JSON record instead of plain text");
  app.add_option("--precision", ctx.digits, "Working precision in decimal digits")
      ->check(CLI::Range(Precision::kMinDigits, Precision::kMaxDigits))
      ->capture_default_str();
  app.add_option("--data-dir", ctx.data_dir, "Census directory (overrides TOPVOL_DATA_DIR)");

  std::function<Output()> action;
  const auto bind = [&](CLI::App* sub, std::function<Output()> fn) {
    sub->callback([&action, fn] { action = fn; });
  };

  // dilog
  std::string re, im;
  {
    auto* sub = app.add_subcommand("dilog", "Bloch-Wigner dilogarithm D(re + i im)");
    sub->add_option("re", re, "Real part")->required();
    sub->add_option("im", im, "Imaginary part")->required();
    bind(sub, [&] {
      Output o;
      const Complex z = Complex::parse(re, im, ctx.precision());
      o.result["z"] = ctx.num(z);
      o.result["D"] = ctx.num(bloch_wigner(z));
      return o;
    });
  }

  // shapes
  std::string file_a, file_b;
  std::vector<std::string> seeds;
  {
    auto* shapes = app.add_subcommand("shapes", "Gluing equations and shape solutions");
    shapes->require_subcommand(1);
    auto* solve = shapes->add_subcommand("solve", "Solve a rect gluing system for its geometric shapes");
    solve->add_option("file", file_a, "Gluing equations file")->required();
    solve->add_option("--seed", seeds, "Starting shape RE,IM (one per tetrahedron)");
    bind(solve, [&] {
      Output o;
      const GluingSystem sys = load_rect_file(file_a);
      std::optional<std::vector<Complex>> start;
      if (!seeds.empty()) {
        start.emplace();
        for (const std::string& s : seeds) start->push_back(parse_seed(s, ctx.precision()));
      }
      SolverOptions options;
      options.precision = ctx.precision();
      o.result = solution_json(solve_geometric(sys, start, options), sys.label, ctx);
      return o;
    });

    auto* verify = shapes->add_subcommand("verify-equal", "Certify that two triangulations have equal volume");
    verify->add_option("file_a", file_a, "First gluing equations file")->required();
    verify->add_option("file_b", file_b, "Second gluing equations file")->required();
    bind(verify, [&] {
      Output o;
      SolverOptions options;
      options.precision = ctx.precision();
      const GluingSystem a = load_rect_file(file_a);
      const GluingSystem b = load_rect_file(file_b);
      const ShapeSolution sa = solve_geometric(a, std::nullopt, options);
      const ShapeSolution sb = solve_geometric(b, std::nullopt, options);
      const CongruenceReport r =
          compare_triangulations(sa, sb, pow10(-12, ctx.precision()), pow10(-9, ctx.precision()));
      o.result["a"] = solution_json(sa, a.label, ctx);
      o.result["b"] = solution_json(sb, b.label, ctx);
      o.result["volume_difference"] = r.volume_difference.significant(6);
      o.result["volumes_equal"] = r.volumes_equal;
      Json matches = Json::array();
      for (const ShapeMatch& m : r.matches) {
        matches.push_back(Json{{"shape", "w" + std::to_string(m.index + 1)},
                               {"equals", m.source.to_string("z")},
                               {"difference", m.difference.significant(3)}});
      }
      o.result["matches"] = matches;
      o.result["congruent"] = r.congruent;
      return o;
    });
  }

  // lens
  std::int64_t p = 0, q = 0;
  int window = 3;
  {
    auto* lens = app.add_subcommand("lens", "Lens space slopes and the W/P minimiser");
    lens->require_subcommand(1);
    auto* slopes = lens->add_subcommand("slopes", "Slopes on an unknot that fill to L(p,q)");
    slopes->add_option("p", p)->required();
    slopes->add_option("q", q)->required();
    slopes->add_option("--window", window, "Bound on |n| in the move q -> q + n p")->capture_default_str();
    bind(slopes, [&] {
      Output o;
      const LensClass l(p, q);
      o.result["lens"] = l.to_string();
      Json list = Json::array();
      for (const Slope& s : lens_equivalent_slopes(l, window)) list.push_back(s.to_string());
      o.result["slopes"] = list;
      return o;
    });

    auto* minimiser = lens->add_subcommand("minimiser", "Two-term minimiser search over W and P fillings");
    minimiser->add_option("p", p)->required();
    minimiser->add_option("q", q)->required();
    minimiser->add_option("--window", window, "Bound on |n| in the move q -> q + n p")->capture_default_str();
    bind(minimiser, [&] {
      Output o;
      const LensClass l(p, q);
      const MinimiserVerdict v = lens_minimiser(l, window);
      o.result["lens"] = l.to_string();
      o.result["parent"] = std::string(to_string(v.parent));
      o.result["slope"] = v.slope.to_string();
      o.result["census_filling"] =
          std::string(census_name(v.parent)) + census_slope(v.parent, v.slope).to_string() + "(0,0)";
      o.result["estimate"] = estimate_json(v.estimate, ctx);
      Json competitors = Json::array();
      for (const Competitor& c : v.competitors) {
        competitors.push_back(Json{{"parent", std::string(to_string(c.parent))},
                                   {"slope", c.slope.to_string()},
                                   {"census", std::string(census_name(c.parent)) + c.census_slope.to_string()},
                                   {"c2", rational(c.estimate.c2)},
                                   {"c4", rational(c.estimate.c4)}});
      }
      o.result["competitors"] = competitors;
      if (!v.asymptotic) o.warnings.emplace_back(kAsymptoticWarning);
      return o;
    });

    auto* decide = lens->add_subcommand("decide", "Decide whether W or P loses more volume at slope (p,q)");
    decide->add_option("p", p)->required();
    decide->add_option("q", q)->required();
    bind(decide, [&] {
      Output o;
      const Slope s = Slope::make(p, q);
      const Decision d = decide_w_vs_p(s);
      o.result["slope"] = s.to_string();
      o.result["parent"] = std::string(to_string(d.parent));
      o.result["ordering"] = std::string(to_string(d.certificate.ordering));
      o.result["certificate_bits"] = d.certificate.bits;
      o.result["W"] = estimate_json(d.w, ctx);
      o.result["P"] = estimate_json(d.p, ctx);
      if (!d.asymptotic) o.warnings.emplace_back(kAsymptoticWarning);
      return o;
    });
  }

  // frame
  std::string frame_target;
  {
    auto* frame = app.add_subcommand("frame", "Convert a topological slope to the census framing of W or P");
    frame->add_option("parent", frame_target, "w or p")->required()->check(CLI::IsMember({"w", "p"}));
    frame->add_option("p", p)->required();
    frame->add_option("q", q)->required();
    bind(frame, [&] {
      Output o;
      const Slope s = Slope::make(p, q);
      const Parent parent = frame_target == "w" ? Parent::W : Parent::P;
      o.result["slope"] = s.to_string();
      o.result["census"] = std::string(census_name(parent)) + census_slope(parent, s).to_string();
      o.result["image"] = census_slope(parent, s).to_string();
      return o;
    });
  }

  // cfrac
  std::string which;
  std::size_t terms = 9;
  {
    auto* cfrac = app.add_subcommand("cfrac", "Continued fraction of the tie ratios (16 +- sqrt(130))/42");
    cfrac->add_option("x", which, "x1 or x2")->required()->check(CLI::IsMember({"x1", "x2"}));
    cfrac->add_option("--terms", terms, "Number of partial quotients")->capture_default_str();
    bind(cfrac, [&] {
      Output o;
      const QuadraticIrrational x =
          which == "x1" ? QuadraticIrrational::tie_ratio_plus() : QuadraticIrrational::tie_ratio_minus();
      Json quotients = Json::array();
      for (const mpz_class& a : cf_expand(x, terms)) quotients.push_back(a.get_str());
      Json conv = Json::array();
      for (const Convergent& c : convergents(x, terms)) conv.push_back(c.p.get_str() + "/" + c.q.get_str());
      o.result["x"] = x.to_string();
      o.result["terms"] = quotients;
      o.result["convergents"] = conv;
      return o;
    });
  }

  // bounds
  long arg1 = 0, arg2 = 0;
  std::string volume_text;
  {
    auto* bounds = app.add_subcommand("bounds", "Upper and lower bounds on topological volume");
    bounds->require_subcommand(1);
    const auto bound_json = [&](const BoundResult& b) {
      return Json{{"kind", to_string(b.kind)}, {"value", ctx.num(b.value)}, {"source", b.source}};
    };

    auto* surgery = bounds->add_subcommand("surgery", "Upper bound from surgery on a c-crossing n-component link");
    surgery->add_option("c", arg1)->required();
    surgery->add_option("n", arg2)->required();
    bind(surgery, [&, bound_json] {
      Output o;
      o.result = bound_json(surgery_upper_bound(arg1, arg2, ctx.precision()));
      return o;
    });

    auto* sfs = bounds->add_subcommand("sfs", "Upper bounds for a Seifert fibred space of genus g with N fibres");
    sfs->add_option("g", arg1)->required();
    sfs->add_option("N", arg2)->required();
    bind(sfs, [&, bound_json] {
      Output o;
      const SfsBounds b = sfs_upper_bound(arg1, arg2, ctx.precision());
      o.result["octahedral"] = bound_json(b.octahedral);
      o.result["integer"] = b.integer_text;
      return o;
    });

    auto* homology = bounds->add_subcommand("homology", "Lower bound from the rank of H1(M; Z_p)");
    homology->add_option("rank", arg1)->required();
    homology->add_option("prime", arg2)->required();
    bind(homology, [&, bound_json] {
      Output o;
      o.result = bound_json(homology_lower_bound(arg1, arg2, ctx.precision()));
      return o;
    });

    auto* cover = bounds->add_subcommand("cover", "Upper bound d * volt(base) for a d-fold cover");
    cover->add_option("volt", volume_text, "Topological volume of the base")->required();
    cover->add_option("d", arg2, "Degree of the cover")->required();
    bind(cover, [&, bound_json] {
      Output o;
      o.result = bound_json(cover_upper_bound(Real::parse(volume_text, ctx.precision()), arg2));
      return o;
    });
  }

  // census
  std::string name;
  bool audit_failed = false;
  {
    auto* census = app.add_subcommand("census", "Queries over the census of non-hyperbolic manifolds");
    census->require_subcommand(1);

    auto* lookup = census->add_subcommand("lookup", "Volume and minimisers of a manifold");
    lookup->add_option("name", name)->required();
    bind(lookup, [&] {
      Output o;
      o.result = entry_json(Census::load(ctx.census_dir()).lookup(name));
      return o;
    });

    auto* at_volume = census->add_subcommand("at-volume", "All manifolds of a given topological volume");
    at_volume->add_option("volume", name)->required();
    bind(at_volume, [&] {
      Output o;
      const auto entries = Census::load(ctx.census_dir()).manifolds_at_volume(name);
      o.result["count"] = entries.size();
      Json list = Json::array();
      for (const CensusEntry& e : entries) list.push_back(entry_json(e));
      o.result["manifolds"] = list;
      return o;
    });

    auto* parenthood = census->add_subcommand("parenthood", "Fillings of m129 and m125 giving a cusped manifold");
    parenthood->add_option("name", name)->required();
    bind(parenthood, [&] {
      Output o;
      const ParenthoodRow row = Census::load(ctx.census_dir()).parenthood(name);
      o.result["child"] = row.child;
      o.result["m129"] = row.via_m129 ? Json("m129" + row.via_m129->to_string()) : Json("none");
      Json m125 = Json::array();
      if (row.via_m125) {
        m125.push_back("m125" + row.via_m125->first.to_string());
        m125.push_back("m125" + row.via_m125->second.to_string());
      } else {
        m125.push_back("none");
      }
      o.result["m125"] = m125;
      return o;
    });

    auto* second = census->add_subcommand("second", "Non-minimising knots of small volume in a manifold");
    second->add_option("name", name)->required();
    bind(second, [&] {
      Output o;
      const Census db = Census::load(ctx.census_dir());
      const auto knots = db.second_minimisers(name);
      Json list = Json::array();
      for (const KnotRecord& k : knots) {
        Json item{{"knot", k.knot}, {"realisation", k.realisation.to_string()}};
        if (const auto v = db.cusped_volume(k.knot)) item["volume"] = *v;
        if (auto h = homology_json(k.knot_homology)) item["homology"] = *h;
        if (k.minimiser) item["minimiser"] = *k.minimiser;
        if (auto h = homology_json(k.minimiser_homology)) item["minimiser_homology"] = *h;
        if (auto h = homology_json(k.ambient_homology)) item["ambient_homology"] = *h;
        list.push_back(item);
      }
      o.result["ambient"] = name;
      o.result["knots"] = list;
      return o;
    });

    auto* audit = census->add_subcommand("audit", "Cross-table consistency checks");
    bind(audit, [&] {
      Output o;
      const AuditReport report = Census::load(ctx.census_dir()).audit();
      o.result["clean"] = report.clean();
      Json findings = Json::array();
      for (const AuditFinding& f : report.findings) {
        findings.push_back(Json{{"check", std::string(1, f.check)}, {"message", f.message}});
      }
      o.result["findings"] = findings;
      audit_failed = !report.clean();
      return o;
    });
  }

  const auto deepest = [&app]() {
    CLI::App* context = &app;
    while (true) {
      const auto chosen = context->get_subcommands();
      if (chosen.empty()) return context;
      context = chosen.front();
    }
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << deepest()->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << deepest()->help();
    return kExitUsage;
  }

  if (!action) {
    err << app.help();
    return kExitUsage;
  }

  try {
    const Output output = action();
    if (ctx.json) {
      Json record{{"command", join(args)}, {"precision", ctx.digits}, {"result", output.result},
                  {"warnings", output.warnings}};
      out << record.dump(2) << "\n";
    } else {
      render_text(output.result, "", out);
      for (const std::string& w : output.warnings) out << "warning: " << w << "\n";
    }
    return audit_failed ? kExitDomain : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace topvol::cli
