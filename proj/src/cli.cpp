#include "belyi/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "belyi/bounds.hpp"
#include "belyi/census.hpp"
#include "belyi/fixtures.hpp"
#include "belyi/system_io.hpp"

namespace belyi {

namespace {

using nlohmann::json;

bool is_scalar_array(const json& j) {
  if (!j.is_array()) return false;
  return std::all_of(j.begin(), j.end(), [](const json& e) {
    return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_primitive(); }));
  });
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(const json& j, int indent, std::ostringstream& os) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (v.is_primitive()) {
        os << pad << it.key() << ": " << scalar_text(v) << '\n';
      } else if (is_scalar_array(v)) {
        os << pad << it.key() << ": " << v.dump() << '\n';
      } else {
        os << pad << it.key() << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_primitive() || is_scalar_array(e)) {
        os << pad << "- " << (e.is_primitive() ? scalar_text(e) : e.dump()) << '\n';
      } else {
        os << pad << "-\n";
        render(e, indent + 2, os);
      }
    }
  } else {
    os << pad << scalar_text(j) << '\n';
  }
}

json input(const json& value, const std::string& provenance = "argument") {
  return {{"value", value}, {"provenance", provenance}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

RamificationType lambda_arg(const std::string& text, int degree) {
  return parse_ramification_type(text, degree > 0 ? std::optional<int>(degree) : std::nullopt);
}

unsigned workers_arg(int w) { return w > 0 ? static_cast<unsigned>(w) : default_worker_count(); }

// A command fills the report and returns the exit code.
struct Report {
  json inputs = json::object();
  json results = json::object();
  json events = json::array();
  std::string summary;
};

int cmd_partitions(int d, Report& r) {
  r.inputs["degree"] = input(d);
  auto parts = enumerate_partitions(d);
  json list = json::array();
  for (const auto& p : parts) list.push_back(p.parts);
  r.results = {{"operation", "enumerate_partitions"}, {"count", parts.size()}, {"partitions", list}};
  r.summary = std::to_string(parts.size()) + " partitions of " + std::to_string(d);
  return kExitOk;
}

int cmd_genus(const std::string& lambda_text, int degree, Report& r) {
  auto lambda = lambda_arg(lambda_text, degree);
  r.inputs["lambda"] = input(lambda.to_json());
  auto g = rh_genus(lambda);
  r.results = {{"operation", "rh_genus"},
               {"type", lambda.to_string()},
               {"sumOfRamificationLengths", lambda.r0() + lambda.r1() + lambda.r_inf()},
               {"genus", g ? json(*g) : json(nullptr)}};
  if (g) {
    r.results["lowerBoundFromGenus"] = {{"operation", "lower_bound_from_genus"}, {"value", lower_bound_from_genus(*g)}};
    r.summary = "genus " + std::to_string(*g);
  } else {
    r.summary = "no genus: 2g - 2 = d - r0 - r1 - rInf has no nonnegative integer solution";
  }
  return kExitOk;
}

int cmd_passports(int d, int g, const std::string& family, int param, unsigned workers, Report& r) {
  r.inputs["degree"] = input(d);
  r.inputs["genus"] = input(g);
  auto entries = passport_report(d, g, workers);
  json list = json::array();
  std::size_t total = 0;
  for (const auto& e : entries) {
    json j = e.to_json();
    j.erase("classes");
    json tags = json::object();
    for (const auto& c : e.classes) tags[c.monodromy.tag()] = tags.value(c.monodromy.tag(), 0) + 1;
    j["monodromyTags"] = tags;
    total += e.class_count();
    list.push_back(std::move(j));
  }
  r.results = {{"operation", "types_with_genus + passport_entry"},
               {"typeCount", entries.size()},
               {"classCount", total},
               {"passports", list},
               {"lowerBoundFromGenus", {{"operation", "lower_bound_from_genus"}, {"value", lower_bound_from_genus(g)}}}};
  if (!family.empty()) {
    r.inputs["family"] = input(family);
    r.inputs["familyParameter"] = input(param);
    r.results["familyUpperBound"] = {{"operation", "family_upper_bound"},
                                     {"value", family_upper_bound(parse_curve_family(family), param)}};
  }
  r.summary = std::to_string(entries.size()) + " ramification types of degree " + std::to_string(d) + " and genus " +
              std::to_string(g) + ", " + std::to_string(total) + " classes";
  return kExitOk;
}

int cmd_census(const std::string& lambda_text, int degree, unsigned workers, Report& r) {
  auto lambda = lambda_arg(lambda_text, degree);
  r.inputs["lambda"] = input(lambda.to_json());
  r.inputs["workers"] = input(workers, std::getenv("BELYI_WORKERS") ? "argument or BELYI_WORKERS" : "argument");
  auto entry = passport_entry(lambda, workers);
  json j = entry.to_json();
  Rational mass = 0;
  std::map<std::string, std::size_t> by_order;
  for (const auto& c : entry.classes) {
    mass += Rational(1) / Rational(c.automorphisms);
    ++by_order[c.monodromy.order.str()];
  }
  j["operation"] = "enumerate_classes + classify_monodromy + centralizer_order";
  j["massSumOneOverAut"] = mass.str();
  j["classesByMonodromyOrder"] = by_order;
  r.results = std::move(j);
  r.summary = std::to_string(entry.class_count()) + " classes for " + lambda.to_string() + " (" +
              std::to_string(entry.class_count() - entry.cyclic_count()) + " noncyclic, " +
              std::to_string(entry.cyclic_count()) + " cyclic)";
  return kExitOk;
}

int cmd_bounds(const std::string& branch, const std::vector<std::string>& minpolys, int deg_pi, int n_override,
               Report& r) {
  std::vector<AlgebraicPoint> pts;
  if (!branch.empty())
    for (const auto& s : split(branch, ',')) pts.push_back(parse_point(s));
  for (const auto& m : minpolys) {
    try {
      pts.push_back(AlgebraicPoint::algebraic(parse_integer_polynomial(m)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("--minpoly ") + m + ": " + e.what());
    }
  }
  if (pts.empty()) throw ParseError("bounds: give --branch and/or --minpoly");
  r.inputs["branch"] = input(branch);
  r.inputs["minpolys"] = input(minpolys);
  r.inputs["degPi"] = input(deg_pi);
  auto set = make_branch_set(pts, n_override > 0 ? std::optional<int>(n_override) : std::nullopt);
  json bs = set.to_json();
  bs["operation"] = "make_branch_set + height";
  if (set.counts_infinity)
    r.events.push_back("convention: the point at infinity counts as one orbit point in N and has height 1");
  auto kb = khadjavi_bound(set.orbit_size, set.height);
  auto ub = belyi_upper_bound(deg_pi, set);
  json kj = kb.to_json();
  kj["operation"] = "khadjavi_bound(N, H)";
  json uj = ub.to_json();
  uj["operation"] = "belyi_upper_bound = deg(pi) * khadjavi_bound(N, H)";
  r.results = {{"branchSet", bs}, {"khadjaviBound", kj}, {"belyiUpperBound", uj}};
  r.summary = "Belyi degree upper bound " + ub.to_string();
  return kExitOk;
}

int cmd_emit(const std::string& curve_name, int degree, const std::string& lambda_text, const std::string& which,
             const std::string& out_dir, Report& r) {
  auto fx = curve_fixture(curve_name);
  auto lambda = lambda_arg(lambda_text, degree);
  r.inputs["curve"] = input(curve_name, "fixture");
  r.inputs["lambda"] = input(lambda.to_json());
  r.inputs["case"] = input(which);
  auto g = rh_genus(lambda);
  if (!g || *g != fx.curve.genus) {
    r.results = {{"operation", "rh_genus"},
                 {"stage", "passports"},
                 {"rejected", true},
                 {"typeGenus", g ? json(*g) : json(nullptr)},
                 {"curveGenus", fx.curve.genus},
                 {"systemsEmitted", 0}};
    r.summary = "rejected at the passports stage: " + lambda.to_string() +
                (g ? " has genus " + std::to_string(*g) : std::string(" fails Riemann-Hurwitz")) +
                ", the curve has genus " + std::to_string(fx.curve.genus);
    return kExitOk;
  }
  int t = compute_t(lambda.degree, fx.curve.genus, 1);
  RRData rr;
  try {
    rr = fx.rr(t);
  } catch (const std::invalid_argument& e) {
    throw ResourceLimit(e.what());
  }
  t = compute_t(lambda.degree, fx.curve.genus, rr.d0_degree());
  auto cases = enumerate_cases(fx.curve, rr, lambda);
  std::vector<std::size_t> chosen;
  if (which == "general") {
    chosen = {0};
  } else if (which == "all") {
    for (std::size_t i = 0; i < cases.size(); ++i) chosen.push_back(i);
  } else {
    std::size_t idx = 0;
    try {
      idx = std::stoul(which);
    } catch (const std::exception&) {
      throw ParseError("--case must be general, all or an index");
    }
    if (idx >= cases.size()) throw ParseError("--case index out of range (" + std::to_string(cases.size()) + " cases)");
    chosen = {idx};
  }
  std::filesystem::create_directories(out_dir);
  json systems = json::array();
  std::size_t flagged = 0;
  for (std::size_t idx : chosen) {
    auto sys = build_system(fx.curve, rr, lambda, cases[idx]);
    char name[32];
    std::snprintf(name, sizeof name, "case_%04zu.sys", idx);
    std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << export_system(sys);
    json j = {{"index", idx},
              {"case", cases[idx].to_json(lambda)},
              {"description", cases[idx].describe(lambda)},
              {"file", path.string()},
              {"counts", sys.counts.to_json()},
              {"imposedVanishingDegreeOnA", sys.imposed_vanishing_on_a}};
    if (sys.chart_request) {
      j["chartRequest"] = *sys.chart_request;
      ++flagged;
    }
    systems.push_back(std::move(j));
  }
  r.results = {{"operation", "enumerate_cases + build_system"},
               {"t", {{"operation", "compute_t"}, {"value", t}}},
               {"d0", rr.d0_degree()},
               {"basisSize", rr.n()},
               {"caseCount", cases.size()},
               {"systemsEmitted", systems.size()},
               {"chartFlagged", flagged},
               {"systems", systems}};
  if (t * rr.d0_degree() > 2 * fx.curve.genus - 2)
    r.results["expectedRRDimension"] = {{"operation", "expected_rr_dimension"},
                                        {"value", expected_rr_dimension(t, rr.d0_degree(), fx.curve.genus)}};
  r.summary = std::to_string(systems.size()) + " of " + std::to_string(cases.size()) + " systems written to " + out_dir;
  if (chosen.size() == 1) {
    const json& c = systems[0]["counts"];
    r.summary += " (" + c["variables"]["withoutGadget"].dump() + " variables, " +
                 c["equations"]["withoutGadget"].dump() + " equations before the a_k gadget)";
  }
  return kExitOk;
}

int cmd_solve(const std::string& in_path, const std::string& order_name, const GroebnerLimits& limits, bool show_basis,
              Report& r) {
  std::ifstream f(in_path, std::ios::binary);
  if (!f) throw ParseError("cannot read " + in_path);
  std::stringstream buf;
  buf << f.rdbuf();
  auto sys = parse_system(buf.str());
  auto order = parse_monomial_order(order_name);
  r.inputs["in"] = input(in_path);
  r.inputs["order"] = input(to_string(order));
  r.inputs["maxSteps"] = input(limits.max_steps);
  r.inputs["maxDegree"] = input(limits.max_degree);
  r.inputs["maxBasisSize"] = input(limits.max_basis_size);
  auto res = solve_system(sys, order, limits);
  r.results = {{"operation", "is_empty_variety"},
               {"verdict", to_string(res.verdict)},
               {"reason", res.reason},
               {"variables", sys.variables.size()},
               {"equations", sys.equations.size()},
               {"stats", res.groebner.stats.to_json()}};
  if (res.groebner.complete() && !sys.chart_request) {
    r.results["certificate"] = {{"operation", "is_groebner_basis (all S-polynomials reduce to 0)"},
                                {"value", is_groebner_basis(res.groebner.basis, order)}};
    if (show_basis) {
      json b = json::array();
      for (const auto& p : res.groebner.basis) b.push_back(format_equation(p, sys.variables));
      r.results["basis"] = b;
    }
  }
  if (res.verdict == Verdict::unknown) r.events.push_back("limit: " + res.reason);
  r.summary = "verdict " + to_string(res.verdict);
  return res.verdict == Verdict::unknown ? kExitLimit : kExitOk;
}

int cmd_verify(const std::string& target, unsigned workers, Report& r) {
  if (target != "fermat4") throw ParseError("verify: unknown target '" + target + "' (expected fermat4)");
  r.inputs["target"] = input(target);
  r.inputs["autOrder"] = input(96, "input fact");
  r.inputs["knownMapDegree"] = input(8, "input fact");
  auto cert = verify_fermat4(workers);
  r.results = cert.to_json();
  r.summary = cert.belyi_degree > 0 ? "Beldeg = " + std::to_string(cert.belyi_degree)
                                    : std::string("certificate chain does not close");
  return kExitOk;
}

int cmd_degree_search(int g, int min_d, int max_d, const std::string& curve_name, bool with_systems,
                      const GroebnerLimits& limits, unsigned workers, Report& r) {
  r.inputs["genus"] = input(g);
  r.inputs["minDegree"] = input(min_d);
  r.inputs["maxDegree"] = input(max_d);
  std::optional<CurveFixture> fx;
  if (with_systems) {
    if (curve_name.empty()) throw ParseError("--with-systems needs --curve");
    fx = curve_fixture(curve_name);
    if (fx->curve.genus != g)
      throw ParseError("curve " + curve_name + " has genus " + std::to_string(fx->curve.genus));
    r.inputs["curve"] = input(curve_name, "fixture");
  }
  json trace = json::array();
  std::optional<int> found;
  std::string found_how;
  bool undecided = false;
  for (int d = std::max(1, min_d); d <= max_d && !found && !undecided; ++d) {
    json step = {{"degree", d}};
    json types = json::array();
    for (const auto& lambda : types_with_genus(d, g)) {
      auto entry = passport_entry(lambda, workers);
      json tj = {{"type", lambda.to_string()}, {"classes", entry.class_count()}};
      if (entry.class_count() > 0) {
        if (!with_systems) {
          found = d;
          found_how = "census";
        } else {
          RRData rr;
          try {
            rr = fx->rr(compute_t(d, g, 1));
          } catch (const std::invalid_argument& e) {
            throw ResourceLimit(e.what());
          }
          auto cases = enumerate_cases(fx->curve, rr, lambda);
          std::map<std::string, int> verdicts;
          bool any_nonempty = false, any_unknown = false;
          for (const auto& c : cases) {
            auto res = solve_system(build_system(fx->curve, rr, lambda, c), MonomialOrder::grevlex, limits);
            ++verdicts[to_string(res.verdict)];
            if (res.verdict == Verdict::nonempty) {
              any_nonempty = true;
              break;
            }
            if (res.verdict == Verdict::unknown) any_unknown = true;
          }
          tj["systemVerdicts"] = verdicts;
          if (any_nonempty) {
            found = d;
            found_how = "system";
          } else if (any_unknown) {
            undecided = true;
          }
        }
      }
      types.push_back(std::move(tj));
      if (found || undecided) break;
    }
    step["types"] = std::move(types);
    trace.push_back(std::move(step));
  }
  r.results = {{"operation", "types_with_genus + passport_entry" +
                                 std::string(with_systems ? " + build_system + is_empty_variety" : "")},
               {"trace", trace},
               {"degree", found ? json(*found) : json(nullptr)}};
  if (found && found_how == "census") {
    r.summary = "smallest degree with a nonempty census: " + std::to_string(*found) +
                " (every genus-" + std::to_string(g) + " curve has Belyi degree >= " + std::to_string(*found) + ")";
  } else if (found) {
    r.summary = "Belyi map found in degree " + std::to_string(*found) + " (system nonempty)";
  } else if (undecided) {
    r.summary = "undecided: a system hit its limits";
    r.events.push_back("limit: solver returned unknown");
    return kExitLimit;
  } else {
    r.summary = "no degree up to " + std::to_string(max_d) + " qualifies";
  }
  return kExitOk;
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  if (report.contains("summary")) os << report["summary"].get<std::string>() << '\n';
  json rest = report;
  rest.erase("summary");
  render(rest, 0, os);
  return os.str();
}

CliOutcome run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Belyi degree toolkit: passports, census, height bounds and polynomial systems", "belyi"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false, timing = false;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  int degree = 0, genus = -1, workers = 0, deg_pi = 1, n_override = 0, param = 0;
  int min_degree = 1, max_degree = 9;
  std::string lambda, family, branch, curve, which = "general", out_dir, in_path, order = "grevlex", target;
  std::vector<std::string> minpolys;
  bool with_systems = false, show_basis = false;
  GroebnerLimits limits;

  auto* partitions = app.add_subcommand("partitions", "List the partitions of d in reverse-lex order");
  partitions->add_option("degree", degree, "d")->required();

  auto* genus_cmd = app.add_subcommand("genus", "Riemann-Hurwitz genus of a ramification type");
  genus_cmd->add_option("--lambda", lambda, "Type, e.g. \"7/7/7\" or \"2,1/2,1/3\"")->required();
  genus_cmd->add_option("--degree", degree, "d (defaults to the partition sum)");

  auto* passports = app.add_subcommand("passports", "Ramification types of degree d and genus g with their census");
  passports->add_option("--degree", degree, "d")->required();
  passports->add_option("--genus", genus, "g")->required();
  passports->add_option("--family", family, "fermat or cyclic_superelliptic, for the family upper bound");
  passports->add_option("--param", param, "Family parameter");
  passports->add_option("--workers", workers, "Census worker threads (default BELYI_WORKERS or 1)");

  auto* census = app.add_subcommand("census", "Simultaneous-conjugacy classes of transitive triples of a type");
  census->add_option("--lambda", lambda, "Type")->required();
  census->add_option("--degree", degree, "d");
  census->add_option("--workers", workers, "Worker threads");

  auto* bounds = app.add_subcommand("bounds", "Height-based upper bound on the Belyi degree");
  bounds->add_option("--branch", branch, "Comma-separated rational points or oo, e.g. \"0,1,oo,3/2\"");
  bounds->add_option("--minpoly", minpolys, "Minimal polynomial of an algebraic branch point, e.g. \"x^2-2\"");
  bounds->add_option("--deg-pi", deg_pi, "Degree of the map X -> P^1")->check(CLI::PositiveNumber);
  bounds->add_option("--n", n_override, "Override N (number of Galois-orbit points)");

  auto* system = app.add_subcommand("system", "Polynomial systems for Belyi maps");
  system->require_subcommand(1);
  auto* emit = system->add_subcommand("emit", "Write one system file per case");
  emit->add_option("--curve", curve, "fermat4 or p1")->required();
  emit->add_option("--degree", degree, "d");
  emit->add_option("--lambda", lambda, "Type")->required();
  emit->add_option("--case", which, "general, all or a case index");
  emit->add_option("--out", out_dir, "Output directory")->required();
  auto* solve = system->add_subcommand("solve", "Decide emptiness of a system file by Buchberger");
  solve->add_option("--in", in_path, "System file")->required();
  solve->add_option("--order", order, "lex, grlex or grevlex");
  solve->add_option("--max-steps", limits.max_steps, "S-polynomial reduction limit");
  solve->add_option("--max-degree", limits.max_degree, "Degree limit for new basis elements");
  solve->add_option("--max-basis", limits.max_basis_size, "Basis size limit");
  solve->add_flag("--show-basis", show_basis, "Print the reduced basis");

  auto* verify = app.add_subcommand("verify", "Replay a Belyi degree certificate");
  verify->add_option("target", target, "fermat4")->required();
  verify->add_option("--workers", workers, "Worker threads");

  auto* search = app.add_subcommand("degree-search", "Smallest degree passing the census screen");
  search->add_option("--genus", genus, "g")->required();
  search->add_option("--min-degree", min_degree, "First degree");
  search->add_option("--max-degree", max_degree, "Last degree");
  search->add_option("--curve", curve, "Curve fixture for --with-systems");
  search->add_flag("--with-systems", with_systems, "Confirm candidates by solving the systems");
  search->add_option("--max-steps", limits.max_steps, "S-polynomial reduction limit per system");
  search->add_option("--workers", workers, "Worker threads");

  CliOutcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      outcome.out = app.help();
      for (auto* sub : app.get_subcommands()) outcome.out = sub->help();
      return outcome;
    }
    outcome.exit_code = kExitUsage;
    outcome.err = std::string("error: ") + e.what() + "\nrun with --help for usage\n";
    return outcome;
  }

  Report r;
  std::string command = "belyi";
  for (const auto& a : args) command += " " + a;
  auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (*partitions) {
      code = cmd_partitions(degree, r);
    } else if (*genus_cmd) {
      code = cmd_genus(lambda, degree, r);
    } else if (*passports) {
      code = cmd_passports(degree, genus, family, param, workers_arg(workers), r);
    } else if (*census) {
      code = cmd_census(lambda, degree, workers_arg(workers), r);
    } else if (*bounds) {
      code = cmd_bounds(branch, minpolys, deg_pi, n_override, r);
    } else if (*emit) {
      code = cmd_emit(curve, degree, lambda, which, out_dir, r);
    } else if (*solve) {
      code = cmd_solve(in_path, order, limits, show_basis, r);
    } else if (*verify) {
      code = cmd_verify(target, workers_arg(workers), r);
    } else if (*search) {
      code = cmd_degree_search(genus, min_degree, max_degree, curve, with_systems, limits, workers_arg(workers), r);
    }
  } catch (const ResourceLimit& e) {
    code = kExitLimit;
    r.events.push_back(std::string("guard: ") + e.what());
    r.summary = std::string("stopped by guard: ") + e.what();
  } catch (const ChartFailure& e) {
    code = kExitLimit;
    r.events.push_back(std::string("chart failure: ") + e.what());
    r.summary = std::string("stopped: ") + e.what();
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = kExitUsage;
    outcome.err = std::string("error: ") + e.what() + "\n";
    return outcome;
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.err = std::string("error: ") + e.what() + "\n";
    return outcome;
  }

  json report = {{"command", command}, {"summary", r.summary}, {"inputs", r.inputs}, {"results", r.results},
                 {"events", r.events}, {"exitCode", code}};
  if (timing)
    report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  outcome.exit_code = code;
  outcome.out = as_json ? report.dump(2) + "\n" : render_text(report);
  return outcome;
}

}  // namespace belyi
