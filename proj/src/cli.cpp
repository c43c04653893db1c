#include "iq/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "iq/intfactor.hpp"
#include "iq/json_io.hpp"

namespace iq {

namespace {

int exit_code_for(errc c) {
  switch (c) {
    case errc::parse_error:
    case errc::zero_denominator:
      return 2;
    case errc::factor_budget_exceeded:
    case errc::not_enough_good_primes:
      return 4;
    default:
      return 3;
  }
}

// Inline JSON, or a file when the argument starts with '@'.
json load_json(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) fail(errc::parse_error, "cannot open " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, e.what());
  }
}

Curve load_curve(const std::string& arg, std::optional<int> cli_d) {
  json j = load_json(arg);
  if (j.is_object() && !j.contains("D") && cli_d) j["D"] = *cli_d;
  Curve c = curve_from_json(j);
  if (cli_d && c.field().D() != *cli_d)
    fail(errc::field_mismatch, "--D disagrees with the curve's \"D\" key");
  return c;
}

QuadRat load_elem(const std::string& arg, const FieldDesc& f) {
  if (!arg.empty() && arg[0] == '(') return parse_elem(arg, f);
  return elem_from_json(load_json(arg), f);
}

void print_units(std::ostream& out, const FieldDesc& f) {
  out << "units (" << f.units().size() << "):";
  for (const QuadInt& u : f.units()) out << " " << format_elem(to_rat(u));
  out << "\n";
}

void cmd_field(int D, bool as_json, std::ostream& out) {
  const FieldDesc& f = make_field(D);
  if (as_json) {
    json units = json::array();
    for (const QuadInt& u : f.units()) units.push_back(elem_to_json(to_rat(u)));
    json j{{"D", f.D()},
           {"omega", f.omega_text()},
           {"trace_omega", f.trace_omega()},
           {"norm_omega", f.norm_omega()},
           {"discriminant", f.discriminant()},
           {"euclidean", f.euclidean()},
           {"units", units}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "D: " << f.D() << "\n"
      << "omega: " << f.omega_text() << "  (w^2 = " << f.trace_omega()
      << "*w - " << f.norm_omega() << ")\n"
      << "discriminant: " << f.discriminant() << "\n"
      << "Euclidean: " << (f.euclidean() ? "yes" : "no") << "\n";
  print_units(out, f);
}

void cmd_factor(const FieldDesc& f, const std::string& elem_arg, bool as_json,
                std::ostream& out) {
  QuadRat x = load_elem(elem_arg, f);
  if (!is_integral(x))
    fail(errc::non_integral_curve,
         "factor expects an element of O_K, got denominator " +
             x.den.get_str());
  Factorization fz = factor(x.num);
  if (as_json) {
    json j = factorization_to_json(fz);
    j["element"] = elem_to_json(x);
    out << j.dump(2) << "\n";
    return;
  }
  out << format_elem(x) << " = " << format_elem(to_rat(fz.unit));
  for (const auto& [pe, e] : fz.factors) {
    out << " * " << format_elem(to_rat(pe.pi));
    if (e > 1) out << "^" << e;
    out << " [" << split_type_name(pe.split_type) << " over "
        << pe.residue_char.get_str() << "]";
  }
  out << "\n";
}

struct LoadedModel {
  Curve input;
  NormalizedCurve normalized;
};

LoadedModel load_model(const std::string& curve_arg, std::optional<int> cli_d) {
  Curve input = load_curve(curve_arg, cli_d);
  NormalizedCurve nc = normalize(input.field(), input.A(), input.B());
  return LoadedModel{std::move(input), std::move(nc)};
}

void print_normalization(std::ostream& out, const LoadedModel& m) {
  const NormalizationData& nd = m.normalized.data;
  out << "clearing factor c = " << nd.c.get_str() << ", map (x, y) -> (c^2 x, c^3 y)\n"
      << "integral model: A' = " << format_elem(m.normalized.curve.A())
      << ", B' = " << format_elem(m.normalized.curve.B()) << "\n";
}

void cmd_normalize(const std::string& curve_arg, std::optional<int> cli_d,
                   bool as_json, std::ostream& out) {
  LoadedModel m = load_model(curve_arg, cli_d);
  if (as_json) {
    json j{{"input", curve_to_json(m.input)},
           {"normalization", normalization_to_json(m.normalized.data)},
           {"curve", curve_to_json(m.normalized.curve)}};
    out << j.dump(2) << "\n";
    return;
  }
  out << "input: A = " << format_elem(m.input.A())
      << ", B = " << format_elem(m.input.B()) << " over D = "
      << m.input.field().D() << "\n";
  print_normalization(out, m);
}

void cmd_torsion(const std::string& curve_arg, std::optional<int> cli_d,
                 long height, long max_order, int num_primes, bool as_json,
                 std::ostream& out) {
  LoadedModel m = load_model(curve_arg, cli_d);
  TorsionReport r = torsion_subgroup(m.normalized.curve, height, max_order,
                                     num_primes);
  if (as_json) {
    json j{{"curve", curve_to_json(m.input)},
           {"model", curve_to_json(m.normalized.curve)},
           {"torsion", report_to_json(r)}};
    if (m.normalized.data.c != 1)
      j["normalization"] = normalization_to_json(m.normalized.data);
    out << j.dump(2) << "\n";
    return;
  }
  if (m.normalized.data.c != 1) print_normalization(out, m);
  out << "torsion subgroup: " << structure_text(r) << " with " << r.points.size()
      << " points, reduction bound " << r.reduction_bound
      << (r.certified_complete ? " (complete)" : " (not certified complete)")
      << "\n";
  for (const PointVerdict& v : r.verdicts)
    out << "  (" << format_elem(v.point.x()) << ", " << format_elem(v.point.y())
        << ")  order " << v.order << "  in_OK=" << (v.in_ok ? "yes" : "no")
        << "  in_ZsqrtD=" << (v.in_zsqrtd ? "yes" : "no") << "  parity=("
        << v.parity_x << "," << v.parity_y << ")\n";
}

void cmd_order(const std::string& curve_arg, const std::string& point_arg,
               std::optional<int> cli_d, long max_order, bool as_json,
               std::ostream& out) {
  LoadedModel m = load_model(curve_arg, cli_d);
  Point p = point_from_json(load_json(point_arg), m.input.field());
  Point mapped = map_point(m.normalized.data, p);
  OrderResult r = order_of(mapped, m.normalized.curve, max_order);
  if (as_json) {
    json j{{"point", point_to_json(p)},
           {"model_point", point_to_json(mapped)},
           {"result", order_to_json(r)}};
    if (m.normalized.data.c != 1)
      j["normalization"] = normalization_to_json(m.normalized.data);
    out << j.dump(2) << "\n";
    return;
  }
  switch (r.kind) {
    case OrderResult::Kind::Finite:
      out << "finite order " << r.value << "\n";
      break;
    case OrderResult::Kind::NotTorsionWithinBound:
      out << "no order <= " << r.value << " (raise --max-order to keep looking)\n";
      break;
    case OrderResult::Kind::ProvedInfinite:
      out << "infinite order (multiple " << r.value
          << " left O_K, so the point is not torsion)\n";
      break;
  }
}

void cmd_check(const std::string& curve_arg, const std::string& point_arg,
               std::optional<int> cli_d, long max_order, bool as_json,
               std::ostream& out) {
  LoadedModel m = load_model(curve_arg, cli_d);
  Point p = point_from_json(load_json(point_arg), m.input.field());
  Point mapped = map_point(m.normalized.data, p);
  const Curve& model = m.normalized.curve;
  bool on = on_curve(mapped, model);

  json j{{"point", point_to_json(p)},
         {"model_point", point_to_json(mapped)},
         {"on_curve", on}};
  if (on && !mapped.is_infinity()) {
    j["in_OK"] = is_integral(mapped.x()) && is_integral(mapped.y());
    j["in_ZsqrtD"] = in_z_sqrtd(mapped.x()) && in_z_sqrtd(mapped.y());
    j["order"] = order_to_json(order_of(mapped, model, max_order));
    json filt = json::array();
    if (!is_zero(mapped.y())) {
      mpz_class dens = mapped.x().den * mapped.y().den;
      if (dens > 1)
        for (const auto& [q, e] : factor_int(dens)) {
          (void)e;
          for (const PrimeElem& pe : primes_above(q, model.field()))
            filt.push_back(filtration_to_json(filtration_level(mapped, pe, model)));
        }
    }
    j["filtration"] = filt;
  }
  if (as_json) {
    out << j.dump(2) << "\n";
    return;
  }
  out << "on curve: " << (on ? "yes" : "no") << "\n";
  if (on && !mapped.is_infinity()) {
    out << "in O_K: " << (j["in_OK"].get<bool>() ? "yes" : "no")
        << ", in Z[sqrt(D)]: " << (j["in_ZsqrtD"].get<bool>() ? "yes" : "no")
        << "\n";
    out << "order: " << j["order"].dump() << "\n";
    if (!j["filtration"].empty())
      out << "filtration: " << j["filtration"].dump() << "\n";
  }
}

void cmd_verify_paper(const std::string& corpus_arg,
                      const std::string& curves_arg,
                      const std::string& curve_arg, std::optional<int> cli_d,
                      std::optional<long long> seed_override, long height,
                      long max_order, int num_primes, bool as_json,
                      std::ostream& out) {
  std::vector<Curve> curves;
  json spec_json;
  if (!corpus_arg.empty()) {
    json j = load_json(corpus_arg);
    if (!j.contains("D") && cli_d) j["D"] = *cli_d;
    if (seed_override) j["seed"] = *seed_override;
    CorpusSpec spec = corpus_from_json(j);
    spec_json = corpus_to_json(spec);
    for (Curve& c : corpus_curves(spec)) curves.push_back(std::move(c));
  } else if (!curves_arg.empty()) {
    json j = load_json(curves_arg);
    if (!j.is_array()) fail(errc::parse_error, "--curves expects a JSON array");
    for (json& cj : j) {
      if (cj.is_object() && !cj.contains("D") && cli_d) cj["D"] = *cli_d;
      curves.push_back(curve_from_json(cj));
    }
  } else if (!curve_arg.empty()) {
    curves.push_back(load_curve(curve_arg, cli_d));
  } else {
    fail(errc::parse_error, "one of --corpus, --curves, --curve is required");
  }

  // The hypothesis needs integral models.
  std::vector<Curve> models;
  for (const Curve& c : curves) {
    NormalizedCurve nc = normalize(c.field(), c.A(), c.B());
    models.push_back(std::move(nc.curve));
  }
  HypothesisReport h = verify_paper(models, height, max_order, num_primes);
  json j = hypothesis_to_json(h);
  if (!spec_json.is_null()) j["spec"] = spec_json;
  if (as_json) {
    out << j.dump(2) << "\n";
    return;
  }
  out << "curves: " << h.entries.size() << ", torsion points checked: "
      << h.points_checked << "\n"
      << "in_OK violations: " << h.in_ok_violations << "\n"
      << "in_ZsqrtD failures: " << h.in_zsqrtd_failures << "\n";
  for (const json& fj : j["failures"])
    out << "  counterexample: point " << fj["point"].dump() << " on "
        << fj["curve"].dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact elliptic-curve arithmetic over the nine imaginary "
               "quadratic fields of class number one"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the subcommand name
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  int field_d = 0;
  auto* field_cmd = app.add_subcommand("field", "describe one of the nine fields");
  field_cmd->add_option("D", field_d, "discriminant parameter")->required();

  std::optional<int> d_flag;
  std::string elem_arg, curve_arg, point_arg, corpus_arg, curves_arg;
  long height = 50, max_order = 18;
  int num_primes = 5;
  std::optional<long long> seed;

  auto add_d = [&](CLI::App* cmd) {
    cmd->add_option("--D", d_flag, "discriminant parameter");
  };
  auto add_knobs = [&](CLI::App* cmd, bool with_height) {
    if (with_height)
      cmd->add_option("--height", height, "search box for omega coordinates")
          ->check(CLI::PositiveNumber);
    cmd->add_option("--max-order", max_order, "order search bound")
        ->check(CLI::PositiveNumber);
    if (with_height)
      cmd->add_option("--num-primes", num_primes,
                      "good primes in the reduction certificate")
          ->check(CLI::PositiveNumber);
  };

  auto* factor_cmd = app.add_subcommand("factor", "factor an element of O_K");
  add_d(factor_cmd);
  factor_cmd->add_option("--elem", elem_arg, "element, \"(a+b*w)/q\" or [a,b,q]")
      ->required();

  auto* norm_cmd = app.add_subcommand("normalize", "clear denominators to an O_K model");
  add_d(norm_cmd);
  norm_cmd->add_option("--curve", curve_arg, "curve JSON or @file")->required();

  auto* tor_cmd = app.add_subcommand("torsion", "torsion subgroup with certificate");
  add_d(tor_cmd);
  tor_cmd->add_option("--curve", curve_arg, "curve JSON or @file")->required();
  add_knobs(tor_cmd, true);

  auto* order_cmd = app.add_subcommand("order", "order of a point");
  add_d(order_cmd);
  order_cmd->add_option("--curve", curve_arg, "curve JSON or @file")->required();
  order_cmd->add_option("--point", point_arg, "point JSON or @file")->required();
  add_knobs(order_cmd, false);

  auto* check_cmd = app.add_subcommand("check", "point diagnostics");
  add_d(check_cmd);
  check_cmd->add_option("--curve", curve_arg, "curve JSON or @file")->required();
  check_cmd->add_option("--point", point_arg, "point JSON or @file")->required();
  add_knobs(check_cmd, false);

  auto* vp_cmd = app.add_subcommand("verify-paper",
                                    "integrality hypothesis over a corpus");
  add_d(vp_cmd);
  vp_cmd->add_option("--corpus", corpus_arg, "corpus spec JSON or @file");
  vp_cmd->add_option("--curves", curves_arg, "JSON array of curves or @file");
  vp_cmd->add_option("--curve", curve_arg, "single curve JSON or @file");
  vp_cmd->add_option("--seed", seed, "override the corpus seed");
  add_knobs(vp_cmd, true);

  std::vector<const char*> argv;
  argv.push_back("iqec");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (*field_cmd) {
      cmd_field(field_d, as_json, out);
    } else if (*factor_cmd) {
      if (!d_flag) fail(errc::parse_error, "--D is required");
      cmd_factor(make_field(*d_flag), elem_arg, as_json, out);
    } else if (*norm_cmd) {
      cmd_normalize(curve_arg, d_flag, as_json, out);
    } else if (*tor_cmd) {
      cmd_torsion(curve_arg, d_flag, height, max_order, num_primes, as_json, out);
    } else if (*order_cmd) {
      cmd_order(curve_arg, point_arg, d_flag, max_order, as_json, out);
    } else if (*check_cmd) {
      cmd_check(curve_arg, point_arg, d_flag, max_order, as_json, out);
    } else if (*vp_cmd) {
      cmd_verify_paper(corpus_arg, curves_arg, curve_arg, d_flag, seed, height,
                       max_order, num_primes, as_json, out);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace iq
