// Command-line front end: Coleman integration of second-kind differentials on
// odd-degree hyperelliptic curves over Q_p.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coleman/integrate.hpp"

using json = nlohmann::ordered_json;
using namespace coleman;

namespace {

struct CurveFile {
  long p = 0;
  long digits = 6;
  std::vector<mpq_class> f;
};

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MalformedFile, "cannot open curve file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedFile, std::string("bad JSON: ") + e.what());
  }
  CurveFile cf;
  try {
    cf.p = doc.at("p").get<long>();
    if (doc.contains("digits")) cf.digits = doc.at("digits").get<long>();
    for (const auto& item : doc.at("f")) {
      mpq_class q(item.get<std::string>());
      q.canonicalize();
      cf.f.push_back(q);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::MalformedFile,
         std::string("curve file needs {\"p\", \"digits\", \"f\": [rationals]}: ") +
             e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::MalformedFile, "bad rational coefficient in curve file");
  }
  return cf;
}

CurvePoint parse_point(const std::string& text, const HyperellipticCurve& curve) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "inf" || s == "infinity" || s == "oo")
    return CurvePoint::infinity(curve.prime());
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    fail(ErrorCode::ParseError, "point must be \"(x,y)\" or \"inf\": " + text);
  s = s.substr(1, s.size() - 2);
  size_t comma = s.find(',');
  if (comma == std::string::npos)
    fail(ErrorCode::ParseError, "point must have two coordinates: " + text);
  Padic x = Padic::parse(s.substr(0, comma), curve.prime(), curve.working_prec());
  Padic y = Padic::parse(s.substr(comma + 1), curve.prime(), curve.working_prec());
  CurvePoint P = CurvePoint::affine(x, y);
  curve.require_on_curve(P);
  return P;
}

std::vector<Padic> parse_coeffs(const std::string& text,
                                const HyperellipticCurve& curve) {
  std::vector<Padic> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(Padic::parse(item, curve.prime(), curve.working_prec()));
  if (static_cast<long>(out.size()) != 2 * curve.genus())
    fail(ErrorCode::BadArguments,
         "expected " + std::to_string(2 * curve.genus()) + " coefficients");
  return out;
}

std::string shown(const Padic& v, long digits) {
  return v.truncated(std::min(digits, v.abs_prec())).str();
}

struct Options {
  std::string curve_path;
  std::string from, to, point, coeffs;
  long digits_override = 0;
  bool json_out = false;
  bool timing = false;
  bool teich = false;
};

int run_command(const std::string& cmd, const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CurveFile cf = load_curve_file(opt.curve_path);
  long digits = opt.digits_override > 0 ? opt.digits_override : cf.digits;
  HyperellipticCurve curve = HyperellipticCurve::create(cf.f, cf.p, digits);

  json out;
  std::ostringstream text;

  if (cmd == "validate") {
    out["genus"] = curve.genus();
    out["p"] = curve.prime();
    out["digits"] = curve.target_digits();
    out["working_prec"] = curve.working_prec();
    text << "ok: genus " << curve.genus() << ", p " << curve.prime()
         << ", digits " << curve.target_digits() << ", working precision "
         << curve.working_prec() << "\n";
  } else if (cmd == "teichmuller") {
    Integrator engine(curve);
    CurvePoint P = parse_point(opt.point, curve);
    CurvePoint T = curve.teichmuller_point(P);
    out["x"] = shown(T.x(), digits);
    out["y"] = shown(T.y(), digits);
    text << "x: " << shown(T.x(), digits) << "\n"
         << "y: " << shown(T.y(), digits) << "\n";
  } else if (cmd == "frobenius" || cmd == "zeta-numerator") {
    Integrator engine(curve);
    const FrobeniusData& fd = engine.frobenius();
    if (cmd == "frobenius") {
      json rows = json::array();
      for (long i = 0; i < 2 * curve.genus(); ++i) {
        json row = json::array();
        for (long j = 0; j < 2 * curve.genus(); ++j) {
          row.push_back(fd.M.at(i, j).str());
          text << "M[" << i << "][" << j << "] = " << fd.M.at(i, j).str() << "\n";
        }
        rows.push_back(row);
      }
      out["matrix"] = rows;
      out["certified_prec"] = fd.certified_prec;
      text << "certified_prec: " << fd.certified_prec << "\n";
    } else {
      PadicPoly cp = char_poly(fd.M);
      long n = 2 * curve.genus();
      json coeffs = json::array();
      json hints = json::array();
      text << "L(T) = det(I - T*M), reverse characteristic polynomial\n";
      for (long j = 0; j <= n; ++j) {
        // Coefficients are reported modulo the certified precision; the
        // integer hint is a display aid, not an exactness claim.
        Padic c = cp.coeff(n - j).truncated(fd.certified_prec);
        std::string hint;
        try {
          hint = c.balanced_lift().get_str();
        } catch (const ColemanError&) {
          hint = "?";
        }
        coeffs.push_back(c.str());
        hints.push_back(hint);
        text << "T^" << j << ": " << c.str() << "  (~ " << hint << ")\n";
      }
      out["coeffs"] = coeffs;
      out["integer_hints"] = hints;
      out["certified_prec"] = fd.certified_prec;
    }
  } else {
    // Integration commands share the retry-on-deficit loop.
    IntegralResult result;
    bool have_result = false;
    HyperellipticCurve work = curve;
    for (int attempt = 0; attempt < 3 && !have_result; ++attempt) {
      try {
        Integrator engine(work);
        CurvePoint P = parse_point(opt.from, work);
        CurvePoint Q = parse_point(opt.to, work);
        if (cmd == "integrate-basis") {
          result = opt.teich ? engine.integrals_basis_teichmuller(P, Q)
                             : engine.integrals_basis(P, Q);
        } else if (cmd == "tiny") {
          if (!opt.coeffs.empty()) {
            std::vector<Padic> cs = parse_coeffs(opt.coeffs, work);
            IntegralResult basis = engine.tiny_integrals_basis(P, Q);
            Padic acc = Padic::zero(work.prime(), kExactPrec);
            for (size_t i = 0; i < cs.size(); ++i)
              acc = acc + cs[i] * basis.values[i];
            basis.values = {acc};
            basis.audited_prec =
                std::min(basis.audited_prec, acc.abs_prec());
            result = std::move(basis);
          } else {
            result = engine.tiny_integrals_basis(P, Q);
          }
        } else if (cmd == "integrate") {
          std::vector<Padic> cs = parse_coeffs(opt.coeffs, work);
          result = engine.integrate(cs, nullptr, P, Q);
        } else {
          fail(ErrorCode::BadArguments, "unknown subcommand " + cmd);
        }
        have_result = true;
        if (result.audited_prec < digits && attempt < 2) {
          long deficit = digits - result.audited_prec;
          work = work.with_working_prec(work.working_prec() + deficit);
          have_result = false;
        }
      } catch (const ColemanError& e) {
        if ((e.code() == ErrorCode::InsufficientPrecision ||
             e.code() == ErrorCode::SingularSystem) &&
            attempt < 2) {
          work = work.with_working_prec(work.working_prec() + 2);
        } else {
          throw;
        }
      }
    }
    if (result.audited_prec < digits)
      fail(ErrorCode::InsufficientPrecision,
           "audited precision " + std::to_string(result.audited_prec) +
               " below requested digits " + std::to_string(digits) +
               "; retry with a larger --digits");
    json values = json::array();
    for (size_t i = 0; i < result.values.size(); ++i) {
      std::string rendered = shown(result.values[i], digits);
      values.push_back(rendered);
      if (result.values.size() > 1)
        text << "w" << i << ": " << rendered << "\n";
      else
        text << "integral: " << rendered << "\n";
    }
    out["values"] = values;
    out["audited_prec"] = result.audited_prec;
    text << "audited_prec: " << result.audited_prec << "\n";
  }

  auto t1 = std::chrono::steady_clock::now();
  long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  if (opt.timing) {
    out["time_ms"] = ms;
    text << "time_ms: " << ms << "\n";
  }
  if (opt.json_out)
    std::cout << out.dump(2) << "\n";
  else
    std::cout << text.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coleman integrals on odd-degree hyperelliptic curves over Q_p"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_endpoints, bool needs_coeffs,
                        bool needs_point) {
    sub->add_option("--curve", opt.curve_path, "curve JSON file")->required();
    sub->add_flag("--json", opt.json_out, "machine-readable JSON output");
    sub->add_flag("--timing", opt.timing, "include wall-clock timing");
    sub->add_option("--digits", opt.digits_override,
                    "override the precision requested in the curve file");
    if (needs_endpoints) {
      sub->add_option("--from", opt.from, "path start, \"(x,y)\" or \"inf\"")
          ->required();
      sub->add_option("--to", opt.to, "path end, \"(x,y)\" or \"inf\"")
          ->required();
    }
    if (needs_coeffs)
      sub->add_option("--coeffs", opt.coeffs,
                      "comma-separated c_0,...,c_{2g-1} (rationals or digit "
                      "expansions)");
    if (needs_point)
      sub->add_option("--point", opt.point, "\"(x,y)\"")->required();
  };

  add_common(app.add_subcommand("validate", "check the curve model"), false,
             false, false);
  add_common(app.add_subcommand("frobenius",
                                "Frobenius matrix on the odd de Rham basis"),
             false, false, false);
  auto* sub_basis = app.add_subcommand(
      "integrate-basis", "all 2g basis integrals between two points");
  add_common(sub_basis, true, false, false);
  sub_basis->add_flag("--teichmuller", opt.teich,
                      "use the Teichmuller-point variant");
  add_common(app.add_subcommand("integrate",
                                "integral of sum c_i w_i between two points"),
             true, true, false);
  add_common(app.add_subcommand("tiny", "same-disc fast path"), true, true,
             false);
  add_common(app.add_subcommand("teichmuller",
                                "Teichmuller point of a residue disc"),
             false, false, true);
  add_common(app.add_subcommand("zeta-numerator",
                                "reverse characteristic polynomial of Frobenius"),
             false, false, false);

  std::string cmd;
  try {
    app.parse(argc, argv);
    cmd = app.get_subcommands().front()->get_name();
    if (cmd == "integrate" && opt.coeffs.empty())
      fail(ErrorCode::BadArguments, "integrate requires --coeffs");
    return run_command(cmd, opt);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ColemanError& e) {
    std::cout << "error: " << e.code_name() << " " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << "error: INTERNAL " << e.what() << "\n";
    return 3;
  }
}
