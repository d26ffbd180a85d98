#pragma once

// Command-line front end. Exit codes: 0 success, 1 verified mismatch or
// failed hypothesis, 2 usage, parse or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "nashtor/families.hpp"
#include "nashtor/jets.hpp"
#include "nashtor/newton.hpp"

namespace nashtor::cli {

using io::json;

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2 };

// "key: value" lines, nested keys joined with dots.
inline void render_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) &&
      !(j.front().is_array() && !j.front().empty() && j.front().front().is_primitive())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

inline void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "text")
    render_text(j, "", out);
  else
    out << j.dump(2) << "\n";
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline RationalSeries series_from_text(const std::string& text, long m) {
  const auto p = parse_polynomial(text, VarNames({"t"}));
  std::vector<Rational> c(static_cast<std::size_t>(m + 1), 0);
  for (const auto& [e, a] : p.terms())
    if (static_cast<long>(e[0]) <= m) c[e[0]] = a;
  return RationalSeries(m, std::move(c));
}

struct DeformInput {
  SparsePolynomial f;
  std::vector<SparsePolynomial> g;
  std::vector<RationalSeries> phi;
  long m = 0, D = 0;
};

// x1^3 + x2^4 + x3^8 + x4^8 with deformation terms in the monomial ideal of
// its pure powers, and a 12-jet with prescribed orders (4,3,2,2).
inline DeformInput pham_brieskorn_example() {
  DeformInput in;
  in.m = 12;
  in.D = 3;
  in.f = parse_polynomial("x1^3+x2^4+x3^8+x4^8");
  for (const char* g : {"x1^3", "x2^4+x1^3*x2", "x3^8"}) in.g.push_back(parse_polynomial(g, 4));
  for (const char* s : {"-t^4+t^7", "t^3+t^5", "t^2+2*t^3", "t^2-t^4"}) in.phi.push_back(series_from_text(s, in.m));
  return in;
}

inline int cmd_newton(const std::string& text, std::size_t n, const std::string& format, const std::string& dot,
                      std::ostream& out) {
  const auto f = parse_polynomial(text, n);
  if (f.is_zero()) throw InputError("Newton polyhedron of the zero polynomial");
  const auto P = newton_polyhedron(f);
  const auto F = newton_fan(f);
  json faces = json::array();
  for (const auto& g : compact_faces(P))
    faces.push_back({{"vertices", io::vecs(g.vertices)}, {"dimension", g.dimension}, {"normal", io::vec(g.normal)}});
  json j = {{"polynomial", to_string(f)}, {"polyhedron", io::polyhedron_json(P)}, {"fan", io::fan_json(F)},
            {"compact_faces", faces}};
  if (format == "dot")
    out << fan_to_dot(F);
  else
    emit(j, format, out);
  if (!dot.empty()) write_file(dot, fan_to_dot(F));
  return kOk;
}

inline int cmd_resolve(int family, long p, long q, const std::vector<std::string>& h, const std::vector<std::string>& hk,
                       std::uint64_t seed, const std::string& format, const std::string& out_path,
                       const std::string& dot_path, std::ostream& out) {
  FamilySpec s;
  if (family != 1 && family != 2) throw InputError("--family must be 1 or 2");
  s.family = family == 1 ? Family::One : Family::Two;
  s.p = family == 1 ? p : 2;
  s.q = q;
  for (const auto& t : h) s.h_factors.push_back(parse_polynomial(t, 2));
  for (const auto& t : hk) s.hk_factors.push_back(parse_polynomial(t, 2));
  validate(s);
  const auto r = verify(s, seed);
  const auto j = io::report_json(r);
  if (format == "dot")
    out << r.dual_graph_dot;
  else
    emit(j, format, out);
  if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
  if (!dot_path.empty()) write_file(dot_path, r.dual_graph_dot);
  return r.ok() ? kOk : kMismatch;
}

inline int cmd_jets(const std::string& text, long m, const std::string& s_poly, const std::string& input_json,
                    const std::string& format, std::ostream& out) {
  JetSystem js;
  if (!input_json.empty()) {
    json j;
    try {
      j = json::parse(read_file(input_json));
    } catch (const json::parse_error& e) {
      throw InputError(std::string("invalid JSON: ") + e.what());
    }
    js = io::jet_system_from_json(j);
  } else {
    if (text.empty()) throw InputError("jets needs a polynomial or --input-json");
    if (m < 0) throw InputError("--m must be nonnegative");
    auto f = parse_polynomial(text);
    if (s_poly.empty()) {
      js = jet_equations(f, m);
    } else {
      const std::size_t n = f.n_vars();
      auto names = VarNames::indexed("x", n).names();
      names.push_back("s");
      const VarNames xs(names);
      std::vector<std::size_t> map(n);
      for (std::size_t i = 0; i < n; ++i) map[i] = i;
      const auto F = f.remap(n + 1, map) + SparsePolynomial::variable(n + 1, n) * parse_polynomial(s_poly, xs);
      js = relative_jet_equations(F, n, {"s"}, m);
    }
  }
  emit(io::jet_system_json(js), format, out);
  return kOk;
}

inline int cmd_deform(const DeformInput& in, const std::string& format, std::ostream& out) {
  const auto hyp = check_deform_hypotheses(in.f, in.g, in.phi, in.m);
  json j = {{"polynomial", to_string(in.f)},
            {"hypotheses", io::hypothesis_json(hyp)},
            {"pham_brieskorn", to_string(pham_brieskorn_applicability(in.f, in.g))}};
  if (!hyp.ok) {
    j["error"] = "hypothesis failed: " + hyp.failing;
    emit(j, format, out);
    return kMismatch;
  }
  const auto d = deform_jet(in.f, in.g, in.phi, in.m, in.D);
  j["deformation"] = io::deformation_json(d);
  j["residual_zero"] = d.residual_zero;
  emit(j, format, out);
  return d.residual_zero && d.order_invariant ? kOk : kMismatch;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric resolution and jet tools for A^4 hypersurface families", "nashtor"};
  app.require_subcommand(1);
  std::string format = "json";
  const std::vector<std::string> formats{"json", "dot", "text"};

  auto* newton = app.add_subcommand("newton", "Newton polyhedron and Newton fan of a polynomial");
  std::string poly;
  std::size_t n_vars = 0;
  std::string dot;
  newton->add_option("polynomial", poly, "polynomial in x1..xn")->required();
  newton->add_option("--n", n_vars, "number of variables (default: largest index used)");
  newton->add_option("--format", format)->check(CLI::IsMember(formats));
  newton->add_option("--dot", dot, "write the fan as DOT");

  auto* resolve = app.add_subcommand("resolve", "verify a family: fan, charts, dual graph");
  int family = 0;
  long p = 0, q = 0;
  std::vector<std::string> h, hk;
  std::uint64_t seed = 0;
  std::string out_path;
  resolve->add_option("--family", family)->required();
  resolve->add_option("--p", p, "family 1 only");
  resolve->add_option("--q", q)->required();
  resolve->add_option("--h-factor", h, "factor of h_q as a binary form in x1,x2 (repeatable)");
  resolve->add_option("--hk-factor", hk, "factor of the second form in x1,x2 (repeatable)");
  resolve->add_option("--seed", seed, "seed for the non-degeneracy probe");
  resolve->add_option("--format", format)->check(CLI::IsMember(formats));
  resolve->add_option("--out", out_path, "write the JSON report");
  resolve->add_option("--dot", dot, "write the dual graph as DOT");

  auto* jets = app.add_subcommand("jets", "m-jet equations");
  long m = -1;
  std::string s_poly, input_json;
  jets->add_option("polynomial", poly, "polynomial in x1..xn");
  jets->add_option("--m", m, "jet order");
  jets->add_option("--s-poly", s_poly, "deform by s*G");
  jets->add_option("--input-json", input_json, "read a jet system and re-emit it");
  jets->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* deform = app.add_subcommand("deform-jet", "lift an m-jet along f + sum s^j g_j");
  std::string f_text, example;
  std::vector<std::string> g_text, phi_text;
  long D = 0;
  deform->add_option("--f", f_text);
  deform->add_option("--g", g_text, "g_1, g_2, ... (repeatable)");
  deform->add_option("--phi", phi_text, "jet coordinates as polynomials in t (repeatable)");
  deform->add_option("--m", m);
  deform->add_option("--D", D);
  deform->add_option("--example", example)->check(CLI::IsMember({"pham-brieskorn"}));
  deform->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> argv_s{"nashtor"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*newton) return cmd_newton(poly, n_vars, format, dot, out);
    if (*resolve) return cmd_resolve(family, p, q, h, hk, seed, format, out_path, dot, out);
    if (*jets) return cmd_jets(poly, m, s_poly, input_json, format, out);
    if (*deform) {
      DeformInput in;
      if (!example.empty()) {
        in = pham_brieskorn_example();
      } else {
        if (f_text.empty() || phi_text.empty() || m < 0) throw InputError("deform-jet needs --f, --phi and --m");
        in.f = parse_polynomial(f_text);
        for (const auto& g : g_text) in.g.push_back(parse_polynomial(g, in.f.n_vars()));
        for (const auto& s : phi_text) in.phi.push_back(series_from_text(s, m));
        in.m = m;
        in.D = D > 0 ? D : static_cast<long>(std::max<std::size_t>(in.g.size(), 1));
      }
      return cmd_deform(in, format, out);
    }
  } catch (const ParseError& e) {
    err << "parse error at position " << e.position() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}

}  // namespace nashtor::cli
