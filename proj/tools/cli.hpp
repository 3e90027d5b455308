#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "k3real/catalog.hpp"
#include "k3real/classifier.hpp"
#include "k3real/gauss.hpp"
#include "k3real/involution.hpp"
#include "k3real/json_io.hpp"
#include "k3real/lattice.hpp"
#include "k3real/scheme.hpp"
#include "k3real/verify.hpp"

namespace k3real::cli {

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2 };

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline void print_report(std::ostream& out, const char* title, const ConditionReport& rep) {
  out << title << ":";
  for (const auto& c : rep.results) out << ' ' << c.name << '=' << yes_no(c.holds);
  out << " => " << (rep.all() ? "holds" : "fails") << '\n';
}

inline std::optional<std::int64_t> optional_r(const CLI::Option* opt, std::int64_t value) {
  if (opt->count() == 0) return std::nullopt;
  return value;
}

inline int compare_figures(std::ostream& out, const FigureTables& got, const FigureTables& want,
                           const std::vector<RigidIsotopyClass>& classes) {
  std::map<std::string, Figure1Entry> g1;
  for (const auto& e : got.figure1) g1[e.scheme] = e;
  std::size_t match1 = 0;
  for (const auto& e : want.figure1) {
    auto it = g1.find(e.scheme);
    if (it != g1.end() && it->second == e) {
      ++match1;
    } else {
      out << "figure1 mismatch: " << e.scheme << '\n';
    }
  }
  std::map<std::string, std::int64_t> g2;
  for (const auto& e : got.figure2) g2[e.scheme] = e.m_max;
  std::size_t match2 = 0;
  for (const auto& e : want.figure2) {
    auto it = g2.find(e.scheme);
    if (it != g2.end() && it->second == e.m_max) {
      ++match2;
    } else {
      out << "figure2 mismatch: " << e.scheme << '\n';
    }
  }
  const bool fig1 = match1 == want.figure1.size() && got.figure1.size() == want.figure1.size();
  const bool fig2 = match2 == want.figure2.size() && got.figure2.size() == want.figure2.size();
  const std::size_t dividing = count_dividing(classes);
  out << "figure1: " << match1 << '/' << want.figure1.size() << " entries match (" << got.figure1.size()
      << " enumerated)\n";
  out << "figure2: " << match2 << '/' << want.figure2.size() << " rows match (" << got.figure2.size()
      << " enumerated)\n";
  out << "dividing classes: " << dividing << '\n';
  out << "non-dividing classes: " << classes.size() - dividing << '\n';
  return fig1 && fig2 ? ok : mismatch;
}

}  // namespace detail

// Runs one command line; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid isotopy classification of real nodal sextics", "k3real"};
  app.require_subcommand(1);
  app.fallthrough();
  bool ascii = false;
  app.add_flag("--ascii", ascii, "Render schemes in ASCII notation");

  // scheme
  auto* scheme = app.add_subcommand("scheme", "Parse a scheme or translate it to lattice invariants");
  scheme->require_subcommand(1);
  std::string scheme_text;
  bool scheme_json = false;
  auto* scheme_parse = scheme->add_subcommand("parse", "Print the canonical form of a scheme");
  scheme_parse->add_option("text", scheme_text, "Scheme in Viro notation")->required();
  scheme_parse->add_flag("--json", scheme_json, "Print the nested-array form as well");
  std::string divtype_text = "II";
  std::int64_t r_value = 0;
  auto* scheme_inv = scheme->add_subcommand("invariants", "Translate a scheme to (a, t, delta, r)");
  scheme_inv->add_option("text", scheme_text, "Scheme in Viro notation")->required();
  scheme_inv->add_option("--type", divtype_text, "I or II")->required();
  CLI::Option* inv_r = scheme_inv->add_option("--r", r_value, "Crossing pairs (type I only)");

  // lattice
  auto* lattice = app.add_subcommand("lattice", "Lattice invariants from a JSON Gram matrix");
  lattice->require_subcommand(1);
  std::string lattice_file;
  auto* lattice_disc = lattice->add_subcommand("disc", "Discriminant group and form");
  lattice_disc->add_option("file", lattice_file)->required()->check(CLI::ExistingFile);
  auto* lattice_sig = lattice->add_subcommand("signature", "Signature (positive, negative)");
  lattice_sig->add_option("file", lattice_file)->required()->check(CLI::ExistingFile);

  // form
  auto* form = app.add_subcommand("form", "Finite quadratic forms");
  form->require_subcommand(1);
  std::vector<std::string> form_files;
  auto* form_glue = form->add_subcommand("glue", "Glue A and B along an anti-isometry");
  form_glue->add_option("files", form_files, "A.json B.json gamma.json")->required()->expected(3);
  auto* form_gauss = form->add_subcommand("gauss", "Gauss-sum signature mod 8");
  form_gauss->add_option("files", form_files, "form.json")->required()->expected(1);

  // involution
  auto* involution = app.add_subcommand("involution", "Marked involutions");
  involution->require_subcommand(1);
  std::string involution_file;
  auto* involution_inv = involution->add_subcommand("invariants", "Compute (m, a, t, delta, r)");
  involution_inv->add_option("file", involution_file)->required()->check(CLI::ExistingFile);

  // check
  auto* check = app.add_subcommand("check", "Decide whether a rigid isotopy class exists");
  std::string check_scheme, check_type;
  std::int64_t check_m = 0, check_r = 0;
  check->add_option("--scheme", check_scheme)->required();
  check->add_option("--type", check_type, "I or II")->required();
  check->add_option("--m", check_m, "Number of conjugate node pairs")->required();
  CLI::Option* check_r_opt = check->add_option("--r", check_r, "Crossing pairs (type I only)");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "List every rigid isotopy class");
  bool as_json = false, as_csv = false;
  std::string compare_file;
  std::int64_t m_max = 5;
  auto* json_flag = enumerate->add_flag("--json", as_json, "JSON array of class records");
  enumerate->add_flag("--csv", as_csv, "CSV with header m,scheme,divtype,r")->excludes(json_flag);
  enumerate->add_option("--compare", compare_file, "Golden figures.json to compare against")
      ->check(CLI::ExistingFile);
  enumerate->add_option("--m-max", m_max, "Largest m to consider")->check(CLI::Range(0, 5));

  // verify
  auto* verify = app.add_subcommand("verify", "Run every property suite");
  VerifyOptions vopt;
  verify->add_option("--catalog", vopt.catalog_path, "Model catalog JSON")->check(CLI::ExistingFile);
  verify->add_option("--figures", vopt.figures_path, "Golden figures JSON")->check(CLI::ExistingFile);

  std::vector<std::string> argv_store{"k3real"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  const Notation notation = ascii ? Notation::ascii : Notation::unicode;
  try {
    if (*scheme_parse) {
      const RealScheme s = parse_viro(scheme_text);
      out << render_viro(s, notation) << '\n';
      if (scheme_json) out << json_io::to_json(s).dump() << '\n';
      return ok;
    }
    if (*scheme_inv) {
      const SchemeInvariants inv =
          scheme_to_invariants(parse_viro(scheme_text), parse_divtype(divtype_text), detail::optional_r(inv_r, r_value));
      Json j{{"a", inv.a}, {"t", inv.t}, {"delta", inv.delta}};
      j["r"] = inv.r ? Json(*inv.r) : Json(nullptr);
      out << j.dump() << '\n';
      return ok;
    }
    if (*lattice_disc) {
      const IntLattice l = json_io::lattice_from_json(json_io::read_file(lattice_file));
      Json group = Json::array();
      for (const auto& d : discriminant_group(l)) group.push_back(json_io::from_integer(d));
      out << Json{{"group", group}, {"form", json_io::to_json(discriminant_form(l))}}.dump() << '\n';
      return ok;
    }
    if (*lattice_sig) {
      const Signature s = signature(json_io::lattice_from_json(json_io::read_file(lattice_file)));
      out << Json{{"positive", s.positive}, {"negative", s.negative}}.dump() << '\n';
      return ok;
    }
    if (*form_glue) {
      const FiniteQuadraticForm a = json_io::form_from_json(json_io::read_file(form_files[0]));
      const FiniteQuadraticForm b = json_io::form_from_json(json_io::read_file(form_files[1]));
      const SubgroupAntiIsometry g = json_io::anti_isometry_from_json(json_io::read_file(form_files[2]));
      out << json_io::to_json(normalized(glue(a, b, g))).dump() << '\n';
      return ok;
    }
    if (*form_gauss) {
      out << gauss_signature(json_io::form_from_json(json_io::read_file(form_files[0]))) << '\n';
      return ok;
    }
    if (*involution_inv) {
      const MarkedInvolution mi = json_io::marked_involution_from_json(json_io::read_file(involution_file));
      const MarkingReport rep = validate_marking(mi);
      if (!rep.ok) {
        err << "invalid marking [" << rep.clause << "]: " << rep.detail << '\n';
        return mismatch;
      }
      out << json_io::to_json(invariants(mi)).dump() << '\n';
      return ok;
    }
    if (*check) {
      const RigidIsotopyClass c{check_m, parse_viro(check_scheme), parse_divtype(check_type),
                                detail::optional_r(check_r_opt, check_r)};
      check_class_shape(c);
      const bool exists = exists_class(c);
      out << (exists ? "EXISTS" : "DOES NOT EXIST") << '\n';
      out << "class: " << to_string(c, notation) << '\n';
      detail::print_report(out, "topological", topological_conditions(c));
      if (const auto arith = arithmetic_path(c)) {
        const SchemeInvariants inv = scheme_to_invariants(c.scheme, c.divtype, c.r);
        out << "invariants: a=" << inv.a << " t=" << inv.t << " delta=" << inv.delta;
        if (inv.r) out << " r=" << *inv.r;
        out << '\n';
        detail::print_report(out, "arithmetic", *arith);
      } else {
        out << "arithmetic: not applicable (" << (c.m == 0 ? "m = 0" : "empty scheme is not dividing") << ")\n";
      }
      return ok;
    }
    if (*enumerate) {
      const auto classes = enumerate_classes(m_max);
      if (!compare_file.empty()) {
        const FigureTables want = json_io::figures_from_json(json_io::read_file(compare_file));
        return detail::compare_figures(out, figure_tables(classes), want, classes);
      }
      if (as_json) {
        out << json_io::classes_to_json(classes, notation).dump(2) << '\n';
      } else if (as_csv) {
        out << json_io::classes_to_csv(classes, notation);
      } else {
        for (const auto& c : classes) {
          out << "m=" << c.m << "  " << to_string(c.divtype) << (c.divtype == DivType::I ? " " : "") << "  r="
              << (c.r ? std::to_string(*c.r) : std::string("-")) << "  " << render_viro(c.scheme, notation) << '\n';
        }
        out << classes.size() << " classes (" << count_dividing(classes) << " dividing)\n";
      }
      return ok;
    }
    if (*verify) {
      std::size_t failed = 0;
      const auto results = run_property_suites(vopt);
      for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.name << " (" << r.detail << ")\n";
        failed += r.passed ? 0 : 1;
      }
      out << results.size() - failed << '/' << results.size() << " properties hold\n";
      return failed == 0 ? ok : mismatch;
    }
  } catch (const DualPathDisagreement& e) {
    err << "error: " << e.what() << '\n';
    return mismatch;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  err << "error: no command\n";
  return usage;
}

}  // namespace k3real::cli
