// hecke: command-line front end for the seminormal representations.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hecke/verify.hpp"

using namespace hecke;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string data_dir() {
  if (const char* e = std::getenv("HECKE_DATA_DIR")) return e;
  return HECKE_DATA_DIR_DEFAULT;
}

WeylType parse_algebra(const std::string& s) {
  try {
    return algebra_from_string(s);
  } catch (const std::exception&) {
    throw UsageError("unknown algebra '" + s + "' (expected a1, a2, b3 or f4)");
  }
}

void check_label(WeylType t, const std::string& label) {
  const auto labels = rep_labels(t);
  if (std::find(labels.begin(), labels.end(), label) == labels.end())
    throw UsageError("unknown representation '" + label + "' of " + algebra_name(t));
}

Params parse_params(const std::vector<std::string>& items) {
  Params out;
  for (const auto& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=expression, got '" + s + "'");
    const std::string name = s.substr(0, eq);
    const auto& names = parameter_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown parameter '" + name + "'");
    try {
      out[name] = parse_ratfun(s.substr(eq + 1));
    } catch (const ParseError& e) {
      throw UsageError("--param " + name + ": " + e.what());
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string latex_rational(const mpq_class& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return std::string(x < 0 ? "-" : "") + "\\frac{" + mpz_class(abs(x.get_num())).get_str() + "}{" + x.get_den().get_str() + "}";
}

std::string latex_matrix(const QMatrix& m) {
  std::ostringstream os;
  os << "\\begin{pmatrix}\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " & " : "") << latex_rational(m(i, j));
    os << (i + 1 < m.rows() ? " \\\\\n" : "\n");
  }
  os << "\\end{pmatrix}";
  return os.str();
}

std::string latex_name(const Representation& r) {
  return "\\varphi^{" + r.label + "}";
}

std::vector<WeylType> all_algebras() { return {WeylType::A1, WeylType::A2, WeylType::B3, WeylType::F4}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seminormal representations of the Hecke algebras HA1, HA2, HB3 and HF4"};
  app.require_subcommand(1, 1);

  std::string algebra = "f4", rep, format = "json", out, misprints_path, type = "f4";
  std::vector<std::string> params;
  bool all = false, no_derive = false;
  std::string p0 = "1", q0 = "1";

  auto* emit = app.add_subcommand("emit", "print the generator matrices of a representation");
  emit->add_option("--algebra", algebra, "a1, a2, b3 or f4")->capture_default_str();
  emit->add_option("--rep", rep, "representation label");
  emit->add_option("--format", format, "json or latex")->check(CLI::IsMember({"json", "latex"}))->capture_default_str();
  emit->add_option("--param", params, "free parameter assignment name=expression");
  emit->add_flag("--all", all, "write every representation of every algebra into --out (a directory)");
  emit->add_option("--out", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the check suite");
  verify->add_flag("--all", all, "every representation of every algebra, plus the stored data files");
  verify->add_option("--algebra", algebra, "restrict to one algebra");
  verify->add_option("--rep", rep, "restrict to one representation");
  verify->add_option("--param", params, "free parameter assignment name=expression");
  verify->add_flag("--no-derive", no_derive, "skip the derivation round trip");
  verify->add_option("--misprints", misprints_path, "write the misprint ledger (markdown) to this path");
  verify->add_option("--out", out, "report file (default stdout)");

  auto* derive = app.add_subcommand("derive", "derive T4 of an HF4 representation from its restriction");
  derive->add_option("--rep", rep, "HF4 representation label");
  derive->add_flag("--all", all, "every HF4 representation");
  derive->add_option("--out", out, "output file (default stdout)");

  auto* chartab = app.add_subcommand("chartab", "character table of a Weyl group");
  chartab->add_option("--type", type, "a1, a2, b3 or f4")->capture_default_str();
  chartab->add_option("--out", out, "output file (default stdout)");

  auto* branch = app.add_subcommand("branch", "branching to the next smaller algebra in the chain");
  branch->add_option("--algebra", algebra, "a2, b3 or f4")->capture_default_str();
  branch->add_option("--rep", rep, "also list the restriction windows of this representation");

  auto* sp = app.add_subcommand("specialize", "evaluate a representation at given p and q");
  sp->add_option("--algebra", algebra, "a1, a2, b3 or f4")->capture_default_str();
  sp->add_option("--rep", rep, "representation label")->required();
  sp->add_option("--p", p0, "value of p (rational)")->capture_default_str();
  sp->add_option("--q", q0, "value of q (rational)")->capture_default_str();
  sp->add_option("--param", params, "free parameter assignment name=expression");
  sp->add_option("--format", format, "json or latex")->check(CLI::IsMember({"json", "latex"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*emit) {
      if (all) {
        if (out.empty()) throw UsageError("emit --all needs --out DIR");
        for (WeylType t : all_algebras())
          for (const auto& l : rep_labels(t)) {
            const Representation r = build_rep(t, l);
            write_text((fs::path(out) / (rep_file_stem(r) + ".json")).string(), dump(to_json(r)));
          }
        return 0;
      }
      const WeylType t = parse_algebra(algebra);
      if (rep.empty()) throw UsageError("emit needs --rep or --all");
      check_label(t, rep);
      const Representation r = build_rep(t, rep, parse_params(params));
      if (format == "json") {
        write_text(out, dump(to_json(r)));
      } else {
        std::string s;
        for (std::size_t i = 0; i < r.gens.size(); ++i)
          s += latex_name(r) + "(T_{" + std::to_string(i + 1) + "}) = " + to_latex(r.gens[i]) + "\n\n";
        write_text(out, s);
      }
      return 0;
    }

    if (*verify) {
      SuiteOptions o;
      o.derivation = !no_derive;
      std::vector<CheckReport> reports;
      if (all) {
        reports = verify_all(all_algebras(), o);
        auto golden = check_golden_files(data_dir());
        reports.insert(reports.end(), golden.begin(), golden.end());
      } else if (!rep.empty()) {
        const WeylType t = parse_algebra(algebra);
        check_label(t, rep);
        reports = verify_representation(build_rep(t, rep, parse_params(params)), o);
      } else if (verify->count("--algebra")) {
        reports = verify_all({parse_algebra(algebra)}, o);
      } else if (misprints_path.empty()) {
        throw UsageError("verify needs --all, --algebra or --rep");
      }
      if (!misprints_path.empty()) write_text(misprints_path, misprints_markdown());
      if (!reports.empty() || misprints_path.empty()) write_text(out, dump(to_json(reports)));
      return has_unledgered_failure(reports) ? 1 : 0;
    }

    if (*derive) {
      std::vector<std::string> labels;
      if (all) labels = rep_labels(WeylType::F4);
      else if (!rep.empty()) {
        check_label(WeylType::F4, rep);
        labels = {rep};
      } else {
        throw UsageError("derive needs --rep or --all");
      }
      nlohmann::json arr = nlohmann::json::array();
      bool ok = true;
      for (const auto& l : labels) {
        const Derivation d = derive_rep(l);
        arr.push_back(to_json(d));
        if (d.assembled && !d.diff.empty()) ok = false;
        if (!(d.published_diagonal_matches && d.published_u_solve_system && d.published_v_match && d.published_identities_hold)) ok = false;
      }
      write_text(out, dump(all ? arr : arr[0]));
      return ok ? 0 : 1;
    }

    if (*chartab) {
      const WeylType t = parse_algebra(type);
      write_text(out, dump(to_json(weyl_group(t), character_table(t))));
      return 0;
    }

    if (*branch) {
      const WeylType t = parse_algebra(algebra);
      if (t == WeylType::A1) throw UsageError("HA1 has no smaller algebra in the chain");
      const WeylType h = parent_subgroup(t);
      const auto& tg = character_table(t);
      const auto& th = character_table(h);
      const auto m = branching(weyl_group(t), tg, weyl_group(h), th);
      nlohmann::json rows = nlohmann::json::array();
      for (int k = 0; k < tg.num_irreps(); ++k) {
        nlohmann::json parts = nlohmann::json::array();
        for (int i = 0; i < th.num_irreps(); ++i)
          if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] != 0)
            parts.push_back({{"label", th.labels[static_cast<std::size_t>(i)]}, {"multiplicity", m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]}});
        rows.push_back({{"label", tg.labels[static_cast<std::size_t>(k)]}, {"restriction", parts}});
      }
      nlohmann::json j{{"algebra", algebra_name(t)}, {"subalgebra", algebra_name(h)}, {"rows", rows}};
      if (!rep.empty()) {
        check_label(t, rep);
        nlohmann::json win = nlohmann::json::array();
        for (const auto& w : restrict_blocks(build_rep(t, rep))) win.push_back({{"label", w.label}, {"offset", w.offset + 1}, {"dim", w.dim}});
        j["windows"] = {{"label", rep}, {"blocks", win}};
      }
      write_text(out, dump(j));
      return 0;
    }

    if (*sp) {
      const WeylType t = parse_algebra(algebra);
      check_label(t, rep);
      mpq_class p, q;
      try {
        p = mpq_class(p0);
        q = mpq_class(q0);
        p.canonicalize();
        q.canonicalize();
      } catch (const std::exception&) {
        throw UsageError("--p and --q expect rationals such as 1 or -2/3");
      }
      const Representation r = build_rep(t, rep, parse_params(params));
      const auto s = specialize(r, p, q);
      if (format == "json") {
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : s) gens.push_back(to_json(g));
        write_text(out, dump({{"algebra", algebra_name(t)}, {"label", rep}, {"p", p.get_str()}, {"q", q.get_str()}, {"generators", gens}}));
      } else {
        std::string txt;
        for (std::size_t i = 0; i < s.size(); ++i) txt += latex_name(r) + "(T_{" + std::to_string(i + 1) + "}) = " + latex_matrix(s[i]) + "\n\n";
        write_text(out, txt);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "hecke: " << e.what() << "\n";
    return 2;
  } catch (const RepresentationError& e) {
    std::cerr << "hecke: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hecke: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
