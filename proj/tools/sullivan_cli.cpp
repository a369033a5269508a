// sullivan: command-line front end.
//
//   sullivan build   GRAPH           algebra JSON + ellipticity certificate
//   sullivan endos   GRAPH           homotopy classes of self-maps
//   sullivan aut     GRAPH           automorphism group listing
//   sullivan frucht  GROUP           graph realizing the group
//   sullivan realize GROUP           group -> graph -> algebra -> classes -> degrees
//   sullivan tilde   GRAPH|ALGEBRA   tilde extension and degree certificates
//
// Exit codes: 0 ok, 2 parse, 3 validation, 4 resource, 5 invariant.

#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sullivan/pipeline.hpp"

using namespace sullivan;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + out + "'");
  f << text;
}

bool looks_like_json(const std::string& text) {
  auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sullivan algebras from graphs: construction, endomorphism classification, inflexibility"};
  app.require_subcommand(1);
  app.fallthrough();

  PipelineConfig cfg;
  std::vector<std::string> variant;
  std::string format = "json", out;
  app.add_option("--variant", variant, "coupling coefficients U1 U2 of x1^5 and x2^4")->expected(2);
  app.add_option("--monomial-budget", cfg.monomial_budget, "largest degree basis to enumerate");
  app.add_option("--groebner-budget", cfg.groebner_budget, "Buchberger pair budget");
  app.add_option("--split-budget", cfg.split_budget, "case-tree split budget");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--trace", cfg.trace, "include the full case tree");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--out", out, "write the report here instead of stdout");

  std::string input;
  auto* build = app.add_subcommand("build", "build M_G and its ellipticity certificate");
  auto* endos = app.add_subcommand("endos", "classify self-maps of M_G up to homotopy");
  auto* aut = app.add_subcommand("aut", "list graph automorphisms");
  auto* frucht = app.add_subcommand("frucht", "graph whose automorphism group is the given group");
  auto* realize = app.add_subcommand("realize", "full pipeline from a group file");
  auto* tilde = app.add_subcommand("tilde", "tilde extension of M_G or of an algebra file");
  for (auto* sc : {build, endos, aut, frucht, realize, tilde})
    sc->add_option("input", input, "input file")->required();
  std::string x_text, map_file;
  int max_degree = -1;
  tilde->add_option("--x", x_text, "closed even element to kill (algebra input)");
  tilde->add_option("--map", map_file, "JSON object generator -> image to extend (algebra input)");
  tilde->add_option("--max-degree", max_degree, "last cohomology degree to report (algebra input)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::parse);
  }

  try {
    if (!variant.empty()) {
      cfg.u1 = parse_rational(variant[0]);
      cfg.u2 = parse_rational(variant[1]);
    }
    cfg.format = format == "text" ? OutputFormat::text : OutputFormat::json;
    cfg.validate();
    const std::string text = read_file(input);
    int code = 0;
    Json report;

    if (*build) {
      auto r = run_build(parse_graph(text), cfg);
      report = r.report;
      if (!r.ok()) code = static_cast<int>(ErrorKind::invariant);
    } else if (*endos) {
      report = run_endos(parse_graph(text), cfg).report;
    } else if (*aut) {
      report = run_aut(parse_graph(text), cfg);
    } else if (*frucht) {
      auto r = run_frucht(parse_group(text, cfg.order_budget), cfg);
      // Text form is the graph file itself, ready for the other commands.
      if (cfg.format == OutputFormat::text) {
        emit(r.result.graph.to_text(), out);
        return 0;
      }
      report = r.report;
    } else if (*realize) {
      auto r = run_realize(parse_group(text, cfg.order_budget), cfg);
      report = r.report;
      if (r.failure) code = r.failure->exit_code();
    } else if (*tilde) {
      if (looks_like_json(text)) {
        if (x_text.empty()) throw ValidationError("algebra input needs --x");
        auto base = std::make_shared<const SullivanAlgebra>(algebra_from_string(text, 1));
        std::optional<Json> map;
        if (!map_file.empty()) {
          try {
            map = Json::parse(read_file(map_file));
          } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid map JSON: ") + e.what());
          }
        }
        report = run_tilde_algebra(base, x_text, map, max_degree, cfg);
      } else {
        report = run_tilde_graph(parse_graph(text), cfg);
        if (!report["inflexible"].get<bool>()) code = static_cast<int>(ErrorKind::invariant);
      }
    }
    emit(format_report(report, cfg.format), out);
    if (code != 0) std::cerr << "error: checks failed (exit " << code << ")\n";
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return static_cast<int>(ErrorKind::resource);
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::invariant);
  }
}
