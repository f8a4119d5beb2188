// lxkit command-line front end.

#include <iostream>

#include "CLI11.hpp"
#include "lxkit/commands.hpp"
#include "lxkit/foundation.hpp"

namespace {

using lxkit::commands::RunConfig;

void add_common(CLI::App* sub, RunConfig& config) {
  sub->add_option("--out", config.output_dir, "Directory for artifacts");
  sub->add_option("--emit", config.emit, "Artifacts to write (comma separated)")->delimiter(',');
  sub->add_flag("--no-caps", config.no_caps, "Lift the n <= 8, d <= 3 limits");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line arrangements, Dilworth truncations and tropical fans"};
  app.require_subcommand(1);
  RunConfig config;

  auto* lines = app.add_subcommand("lines-matroid", "U, V and the matroid of lines of a subspace");
  lines->add_option("--input", config.input, "Subspace JSON")->required();
  lines->add_option("--e", config.e, "Dimension e (only d+1)");
  add_common(lines, config);

  auto* gen = app.add_subcommand("genericity", "Genericity report of a subspace");
  gen->add_option("--input", config.input, "Subspace JSON")->required();
  add_common(gen, config);

  auto* dil = app.add_subcommand("dilworth", "Dilworth truncation");
  dil->add_option("--n", config.n, "Uniform matroid U_{n,n}");
  dil->add_option("--matroid", config.matroid, "Matroid JSON instead of U_{n,n}");
  dil->add_option("--k", config.k, "Truncation index")->required();
  dil->add_flag("--relabel", config.relabel, "Relabel flats by complements in [n]");
  dil->add_flag("--geometric", config.geometric, "Also compute the geometric construction and compare");
  dil->add_option("--seed", config.seed, "Random seed");
  add_common(dil, config);

  auto* berg = app.add_subcommand("bergman", "Bergman fan chart and link graph");
  berg->add_option("--matroid", config.matroid, "Matroid JSON")->required();
  berg->add_flag("--smooth", config.smooth, "Smooth degree-2 vertices of the link");
  add_common(berg, config);

  auto* trop = app.add_subcommand("tropcheck", "Tropical Pluecker and incidence relations");
  trop->add_option("--p", config.p, "Tropical Pluecker vector JSON")->required();
  trop->add_option("--q", config.q, "Second vector for the incidence relations");
  add_common(trop, config);

  auto* ver = app.add_subcommand("verify-identities", "Exhaustive identity and certificate checks");
  ver->add_option("--n", config.n, "Ambient dimension")->required();
  ver->add_option("--d", config.d, "Line dimension parameter")->required();
  ver->add_flag("--inject-fault", config.inject_fault)->group("");
  add_common(ver, config);

  auto* cert = app.add_subcommand("certify-saturation", "Certificate that Q_C^m R_{A,B} lies in the incidence ideal");
  cert->add_option("--A", config.a_set, "Subset like \"4\"")->required();
  cert->add_option("--B", config.b_set, "Subset like \"2,3,5\"")->required();
  cert->add_option("--C", config.c_set, "Subset like \"1,2,3\"")->required();
  add_common(cert, config);

  auto* rep = app.add_subcommand("replay-certificate", "Re-expand a saved certificate");
  rep->add_option("--certificate", config.certificate, "Certificate JSON")->required();
  add_common(rep, config);

  auto* dot = app.add_subcommand("export-dot", "Graphviz export of the flat lattice or link graph");
  dot->add_option("--matroid", config.matroid, "Matroid JSON")->required();
  dot->add_flag("--lattice", config.lattice, "Lattice of flats");
  dot->add_flag("--link", config.link, "Link graph");
  dot->add_flag("--smooth", config.smooth, "Smooth the link graph");
  add_common(dot, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lxkit::commands::kExitInput;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    const auto result = lxkit::commands::run_command(config);
    lxkit::commands::write_artifacts(result, config);
    std::cout << result.report;
    return result.exit_code;
  } catch (const lxkit::Error& e) {
    std::cerr << lxkit::commands::error_json(e.what());
    return lxkit::commands::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << lxkit::commands::error_json(std::string("internal error: ") + e.what());
    return lxkit::commands::kExitInternal;
  }
}
