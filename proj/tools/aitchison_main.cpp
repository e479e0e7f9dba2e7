#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include "aitchison/cli.hpp"

namespace {

bool stderr_color() {
  return std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO) == 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace aitchison;

  CLI::App app{"Aitchison-geometry decomposition of square probability tables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  cli::DecomposeOptions decompose;
  std::string output, emit;
  auto* dec = app.add_subcommand("decompose", "Decompose a count table and write the JSON report");
  dec->add_option("--input,-i", decompose.input, "Counts CSV (optional header row and label column)")
      ->required();
  dec->add_option("--smoothing", decompose.smoothing, "reject | pseudocount | pseudocount=<alpha>")
      ->capture_default_str();
  dec->add_option("--output,-o", output, "Write the JSON report here instead of stdout");
  dec->add_option("--emit-tables", emit, "Also write every table and array as CSV into this directory");
  dec->add_option("--percent-decimals", decompose.percent_decimals, "Decimals for percent arrays in CSV")
      ->capture_default_str();

  std::string sizes = "2..6";
  VerifyOptions verify;
  auto* ver = app.add_subcommand("verify", "Run the built-in verification suite");
  ver->add_option("--sizes", sizes, "Table sizes: 2..6, 4 or 2,3,5")->capture_default_str();
  ver->add_option("--trials", verify.trials, "Candidates per minimality probe")->capture_default_str();
  ver->add_option("--seed", verify.seed, "Root seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  cli::Diagnostics diag{std::cerr, stderr_color()};
  if (dec->parsed()) {
    if (!output.empty()) decompose.output = output;
    if (!emit.empty()) decompose.emit_tables = emit;
    return cli::run_decompose(decompose, std::cout, diag);
  }
  try {
    verify.sizes = cli::parse_sizes(sizes);
  } catch (const Error& e) {
    diag.error(e.what());
    return cli::kExitInput;
  }
  return cli::run_verify(verify, std::cout, diag);
}
