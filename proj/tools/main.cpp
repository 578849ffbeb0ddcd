#include <iostream>

#include <CLI11.hpp>

#include "theta_tools/commands.hpp"

int main(int argc, char** argv) {
  using namespace theta::tools;
  CLI::App app{"Indefinite theta forms: evaluation, modular transforms and identity verification"};
  app.require_subcommand(1);

  CommandOptions opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", opts.instance_path, "problem instance (JSON)");
    sub->add_option("--json-out", opts.json_out, "also write the JSON result to this file");
    sub->add_option("--tol", opts.tol, "summation tolerance");
    sub->add_option("--radius-max", opts.radius_max, "largest enumeration radius");
  };

  auto* eval = app.add_subcommand("eval", "cone sum (or theta with characteristic) at Z");
  add_common(eval);
  eval->add_option("--z", opts.z, "Z as \"re,im;re,im;...\"");

  auto* transform = app.add_subcommand("transform", "modular transform of the period matrix");
  add_common(transform);

  auto* split = app.add_subcommand("split-basis", "search for a Q-split basis");
  add_common(split);
  split->add_option("--bound", opts.bound, "max |entry| of N");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify);
  verify->add_option("--suite", opts.suite, "suite name or 'all'")->default_val("all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*eval) return cmd_eval(opts, std::cout, std::cerr);
  if (*transform) return cmd_transform(opts, std::cout, std::cerr);
  if (*split) return cmd_split_basis(opts, std::cout, std::cerr);
  return cmd_verify(opts, std::cout, std::cerr);
}
