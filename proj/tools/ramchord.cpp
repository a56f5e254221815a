#include <CLI11.hpp>

#include <iostream>

#include "ramchord/cli.hpp"

using namespace ramchord::cli;
using nlohmann::json;

namespace {

std::optional<std::uint64_t> seed_of(const CLI::Option* opt, std::uint64_t value) {
  return opt->count() > 0 ? std::optional<std::uint64_t>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey numbers of chorded cycles: search, certificates and embedding pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  std::uint64_t seed_value = 0;
  std::string format = "table";
  std::string out_dir;
  app.add_option("--budget-nodes", common.budget_nodes, "Search node budget (0 = unlimited)");
  app.add_option("--budget-seconds", common.budget_seconds, "Wall-clock budget in seconds (0 = unlimited)");
  auto* seed_opt = app.add_option("--seed", seed_value, "Seed for randomized commands");
  app.add_option("--workers", common.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--out", out_dir, "Directory for manifest and result files");

  RamseyArgs ramsey;
  auto* c_ramsey = app.add_subcommand("ramsey", "Compute r(H) by exhaustive search");
  c_ramsey->add_option("H", ramsey.pattern, "Pattern: C<n>(+u-v)*, graph6, JSON or file")->required();
  c_ramsey->add_option("--n-max", ramsey.n_max, "Largest N to try (default 4|H|)");
  c_ramsey->add_option("--checkpoint", ramsey.checkpoint, "Checkpoint file prefix for resumable search");

  ClassifyArgs classify;
  auto* c_classify = app.add_subcommand("classify", "Bipartiteness, almost-bipartite index, degree and chords");
  c_classify->add_option("H", classify.pattern)->required();
  c_classify->add_option("--k-max", classify.k_max);

  SweepArgs sweep;
  bool no_search = false;
  auto* c_sweep = app.add_subcommand("sweep", "Lower and upper bounds for chorded cycles against r(C_n)");
  c_sweep->add_option("cases", sweep.cases, "Chord shorthand cases");
  c_sweep->add_option("--n-min", sweep.n_min);
  c_sweep->add_option("--n-max", sweep.n_max);
  c_sweep->add_option("--families", sweep.families, "none, short, antipodal, two_short")->delimiter(',');
  c_sweep->add_option("--k-max", sweep.k_max);
  c_sweep->add_option("--n-cap", sweep.n_cap, "Largest N tried by the search (default 3|H|)");
  c_sweep->add_flag("--no-search", no_search, "Only certify lower bounds");

  ConstructArgs construct;
  auto* c_construct = app.add_subcommand("construct", "Build an extremal colouring");
  c_construct->add_option("kind", construct.kind, "even_maxcut, odd_maxcut_plus_vertex, k_part or blocks")->required();
  c_construct->add_option("--n", construct.n);
  c_construct->add_option("--k", construct.k);
  c_construct->add_option("--blocks", construct.blocks)->delimiter(',');

  CertifyArgs certify;
  auto* c_certify = app.add_subcommand("certify", "Check that a colouring avoids a monochromatic H");
  c_certify->add_option("H", certify.pattern)->required();
  c_certify->add_option("--coloring", certify.coloring, "Colouring JSON (file or inline)");
  c_certify->add_option("--construct", certify.construct_kind, "Extremal construction kind");
  c_certify->add_option("--n", certify.n);
  c_certify->add_option("--k", certify.k);
  c_certify->add_option("--mode", certify.mode)->check(CLI::IsMember({"structural", "search"}));

  PrepareArgs prepare;
  auto* c_prepare = app.add_subcommand("prepare", "Decompose a chorded cycle into core and connectors");
  c_prepare->add_option("H", prepare.pattern, "Chorded cycle (omit for a seeded random instance)");
  c_prepare->add_option("--z", prepare.z, "Segment length threshold (default 10)");
  c_prepare->add_option("--k-max", prepare.k_max);
  c_prepare->add_option("--n-min", prepare.n_min);
  c_prepare->add_option("--n-max", prepare.n_max);

  EmbedArgs embed;
  auto* c_embed = app.add_subcommand("embed", "Embed anchored paths through a cluster chain");
  c_embed->add_option("--chain", embed.chain, "ClusterChain JSON (omit for a seeded random chain)");
  c_embed->add_option("--ell", embed.ell);
  c_embed->add_option("--cluster-size", embed.cluster_size);
  c_embed->add_option("--density", embed.density);
  c_embed->add_option("--lengths", embed.lengths)->delimiter(',')->required();
  c_embed->add_option("--eps", embed.eps);
  c_embed->add_option("--regularity-samples", embed.regularity_samples);

  ConstantsArgs constants;
  auto* c_constants = app.add_subcommand("constants", "Constants of the embedding argument in log space");
  c_constants->add_option("--delta", constants.delta);
  c_constants->add_option("--k", constants.k);
  c_constants->add_option("--c2", constants.c2);
  c_constants->add_option("--m-reg", constants.m_reg);
  c_constants->add_option("--n-even", constants.n_even);
  c_constants->add_option("--n-benevides", constants.n_benevides);
  c_constants->add_option("--n-reg", constants.n_reg);

  AllocateArgs allocate;
  auto* c_allocate = app.add_subcommand("allocate", "Split path lengths into chunks per cluster pair");
  c_allocate->add_option("--lengths", allocate.lengths)->delimiter(',')->required();
  c_allocate->add_option("--ell", allocate.ell);
  c_allocate->add_option("--cluster-size", allocate.cluster_size)->required();
  c_allocate->add_option("--eps", allocate.eps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  common.seed = seed_of(seed_opt, seed_value);
  const json budget = {{"budget_nodes", common.budget_nodes}, {"budget_seconds", common.budget_seconds}};

  Run run;
  if (c_ramsey->parsed()) {
    run = run_command("ramsey", {{"H", ramsey.pattern}, {"n_max", ramsey.n_max}, {"budget", budget}}, common.seed,
                      [&] { return cmd_ramsey(ramsey, common); });
  } else if (c_classify->parsed()) {
    run = run_command("classify", {{"H", classify.pattern}, {"k_max", classify.k_max}}, common.seed,
                      [&] { return cmd_classify(classify); });
  } else if (c_sweep->parsed()) {
    sweep.search = !no_search;
    run = run_command("sweep",
                      {{"cases", sweep.cases}, {"n_min", sweep.n_min}, {"n_max", sweep.n_max},
                       {"families", sweep.families}, {"k_max", sweep.k_max}, {"n_cap", sweep.n_cap},
                       {"search", sweep.search}, {"budget", budget}},
                      common.seed, [&] { return cmd_sweep(sweep, common); });
  } else if (c_construct->parsed()) {
    run = run_command("construct",
                      {{"kind", construct.kind}, {"n", construct.n}, {"k", construct.k}, {"blocks", construct.blocks}},
                      common.seed, [&] { return cmd_construct(construct); });
  } else if (c_certify->parsed()) {
    run = run_command("certify",
                      {{"H", certify.pattern}, {"coloring", certify.coloring}, {"construct", certify.construct_kind},
                       {"n", certify.n}, {"k", certify.k}, {"mode", certify.mode}},
                      common.seed, [&] { return cmd_certify(certify); });
  } else if (c_prepare->parsed()) {
    run = run_command("prepare",
                      {{"H", prepare.pattern}, {"z", prepare.z}, {"k_max", prepare.k_max}, {"n_min", prepare.n_min},
                       {"n_max", prepare.n_max}},
                      common.seed, [&] { return cmd_prepare(prepare, common); });
  } else if (c_embed->parsed()) {
    run = run_command("embed",
                      {{"chain", embed.chain}, {"ell", embed.ell}, {"cluster_size", embed.cluster_size},
                       {"density", embed.density}, {"lengths", embed.lengths}, {"eps", embed.eps},
                       {"regularity_samples", embed.regularity_samples}},
                      common.seed, [&] { return cmd_embed(embed, common); });
  } else if (c_constants->parsed()) {
    run = run_command("constants",
                      {{"delta", constants.delta}, {"k", constants.k}, {"c2", constants.c2}, {"M_reg", constants.m_reg},
                       {"n_even", constants.n_even}, {"n_benevides", constants.n_benevides}, {"n_reg", constants.n_reg}},
                      common.seed, [&] { return cmd_constants(constants); });
  } else if (c_allocate->parsed()) {
    run = run_command("allocate",
                      {{"lengths", allocate.lengths}, {"ell", allocate.ell}, {"cluster_size", allocate.cluster_size},
                       {"eps", allocate.eps}},
                      common.seed, [&] { return cmd_allocate(allocate); });
  }

  if (format == "json") {
    std::cout << run_to_json(run).dump(2) << '\n';
  } else {
    std::cout << format_table(run.output.headers, run.output.rows);
    std::cout << "digest " << run.manifest.result_digest << '\n';
  }
  if (!run.output.message.empty()) std::cerr << "ramchord: " << run.output.message << '\n';
  if (!out_dir.empty()) {
    try {
      write_run(run, out_dir);
    } catch (const std::exception& ex) {
      std::cerr << "ramchord: cannot write to " << out_dir << ": " << ex.what() << '\n';
      return kExitCrash;
    }
  }
  return run.output.exit_code;
}
