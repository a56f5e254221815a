#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ramchord/cli.hpp"
#include "ramchord/graph.hpp"

using namespace ramchord::cli;
using nlohmann::json;

namespace {

int run_binary(const std::string& args) {
  const std::string cmd = std::string(RAMCHORD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Run ramsey_run(const std::string& h, int workers) {
  CommonOptions c;
  c.workers = workers;
  RamseyArgs a;
  a.pattern = h;
  return run_command("ramsey", {{"H", h}}, std::nullopt, [&] { return cmd_ramsey(a, c); });
}

}  // namespace

TEST_CASE("sha256 test vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(result_digest(json{{"b", 1}, {"a", 2}}) == result_digest(json{{"a", 2}, {"b", 1}}));
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.command = "embed";
  m.parameters = {{"ell", 6}};
  m.seed = 42;
  m.wall_seconds = 1.5;
  m.result_digest = "00ff";
  const auto back = manifest_from_json(manifest_to_json(m));
  CHECK(back.command == m.command);
  CHECK(back.parameters == m.parameters);
  CHECK(back.seed == m.seed);
  CHECK(back.tool_version == kToolVersion);
  CHECK(back.result_digest == m.result_digest);
  m.seed.reset();
  CHECK_FALSE(manifest_from_json(manifest_to_json(m)).seed.has_value());
  CHECK_THROWS_AS(manifest_from_json(json{{"command", "x"}}), ramchord::InvalidInput);
}

TEST_CASE("cycle formulas") {
  CHECK(cycle_ramsey_value(3) == 6);
  CHECK(cycle_ramsey_value(4) == 6);
  CHECK(cycle_ramsey_value(5) == 9);
  CHECK(cycle_ramsey_value(6) == 8);
  CHECK(cycle_ramsey_value(7) == 13);
  CHECK(cycle_ramsey_value(10) == 14);
}

TEST_CASE("ramsey command") {
  const auto r4 = ramsey_run("C4", 1);
  const auto r5 = ramsey_run("C5", 1);
  const auto r6 = ramsey_run("C6", 1);
  CHECK(r4.output.result["r"] == 6);
  CHECK(r5.output.result["r"] == 9);
  CHECK(r6.output.result["r"] == 8);
  CHECK(r6.output.exit_code == kExitOk);
  CHECK_FALSE(r6.output.result["lower"]["witness"].is_null());
  // The digest covers the verdicts only, so it is the same for any worker count.
  CHECK(ramsey_run("C5", 3).manifest.result_digest == r5.manifest.result_digest);

  CommonOptions tiny;
  tiny.budget_nodes = 500;
  RamseyArgs a{"C7", 0, ""};
  const auto over = run_command("ramsey", {}, std::nullopt, [&] { return cmd_ramsey(a, tiny); });
  CHECK(over.output.exit_code == kExitBudget);
  CHECK(over.output.result["error"] == "budget_exceeded");
  RamseyArgs capped{"C6", 7, ""};
  const auto cap = run_command("ramsey", {}, std::nullopt, [&] { return cmd_ramsey(capped, CommonOptions{}); });
  CHECK(cap.output.exit_code == kExitBudget);
  RamseyArgs bad{"C5+0-9", 0, ""};
  CHECK(run_command("ramsey", {}, std::nullopt, [&] { return cmd_ramsey(bad, CommonOptions{}); }).output.exit_code ==
        kExitInvalid);
}

TEST_CASE("classify command") {
  auto c = cmd_classify({"C6+0-3", 8}).result;
  CHECK(c["bipartite"] == true);
  CHECK(c["index"] == 0);
  CHECK(c["chords"] == 1);
  c = cmd_classify({"C5", 8}).result;
  CHECK(c["index"] == 1);
  CHECK(c["chords"] == 0);
  c = cmd_classify({"C13+0-2+3-5", 8}).result;
  CHECK(c["index"] == 2);
  CHECK(c["max_degree"] == 3);
  c = cmd_classify({"C13+0-2+3-5", 1}).result;
  CHECK(c["index"].is_null());
}

TEST_CASE("sweep command") {
  SweepArgs a;
  a.n_min = 5;
  a.n_max = 7;
  a.families = {"none", "short", "two_short"};
  a.cases = {"C6+0-3"};
  CHECK(sweep_cases(a) == std::vector<std::string>{"C6+0-3", "C5", "C5+0-2", "C6", "C6+0-2", "C7", "C7+0-2",
                                                   "C7+0-2+3-5"});
  a.families = {"bogus"};
  CHECK_THROWS_AS(sweep_cases(a), ramchord::InvalidInput);

  SweepArgs certify_only;
  certify_only.cases = {"C6+0-2", "C6+0-3", "C13+0-2+3-5"};
  certify_only.search = false;
  const auto out = cmd_sweep(certify_only, CommonOptions{});
  const auto& rows = out.result["cases"];
  CHECK(rows[0]["lower_bound"]["value"] == 11);
  CHECK(rows[0]["target"] == 8);
  CHECK(rows[0]["outcome"] == "inequality certified");
  CHECK(rows[1]["outcome"] == "undecided");
  CHECK(rows[2]["target"] == 26);
  CHECK(rows[2]["lower_bound"]["value"] == 26);
  CHECK(rows[2]["lower_bound"]["source"] == "odd_maxcut_plus_vertex");
  CHECK(out.exit_code == kExitOk);

  SweepArgs search;
  search.cases = {"C6+0-3", "C5", "C4"};
  CommonOptions one, three;
  three.workers = 3;
  const auto s1 = run_command("sweep", {}, std::nullopt, [&] { return cmd_sweep(search, one); });
  const auto s3 = run_command("sweep", {}, std::nullopt, [&] { return cmd_sweep(search, three); });
  CHECK(s1.manifest.result_digest == s3.manifest.result_digest);
  const auto& r = s1.output.result["cases"];
  CHECK(r[0]["upper_bound"]["value"] == 8);
  CHECK(r[0]["monotone"] == true);
  CHECK(r[0]["outcome"] == "equality");
  CHECK(r[1]["outcome"] == "equality");
  CHECK(r[2]["case"] == "C4");

  // Budget exhaustion is recorded per case and the sweep continues.
  SweepArgs tight;
  tight.cases = {"C7", "C4"};
  CommonOptions budget;
  budget.budget_nodes = 20000;
  const auto partial = cmd_sweep(tight, budget);
  CHECK(partial.exit_code == kExitBudget);
  CHECK(partial.result["cases"][0]["upper_bound"]["status"] == "budget_exceeded");
  CHECK(partial.result["cases"][1]["upper_bound"]["status"] == "computed");
}

TEST_CASE("construct and certify commands") {
  const auto c = cmd_construct({"even_maxcut", 6, 0, {}});
  CHECK(c.result["coloring"]["N"] == 10);
  const auto blocks = cmd_construct({"blocks", 0, 0, {3, 2}});
  CHECK(blocks.result["coloring"]["N"] == 5);
  CHECK_THROWS_AS(cmd_construct({"blocks", 0, 0, {}}), ramchord::InvalidInput);

  CertifyArgs a;
  a.pattern = "C6+0-2";
  a.construct_kind = "even_maxcut";
  a.n = 6;
  for (const char* mode : {"structural", "search"}) {
    a.mode = mode;
    const auto out = cmd_certify(a);
    CHECK(out.result["certificate"]["verdict"] == true);
    CHECK(out.result["lower_bound"] == 11);
  }
  CertifyArgs inline_json;
  inline_json.pattern = "C6";
  inline_json.coloring = c.result["coloring"].dump();
  inline_json.mode = "search";
  CHECK(cmd_certify(inline_json).result["certificate"]["verdict"] == false);
  inline_json.coloring = "{not json";
  CHECK_THROWS_AS(cmd_certify(inline_json), ramchord::InvalidInput);
}

TEST_CASE("prepare, embed, constants and allocate commands") {
  CommonOptions seeded;
  seeded.seed = 7;
  PrepareArgs p;
  const auto prep = cmd_prepare(p, seeded);
  CHECK(prep.result["violations"].empty());
  CHECK_THROWS_AS(cmd_prepare(p, CommonOptions{}), ramchord::InvalidInput);

  EmbedArgs e;
  e.ell = 6;
  e.lengths = {19, 21, 19};
  const auto first = run_command("embed", {}, seeded.seed, [&] { return cmd_embed(e, seeded); });
  const auto again = run_command("embed", {}, seeded.seed, [&] { return cmd_embed(e, seeded); });
  CHECK(first.output.exit_code == kExitOk);
  CHECK(first.output.result["violations"].empty());
  CHECK(first.manifest.result_digest == again.manifest.result_digest);
  CommonOptions other;
  other.seed = 8;
  CHECK(run_command("embed", {}, other.seed, [&] { return cmd_embed(e, other); }).manifest.result_digest !=
        first.manifest.result_digest);

  const auto k = cmd_constants({10, 4, 1.0, 1.0, 1.0, 1.0, 1.0});
  CHECK(k.result["all_checks_hold"] == true);

  const auto alloc = cmd_allocate({{11, 11, 11}, 6, 14, 0.0015});
  CHECK(alloc.result["q"] == json{{1, 3, 1, 5, 1}, {1, 5, 1, 3, 1}, {1, 5, 1, 3, 1}});
  for (const auto& [args, kind] : std::vector<std::pair<AllocateArgs, std::string>>{
           {{{11}, 5, 14, 0.0015}, "allocation_parity"},
           {{{3}, 4, 14, 0.0015}, "allocation_floor"},
           {{{41}, 4, 14, 0.0015}, "allocation_capacity"}}) {
    const auto run = run_command("allocate", {}, std::nullopt, [&] { return cmd_allocate(args); });
    CHECK(run.output.exit_code == kExitInvalid);
    CHECK(run.output.result["error"] == kind);
  }
}

TEST_CASE("table formatting") {
  const auto t = format_table({"a", "long header"}, {{"xyz", "1"}, {"q", "22"}});
  CHECK(t == "a    long header\nxyz  1\nq    22\n");
}

TEST_CASE("binary exit codes and manifests") {
  CHECK(run_binary("classify C5") == kExitOk);
  CHECK(run_binary("classify C5+0-9") == kExitInvalid);
  CHECK(run_binary("ramsey C7 --budget-nodes 500") == kExitBudget);
  CHECK(run_binary("allocate --lengths 11 --ell 5 --cluster-size 14") == kExitInvalid);
  CHECK(run_binary("--format bogus classify C5") == kExitInvalid);
  CHECK(run_binary("") == kExitInvalid);

  const auto dir = std::filesystem::temp_directory_path() / "ramchord_cli_test";
  std::filesystem::remove_all(dir);
  std::string digests[2];
  for (auto& d : digests) {
    REQUIRE(run_binary("--seed 3 --out " + dir.string() + " embed --ell 4 --cluster-size 60 --lengths 13,15") == 0);
    std::ifstream in(dir / "embed.manifest.json");
    const auto m = manifest_from_json(json::parse(in));
    CHECK(m.seed == 3u);
    CHECK(m.command == "embed");
    d = m.result_digest;
  }
  CHECK(digests[0] == digests[1]);
  std::ifstream in(dir / "embed.result.json");
  CHECK(result_digest(json::parse(in)["result"]) == digests[0]);
  std::filesystem::remove_all(dir);
}
