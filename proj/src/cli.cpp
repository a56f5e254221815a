#include "ramchord/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ramchord/chain_embedding.hpp"
#include "ramchord/constants.hpp"
#include "ramchord/extremal.hpp"
#include "ramchord/graph_io.hpp"
#include "ramchord/preparation.hpp"
#include "ramchord/ramsey.hpp"
#include "ramchord/regular_pairs.hpp"

namespace ramchord::cli {

using json = nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string result_digest(const json& result) { return sha256_hex(result.dump()); }

json manifest_to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"parameters", m.parameters},
          {"seed", m.seed ? json(*m.seed) : json(nullptr)},
          {"tool_version", m.tool_version},
          {"wall_seconds", m.wall_seconds},
          {"result_digest", m.result_digest}};
}

RunManifest manifest_from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.result_digest = j.at("result_digest").get<std::string>();
    return m;
  } catch (const json::exception& ex) {
    throw InvalidInput(std::string("malformed manifest: ") + ex.what());
  }
}

std::string format_table(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(headers.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  widen(headers);
  for (const auto& r : rows) widen(r);
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string cell = i < row.size() ? row[i] : "";
      line += cell;
      if (i + 1 < width.size()) line += std::string(width[i] - cell.size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit(headers);
  for (const auto& r : rows) emit(r);
  return out.str();
}

int cycle_ramsey_value(int n) {
  if (n < 3) throw InvalidInput("cycle length must be at least 3");
  if (n <= 4) return 6;
  return n % 2 == 0 ? 3 * n / 2 - 1 : 2 * n - 1;
}

namespace {

SearchLimits limits_of(const CommonOptions& c) {
  SearchLimits lim;
  lim.max_nodes = c.budget_nodes;
  lim.max_seconds = c.budget_seconds;
  lim.workers = std::max(1, c.workers);
  return lim;
}

std::uint64_t require_seed(const CommonOptions& c, const char* what) {
  if (!c.seed) throw InvalidInput(std::string(what) + " is randomized and requires --seed");
  return *c.seed;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

json read_json_arg(const std::string& text) {
  std::string body = text;
  std::error_code ec;
  if (!text.empty() && text.front() != '{' && std::filesystem::exists(text, ec)) {
    std::ifstream in(text);
    std::stringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& ex) {
    throw InvalidInput("malformed JSON in '" + text + "': " + ex.what());
  }
}

json classification(const GraphSpec& spec, int k_max) {
  const auto& g = spec.graph;
  const bool bip = bipartition(g).partition.has_value();
  const auto w = almost_bipartite_index(g, k_max);
  json out = {{"H", spec.label},
              {"graph6", to_graph6(g)},
              {"vertices", g.order()},
              {"edges", g.size()},
              {"bipartite", bip},
              {"index", w ? json(w->k) : json(nullptr)},
              {"index_witness", w ? json(w->removed) : json(nullptr)},
              {"k_max", k_max},
              {"max_degree", g.max_degree()},
              {"chords", spec.chords ? json(spec.chords->size()) : json(nullptr)}};
  return out;
}

std::string index_text(const json& c) {
  return c["index"].is_null() ? "> " + std::to_string(c["k_max"].get<int>()) : std::to_string(c["index"].get<int>());
}

json sweep_case(const std::string& label, const SweepArgs& args, const CommonOptions& common, json& diag) {
  const auto spec = parse_graph_spec(label);
  if (!spec.chords) throw InvalidInput("sweep cases must use the chord shorthand: " + label);
  const int n = spec.chords->cycle_length();
  json row = classification(spec, args.k_max);
  row["case"] = label;
  row["n"] = n;
  const int r_cycle = cycle_ramsey_value(n);
  // Comparison target: r(C_n) for even n, r(C_n) + k - 1 for odd n.
  std::optional<int> target;
  if (n % 2 == 0) target = r_cycle;
  else if (!row["index"].is_null()) target = r_cycle + row["index"].get<int>() - 1;
  row["r_cycle"] = r_cycle;
  row["target"] = target ? json(*target) : json(nullptr);

  int lower = r_cycle;
  std::string lower_source = "cycle subgraph";
  row["construction"] = nullptr;
  if (auto b = construction_lower_bound(spec.graph, args.k_max)) {
    row["construction"] = construction_bound_to_json(*b);
    if (b->certificate.verdict && b->lower_bound > lower) {
      lower = b->lower_bound;
      lower_source = b->name;
    }
  }
  row["lower_bound"] = {{"value", lower}, {"source", lower_source}};

  json upper = {{"status", "skipped"}, {"value", nullptr}};
  if (args.search) {
    const int cap = args.n_cap > 0 ? args.n_cap : 3 * spec.graph.order();
    upper["cap"] = cap;
    SearchLimits lim = limits_of(common);
    lim.workers = 1;
    try {
      const auto r = ramsey_number(spec.graph, std::max(cap, spec.graph.order()), lim);
      upper["status"] = "computed";
      upper["value"] = r.value;
      upper["witness_hex"] = r.lower.witness ? json(coloring_to_hex(*r.lower.witness)) : json(nullptr);
      diag[label] = {{"lower", stats_to_json(r.lower.stats)}, {"upper", stats_to_json(r.upper.stats)}};
    } catch (const ResourceLimitExceeded& ex) {
      upper["status"] = "budget_exceeded";
      upper["message"] = ex.what();
    } catch (const CapExceeded& ex) {
      upper["status"] = "cap_exceeded";
      upper["message"] = ex.what();
    }
  }
  row["upper_bound"] = upper;

  if (upper["status"] == "computed") row["monotone"] = upper["value"].get<int>() >= r_cycle;
  std::string outcome = "undecided";
  if (target && lower > *target) {
    outcome = "inequality certified";
  } else if (upper["status"] == "computed") {
    const int r = upper["value"].get<int>();
    if (!target) outcome = "computed";
    else if (r == *target) outcome = "equality";
    else outcome = r > *target ? "inequality computed" : "below target";
  }
  row["outcome"] = outcome;
  return row;
}

}  // namespace

CommandOutput cmd_ramsey(const RamseyArgs& args, const CommonOptions& common) {
  const auto spec = parse_graph_spec(args.pattern);
  const int n_max = args.n_max > 0 ? args.n_max : 4 * spec.graph.order();
  SearchLimits lim = limits_of(common);
  lim.checkpoint_path = args.checkpoint;
  const auto r = ramsey_number(spec.graph, n_max, lim);
  CommandOutput out;
  out.result = {{"H", spec.label},
                {"graph6", to_graph6(spec.graph)},
                {"r", r.value},
                {"lower", verdict_to_json(r.lower, spec.graph)},
                {"upper", verdict_to_json(r.upper, spec.graph)}};
  out.diagnostics = {{"lower", stats_to_json(r.lower.stats)}, {"upper", stats_to_json(r.upper.stats)}};
  out.headers = {"H", "r(H)", "witness N", "witness"};
  out.rows.push_back({spec.label, std::to_string(r.value), std::to_string(r.lower.n),
                      r.lower.witness ? coloring_to_hex(*r.lower.witness) : "-"});
  return out;
}

CommandOutput cmd_classify(const ClassifyArgs& args) {
  const auto spec = parse_graph_spec(args.pattern);
  CommandOutput out;
  out.result = classification(spec, args.k_max);
  out.headers = {"H", "bipartite", "index", "max degree", "|D|"};
  out.rows.push_back({spec.label, yes_no(out.result["bipartite"]), index_text(out.result),
                      std::to_string(spec.graph.max_degree()),
                      spec.chords ? std::to_string(spec.chords->size()) : "-"});
  return out;
}

std::vector<std::string> sweep_cases(const SweepArgs& args) {
  std::vector<std::string> cases = args.cases;
  if (args.n_min > 0 || args.n_max > 0) {
    if (args.n_min < 3 || args.n_max < args.n_min) throw InvalidInput("bad cycle length range");
    const std::vector<std::string> families = args.families.empty() ? std::vector<std::string>{"none"} : args.families;
    for (int n = args.n_min; n <= args.n_max; ++n) {
      for (const auto& f : families) {
        const std::string c = "C" + std::to_string(n);
        if (f == "none") cases.push_back(c);
        else if (f == "short") { if (n >= 4) cases.push_back(c + "+0-2"); }
        else if (f == "antipodal") { if (n >= 4) cases.push_back(c + "+0-" + std::to_string(n / 2)); }
        else if (f == "two_short") { if (n >= 7) cases.push_back(c + "+0-2+3-5"); }
        else throw InvalidInput("unknown chord family '" + f + "' (none, short, antipodal, two_short)");
      }
    }
  }
  std::vector<std::string> unique;
  for (const auto& c : cases) {
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
  }
  if (unique.empty()) throw InvalidInput("sweep needs cases or a cycle length range");
  return unique;
}

CommandOutput cmd_sweep(const SweepArgs& args, const CommonOptions& common) {
  const auto cases = sweep_cases(args);
  for (const auto& c : cases) {
    if (!parse_chord_shorthand(c)) throw InvalidInput("sweep cases must use the chord shorthand: " + c);
  }
  std::vector<json> rows(cases.size());
  std::vector<json> diags(cases.size(), json::object());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cases.size();) {
      try {
        rows[i] = sweep_case(cases[i], args, common, diags[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(common.workers, 1, static_cast<int>(cases.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CommandOutput out;
  out.result = {{"cases", rows}};
  out.headers = {"case", "bipartite", "index", "r(C_n)", "target", "lower", "source", "upper", "outcome"};
  bool partial = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& up = r["upper_bound"];
    std::string upper = up["status"] == "computed" ? std::to_string(up["value"].get<int>()) : up["status"].get<std::string>();
    partial = partial || up["status"] == "budget_exceeded" || up["status"] == "cap_exceeded";
    out.rows.push_back({r["case"], yes_no(r["bipartite"]), index_text(r), std::to_string(r["r_cycle"].get<int>()),
                        r["target"].is_null() ? "-" : std::to_string(r["target"].get<int>()),
                        std::to_string(r["lower_bound"]["value"].get<int>()), r["lower_bound"]["source"], upper,
                        r["outcome"]});
    out.diagnostics[cases[i]] = diags[i].contains(cases[i]) ? diags[i][cases[i]] : json(nullptr);
  }
  if (partial) {
    out.exit_code = kExitBudget;
    out.message = "some cases ran out of budget";
  }
  return out;
}

CommandOutput cmd_construct(const ConstructArgs& args) {
  ColoredCompleteGraph c;
  json meta = {{"kind", args.kind}};
  if (args.kind == "blocks") {
    if (args.blocks.empty()) throw InvalidInput("--blocks is required for kind 'blocks'");
    c = clique_block_coloring(args.blocks);
    meta["blocks"] = args.blocks;
  } else {
    ExtremalSpec spec{extremal_kind_from_string(args.kind), args.n, args.k};
    c = build_extremal(spec);
    meta["n"] = args.n;
    if (spec.kind == ExtremalKind::k_part) meta["k"] = args.k;
  }
  CommandOutput out;
  out.result = meta;
  out.result["coloring"] = coloring_to_json(c);
  out.result["hex"] = coloring_to_hex(c);
  out.headers = {"kind", "N", "red edges", "blue edges"};
  out.rows.push_back({args.kind, std::to_string(c.order()), std::to_string(c.edges_of(Color::red).size()),
                      std::to_string(c.edges_of(Color::blue).size())});
  return out;
}

CommandOutput cmd_certify(const CertifyArgs& args) {
  ColoredCompleteGraph c;
  if (!args.coloring.empty()) {
    auto j = read_json_arg(args.coloring);
    if (j.contains("coloring")) j = j["coloring"];
    try {
      c = coloring_from_json(j);
    } catch (const json::exception& ex) {
      throw InvalidInput(std::string("malformed colouring: ") + ex.what());
    }
  } else if (!args.construct_kind.empty()) {
    c = build_extremal({extremal_kind_from_string(args.construct_kind), args.n, args.k});
  } else {
    throw InvalidInput("certify needs --coloring or --construct");
  }
  if (args.mode != "structural" && args.mode != "search") throw InvalidInput("mode must be structural or search");
  const auto spec = parse_graph_spec(args.pattern);
  const auto cert =
      certify_lower_bound(c, spec.graph, args.mode == "search" ? CertifyMode::search : CertifyMode::structural);
  CommandOutput out;
  out.result = {{"H", spec.label}, {"certificate", certificate_to_json(cert)}};
  if (cert.verdict) out.result["lower_bound"] = c.order() + 1;
  out.headers = {"H", "N", "mode", "avoids H", "red", "blue"};
  out.rows.push_back({spec.label, std::to_string(c.order()), args.mode, yes_no(cert.verdict), cert.red.reason,
                      cert.blue.reason});
  return out;
}

CommandOutput cmd_prepare(const PrepareArgs& args, const CommonOptions& common) {
  SimpleGraph g;
  std::string label;
  if (!args.pattern.empty()) {
    const auto spec = parse_graph_spec(args.pattern);
    g = spec.graph;
    label = spec.label;
  } else {
    HostInstanceOptions opts;
    opts.n_min = args.n_min;
    opts.n_max = args.n_max;
    g = random_host_instance(require_seed(common, "prepare without a pattern"), opts);
    label = describe(g, chords_of(g));
  }
  const double z = args.z > 0 ? args.z : 10.0;
  const auto dec = prepare_host(g, z, args.k_max);
  const auto violations = verify_decomposition(g, dec);
  CommandOutput out;
  out.result = {{"H", label}, {"decomposition", decomposition_to_json(dec)}, {"violations", violations}};
  out.headers = {"H", "status", "z", "|H''|", "|H'|", "|H|", "connectors", "invariants"};
  out.rows.push_back({label, to_string(dec.status), fixed(z, 2), std::to_string(dec.stage_sizes.core),
                      std::to_string(dec.stage_sizes.parity), std::to_string(dec.stage_sizes.final),
                      std::to_string(dec.connectors.size()), violations.empty() ? "ok" : "violated"});
  return out;
}

CommandOutput cmd_embed(const EmbedArgs& args, const CommonOptions& common) {
  if (args.lengths.empty()) throw InvalidInput("embed needs --lengths");
  ClusterChain chain;
  if (!args.chain.empty()) {
    chain = chain_from_json(read_json_arg(args.chain));
  } else {
    chain = random_cluster_chain(require_seed(common, "embed without --chain"), args.ell, args.cluster_size,
                                 args.density);
  }
  chain.validate();
  const auto specs = typical_anchor_specs(chain, args.lengths, args.eps);
  const auto alloc = allocate_chunks(args.lengths, chain.ell(), chain.cluster_size(), args.eps);
  ChainEmbedOptions opts;
  opts.regularity_samples = args.regularity_samples;
  opts.seed = common.seed.value_or(0);
  const auto emb = chain_path_embed(chain, specs, alloc, args.eps, opts);
  const auto violations = verify_chain_embedding(chain, specs, alloc, emb);
  json spec_json = json::array();
  for (const auto& s : specs) spec_json.push_back({{"length", s.length}, {"start", s.start}, {"end", s.end}});
  CommandOutput out;
  out.result = {{"ell", chain.ell()},
                {"cluster_size", chain.cluster_size()},
                {"specs", spec_json},
                {"allocation", allocation_to_json(alloc)},
                {"embedding", chain_embedding_to_json(emb)},
                {"violations", violations}};
  out.headers = {"path", "length", "start", "end", "chunks", "verified"};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::string chunks;
    for (int q : alloc.q[i]) chunks += (chunks.empty() ? "" : ",") + std::to_string(q);
    out.rows.push_back({std::to_string(i), std::to_string(specs[i].length), std::to_string(specs[i].start),
                        std::to_string(specs[i].end), chunks, violations.empty() ? "yes" : "no"});
  }
  return out;
}

CommandOutput cmd_constants(const ConstantsArgs& args) {
  const auto p = paper_constants(args.delta, args.k, args.c2, args.m_reg, args.n_even, args.n_benevides, args.n_reg);
  CommandOutput out;
  out.result = parameters_to_json(p);
  out.result["all_checks_hold"] = p.all_checks_hold();
  out.headers = {"quantity", "value"};
  const std::pair<const char*, const LogReal*> values[] = {{"eps", &p.eps}, {"beta", &p.beta}, {"xi", &p.xi},
                                                           {"gamma", &p.gamma}, {"d", &p.d}, {"m_reg", &p.m_reg},
                                                           {"c", &p.c}, {"n0", &p.n0}};
  for (const auto& [name, v] : values) out.rows.push_back({name, v->scientific()});
  for (const auto& c : p.checks) {
    out.rows.push_back({c.name, std::string(c.holds ? "holds" : "fails") + (c.required ? "" : " (informational)")});
  }
  return out;
}

CommandOutput cmd_allocate(const AllocateArgs& args) {
  const auto alloc = allocate_chunks(args.lengths, args.ell, args.cluster_size, args.eps);
  const auto violations = allocation_violations(alloc, args.lengths, args.cluster_size, args.eps);
  CommandOutput out;
  out.result = allocation_to_json(alloc);
  out.result["lengths"] = args.lengths;
  out.result["violations"] = violations;
  out.headers = {"path", "length", "chunks"};
  for (std::size_t i = 0; i < alloc.q.size(); ++i) {
    std::string chunks;
    for (int q : alloc.q[i]) chunks += (chunks.empty() ? "" : ",") + std::to_string(q);
    out.rows.push_back({std::to_string(i), std::to_string(args.lengths[i]), chunks});
  }
  return out;
}

json run_to_json(const Run& run) {
  return {{"manifest", manifest_to_json(run.manifest)}, {"result", run.output.result}, {"diagnostics", run.output.diagnostics}};
}

void write_run(const Run& run, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto base = fs::path(dir) / run.manifest.command;
  std::ofstream(base.string() + ".manifest.json") << manifest_to_json(run.manifest).dump(2) << '\n';
  std::ofstream(base.string() + ".result.json")
      << json{{"result", run.output.result}, {"diagnostics", run.output.diagnostics}}.dump(2) << '\n';
}

namespace detail {

std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

double seconds_since_start(std::int64_t start_ns) { return static_cast<double>(now_ns() - start_ns) * 1e-9; }

int classify_exception(std::exception_ptr ep, std::string& kind, std::string& what) {
  try {
    std::rethrow_exception(ep);
  } catch (const AllocationError& ex) {
    kind = std::string("allocation_") + to_string(ex.kind());
    what = ex.what();
    return kExitInvalid;
  } catch (const InvalidInput& ex) {
    kind = "invalid_input";
    what = ex.what();
    return kExitInvalid;
  } catch (const json::exception& ex) {
    kind = "invalid_input";
    what = ex.what();
    return kExitInvalid;
  } catch (const ResourceLimitExceeded& ex) {
    kind = "budget_exceeded";
    what = ex.what();
    return kExitBudget;
  } catch (const CapExceeded& ex) {
    kind = "cap_exceeded";
    what = ex.what();
    return kExitBudget;
  } catch (const ChainEmbedError& ex) {
    kind = "search_exhausted";
    what = ex.what();
    return kExitBudget;
  } catch (const std::exception& ex) {
    kind = "internal_error";
    what = ex.what();
    return kExitCrash;
  } catch (...) {
    kind = "internal_error";
    what = "unknown exception";
    return kExitCrash;
  }
}

CommandOutput error_output(int code, const std::string& kind, const std::string& what) {
  CommandOutput out;
  out.exit_code = code;
  out.message = what;
  out.result = {{"error", kind}, {"message", what}};
  out.headers = {"error", "message"};
  out.rows.push_back({kind, what});
  return out;
}

Run finish(const std::string& command, json parameters, std::optional<std::uint64_t> seed, double seconds,
           CommandOutput output) {
  Run run;
  run.manifest.command = command;
  run.manifest.parameters = std::move(parameters);
  run.manifest.seed = seed;
  run.manifest.wall_seconds = seconds;
  run.manifest.result_digest = result_digest(output.result);
  run.output = std::move(output);
  return run;
}

}  // namespace detail

}  // namespace ramchord::cli
