// Command-line front end: ingest N-Triples into a workspace, build the
// neighborhood index, compute planner statistics and dataset metrics,
// generate query workloads, tune the planner, and run template queries.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rdfh/errors.hpp"
#include "rdfh/matcher.hpp"
#include "rdfh/metrics.hpp"
#include "rdfh/ni_index.hpp"
#include "rdfh/ntriples.hpp"
#include "rdfh/planner.hpp"
#include "rdfh/query.hpp"
#include "rdfh/workload.hpp"
#include "rdfh/workspace.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// The id map borrows the graph, so the graph needs a stable address.
struct LoadedWorkspace {
  std::unique_ptr<rdfh::RdfGraph> graph_ptr;
  rdfh::IdMap idmap;
  rdfh::NiIndex index;
  rdfh::RdfGraph& graph;
};

LoadedWorkspace load_all(const std::string& ws) {
  auto g = std::make_unique<rdfh::RdfGraph>(rdfh::load_graph(ws));
  if (!rdfh::has_index(ws))
    throw rdfh::Error("workspace has no index; run `rdfh index` first");
  auto loaded = rdfh::load_index(ws, *g);
  rdfh::RdfGraph& ref = *g;
  return LoadedWorkspace{std::move(g), std::move(loaded.idmap),
                         std::move(loaded.index), ref};
}

json decision_json(const rdfh::PlanDecision& d) {
  json o;
  o["use_pruning"] = d.use_pruning;
  o["max_iterations"] = d.max_iterations;
  o["est_joins"] = d.est_joins;
  o["max_selectivity"] = d.max_selectivity;
  if (d.unmatched_keyword) o["unmatched_keyword"] = true;
  return o;
}

json stats_json(const rdfh::MatchStats& s) {
  json o;
  o["matches"] = 0;  // caller overwrites
  o["mode"] = s.used_pruning ? "prune" : "noprune";
  o["initial_candidates"] = s.initial_candidates;
  o["active_candidates"] = s.active_candidates;
  o["dtrees"] = s.dtree_count;
  o["peak_rows"] = s.peak_rows;
  o["connectivity_evaluations"] = s.connectivity_evaluations;
  o["connectivity_memo_hits"] = s.connectivity_memo_hits;
  o["connectivity_ns"] = s.connectivity_ns;
  o["total_ns"] = s.total_ns;
  if (s.disconnected_join) o["disconnected_join"] = true;
  if (s.paths_truncated) o["paths_truncated"] = true;
  return o;
}

std::uint64_t median3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

std::vector<fs::path> list_templates(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw rdfh::Error("no .json templates in " + dir);
  return files;
}

int run(int argc, char** argv) {
  CLI::App app{"template matching over RDF graphs with optional "
               "signature-based pruning"};
  app.require_subcommand(1);

  std::string ws = ".";
  app.add_option("-w,--workspace", ws, "workspace directory")
      ->capture_default_str();

  // --- ingest ---
  auto* cmd_ingest = app.add_subcommand(
      "ingest", "parse an N-Triples file into a fresh workspace");
  std::string input_file;
  cmd_ingest->add_option("file", input_file, "N-Triples input")->required();

  // --- index ---
  auto* cmd_index =
      app.add_subcommand("index", "build the neighborhood interval index");
  unsigned dmax = 3, binning = 5;
  bool vertex_cover = false;
  auto* dmax_opt = cmd_index->add_option("--dmax", dmax, "index radius")
                       ->check(CLI::IsMember({1, 2, 3}))
                       ->capture_default_str();
  cmd_index
      ->add_flag("--vertex-cover", vertex_cover,
                 "mixed radius: 2 on a vertex cover, 1 elsewhere")
      ->excludes(dmax_opt);
  cmd_index->add_option("--binning", binning, "max ids per index entry")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // --- profile ---
  auto* cmd_profile =
      app.add_subcommand("profile", "dataset metrics (coherence, specialty, "
                         "literal diversity)");
  std::size_t profile_sample = 100000;
  std::uint64_t profile_seed = 0;
  bool object_side = false, include_zeros = false;
  cmd_profile
      ->add_option("--sample", profile_sample,
                   "attribute edges sampled for diversity")
      ->capture_default_str();
  cmd_profile->add_option("--seed", profile_seed, "sampling seed")
      ->capture_default_str();
  cmd_profile->add_flag("--object-side", object_side,
                        "specialty over objects instead of subjects");
  cmd_profile->add_flag("--include-zeros", include_zeros,
                        "specialty counts cover every resource");

  // --- stats ---
  auto* cmd_stats =
      app.add_subcommand("stats", "planner statistics (predicate shares, "
                         "literal prefix selectivity)");
  unsigned ngram = 5;
  std::size_t literal_cap = 0;
  std::uint64_t stats_seed = 0;
  cmd_stats->add_option("--ngram", ngram, "default keyword length")
      ->check(CLI::Range(1u, rdfh::kMaxNgram))
      ->capture_default_str();
  cmd_stats
      ->add_option("--sample", literal_cap,
                   "cap on distinct literals scanned per predicate (0 = all)")
      ->capture_default_str();
  cmd_stats->add_option("--seed", stats_seed, "sampling seed")
      ->capture_default_str();

  // --- gen-queries ---
  auto* cmd_gen = app.add_subcommand(
      "gen-queries", "generate a workload of query templates");
  unsigned gen_size = 4;
  std::size_t gen_count = 10;
  std::uint64_t gen_seed = 0;
  double cedge_prob = 0.0;
  std::string out_dir = "queries";
  cmd_gen->add_option("--size", gen_size, "nodes per template")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_gen->add_option("--count", gen_count, "number of templates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_gen->add_option("--seed", gen_seed, "generator seed")
      ->capture_default_str();
  cmd_gen
      ->add_option("--cedge-prob", cedge_prob,
                   "chance an edge becomes a connection edge")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd_gen->add_option("-o,--out", out_dir, "output directory")
      ->capture_default_str();

  // --- tune ---
  auto* cmd_tune = app.add_subcommand(
      "tune", "measure a workload and fit the decision thresholds");
  std::string tune_dir;
  cmd_tune->add_option("--queries", tune_dir, "directory of template JSONs")
      ->required();

  // --- query ---
  auto* cmd_query = app.add_subcommand("query", "match one template");
  std::string template_file, mode = "auto";
  bool want_paths = false, explain = false, invert_cedges = false;
  cmd_query->add_option("--template", template_file, "template JSON")
      ->required();
  cmd_query->add_option("--mode", mode, "auto, prune, or noprune")
      ->check(CLI::IsMember({"auto", "prune", "noprune"}))
      ->capture_default_str();
  cmd_query->add_flag("--paths", want_paths,
                      "report shortest paths for connection edges");
  cmd_query->add_flag("--explain", explain, "print the plan decision");
  cmd_query->add_flag("--invert-cedge-order", invert_cedges,
                      "apply intra-component connection edges first");

  // --- bench ---
  auto* cmd_bench =
      app.add_subcommand("bench", "time a workload in one or more modes");
  std::string bench_dir;
  std::vector<std::string> bench_modes = {"auto", "prune", "noprune"};
  bool parallel = false;
  cmd_bench->add_option("--queries", bench_dir, "directory of template JSONs")
      ->required();
  cmd_bench->add_option("--modes", bench_modes, "modes to time")
      ->delimiter(',')
      ->capture_default_str();
  cmd_bench->add_flag("--parallel", parallel, "run queries concurrently");

  CLI11_PARSE(app, argc, argv);

  if (*cmd_ingest) {
    rdfh::RdfGraph g = rdfh::parse_ntriples_file(input_file);
    rdfh::init_workspace(ws, g);
    auto report = rdfh::classify(g);
    json out;
    out["workspace"] = ws;
    out["nodes"] = g.node_count();
    out["triples"] = g.edge_count();
    out["resource_nodes"] = report.resource_nodes;
    out["literal_nodes"] = report.literal_nodes;
    out["relationship_edges"] = report.relationship_edges;
    out["attribute_edges"] = report.attribute_edges;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_index) {
    rdfh::RdfGraph g = rdfh::load_graph(ws);
    rdfh::IdMap ids(g);
    auto t0 = std::chrono::steady_clock::now();
    rdfh::NiIndex index =
        vertex_cover
            ? rdfh::build_vc_ni_index(g, ids, binning)
            : rdfh::build_ni_index(g, ids, {dmax, binning});
    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    rdfh::save_index(ws, g, ids, index);
    json out;
    out["variant"] = vertex_cover ? "vertex-cover" : "full";
    out["d_max"] = index.max_depth();
    out["binning"] = binning;
    out["entries"] = index.entry_count();
    out["ids"] = index.id_count();
    out["build_ns"] = ns;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_profile) {
    rdfh::RdfGraph g = rdfh::load_graph(ws);
    auto report = rdfh::classify(g);
    json out;
    out["nodes"] = g.node_count();
    out["triples"] = g.edge_count();
    out["resource_nodes"] = report.resource_nodes;
    out["literal_nodes"] = report.literal_nodes;
    out["relationship_edges"] = report.relationship_edges;
    out["attribute_edges"] = report.attribute_edges;

    rdfh::CoherenceReport co = rdfh::coherence_report(g);
    if (co.value) out["coherence"] = *co.value;
    else out["coherence"] = nullptr;
    out["types"] = json::array();
    constexpr std::size_t kTypeRows = 50;
    for (std::size_t i = 0; i < co.types.size() && i < kTypeRows; ++i) {
      const rdfh::TypeCoverage& tc = co.types[i];
      json row;
      row["type"] = tc.type;
      row["instances"] = tc.instances;
      row["predicates"] = tc.predicates;
      row["coverage"] = tc.coverage;
      out["types"].push_back(std::move(row));
    }
    if (co.types.size() > kTypeRows) out["types_truncated"] = true;

    rdfh::SpecialtyReport sp = rdfh::relationship_specialty_report(
        g, rdfh::SpecialtyOptions{object_side, include_zeros});
    if (sp.value) out["relationship_specialty"] = *sp.value;
    else out["relationship_specialty"] = nullptr;
    out["specialty_table"] = json::array();
    for (const rdfh::PredicateSpecialty& ps : sp.predicates) {
      json row;
      row["predicate"] = ps.label;
      row["edges"] = ps.edge_count;
      row["kurtosis"] = ps.kurtosis;
      out["specialty_table"].push_back(std::move(row));
    }

    std::size_t diversity =
        rdfh::literal_diversity(g, profile_sample, profile_seed);
    out["literal_diversity"] = diversity;
    out["diversity_sample"] = profile_sample;

    rdfh::BenefitThresholds bt;
    out["pruning_benefit"] = rdfh::benefit_name(
        rdfh::predict_benefit(co.value, sp.value, diversity, bt));
    out["benefit_thresholds"] = {{"coherence_below", bt.coherence_below},
                                 {"specialty_above", bt.specialty_above},
                                 {"diversity_above", bt.diversity_above}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_stats) {
    rdfh::RdfGraph g = rdfh::load_graph(ws);
    rdfh::DatasetStats stats =
        rdfh::compute_stats(g, ngram, literal_cap, stats_seed);
    rdfh::save_stats(ws, stats);
    json out;
    out["predicates"] = stats.predicates.size();
    out["min_selectivity"] = stats.min_selectivity();
    out["default_ngram"] = stats.default_ngram;
    out["saved"] = rdfh::WorkspacePaths{ws}.stats();
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_gen) {
    rdfh::RdfGraph g = rdfh::load_graph(ws);
    rdfh::IdMap ids(g);
    rdfh::WorkloadOptions options;
    options.size = gen_size;
    options.count = gen_count;
    options.seed = gen_seed;
    options.cedge_prob = cedge_prob;
    auto templates = rdfh::generate_workload(g, ids, options);
    fs::create_directories(out_dir);
    json out;
    out["count"] = templates.size();
    out["files"] = json::array();
    for (std::size_t i = 0; i < templates.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "q%03zu.json", i);
      fs::path path = fs::path(out_dir) / name;
      std::ofstream f(path);
      f << rdfh::template_to_json(templates[i]) << "\n";
      out["files"].push_back(path.string());
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_tune) {
    LoadedWorkspace w = load_all(ws);
    auto stats = rdfh::load_stats(ws);
    if (!stats)
      throw rdfh::Error(
          "tuning needs dataset statistics; run `rdfh stats` first");
    unsigned radius = w.index.max_depth();
    std::vector<rdfh::TuneSample> samples;
    for (const fs::path& file : list_templates(tune_dir)) {
      rdfh::QueryTemplate t = rdfh::parse_template_file(file.string());
      rdfh::TuneSample sample;
      auto est = rdfh::estimate_complexity(w.graph, w.idmap, t);
      sample.max_iterations = est.max_iterations;
      sample.est_joins = est.est_joins;
      for (std::uint32_t q = 0; q < t.nodes.size(); ++q)
        sample.max_selectivity =
            std::max(sample.max_selectivity,
                     rdfh::neighborhood_selectivity(*stats, t, q, radius).value);
      auto time_mode = [&](bool prune) {
        std::uint64_t runs[3];
        for (auto& r : runs) {
          rdfh::MatchOptions mo;
          mo.use_pruning = prune;
          r = rdfh::match_template(w.graph, w.idmap, w.index, t, mo)
                  .stats.total_ns;
        }
        return median3(runs[0], runs[1], runs[2]);
      };
      sample.prune_ns = time_mode(true);
      sample.noprune_ns = time_mode(false);
      samples.push_back(sample);
      std::cerr << file.filename().string() << ": prune " << sample.prune_ns
                << "ns, noprune " << sample.noprune_ns << "ns\n";
    }
    rdfh::TuneResult result = rdfh::tune_thresholds(samples);
    if (result.defaulted)
      std::cerr << "warning: no samples, keeping default thresholds\n";
    rdfh::save_thresholds(ws, result.thresholds);
    json out;
    out["tau1"] = result.thresholds.tau1;
    out["tau2"] = result.thresholds.tau2;
    out["tau3"] = result.thresholds.tau3;
    out["total_ns"] = result.total_ns;
    out["queries"] = samples.size();
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cmd_query) {
    LoadedWorkspace w = load_all(ws);
    rdfh::QueryTemplate t = rdfh::parse_template_file(template_file);

    rdfh::MatchOptions options;
    options.collect_paths = want_paths;
    options.invert_cedge_order = invert_cedges;
    json decision;
    if (mode == "auto") {
      auto stats = rdfh::load_stats(ws);
      if (!stats)
        throw rdfh::Error(
            "auto mode needs dataset statistics; run `rdfh stats` first");
      rdfh::Thresholds thresholds =
          rdfh::load_thresholds(ws).value_or(rdfh::Thresholds{});
      rdfh::PlanDecision d = rdfh::decide(w.graph, w.idmap, *stats, t,
                                          thresholds, w.index.max_depth());
      options.use_pruning = d.use_pruning;
      decision = decision_json(d);
      if (explain) std::cerr << "plan: " << decision.dump() << "\n";
    } else {
      options.use_pruning = mode == "prune";
    }

    rdfh::MatchResult result =
        rdfh::match_template(w.graph, w.idmap, w.index, t, options);

    for (std::size_t i = 0; i < result.matches.size(); ++i) {
      json line;
      json& m = line["match"];
      for (std::uint32_t q = 0; q < t.nodes.size(); ++q)
        m[t.nodes[q].name] = w.graph.label(result.matches[i][q]);
      if (want_paths) {
        line["paths"] = json::array();
        for (const rdfh::ConnectionPaths& cp : result.paths[i]) {
          json p;
          p["connection"] = cp.cedge;
          p["distance"] = cp.found.distance;
          p["paths"] = json::array();
          for (const auto& path : cp.found.paths) {
            json labels = json::array();
            for (rdfh::NodeId n : path) labels.push_back(w.graph.label(n));
            p["paths"].push_back(std::move(labels));
          }
          if (cp.found.truncated) p["truncated"] = true;
          line["paths"].push_back(std::move(p));
        }
      }
      std::cout << line.dump() << "\n";
    }
    json trailer;
    trailer["stats"] = stats_json(result.stats);
    trailer["stats"]["matches"] = result.matches.size();
    if (!decision.is_null()) trailer["stats"]["decision"] = decision;
    std::cout << trailer.dump() << "\n";
    return 0;
  }

  if (*cmd_bench) {
    LoadedWorkspace w = load_all(ws);
    auto stats = rdfh::load_stats(ws);
    rdfh::Thresholds thresholds =
        rdfh::load_thresholds(ws).value_or(rdfh::Thresholds{});
    bool want_auto = std::find(bench_modes.begin(), bench_modes.end(),
                               "auto") != bench_modes.end();
    if (want_auto && !stats)
      throw rdfh::Error(
          "auto mode needs dataset statistics; run `rdfh stats` first");

    auto files = list_templates(bench_dir);
    std::vector<rdfh::QueryTemplate> templates;
    templates.reserve(files.size());
    for (const fs::path& f : files)
      templates.push_back(rdfh::parse_template_file(f.string()));

    struct Row {
      std::string query, mode;
      std::uint64_t ns = 0;
      std::size_t matches = 0;
      bool pruned = false;
    };
    std::vector<Row> rows(files.size() * bench_modes.size());

    auto run_one = [&](std::size_t qi, std::size_t mi) {
      const rdfh::QueryTemplate& t = templates[qi];
      const std::string& m = bench_modes[mi];
      rdfh::MatchOptions options;
      if (m == "auto") {
        rdfh::PlanDecision d = rdfh::decide(w.graph, w.idmap, *stats, t,
                                            thresholds, w.index.max_depth());
        options.use_pruning = d.use_pruning;
      } else {
        options.use_pruning = m == "prune";
      }
      auto t0 = std::chrono::steady_clock::now();
      auto result = rdfh::match_template(w.graph, w.idmap, w.index, t, options);
      auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      Row& row = rows[qi * bench_modes.size() + mi];
      row.query = files[qi].filename().string();
      row.mode = m;
      row.ns = static_cast<std::uint64_t>(ns);
      row.matches = result.matches.size();
      row.pruned = options.use_pruning;
    };

    if (parallel) {
      std::atomic<std::size_t> next{0};
      std::size_t total = rows.size();
      unsigned nthreads =
          std::min<unsigned>(std::thread::hardware_concurrency(), 8);
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < std::max(1u, nthreads); ++i)
        pool.emplace_back([&] {
          for (std::size_t j = next++; j < total; j = next++)
            run_one(j / bench_modes.size(), j % bench_modes.size());
        });
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t qi = 0; qi < files.size(); ++qi)
        for (std::size_t mi = 0; mi < bench_modes.size(); ++mi)
          run_one(qi, mi);
    }

    json out;
    out["runs"] = json::array();
    std::map<std::string, std::uint64_t> mode_totals;
    for (const Row& row : rows) {
      json o;
      o["query"] = row.query;
      o["mode"] = row.mode;
      o["ns"] = row.ns;
      o["matches"] = row.matches;
      o["pruned"] = row.pruned;
      out["runs"].push_back(std::move(o));
      mode_totals[row.mode] += row.ns;
    }
    for (const auto& [m, total] : mode_totals)
      out["total_ns"][m] = total;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rdfh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
