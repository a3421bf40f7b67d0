// Microbenchmarks: index construction, per-node neighborhood checks, full
// template matching with and without pruning, and distance checks at the
// three index radii. The graph is a synthetic citation-style network so
// results are stable across runs.

#include <benchmark/benchmark.h>

#include <cstdio>
#include <string>
#include <vector>

#include "rdfh/graph.hpp"
#include "rdfh/idmap.hpp"
#include "rdfh/matcher.hpp"
#include "rdfh/ni_index.hpp"
#include "rdfh/query.hpp"
#include "rdfh/rng.hpp"

namespace {

rdfh::RdfGraph make_graph(std::size_t papers, std::uint64_t seed) {
  rdfh::Rng rng(seed);
  rdfh::GraphBuilder b;
  char buf[64];
  std::size_t authors = papers / 2 + 1;
  for (std::size_t p = 0; p < papers; ++p) {
    std::snprintf(buf, sizeof buf, "paper:%zu", p);
    std::string paper = buf;
    std::snprintf(buf, sizeof buf, "author:%zu", rng.below(authors));
    b.add_triple(paper, "dc:creator", buf, rdfh::NodeKind::Resource);
    std::snprintf(buf, sizeof buf, "Title %zu words %zu", p, rng.below(997));
    b.add_triple(paper, "dc:title", buf, rdfh::NodeKind::Literal);
    std::snprintf(buf, sizeof buf, "venue:%zu", rng.below(20));
    b.add_triple(paper, "swrc:booktitle", buf, rdfh::NodeKind::Resource);
    for (std::size_t c = 0; c < 3 && p > 0; ++c) {
      std::snprintf(buf, sizeof buf, "paper:%zu", rng.below(p));
      b.add_triple(paper, "cites", buf, rdfh::NodeKind::Resource);
    }
  }
  for (std::size_t a = 0; a < authors; ++a) {
    std::snprintf(buf, sizeof buf, "author:%zu", a);
    std::string author = buf;
    std::snprintf(buf, sizeof buf, "Name %zu", a);
    b.add_triple(author, "foaf:name", buf, rdfh::NodeKind::Literal);
  }
  return std::move(b).build();
}

struct Workbench {
  rdfh::RdfGraph graph;
  rdfh::IdMap ids;
  rdfh::NiIndex index;

  explicit Workbench(std::size_t papers, unsigned d_max = 3)
      : graph(make_graph(papers, 42)),
        ids(graph),
        index(rdfh::build_ni_index(graph, ids, {d_max, 5})) {}
};

Workbench& shared_bench() {
  static Workbench w(2000);
  return w;
}

rdfh::QueryTemplate citation_template() {
  rdfh::QueryTemplate t;
  t.nodes = {{"?p", "paper:"}, {"?a", "author:"}, {"?t", ""}, {"?q", "paper:"}};
  t.pedges = {{0, 1, "dc:creator"}, {0, 2, "dc:title"}, {3, 0, "cites"}};
  return t;
}

void BM_IndexBuild(benchmark::State& state) {
  auto papers = static_cast<std::size_t>(state.range(0));
  rdfh::RdfGraph g = make_graph(papers, 42);
  rdfh::IdMap ids(g);
  unsigned d_max = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    rdfh::NiIndex index = rdfh::build_ni_index(g, ids, {d_max, 5});
    benchmark::DoNotOptimize(index.entry_count());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.node_count()));
}
BENCHMARK(BM_IndexBuild)->Args({500, 2})->Args({500, 3})->Args({2000, 2});

void BM_VertexCoverIndexBuild(benchmark::State& state) {
  auto papers = static_cast<std::size_t>(state.range(0));
  rdfh::RdfGraph g = make_graph(papers, 42);
  rdfh::IdMap ids(g);
  for (auto _ : state) {
    rdfh::NiIndex index = rdfh::build_vc_ni_index(g, ids, 5);
    benchmark::DoNotOptimize(index.entry_count());
  }
}
BENCHMARK(BM_VertexCoverIndexBuild)->Arg(500)->Arg(2000);

void BM_NeighborhoodCheck(benchmark::State& state) {
  Workbench& w = shared_bench();
  auto profiles = rdfh::build_profiles(citation_template());
  const auto& profile = profiles[0];
  rdfh::NodeId n = 0;
  for (auto _ : state) {
    bool keep = rdfh::neighborhood_check(w.index, w.ids, n, profile);
    benchmark::DoNotOptimize(keep);
    n = (n + 1) % static_cast<rdfh::NodeId>(w.graph.node_count());
  }
}
BENCHMARK(BM_NeighborhoodCheck);

void BM_Match(benchmark::State& state) {
  Workbench& w = shared_bench();
  rdfh::QueryTemplate t = citation_template();
  rdfh::MatchOptions options;
  options.use_pruning = state.range(0) != 0;
  for (auto _ : state) {
    auto result = rdfh::match_template(w.graph, w.ids, w.index, t, options);
    benchmark::DoNotOptimize(result.matches.size());
  }
}
BENCHMARK(BM_Match)->Arg(0)->Arg(1)->ArgNames({"prune"});

void BM_Connectivity(benchmark::State& state) {
  unsigned d_max = static_cast<unsigned>(state.range(0));
  static Workbench* benches[4] = {};
  if (!benches[d_max]) benches[d_max] = new Workbench(2000, d_max);
  Workbench& w = *benches[d_max];
  rdfh::ConnectivityChecker checker(w.graph, w.ids, w.index);
  rdfh::Rng rng(7);
  auto n = static_cast<rdfh::NodeId>(w.graph.node_count());
  for (auto _ : state) {
    rdfh::NodeId x = static_cast<rdfh::NodeId>(rng.below(n));
    rdfh::NodeId y = static_cast<rdfh::NodeId>(rng.below(n));
    bool ok = checker.connected(x, y, 5, true);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_Connectivity)->Arg(1)->Arg(2)->Arg(3)->ArgNames({"dmax"});

}  // namespace

BENCHMARK_MAIN();
