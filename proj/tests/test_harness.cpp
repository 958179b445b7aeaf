#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rsmatch/error.hpp"
#include "rsmatch/experiment.hpp"
#include "rsmatch/generator.hpp"
#include "rsmatch/matcher.hpp"

using namespace rsm;

TEST_CASE("bipartite planted with no extras is exactly the planted matching") {
  const Graph g = generate_graph({GraphKind::BipartitePlanted, 8, {}, {}, {}, 1});
  CHECK(g.n() == 8);
  CHECK(g.m() == 4);
  REQUIRE(g.has_sides());
  for (Vertex i = 0; i < 4; ++i) CHECK(g.edges()[i] == Edge{i, static_cast<Vertex>(4 + i)});
  CHECK(max_matching_bipartite(g).size() == 4);
}

TEST_CASE("planted kinds hit the density target and keep mu = n/2") {
  const Graph b = generate_graph({GraphKind::BipartitePlanted, 40, 6.0, {}, {}, 3});
  CHECK(b.m() == 120);  // round(40*6/2)
  CHECK(max_matching(b).size() == 20);
  CHECK(validate(b).empty());

  const Graph p = generate_graph({GraphKind::GeneralPlanted, 40, 6.0, {}, {}, 3});
  CHECK(p.m() == 120);
  CHECK(max_matching(p).size() == 20);
  CHECK(validate(p).empty());
}

TEST_CASE("fixture kinds") {
  const Graph cycle = generate_graph({GraphKind::Cycle, 5, {}, {}, {}, 0});
  CHECK(cycle.m() == 5);
  CHECK(brute_force_mu(cycle) == 2);
  CHECK(max_matching(cycle).size() == 2);

  const Graph path = generate_graph({GraphKind::Path, 6, {}, {}, {}, 0});
  CHECK(path.m() == 5);
  CHECK(max_matching(path).size() == 3);

  const Graph clique = generate_graph({GraphKind::Clique, 6, {}, {}, {}, 0});
  CHECK(clique.m() == 15);
  CHECK(max_matching(clique).size() == 3);
}

TEST_CASE("erdos-renyi generation is deterministic in the seed") {
  const GeneratorSpec spec{GraphKind::ErdosRenyi, 100, {}, 0.1, {}, 42};
  const Graph a = generate_graph(spec);
  const Graph b = generate_graph(spec);
  CHECK(a.m() == 495);  // round(0.1 * 4950)
  REQUIRE(a.m() == b.m());
  for (std::int64_t i = 0; i < a.m(); ++i) CHECK(a.edges()[i] == b.edges()[i]);
  CHECK(validate(a).empty());

  GeneratorSpec other = spec;
  other.seed = 43;
  const Graph c = generate_graph(other);
  bool identical = a.m() == c.m();
  if (identical)
    for (std::int64_t i = 0; i < a.m(); ++i)
      if (!(a.edges()[i] == c.edges()[i])) {
        identical = false;
        break;
      }
  CHECK_FALSE(identical);
}

TEST_CASE("generator rejects inconsistent specs") {
  CHECK_THROWS_AS(static_cast<void>(generate_graph({GraphKind::BipartitePlanted, 7, {}, {}, {}, 0})),
                  Error);  // odd n
  CHECK_THROWS_AS(static_cast<void>(generate_graph({GraphKind::ErdosRenyi, 10, 3.0, 0.5, {}, 0})),
                  Error);  // two densities
  CHECK_THROWS_AS(static_cast<void>(generate_graph({GraphKind::ErdosRenyi, 10, {}, 1.5, {}, 0})),
                  Error);  // p > 1
  CHECK_THROWS_AS(static_cast<void>(generate_graph({GraphKind::ErdosRenyi, 10, {}, {}, 100, 0})),
                  Error);  // too many edges
  CHECK_THROWS_AS(static_cast<void>(generate_graph({GraphKind::Cycle, 2, {}, {}, {}, 0})), Error);
}

TEST_CASE("single edge experiment scores ratio 1") {
  const Graph g(2, {{0, 1}});
  ExperimentConfig cfg;
  cfg.trials = 1;
  const Report rep = run_experiment(g, cfg);
  REQUIRE(rep.trials.size() == 1);
  CHECK(rep.mu_exact == 1);
  CHECK(rep.trials[0].ratio == doctest::Approx(1.0));
  CHECK(rep.aggregate.ratio_min == doctest::Approx(1.0));
}

TEST_CASE("greedy baseline stays above half in every trial") {
  const Graph g = generate_graph({GraphKind::GeneralPlanted, 30, 5.0, {}, {}, 7});
  ExperimentConfig cfg;
  cfg.trials = 20;
  cfg.base_seed = 5;
  cfg.overrides.beta = 8;
  cfg.overrides.lambda = Rational::of(3, 20);
  const Report rep = run_experiment(g, cfg);
  for (const TrialRecord& rec : rep.trials) {
    CHECK(2 * rec.greedy_size >= rec.mu_exact);
    CHECK(rec.ratio <= 1.0);
    CHECK_FALSE(rec.params_derived);
  }
}

TEST_CASE("aggregates are consistent with the trial records") {
  const Graph g = generate_graph({GraphKind::BipartitePlanted, 32, 4.0, {}, {}, 9});
  ExperimentConfig cfg;
  cfg.trials = 12;
  cfg.base_seed = 3;
  cfg.overrides.beta = 16;
  cfg.overrides.lambda = Rational::of(1, 10);
  cfg.checks.verify_edcs = true;
  cfg.checks.potential_trace = true;
  const Report rep = run_experiment(g, cfg);
  REQUIRE(rep.trials.size() == 12);

  double lo = 2.0, hi = -1.0, sum = 0.0;
  std::int64_t space = 0, epochs = 0, moves = 0;
  for (const TrialRecord& rec : rep.trials) {
    lo = std::min(lo, rec.ratio);
    hi = std::max(hi, rec.ratio);
    sum += rec.ratio;
    space = std::max(space, rec.space_peak);
    epochs = std::max(epochs, rec.epochs);
    moves = std::max(moves, rec.moves);
    CHECK(rec.seed == (cfg.base_seed ^ static_cast<std::uint64_t>(&rec - rep.trials.data())));
  }
  CHECK(rep.aggregate.ratio_min == doctest::Approx(lo));
  CHECK(rep.aggregate.ratio_max == doctest::Approx(hi));
  CHECK(rep.aggregate.ratio_mean == doctest::Approx(sum / 12.0));
  CHECK(rep.aggregate.space_peak_max == space);
  CHECK(rep.aggregate.epochs_max == epochs);
  CHECK(rep.aggregate.moves_max == moves);
  CHECK(rep.aggregate.ratio_min <= rep.aggregate.ratio_p50);
  CHECK(rep.aggregate.ratio_p50 <= rep.aggregate.ratio_max);
}

TEST_CASE("reports are deterministic apart from wall time") {
  const Graph g = generate_graph({GraphKind::BipartitePlanted, 32, 4.0, {}, {}, 9});
  ExperimentConfig cfg;
  cfg.trials = 6;
  cfg.base_seed = 8;
  cfg.overrides.beta = 16;
  cfg.overrides.lambda = Rational::of(1, 10);
  auto strip = [](nlohmann::json j) {
    j["aggregate"].erase("wall_time_ms");
    return j.dump();
  };
  const std::string a = strip(report_to_json(run_experiment(g, cfg)));
  const std::string b = strip(report_to_json(run_experiment(g, cfg)));
  CHECK(a == b);

  cfg.jobs = 4;  // parallel trials gather in trial order
  const std::string c = strip(report_to_json(run_experiment(g, cfg)));
  CHECK(a == c);
}

TEST_CASE("csv is a flat projection of the trial records") {
  const Graph g(2, {{0, 1}});
  ExperimentConfig cfg;
  cfg.trials = 3;
  cfg.format = "csv";
  const std::string csv = report_to_csv(run_experiment(g, cfg));
  CHECK(csv.starts_with(
      "trial,seed,matching_size,mu_exact,ratio,greedy_size,greedy_ratio,h_size,x_size,"
      "epochs,moves,phase1_end_fraction,space_peak,fallback_used,params_derived\n"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}

TEST_CASE("concentration check near the epsilon->0 limit always passes") {
  const Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  // split lands on a single edge; dropping any one edge keeps mu(C3) = 1
  const double fraction = concentration_check(triangle, Rational::of(1, 1000000), 10, 3);
  CHECK(fraction == doctest::Approx(1.0));
}

TEST_CASE("concentration check rejects epsilon >= 1/2 and flags tiny mu") {
  const Graph g(2, {{0, 1}});
  CHECK_THROWS_AS(static_cast<void>(concentration_check(g, Rational::of(1, 2), 5, 1)), Error);
  bool warned = false;
  static_cast<void>(concentration_check(g, Rational::of(3, 10), 2, 1, &warned));
  CHECK(warned);  // mu=1 is far below 20 ln(n) eps^-2
}

TEST_CASE("concentration holds on a planted bipartite graph") {
  const Graph g = generate_graph({GraphKind::BipartitePlanted, 1000, 4.0, {}, {}, 13});
  bool warned = true;
  const double fraction = concentration_check(g, Rational::of(3, 10), 10, 7, &warned);
  CHECK(fraction == doctest::Approx(1.0));
}
