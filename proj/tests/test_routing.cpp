#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "attmarl/fixtures.hpp"
#include "attmarl/routing.hpp"
#include "attmarl/routing_env.hpp"
#include "attmarl/rng.hpp"

using namespace attmarl;

namespace {

// Two disjoint single-link paths, one IE-pair. Used by several examples.
Topology two_path_topology(double c1 = 10.0, double c2 = 10.0) {
  nlohmann::json j = {
      {"nodes", {"S", "T"}},
      {"links",
       {{{"id", "L1"}, {"src", "S"}, {"dst", "T"}, {"capacity", c1}},
        {{"id", "L2"}, {"src", "S"}, {"dst", "T"}, {"capacity", c2}}}},
      {"ie_pairs",
       {{{"id", "S-T"},
         {"agent", 0},
         {"src", "S"},
         {"dst", "T"},
         {"paths", {{"L1"}, {"L2"}}},
         {"static_demand", 10.0}}}}};
  return topology_from_json(j);
}

// Two IE-pairs (two agents) sharing one middle link of capacity `shared_cap`.
Topology shared_link_topology(double shared_cap = 10.0) {
  nlohmann::json j = {
      {"nodes", {"A", "B", "M", "T"}},
      {"links",
       {{{"id", "AM"}, {"src", "A"}, {"dst", "M"}, {"capacity", 100.0}},
        {{"id", "BM"}, {"src", "B"}, {"dst", "M"}, {"capacity", 100.0}},
        {{"id", "MT"}, {"src", "M"}, {"dst", "T"}, {"capacity", shared_cap}},
        {{"id", "AT"}, {"src", "A"}, {"dst", "T"}, {"capacity", 100.0}},
        {{"id", "BT"}, {"src", "B"}, {"dst", "T"}, {"capacity", 100.0}}}},
      {"ie_pairs",
       {{{"id", "A-T"},
         {"agent", 0},
         {"src", "A"},
         {"dst", "T"},
         {"paths", {{"AM", "MT"}, {"AT"}}},
         {"static_demand", 10.0}},
        {{"id", "B-T"},
         {"agent", 1},
         {"src", "B"},
         {"dst", "T"},
         {"paths", {{"BM", "MT"}, {"BT"}}},
         {"static_demand", 10.0}}}}};
  return topology_from_json(j);
}

// Random small topology: per-agent IE-pairs over disjoint per-path links.
Topology random_topology(Rng& rng) {
  int n_agents = 1 + static_cast<int>(rng.below(3));
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json links = nlohmann::json::array();
  nlohmann::json ies = nlohmann::json::array();
  nodes.push_back("X");
  nodes.push_back("Y");
  int link_count = 0;
  for (int a = 0; a < n_agents; ++a) {
    int n_paths = 2 + static_cast<int>(rng.below(3));
    nlohmann::json paths = nlohmann::json::array();
    for (int p = 0; p < n_paths; ++p) {
      int hops = 1 + static_cast<int>(rng.below(2));
      nlohmann::json path = nlohmann::json::array();
      std::string at = "X";
      for (int h = 0; h < hops; ++h) {
        std::string next = (h == hops - 1) ? "Y" : ("N" + std::to_string(link_count));
        if (next != "Y") nodes.push_back(next);
        std::string id = "L" + std::to_string(link_count++);
        links.push_back({{"id", id},
                         {"src", at},
                         {"dst", next},
                         {"capacity", rng.uniform(1.0, 20.0)}});
        path.push_back(id);
        at = next;
      }
      paths.push_back(path);
    }
    ies.push_back({{"id", "ie" + std::to_string(a)},
                   {"agent", a},
                   {"src", "X"},
                   {"dst", "Y"},
                   {"paths", paths},
                   {"static_demand", rng.uniform(0.0, 15.0)}});
  }
  nlohmann::json j = {{"nodes", nodes}, {"links", links}, {"ie_pairs", ies}};
  return topology_from_json(j);
}

std::vector<RoutingAction> random_actions(const Topology& topo, Rng& rng) {
  std::vector<RoutingAction> actions(topo.num_agents());
  for (const auto& ie : topo.ie_pairs) {
    std::vector<double> y(ie.paths.size());
    double sum = 0.0;
    for (double& v : y) {
      v = rng.uniform(0.001, 1.0);
      sum += v;
    }
    for (double& v : y) v /= sum;
    actions[ie.agent].push_back(std::move(y));
  }
  return actions;
}

std::vector<double> random_demands(const Topology& topo, Rng& rng) {
  std::vector<double> d(topo.ie_pairs.size());
  for (double& v : d) v = rng.uniform(0.0, 15.0);
  return d;
}

}  // namespace

TEST_CASE("fixture: simple topology loads with 2 agents, 2 paths each") {
  Topology topo = load_topology("simple");
  CHECK(topo.num_agents() == 2);
  for (const auto& ie : topo.ie_pairs) CHECK(ie.paths.size() == 2);
  CHECK(topo.total_paths() == 4);
}

TEST_CASE("fixture: complex topology has 4 agents and 4x the simple path count") {
  Topology simple = load_topology("simple");
  Topology complex_topo = load_topology("complex");
  CHECK(complex_topo.num_agents() == 4);
  CHECK(complex_topo.total_paths() == 4 * simple.total_paths());
}

TEST_CASE("fixture: data/ files match the built-in topologies") {
  for (auto [name, path] : {std::pair{"simple", "data/simple_topology.json"},
                            std::pair{"complex", "data/complex_topology.json"}}) {
    std::ifstream in(path);
    if (!in) in.open(std::string("../") + path);
    if (!in) in.open(std::string("../../") + path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    Topology from_file = parse_topology(ss.str());
    Topology builtin = load_topology(name);
    CHECK(topology_to_json(from_file) == topology_to_json(builtin));
  }
}

TEST_CASE("topology validation: unknown link in a path") {
  std::string bad = R"({"nodes":["A","B"],
    "links":[{"id":"AB","src":"A","dst":"B","capacity":1.0}],
    "ie_pairs":[{"id":"x","agent":0,"src":"A","dst":"B","paths":[["AB"],["ZZ"]]}]})";
  CHECK_THROWS_WITH(parse_topology(bad), Catch::Matchers::ContainsSubstring("ZZ"));
}

TEST_CASE("topology validation: disconnected path is rejected") {
  std::string bad = R"({"nodes":["A","B","C"],
    "links":[{"id":"AB","src":"A","dst":"B","capacity":1.0},
             {"id":"CB","src":"C","dst":"B","capacity":1.0}],
    "ie_pairs":[{"id":"x","agent":0,"src":"A","dst":"B","paths":[["AB"],["CB"]]}]})";
  CHECK_THROWS_WITH(parse_topology(bad), Catch::Matchers::ContainsSubstring("disconnected"));
}

TEST_CASE("topology validation: agent without a real decision is rejected") {
  std::string bad = R"({"nodes":["A","B"],
    "links":[{"id":"AB","src":"A","dst":"B","capacity":1.0}],
    "ie_pairs":[{"id":"x","agent":0,"src":"A","dst":"B","paths":[["AB"]]}]})";
  CHECK_THROWS_WITH(parse_topology(bad), Catch::Matchers::ContainsSubstring("no decision"));
}

TEST_CASE("topology JSON round-trips through the serializer") {
  Topology topo = load_topology("complex");
  Topology back = topology_from_json(topology_to_json(topo));
  CHECK(topology_to_json(back) == topology_to_json(topo));
}

TEST_CASE("compute_utilizations: zero demand gives zero everywhere") {
  Topology topo = two_path_topology();
  auto util = compute_utilizations(topo, {{{0.5, 0.5}}}, {0.0});
  for (double u : util) CHECK(u == 0.0);
}

TEST_CASE("compute_utilizations: split over two disjoint paths") {
  // F=10, C=10 each, y=(0.6,0.4) -> U=(0.6,0.4)
  Topology topo = two_path_topology(10.0, 10.0);
  auto util = compute_utilizations(topo, {{{0.6, 0.4}}}, {10.0});
  CHECK(util[0] == Catch::Approx(0.6).margin(1e-12));
  CHECK(util[1] == Catch::Approx(0.4).margin(1e-12));
}

TEST_CASE("compute_utilizations: shared link accumulates both agents") {
  // each agent sends 5 on the shared link of capacity 10 -> U=1.0 there
  Topology topo = shared_link_topology(10.0);
  std::vector<RoutingAction> actions = {{{0.5, 0.5}}, {{0.5, 0.5}}};
  auto util = compute_utilizations(topo, actions, {10.0, 10.0});
  int mt = topo.link_index("MT");
  CHECK(util[mt] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("mlu_reward: 1 - max utilization for every agent") {
  Topology topo = two_path_topology();
  auto r0 = mlu_reward(topo, {0.0, 0.0});
  CHECK(r0 == std::vector<double>{1.0});
  auto r1 = mlu_reward(topo, {0.6, 0.4});
  CHECK(r1[0] == Catch::Approx(0.4).margin(1e-12));
  auto r2 = mlu_reward(topo, {1.5, 0.2});
  CHECK(r2[0] == Catch::Approx(-0.5).margin(1e-12));  // overload is legal
}

TEST_CASE("mlu_reward: exploration bonus uses the agent's direct links") {
  Topology topo = shared_link_topology();
  std::vector<double> util(topo.links.size(), 0.0);
  util[topo.link_index("AT")] = 0.8;   // direct link of agent 0
  util[topo.link_index("BT")] = 0.2;   // direct link of agent 1
  auto r = mlu_reward(topo, util, 0.5);
  // global part: 1 - 0.8 = 0.2 for both; bonus: 0.5*(1-0.8) vs 0.5*(1-0.2)
  CHECK(r[0] == Catch::Approx(0.2 + 0.5 * 0.2).margin(1e-12));
  CHECK(r[1] == Catch::Approx(0.2 + 0.5 * 0.8).margin(1e-12));
}

TEST_CASE("wcmp: equal bottlenecks reduce to ECMP") {
  Topology topo = two_path_topology(10.0, 10.0);
  auto actions = wcmp_policy(topo);
  CHECK(actions[0][0][0] == Catch::Approx(0.5).margin(1e-12));
  CHECK(actions[0][0][1] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("wcmp: bottlenecks (10, 30) split 0.25 / 0.75") {
  Topology topo = two_path_topology(10.0, 30.0);
  auto actions = wcmp_policy(topo);
  CHECK(actions[0][0][0] == Catch::Approx(0.25).margin(1e-12));
  CHECK(actions[0][0][1] == Catch::Approx(0.75).margin(1e-12));
}

TEST_CASE("wcmp: single-path IE-pair gets the whole demand") {
  std::string one = R"({"nodes":["A","B"],
    "links":[{"id":"A1","src":"A","dst":"B","capacity":5.0},
             {"id":"A2","src":"A","dst":"B","capacity":5.0},
             {"id":"A3","src":"A","dst":"B","capacity":5.0}],
    "ie_pairs":[{"id":"m","agent":0,"src":"A","dst":"B","paths":[["A1"],["A2"]]},
                {"id":"s","agent":0,"src":"A","dst":"B","paths":[["A3"]]}]})";
  Topology topo = parse_topology(one);
  auto actions = wcmp_policy(topo);
  REQUIRE(actions[0].size() == 2);
  CHECK(actions[0][1] == std::vector<double>{1.0});
}

TEST_CASE("wcmp output is a valid simplex on random topologies") {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    Topology topo = random_topology(rng);
    for (const auto& agent_action : wcmp_policy(topo)) {
      for (const auto& y : agent_action) {
        double sum = 0.0;
        for (double v : y) {
          CHECK(v >= 0.0);
          sum += v;
        }
        CHECK(std::fabs(sum - 1.0) < 1e-9);
      }
    }
  }
}

TEST_CASE("oracle: symmetric two-path instance") {
  Topology topo = two_path_topology(10.0, 10.0);
  OracleResult res = grid_search_oracle(topo, {10.0}, 10);
  CHECK(res.mlu == Catch::Approx(0.5).margin(1e-12));
  CHECK(res.splits[0][0][0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("oracle dominates WCMP on the shared-bottleneck fixture") {
  Topology topo = shared_link_topology(10.0);
  std::vector<double> demands = {10.0, 10.0};
  double wcmp_mlu =
      max_link_utilization(compute_utilizations(topo, wcmp_policy(topo), demands));
  OracleResult res = grid_search_oracle(topo, demands, 10);
  CHECK(res.mlu <= wcmp_mlu);
}

TEST_CASE("oracle: refinement is monotone") {
  Topology topo = load_topology("simple");
  std::vector<double> demands = {10.0, 10.0};
  OracleResult r10 = grid_search_oracle(topo, demands, 10);
  OracleResult r20 = grid_search_oracle(topo, demands, 20);
  CHECK(r20.mlu <= r10.mlu + 1e-12);
}

TEST_CASE("oracle: budget exceeded advises coarser resolution") {
  Topology topo = load_topology("complex");
  CHECK_THROWS_WITH(grid_search_oracle(topo, {8.0, 8.0, 8.0, 8.0}, 200, 1000),
                    Catch::Matchers::ContainsSubstring("coarser"));
}

TEST_CASE("oracle on the simple fixture static demand") {
  // continuous optimum is MLU = 2/2.6 ~ 0.7692 at y=z~0.6154; on the
  // resolution-20 grid the best point is y=z=0.6 with MLU = 0.8
  Topology topo = load_topology("simple");
  OracleResult res = grid_search_oracle(topo, {10.0, 10.0}, 20);
  CHECK(res.mlu == Catch::Approx(0.8).margin(1e-9));
}

TEST_CASE("property: flow conservation, scaling, monotonicity") {
  Rng rng(77);
  for (int rep = 0; rep < 1000; ++rep) {
    Topology topo = random_topology(rng);
    auto actions = random_actions(topo, rng);
    auto demands = random_demands(topo, rng);
    auto util = compute_utilizations(topo, actions, demands);

    // flow conservation: per IE-pair the split carries exactly the demand
    std::vector<std::size_t> cursor(topo.num_agents(), 0);
    for (std::size_t i = 0; i < topo.ie_pairs.size(); ++i) {
      const IePair& ie = topo.ie_pairs[i];
      const auto& y = actions[ie.agent][cursor[ie.agent]++];
      double carried = 0.0;
      for (double v : y) carried += demands[i] * v;
      CHECK(std::fabs(carried - demands[i]) <= 1e-9 * std::max(1.0, demands[i]));
    }

    // scaling both demands and capacities leaves utilizations unchanged
    double c = rng.uniform(0.5, 4.0);
    Topology scaled = topo;
    for (auto& l : scaled.links) l.capacity *= c;
    auto scaled_demands = demands;
    for (double& d : scaled_demands) d *= c;
    auto util2 = compute_utilizations(scaled, actions, scaled_demands);
    for (std::size_t l = 0; l < util.size(); ++l)
      CHECK(util2[l] == Catch::Approx(util[l]).margin(1e-9));

    // increasing one demand never decreases MLU
    auto bumped = demands;
    bumped[rng.below(bumped.size())] += rng.uniform(0.1, 5.0);
    auto util3 = compute_utilizations(topo, actions, bumped);
    CHECK(max_link_utilization(util3) >= max_link_utilization(util) - 1e-12);
  }
}

TEST_CASE("trace: csv parse, column reorder and validation") {
  Topology topo = load_topology("simple");
  std::stringstream csv("E-D,B-D\n1.0,2.0\n3.0,4.0\n");
  FlowTrace trace = parse_trace_csv(csv, topo, false);
  REQUIRE(trace.length() == 2);
  CHECK(trace.ie_ids == std::vector<std::string>{"B-D", "E-D"});
  CHECK(trace.rows[0] == std::vector<double>{2.0, 1.0});  // reordered to topology order

  std::stringstream bad("B-D,E-D\n1.0,-2.0\n");
  CHECK_THROWS_WITH(parse_trace_csv(bad, topo, false),
                    Catch::Matchers::ContainsSubstring(">= 0"));
  std::stringstream wrong("B-D,X\n1.0,1.0\n");
  CHECK_THROWS_AS(parse_trace_csv(wrong, topo, false), ConfigError);
}

TEST_CASE("trace: normalization scales peak total to 80% of reference capacity") {
  Topology topo = load_topology("simple");
  std::stringstream csv("B-D,E-D\n100.0,100.0\n50.0,25.0\n");
  FlowTrace trace = parse_trace_csv(csv, topo, true);
  // reference capacity: best single-path bottleneck per IE = 10 + 10
  double peak = 0.0;
  for (const auto& row : trace.rows) peak = std::max(peak, row[0] + row[1]);
  CHECK(peak == Catch::Approx(0.8 * 20.0).margin(1e-9));
  // relative shape preserved
  CHECK(trace.rows[1][0] / trace.rows[0][0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("trace: csv writer round-trips") {
  Topology topo = load_topology("simple");
  FlowTrace trace = make_synthetic_trace(topo, 16, 9);
  std::stringstream ss;
  write_trace_csv(trace, ss);
  FlowTrace back = parse_trace_csv(ss, topo, false);
  REQUIRE(back.length() == trace.length());
  for (std::size_t t = 0; t < trace.length(); ++t)
    for (std::size_t i = 0; i < trace.rows[t].size(); ++i)
      CHECK(back.rows[t][i] == trace.rows[t][i]);
}

TEST_CASE("synthetic trace: deterministic, finite, non-negative") {
  Topology topo = load_topology("simple");
  FlowTrace a = make_synthetic_trace(topo, 64, 123);
  FlowTrace b = make_synthetic_trace(topo, 64, 123);
  CHECK(a.rows == b.rows);
  for (const auto& row : a.rows)
    for (double v : row) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
}

TEST_CASE("routing env: reset gives first-step demand, uniform prev action, zero utils") {
  Topology topo = load_topology("simple");
  FlowTrace trace = make_static_trace(topo, 8);
  RoutingEnv env(topo, trace, {.horizon = 8});
  JointObservation obs = env.reset(1);
  // agent 0: [demand, prev split (2), utils of BD,BE,EF,FD (4)] = 7 dims
  REQUIRE(obs[0].size() == 7);
  CHECK(obs[0][0] == 10.0);
  CHECK(obs[0][1] == 0.5);
  CHECK(obs[0][2] == 0.5);
  for (int i = 3; i < 7; ++i) CHECK(obs[0][i] == 0.0);
  // agent 1: [demand, prev split (2), utils of ED,EF,FD (3)] = 6 dims
  CHECK(obs[1].size() == 6);
}

TEST_CASE("routing env: observation dimension formula") {
  Topology topo = load_topology("simple");
  RoutingEnv env(topo, make_static_trace(topo, 4), {.horizon = 4});
  for (int a = 0; a < 2; ++a) {
    int n_dem = static_cast<int>(topo.agent_ie_indices(a).size());
    int n_paths = 0;
    for (int ie : topo.agent_ie_indices(a))
      n_paths += static_cast<int>(topo.ie_pairs[ie].paths.size());
    int n_links = static_cast<int>(topo.agent_observed_links(a).size());
    CHECK(env.spec().obs_dims[a] == n_dem + n_paths + n_links);
  }
}

TEST_CASE("routing env: after one step observations carry last utilizations") {
  Topology topo = load_topology("simple");
  RoutingEnv env(topo, make_static_trace(topo, 4), {.horizon = 4});
  env.reset(1);
  JointAction act = {{0.6, 0.4}, {0.5, 0.5}};
  StepResult r = env.step(act);
  auto util = compute_utilizations(topo, {{{0.6, 0.4}}, {{0.5, 0.5}}}, {10.0, 10.0});
  auto links0 = topo.agent_observed_links(0);
  for (std::size_t i = 0; i < links0.size(); ++i)
    CHECK(r.observations[0][3 + i] == Catch::Approx(util[links0[i]]).margin(1e-12));
  // previous action slots now carry the taken action
  CHECK(r.observations[0][1] == 0.6);
  CHECK(r.observations[0][2] == 0.4);
  // reward = 1 - MLU for everyone
  double mlu = max_link_utilization(util);
  CHECK(r.rewards[0] == Catch::Approx(1.0 - mlu).margin(1e-12));
  CHECK(r.rewards[1] == r.rewards[0]);
}

TEST_CASE("routing env: zero-demand trace pays reward 1") {
  Topology topo = load_topology("simple");
  FlowTrace zero;
  zero.ie_ids = {"B-D", "E-D"};
  zero.rows.assign(4, {0.0, 0.0});
  RoutingEnv env(topo, zero, {.horizon = 4});
  env.reset(0);
  StepResult r = env.step({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(r.rewards[0] == 1.0);
  CHECK(r.rewards[1] == 1.0);
}

TEST_CASE("routing env: terminal exactly at horizon") {
  Topology topo = load_topology("simple");
  RoutingEnv env(topo, make_static_trace(topo, 3), {.horizon = 3});
  env.reset(0);
  JointAction act = {{0.5, 0.5}, {0.5, 0.5}};
  CHECK_FALSE(env.step(act).terminal);
  CHECK_FALSE(env.step(act).terminal);
  CHECK(env.step(act).terminal);
}

TEST_CASE("routing env: trace shorter than horizon is rejected") {
  Topology topo = load_topology("simple");
  CHECK_THROWS_AS(RoutingEnv(topo, make_static_trace(topo, 3), {.horizon = 10}), ConfigError);
}

TEST_CASE("routing env: deterministic replay") {
  Topology topo = load_topology("simple");
  auto run = [&] {
    RoutingEnv env(topo, make_synthetic_trace(topo, 32, 5), {.horizon = 16});
    env.reset(11);
    std::vector<double> rewards;
    for (int t = 0; t < 16; ++t)
      rewards.push_back(env.step({{0.7, 0.3}, {0.4, 0.6}}).rewards[0]);
    return rewards;
  };
  CHECK(run() == run());
}
