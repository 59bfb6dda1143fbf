// Packet-routing traffic-engineering model: edge routers split ingress-egress
// flow demands over candidate paths; the objective is the maximum link
// utilization (MLU) across the network, rewarded as 1 - MLU.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "attmarl/rng.hpp"
#include "attmarl/tensor.hpp"

namespace attmarl {

struct Link {
  std::string id;
  std::string src, dst;
  double capacity = 0.0;  // flow units per step
};

struct IePair {
  std::string id;
  int agent = 0;
  std::string src, dst;
  std::vector<std::vector<int>> paths;  // each path: ordered link indices
  double static_demand = 0.0;           // fixture annotation for static traces
};

// Splitting ratios of one agent: one simplex per controlled IE-pair.
using RoutingAction = std::vector<std::vector<double>>;

struct Topology {
  std::vector<std::string> nodes;
  std::vector<Link> links;
  std::vector<IePair> ie_pairs;

  int num_agents() const {
    int n = 0;
    for (const auto& ie : ie_pairs) n = std::max(n, ie.agent + 1);
    return n;
  }

  int link_index(const std::string& id) const {
    for (std::size_t i = 0; i < links.size(); ++i)
      if (links[i].id == id) return static_cast<int>(i);
    return -1;
  }

  std::vector<int> agent_ie_indices(int agent) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < ie_pairs.size(); ++i)
      if (ie_pairs[i].agent == agent) out.push_back(static_cast<int>(i));
    return out;
  }

  // Links an agent can observe: union over its candidate paths, ordered by
  // first appearance (path order, then link order within the path).
  std::vector<int> agent_observed_links(int agent) const {
    std::vector<int> out;
    for (int ie : agent_ie_indices(agent))
      for (const auto& path : ie_pairs[ie].paths)
        for (int l : path)
          if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return out;
  }

  // Links leaving any of the agent's ingress routers (for the optional
  // local-utilization exploration bonus).
  std::vector<int> agent_direct_links(int agent) const {
    std::set<std::string> srcs;
    for (int ie : agent_ie_indices(agent)) srcs.insert(ie_pairs[ie].src);
    std::vector<int> out;
    for (std::size_t l = 0; l < links.size(); ++l)
      if (srcs.count(links[l].src)) out.push_back(static_cast<int>(l));
    return out;
  }

  double path_bottleneck(const std::vector<int>& path) const {
    double b = links[path.front()].capacity;
    for (int l : path) b = std::min(b, links[l].capacity);
    return b;
  }

  std::size_t total_paths() const {
    std::size_t n = 0;
    for (const auto& ie : ie_pairs) n += ie.paths.size();
    return n;
  }
};

namespace detail {
inline void validate_topology(const Topology& topo) {
  if (topo.nodes.empty()) throw ConfigError("topology: no nodes");
  std::set<std::string> node_set(topo.nodes.begin(), topo.nodes.end());
  std::set<std::string> link_ids;
  for (const auto& l : topo.links) {
    if (!(l.capacity > 0.0))
      throw ConfigError("topology: link '" + l.id + "' capacity must be > 0");
    if (!node_set.count(l.src) || !node_set.count(l.dst))
      throw ConfigError("topology: link '" + l.id + "' references unknown node");
    if (!link_ids.insert(l.id).second)
      throw ConfigError("topology: duplicate link id '" + l.id + "'");
  }
  if (topo.ie_pairs.empty()) throw ConfigError("topology: no IE-pairs");
  std::set<std::string> ie_ids;
  for (const auto& ie : topo.ie_pairs) {
    if (!ie_ids.insert(ie.id).second)
      throw ConfigError("topology: duplicate IE-pair id '" + ie.id + "'");
    if (ie.agent < 0) throw ConfigError("topology: IE-pair '" + ie.id + "' has negative agent");
    if (ie.paths.empty())
      throw ConfigError("topology: IE-pair '" + ie.id + "' has no candidate paths");
    if (ie.static_demand < 0.0 || !std::isfinite(ie.static_demand))
      throw ConfigError("topology: IE-pair '" + ie.id + "' static_demand must be finite and >= 0");
    for (const auto& path : ie.paths) {
      if (path.empty())
        throw ConfigError("topology: IE-pair '" + ie.id + "' contains an empty path");
      std::string at = ie.src;
      for (int li : path) {
        if (li < 0 || li >= static_cast<int>(topo.links.size()))
          throw ConfigError("topology: IE-pair '" + ie.id + "' path references unknown link");
        const Link& l = topo.links[li];
        if (l.src != at)
          throw ConfigError("topology: IE-pair '" + ie.id + "' path is disconnected at link '" +
                            l.id + "' (expected source '" + at + "')");
        at = l.dst;
      }
      if (at != ie.dst)
        throw ConfigError("topology: IE-pair '" + ie.id + "' path does not end at '" + ie.dst + "'");
    }
  }
  // every agent index up to num_agents-1 must exist and have a real decision
  int n_agents = topo.num_agents();
  for (int a = 0; a < n_agents; ++a) {
    auto ies = topo.agent_ie_indices(a);
    if (ies.empty())
      throw ConfigError("topology: agent " + std::to_string(a) + " controls no IE-pair");
    bool has_choice = false;
    for (int ie : ies)
      if (topo.ie_pairs[ie].paths.size() >= 2) has_choice = true;
    if (!has_choice)
      throw ConfigError("topology: agent " + std::to_string(a) +
                        " has no IE-pair with at least 2 paths (no decision exists)");
  }
}
}  // namespace detail

inline Topology topology_from_json(const nlohmann::json& j) {
  Topology topo;
  try {
    topo.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& jl : j.at("links")) {
      Link l;
      l.id = jl.at("id").get<std::string>();
      l.src = jl.at("src").get<std::string>();
      l.dst = jl.at("dst").get<std::string>();
      l.capacity = jl.at("capacity").get<double>();
      topo.links.push_back(std::move(l));
    }
    for (const auto& ji : j.at("ie_pairs")) {
      IePair ie;
      ie.id = ji.at("id").get<std::string>();
      ie.agent = ji.at("agent").get<int>();
      ie.src = ji.at("src").get<std::string>();
      ie.dst = ji.at("dst").get<std::string>();
      for (const auto& jp : ji.at("paths")) {
        std::vector<int> path;
        for (const auto& lid : jp) {
          int idx = topo.link_index(lid.get<std::string>());
          if (idx < 0)
            throw ConfigError("topology: IE-pair '" + ie.id + "' references unknown link '" +
                              lid.get<std::string>() + "'");
          path.push_back(idx);
        }
        ie.paths.push_back(std::move(path));
      }
      ie.static_demand = ji.value("static_demand", 0.0);
      topo.ie_pairs.push_back(std::move(ie));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("topology: malformed JSON: ") + e.what());
  }
  detail::validate_topology(topo);
  return topo;
}

inline nlohmann::json topology_to_json(const Topology& topo) {
  nlohmann::json j;
  j["nodes"] = topo.nodes;
  j["links"] = nlohmann::json::array();
  for (const auto& l : topo.links)
    j["links"].push_back({{"id", l.id}, {"src", l.src}, {"dst", l.dst}, {"capacity", l.capacity}});
  j["ie_pairs"] = nlohmann::json::array();
  for (const auto& ie : topo.ie_pairs) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : ie.paths) {
      nlohmann::json path = nlohmann::json::array();
      for (int li : p) path.push_back(topo.links[li].id);
      paths.push_back(path);
    }
    j["ie_pairs"].push_back({{"id", ie.id},
                             {"agent", ie.agent},
                             {"src", ie.src},
                             {"dst", ie.dst},
                             {"paths", paths},
                             {"static_demand", ie.static_demand}});
  }
  return j;
}

inline Topology parse_topology(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("topology: JSON parse error: ") + e.what());
  }
  return topology_from_json(j);
}

inline Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("topology: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_topology(ss.str());
}

// U_l = (sum over IE-pairs i and paths k containing l of F_i * y_i^k) / C_l.
// Overload is legal: U_l may exceed 1.
inline std::vector<double> compute_utilizations(const Topology& topo,
                                                const std::vector<RoutingAction>& actions,
                                                const std::vector<double>& demands) {
  if (demands.size() != topo.ie_pairs.size())
    throw ConfigError("compute_utilizations: demands must align with IE-pairs");
  if (static_cast<int>(actions.size()) != topo.num_agents())
    throw ConfigError("compute_utilizations: one RoutingAction per agent required");
  std::vector<double> flow(topo.links.size(), 0.0);
  std::vector<std::size_t> cursor(actions.size(), 0);
  for (std::size_t i = 0; i < topo.ie_pairs.size(); ++i) {
    const IePair& ie = topo.ie_pairs[i];
    std::size_t& k = cursor[ie.agent];
    if (k >= actions[ie.agent].size())
      throw ConfigError("compute_utilizations: agent " + std::to_string(ie.agent) +
                        " action has too few splitting vectors");
    const std::vector<double>& split = actions[ie.agent][k++];
    if (split.size() != ie.paths.size())
      throw ConfigError("compute_utilizations: splitting vector size mismatch for '" + ie.id + "'");
    for (std::size_t p = 0; p < ie.paths.size(); ++p) {
      double f = demands[i] * split[p];
      for (int li : ie.paths[p]) flow[li] += f;
    }
  }
  std::vector<double> util(topo.links.size());
  for (std::size_t l = 0; l < topo.links.size(); ++l)
    util[l] = flow[l] / topo.links[l].capacity;
  return util;
}

inline double max_link_utilization(const std::vector<double>& util) {
  double m = 0.0;
  for (double u : util) m = std::max(m, u);
  return m;
}

// Every agent receives 1 - MLU; optionally plus the local exploration bonus
// beta * (1 - max utilization over the agent's direct links).
inline std::vector<double> mlu_reward(const Topology& topo, const std::vector<double>& util,
                                      double bonus_beta = 0.0) {
  double mlu = max_link_utilization(util);
  int n = topo.num_agents();
  std::vector<double> rewards(n, 1.0 - mlu);
  if (bonus_beta != 0.0) {
    for (int a = 0; a < n; ++a) {
      double local = 0.0;
      for (int l : topo.agent_direct_links(a)) local = std::max(local, util[l]);
      rewards[a] += bonus_beta * (1.0 - local);
    }
  }
  return rewards;
}

// Weighted-cost multipath heuristic: split each IE-pair's demand proportional
// to the bottleneck capacity of each candidate path.
inline std::vector<RoutingAction> wcmp_policy(const Topology& topo) {
  std::vector<RoutingAction> actions(topo.num_agents());
  for (const auto& ie : topo.ie_pairs) {
    std::vector<double> weights;
    double total = 0.0;
    for (const auto& path : ie.paths) {
      double b = topo.path_bottleneck(path);
      weights.push_back(b);
      total += b;
    }
    for (double& w : weights) w /= total;
    actions[ie.agent].push_back(std::move(weights));
  }
  return actions;
}

struct OracleResult {
  std::vector<RoutingAction> splits;
  double mlu = 0.0;
  std::size_t evaluated = 0;
};

namespace detail {
// All length-n integer compositions of r (simplex grid points y = comp / r).
inline void compositions(int r, int n, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (n == 1) {
    cur.push_back(r);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= r; ++v) {
    cur.push_back(v);
    compositions(r - v, n - 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// Exhaustive search over the joint splitting-ratio grid with resolution steps
// of 1/resolution. Throws when the grid exceeds the evaluation budget.
inline OracleResult grid_search_oracle(const Topology& topo, const std::vector<double>& demands,
                                       int resolution, std::size_t budget = 50'000'000) {
  if (resolution < 1) throw ConfigError("grid_search_oracle: resolution must be >= 1");
  std::vector<std::vector<std::vector<int>>> grids;  // per IE-pair
  double total = 1.0;
  for (const auto& ie : topo.ie_pairs) {
    std::vector<std::vector<int>> g;
    std::vector<int> cur;
    detail::compositions(resolution, static_cast<int>(ie.paths.size()), cur, g);
    total *= static_cast<double>(g.size());
    if (total > static_cast<double>(budget))
      throw ConfigError("grid_search_oracle: grid of ~" + std::to_string(total) +
                        " points exceeds budget; use a coarser resolution");
    grids.push_back(std::move(g));
  }

  std::size_t n_ie = topo.ie_pairs.size();
  std::vector<std::size_t> idx(n_ie, 0);
  OracleResult best;
  best.mlu = std::numeric_limits<double>::infinity();
  std::vector<RoutingAction> actions(topo.num_agents());
  for (const auto& ie : topo.ie_pairs)
    actions[ie.agent].emplace_back(ie.paths.size(), 0.0);

  bool done = false;
  while (!done) {
    // materialize current grid point
    std::vector<std::size_t> cursor(actions.size(), 0);
    for (std::size_t i = 0; i < n_ie; ++i) {
      const IePair& ie = topo.ie_pairs[i];
      std::vector<double>& split = actions[ie.agent][cursor[ie.agent]++];
      const std::vector<int>& comp = grids[i][idx[i]];
      for (std::size_t p = 0; p < split.size(); ++p)
        split[p] = static_cast<double>(comp[p]) / resolution;
    }
    double mlu = max_link_utilization(compute_utilizations(topo, actions, demands));
    best.evaluated += 1;
    if (mlu < best.mlu) {
      best.mlu = mlu;
      best.splits = actions;
    }
    // odometer increment
    done = true;
    for (std::size_t i = 0; i < n_ie; ++i) {
      if (++idx[i] < grids[i].size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Flow traces

struct FlowTrace {
  std::vector<std::string> ie_ids;          // column order == topology order
  std::vector<std::vector<double>> rows;    // one row per timestep

  std::size_t length() const { return rows.size(); }
};

// Reference capacity used when normalizing ingested traces: the sum over
// IE-pairs of their best single-path bottleneck.
inline double trace_reference_capacity(const Topology& topo) {
  double c = 0.0;
  for (const auto& ie : topo.ie_pairs) {
    double best = 0.0;
    for (const auto& p : ie.paths) best = std::max(best, topo.path_bottleneck(p));
    c += best;
  }
  return c;
}

inline FlowTrace parse_trace_csv(std::istream& in, const Topology& topo, bool normalize) {
  FlowTrace trace;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("trace: empty file");
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    trace.ie_ids.push_back(cell);
  }
  if (trace.ie_ids.size() != topo.ie_pairs.size())
    throw ConfigError("trace: header has " + std::to_string(trace.ie_ids.size()) +
                      " columns, topology has " + std::to_string(topo.ie_pairs.size()) +
                      " IE-pairs");
  // map columns onto topology IE order
  std::vector<std::size_t> col_of(topo.ie_pairs.size());
  for (std::size_t i = 0; i < topo.ie_pairs.size(); ++i) {
    auto it = std::find(trace.ie_ids.begin(), trace.ie_ids.end(), topo.ie_pairs[i].id);
    if (it == trace.ie_ids.end())
      throw ConfigError("trace: missing column for IE-pair '" + topo.ie_pairs[i].id + "'");
    col_of[i] = static_cast<std::size_t>(it - trace.ie_ids.begin());
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::stringstream row(line);
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("trace: line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (vals.size() != trace.ie_ids.size())
      throw ConfigError("trace: line " + std::to_string(lineno) + " has wrong column count");
    std::vector<double> ordered(vals.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      double v = vals[col_of[i]];
      if (!std::isfinite(v) || v < 0.0)
        throw ConfigError("trace: line " + std::to_string(lineno) +
                          ": demands must be finite and >= 0");
      ordered[i] = v;
    }
    trace.rows.push_back(std::move(ordered));
  }
  if (trace.rows.empty()) throw ConfigError("trace: no demand rows");
  for (std::size_t i = 0; i < trace.ie_ids.size(); ++i) trace.ie_ids[i] = topo.ie_pairs[i].id;

  if (normalize) {
    double peak_total = 0.0;
    for (const auto& row : trace.rows) {
      double s = 0.0;
      for (double v : row) s += v;
      peak_total = std::max(peak_total, s);
    }
    if (peak_total > 0.0) {
      double scale = 0.8 * trace_reference_capacity(topo) / peak_total;
      for (auto& row : trace.rows)
        for (double& v : row) v *= scale;
    }
  }
  return trace;
}

inline FlowTrace load_trace_csv(const std::string& path, const Topology& topo,
                                bool normalize = true) {
  std::ifstream in(path);
  if (!in) throw ConfigError("trace: cannot open '" + path + "'");
  return parse_trace_csv(in, topo, normalize);
}

inline void write_trace_csv(const FlowTrace& trace, std::ostream& os) {
  for (std::size_t i = 0; i < trace.ie_ids.size(); ++i)
    os << trace.ie_ids[i] << (i + 1 == trace.ie_ids.size() ? "\n" : ",");
  char buf[64];
  for (const auto& row : trace.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      os << buf << (i + 1 == row.size() ? "\n" : ",");
    }
  }
}

// Constant trace from the fixture's static_demand annotations.
inline FlowTrace make_static_trace(const Topology& topo, std::size_t length) {
  FlowTrace trace;
  std::vector<double> row;
  for (const auto& ie : topo.ie_pairs) {
    trace.ie_ids.push_back(ie.id);
    row.push_back(ie.static_demand);
  }
  trace.rows.assign(length, row);
  return trace;
}

// Default synthetic trace: per IE-pair a phase-shifted sinusoid plus noise,
// with peak demand around the IE-pair's best single-path bottleneck so that
// splitting decisions matter at the peaks.
inline FlowTrace make_synthetic_trace(const Topology& topo, std::size_t length,
                                      std::uint64_t seed, double period = 64.0) {
  FlowTrace trace;
  for (const auto& ie : topo.ie_pairs) trace.ie_ids.push_back(ie.id);
  Rng rng(seed);
  std::size_t n = topo.ie_pairs.size();
  std::vector<double> peak(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.0;
    for (const auto& p : topo.ie_pairs[i].paths)
      best = std::max(best, topo.path_bottleneck(p));
    peak[i] = best;
  }
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      double phase = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / std::max<std::size_t>(n, 1);
      double wave = 0.6 + 0.4 * std::sin(2.0 * 3.14159265358979323846 * t / period + phase);
      double noise = rng.normal(0.0, 0.02);
      row[i] = std::max(0.0, peak[i] * (wave + noise));
    }
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

}  // namespace attmarl
