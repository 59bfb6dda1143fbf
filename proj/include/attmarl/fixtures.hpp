// Built-in routing topologies. The same JSON ships in data/ for reference;
// a test keeps the two in sync.
//
// simple: two edge routers (B, E), one IE-pair each with a private direct
// path and an overflow path through shared links EF/FD. Direct capacities are
// below peak demand, so both agents must spill onto the shared path and
// coordinate how much.
//
// complex: four edge routers around two core nodes; every agent has four
// candidate paths (double the routers, quadruple the total path count of
// simple). The inter-core links are scarce and shared by everyone.
#pragma once

#include <string>

#include "attmarl/routing.hpp"

namespace attmarl {

inline const char* kSimpleTopologyJson = R"json({
  "nodes": ["B", "D", "E", "F"],
  "links": [
    {"id": "BD", "src": "B", "dst": "D", "capacity": 8.0},
    {"id": "BE", "src": "B", "dst": "E", "capacity": 10.0},
    {"id": "EF", "src": "E", "dst": "F", "capacity": 10.0},
    {"id": "FD", "src": "F", "dst": "D", "capacity": 10.0},
    {"id": "ED", "src": "E", "dst": "D", "capacity": 8.0}
  ],
  "ie_pairs": [
    {"id": "B-D", "agent": 0, "src": "B", "dst": "D",
     "paths": [["BD"], ["BE", "EF", "FD"]], "static_demand": 10.0},
    {"id": "E-D", "agent": 1, "src": "E", "dst": "D",
     "paths": [["ED"], ["EF", "FD"]], "static_demand": 10.0}
  ]
})json";

inline const char* kComplexTopologyJson = R"json({
  "nodes": ["R1", "R2", "R3", "R4", "C1", "C2"],
  "links": [
    {"id": "R1C1", "src": "R1", "dst": "C1", "capacity": 10.0},
    {"id": "R1C2", "src": "R1", "dst": "C2", "capacity": 10.0},
    {"id": "R2C1", "src": "R2", "dst": "C1", "capacity": 10.0},
    {"id": "R2C2", "src": "R2", "dst": "C2", "capacity": 10.0},
    {"id": "R3C1", "src": "R3", "dst": "C1", "capacity": 10.0},
    {"id": "R3C2", "src": "R3", "dst": "C2", "capacity": 10.0},
    {"id": "R4C1", "src": "R4", "dst": "C1", "capacity": 10.0},
    {"id": "R4C2", "src": "R4", "dst": "C2", "capacity": 10.0},
    {"id": "C1R1", "src": "C1", "dst": "R1", "capacity": 10.0},
    {"id": "C1R2", "src": "C1", "dst": "R2", "capacity": 10.0},
    {"id": "C1R3", "src": "C1", "dst": "R3", "capacity": 10.0},
    {"id": "C1R4", "src": "C1", "dst": "R4", "capacity": 10.0},
    {"id": "C2R1", "src": "C2", "dst": "R1", "capacity": 10.0},
    {"id": "C2R2", "src": "C2", "dst": "R2", "capacity": 10.0},
    {"id": "C2R3", "src": "C2", "dst": "R3", "capacity": 10.0},
    {"id": "C2R4", "src": "C2", "dst": "R4", "capacity": 10.0},
    {"id": "C1C2", "src": "C1", "dst": "C2", "capacity": 5.0},
    {"id": "C2C1", "src": "C2", "dst": "C1", "capacity": 5.0}
  ],
  "ie_pairs": [
    {"id": "R1-R3", "agent": 0, "src": "R1", "dst": "R3",
     "paths": [["R1C1", "C1R3"], ["R1C2", "C2R3"],
               ["R1C1", "C1C2", "C2R3"], ["R1C2", "C2C1", "C1R3"]],
     "static_demand": 8.0},
    {"id": "R2-R4", "agent": 1, "src": "R2", "dst": "R4",
     "paths": [["R2C1", "C1R4"], ["R2C2", "C2R4"],
               ["R2C1", "C1C2", "C2R4"], ["R2C2", "C2C1", "C1R4"]],
     "static_demand": 8.0},
    {"id": "R3-R1", "agent": 2, "src": "R3", "dst": "R1",
     "paths": [["R3C1", "C1R1"], ["R3C2", "C2R1"],
               ["R3C1", "C1C2", "C2R1"], ["R3C2", "C2C1", "C1R1"]],
     "static_demand": 8.0},
    {"id": "R4-R2", "agent": 3, "src": "R4", "dst": "R2",
     "paths": [["R4C1", "C1R2"], ["R4C2", "C2R2"],
               ["R4C1", "C1C2", "C2R2"], ["R4C2", "C2C1", "C1R2"]],
     "static_demand": 8.0}
  ]
})json";

// Resolve a topology by fixture name or filesystem path.
inline Topology load_topology(const std::string& name_or_path) {
  if (name_or_path == "simple") return parse_topology(kSimpleTopologyJson);
  if (name_or_path == "complex") return parse_topology(kComplexTopologyJson);
  return load_topology_file(name_or_path);
}

}  // namespace attmarl
