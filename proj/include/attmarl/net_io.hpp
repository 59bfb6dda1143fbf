// Text checkpoint format for a single network.
//
//   attmarl-net 1
//   layers <L>
//   layer <in> <out> <activation>   (L lines)
//   params <P>
//   <P hexfloats, whitespace separated>
//
// Hexfloats round-trip doubles exactly, so save/load is bit-exact.
#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "attmarl/mlp.hpp"

namespace attmarl {

inline void save_network(const MlpNetwork& net, std::ostream& os) {
  os << "attmarl-net 1\n";
  os << "layers " << net.num_layers() << "\n";
  for (const auto& l : net.layers())
    os << "layer " << l.in_dim() << " " << l.out_dim() << " " << to_string(l.act) << "\n";
  std::vector<double> p = net.params_flat();
  os << "params " << p.size() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%a", p[i]);
    os << buf << (i + 1 == p.size() ? "\n" : " ");
  }
}

inline MlpNetwork load_network(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "attmarl-net" || version != 1)
    throw ConfigError("load_network: bad header (expected 'attmarl-net 1')");
  std::string key;
  std::size_t nlayers = 0;
  is >> key >> nlayers;
  if (key != "layers" || nlayers == 0)
    throw ConfigError("load_network: bad layer count");
  std::vector<std::size_t> dims;
  std::vector<Activation> acts;
  for (std::size_t l = 0; l < nlayers; ++l) {
    std::size_t in = 0, out = 0;
    std::string act;
    is >> key >> in >> out >> act;
    if (key != "layer") throw ConfigError("load_network: expected 'layer' line");
    if (l == 0) dims.push_back(in);
    else if (dims.back() != in)
      throw ConfigError("load_network: layer dims do not chain");
    dims.push_back(out);
    acts.push_back(activation_from_string(act));
  }
  std::size_t nparams = 0;
  is >> key >> nparams;
  if (key != "params") throw ConfigError("load_network: expected 'params' line");
  MlpNetwork net(dims, acts);
  if (nparams != net.parameter_count())
    throw ConfigError("load_network: parameter count mismatch");
  std::vector<double> p(nparams);
  for (std::size_t i = 0; i < nparams; ++i) {
    std::string tok;
    is >> tok;
    if (!is) throw ConfigError("load_network: truncated parameter list");
    p[i] = std::strtod(tok.c_str(), nullptr);
  }
  net.set_params_flat(p);
  return net;
}

}  // namespace attmarl
