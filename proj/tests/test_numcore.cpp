#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "attmarl/adam.hpp"
#include "attmarl/grad_check.hpp"
#include "attmarl/mlp.hpp"
#include "attmarl/net_io.hpp"
#include "attmarl/rng.hpp"
#include "attmarl/tensor.hpp"

using namespace attmarl;

namespace {

MlpNetwork identity_linear(std::size_t n) {
  MlpNetwork net({n, n}, {Activation::Linear});
  std::vector<double> p(net.parameter_count(), 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;  // W = I, b = 0
  net.set_params_flat(p);
  return net;
}

MlpNetwork random_net(const std::vector<std::size_t>& dims,
                      const std::vector<Activation>& acts, std::uint64_t seed) {
  MlpNetwork net(dims, acts);
  Rng rng(seed);
  net.init_xavier_uniform(rng);
  return net;
}

std::vector<double> random_input(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-1.5, 1.5);
  return x;
}

}  // namespace

TEST_CASE("tensor shape/data invariant") {
  CHECK_THROWS_AS(Tensor({2, 2}, {1.0, 2.0}), ConfigError);
  Tensor t({2, 2}, {1.0, 2.0, 3.0, 4.0});
  CHECK(t.numel() == 4);
  CHECK(t.at(1, 0) == 3.0);
  CHECK(t.all_finite());
}

TEST_CASE("forward: identity linear layer") {
  MlpNetwork net = identity_linear(2);
  std::vector<double> out = net.forward({1.0, 2.0});
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 2.0);
}

TEST_CASE("forward: relu with identity weights") {
  MlpNetwork net({2, 2}, {Activation::Relu});
  std::vector<double> p(net.parameter_count(), 0.0);
  p[0] = 1.0;
  p[3] = 1.0;
  net.set_params_flat(p);
  std::vector<double> out = net.forward({-1.0, 3.0});
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 3.0);
}

TEST_CASE("forward: two-layer net matches hand evaluation") {
  // layer1: W=[[2],[-1]], b=[0.5,-0.5], relu; layer2: W=[[1,1]], b=[0.25].
  // x=[1]: z1=(2.5,-1.5) -> relu -> (2.5,0) -> out = 2.5 + 0 + 0.25 = 2.75
  MlpNetwork net({1, 2, 1}, {Activation::Relu, Activation::Linear});
  net.set_params_flat(std::vector<double>{2.0, -1.0, 0.5, -0.5, 1.0, 1.0, 0.25});
  std::vector<double> out = net.forward({1.0});
  CHECK(out[0] == Catch::Approx(2.75).margin(1e-12));
}

TEST_CASE("forward: dimension mismatch is a configuration error") {
  MlpNetwork net = identity_linear(2);
  CHECK_THROWS_AS(net.forward(std::vector<double>{1.0}), ConfigError);
  CHECK_THROWS_AS(net.backward({1.0, 2.0}, {1.0}), ConfigError);
}

TEST_CASE("forward: softmax output is a probability vector") {
  MlpNetwork net = random_net({3, 4}, {Activation::Softmax}, 7);
  for (std::uint64_t s = 0; s < 50; ++s) {
    std::vector<double> out = net.forward(random_input(3, 100 + s));
    double sum = 0.0;
    for (double v : out) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
      sum += v;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("backward: single linear layer calculus") {
  // y = Wx + b, upstream [1]: d/db = 1, d/dW = x
  MlpNetwork net({2, 1}, {Activation::Linear});
  net.set_params_flat(std::vector<double>{0.3, -0.7, 0.1});
  GradientBundle g = net.backward({2.0, 5.0}, {1.0});
  CHECK(g.param_grads[0] == 2.0);   // dW0
  CHECK(g.param_grads[1] == 5.0);   // dW1
  CHECK(g.param_grads[2] == 1.0);   // db
  CHECK(g.input_grad[0] == 0.3);
  CHECK(g.input_grad[1] == -0.7);
}

TEST_CASE("backward: relu blocks gradient at negative pre-activation") {
  MlpNetwork net({1, 1}, {Activation::Relu});
  net.set_params_flat(std::vector<double>{1.0, -2.0});  // z = x - 2
  GradientBundle g = net.backward({1.0}, {1.0});        // z = -1 < 0
  CHECK(g.param_grads[0] == 0.0);
  CHECK(g.param_grads[1] == 0.0);
  CHECK(g.input_grad[0] == 0.0);
}

TEST_CASE("backward: random two-layer net agrees with finite differences") {
  MlpNetwork net = random_net({3, 5, 2}, {Activation::Tanh, Activation::Linear}, 11);
  CHECK(finite_diff_check(net, random_input(3, 23)) < 1e-4);
}

TEST_CASE("finite_diff_check: linear net is exact to 1e-9") {
  MlpNetwork net = random_net({4, 3}, {Activation::Linear}, 3);
  CHECK(finite_diff_check(net, random_input(4, 5)) < 1e-9);
}

TEST_CASE("finite_diff_check: tanh and softmax nets") {
  MlpNetwork tanh_net = random_net({3, 6, 2}, {Activation::Tanh, Activation::Tanh}, 17);
  CHECK(finite_diff_check(tanh_net, random_input(3, 31)) < 1e-4);
  MlpNetwork sm_net = random_net({3, 6, 4}, {Activation::Relu, Activation::Softmax}, 19);
  CHECK(finite_diff_check(sm_net, random_input(3, 37)) < 1e-4);
}

TEST_CASE("property: every activation combination passes the gradient check") {
  const Activation acts[] = {Activation::Linear, Activation::Relu, Activation::Tanh,
                             Activation::Softmax};
  std::uint64_t seed = 1000;
  for (Activation hidden : acts) {
    for (Activation out : acts) {
      for (int rep = 0; rep < 3; ++rep) {
        MlpNetwork net = random_net({4, 6, 3}, {hidden, out}, ++seed);
        double err = finite_diff_check(net, random_input(4, seed * 13 + 1));
        INFO("hidden=" << to_string(hidden) << " out=" << to_string(out)
                       << " rep=" << rep);
        CHECK(err < 1e-4);
      }
    }
  }
}

TEST_CASE("flat parameter vector round-trips bit-exactly") {
  MlpNetwork net = random_net({5, 8, 3}, {Activation::Relu, Activation::Tanh}, 29);
  std::vector<double> p = net.params_flat();
  MlpNetwork other({5, 8, 3}, {Activation::Relu, Activation::Tanh});
  other.set_params_flat(p);
  CHECK(other.params_flat() == p);
  CHECK(net.parameter_count() == p.size());
}

TEST_CASE("identical seeds give bit-identical networks and outputs") {
  MlpNetwork a = random_net({4, 8, 2}, {Activation::Relu, Activation::Tanh}, 99);
  MlpNetwork b = random_net({4, 8, 2}, {Activation::Relu, Activation::Tanh}, 99);
  CHECK(a.params_flat() == b.params_flat());
  std::vector<double> x = random_input(4, 7);
  CHECK(a.forward(x) == b.forward(x));
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  AdamState st(3, AdamConfig{0.1, 0.9, 0.999, 1e-8});
  std::vector<double> p{1.0, -2.0, 0.5};
  std::vector<double> before = p;
  adam_step(st, p, {0.0, 0.0, 0.0});
  CHECK(p == before);
  CHECK(st.step == 1);
}

TEST_CASE("adam: one step with g=1, lr=0.1, beta1=beta2=0") {
  AdamState st(1, AdamConfig{0.1, 0.0, 0.0, 1e-8});
  std::vector<double> p{0.0};
  adam_step(st, p, {1.0});
  // mhat = 1, vhat = 1 -> step = 0.1 / (1 + 1e-8)
  CHECK(p[0] == Catch::Approx(-0.1).margin(1e-8));
}

TEST_CASE("adam: identical sequences reproduce exactly") {
  auto run = [] {
    AdamState st(2, AdamConfig{});
    std::vector<double> p{0.2, -0.4};
    for (int i = 0; i < 10; ++i) adam_step(st, p, {0.3, -0.1});
    return p;
  };
  CHECK(run() == run());
}

TEST_CASE("adam: NaN gradient aborts with diagnostic") {
  AdamState st(1, AdamConfig{});
  std::vector<double> p{0.0};
  CHECK_THROWS_AS(adam_step(st, p, {std::nan("")}), NumericError);
}

TEST_CASE("network text checkpoint round-trips bit-exactly") {
  MlpNetwork net = random_net({3, 7, 2}, {Activation::Relu, Activation::Softmax}, 55);
  std::stringstream ss;
  save_network(net, ss);
  MlpNetwork back = load_network(ss);
  CHECK(back.params_flat() == net.params_flat());
  CHECK(back.num_layers() == net.num_layers());
  std::vector<double> x = random_input(3, 4);
  CHECK(back.forward(x) == net.forward(x));
}

TEST_CASE("network checkpoint rejects bad header") {
  std::stringstream ss("attmarl-net 9\nlayers 1\n");
  CHECK_THROWS_AS(load_network(ss), ConfigError);
}
