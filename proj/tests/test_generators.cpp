#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "snirkit/errors.hpp"
#include "snirkit/generators.hpp"
#include "snirkit/simlab.hpp"
#include "snirkit/stats.hpp"

using namespace snirkit;

namespace {

std::int64_t sum_of(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

}  // namespace

TEST_CASE("generators are deterministic in the seed") {
  auto a = gen_er(300, 0.02, 7);
  auto b = gen_er(300, 0.02, 7);
  auto c = gen_er(300, 0.02, 8);
  CHECK(a.edges() == b.edges());
  CHECK(a.edges() != c.edges());

  auto s1 = gen_sbm(300, 5, 0.05, 0.01, 9);
  auto s2 = gen_sbm(300, 5, 0.05, 0.01, 9);
  CHECK(s1.edges() == s2.edges());

  auto p1 = gen_powerlaw(300, 2.5, 11);
  auto p2 = gen_powerlaw(300, 2.5, 11);
  CHECK(p1.edges() == p2.edges());
}

TEST_CASE("degree conservation holds on every family") {
  for (const DirectedGraph& g :
       {gen_er(400, 0.01, 1), gen_sbm(400, 5, 0.03, 0.01, 2),
        gen_powerlaw(400, 2.5, 3)}) {
    CHECK(sum_of(g.in_degrees()) == g.num_edges());
    CHECK(sum_of(g.out_degrees()) == g.num_edges());
  }
}

TEST_CASE("dense edge probability gives the complete graph") {
  auto g = gen_er(6, 1.0, 5);
  CHECK(g.num_edges() == 30);
  auto s = gen_sbm(6, 2, 1.0, 1.0, 5);
  CHECK(s.num_edges() == 30);
}

TEST_CASE("default edge probabilities land within four sigma of expectation") {
  // Default p = 0.5 * n^-0.8 for the independent-pair family.
  const int n = 5000;
  const double p = 0.5 * std::pow(n, -0.8);
  const double pairs = static_cast<double>(n) * (n - 1);
  const double mean = pairs * p;
  const double sd = std::sqrt(pairs * p * (1 - p));
  auto g = gen_er(n, -1.0, 12345);
  CHECK(std::fabs(g.num_edges() - mean) <= 4 * sd);

  // Blocked family defaults: p_in = n^-0.8 within, half across; block
  // membership is uniform, so a pair is within-block with probability 1/k.
  const int m = 2500, k = 5;
  const double p_in = std::pow(m, -0.8), p_out = 0.5 * p_in;
  const double mpairs = static_cast<double>(m) * (m - 1);
  const double mmean = mpairs * (p_in + (k - 1) * p_out) / k;
  const double msd = std::sqrt(mmean);  // label noise is negligible here
  auto s = gen_sbm(m, k, -1.0, -1.0, 777);
  CHECK(std::fabs(s.num_edges() - mmean) <= 4 * msd);
}

TEST_CASE("power-law in-degrees follow the truncated distribution") {
  // Binned chi-square against the exact truncated pmf at level 0.01.
  const int n = 5000;
  const double alpha = 2.5;
  auto g = gen_powerlaw(n, alpha, 4242);

  const int cap = n - 1;
  double norm = 0.0;
  for (int v = 1; v <= cap; ++v) norm += std::pow(v, -alpha);
  std::vector<double> expected(5, 0.0);  // bins {1},{2},{3},{4},{>=5}
  for (int v = 1; v <= cap; ++v) {
    const double pr = std::pow(v, -alpha) / norm;
    expected[std::min(v, 5) - 1] += pr * n;
  }
  std::vector<double> observed(5, 0.0);
  for (int d : g.in_degrees()) {
    REQUIRE(d >= 1);
    observed[std::min(d, 5) - 1] += 1.0;
  }
  const double stat = chi2_stat(observed, expected);
  CHECK(stat < chi2_quantile(0.99, 4));

  // In-degree sequence is self-consistent with the out-edge columns.
  std::vector<int> col_sums(g.num_nodes(), 0);
  for (auto [i, j] : g.edges()) {
    (void)i;
    ++col_sums[j];
  }
  CHECK(col_sums == g.in_degrees());
}

TEST_CASE("two-node power law is the mutual-follow pair") {
  auto g = gen_powerlaw(2, 2.5, 1);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
}

TEST_CASE("power-law support cap bounds every in-degree") {
  auto g = gen_powerlaw(500, 2.1, 77, 3);
  for (int d : g.in_degrees()) {
    CHECK(d >= 1);
    CHECK(d <= 3);
  }
}

TEST_CASE("generator parameters are validated") {
  CHECK_THROWS_AS(gen_er(1, 0.5, 0), ConfigError);
  CHECK_THROWS_AS(gen_er(10, 1.5, 0), ConfigError);
  CHECK_THROWS_AS(gen_sbm(10, 0, 0.1, 0.1, 0), ConfigError);
  CHECK_THROWS_AS(gen_sbm(10, 3, 2.0, 0.1, 0), ConfigError);
  CHECK_THROWS_AS(gen_powerlaw(10, 0.0, 0), ConfigError);
  CHECK_THROWS_AS(gen_powerlaw(10, 2.5, 0, 100), ConfigError);

  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::ER;
  spec.n = 0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
}

TEST_CASE("generate dispatches on the spec kind") {
  GeneratorSpec spec;
  spec.n = 200;
  spec.seed = 3;

  spec.kind = GeneratorSpec::Kind::ER;
  spec.p = 0.02;
  CHECK(generate(spec).edges() == gen_er(200, 0.02, 3).edges());

  spec.kind = GeneratorSpec::Kind::SBM;
  spec.k_blocks = 4;
  spec.p_in = 0.05;
  spec.p_out = 0.01;
  CHECK(generate(spec).edges() == gen_sbm(200, 4, 0.05, 0.01, 3).edges());

  spec.kind = GeneratorSpec::Kind::PowerLaw;
  spec.alpha = 2.2;
  spec.support_cap = 10;
  CHECK(generate(spec).edges() == gen_powerlaw(200, 2.2, 3, 10).edges());
}

TEST_CASE("presets pin the simulation families") {
  auto er = make_preset("er", 5000);
  CHECK(er.kind == GeneratorSpec::Kind::ER);
  CHECK(er.n == 5000);
  CHECK(er.p == doctest::Approx(std::min(0.5, 3.0 * std::pow(5000.0, -0.48))));

  auto sbm = make_preset("sbm", 2500);
  CHECK(sbm.kind == GeneratorSpec::Kind::SBM);
  CHECK(sbm.k_blocks == 5);
  const double p_in = std::min(0.5, 34.85 * std::pow(2500.0, -0.8));
  CHECK(sbm.p_in == doctest::Approx(p_in));
  CHECK(sbm.p_out == doctest::Approx(0.5 * p_in));

  auto pl = make_preset("powerlaw", 1000);
  CHECK(pl.kind == GeneratorSpec::Kind::PowerLaw);
  CHECK(pl.alpha == doctest::Approx(2.5));

  CHECK_THROWS_AS(make_preset("smallworld", 100), ConfigError);
}
