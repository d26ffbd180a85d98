#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "nashtor/families.hpp"
#include "nashtor/resolution.hpp"

using namespace nashtor;

namespace {
const VarNames ys = VarNames::indexed("y", 4);
SparsePolynomial Y(const std::string& s) { return parse_polynomial(s, ys); }
std::string pw(const std::string& v, long k) { return k == 1 ? v : v + "^" + std::to_string(k); }

FamilySpec fam1(long p, long q) { return {Family::One, p, q, {}, {}}; }
FamilySpec fam2(long q) { return {Family::Two, 2, q, {}, {}}; }

std::vector<std::string> canonical(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(to_string(Y(s), ys));
  return out;
}
}  // namespace

TEST(Chart, Identity) {
  const auto ch = chart(standard_cone(4), "Delta");
  EXPECT_EQ(ch.map_text(), (std::vector<std::string>{"y1", "y2", "y3", "y4"}));
  const auto f = parse_polynomial("x1^2 + x2*x3 + x4");
  EXPECT_EQ(pullback(f, ch), f);
  const auto st = strict_transform(f, ch);
  EXPECT_EQ(st.exceptional_exponent, (Exponent{0, 0, 0, 0}));
  EXPECT_EQ(st.equation, f);
}

TEST(Chart, Rejects) {
  EXPECT_THROW(chart(Cone(4, {{2, 2, 1, 1}, LatticeVector::unit(4, 1), LatticeVector::unit(4, 2),
                              LatticeVector::unit(4, 3)})),
               InputError);
  EXPECT_THROW(chart(Cone(2, {{1, 0}})), InputError);
  EXPECT_THROW(chart(Cone(2, {{1, 0}, {-1, 1}})), InputError);
}

TEST(Chart, Family1Maps) {
  for (long p = 2; p <= 5; ++p) {
    const auto F = family1_fan(p);
    for (long j = 1; j <= p - 1; ++j) {
      const auto ch = chart(F.cone("sigma_{2," + std::to_string(j) + ",2}"));
      const std::string a = pw("y2", p - j + 1) + "*" + pw("y3", p - j);
      EXPECT_EQ(ch.map_text(), canonical({"y1*" + a, a, "y2*y3", "y2*y3*y4"})) << p << " " << j;
    }
  }
}

TEST(Chart, Family2Map) {
  const auto ch = chart(family2_fan().cone("sigma_{1,1}"));
  EXPECT_EQ(ch.map_text(), canonical({"y1^2*y4", "y1^2*y2*y4", "y1^2*y3*y4", "y1*y4"}));
}

TEST(Chart, DualBasis) {
  for (const auto& ch : charts_of(family1_fan(3)))
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(dot(ch.dual[i], ch.ray(j)), i == j ? 1 : 0);
}

TEST(StrictTransform, Family1ClosedForm) {
  for (long p = 2; p <= 4; ++p)
    for (long q = 2; q <= 4; ++q) {
      const auto s = fam1(p, q);
      const auto f = build_polynomial(s);
      const auto F = family1_fan(p);
      for (long j = 1; j <= p - 1; ++j) {
        const auto st = strict_transform(f, chart(F.cone("sigma_{2," + std::to_string(j) + ",2}")));
        const auto expect = Y("y1^" + std::to_string(q) + " + 1 + " + pw("y2", q * (j - 1)) + "*" +
                              pw("y3", q * j) + "*(1 + y4^" + std::to_string(p * q) + ")");
        EXPECT_EQ(to_string(st.equation, ys), to_string(expect, ys)) << p << " " << q << " " << j;
      }
    }
}

TEST(StrictTransform, Family2ClosedForm) {
  for (long q = 3; q <= 5; ++q) {
    const auto f = build_polynomial(fam2(q));
    const auto st = strict_transform(f, chart(family2_fan().cone("sigma_{1,1}")));
    const auto Q = std::to_string(q);
    EXPECT_EQ(to_string(st.equation, ys), to_string(Y("1 + y2^" + Q + " + y3^" + Q + " + y4^" + Q), ys));
    EXPECT_EQ(st.exceptional_exponent, (Exponent{static_cast<unsigned>(2 * q), 0, 0, static_cast<unsigned>(q)}));
  }
}

TEST(StrictTransform, ExponentsMatchSupport) {
  for (const auto& s : {fam1(3, 2), fam1(2, 4), fam2(4)}) {
    const auto f = build_polynomial(s);
    const auto P = newton_polyhedron(f);
    for (const auto& ch : charts_of(family_fan(s))) {
      const auto st = strict_transform(f, ch);
      for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(Integer(st.exceptional_exponent[i]), P.support(ch.ray(i)));
      // no y_i divides the strict transform
      for (auto x : st.equation.monomial_content()) EXPECT_EQ(x, 0u);
    }
  }
}

TEST(Components, Family1RootAndWhole) {
  for (long q = 2; q <= 4; ++q) {
    const auto f = build_polynomial(fam1(2, q));
    const auto st = strict_transform(f, chart(family1_fan(2).cone("sigma_{2,1,2}")));
    // chart variables: y2 <-> rho_0, y3 <-> rho_1
    const auto on_rho1 = divisor_components(st, 2);
    ASSERT_TRUE(on_rho1.supported);
    EXPECT_EQ(on_rho1.components.size(), static_cast<std::size_t>(q));
    for (const auto& c : on_rho1.components) EXPECT_FALSE(c.key.whole);
    const auto on_rho0 = divisor_components(st, 1);
    ASSERT_TRUE(on_rho0.supported) << on_rho0.reason;
    ASSERT_EQ(on_rho0.components.size(), 1u);
    EXPECT_TRUE(on_rho0.components[0].key.whole);
    EXPECT_THROW(divisor_components(st, 0), InputError);
  }
}

TEST(Components, Family2Whole) {
  const auto f = build_polynomial(fam2(3));
  const auto st = strict_transform(f, chart(family2_fan().cone("sigma_{1,1}")));
  for (std::size_t v : {0u, 3u}) {
    const auto dc = divisor_components(st, v);
    ASSERT_TRUE(dc.supported) << dc.reason;
    ASSERT_EQ(dc.components.size(), 1u);
    EXPECT_TRUE(dc.components[0].key.whole);
  }
}

TEST(Components, MonomialFactorUnsupported) {
  // x1*x2 + x3: the divisor of (1,1,1) in the chart (e1, e2, (1,1,1)) has restriction y1*y2
  const auto f = parse_polynomial("x1*x2 + x3^3");
  const auto ch = chart(Cone(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}));
  const auto st = strict_transform(f, ch);
  const auto dc = divisor_components(st, 2);
  EXPECT_FALSE(dc.supported);
}

TEST(DualGraph, Family2) {
  for (long q = 3; q <= 5; ++q) {
    const auto s = fam2(q);
    const auto res = assemble_dual_graph(build_polynomial(s), charts_of(family2_fan()), family_labeler(s));
    ASSERT_EQ(res.graph.nodes.size(), 2u);
    EXPECT_EQ(res.graph.edges.size(), 1u);
    EXPECT_EQ(dual_graph_to_dot(res.graph), "graph dual {\n  \"E_1\";\n  \"E_2\";\n  \"E_1\" -- \"E_2\";\n}\n");
  }
}

TEST(DualGraph, Family1Spider) {
  const auto s = fam1(3, 2);
  const auto res = assemble_dual_graph(build_polynomial(s), charts_of(family1_fan(3)), family_labeler(s));
  const auto& G = res.graph;
  ASSERT_EQ(G.nodes.size(), 5u);
  EXPECT_EQ(G.edges.size(), 4u);
  std::set<std::string> labels;
  for (const auto& n : G.nodes) labels.insert(n.label);
  EXPECT_EQ(labels, (std::set<std::string>{"E_0", "E_{1,1}", "E_{1,2}", "E_{2,1}", "E_{2,2}"}));
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& [a, b] : G.edges) edges.insert(std::minmax(G.nodes[a].label, G.nodes[b].label));
  EXPECT_EQ(edges, (std::set<std::pair<std::string, std::string>>{
                       {"E_0", "E_{1,1}"}, {"E_0", "E_{2,1}"}, {"E_{1,1}", "E_{1,2}"}, {"E_{2,1}", "E_{2,2}"}}));
}

TEST(DualGraph, NonFermatFactors) {
  FamilySpec s = fam1(2, 2);
  s.h_factors = {parse_polynomial("x1 + x2"), parse_polynomial("x1 - x2")};
  s.hk_factors = {parse_polynomial("x1^2 + x2^2"), parse_polynomial("x1^2 - 2*x2^2")};
  const auto r = verify(s);
  EXPECT_TRUE(r.ok()) << (r.discrepancies.empty() ? "" : r.discrepancies[0]);
  EXPECT_EQ(r.component_count, 3);
  EXPECT_EQ(r.isolated_singularity, "assumed");
}

TEST(DualGraph, ChartOrderIrrelevant) {
  const auto s = fam1(3, 3);
  const auto f = build_polynomial(s);
  auto charts = charts_of(family1_fan(3));
  const auto base = dual_graph_to_dot(assemble_dual_graph(f, charts, family_labeler(s)).graph);
  std::mt19937 rng(7);
  for (int t = 0; t < 5; ++t) {
    std::shuffle(charts.begin(), charts.end(), rng);
    EXPECT_EQ(dual_graph_to_dot(assemble_dual_graph(f, charts, family_labeler(s)).graph), base);
  }
}

TEST(DualGraph, ThreadCountIrrelevant) {
  const auto s = fam1(4, 3);
  const auto f = build_polynomial(s);
  const auto charts = charts_of(family1_fan(4));
  ::setenv("NASHTOR_THREADS", "1", 1);
  const auto seq = assemble_dual_graph(f, charts, family_labeler(s));
  ::setenv("NASHTOR_THREADS", "4", 1);
  EXPECT_EQ(worker_count(), 4u);
  const auto par = assemble_dual_graph(f, charts, family_labeler(s));
  ::unsetenv("NASHTOR_THREADS");
  EXPECT_EQ(dual_graph_to_dot(seq.graph), dual_graph_to_dot(par.graph));
  EXPECT_EQ(seq.graph.edges, par.graph.edges);
  for (std::size_t i = 0; i < charts.size(); ++i)
    EXPECT_EQ(seq.charts[i].transform.equation, par.charts[i].transform.equation);
}

TEST(ArcPushforward, PrincipalVectors) {
  for (long p = 3; p <= 5; ++p) {
    const auto F = family1_fan(p);
    for (long j = 1; j + 1 <= p - 1; ++j) {
      const auto ch = chart(F.cone("sigma_{2," + std::to_string(j + 1) + ",2}"));
      EXPECT_EQ(arc_pushforward_orders(ch, {0, 1, 0, 0}), family1_ray(p, j));
    }
  }
  const auto ch = chart(family2_fan().cone("sigma_{1,1}"));
  EXPECT_EQ(arc_pushforward_orders(ch, {1, 0, 0, 0}), (LatticeVector{2, 2, 2, 1}));
  EXPECT_THROW(arc_pushforward_orders(ch, {1, 0, 0}), InputError);
  EXPECT_THROW(arc_pushforward_orders(ch, {-1, 0, 0, 0}), InputError);
}

TEST(ArcPushforward, Linear) {
  const auto ch = chart(family1_fan(3).cone("sigma_{1,2,1}"));
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(0, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<long> a(4), b(4), c(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = d(rng);
      b[i] = d(rng);
      c[i] = a[i] + b[i];
    }
    EXPECT_EQ(arc_pushforward_orders(ch, c), arc_pushforward_orders(ch, a) + arc_pushforward_orders(ch, b));
  }
}
