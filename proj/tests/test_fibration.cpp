#include <doctest.h>

#include <cmath>
#include <numbers>

#include "plumbweave/error.hpp"
#include "plumbweave/fibration.hpp"
#include "plumbweave/json_io.hpp"
#include "test_support.hpp"

using namespace plumbweave;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

const std::vector<std::string> kExampleWord{"L_{q(v1)}", "L_{q(v5)}", "L_{q(v0)}", "L_{q(v4)}", "L_{q(v3)}",
                                            "L_{q(v1)}", "L_{q(v2)}", "L_{q(v3)}", "L_{q(v4)}", "L_{q(v5)}"};

}  // namespace

TEST_CASE("worked example word") {
  auto ot = order_tree(pwtest::load_tree("ex.tree"));
  for (int n : {2, 3, 4, 7}) {
    auto alf = fibrate(ot, n);
    CHECK(pwtest::displays(alf) == kExampleWord);
    CHECK(alf.fiber.sphere_dim == n - 1);
    CHECK(alf.fiber.pattern.vertex_count() == 4);
    for (const auto& c : alf.cycles) CHECK(c.cls.is_basis_vector());
  }
  auto alf = fibrate(ot, 3);
  // Cycles with the same display carry the same class.
  for (std::size_t i = 0; i < alf.size(); ++i)
    for (std::size_t j = 0; j < alf.size(); ++j)
      if (alf.cycles[i].display == alf.cycles[j].display) CHECK(alf.cycles[i].cls == alf.cycles[j].cls);
  CHECK(alf.cycles[0].cls == alf.cycles[2].cls);  // q(v1) = q(v0)
  CHECK_THROWS_AS(fibrate(ot, 1), Error);
}

TEST_CASE("small chains") {
  auto a2 = fibrate(order_tree(pwtest::load_tree("a2.tree")), 3);
  CHECK(a2.fiber.pattern.vertex_count() == 1);
  CHECK(a2.size() == 3);
  for (const auto& c : a2.cycles) CHECK(c.cls == CycleClass::basis(1, 0));
  auto p3 = fibrate(order_tree(pwtest::load_tree("path3.tree")), 3);
  CHECK(p3.fiber.pattern.vertex_count() == 1);
  CHECK(p3.size() == 4);
}

TEST_CASE("matching cycles of the running example") {
  auto ot = order_tree(pwtest::load_tree("ex.tree"));
  auto alf = fibrate(ot, 3);
  auto mc = matching_cycles(alf, ot);
  REQUIRE(mc.size() == 6);
  // Word: 0:e0 1:e4 2:v0 3:e3 4:e2 5:v1 6:v2 7:v3 8:v4 9:v5
  std::vector<MatchingCycle> expected{{0, 2, 0}, {1, 5, 2}, {2, 6, 5}, {3, 7, 4}, {4, 8, 3}, {5, 9, 1}};
  CHECK(mc == expected);
  for (const auto& m : mc) {
    CHECK(alf.cycles[m.first].cls == alf.cycles[m.second].cls);
    CHECK(sphere_label(alf, m.first) == sphere_label(alf, m.second));
  }
  CHECK(sphere_label(alf, 0) == "w0");

  auto a2ot = order_tree(pwtest::load_tree("a2.tree"));
  auto a2 = fibrate(a2ot, 3);
  CHECK(matching_cycles(a2, a2ot).size() == 2);

  auto moved = alf;
  std::swap(moved.cycles[0], moved.cycles[1]);
  try {
    matching_cycles(moved, ot);
    FAIL("expected NotAlgorithmOutput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAlgorithmOutput);
  }
}

TEST_CASE("layout angles") {
  auto alf = fibrate(order_tree(pwtest::load_tree("ex.tree")), 3);
  auto angles = layout(alf);
  REQUIRE(angles.size() == 10);
  CHECK(angles[0] == 0.0);
  CHECK(angles[1] == doctest::Approx(std::numbers::pi / 5));
  alf.cycles.resize(4);
  auto four = layout(alf);
  CHECK(four[1] == doctest::Approx(std::numbers::pi / 2));
  CHECK(four[2] == doctest::Approx(std::numbers::pi));
  CHECK(four[3] == doctest::Approx(3 * std::numbers::pi / 2));
  alf.cycles.resize(1);
  CHECK(layout(alf) == std::vector<double>{0.0});
}

TEST_CASE("rendered base diagram") {
  auto ot = order_tree(pwtest::load_tree("ex.tree"));
  auto alf = fibrate(ot, 3);
  auto svg = render_base_svg(alf, matching_cycles(alf, ot));
  CHECK(count(svg, "class=\"star\"") == 10);
  CHECK(count(svg, "class=\"chord\"") == 6);
  CHECK(count(svg, "class=\"skeleton\"") == 10);
  CHECK(svg == render_base_svg(alf, matching_cycles(alf, ot)));

  auto a2ot = order_tree(pwtest::load_tree("a2.tree"));
  auto a2 = fibrate(a2ot, 3);
  auto a2svg = render_base_svg(a2, matching_cycles(a2, a2ot));
  CHECK(count(a2svg, "class=\"star\"") == 3);
  CHECK(count(a2svg, "class=\"chord\"") == 2);

  CHECK_THROWS_AS(render_base(alf, {}, "/nonexistent-dir/x.svg"), Error);
}

TEST_CASE("family words and trees") {
  auto fw = family_word(2, 1, 5);
  std::vector<CycleClass> classes;
  for (const auto& c : fw.alf.cycles) classes.push_back(c.cls);
  const auto a = CycleClass::basis(2, 0), b = CycleClass::basis(2, 1);
  CHECK(classes == std::vector<CycleClass>{a, a, b, a, a, b});
  CHECK(fw.interior_beta == 2);
  for (int m = 1; m <= 8; ++m)
    for (int j = 1; j <= m; ++j) {
      auto w = family_word(m, j, 3);
      CHECK(w.alf.size() == static_cast<std::size_t>(m + 4));
      CHECK(w.interior_beta == static_cast<std::size_t>(j + 1));
      for (const auto& c : w.alf.cycles) CHECK(c.cls.is_basis_vector());
      if (j < m) {
        auto ot = order_tree(family_tree(m, j));
        CHECK(quotient(ot).quotient_tree.vertex_count() == 2);
        CHECK(fibrate(ot, 3) == w.alf);
      }
    }
  CHECK_THROWS_AS(family_word(3, 0, 3), Error);
  CHECK_THROWS_AS(family_word(3, 4, 3), Error);
  try {
    family_tree(3, 3);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
}

TEST_CASE("cycle-count identity, label audit and matching on random trees") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto ot = order_tree(random_tree(seed, 14));
    auto alf = fibrate(ot, 3);
    const auto nv = ot.size();
    const auto nbar = alf.fiber.pattern.vertex_count();
    CAPTURE(seed);
    REQUIRE(alf.size() == nv + nbar);

    std::vector<int> vertex_hits(nv, 0), edge_hits(nv - 1, 0);
    for (const auto& c : alf.cycles) {
      REQUIRE(c.origin.kind != OriginKind::Stab);
      if (c.origin.kind == OriginKind::Vertex) ++vertex_hits[c.origin.index];
      else ++edge_hits[c.origin.index];
    }
    for (auto h : vertex_hits) REQUIRE(h == 1);
    for (std::size_t i = 0; i + 1 < nv; ++i) {
      const auto e = ot.e(i);
      const bool wants_cycle = e == ot.base.root_edge() || !ot.is_first_outgoing(e);
      REQUIRE(edge_hits[i] == (wants_cycle ? 1 : 0));
    }

    auto mc = matching_cycles(alf, ot);
    REQUIRE(mc.size() == nv);
    for (const auto& m : mc) REQUIRE(alf.cycles[m.first].cls == alf.cycles[m.second].cls);
  }
}

TEST_CASE("prefix-subtree induction: dropping v_{k+1} and e_k recovers LF(T^(k))") {
  auto origins = [](const AbstractLF& alf) {
    std::vector<std::pair<OriginKind, std::size_t>> out;
    for (const auto& c : alf.cycles) out.emplace_back(c.origin.kind, c.origin.index);
    return out;
  };
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto ot = order_tree(random_tree(seed, 12));
    for (std::size_t k = 1; k + 1 < ot.size(); ++k) {
      auto small = fibrate(order_tree(prefix_subtree(ot, k)), 3);
      auto big = fibrate(order_tree(prefix_subtree(ot, k + 1)), 3);
      auto expected = origins(big);
      std::erase_if(expected, [&](const auto& o) {
        return (o.first == OriginKind::Vertex && o.second == k + 1) || (o.first == OriginKind::Edge && o.second == k);
      });
      CAPTURE(seed);
      CAPTURE(k);
      REQUIRE(origins(small) == expected);
    }
  }
}

TEST_CASE("fibration JSON round trip") {
  auto alf = fibrate(order_tree(pwtest::load_tree("ex.tree")), 4, Convention{-2, -1, 1});
  auto text = dump(to_json(alf));
  auto back = fibration_from_json(parse_json(text));
  CHECK(back == alf);
  CHECK(dump(to_json(back)) == text);

  auto bad = parse_json(text);
  bad["cycles"][0]["coords"] = Json::array({1});
  CHECK_THROWS_AS(fibration_from_json(bad), Error);
  CHECK_THROWS_AS(fibration_from_json(parse_json("{\"fiber\": 3}")), Error);
}
