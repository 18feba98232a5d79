#include "plumbweave/json_io.hpp"

#include <limits>

#include "plumbweave/error.hpp"

namespace plumbweave {

namespace {

// Integers beyond 64 bits are written as decimal strings.
Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error(ErrorKind::ParseError, "expected an integer, got " + j.dump());
}

std::string kind_name(OriginKind k) {
  switch (k) {
    case OriginKind::Vertex: return "vertex";
    case OriginKind::Edge: return "edge";
    case OriginKind::Stab: return "stab";
  }
  return "vertex";
}

OriginKind kind_from(const std::string& s) {
  if (s == "vertex") return OriginKind::Vertex;
  if (s == "edge") return OriginKind::Edge;
  if (s == "stab") return OriginKind::Stab;
  throw Error(ErrorKind::ParseError, "unknown cycle label kind '" + s + "'");
}

std::string move_name(MoveKind k) {
  switch (k) {
    case MoveKind::CyclicPermute: return "cyclic";
    case MoveKind::HurwitzA: return "hurwitzA";
    case MoveKind::HurwitzB: return "hurwitzB";
    case MoveKind::Stabilize: return "stabilize";
  }
  return "cyclic";
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

Json to_json(const Convention& c) {
  return Json{{"self_intersection", c.self_intersection},
              {"edge_sign", c.edge_sign},
              {"twist_sign", c.twist_sign}};
}

Convention convention_from_json(const Json& j) {
  return guarded([&] {
    return Convention{j.at("self_intersection").get<long long>(), j.at("edge_sign").get<int>(),
                      j.at("twist_sign").get<int>()};
  });
}

Json to_json(const AbstractLF& alf) {
  Json edges = Json::array();
  for (const auto& e : alf.fiber.pattern.edges)
    edges.push_back(Json{{"id", e.id},
                         {"a", alf.fiber.pattern.vertices[e.a]},
                         {"b", alf.fiber.pattern.vertices[e.b]}});
  Json cycles = Json::array();
  for (const auto& c : alf.cycles) {
    Json coords = Json::array();
    for (const auto& x : c.cls.coords) coords.push_back(integer_json(x));
    Json label{{"kind", kind_name(c.origin.kind)}, {"index", c.origin.index}, {"id", c.origin.id}};
    cycles.push_back(Json{{"label", label}, {"coords", coords}, {"display", c.display}, {"twists", c.twists}});
  }
  return Json{{"fiber", Json{{"pattern", Json{{"vertices", alf.fiber.pattern.vertices}, {"edges", edges}}},
                             {"sphere_dim", alf.fiber.sphere_dim}}},
              {"cycles", cycles},
              {"n", alf.n},
              {"convention", to_json(alf.convention)}};
}

Json class_word_json(const AbstractLF& alf) {
  Json classes = Json::array();
  for (const auto& c : alf.cycles) {
    Json coords = Json::array();
    for (const auto& x : c.cls.coords) coords.push_back(integer_json(x));
    classes.push_back(coords);
  }
  return Json{{"n", alf.n}, {"fiber", alf.fiber.pattern.vertices}, {"classes", classes}};
}

AbstractLF fibration_from_json(const Json& j) {
  return guarded([&] {
    AbstractLF alf;
    const auto& fiber = j.at("fiber");
    auto& pattern = alf.fiber.pattern;
    pattern.vertices = fiber.at("pattern").at("vertices").get<std::vector<std::string>>();
    for (const auto& e : fiber.at("pattern").at("edges"))
      pattern.edges.push_back({e.at("id").get<std::string>(), pattern.vertex_index(e.at("a").get<std::string>()),
                               pattern.vertex_index(e.at("b").get<std::string>())});
    alf.fiber.sphere_dim = fiber.at("sphere_dim").get<int>();
    alf.n = j.at("n").get<int>();
    if (alf.n < 2 || alf.fiber.sphere_dim != alf.n - 1)
      throw Error(ErrorKind::BadDimension, "fiber sphere dimension must be n-1 with n >= 2");
    if (j.contains("convention")) alf.convention = convention_from_json(j.at("convention"));
    for (const auto& c : j.at("cycles")) {
      VanishingCycle vc;
      const auto& label = c.at("label");
      vc.origin = {kind_from(label.at("kind").get<std::string>()), label.at("index").get<std::size_t>(),
                   label.value("id", std::string{})};
      for (const auto& x : c.at("coords")) vc.cls.coords.push_back(integer_from_json(x));
      if (vc.cls.dim() != pattern.vertex_count())
        throw Error(ErrorKind::DimensionMismatch, "cycle coords do not match the fiber lattice rank");
      vc.display = c.at("display").get<std::string>();
      if (c.contains("twists")) vc.twists = c.at("twists").get<std::vector<std::string>>();
      alf.cycles.push_back(std::move(vc));
    }
    return alf;
  });
}

Json to_json(const MoveSequence& moves) {
  Json out = Json::array();
  for (const auto& m : moves) {
    Json rec{{"kind", move_name(m.kind)}, {"index", m.index}};
    if (m.kind == MoveKind::Stabilize) rec["vertex"] = m.vertex;
    out.push_back(std::move(rec));
  }
  return out;
}

MoveSequence moves_from_json(const Json& j) {
  return guarded([&] {
    MoveSequence seq;
    for (const auto& rec : j) {
      const auto kind = rec.at("kind").get<std::string>();
      MoveRecord m;
      if (kind == "cyclic") m.kind = MoveKind::CyclicPermute;
      else if (kind == "hurwitzA") m.kind = MoveKind::HurwitzA;
      else if (kind == "hurwitzB") m.kind = MoveKind::HurwitzB;
      else if (kind == "stabilize") m.kind = MoveKind::Stabilize;
      else throw Error(ErrorKind::ParseError, "unknown move kind '" + kind + "'");
      m.index = rec.value("index", std::size_t{0});
      if (m.kind == MoveKind::Stabilize) m.vertex = rec.at("vertex").get<std::string>();
      seq.push_back(std::move(m));
    }
    return seq;
  });
}

Json to_json(const HomologyReport& rep) {
  Json degrees = Json::array();
  for (const auto& d : rep.h) {
    Json torsion = Json::array();
    for (const auto& t : d.torsion) torsion.push_back(integer_json(t));
    degrees.push_back(Json{{"degree", d.degree}, {"free_rank", d.free_rank}, {"torsion", torsion}});
  }
  Json divisors = Json::array();
  for (const auto& d : rep.divisors) divisors.push_back(integer_json(d));
  return Json{{"euler", rep.euler}, {"degrees", degrees}, {"snf_divisors", divisors}, {"flags", rep.flags}};
}

Json to_json(const OrderedTree& ot) {
  const auto& t = ot.base;
  Json vertices = Json::array();
  for (std::size_t i = 0; i < ot.size(); ++i) {
    auto v = ot.v(i);
    vertices.push_back(Json{{"label", "v" + std::to_string(i)},
                            {"id", t.vertices()[v]},
                            {"dist", ot.dist[v]},
                            {"height", ot.height[v]},
                            {"coords", Json::array({ot.dist[v], ot.height[v]})}});
  }
  Json edges = Json::array();
  for (std::size_t i = 0; i < ot.edge_order.size(); ++i) {
    auto e = ot.e(i);
    edges.push_back(Json{{"label", "e" + std::to_string(i)},
                         {"id", t.edges()[e].id},
                         {"tail", "v" + std::to_string(ot.vertex_rank[ot.tail[e]])},
                         {"head", "v" + std::to_string(ot.vertex_rank[ot.head[e]])},
                         {"first_outgoing", ot.is_first_outgoing(e)}});
  }
  Json boundary = Json::array();
  for (auto v : ot.boundary_order) boundary.push_back("v" + std::to_string(ot.vertex_rank[v]));
  return Json{{"root", Json{{"vertex", t.vertices()[t.root_vertex()]}, {"edge", t.edges()[t.root_edge()].id}}},
              {"vertices", vertices},
              {"edges", edges},
              {"boundary_order", boundary}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace plumbweave
