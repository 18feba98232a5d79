#include "plumbweave/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "plumbweave/error.hpp"

namespace plumbweave {

std::string VanishingCycle::rendered() const {
  std::string out = display;
  for (const auto& t : twists) out = t + "(" + out + ")";
  return out;
}

namespace {

std::string cycle_name(std::size_t vertex_rank) {
  return "L_{q(v" + std::to_string(vertex_rank) + ")}";
}

}  // namespace

AbstractLF fibrate(const OrderedTree& ot, int n, const Convention& convention) {
  if (n < 2) throw Error(ErrorKind::BadDimension, "n must be at least 2, got " + std::to_string(n));
  const auto qd = quotient(ot);
  const auto& base = ot.base;
  const std::size_t rank = qd.quotient_tree.vertex_count();

  AbstractLF alf;
  alf.fiber = {qd.quotient_tree, n - 1};
  alf.n = n;
  alf.convention = convention;

  auto vertex_cycle = [&](std::size_t i) {
    auto v = ot.v(i);
    return VanishingCycle{{OriginKind::Vertex, i, base.vertices()[v]},
                          CycleClass::basis(rank, qd.q[v]), cycle_name(i), {}};
  };
  // An edge cycle is the sphere of its head but sits next to its tail.
  auto edge_cycle = [&](std::size_t e) {
    auto i = ot.edge_rank[e];
    return VanishingCycle{{OriginKind::Edge, i, base.edges()[e].id},
                          CycleClass::basis(rank, qd.q[ot.head[e]]), cycle_name(i + 1), {}};
  };

  alf.cycles.push_back(edge_cycle(base.root_edge()));
  for (std::size_t i = 0; i < ot.size(); ++i) {
    auto v = ot.v(i);
    std::vector<std::size_t> extras(ot.outgoing[v].begin() + (ot.outgoing[v].empty() ? 0 : 1),
                                    ot.outgoing[v].end());
    std::sort(extras.begin(), extras.end(),
              [&](std::size_t a, std::size_t b) { return ot.edge_rank[a] > ot.edge_rank[b]; });
    for (auto e : extras) alf.cycles.push_back(edge_cycle(e));
    alf.cycles.push_back(vertex_cycle(i));
  }
  return alf;
}

std::string sphere_label(const AbstractLF& alf, std::size_t k) {
  const auto& cls = alf.cycles.at(k).cls;
  if (cls.is_basis_vector() && cls.dim() == alf.fiber.pattern.vertex_count())
    for (std::size_t i = 0; i < cls.dim(); ++i)
      if (cls.coords[i] == 1) return alf.fiber.pattern.vertices[i];
  return cls.to_string();
}

std::vector<MatchingCycle> matching_cycles(const AbstractLF& alf, const OrderedTree& ot) {
  if (alf != fibrate(ot, alf.n, alf.convention))
    throw Error(ErrorKind::NotAlgorithmOutput,
                "matching cycles are only defined for unmoved output of the tree algorithm");

  auto find = [&](OriginKind kind, std::size_t index) {
    for (std::size_t k = 0; k < alf.size(); ++k)
      if (alf.cycles[k].origin.kind == kind && alf.cycles[k].origin.index == index) return k;
    throw Error(ErrorKind::NotAlgorithmOutput, "missing cycle label");
  };

  std::vector<MatchingCycle> out;
  out.push_back({0, find(OriginKind::Vertex, 0), find(OriginKind::Edge, 0)});
  for (std::size_t i = 1; i < ot.size(); ++i) {
    const auto e = ot.e(i - 1);  // head(e_{i-1}) = v_i
    const bool adjacent = ot.tail[e] == ot.v(i - 1);
    out.push_back({i, find(OriginKind::Vertex, i),
                   adjacent ? find(OriginKind::Vertex, i - 1) : find(OriginKind::Edge, i - 1)});
  }
  return out;
}

std::vector<double> layout(const AbstractLF& alf) {
  const auto m = alf.size();
  std::vector<double> angles(m);
  for (std::size_t k = 0; k < m; ++k)
    angles[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
  return angles;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_base_svg(const AbstractLF& alf, const std::vector<MatchingCycle>& matching) {
  const double size = 480.0, center = size / 2, radius = 170.0;
  const auto angles = layout(alf);
  auto px = [&](double a, double r) { return center + r * std::cos(a); };
  auto py = [&](double a, double r) { return center - r * std::sin(a); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size) << "\" height=\"" << num(size)
      << "\" viewBox=\"0 0 " << num(size) << ' ' << num(size) << "\">\n";
  svg << "<circle class=\"boundary\" cx=\"" << num(center) << "\" cy=\"" << num(center) << "\" r=\""
      << num(radius) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (double a : angles)
    svg << "<line class=\"skeleton\" x1=\"" << num(center) << "\" y1=\"" << num(center) << "\" x2=\""
        << num(px(a, radius)) << "\" y2=\"" << num(py(a, radius)) << "\" stroke=\"#bbb\"/>\n";
  for (const auto& mc : matching) {
    if (mc.first >= angles.size() || mc.second >= angles.size())
      throw Error(ErrorKind::IndexOutOfRange, "matching cycle endpoint past the word");
    const double a = angles[mc.first], b = angles[mc.second];
    svg << "<line class=\"chord\" data-vertex=\"v" << mc.vertex << "\" x1=\"" << num(px(a, radius)) << "\" y1=\""
        << num(py(a, radius)) << "\" x2=\"" << num(px(b, radius)) << "\" y2=\"" << num(py(b, radius))
        << "\" stroke=\"#c33\" stroke-width=\"2\"/>\n";
  }
  svg << "<circle class=\"basepoint\" cx=\"" << num(center) << "\" cy=\"" << num(center)
      << "\" r=\"3.000\" fill=\"#000\"/>\n";
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double a = angles[k];
    svg << "<polygon class=\"star\" points=\"";
    for (int p = 0; p < 10; ++p) {
      const double r = p % 2 == 0 ? 7.0 : 3.0;
      const double t = std::numbers::pi / 2 + p * std::numbers::pi / 5;
      svg << (p ? " " : "") << num(px(a, radius) + r * std::cos(t)) << ',' << num(py(a, radius) - r * std::sin(t));
    }
    svg << "\" fill=\"#236\"/>\n";
    svg << "<text class=\"label\" x=\"" << num(px(a, radius + 26)) << "\" y=\"" << num(py(a, radius + 26))
        << "\" font-size=\"11\" text-anchor=\"middle\">" << k << ": "
        << xml_escape(alf.cycles[k].rendered()) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_base(const AbstractLF& alf, const std::vector<MatchingCycle>& matching,
                 const std::filesystem::path& path) {
  const auto text = render_base_svg(alf, matching);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot move into place " + path.string() + ": " + ec.message());
}

FamilyWord family_word(int m, int j, int n, const Convention& convention) {
  if (m < 1 || j < 1 || j > m)
    throw Error(ErrorKind::IndexOutOfRange,
                "family word needs 1 <= j <= m, got m=" + std::to_string(m) + " j=" + std::to_string(j));
  if (n < 2) throw Error(ErrorKind::BadDimension, "n must be at least 2, got " + std::to_string(n));
  const auto um = static_cast<std::size_t>(m), uj = static_cast<std::size_t>(j);

  FamilyWord fw;
  auto& alf = fw.alf;
  alf.fiber = {Tree{{"w0", "w1"}, {{"x", 0, 1}}}, n - 1};
  alf.n = n;
  alf.convention = convention;
  const auto alpha = CycleClass::basis(2, 0), beta = CycleClass::basis(2, 1);

  auto vertex = [&](std::size_t i) {
    return VanishingCycle{{OriginKind::Vertex, i, i == um + 1 ? "l" : "u" + std::to_string(i)},
                          i == um + 1 ? beta : alpha, cycle_name(i), {}};
  };
  alf.cycles.push_back({{OriginKind::Edge, 0, "c1"}, alpha, cycle_name(1), {}});
  for (std::size_t i = 0; i < uj; ++i) alf.cycles.push_back(vertex(i));
  fw.interior_beta = alf.cycles.size();
  alf.cycles.push_back({{OriginKind::Edge, um, "x"}, beta, cycle_name(um + 1), {}});
  for (std::size_t i = uj; i <= um + 1; ++i) alf.cycles.push_back(vertex(i));
  return fw;
}

RootedEmbeddedTree family_tree(int m, int j) {
  if (m < 2 || j < 1 || j > m - 1)
    throw Error(ErrorKind::IndexOutOfRange,
                "family tree needs 1 <= j <= m-1, got m=" + std::to_string(m) + " j=" + std::to_string(j));
  const auto um = static_cast<std::size_t>(m), uj = static_cast<std::size_t>(j);
  Tree t;
  for (std::size_t i = 0; i <= um; ++i) t.vertices.push_back("u" + std::to_string(i));
  t.vertices.push_back("l");
  for (std::size_t i = 1; i <= um; ++i) t.edges.push_back({"c" + std::to_string(i), i - 1, i});
  t.edges.push_back({"x", uj, um + 1});

  // Edge c_i has index i-1; the leaf edge is last.
  std::vector<std::vector<std::size_t>> rotation(um + 2);
  rotation[0] = {0};
  for (std::size_t i = 1; i < um; ++i) rotation[i] = {i, i - 1};  // outgoing chain edge, then incoming
  rotation[um] = {um - 1};
  rotation[uj] = {uj, um, uj - 1};  // chain edge, leaf edge, incoming
  rotation[um + 1] = {um};
  return make_rooted_tree(std::move(t), std::move(rotation), 0, 0);
}

}  // namespace plumbweave
